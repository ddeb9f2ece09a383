"""The whole loop: capture three expert sessions, mine, plan, score a novice.

Artifacts (logs, model, plan) are written under ./demo_output so they can be
inspected or fed to the CLI and the browser replay client.

Run: python3 demos/05_full_pipeline.py
"""

from pathlib import Path

from sitewalk import AgentScript, Stop, run_script
from sitewalk.capture import sequence_from_log
from sitewalk.demo import demo_checklist, demo_config, demo_scene, demo_script
from sitewalk.evaluation import compare_sessions, format_report_table
from sitewalk.service import SessionService

OUT = Path("demo_output")


def main():
    service = SessionService(OUT)
    service.add_scene(demo_scene())
    service.add_checklist("demo", demo_checklist())

    expert_ids = [run_script(service, demo_config(), demo_script())
                  for _ in range(3)]
    print("expert sessions:", ", ".join(expert_ids))

    model_id = service.run_mining(expert_ids)
    model = service.get_model(model_id)
    print(f"mined model {model_id}: {' -> '.join(model.canonical_order)}")

    plan_id = service.get_guidance(model_id, "demo",
                                   demo_config().start_position, total_spheres=40)
    plan = service.get_plan(plan_id)
    print(f"plan {plan_id}: " + ", ".join(
        f"{w.object_id} x{w.sphere_count}" for w in plan.waypoints))

    # a hurried novice skips the exit sign and goes out of order
    novice_script = AgentScript((Stop("A1", 2.0), Stop("E1", 3.0), Stop("R1", 1.5)))
    novice_id = run_script(service, demo_config(), novice_script)
    novice = sequence_from_log(service.session_log_path(novice_id))
    report = compare_sessions(novice, model, demo_checklist())
    print(f"\nnovice session {novice_id}: {' -> '.join(novice.object_ids)}")
    print(format_report_table(report))
    print(f"\nartifacts under {OUT}/")


if __name__ == "__main__":
    main()
