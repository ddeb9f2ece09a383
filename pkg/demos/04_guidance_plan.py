"""Turn a mined model into a replayable guidance plan.

Run: python3 demos/04_guidance_plan.py
"""

import tempfile

from sitewalk import run_script
from sitewalk.capture import sequence_from_log
from sitewalk.demo import demo_checklist, demo_config, demo_scene, demo_script
from sitewalk.guidance import flatten_spheres, plan_guidance
from sitewalk.mining import build_strategy_model
from sitewalk.service import SessionService


def main():
    scene = demo_scene()
    with tempfile.TemporaryDirectory() as tmp:
        service = SessionService(tmp)
        service.add_scene(scene)
        sequences = [
            sequence_from_log(service.session_log_path(
                run_script(service, demo_config(), demo_script(), f"run{i}")))
            for i in range(3)
        ]
    model = build_strategy_model(sequences, scene.name)

    plan = plan_guidance(scene, model, demo_checklist(),
                         start=demo_config().start_position, total_spheres=40)
    print(f"guidance plan for '{plan.scene_name}':")
    for wp, leg in zip(plan.waypoints, plan.legs):
        print(f"\n  {wp.object_id}  spheres={wp.sphere_count}  "
              f"dwell hint {wp.dwell_hint:.1f} s")
        print(f"    viewpoint ({wp.viewpoint[0]:.2f}, {wp.viewpoint[1]:.2f}, "
              f"{wp.viewpoint[2]:.2f}) looking at ({wp.look_at[0]:.2f}, "
              f"{wp.look_at[1]:.2f}, {wp.look_at[2]:.2f})")
        print(f"    leg: {len(leg)} points via "
              + " -> ".join(f"({p[0]:.1f},{p[1]:.1f},{p[2]:.1f})" for p in leg))
        for text in wp.instructions:
            print(f"    * {text}")

    spheres = flatten_spheres(plan)
    print(f"\nflattened replay markers: {len(spheres)} spheres "
          f"(density encodes relative attention)")


if __name__ == "__main__":
    main()
