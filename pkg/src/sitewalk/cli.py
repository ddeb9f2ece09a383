"""Command-line entry point for the whole pipeline.

Exit codes: 0 success, 1 validation/domain failure, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import agent, evaluation, guidance, mining
from .capture import parse_session_log, sequence_from_log
from .geometry import vec3
from .scene import SceneFormatError, load_scene
from .service import SessionService, config_from_document


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


def _write_json(path: str, doc: dict) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected x,y,z got {text!r}")
    return vec3(*(float(p) for p in parts))


def cmd_validate_scene(args) -> int:
    scene = load_scene(_read(args.scene))
    print(f"OK: scene '{scene.name}' with {len(scene.objects)} objects")
    return 0


def cmd_simulate(args) -> int:
    scene = load_scene(_read(args.scene))
    script = agent.load_script(_read(args.script))
    service = SessionService(args.data_dir)
    service.add_scene(scene)
    if args.config:
        config = config_from_document(json.loads(_read(args.config)))
        if config.scene_name != scene.name:
            raise ValueError(f"config names scene '{config.scene_name}', file is '{scene.name}'")
    else:
        from .demo import demo_config
        config = demo_config()
        if config.scene_name != scene.name:
            raise ValueError("pass --config for scenes other than the bundled demo")
    session_id = agent.run_script(service, config, script, args.session_id)
    print(session_id)
    print(f"log: {service.session_log_path(session_id)}")
    return 0


def cmd_mine(args) -> int:
    sequences = []
    scene_names = set()
    for log_path in args.logs:
        data = _read(log_path)
        _, header = parse_session_log(data)
        scene_names.add(header.scene_name)
        sequences.append(sequence_from_log(data))
    if len(scene_names) > 1:
        raise ValueError(f"logs span multiple scenes: {sorted(scene_names)}")
    model = mining.build_strategy_model(sequences, scene_names.pop(),
                                        args.min_support, args.max_len)
    _write_json(args.out, mining.model_to_document(model))
    print("canonical order:", " -> ".join(model.canonical_order))
    print(f"{'pattern':<40} support")
    for pattern in model.patterns[:10]:
        print(f"{' -> '.join(pattern.pattern):<40} {pattern.support}")
    print(f"model: {args.out}")
    return 0


def cmd_guide(args) -> int:
    scene = load_scene(_read(args.scene))
    model = mining.model_from_document(json.loads(_read(args.model)))
    checklist = evaluation.checklist_from_document(json.loads(_read(args.checklist)))
    if model.scene_name != scene.name:
        raise ValueError(f"model was mined on scene '{model.scene_name}'")
    start = _parse_point(args.start) if args.start else scene.bounds.center()
    plan = guidance.plan_guidance(scene, model, checklist, start, args.spheres)
    _write_json(args.out, guidance.plan_to_document(plan))
    for wp in plan.waypoints:
        print(f"{wp.object_id:<8} spheres={wp.sphere_count:<3} "
              f"viewpoint=({wp.viewpoint[0]:.2f}, {wp.viewpoint[1]:.2f}, {wp.viewpoint[2]:.2f})")
    print(f"plan: {args.out}")
    return 0


def cmd_evaluate(args) -> int:
    sequence = sequence_from_log(Path(args.log))
    checklist = evaluation.checklist_from_document(json.loads(_read(args.checklist)))
    if args.model:
        model = mining.model_from_document(json.loads(_read(args.model)))
        report = evaluation.compare_sessions(sequence, model, checklist)
    else:
        report = evaluation.coverage(sequence, checklist)
    print(json.dumps(evaluation.report_to_document(report), indent=2))
    print(evaluation.format_report_table(report))
    return 0 if report.coverage >= args.min_coverage else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    service = SessionService(args.data_dir)
    app = create_app(service)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_replay_export(args) -> int:
    plan = guidance.plan_from_document(json.loads(_read(args.plan)))
    doc = {
        "plan": guidance.plan_to_document(plan),
        "sphere_points": [list(p) for p in guidance.flatten_spheres(plan)],
    }
    if args.out:
        _write_json(args.out, doc)
        print(f"export: {args.out}")
    else:
        print(json.dumps(doc, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sitewalk",
                                     description="inspection capture, mining, and guidance")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-scene", help="load and validate a scene file")
    p.add_argument("scene")
    p.set_defaults(func=cmd_validate_scene)

    p = sub.add_parser("simulate", help="run a scripted inspection session")
    p.add_argument("scene")
    p.add_argument("script")
    p.add_argument("--config", help="session config JSON")
    p.add_argument("--data-dir", default="data")
    p.add_argument("--session-id")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("mine", help="mine a strategy model from session logs")
    p.add_argument("logs", nargs="+")
    p.add_argument("--min-support", type=int, default=mining.DEFAULT_MIN_SUPPORT)
    p.add_argument("--max-len", type=int, default=mining.DEFAULT_MAX_PATTERN_LEN)
    p.add_argument("--out", default="model.json")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("guide", help="synthesize a guidance plan")
    p.add_argument("scene")
    p.add_argument("model")
    p.add_argument("checklist")
    p.add_argument("--start", help="x,y,z start position (default: bounds center)")
    p.add_argument("--spheres", type=int, default=guidance.DEFAULT_TOTAL_SPHERES)
    p.add_argument("--out", default="plan.json")
    p.set_defaults(func=cmd_guide)

    p = sub.add_parser("evaluate", help="score a session log against a checklist")
    p.add_argument("log")
    p.add_argument("checklist")
    p.add_argument("--model", help="strategy model JSON for order distance")
    p.add_argument("--min-coverage", type=float, default=1.0,
                   help="exit nonzero below this coverage (default 1.0)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", help="start the session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default="data")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("replay-export", help="flatten a plan for external viewers")
    p.add_argument("plan")
    p.add_argument("--out")
    p.set_defaults(func=cmd_replay_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, PermissionError, IsADirectoryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SceneFormatError, ValueError, KeyError, RuntimeError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
