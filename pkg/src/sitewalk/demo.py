"""Bundled corridor-and-room demo: scene, inspection script, and checklist.

Gives every entry point (tests, demos, CLI smoke runs) the same small world:
a corridor joined to a room through a door, with one object of each
equipment class mounted on the walls.
"""

from __future__ import annotations

import json
from importlib import resources

from .agent import AgentScript, script_from_document
from .capture import DEFAULT_DWELL_THRESHOLD, DEFAULT_GAP_TOLERANCE, DEFAULT_TICK_DT
from .evaluation import ChecklistSpec, checklist_from_document
from .scene import Scene, load_scene
from .service import SessionConfig

DEMO_START_POSE = ((1.0, 3.0, 1.5), 0.0, 0.0)


def _data(name: str) -> bytes:
    return resources.files("sitewalk.data").joinpath(name).read_bytes()


def demo_scene_bytes() -> bytes:
    return _data("demo_scene.json")


def demo_scene() -> Scene:
    return load_scene(demo_scene_bytes())


def demo_script_bytes() -> bytes:
    return _data("demo_script.json")


def demo_script() -> AgentScript:
    return script_from_document(json.loads(demo_script_bytes()))


def demo_checklist_bytes() -> bytes:
    return _data("demo_checklist.json")


def demo_checklist() -> ChecklistSpec:
    return checklist_from_document(json.loads(demo_checklist_bytes()))


def demo_config() -> SessionConfig:
    position, yaw, pitch = DEMO_START_POSE
    return SessionConfig(
        scene_name="corridor-room",
        tick_dt=DEFAULT_TICK_DT,
        dwell_threshold=DEFAULT_DWELL_THRESHOLD,
        gap_tolerance=DEFAULT_GAP_TOLERANCE,
        start_position=position,
        start_yaw=yaw,
        start_pitch=pitch,
    )
