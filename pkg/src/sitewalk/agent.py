"""Deterministic scripted inspector: drives a session from a stop list.

The agent stands in for a human pilot in batch runs and end-to-end tests.
For each stop it picks a viewpoint, follows a grid path there with a
turn-then-advance controller, and holds the gaze on the object for the
scripted dwell. Identical inputs produce byte-identical session logs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .capture import TrajectorySample
from .drone import DRONE_RADIUS, ControlInput
from .geometry import Vec3, clamp, distance, normalize_yaw, vec3
from .guidance import DEFAULT_STANDOFF, plan_path, select_viewpoint
from .scene import Scene, build_occupancy
from .service import SessionConfig, SessionService

HEADING_TOLERANCE = 0.1   # rad; start advancing below this yaw error
STOP_RADIUS = 0.15        # m; a path point counts as reached inside this

_MAX_STALL_TICKS = 100
_MAX_ALIGN_TICKS = 600


class AgentError(RuntimeError):
    """A scripted stop could not be completed."""


@dataclass(frozen=True)
class Stop:
    object_id: str
    dwell: float


@dataclass(frozen=True)
class AgentScript:
    stops: tuple[Stop, ...]
    speed: float = 2.0
    turn_rate: float = math.pi / 2


def script_from_document(doc: dict) -> AgentScript:
    stops = tuple(Stop(s["object_id"], float(s["dwell"])) for s in doc["stops"])
    return AgentScript(stops, float(doc.get("speed", 2.0)),
                       float(doc.get("turn_rate", math.pi / 2)))


def script_to_document(script: AgentScript) -> dict:
    return {
        "stops": [{"object_id": s.object_id, "dwell": s.dwell} for s in script.stops],
        "speed": script.speed,
        "turn_rate": script.turn_rate,
    }


def load_script(data: bytes | str) -> AgentScript:
    return script_from_document(json.loads(data))


def _validate_script(scene: Scene, config: SessionConfig, script: AgentScript) -> None:
    for stop in script.stops:
        if stop.object_id not in scene:
            raise ValueError(f"script stop references unknown object '{stop.object_id}'")
        if stop.dwell <= 0:
            raise ValueError(f"stop '{stop.object_id}': dwell must be positive")
    if not 0 < script.speed <= config.limits.linear:
        raise ValueError(f"script speed {script.speed} exceeds limit {config.limits.linear}")
    if not 0 < script.turn_rate <= config.limits.angular:
        raise ValueError(
            f"script turn_rate {script.turn_rate} exceeds limit {config.limits.angular}")


def _steer(position: Vec3, yaw: float, pitch: float, target: Vec3,
           speed: float, turn_rate: float, dt: float,
           aim_pitch: bool = False) -> ControlInput:
    """One-tick control toward a point: turn first, advance once aligned."""
    dx = target[0] - position[0]
    dy = target[1] - position[1]
    dz = target[2] - position[2]
    horizontal = math.hypot(dx, dy)

    desired_yaw = math.atan2(dy, dx) if horizontal > 1e-9 else yaw
    yaw_error = normalize_yaw(desired_yaw - yaw)
    yaw_rate = clamp(yaw_error / dt, -turn_rate, turn_rate)

    desired_pitch = math.atan2(dz, horizontal) if aim_pitch else 0.0
    pitch_rate = clamp((desired_pitch - pitch) / dt, -turn_rate, turn_rate)

    if abs(yaw_error) < HEADING_TOLERANCE:
        v_forward = clamp(horizontal / dt, 0.0, speed)
        v_vertical = clamp(dz / dt, -speed, speed)
    else:
        v_forward = 0.0
        v_vertical = 0.0
    return ControlInput(v_forward=v_forward, v_vertical=v_vertical,
                        yaw_rate=yaw_rate, pitch_rate=pitch_rate)


def _tick(service: SessionService, session_id: str,
          control: ControlInput) -> TrajectorySample:
    service.submit_control(session_id, control)
    return service.tick(session_id)


def _follow_path(service: SessionService, session_id: str, points: list[Vec3],
                 script: AgentScript, config: SessionConfig) -> None:
    dt = config.tick_dt
    index = 0
    stalled = 0
    while index < len(points):
        state = service.current_state(session_id)
        if distance(state.position, points[index]) < STOP_RADIUS:
            index += 1
            continue
        control = _steer(state.position, state.yaw, state.pitch, points[index],
                         script.speed, script.turn_rate, dt)
        sample = _tick(service, session_id, control)
        moved = distance(sample.state.position, state.position)
        if moved < 1e-12 and control.v_forward == 0.0 and control.v_vertical == 0.0:
            stalled = 0  # still turning in place
        elif moved < 1e-12:
            stalled += 1
            if stalled > _MAX_STALL_TICKS:
                raise AgentError(f"stalled en route to {points[index]}")
        else:
            stalled = 0


def _dwell_at(service: SessionService, session_id: str, look_at: Vec3,
              stop: Stop, script: AgentScript, config: SessionConfig) -> None:
    dt = config.tick_dt
    needed = max(1, round(stop.dwell / dt))
    gazed = 0
    ticks = 0
    while gazed < needed:
        state = service.current_state(session_id)
        control = _steer(state.position, state.yaw, state.pitch, look_at,
                         0.0, script.turn_rate, dt, aim_pitch=True)
        control = ControlInput(yaw_rate=control.yaw_rate, pitch_rate=control.pitch_rate)
        sample = _tick(service, session_id, control)
        if sample.gaze_object == stop.object_id:
            gazed += 1
        ticks += 1
        if ticks > needed + _MAX_ALIGN_TICKS:
            raise AgentError(f"never acquired gaze on '{stop.object_id}'")


def run_script(service: SessionService, config: SessionConfig, script: AgentScript,
               session_id: str | None = None,
               standoff: float = DEFAULT_STANDOFF) -> str:
    """Run one full scripted session; returns its id (the session is ended)."""
    scene = service.get_scene(config.scene_name)
    _validate_script(scene, config, script)
    # plan on a grid inflated by the drone radius so every planned cell is flyable
    grid = build_occupancy(scene, inflate=DRONE_RADIUS)
    sid = service.create_session(config, session_id)
    for stop in script.stops:
        try:
            viewpoint = select_viewpoint(scene, grid, stop.object_id, standoff,
                                         config.sensor)
            state = service.current_state(sid)
            points = plan_path(grid, state.position, viewpoint)
        except Exception as exc:
            raise AgentError(f"stop '{stop.object_id}': {exc}") from exc
        _follow_path(service, sid, points, script, config)
        _dwell_at(service, sid, scene.get(stop.object_id).aabb.center(), stop,
                  script, config)
    service.end_session(sid)
    return sid
