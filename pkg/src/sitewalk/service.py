"""Session manager: authoritative simulation ticks, persistence, mining, plans.

The service owns scenes, sessions, mined models, and guidance plans under a
plain-file data directory (scenes/, sessions/<id>.jsonl, models/, plans/,
checklists/). Clients submit control intent; the server integrates motion, so
a session log is a pure function of the scene, the config, and the ordered
control stream.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from . import capture, drone, evaluation, guidance, mining
from .capture import (Trajectory, TrajectorySample, parse_session_log,
                      sequence_from_log, serialize_session_log)
from .drone import ControlInput, DroneState, Limits, SensorConfig
from .evaluation import ChecklistSpec
from .geometry import Vec3, vec3
from .mining import StrategyModel
from .scene import Scene, load_scene, save_scene

MIN_TICK_DT = 0.01
MAX_TICK_DT = 0.2


class SessionEndedError(RuntimeError):
    """Further controls/ticks on an ended session are rejected."""


@dataclass(frozen=True)
class SessionConfig:
    scene_name: str
    tick_dt: float = capture.DEFAULT_TICK_DT
    sensor: SensorConfig = SensorConfig()
    limits: Limits = Limits()
    dwell_threshold: float = capture.DEFAULT_DWELL_THRESHOLD
    gap_tolerance: float = capture.DEFAULT_GAP_TOLERANCE
    start_position: Vec3 = (0.0, 0.0, 0.0)
    start_yaw: float = 0.0
    start_pitch: float = 0.0

    def start_state(self) -> DroneState:
        return DroneState(vec3(*self.start_position), self.start_yaw,
                          self.start_pitch, 0.0)


def config_to_document(config: SessionConfig) -> dict:
    return {
        "scene_name": config.scene_name,
        "tick_dt": config.tick_dt,
        "sensor": {
            "max_range": config.sensor.max_range,
            "cone_half_angle": config.sensor.cone_half_angle,
            "rays_per_ring": config.sensor.rays_per_ring,
            "rings": config.sensor.rings,
        },
        "limits": {"linear": config.limits.linear, "angular": config.limits.angular},
        "dwell_threshold": config.dwell_threshold,
        "gap_tolerance": config.gap_tolerance,
        "start_pose": {
            "position": list(config.start_position),
            "yaw": config.start_yaw,
            "pitch": config.start_pitch,
        },
    }


def config_from_document(doc: dict) -> SessionConfig:
    sensor = doc.get("sensor", {})
    limits = doc.get("limits", {})
    pose = doc.get("start_pose", {})
    return SessionConfig(
        scene_name=doc["scene_name"],
        tick_dt=float(doc.get("tick_dt", capture.DEFAULT_TICK_DT)),
        sensor=SensorConfig(
            max_range=float(sensor.get("max_range", 10.0)),
            cone_half_angle=float(sensor.get("cone_half_angle", SensorConfig().cone_half_angle)),
            rays_per_ring=int(sensor.get("rays_per_ring", 8)),
            rings=int(sensor.get("rings", 2)),
        ),
        limits=Limits(linear=float(limits.get("linear", 2.0)),
                      angular=float(limits.get("angular", Limits().angular))),
        dwell_threshold=float(doc.get("dwell_threshold", capture.DEFAULT_DWELL_THRESHOLD)),
        gap_tolerance=float(doc.get("gap_tolerance", capture.DEFAULT_GAP_TOLERANCE)),
        start_position=vec3(*pose.get("position", (0.0, 0.0, 0.0))),
        start_yaw=float(pose.get("yaw", 0.0)),
        start_pitch=float(pose.get("pitch", 0.0)),
    )


@dataclass
class Session:
    id: str
    config: SessionConfig
    scene: Scene
    state: DroneState
    trajectory: Trajectory
    status: str = "active"  # active | ended
    latest_control: ControlInput = ControlInput()
    _control_lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def active(self) -> bool:
        return self.status == "active"


def control_from_document(doc: dict) -> ControlInput:
    return ControlInput(
        v_forward=float(doc.get("v_forward", 0.0)),
        v_strafe=float(doc.get("v_strafe", 0.0)),
        v_vertical=float(doc.get("v_vertical", 0.0)),
        yaw_rate=float(doc.get("yaw_rate", 0.0)),
        pitch_rate=float(doc.get("pitch_rate", 0.0)),
    )


class SessionService:
    """Owns the data directory and all live sessions.

    One logical owner advances each session's ticks; control submissions may
    arrive concurrently and are swapped in atomically.
    """

    SUBDIRS = ("scenes", "sessions", "models", "plans", "checklists")

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        for sub in self.SUBDIRS:
            (self.data_dir / sub).mkdir(parents=True, exist_ok=True)
        self._scenes: dict[str, Scene] = {}
        for path in sorted((self.data_dir / "scenes").glob("*.json")):
            scene = load_scene(path.read_bytes())
            self._scenes[scene.name] = scene
        self._sessions: dict[str, Session] = {}
        self._counters = {
            "s": self._next_index("sessions", "*.jsonl"),
            "m": self._next_index("models", "*.json"),
            "p": self._next_index("plans", "*.json"),
        }
        self._id_lock = threading.Lock()

    def _next_index(self, sub: str, pattern: str) -> int:
        return len(list((self.data_dir / sub).glob(pattern))) + 1

    def _new_id(self, kind: str) -> str:
        with self._id_lock:
            idx = self._counters[kind]
            self._counters[kind] += 1
        return f"{kind}{idx:04d}"

    # -- scenes -------------------------------------------------------------

    def add_scene(self, scene: Scene) -> None:
        self._scenes[scene.name] = scene
        (self.data_dir / "scenes" / f"{scene.name}.json").write_bytes(save_scene(scene))

    def list_scenes(self) -> list[str]:
        return sorted(self._scenes)

    def get_scene(self, name: str) -> Scene:
        if name not in self._scenes:
            raise KeyError(f"unknown scene '{name}'")
        return self._scenes[name]

    # -- sessions -----------------------------------------------------------

    def create_session(self, config: SessionConfig, session_id: str | None = None) -> str:
        scene = self.get_scene(config.scene_name)
        if not MIN_TICK_DT <= config.tick_dt <= MAX_TICK_DT:
            raise ValueError(f"tick_dt {config.tick_dt} outside [{MIN_TICK_DT}, {MAX_TICK_DT}]")
        state = config.start_state()
        if not drone.pose_is_valid(scene, state.position):
            raise ValueError(f"start pose {state.position} invalid for scene '{scene.name}'")
        sid = session_id or self._new_id("s")
        if sid in self._sessions or (self.data_dir / "sessions" / f"{sid}.jsonl").exists():
            raise ValueError(f"session id '{sid}' already exists")
        trajectory = Trajectory(sid, scene.name, config.tick_dt)
        self._sessions[sid] = Session(sid, config, scene, state, trajectory)
        return sid

    def _session(self, session_id: str) -> Session:
        if session_id not in self._sessions:
            raise KeyError(f"unknown session '{session_id}'")
        return self._sessions[session_id]

    def submit_control(self, session_id: str, control: ControlInput) -> None:
        session = self._session(session_id)
        if not session.active:
            raise SessionEndedError(f"session '{session_id}' has ended")
        control.check(session.config.limits)
        with session._control_lock:
            session.latest_control = control

    def tick(self, session_id: str) -> TrajectorySample:
        """Advance exactly one tick with the latest control and record it."""
        session = self._session(session_id)
        if not session.active:
            raise SessionEndedError(f"session '{session_id}' has ended")
        with session._control_lock:
            control = session.latest_control
        session.state = drone.step(session.scene, session.state, control,
                                    session.config.tick_dt, session.config.limits)
        gaze, detections = drone.sense(session.scene, session.state, session.config.sensor)
        sample = TrajectorySample(session.state.time, session.state, gaze,
                                  tuple(d.object_id for d in detections))
        session.trajectory.record(sample)
        return sample

    def latest_sample(self, session_id: str) -> TrajectorySample | None:
        session = self._session(session_id)
        return session.trajectory.samples[-1] if session.trajectory.samples else None

    def current_state(self, session_id: str) -> DroneState:
        return self._session(session_id).state

    def session_log_path(self, session_id: str) -> Path:
        return self.data_dir / "sessions" / f"{session_id}.jsonl"

    def end_session(self, session_id: str) -> dict:
        """Finalize: persist the log and report the observation sequence."""
        session = self._session(session_id)
        if not session.active:
            raise SessionEndedError(f"session '{session_id}' has ended")
        session.status = "ended"
        log = serialize_session_log(session.trajectory, session.config.dwell_threshold,
                                    session.config.gap_tolerance,
                                    session.scene.obstacle_ids)
        self.session_log_path(session_id).write_bytes(log)
        fixations = capture.extract_fixations(
            session.trajectory, session.config.dwell_threshold,
            session.config.gap_tolerance, session.scene.obstacle_ids)
        sequence = capture.to_observation_sequence(fixations, session_id)
        return {
            "session_id": session_id,
            "scene_name": session.scene.name,
            "samples": len(session.trajectory.samples),
            "duration": session.trajectory.span,
            "observation_sequence": [
                {"object_id": f.object_id, "start": f.start, "end": f.end,
                 "duration": f.duration}
                for f in sequence.fixations
            ],
        }

    def session_status(self, session_id: str) -> str:
        return self._session(session_id).status

    # -- mining ---------------------------------------------------------------

    def run_mining(self, session_ids: list[str],
                   min_support: int = mining.DEFAULT_MIN_SUPPORT,
                   max_len: int = mining.DEFAULT_MAX_PATTERN_LEN,
                   model_id: str | None = None) -> str:
        if not session_ids:
            raise ValueError("no sessions selected for mining")
        sequences = []
        scene_names = set()
        for sid in session_ids:
            path = self.session_log_path(sid)
            if not path.exists():
                raise KeyError(f"no session log for '{sid}'")
            data = path.read_bytes()
            _, header = parse_session_log(data)
            scene_names.add(header.scene_name)
            sequences.append(sequence_from_log(data))
        if len(scene_names) > 1:
            raise ValueError(f"sessions span multiple scenes: {sorted(scene_names)}")
        model = mining.build_strategy_model(sequences, scene_names.pop(),
                                            min_support, max_len)
        mid = model_id or self._new_id("m")
        (self.data_dir / "models" / f"{mid}.json").write_bytes(mining.serialize_model(model))
        return mid

    def model_document(self, model_id: str) -> dict:
        path = self.data_dir / "models" / f"{model_id}.json"
        if not path.exists():
            raise KeyError(f"unknown model '{model_id}'")
        return json.loads(path.read_bytes())

    def get_model(self, model_id: str) -> StrategyModel:
        return mining.model_from_document(self.model_document(model_id))

    # -- checklists -----------------------------------------------------------

    def add_checklist(self, checklist_id: str, checklist: ChecklistSpec) -> None:
        path = self.data_dir / "checklists" / f"{checklist_id}.json"
        path.write_bytes(evaluation.serialize_checklist(checklist))

    def get_checklist(self, checklist_id: str) -> ChecklistSpec:
        path = self.data_dir / "checklists" / f"{checklist_id}.json"
        if not path.exists():
            raise KeyError(f"unknown checklist '{checklist_id}'")
        return evaluation.checklist_from_document(json.loads(path.read_bytes()))

    # -- guidance ---------------------------------------------------------------

    def get_guidance(self, model_id: str, checklist_id: str, start: Vec3,
                     total_spheres: int = guidance.DEFAULT_TOTAL_SPHERES,
                     plan_id: str | None = None) -> str:
        model = self.get_model(model_id)
        checklist = self.get_checklist(checklist_id)
        scene = self.get_scene(model.scene_name)
        plan = guidance.plan_guidance(scene, model, checklist, start, total_spheres)
        pid = plan_id or self._new_id("p")
        (self.data_dir / "plans" / f"{pid}.json").write_bytes(guidance.serialize_plan(plan))
        return pid

    def plan_document(self, plan_id: str) -> dict:
        path = self.data_dir / "plans" / f"{plan_id}.json"
        if not path.exists():
            raise KeyError(f"unknown plan '{plan_id}'")
        return json.loads(path.read_bytes())

    def get_plan(self, plan_id: str) -> guidance.GuidancePlan:
        return guidance.plan_from_document(self.plan_document(plan_id))
