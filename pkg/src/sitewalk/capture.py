"""Trajectory recording and fixation extraction.

A session produces a trajectory of fixed-rate samples; dwell analysis turns
the gaze stream into fixations and an observation sequence, the unit that
strategy mining consumes. Session logs are JSON Lines with a header line, so
a log alone carries everything needed to reproduce its observation sequence
bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .drone import DroneState
from .geometry import Vec3, vec3

DEFAULT_TICK_DT = 0.05
DEFAULT_DWELL_THRESHOLD = 1.0
DEFAULT_GAP_TOLERANCE = 0.25

# spacing/merge comparisons tolerate per-tick float accumulation error
TIME_EPS = 1e-9


@dataclass(frozen=True)
class TrajectorySample:
    time: float
    state: DroneState
    gaze_object: str | None = None
    detections: tuple[str, ...] = ()

    def __post_init__(self):
        if self.time != self.state.time:
            raise ValueError(f"sample time {self.time} != state time {self.state.time}")


@dataclass
class Trajectory:
    """Append-only sample stream for one session; one writer at a time."""

    session_id: str
    scene_name: str
    tick_dt: float = DEFAULT_TICK_DT
    samples: list[TrajectorySample] = field(default_factory=list)

    def record(self, sample: TrajectorySample) -> "Trajectory":
        if self.samples:
            last = self.samples[-1].time
            if sample.time <= last:
                raise ValueError(f"non-monotonic sample time {sample.time} after {last}")
            if abs((sample.time - last) - self.tick_dt) > TIME_EPS:
                raise ValueError(
                    f"off-tick sample: delta {sample.time - last} != tick_dt {self.tick_dt}")
        self.samples.append(sample)
        return self

    @property
    def span(self) -> float:
        """Total covered time; each sample accounts for one trailing tick."""
        if not self.samples:
            return 0.0
        return self.samples[-1].time + self.tick_dt - self.samples[0].time


@dataclass(frozen=True)
class Fixation:
    """A gap-merged dwell on one object. `duration` is end - start for an
    uninterrupted run; consecutive-merge in observation sequences sums it."""

    object_id: str
    start: float
    end: float
    duration: float

    @classmethod
    def from_span(cls, object_id: str, start: float, end: float) -> "Fixation":
        return cls(object_id, start, end, end - start)


@dataclass(frozen=True)
class ObservationSequence:
    session_id: str
    fixations: tuple[Fixation, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.fixations, self.fixations[1:]):
            if b.start < a.start:
                raise ValueError("fixations must be ordered by start time")
            if a.object_id == b.object_id:
                raise ValueError(f"consecutive fixations on '{a.object_id}' must be merged")

    @property
    def object_ids(self) -> tuple[str, ...]:
        return tuple(f.object_id for f in self.fixations)


def extract_fixations(trajectory: Trajectory,
                      dwell_threshold: float = DEFAULT_DWELL_THRESHOLD,
                      gap_tolerance: float = DEFAULT_GAP_TOLERANCE,
                      obstacle_ids: frozenset[str] | set[str] = frozenset()) -> list[Fixation]:
    """Dwell detection over the gaze stream.

    Maximal runs of consecutive samples gazing the same non-obstacle object
    are merged across gaps up to gap_tolerance (gaze lost or elsewhere), then
    filtered by span >= dwell_threshold. A run spans from its first sample to
    one tick past its last, so a single sample counts as tick_dt of gaze.
    """
    if dwell_threshold <= 0:
        raise ValueError("dwell_threshold must be positive")
    if gap_tolerance < 0:
        raise ValueError("gap_tolerance must be non-negative")

    dt = trajectory.tick_dt
    runs: list[tuple[str, float, float]] = []  # (object_id, start, end-incl-tick)
    for sample in trajectory.samples:
        gaze = sample.gaze_object
        if gaze is None or gaze in obstacle_ids:
            continue
        if runs and runs[-1][0] == gaze and abs(sample.time - runs[-1][2]) <= TIME_EPS:
            runs[-1] = (gaze, runs[-1][1], sample.time + dt)
        else:
            runs.append((gaze, sample.time, sample.time + dt))

    merged: dict[str, list[tuple[float, float]]] = {}
    for object_id, start, end in runs:
        spans = merged.setdefault(object_id, [])
        if spans and start - spans[-1][1] <= gap_tolerance + TIME_EPS:
            spans[-1] = (spans[-1][0], end)
        else:
            spans.append((start, end))

    fixations = [
        Fixation.from_span(object_id, start, end)
        for object_id, spans in merged.items()
        for start, end in spans
        if end - start >= dwell_threshold - TIME_EPS
    ]
    fixations.sort(key=lambda f: (f.start, f.object_id))
    return fixations


def to_observation_sequence(fixations: Iterable[Fixation],
                            session_id: str) -> ObservationSequence:
    """Fold consecutive fixations on the same object into one entry
    (summed duration, spanning start/end). Idempotent."""
    items = list(fixations)
    for a, b in zip(items, items[1:]):
        if b.start < a.start:
            raise ValueError("fixations must be sorted by start time")
    folded: list[Fixation] = []
    for fix in items:
        if folded and folded[-1].object_id == fix.object_id:
            prev = folded[-1]
            folded[-1] = Fixation(prev.object_id, prev.start, max(prev.end, fix.end),
                                  prev.duration + fix.duration)
        else:
            folded.append(fix)
    return ObservationSequence(session_id, tuple(folded))


# ---------------------------------------------------------------------------
# session log I/O (JSON Lines: one header line, then one line per sample)

def sample_to_document(sample: TrajectorySample) -> dict:
    return {
        "time": sample.time,
        "position": list(sample.state.position),
        "yaw": sample.state.yaw,
        "pitch": sample.state.pitch,
        "gaze_object": sample.gaze_object,
        "detections": list(sample.detections),
    }


def sample_to_line(sample: TrajectorySample) -> str:
    return json.dumps(sample_to_document(sample), separators=(",", ":"))


def sample_from_line(line: str) -> TrajectorySample:
    raw = json.loads(line)
    state = DroneState(vec3(*raw["position"]), raw["yaw"], raw["pitch"], raw["time"])
    return TrajectorySample(raw["time"], state, raw["gaze_object"],
                            tuple(raw["detections"]))


@dataclass(frozen=True)
class SessionLogHeader:
    session_id: str
    scene_name: str
    tick_dt: float
    dwell_threshold: float
    gap_tolerance: float
    obstacle_ids: tuple[str, ...] = ()


def serialize_session_log(trajectory: Trajectory, dwell_threshold: float,
                          gap_tolerance: float,
                          obstacle_ids: Iterable[str] = ()) -> bytes:
    header = json.dumps({
        "session_id": trajectory.session_id,
        "scene_name": trajectory.scene_name,
        "tick_dt": trajectory.tick_dt,
        "dwell_threshold": dwell_threshold,
        "gap_tolerance": gap_tolerance,
        "obstacle_ids": sorted(obstacle_ids),
    }, separators=(",", ":"))
    lines = [header] + [sample_to_line(s) for s in trajectory.samples]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_session_log(data: bytes | str) -> tuple[Trajectory, SessionLogHeader]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty session log")
    raw = json.loads(lines[0])
    header = SessionLogHeader(raw["session_id"], raw["scene_name"], raw["tick_dt"],
                              raw["dwell_threshold"], raw["gap_tolerance"],
                              tuple(raw.get("obstacle_ids", ())))
    trajectory = Trajectory(header.session_id, header.scene_name, header.tick_dt)
    for line in lines[1:]:
        trajectory.record(sample_from_line(line))
    return trajectory, header


def read_session_log(path: str | Path) -> tuple[Trajectory, SessionLogHeader]:
    return parse_session_log(Path(path).read_bytes())


def sequence_from_log(path_or_data: str | Path | bytes) -> ObservationSequence:
    """Reload a log and redo the dwell analysis with its recorded settings."""
    if isinstance(path_or_data, bytes):
        trajectory, header = parse_session_log(path_or_data)
    else:
        trajectory, header = read_session_log(path_or_data)
    fixations = extract_fixations(trajectory, header.dwell_threshold,
                                  header.gap_tolerance, frozenset(header.obstacle_ids))
    return to_observation_sequence(fixations, header.session_id)
