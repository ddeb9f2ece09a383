"""Scoring a session against a checklist and against the mined strategy."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .capture import ObservationSequence
from .mining import StrategyModel
from .scene import ObjectClass

# class-level fallback instructions used when an object carries none
DEFAULT_CLASS_INSTRUCTIONS: dict[ObjectClass, tuple[str, ...]] = {
    ObjectClass.FIRE_EXTINGUISHER: ("check the test and maintenance dates",),
    ObjectClass.FIRE_ALARM_PANEL: ("check the battery conditions",),
    ObjectClass.EXIT_SIGN: ("check the battery conditions",),
}


@dataclass(frozen=True)
class ChecklistSpec:
    required: tuple[str, ...]
    class_instructions: Mapping[ObjectClass, tuple[str, ...]] = None

    def __post_init__(self):
        if len(set(self.required)) != len(self.required):
            raise ValueError("checklist required ids must be distinct")
        if self.class_instructions is None:
            object.__setattr__(self, "class_instructions", dict(DEFAULT_CLASS_INSTRUCTIONS))

    def instructions_for(self, object_class: ObjectClass) -> tuple[str, ...]:
        return tuple(self.class_instructions.get(object_class, ()))


@dataclass(frozen=True)
class CoverageReport:
    observed: frozenset[str]
    missed: frozenset[str]
    coverage: float
    order_distance: float | None = None


def levenshtein(a: Sequence[str], b: Sequence[str]) -> int:
    """Edit distance (insert/delete/substitute) between two id lists."""
    prev = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        cur = [i] + [0] * len(b)
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                cur[j] = prev[j - 1]
            else:
                cur[j] = 1 + min(prev[j - 1], prev[j], cur[j - 1])
        prev = cur
    return prev[len(b)]


def fold_consecutive(ids: Iterable[str]) -> list[str]:
    folded: list[str] = []
    for object_id in ids:
        if not folded or folded[-1] != object_id:
            folded.append(object_id)
    return folded


def order_distance(sequence: ObservationSequence, canonical: Sequence[str]) -> float:
    """Levenshtein distance between the (duplicate-folded) observed order and
    the canonical order, normalized by the longer list's length."""
    if not canonical:
        raise ValueError("canonical order must be nonempty")
    observed = fold_consecutive(sequence.object_ids)
    longest = max(len(observed), len(canonical))
    if longest == 0:
        return 0.0
    return levenshtein(observed, list(canonical)) / longest


def coverage(sequence: ObservationSequence, checklist: ChecklistSpec) -> CoverageReport:
    if not checklist.required:
        raise ValueError("checklist must name at least one required object")
    seen = set(sequence.object_ids)
    observed = frozenset(oid for oid in checklist.required if oid in seen)
    missed = frozenset(checklist.required) - observed
    return CoverageReport(observed, missed, len(observed) / len(checklist.required))


def compare_sessions(novice: ObservationSequence, model: StrategyModel,
                     checklist: ChecklistSpec) -> CoverageReport:
    """Checklist coverage plus order distance against the expert consensus
    restricted to the checklist."""
    base = coverage(novice, checklist)
    required = set(checklist.required)
    restricted = [oid for oid in model.canonical_order if oid in required]
    if not restricted:
        raise ValueError("model covers no checklist object")
    return CoverageReport(base.observed, base.missed, base.coverage,
                          order_distance(novice, restricted))


# ---------------------------------------------------------------------------
# documents and display

def checklist_to_document(checklist: ChecklistSpec) -> dict:
    return {
        "required": list(checklist.required),
        "class_instructions": {
            cls.value: list(texts) for cls, texts in checklist.class_instructions.items()
        },
    }


def checklist_from_document(doc: dict) -> ChecklistSpec:
    instructions = {
        ObjectClass(cls): tuple(texts)
        for cls, texts in doc.get("class_instructions", {}).items()
    }
    if not instructions:
        instructions = dict(DEFAULT_CLASS_INSTRUCTIONS)
    return ChecklistSpec(tuple(doc["required"]), instructions)


def serialize_checklist(checklist: ChecklistSpec) -> bytes:
    return (json.dumps(checklist_to_document(checklist), indent=2) + "\n").encode("utf-8")


def report_to_document(report: CoverageReport) -> dict:
    doc = {
        "observed": sorted(report.observed),
        "missed": sorted(report.missed),
        "coverage": report.coverage,
    }
    if report.order_distance is not None:
        doc["order_distance"] = report.order_distance
    return doc


def format_report_table(report: CoverageReport) -> str:
    lines = [
        f"{'coverage':<16} {report.coverage:.3f}",
        f"{'observed':<16} {', '.join(sorted(report.observed)) or '-'}",
        f"{'missed':<16} {', '.join(sorted(report.missed)) or '-'}",
    ]
    if report.order_distance is not None:
        lines.append(f"{'order_distance':<16} {report.order_distance:.3f}")
    return "\n".join(lines)
