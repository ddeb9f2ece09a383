"""Strategy mining over observation sequences from multiple sessions.

Aggregates what inspectors looked at, in what order, and for how long:
a directly-follows graph, frequent contiguous patterns, a consensus visiting
order, and a normalized attention profile. The combined model can be exported
as a knowledge graph document.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .capture import Fixation, ObservationSequence
from .scene import Scene

DEFAULT_MIN_SUPPORT = 2
DEFAULT_MAX_PATTERN_LEN = 4


@dataclass
class DirectlyFollowsGraph:
    nodes: frozenset[str]
    edge_count: dict[tuple[str, str], int]
    start_count: dict[str, int]
    end_count: dict[str, int]
    sequence_count: int


@dataclass(frozen=True)
class FrequentPattern:
    pattern: tuple[str, ...]
    support: int


@dataclass(frozen=True)
class AttentionStats:
    visit_count: int
    mean_dwell: float
    weight: float


@dataclass
class StrategyModel:
    scene_name: str
    dfg: DirectlyFollowsGraph
    patterns: list[FrequentPattern]
    canonical_order: list[str]
    attention: dict[str, AttentionStats]
    sessions: list[str] = field(default_factory=list)


def _id_lists(sequences: list[ObservationSequence]) -> list[list[str]]:
    return [[f.object_id for f in seq.fixations] for seq in sequences]


def build_dfg(sequences: list[ObservationSequence]) -> DirectlyFollowsGraph:
    """Count directly-follows pairs, starts, and ends across all sequences."""
    lists = _id_lists(sequences)
    for i, ids in enumerate(lists):
        if not ids:
            raise ValueError(f"sequence {i} ('{sequences[i].session_id}') is empty")
    edges: Counter = Counter()
    starts: Counter = Counter()
    ends: Counter = Counter()
    nodes: set[str] = set()
    for ids in lists:
        nodes.update(ids)
        starts[ids[0]] += 1
        ends[ids[-1]] += 1
        for a, b in zip(ids, ids[1:]):
            edges[(a, b)] += 1
    return DirectlyFollowsGraph(frozenset(nodes), dict(edges), dict(starts),
                                dict(ends), len(lists))


def mine_patterns(sequences: list[ObservationSequence],
                  min_support: int = DEFAULT_MIN_SUPPORT,
                  max_len: int = DEFAULT_MAX_PATTERN_LEN) -> list[FrequentPattern]:
    """Contiguous subsequences of length 2..max_len, support counted once per
    containing sequence, kept when support >= min_support."""
    if min_support < 1:
        raise ValueError("min_support must be >= 1")
    if not 2 <= max_len <= 6:
        raise ValueError("max_len must be in [2, 6]")
    support: Counter = Counter()
    for ids in _id_lists(sequences):
        windows = set()
        for length in range(2, max_len + 1):
            for i in range(len(ids) - length + 1):
                windows.add(tuple(ids[i:i + length]))
        support.update(windows)
    found = [FrequentPattern(p, s) for p, s in support.items() if s >= min_support]
    found.sort(key=lambda fp: (-fp.support, -len(fp.pattern), fp.pattern))
    return found


def canonical_order(sequences: list[ObservationSequence]) -> list[str]:
    """Consensus visiting order by mean normalized rank.

    Each sequence containing an object contributes the mean of the object's
    occurrence positions divided by (length - 1); singleton sequences
    contribute 0. Objects sort by ascending mean rank, ties by id.
    """
    if not sequences:
        raise ValueError("at least one sequence required")
    ranks: dict[str, list[float]] = defaultdict(list)
    for ids in _id_lists(sequences):
        if not ids:
            continue
        positions: dict[str, list[int]] = defaultdict(list)
        for pos, object_id in enumerate(ids):
            positions[object_id].append(pos)
        denom = len(ids) - 1
        for object_id, occ in positions.items():
            value = 0.0 if denom == 0 else sum(occ) / len(occ) / denom
            ranks[object_id].append(value)
    return sorted(ranks, key=lambda oid: (sum(ranks[oid]) / len(ranks[oid]), oid))


def attention_profile(sequences: list[ObservationSequence]) -> dict[str, AttentionStats]:
    """Per-object visit counts and mean dwell, normalized to weights summing 1."""
    visits: Counter = Counter()
    total_dwell: dict[str, float] = defaultdict(float)
    for seq in sequences:
        for fix in seq.fixations:
            visits[fix.object_id] += 1
            total_dwell[fix.object_id] += fix.duration
    if not visits:
        raise ValueError("no fixations in any sequence")
    mean_dwell = {oid: total_dwell[oid] / visits[oid] for oid in visits}
    denom = sum(mean_dwell.values())
    return {
        oid: AttentionStats(visits[oid], mean_dwell[oid],
                            mean_dwell[oid] / denom if denom > 0 else 0.0)
        for oid in sorted(visits)
    }


def build_strategy_model(sequences: list[ObservationSequence], scene_name: str,
                         min_support: int = DEFAULT_MIN_SUPPORT,
                         max_len: int = DEFAULT_MAX_PATTERN_LEN) -> StrategyModel:
    nonempty = [s for s in sequences if s.fixations]
    if not nonempty:
        raise ValueError("no nonempty observation sequences to mine")
    return StrategyModel(
        scene_name=scene_name,
        dfg=build_dfg(nonempty),
        patterns=mine_patterns(nonempty, min_support, max_len),
        canonical_order=canonical_order(nonempty),
        attention=attention_profile(nonempty),
        sessions=[s.session_id for s in sequences],
    )


# ---------------------------------------------------------------------------
# strategy model document

def model_to_document(model: StrategyModel) -> dict:
    return {
        "scene_name": model.scene_name,
        "dfg": {
            "nodes": sorted(model.dfg.nodes),
            "edges": [
                {"from": a, "to": b, "count": c}
                for (a, b), c in sorted(model.dfg.edge_count.items())
            ],
            "starts": {k: model.dfg.start_count[k] for k in sorted(model.dfg.start_count)},
            "ends": {k: model.dfg.end_count[k] for k in sorted(model.dfg.end_count)},
        },
        "patterns": [
            {"pattern": list(p.pattern), "support": p.support} for p in model.patterns
        ],
        "canonical_order": list(model.canonical_order),
        "attention": {
            oid: {"visit_count": st.visit_count, "mean_dwell": st.mean_dwell,
                  "weight": st.weight}
            for oid, st in model.attention.items()
        },
        "sessions": list(model.sessions),
    }


def model_from_document(doc: dict) -> StrategyModel:
    dfg_doc = doc["dfg"]
    starts = {k: int(v) for k, v in dfg_doc["starts"].items()}
    dfg = DirectlyFollowsGraph(
        nodes=frozenset(dfg_doc["nodes"]),
        edge_count={(e["from"], e["to"]): int(e["count"]) for e in dfg_doc["edges"]},
        start_count=starts,
        end_count={k: int(v) for k, v in dfg_doc["ends"].items()},
        sequence_count=sum(starts.values()),
    )
    return StrategyModel(
        scene_name=doc["scene_name"],
        dfg=dfg,
        patterns=[FrequentPattern(tuple(p["pattern"]), int(p["support"]))
                  for p in doc["patterns"]],
        canonical_order=list(doc["canonical_order"]),
        attention={
            oid: AttentionStats(int(st["visit_count"]), float(st["mean_dwell"]),
                                float(st["weight"]))
            for oid, st in doc["attention"].items()
        },
        sessions=list(doc["sessions"]),
    )


def serialize_model(model: StrategyModel) -> bytes:
    return (json.dumps(model_to_document(model), indent=2) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# knowledge graph export

def export_knowledge_graph(model: StrategyModel, scene: Scene) -> dict:
    """Graph document: object and class nodes; follows / instance_of /
    has_instruction edges. Patterns are model content, not graph content."""
    covered = sorted(set(model.dfg.nodes) | set(model.attention)
                     | set(model.canonical_order))
    for object_id in covered:
        if object_id not in scene:
            raise KeyError(f"model references unknown object id '{object_id}'")
    nodes = []
    classes = []
    for object_id in covered:
        obj = scene.get(object_id)
        nodes.append({
            "id": object_id,
            "kind": "object",
            "attrs": {"class": obj.object_class.value,
                      "instructions": list(obj.instructions)},
        })
        if obj.object_class.value not in classes:
            classes.append(obj.object_class.value)
    for cls in sorted(classes):
        nodes.append({"id": cls, "kind": "class", "attrs": {}})

    edges = []
    for (a, b), count in sorted(model.dfg.edge_count.items()):
        edges.append({"from": a, "to": b, "relation": "follows", "weight": count})
    for object_id in covered:
        obj = scene.get(object_id)
        edges.append({"from": object_id, "to": obj.object_class.value,
                      "relation": "instance_of"})
        for text in obj.instructions:
            edges.append({"from": object_id, "to": text, "relation": "has_instruction"})
    return {"nodes": nodes, "edges": edges}


@dataclass(frozen=True)
class KnowledgeGraph:
    """Multisets of nodes and edges, for round-trip comparison."""
    nodes: tuple
    edges: tuple


def import_knowledge_graph(doc: dict) -> KnowledgeGraph:
    def freeze(value):
        if isinstance(value, dict):
            return tuple(sorted((k, freeze(v)) for k, v in value.items()))
        if isinstance(value, list):
            return tuple(freeze(v) for v in value)
        return value

    nodes = tuple(sorted(freeze(n) for n in doc["nodes"]))
    edges = tuple(sorted(freeze(e) for e in doc["edges"]))
    return KnowledgeGraph(nodes, edges)
