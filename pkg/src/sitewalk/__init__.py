"""sitewalk: capture simulated inspection flights, mine observation
strategies across sessions, and synthesize replayable guidance plans."""

from .agent import AgentScript, Stop, run_script
from .capture import (Fixation, ObservationSequence, Trajectory, TrajectorySample,
                      extract_fixations, to_observation_sequence)
from .drone import (ControlInput, DetectionEvent, DroneState, Limits, SensorConfig,
                    sense, step)
from .evaluation import (ChecklistSpec, CoverageReport, compare_sessions, coverage,
                         order_distance)
from .geometry import Box
from .guidance import (GuidancePlan, Waypoint, plan_guidance, plan_path,
                       select_viewpoint)
from .mining import (AttentionStats, DirectlyFollowsGraph, FrequentPattern,
                     StrategyModel, attention_profile, build_dfg,
                     build_strategy_model, canonical_order, export_knowledge_graph,
                     mine_patterns)
from .scene import (ObjectClass, OccupancyGrid, RayHit, Scene, SemanticObject,
                    build_occupancy, load_scene, ray_intersect, save_scene)
from .service import SessionConfig, SessionService

__version__ = "0.1.0"

__all__ = [
    "AgentScript", "AttentionStats", "Box", "ChecklistSpec", "ControlInput",
    "CoverageReport", "DetectionEvent", "DirectlyFollowsGraph", "DroneState",
    "Fixation", "FrequentPattern", "GuidancePlan", "Limits", "ObjectClass",
    "ObservationSequence", "OccupancyGrid", "RayHit", "Scene", "SemanticObject",
    "SensorConfig", "SessionConfig", "SessionService", "Stop", "StrategyModel",
    "Trajectory", "TrajectorySample", "Waypoint", "attention_profile", "build_dfg",
    "build_occupancy", "build_strategy_model", "canonical_order", "compare_sessions",
    "coverage", "export_knowledge_graph", "extract_fixations", "load_scene",
    "mine_patterns", "order_distance", "plan_guidance", "plan_path", "ray_intersect",
    "run_script", "save_scene", "select_viewpoint", "sense", "step",
    "to_observation_sequence",
]
