"""Guidance plan synthesis: attention-weighted waypoints joined by grid paths.

Waypoints follow the mined consensus order restricted to a checklist; each
gets a sphere count proportional to its attention weight (the replay client
renders denser clusters where experts dwelled longer) and the instructions
to show there. Legs are collision-free polylines from an A* grid search.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass

import numpy as np

from .drone import SensorConfig
from .evaluation import ChecklistSpec
from .geometry import Vec3, distance, vec3
from .mining import StrategyModel
from .scene import OccupancyGrid, Scene, build_occupancy, ray_intersect

DEFAULT_STANDOFF = 1.5
DEFAULT_TOTAL_SPHERES = 40

# +x, -x, +y, -y, +z, -z
FACE_NORMALS = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))

_NEIGHBOR_STEPS = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))


class ViewpointError(RuntimeError):
    """No viewpoint with line of sight exists for the object."""


class UnreachableError(RuntimeError):
    """No free-cell path between the requested endpoints."""


@dataclass(frozen=True)
class Waypoint:
    object_id: str
    viewpoint: Vec3
    look_at: Vec3
    sphere_count: int
    instructions: tuple[str, ...]
    dwell_hint: float


@dataclass(frozen=True)
class GuidancePlan:
    scene_name: str
    waypoints: tuple[Waypoint, ...]
    legs: tuple[tuple[Vec3, ...], ...]  # legs[0] runs from the start pose


def _has_line_of_sight(scene: Scene, point: Vec3, object_id: str,
                       max_range: float) -> bool:
    target = scene.get(object_id).aabb.center()
    offset = np.asarray(target) - np.asarray(point)
    length = float(np.linalg.norm(offset))
    if length == 0.0:
        return False
    hit = ray_intersect(scene, point, offset / length, max_range)
    return hit is not None and hit.object_id == object_id


def select_viewpoint(scene: Scene, grid: OccupancyGrid, object_id: str,
                     standoff: float = DEFAULT_STANDOFF,
                     sensor_cfg: SensorConfig = SensorConfig()) -> Vec3:
    """Pick a free position with line of sight to the object's box center.

    Candidates sit `standoff` outward from the six face centers, tried in
    fixed order (+x,-x,+y,-y,+z,-z). If none qualify, falls back to the
    nearest free cell center with line of sight (ties by cell index).
    """
    if standoff <= 0:
        raise ValueError("standoff must be positive")
    box = scene.get(object_id).aabb
    center = box.center()
    half = [0.5 * e for e in box.extent()]
    for normal in FACE_NORMALS:
        candidate = vec3(*(center[a] + normal[a] * (half[a] * abs(normal[a]) + standoff)
                           for a in range(3)))
        if not scene.bounds.contains_point(candidate):
            continue
        if not grid.point_in_free_cell(candidate):
            continue
        if _has_line_of_sight(scene, candidate, object_id, sensor_cfg.max_range):
            return candidate

    free_cells = sorted(
        ((distance(grid.cell_center(idx), center), idx)
         for idx in grid.cells() if grid.is_free(idx)),
        key=lambda item: (item[0], item[1]))
    for _, idx in free_cells:
        candidate = grid.cell_center(idx)
        if (scene.bounds.contains_point(candidate)
                and _has_line_of_sight(scene, candidate, object_id, sensor_cfg.max_range)):
            return candidate
    raise ViewpointError(f"no viewpoint with line of sight to '{object_id}'")


# ---------------------------------------------------------------------------
# grid path planning

def astar(grid: OccupancyGrid, start: tuple[int, int, int],
          goal: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    """Shortest 6-connected path (unit step cost), ties broken by cell index."""
    if not grid.is_free(start):
        raise UnreachableError(f"start cell {start} is blocked")
    if not grid.is_free(goal):
        raise UnreachableError(f"goal cell {goal} is blocked")

    def heuristic(idx):
        return math.sqrt((idx[0] - goal[0]) ** 2 + (idx[1] - goal[1]) ** 2
                         + (idx[2] - goal[2]) ** 2)

    open_heap = [(heuristic(start), start)]
    g_cost = {start: 0}
    came_from: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    closed: set[tuple[int, int, int]] = set()
    while open_heap:
        _, current = heapq.heappop(open_heap)
        if current in closed:
            continue
        if current == goal:
            path = [current]
            while current in came_from:
                current = came_from[current]
                path.append(current)
            path.reverse()
            return path
        closed.add(current)
        base = g_cost[current]
        for step in _NEIGHBOR_STEPS:
            nxt = (current[0] + step[0], current[1] + step[1], current[2] + step[2])
            if not all(0 <= nxt[a] < grid.dims[a] for a in range(3)):
                continue
            if not grid.is_free(nxt) or nxt in closed:
                continue
            tentative = base + 1
            if tentative < g_cost.get(nxt, math.inf):
                g_cost[nxt] = tentative
                came_from[nxt] = current
                heapq.heappush(open_heap, (tentative + heuristic(nxt), nxt))
    raise UnreachableError(f"no path from {start} to {goal}")


def segment_is_free(grid: OccupancyGrid, a: Vec3, b: Vec3) -> bool:
    """Sample the segment at <= voxel_size/2 spacing (midpoint always included)
    and require every sample to land in a free cell."""
    length = distance(a, b)
    n = max(3, math.ceil(length / (grid.voxel_size / 2)) + 1)
    if n % 2 == 0:
        n += 1
    for i in range(n):
        t = i / (n - 1)
        point = vec3(*(a[k] + t * (b[k] - a[k]) for k in range(3)))
        if not grid.point_in_free_cell(point):
            return False
    return True


def simplify_path(grid: OccupancyGrid, points: list[Vec3]) -> list[Vec3]:
    """Greedy shortcutting: keep a vertex only when the direct segment to the
    farthest later vertex leaves free space."""
    if len(points) <= 2:
        return list(points)
    simplified = [points[0]]
    anchor = 0
    while anchor < len(points) - 1:
        far = anchor + 1
        for j in range(len(points) - 1, anchor, -1):
            if segment_is_free(grid, points[anchor], points[j]):
                far = j
                break
        simplified.append(points[far])
        anchor = far
    return simplified


def plan_path(grid: OccupancyGrid, start: Vec3, goal: Vec3) -> list[Vec3]:
    """Collision-free polyline between two free-space points.

    A* over cell centers, then shortcut simplification; the exact endpoints
    replace the first and last cell centers.
    """
    cells = astar(grid, grid.cell_of(start), grid.cell_of(goal))
    if len(cells) == 1:
        return [vec3(*start), vec3(*goal)]
    points = [grid.cell_center(idx) for idx in cells]
    points[0] = vec3(*start)
    points[-1] = vec3(*goal)
    return simplify_path(grid, points)


# ---------------------------------------------------------------------------
# plan synthesis

def sphere_counts(weights: list[float], total_spheres: int) -> list[int]:
    """Half-up rounding of total_spheres * weight, floored at one sphere so
    every stop stays visibly marked."""
    return [max(1, math.floor(total_spheres * w + 0.5)) for w in weights]


def plan_guidance(scene: Scene, model: StrategyModel, checklist: ChecklistSpec,
                  start: Vec3, total_spheres: int = DEFAULT_TOTAL_SPHERES,
                  standoff: float = DEFAULT_STANDOFF,
                  sensor_cfg: SensorConfig = SensorConfig(),
                  grid: OccupancyGrid | None = None) -> GuidancePlan:
    """Build the replayable plan for a checklist.

    Waypoint order is the mined canonical order restricted to the checklist;
    checklist objects the model never saw are appended in id order so required
    equipment is never dropped (weight 0, one sphere, no dwell hint).
    """
    required = list(checklist.required)
    for object_id in required:
        if object_id not in scene:
            raise KeyError(f"checklist object '{object_id}' not in scene")
    visited = [oid for oid in model.canonical_order if oid in set(required)]
    if not visited:
        raise ValueError("model covers no checklist object")
    appended = sorted(set(required) - set(visited))
    ordered = visited + appended
    if total_spheres < len(visited):
        raise ValueError(f"total_spheres must be >= {len(visited)} visited waypoints")

    visited_weight = sum(model.attention[oid].weight for oid in visited)
    weights = []
    for object_id in ordered:
        if object_id in model.attention and visited_weight > 0:
            weights.append(model.attention[object_id].weight / visited_weight)
        else:
            weights.append(0.0)
    counts = sphere_counts(weights, total_spheres)

    if grid is None:
        grid = build_occupancy(scene)

    waypoints = []
    for object_id, count in zip(ordered, counts):
        obj = scene.get(object_id)
        try:
            viewpoint = select_viewpoint(scene, grid, object_id, standoff, sensor_cfg)
        except ViewpointError as exc:
            raise ViewpointError(f"waypoint '{object_id}': {exc}") from exc
        instructions = obj.instructions or checklist.instructions_for(obj.object_class)
        dwell_hint = (model.attention[object_id].mean_dwell
                      if object_id in model.attention and object_id in set(visited) else 0.0)
        waypoints.append(Waypoint(object_id, viewpoint, obj.aabb.center(), count,
                                  tuple(instructions), dwell_hint))

    legs = []
    cursor = vec3(*start)
    for wp in waypoints:
        try:
            leg = plan_path(grid, cursor, wp.viewpoint)
        except UnreachableError as exc:
            raise UnreachableError(f"leg to '{wp.object_id}': {exc}") from exc
        legs.append(tuple(leg))
        cursor = wp.viewpoint
    return GuidancePlan(scene.name, tuple(waypoints), tuple(legs))


# ---------------------------------------------------------------------------
# guidance document

def plan_to_document(plan: GuidancePlan) -> dict:
    return {
        "scene_name": plan.scene_name,
        "waypoints": [
            {
                "object_id": wp.object_id,
                "viewpoint": list(wp.viewpoint),
                "look_at": list(wp.look_at),
                "sphere_count": wp.sphere_count,
                "instructions": list(wp.instructions),
                "dwell_hint": wp.dwell_hint,
            }
            for wp in plan.waypoints
        ],
        "legs": [[list(p) for p in leg] for leg in plan.legs],
    }


def plan_from_document(doc: dict) -> GuidancePlan:
    waypoints = tuple(
        Waypoint(wp["object_id"], vec3(*wp["viewpoint"]), vec3(*wp["look_at"]),
                 int(wp["sphere_count"]), tuple(wp["instructions"]),
                 float(wp["dwell_hint"]))
        for wp in doc["waypoints"])
    legs = tuple(tuple(vec3(*p) for p in leg) for leg in doc["legs"])
    return GuidancePlan(doc["scene_name"], waypoints, legs)


def serialize_plan(plan: GuidancePlan) -> bytes:
    return (json.dumps(plan_to_document(plan), indent=2) + "\n").encode("utf-8")


def flatten_spheres(plan: GuidancePlan) -> list[Vec3]:
    """Sphere positions for external viewers: each waypoint's viewpoint
    repeated sphere_count times."""
    points: list[Vec3] = []
    for wp in plan.waypoints:
        points.extend([wp.viewpoint] * wp.sphere_count)
    return points
