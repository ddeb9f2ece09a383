"""Semantic scenes: validated equipment/obstacle boxes, ray casting, occupancy grids.

A scene is the authoritative world geometry. Objects are axis-aligned boxes
tagged with an equipment class and optional inspection instructions. All
operations here are pure over immutable scenes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from .geometry import Box, Vec3, vec3


class ObjectClass(str, Enum):
    FIRE_EXTINGUISHER = "fire_extinguisher"
    FIRE_ALARM_PANEL = "fire_alarm_panel"
    EXIT_SIGN = "exit_sign"
    RESCUE_EQUIPMENT = "rescue_equipment"
    OBSTACLE = "obstacle"


EQUIPMENT_CLASSES = tuple(c for c in ObjectClass if c is not ObjectClass.OBSTACLE)

DEFAULT_VOXEL_SIZE = 0.25


class SceneFormatError(ValueError):
    """Malformed or inconsistent scene document; message names the offender."""


@dataclass(frozen=True)
class SemanticObject:
    id: str
    object_class: ObjectClass
    aabb: Box
    instructions: tuple[str, ...] = ()

    @property
    def is_obstacle(self) -> bool:
        return self.object_class is ObjectClass.OBSTACLE


@dataclass(frozen=True)
class RayHit:
    object_id: str
    distance: float
    point: Vec3


@dataclass(frozen=True)
class Scene:
    name: str
    bounds: Box
    objects: tuple[SemanticObject, ...]
    voxel_size: float = DEFAULT_VOXEL_SIZE

    # derived lookups, excluded from equality
    _by_id: dict = field(default=None, compare=False, repr=False)
    _mins: np.ndarray = field(default=None, compare=False, repr=False)
    _maxs: np.ndarray = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.bounds.is_valid():
            raise SceneFormatError(f"scene '{self.name}': degenerate bounds {self.bounds}")
        if self.voxel_size <= 0:
            raise SceneFormatError(f"scene '{self.name}': voxel_size must be positive")
        by_id = {}
        for obj in self.objects:
            if not obj.id:
                raise SceneFormatError(f"scene '{self.name}': object with empty id")
            if obj.id in by_id:
                raise SceneFormatError(f"duplicate object id '{obj.id}'")
            if not obj.aabb.is_valid():
                raise SceneFormatError(f"object '{obj.id}': degenerate aabb {obj.aabb}")
            if not self.bounds.contains_box(obj.aabb):
                raise SceneFormatError(f"object '{obj.id}': aabb extends outside scene bounds")
            by_id[obj.id] = obj
        object.__setattr__(self, "_by_id", by_id)
        if self.objects:
            mins = np.array([o.aabb.lo for o in self.objects], dtype=float)
            maxs = np.array([o.aabb.hi for o in self.objects], dtype=float)
        else:
            mins = np.zeros((0, 3))
            maxs = np.zeros((0, 3))
        object.__setattr__(self, "_mins", mins)
        object.__setattr__(self, "_maxs", maxs)

    def get(self, object_id: str) -> SemanticObject:
        try:
            return self._by_id[object_id]
        except KeyError:
            raise KeyError(f"unknown object id '{object_id}'") from None

    def __contains__(self, object_id: str) -> bool:
        return object_id in self._by_id

    @property
    def obstacle_ids(self) -> frozenset[str]:
        return frozenset(o.id for o in self.objects if o.is_obstacle)

    @property
    def equipment(self) -> tuple[SemanticObject, ...]:
        return tuple(o for o in self.objects if not o.is_obstacle)


# ---------------------------------------------------------------------------
# scene document I/O

_SCENE_KEYS = {"name", "bounds", "voxel_size", "objects"}
_OBJECT_KEYS = {"id", "class", "aabb", "instructions"}
_CORNER_KEYS = {"min", "max"}


def _parse_corner(value, where: str) -> Vec3:
    if (not isinstance(value, (list, tuple)) or len(value) != 3
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in value)):
        raise SceneFormatError(f"{where}: expected [x, y, z] numbers, got {value!r}")
    return vec3(*value)


def _parse_box(value, where: str) -> Box:
    if not isinstance(value, dict):
        raise SceneFormatError(f"{where}: expected an object with min/max")
    unknown = set(value) - _CORNER_KEYS
    if unknown:
        raise SceneFormatError(f"{where}: unknown fields {sorted(unknown)}")
    if set(value) != _CORNER_KEYS:
        raise SceneFormatError(f"{where}: both min and max are required")
    return Box(_parse_corner(value["min"], f"{where}.min"),
               _parse_corner(value["max"], f"{where}.max"))


def load_scene(document: bytes | str) -> Scene:
    """Parse and validate a scene document; rejects unknown fields."""
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise SceneFormatError("top level must be an object")
    unknown = set(raw) - _SCENE_KEYS
    if unknown:
        raise SceneFormatError(f"unknown top-level fields {sorted(unknown)}")
    for required in ("name", "bounds", "objects"):
        if required not in raw:
            raise SceneFormatError(f"missing required field '{required}'")
    if not isinstance(raw["name"], str):
        raise SceneFormatError("name must be a string")
    bounds = _parse_box(raw["bounds"], "bounds")
    voxel_size = raw.get("voxel_size", DEFAULT_VOXEL_SIZE)
    if not isinstance(voxel_size, (int, float)) or isinstance(voxel_size, bool):
        raise SceneFormatError("voxel_size must be a number")
    if not isinstance(raw["objects"], list):
        raise SceneFormatError("objects must be a list")

    objects = []
    for i, entry in enumerate(raw["objects"]):
        where = f"objects[{i}]"
        if not isinstance(entry, dict):
            raise SceneFormatError(f"{where}: expected an object")
        unknown = set(entry) - _OBJECT_KEYS
        if unknown:
            raise SceneFormatError(f"{where}: unknown fields {sorted(unknown)}")
        for required in ("id", "class", "aabb"):
            if required not in entry:
                raise SceneFormatError(f"{where}: missing required field '{required}'")
        obj_id = entry["id"]
        if not isinstance(obj_id, str) or not obj_id:
            raise SceneFormatError(f"{where}: id must be a nonempty string")
        try:
            object_class = ObjectClass(entry["class"])
        except ValueError:
            raise SceneFormatError(
                f"{where} ('{obj_id}'): unknown class {entry['class']!r}") from None
        aabb = _parse_box(entry["aabb"], f"{where} ('{obj_id}').aabb")
        instructions = entry.get("instructions", [])
        if (not isinstance(instructions, list)
                or not all(isinstance(s, str) for s in instructions)):
            raise SceneFormatError(f"{where} ('{obj_id}'): instructions must be a list of strings")
        objects.append(SemanticObject(obj_id, object_class, aabb, tuple(instructions)))

    return Scene(raw["name"], bounds, tuple(objects), float(voxel_size))


def scene_to_document(scene: Scene) -> dict:
    return {
        "name": scene.name,
        "bounds": {"min": list(scene.bounds.lo), "max": list(scene.bounds.hi)},
        "voxel_size": scene.voxel_size,
        "objects": [
            {
                "id": o.id,
                "class": o.object_class.value,
                "aabb": {"min": list(o.aabb.lo), "max": list(o.aabb.hi)},
                "instructions": list(o.instructions),
            }
            for o in scene.objects
        ],
    }


def save_scene(scene: Scene) -> bytes:
    return (json.dumps(scene_to_document(scene), indent=2) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# ray casting

def ray_intersect(scene: Scene, origin: Vec3, direction, max_range: float) -> RayHit | None:
    """Nearest object box entered by the ray within max_range, if any.

    Slab intersection per box; grazing contact (zero-width interval) counts
    as a hit. Exact distance ties resolve to the lexicographically smallest
    object id, so results do not depend on object ordering.
    """
    d = np.asarray(direction, dtype=float)
    if abs(float(np.linalg.norm(d)) - 1.0) > 1e-9:
        raise ValueError(f"direction must be a unit vector, got norm {np.linalg.norm(d)}")
    if max_range <= 0:
        raise ValueError("max_range must be positive")
    n = len(scene.objects)
    if n == 0:
        return None
    o = np.asarray(origin, dtype=float)
    lo = np.zeros(n)
    hi = np.full(n, float(max_range))
    for axis in range(3):
        da = d[axis]
        if da == 0.0:
            inside = (scene._mins[:, axis] <= o[axis]) & (o[axis] <= scene._maxs[:, axis])
            hi = np.where(inside, hi, -np.inf)
        else:
            t1 = (scene._mins[:, axis] - o[axis]) / da
            t2 = (scene._maxs[:, axis] - o[axis]) / da
            lo = np.maximum(lo, np.minimum(t1, t2))
            hi = np.minimum(hi, np.maximum(t1, t2))
    hit_mask = lo <= hi
    if not hit_mask.any():
        return None
    dist = float(lo[hit_mask].min())
    tied = np.nonzero(hit_mask & (lo == dist))[0]
    best = min(tied, key=lambda i: scene.objects[i].id)
    point = o + d * dist
    return RayHit(scene.objects[best].id, dist, vec3(*point))


# ---------------------------------------------------------------------------
# occupancy grid

@dataclass(eq=False)
class OccupancyGrid:
    """Voxelization of the scene: a cell is blocked iff some object box overlaps it."""

    origin: Vec3
    voxel_size: float
    dims: tuple[int, int, int]
    blocked: np.ndarray  # bool, shape dims

    def cell_box(self, idx: tuple[int, int, int]) -> Box:
        lo = vec3(*(self.origin[a] + idx[a] * self.voxel_size for a in range(3)))
        hi = vec3(*(self.origin[a] + (idx[a] + 1) * self.voxel_size for a in range(3)))
        return Box(lo, hi)

    def cell_center(self, idx: tuple[int, int, int]) -> Vec3:
        return vec3(*(self.origin[a] + (idx[a] + 0.5) * self.voxel_size for a in range(3)))

    def cell_of(self, point: Vec3) -> tuple[int, int, int]:
        idx = []
        for a in range(3):
            i = math.floor((point[a] - self.origin[a]) / self.voxel_size)
            if i == self.dims[a] and point[a] <= self.origin[a] + self.dims[a] * self.voxel_size:
                i -= 1  # point exactly on the upper grid face
            if not 0 <= i < self.dims[a]:
                raise ValueError(f"point {point} outside grid coverage")
            idx.append(i)
        return tuple(idx)

    def is_free(self, idx: tuple[int, int, int]) -> bool:
        return not bool(self.blocked[idx])

    def point_in_free_cell(self, point: Vec3) -> bool:
        try:
            return self.is_free(self.cell_of(point))
        except ValueError:
            return False

    def blocked_count(self) -> int:
        return int(self.blocked.sum())

    def cells(self) -> Iterator[tuple[int, int, int]]:
        nx, ny, nz = self.dims
        for ix in range(nx):
            for iy in range(ny):
                for iz in range(nz):
                    yield (ix, iy, iz)


def build_occupancy(scene: Scene, voxel_size: float | None = None, *,
                    inflate: float = 0.0) -> OccupancyGrid:
    """Grid covering the scene bounds; dims = ceil(extent / voxel_size) per axis.

    `inflate` grows every object box before voxelization (used by motion
    planners that keep a vehicle-radius clearance); 0 gives the plain grid.
    """
    vs = scene.voxel_size if voxel_size is None else float(voxel_size)
    extent = scene.bounds.extent()
    if not 0 < vs <= min(extent):
        raise ValueError(
            f"voxel_size {vs} out of range (0, {min(extent)}] for scene '{scene.name}'")
    dims = tuple(max(1, math.ceil(e / vs)) for e in extent)
    blocked = np.zeros(dims, dtype=bool)
    origin = scene.bounds.lo
    for obj in scene.objects:
        box = obj.aabb.inflate(inflate) if inflate else obj.aabb
        ranges = []
        for a in range(3):
            i_lo = max(0, math.floor((box.lo[a] - origin[a]) / vs) - 1)
            i_hi = min(dims[a] - 1, math.ceil((box.hi[a] - origin[a]) / vs) + 1)
            ranges.append((i_lo, i_hi))
        for ix in range(ranges[0][0], ranges[0][1] + 1):
            for iy in range(ranges[1][0], ranges[1][1] + 1):
                for iz in range(ranges[2][0], ranges[2][1] + 1):
                    if blocked[ix, iy, iz]:
                        continue
                    cell_lo = (origin[0] + ix * vs, origin[1] + iy * vs, origin[2] + iz * vs)
                    cell_hi = (origin[0] + (ix + 1) * vs, origin[1] + (iy + 1) * vs,
                               origin[2] + (iz + 1) * vs)
                    if all(cl < bh and bl < ch for cl, ch, bl, bh
                           in zip(cell_lo, cell_hi, box.lo, box.hi)):
                        blocked[ix, iy, iz] = True
    return OccupancyGrid(origin, vs, dims, blocked)
