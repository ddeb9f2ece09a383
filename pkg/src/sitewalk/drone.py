"""Kinematic digital drone: velocity-command motion plus cone-of-rays sensing.

The drone is a first-person camera carrier. Motion integrates body-frame
velocity commands rotated by yaw; collisions revert position (no sliding).
Sensing casts a central gaze ray plus rings of detection rays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Vec3, clamp, heading_vector, normalize_yaw, vec3, view_axes
from .scene import ObjectClass, Scene, ray_intersect

DRONE_RADIUS = 0.3

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class Limits:
    linear: float = 2.0   # m/s, per body axis
    angular: float = HALF_PI  # rad/s


@dataclass(frozen=True)
class ControlInput:
    v_forward: float = 0.0
    v_strafe: float = 0.0     # positive = to the drone's right
    v_vertical: float = 0.0   # positive = up
    yaw_rate: float = 0.0
    pitch_rate: float = 0.0

    def check(self, limits: Limits) -> None:
        for name in ("v_forward", "v_strafe", "v_vertical"):
            if abs(getattr(self, name)) > limits.linear:
                raise ValueError(f"{name} exceeds linear limit {limits.linear} m/s")
        for name in ("yaw_rate", "pitch_rate"):
            if abs(getattr(self, name)) > limits.angular:
                raise ValueError(f"{name} exceeds angular limit {limits.angular} rad/s")


@dataclass(frozen=True)
class DroneState:
    position: Vec3
    yaw: float = 0.0     # [-pi, pi), about z from +x toward +y
    pitch: float = 0.0   # [-pi/2, pi/2], positive up
    time: float = 0.0


@dataclass(frozen=True)
class SensorConfig:
    max_range: float = 10.0
    cone_half_angle: float = math.radians(30.0)
    rays_per_ring: int = 8
    rings: int = 2

    def __post_init__(self):
        if self.max_range <= 0:
            raise ValueError("max_range must be positive")
        if not 0 < self.cone_half_angle <= HALF_PI:
            raise ValueError("cone_half_angle must be in (0, pi/2]")
        if self.rays_per_ring < 1 or self.rings < 0:
            raise ValueError("ray pattern counts must be positive")


@dataclass(frozen=True)
class DetectionEvent:
    time: float
    object_id: str
    object_class: ObjectClass
    distance: float


def pose_is_valid(scene: Scene, position: Vec3, radius: float = DRONE_RADIUS) -> bool:
    """Inside the scene bounds and clear of every radius-inflated object box."""
    if not scene.bounds.contains_point(position):
        return False
    return not any(o.aabb.inflate(radius).interior_contains(position)
                   for o in scene.objects)


def step(scene: Scene, state: DroneState, control: ControlInput, dt: float,
         limits: Limits = Limits(), radius: float = DRONE_RADIUS) -> DroneState:
    """Advance one tick: integrate orientation, then yaw-rotated velocities.

    A candidate position that enters an inflated object box or leaves the
    bounds is discarded (motion blocked); the orientation and clock still
    advance.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    control.check(limits)

    yaw = normalize_yaw(state.yaw + control.yaw_rate * dt)
    pitch = clamp(state.pitch + control.pitch_rate * dt, -HALF_PI, HALF_PI)

    heading = heading_vector(yaw)
    right = np.array([heading[1], -heading[0], 0.0])
    velocity = (control.v_forward * heading + control.v_strafe * right
                + np.array([0.0, 0.0, control.v_vertical]))
    candidate = vec3(*(np.asarray(state.position) + velocity * dt))

    position = candidate if pose_is_valid(scene, candidate, radius) else state.position
    return DroneState(position, yaw, pitch, state.time + dt)


def ray_pattern(cfg: SensorConfig, yaw: float, pitch: float) -> np.ndarray:
    """World-frame unit directions: central ray first, then concentric rings."""
    forward, right, up = view_axes(yaw, pitch)
    rays = [forward]
    for ring in range(1, cfg.rings + 1):
        theta = ring * cfg.cone_half_angle / cfg.rings
        ct, st = math.cos(theta), math.sin(theta)
        for j in range(cfg.rays_per_ring):
            phi = 2.0 * math.pi * j / cfg.rays_per_ring
            rays.append(ct * forward + st * (math.cos(phi) * right + math.sin(phi) * up))
    return np.array(rays)


def sense(scene: Scene, state: DroneState,
          cfg: SensorConfig = SensorConfig()) -> tuple[str | None, list[DetectionEvent]]:
    """Cast the sensor pattern from the current pose.

    Returns (gaze, detections): gaze is the id of whatever the central view
    ray hits first (obstacles included); detections are the non-obstacle
    objects hit by any ray, deduplicated with the minimum hit distance,
    sorted by id. Occlusion is honored per ray.
    """
    rays = ray_pattern(cfg, state.yaw, state.pitch)
    gaze = None
    nearest: dict[str, float] = {}
    for i, direction in enumerate(rays):
        hit = ray_intersect(scene, state.position, direction, cfg.max_range)
        if hit is None:
            continue
        if i == 0:
            gaze = hit.object_id
        obj = scene.get(hit.object_id)
        if obj.is_obstacle:
            continue
        if hit.object_id not in nearest or hit.distance < nearest[hit.object_id]:
            nearest[hit.object_id] = hit.distance
    detections = [
        DetectionEvent(state.time, object_id, scene.get(object_id).object_class, dist)
        for object_id, dist in sorted(nearest.items())
    ]
    return gaze, detections
