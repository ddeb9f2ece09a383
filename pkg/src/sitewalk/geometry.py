"""Shared 3D helpers: vectors, axis-aligned boxes, yaw/pitch frames."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Vec3 = tuple[float, float, float]

TWO_PI = 2.0 * math.pi


def vec3(x: float, y: float, z: float) -> Vec3:
    return (float(x), float(y), float(z))


def distance(a: Vec3, b: Vec3) -> float:
    return math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2)


def clamp(value: float, lo: float, hi: float) -> float:
    return lo if value < lo else hi if value > hi else value


def normalize_yaw(yaw: float) -> float:
    """Wrap an angle into [-pi, pi); in-range values pass through untouched."""
    if -math.pi <= yaw < math.pi:
        return yaw
    return (yaw + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class Box:
    """Axis-aligned box given by its min and max corners (meters, world frame)."""

    lo: Vec3
    hi: Vec3

    def is_valid(self) -> bool:
        return all(l < h for l, h in zip(self.lo, self.hi))

    def center(self) -> Vec3:
        return vec3(*(0.5 * (l + h) for l, h in zip(self.lo, self.hi)))

    def extent(self) -> Vec3:
        return vec3(*(h - l for l, h in zip(self.lo, self.hi)))

    def contains_box(self, other: "Box") -> bool:
        return all(sl <= ol and oh <= sh
                   for sl, sh, ol, oh in zip(self.lo, self.hi, other.lo, other.hi))

    def contains_point(self, p: Vec3) -> bool:
        return all(l <= c <= h for l, c, h in zip(self.lo, p, self.hi))

    def overlaps(self, other: "Box") -> bool:
        """Strict overlap: shared volume, not just touching faces."""
        return all(sl < oh and ol < sh
                   for sl, sh, ol, oh in zip(self.lo, self.hi, other.lo, other.hi))

    def inflate(self, margin: float) -> "Box":
        return Box(vec3(*(l - margin for l in self.lo)),
                   vec3(*(h + margin for h in self.hi)))

    def interior_contains(self, p: Vec3) -> bool:
        return all(l < c < h for l, c, h in zip(self.lo, p, self.hi))


def view_axes(yaw: float, pitch: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Forward/right/up unit vectors for a yaw/pitch pose, z pointing up.

    Yaw rotates about z from +x toward +y; positive pitch looks up.
    """
    cy, sy = math.cos(yaw), math.sin(yaw)
    cp, sp = math.cos(pitch), math.sin(pitch)
    forward = np.array([cp * cy, cp * sy, sp])
    right = np.array([sy, -cy, 0.0])
    up = np.array([-sp * cy, -sp * sy, cp])
    return forward, right, up


def heading_vector(yaw: float) -> np.ndarray:
    """Horizontal unit vector along a yaw heading (pitch ignored)."""
    return np.array([math.cos(yaw), math.sin(yaw), 0.0])
