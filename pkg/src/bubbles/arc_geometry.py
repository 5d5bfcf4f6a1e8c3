"""Circular-arc primitives parameterized by chord endpoints and half-angle.

An arc is stored as (start, end, half_angle).  The half-angle theta is half
the central angle subtended by the arc, signed: theta > 0 means the arc
bulges to the left of the directed chord start -> end, theta = 0 is a
straight segment, and theta is restricted to (-pi, pi).  The signed
curvature is kappa = 2*sin(theta)/C for chord length C, and the radius is
C/(2*sin(theta)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Tolerance below which theta is treated by series expansion to avoid 0/0.
_SMALL_THETA = 1e-6

TWO_THIRDS_PI = 2.0 * math.pi / 3.0


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, s: float) -> "Point":
        return Point(self.x * s, self.y * s)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class ArcSpec:
    start: Point
    end: Point
    half_angle: float

    def __post_init__(self) -> None:
        if not -math.pi < self.half_angle < math.pi:
            raise ValueError(f"half_angle must lie in (-pi, pi), got {self.half_angle}")
        if self.chord() == 0.0:
            raise ValueError("arc endpoints must be distinct")

    def chord(self) -> float:
        return (self.end - self.start).norm()

    def reversed(self) -> "ArcSpec":
        return ArcSpec(self.end, self.start, -self.half_angle)


def normalize_angle(a: float) -> float:
    """Fold an angle into (-pi, pi]."""
    a = math.fmod(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    elif a > math.pi:
        a -= 2.0 * math.pi
    return a


def length_factor(theta: float) -> float:
    """theta / sin(theta), with series fallback near zero."""
    if abs(theta) < _SMALL_THETA:
        t2 = theta * theta
        return 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
    return theta / math.sin(theta)


def length_factor_deriv(theta: float) -> float:
    """d/dtheta of theta/sin(theta)."""
    if abs(theta) < _SMALL_THETA:
        return theta / 3.0 + 7.0 * theta ** 3 / 90.0
    s = math.sin(theta)
    return (s - theta * math.cos(theta)) / (s * s)


def area_factor(theta: float) -> float:
    """(theta - sin(theta)cos(theta)) / (2 sin(theta))^2, series near zero."""
    if abs(theta) < _SMALL_THETA:
        return theta / 6.0 + theta ** 3 / 45.0
    s = math.sin(theta)
    return (theta - s * math.cos(theta)) / (4.0 * s * s)


def area_factor_deriv(theta: float) -> float:
    """d/dtheta of area_factor."""
    if abs(theta) < _SMALL_THETA:
        return 1.0 / 6.0 + theta * theta / 15.0
    s = math.sin(theta)
    c = math.cos(theta)
    return 0.5 - (theta - s * c) * c / (2.0 * s ** 3)


def arc_length(chord: float, theta: float) -> float:
    """Length of the arc with chord C and half-angle theta: C*theta/sin(theta)."""
    if chord <= 0.0:
        raise ValueError("chord must be positive")
    return chord * length_factor(theta)


def segment_area(chord: float, theta: float) -> float:
    """Signed area between the arc and its chord.

    Positive for theta > 0 (bulge left of the directed chord).  For the
    half-disc, theta = pi/2 gives pi*C^2/8.
    """
    if chord <= 0.0:
        raise ValueError("chord must be positive")
    return chord * chord * area_factor(theta)


def arc_curvature(chord: float, theta: float) -> float:
    """Signed curvature kappa = 2 sin(theta) / C."""
    return 2.0 * math.sin(theta) / chord


def arc_radius(chord: float, theta: float) -> float:
    """Radius C / (2 sin(theta)); math.inf signals the straight case."""
    if theta == 0.0:
        return math.inf
    return chord / (2.0 * math.sin(theta))


def theta_from_curvature(chord: float, kappa: float) -> float:
    """Half-angle on the |theta| <= pi/2 branch for a given signed curvature."""
    s = kappa * chord / 2.0
    if abs(s) > 1.0:
        raise ValueError(f"infeasible curvature: |kappa*C/2| = {abs(s)} > 1")
    return math.asin(s)


def chord_angle(arc: ArcSpec) -> float:
    d = arc.end - arc.start
    return math.atan2(d.y, d.x)


def arc_center(arc: ArcSpec) -> Point:
    """Center of the supporting circle (arc must not be straight)."""
    if arc.half_angle == 0.0:
        raise ValueError("straight segment has no center")
    mid = Point((arc.start.x + arc.end.x) / 2.0, (arc.start.y + arc.end.y) / 2.0)
    # Signed offset along the left normal of the chord; for theta = pi/2 the
    # center is the chord midpoint.
    h = -arc.chord() / (2.0 * math.tan(arc.half_angle))
    phi = chord_angle(arc)
    left = Point(-math.sin(phi), math.cos(phi))
    return mid + left.scaled(h)


def tangent_at_start(arc: ArcSpec) -> float:
    """Direction of travel leaving arc.start, as an angle."""
    return normalize_angle(chord_angle(arc) + arc.half_angle)


def tangent_at_end(arc: ArcSpec) -> float:
    """Direction of travel arriving at arc.end, as an angle."""
    return normalize_angle(chord_angle(arc) - arc.half_angle)


def point_at(arc: ArcSpec, t: float) -> Point:
    """Point at arc-length fraction t in [0, 1] from start to end."""
    if arc.half_angle == 0.0 or abs(arc.half_angle) < _SMALL_THETA:
        return arc.start + (arc.end - arc.start).scaled(t)
    c = arc_center(arc)
    a0 = math.atan2(arc.start.y - c.y, arc.start.x - c.x)
    # Sweep of the central angle is -2*theta (positive theta sweeps clockwise).
    a = a0 - 2.0 * arc.half_angle * t
    r = abs(arc_radius(arc.chord(), arc.half_angle))
    return Point(c.x + r * math.cos(a), c.y + r * math.sin(a))


def split_at(arc: ArcSpec, t: float) -> tuple[ArcSpec, ArcSpec]:
    """Split at fraction t into two arcs; half-angles split proportionally."""
    if not 0.0 < t < 1.0:
        raise ValueError("split fraction must be strictly inside (0, 1)")
    mid = point_at(arc, t)
    return (
        ArcSpec(arc.start, mid, arc.half_angle * t),
        ArcSpec(mid, arc.end, arc.half_angle * (1.0 - t)),
    )


def meeting_angle(a: ArcSpec, b: ArcSpec, at: Point, tol: float = 1e-9) -> float:
    """Angle in [0, pi] between the tangents of two arcs at a shared endpoint."""

    def away(arc: ArcSpec) -> float:
        if (arc.start - at).norm() <= tol:
            return tangent_at_start(arc)
        if (arc.end - at).norm() <= tol:
            return normalize_angle(tangent_at_end(arc) + math.pi)
        raise ValueError("arcs do not meet at the given point")

    d = abs(normalize_angle(away(a) - away(b)))
    return d


def two_arc_center_distance(r1: float, r2: float) -> float:
    """Distance between centers of two arcs meeting at 2*pi/3: sqrt(r1^2 + r2^2 - r1 r2)."""
    return math.sqrt(r1 * r1 + r2 * r2 - r1 * r2)


def triangle_half_angles(alpha: float, beta: float, gamma: float) -> tuple[float, float, float]:
    """Half-angles of the three arcs replacing the sides of a triangle with
    angles (alpha, beta, gamma) so that all meeting angles become 2*pi/3:
    theta_i = angle_i - pi/6."""
    if not math.isclose(alpha + beta + gamma, math.pi, rel_tol=0, abs_tol=1e-9):
        raise ValueError("triangle angles must sum to pi")
    return (alpha - math.pi / 6.0, beta - math.pi / 6.0, gamma - math.pi / 6.0)
