"""Regularity analysis for bubble complexes.

Checks the local conditions a perimeter minimizer must satisfy (finiteness,
constant curvature along curves, trivalent vertices, 120-degree meeting
angles, consistent curvature per region pair, curvature cocycle), computes
region pressures, and reports structural configurations that can always be
improved (2-gons, faces with more than six sides, faces touching the
exterior along two separate edges, empty chambers).

The final condition of minimality -- no length-decreasing area-preserving
variation -- is not locally checkable and is reported as "not evaluated";
the moves module produces constructive witnesses instead.

Conventions: the signed curvature of a directed edge is positive when the
arc bulges left; crossing an edge from its left face to its right face
changes pressure by that signed curvature, with the exterior at pressure 0.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

from .arc_geometry import (
    arc_curvature,
    normalize_angle,
    tangent_at_end,
    tangent_at_start,
)
from .complex_model import EXTERIOR_REGION, BubbleComplex, ComplexError

TWO_PI_OVER_3 = 2.0 * math.pi / 3.0

CONDITION_NAMES = (
    "finite",
    "constant_curvature",
    "trivalent",
    "angles_2pi3",
    "pair_curvature_consistency",
    "cocycle",
)


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    residual: float


@dataclass(frozen=True)
class Finding:
    kind: str  # "2gon" | "more_than_6_sides" | "double_exterior" | "empty_chamber"
    face: int
    detail: str = ""


@dataclass
class ValidationReport:
    conditions: dict[str, ConditionResult]
    findings: list[Finding]
    variational_minimality: str = "not evaluated"

    @property
    def is_regular(self) -> bool:
        return all(c.passed for c in self.conditions.values()) and not self.findings

    def to_json(self) -> dict:
        return {
            "conditions": {
                k: {"passed": v.passed, "residual": v.residual}
                for k, v in self.conditions.items()
            },
            "findings": [
                {"kind": f.kind, "face": f.face, "detail": f.detail} for f in self.findings
            ],
            "variational_minimality": self.variational_minimality,
            "is_regular": self.is_regular,
        }


def signed_curvature(c: BubbleComplex, edge_index: int) -> float:
    """Signed curvature of edge as directed v0 -> v1 (positive bulges left)."""
    a = c.arc(edge_index)
    return arc_curvature(a.chord(), a.half_angle)


def _smooth_joints(c: BubbleComplex, tol: float) -> set[int]:
    return {v for v in range(len(c.vertices)) if c.is_smooth_joint(v, tol=max(tol, 1e-9))}


def _effective_corners(c: BubbleComplex, face: int, joints: set[int]) -> list[tuple[int, int, int]]:
    return [t for t in c.corners(face) if t[0] not in joints]


def gauss_bonnet_residual(c: BubbleComplex, face: int) -> float:
    """|total boundary geodesic curvature + corner turning - 2pi| for a face.

    The integral of curvature along a counterclockwise boundary half-edge
    with half-angle theta is -2*theta (positive when the face is convex
    there); turning angles at corners close the defect to 2pi.
    """
    if face == c.exterior_face:
        raise ComplexError("Gauss-Bonnet residual is defined for interior faces")
    total = 0.0
    cycle = c.boundary_halfedges(face)
    n = len(cycle)
    for i in range(n):
        h = c.halfedges[cycle[i]]
        total += -2.0 * h.half_angle
        nxt = cycle[(i + 1) % n]
        a_in = c._halfedge_arc(cycle[i])
        a_out = c._halfedge_arc(nxt)
        total += normalize_angle(tangent_at_start(a_out) - tangent_at_end(a_in))
    return abs(total - 2.0 * math.pi)


def _face_pressures(c: BubbleComplex) -> dict[int, float]:
    """Face pressure by breadth-first traversal of the dual graph."""
    adj: dict[int, list[tuple[int, float]]] = {f: [] for f in c.face_regions}
    for i, e in enumerate(c.edges):
        k = signed_curvature(c, i)
        adj[e.face_left].append((e.face_right, k))
        adj[e.face_right].append((e.face_left, -k))
    pressures = {c.exterior_face: 0.0}
    queue = deque([c.exterior_face])
    while queue:
        f = queue.popleft()
        for g, k in adj[f]:
            if g not in pressures:
                pressures[g] = pressures[f] + k
                queue.append(g)
    if len(pressures) != len(c.face_regions):
        raise ComplexError("dual graph is disconnected")
    return pressures


def cocycle_residual(c: BubbleComplex) -> float:
    """Max inconsistency of the curvature cocycle over the dual graph.

    Zero means a single pressure per face (and per region) reproduces every
    edge curvature, i.e. pressure is path-independent.
    """
    p = _face_pressures(c)
    res = 0.0
    for i, e in enumerate(c.edges):
        res = max(res, abs(p[e.face_right] - p[e.face_left] - signed_curvature(c, i)))
    by_region: dict[int, list[float]] = {}
    for f, r in c.face_regions.items():
        by_region.setdefault(r, []).append(p[f])
    for vals in by_region.values():
        res = max(res, max(vals) - min(vals))
    return res


def pressure_map(c: BubbleComplex, tol: float = 1e-9) -> dict[int, float]:
    """Region label -> pressure; exterior label 0 maps to 0."""
    res = cocycle_residual(c)
    if res > tol:
        raise ComplexError(f"pressure ill-defined: cocycle residual {res:.3e} > {tol:.1e}")
    p = _face_pressures(c)
    out: dict[int, float] = {}
    for f, r in c.face_regions.items():
        out[r] = p[f]
    out[EXTERIOR_REGION] = 0.0
    return out


def pressure(c: BubbleComplex, region: int, tol: float = 1e-9) -> float:
    return pressure_map(c, tol)[region]


def random_dual_path_pressure(c: BubbleComplex, region: int, rng: random.Random) -> float:
    """Sum of signed curvatures along a random dual path exterior -> region.

    The path follows dual-graph edges only (never passes through vertices).
    Used to test path-independence of pressure.
    """
    adj: dict[int, list[tuple[int, float]]] = {f: [] for f in c.face_regions}
    for i, e in enumerate(c.edges):
        k = signed_curvature(c, i)
        adj[e.face_left].append((e.face_right, k))
        adj[e.face_right].append((e.face_left, -k))
    targets = {f for f, r in c.face_regions.items() if r == region}
    if not targets:
        raise ComplexError(f"no face with region label {region}")
    # Randomized depth-first search; the first arrival gives the path sum.
    start = c.exterior_face
    stack = [(start, 0.0)]
    seen = {start}
    while stack:
        f, acc = stack.pop()
        if f in targets:
            return acc
        nbrs = list(adj[f])
        rng.shuffle(nbrs)
        for g, k in nbrs:
            if g not in seen:
                seen.add(g)
                stack.append((g, acc + k))
    raise ComplexError("dual graph is disconnected")


def perimeter_pressure_residual(c: BubbleComplex, tol: float = 1e-9) -> float:
    """Relative defect of the identity  L = 2 * sum_i p_i A_i  over regions."""
    pm = pressure_map(c, tol)
    length = c.total_perimeter()
    total = 0.0
    labels = {r for r in c.face_regions.values() if r != EXTERIOR_REGION}
    for r in labels:
        total += pm[r] * c.region_area(r)
    return abs(length - 2.0 * total) / length


def compare_by_pressure(
    c1: BubbleComplex, c2: BubbleComplex, area_tol: float = 1e-6, tol: float = 1e-9
) -> str:
    """Compare two complexes enclosing the same areas by their pressures.

    By L = 2 sum p_i A_i, if every pressure of one complex strictly exceeds
    the corresponding pressure of the other, the higher-pressure complex is
    longer and therefore not a minimizer.  Returns "c1_not_minimizer",
    "c2_not_minimizer", or "inconclusive".
    """
    r1, r2 = c1.region_labels(), c2.region_labels()
    if r1 != r2:
        raise ComplexError(f"region label sets differ: {r1} vs {r2}")
    for r in r1:
        a1, a2 = c1.region_area(r), c2.region_area(r)
        if abs(a1 - a2) > area_tol * max(1.0, abs(a1)):
            raise ComplexError(f"region {r} areas differ: {a1} vs {a2}")
    p1, p2 = pressure_map(c1, tol), pressure_map(c2, tol)
    if all(p1[r] > p2[r] + tol for r in r1):
        return "c1_not_minimizer"
    if all(p2[r] > p1[r] + tol for r in r1):
        return "c2_not_minimizer"
    return "inconclusive"


def _is_true_2gon(c: BubbleComplex, face: int, joints: set[int]) -> bool:
    """A 2-gon in the removable sense: its two vertices carry *distinct*
    additional edges leading away.  A standard double bubble chamber, whose
    two vertices share the single remaining arc, does not count."""
    corner_vs = [t[0] for t in _effective_corners(c, face, joints)]
    cycle_edges = {c.halfedges[hi].edge for hi in c.boundary_halfedges(face)}
    extra: list[set[int]] = []
    for v in corner_vs:
        away = {c.halfedges[hi].edge for hi in c.edges_at_vertex(v)} - cycle_edges
        extra.append(away)
    if len(extra) != 2 or not extra[0] or not extra[1]:
        return False
    return bool(extra[0] ^ extra[1])


def _exterior_edge_runs(c: BubbleComplex, face: int, joints: set[int]) -> int:
    """Count maximal boundary chains of `face` adjacent to the exterior,
    merging across smooth joints."""
    cycle = c.boundary_halfedges(face)
    ext = c.exterior_face
    flags = [c.halfedges[c.halfedges[hi].twin].face == ext for hi in cycle]
    if all(flags):
        return 1
    runs = 0
    n = len(cycle)
    for i in range(n):
        if flags[i] and not flags[i - 1]:
            runs += 1
    return runs


def validate(c: BubbleComplex, tol: float = 1e-9) -> ValidationReport:
    joints = _smooth_joints(c, tol)
    conditions: dict[str, ConditionResult] = {}

    # finiteness: enforced structurally at construction; faces have positive area
    fin_res = 0.0
    for f in c.face_regions:
        if f != c.exterior_face:
            c.face_area(f)
    conditions["finite"] = ConditionResult(True, fin_res)

    # constant curvature along curves: every degree-2 vertex whose tangents
    # continue straight through must also match curvatures
    cc_res = 0.0
    tri_res = 0.0
    tri_pass = True
    for v in range(len(c.vertices)):
        deg = c.vertex_degree(v)
        if deg == 3 or v in joints:
            continue
        if deg == 2:
            out = c.edges_at_vertex(v)
            a0, a1 = c._halfedge_arc(out[0]), c._halfedge_arc(out[1])
            d = abs(normalize_angle(tangent_at_start(a0) - tangent_at_start(a1)))
            if abs(d - math.pi) <= math.sqrt(max(tol, 1e-12)):
                # straight joint with mismatched curvature
                k0 = arc_curvature(a0.chord(), a0.half_angle)
                k1 = arc_curvature(a1.chord(), a1.half_angle)
                cc_res = max(cc_res, abs(k0 + k1))
                continue
        tri_pass = False
        tri_res = max(tri_res, abs(deg - 3))
    conditions["constant_curvature"] = ConditionResult(cc_res <= tol, cc_res)
    conditions["trivalent"] = ConditionResult(tri_pass and tri_res <= tol, tri_res)

    # meeting angles of 2*pi/3 at every genuine vertex; at degree-2 corners
    # only the face-interior meeting angle is constrained
    ang_res = 0.0
    for v in range(len(c.vertices)):
        if v in joints:
            continue
        out = c.edges_at_vertex(v)
        deg = len(out)
        psis = sorted(tangent_at_start(c._halfedge_arc(hi)) for hi in out)
        if deg == 3:
            for i in range(3):
                gap = (psis[(i + 1) % 3] - psis[i]) % (2.0 * math.pi)
                ang_res = max(ang_res, abs(gap - TWO_PI_OVER_3))
        elif deg == 2:
            gap = (psis[1] - psis[0]) % (2.0 * math.pi)
            ang_res = max(ang_res, abs(min(gap, 2.0 * math.pi - gap) - TWO_PI_OVER_3))
    conditions["angles_2pi3"] = ConditionResult(ang_res <= tol, ang_res)

    # curvature consistency per region pair
    by_pair: dict[tuple[int, int], list[float]] = {}
    for i, e in enumerate(c.edges):
        ra = c.face_regions[e.face_left]
        rb = c.face_regions[e.face_right]
        k = signed_curvature(c, i)
        if ra <= rb:
            by_pair.setdefault((ra, rb), []).append(-k)
        else:
            by_pair.setdefault((rb, ra), []).append(k)
    pair_res = 0.0
    for vals in by_pair.values():
        pair_res = max(pair_res, max(vals) - min(vals))
    conditions["pair_curvature_consistency"] = ConditionResult(pair_res <= tol, pair_res)

    try:
        coc_res = cocycle_residual(c)
    except ComplexError:
        coc_res = math.inf
    conditions["cocycle"] = ConditionResult(coc_res <= tol, coc_res)

    findings: list[Finding] = []
    for f in c.face_regions:
        if f == c.exterior_face:
            continue
        sides = len(_effective_corners(c, f, joints))
        if sides == 2 and _is_true_2gon(c, f, joints):
            findings.append(Finding("2gon", f, "face with exactly two sides"))
        if sides > 6:
            findings.append(Finding("more_than_6_sides", f, f"{sides} sides"))
        if sides in (4, 5) and _exterior_edge_runs(c, f, joints) >= 2:
            findings.append(
                Finding("double_exterior", f, "face meets the exterior along two edges")
            )
        if c.face_regions[f] in c.empty_labels:
            findings.append(Finding("empty_chamber", f, "region encloses no declared area"))

    return ValidationReport(conditions, findings)
