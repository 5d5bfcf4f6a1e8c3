"""Constructors for equal-pressure n-gon families and reference complexes.

An equal-pressure n-gon (n = 3, 4, 5) has one circular exterior edge of
curvature kappa, straight remaining sides, and interior angles of 2*pi/3.
The exterior arc subtends a turning of (6-n)*pi/3, so its half-angle is
(6-n)*pi/6 and its chord is 2*sin((6-n)*pi/6)/kappa.

Free parameters for fixed kappa: none for the 3-gon, one side length t for
the 4-gon, and the two straight side lengths (u, v) adjacent to the arc for
the 5-gon; the two innermost 5-gon edges then have forced sum 2/(sqrt(3)k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .arc_geometry import Point, segment_area, triangle_half_angles
from .complex_model import BubbleComplex, ComplexBuilder, ComplexError

SQRT3 = math.sqrt(3.0)


class InfeasibleError(ComplexError):
    """Requested parameters admit no valid construction."""


@dataclass(frozen=True)
class NgonParams:
    kind: str  # "threegon" | "fourgon" | "fivegon"
    kappa: float
    t: float | None = None
    u: float | None = None
    v: float | None = None

    def __post_init__(self):
        if self.kind not in ("threegon", "fourgon", "fivegon"):
            raise InfeasibleError(f"unknown n-gon kind {self.kind!r}")
        if self.kappa <= 0.0:
            raise InfeasibleError("kappa must be positive")
        if self.kind == "threegon" and not (self.t is None and self.u is None and self.v is None):
            raise InfeasibleError("threegon takes no free parameters")
        if self.kind == "fourgon" and (self.t is None or self.u is not None or self.v is not None):
            raise InfeasibleError("fourgon takes exactly t")
        if self.kind == "fivegon" and (self.t is not None or self.u is None or self.v is None):
            raise InfeasibleError("fivegon takes exactly (u, v)")


@dataclass(frozen=True)
class TriangleSpec:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0.0:
            raise InfeasibleError("triangle sides must be positive")
        s = sorted((self.a, self.b, self.c))
        if s[0] + s[1] <= s[2]:
            raise InfeasibleError("triangle inequality violated")

    @property
    def angles(self) -> tuple[float, float, float]:
        a, b, c = self.a, self.b, self.c
        alpha = math.acos((b * b + c * c - a * a) / (2 * b * c))
        beta = math.acos((a * a + c * c - b * b) / (2 * a * c))
        return alpha, beta, math.pi - alpha - beta


def ngon_arc_chord(n: int, kappa: float) -> float:
    """Chord length of the exterior arc of the equal-pressure n-gon."""
    return 2.0 * math.sin((6 - n) * math.pi / 6.0) / kappa


def fivegon_inner_sum(kappa: float) -> float:
    """Forced sum of the two innermost straight edges of any 5-gon."""
    return 2.0 / (SQRT3 * kappa)


def threegon_flat_side(kappa: float) -> float:
    return 2.0 / (SQRT3 * kappa)


def _straight_chain(b: ComplexBuilder, start: Point, dirs_lengths: list[tuple[float, float]]):
    """Vertex ids for a polyline from start with given (direction, length) steps."""
    ids = [b.vertex(start.x, start.y)]
    p = start
    for d, ln in dirs_lengths:
        p = Point(p.x + ln * math.cos(d), p.y + ln * math.sin(d))
        ids.append(b.vertex(p.x, p.y))
    return ids


def build_ngon(p: NgonParams, label: int = 1) -> BubbleComplex:
    """Single equal-pressure n-gon face plus the exterior.

    The exterior arc lies along the x-axis from the origin, bulging down;
    straight sides close the face above it.
    """
    k = p.kappa
    if p.kind == "threegon":
        # arc half-angle pi/2, chord 2/k, apex above the chord midpoint
        c3 = ngon_arc_chord(3, k)
        # apex height: flat sides 2/(sqrt(3)k) from each chord end
        h = math.sqrt(threegon_flat_side(k) ** 2 - (c3 / 2.0) ** 2)
        b = ComplexBuilder()
        v0 = b.vertex(0.0, 0.0)
        v1 = b.vertex(c3, 0.0)
        apex = b.vertex(c3 / 2.0, h)
        b.add_face(label, [(v0, v1, -math.pi / 2.0), (v1, apex, 0.0), (apex, v0, 0.0)])
        return b.build()
    if p.kind == "fourgon":
        c4 = ngon_arc_chord(4, k)
        t = p.t
        if not 0.0 < t < c4:
            raise InfeasibleError(f"fourgon needs 0 < t < {c4}")
        b = ComplexBuilder()
        chain = _straight_chain(
            b,
            Point(c4, 0.0),
            [(2 * math.pi / 3, t), (math.pi, c4 - t), (4 * math.pi / 3, t)],
        )
        v0 = b.vertex(0.0, 0.0)
        b.add_face(
            label,
            [(v0, chain[0], -math.pi / 3.0)]
            + [(chain[i], chain[i + 1], 0.0) for i in range(3)],
        )
        return b.build()
    # fivegon: arc chord 1/k, then sides u (up), inner, inner, v (down)
    c5 = ngon_arc_chord(5, k)
    u, v = p.u, p.v
    inner_sum = fivegon_inner_sum(k)
    # closure: s3 - s2 = 2(u - v) with s2 + s3 = inner_sum
    s2 = (inner_sum - 2.0 * (u - v)) / 2.0
    s3 = inner_sum - s2
    if min(u, v, s2, s3) <= 0.0:
        raise InfeasibleError("fivegon side lengths must all be positive")
    b = ComplexBuilder()
    chain = _straight_chain(
        b,
        Point(c5, 0.0),
        [
            (math.pi / 2, u),
            (5 * math.pi / 6, s2),
            (7 * math.pi / 6, s3),
            (3 * math.pi / 2, v),
        ],
    )
    v0 = b.vertex(0.0, 0.0)
    walk = [(v0, chain[0], -math.pi / 6.0)] + [
        (chain[i], chain[i + 1], 0.0) for i in range(4)
    ]
    b.add_face(label, walk)
    return b.build()


def fivegon_inner_lengths(p: NgonParams) -> tuple[float, float]:
    """The two innermost straight side lengths of the 5-gon given (u, v)."""
    inner_sum = fivegon_inner_sum(p.kappa)
    s2 = (inner_sum - 2.0 * (p.u - p.v)) / 2.0
    return s2, inner_sum - s2


def threegon_from_triangle(t: TriangleSpec) -> tuple[float, float, float]:
    """Arc half-angles (theta_a, theta_b, theta_c) bulging outward from the
    triangle sides a, b, c so all interior angles become 2*pi/3."""
    alpha, beta, gamma = t.angles
    return triangle_half_angles(alpha, beta, gamma)


def build_threegon_from_triangle(t: TriangleSpec, label: int = 1) -> BubbleComplex:
    """Realize the triangle with vertices A=(0,0), B=(c,0), C above, and
    attach the outward-bulging arcs from threegon_from_triangle."""
    alpha, beta, _ = t.angles
    th_a, th_b, th_c = threegon_from_triangle(t)
    A = Point(0.0, 0.0)
    B = Point(t.c, 0.0)
    C = Point(t.b * math.cos(alpha), t.b * math.sin(alpha))
    b = ComplexBuilder()
    va, vb, vc = (b.vertex(P.x, P.y) for P in (A, B, C))
    # CCW walk A->B->C->A; each side carries the arc opposite the far vertex,
    # bulging outward (right of travel), hence negated half-angle.
    b.add_face(label, [(va, vb, -th_c), (vb, vc, -th_a), (vc, va, -th_b)])
    return b.build()


def threegon_from_curvatures(
    k1: float, k2: float, k3: float, label: int = 1, mirrored: bool = False
) -> BubbleComplex:
    """3-gon whose three edges have the given signed curvatures, meeting at
    2*pi/3.  Unique up to isometry; mirrored=True reflects across the x-axis.

    Solved via the vertex triangle: an interior angle alpha opposite a side
    of curvature kappa satisfies cot(alpha) = sqrt(3) - 2*kappa*R with R the
    circumradius; the circumradius is the root of alpha+beta+gamma = pi.
    """
    ks = (k1, k2, k3)
    if all(abs(k) < 1e-15 for k in ks):
        raise InfeasibleError("at least one curvature must be nonzero")

    def angle(k: float, R: float) -> float:
        return math.atan2(0.5, SQRT3 / 2.0 - k * R)

    def f(R: float) -> float:
        return sum(angle(k, R) for k in ks) - math.pi

    # bracket a root in R > 0; f(0+) = -pi/2
    lo, hi = 1e-12, None
    R = 1e-6
    while R < 1e9:
        if f(R) > 0.0:
            hi = R
            break
        lo = R
        R *= 2.0
    if hi is None:
        raise InfeasibleError(f"no 3-gon with curvatures {ks}")
    R = brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16)
    alpha, beta, gamma = (angle(k, R) for k in ks)
    a, bb, c = (2.0 * R * math.sin(x) for x in (alpha, beta, gamma))
    tri = TriangleSpec(a, bb, c)
    out = build_threegon_from_triangle(tri, label)
    return reflected(out) if mirrored else out


def reflected(c: BubbleComplex) -> BubbleComplex:
    """Mirror image across the x-axis."""
    b = ComplexBuilder()
    ids = [b.vertex(p.x, -p.y) for p in c.vertices]
    ext = c.exterior_face
    for f in c.face_regions:
        if f == ext:
            continue
        walk = []
        for hi in reversed(c.boundary_halfedges(f)):
            h = c.halfedges[hi]
            walk.append((ids[h.dest], ids[h.origin], h.half_angle))
        b.add_face(c.face_regions[f], walk)
    return b.build(c.empty_labels)


def construct_standard_double(a1: float, a2: float, labels=(1, 2)) -> BubbleComplex:
    """Standard double bubble enclosing areas (a1, a2).

    Two vertices on the y-axis joined by three arcs whose tangents meet at
    2*pi/3; the middle arc bulges into the lower-pressure (larger) chamber.
    """
    if a1 <= 0.0 or a2 <= 0.0:
        raise InfeasibleError("areas must be positive")

    def areas(m: float, chord: float = 1.0) -> tuple[float, float]:
        th1 = 2.0 * math.pi / 3.0 - m
        th2 = 2.0 * math.pi / 3.0 + m
        A1 = segment_area(chord, th1) - segment_area(chord, m)
        A2 = segment_area(chord, th2) + segment_area(chord, m)
        return A1, A2

    target = a1 / a2

    def f(m: float) -> float:
        A1, A2 = areas(m)
        return A1 / A2 - target

    lim = math.pi / 3.0 - 1e-12
    m = brentq(f, -lim, lim, xtol=1e-15, rtol=8.9e-16)
    A1, _ = areas(m)
    chord = math.sqrt(a1 / A1)
    th1 = 2.0 * math.pi / 3.0 - m
    th2 = 2.0 * math.pi / 3.0 + m
    b = ComplexBuilder()
    top = b.vertex(0.0, chord / 2.0)
    bot = b.vertex(0.0, -chord / 2.0)
    # region 1 west: down the outer-west arc, up the middle; region 2 east.
    f1 = b.add_face(labels[0], [(top, bot, -th1), (bot, top, -m)])
    f2 = b.add_face(labels[1], [(top, bot, m), (bot, top, -th2)])
    return b.build()


def construct_standard_triple(kappa: float, labels=(1, 2, 3)) -> BubbleComplex:
    """Standard triple bubble with three equal-pressure congruent chambers.

    Central vertex at the origin; three straight spokes of length
    2/(sqrt(3)k) at 90, 210, 330 degrees; semicircular outer arcs.
    """
    if kappa <= 0.0:
        raise InfeasibleError("kappa must be positive")
    r = 2.0 / (SQRT3 * kappa)
    b = ComplexBuilder()
    o = b.vertex(0.0, 0.0)
    ang = [math.pi / 2.0, math.pi / 2.0 + 2.0 * math.pi / 3.0, math.pi / 2.0 + 4.0 * math.pi / 3.0]
    vs = [b.vertex(r * math.cos(a), r * math.sin(a)) for a in ang]
    for i in range(3):
        j = (i + 1) % 3
        # chamber between spokes i and j, bounded outside by a semicircle
        b.add_face(labels[i], [(o, vs[i], 0.0), (vs[i], vs[j], -math.pi / 2.0), (vs[j], o, 0.0)])
    return b.build()


def construct_standard_quadruple(kappa: float, labels=(1, 2, 3, 4)) -> BubbleComplex:
    """Two opposite 3-gons and two 4-gons; every region at pressure kappa.

    The 4-gons abut the 3-gons, so each 4-gon's central edge is half its
    shared edge.
    """
    if kappa <= 0.0:
        raise InfeasibleError("kappa must be positive")
    s = 1.0 / kappa
    b = ComplexBuilder()
    P = b.vertex(0.0, s / (2.0 * SQRT3))
    Q = b.vertex(0.0, -s / (2.0 * SQRT3))
    A = b.vertex(-s, s * SQRT3 / 2.0)
    B = b.vertex(s, s * SQRT3 / 2.0)
    A2 = b.vertex(-s, -s * SQRT3 / 2.0)
    B2 = b.vertex(s, -s * SQRT3 / 2.0)
    b.add_face(labels[0], [(P, B, 0.0), (B, A, -math.pi / 2.0), (A, P, 0.0)])
    b.add_face(labels[1], [(A, A2, -math.pi / 3.0), (A2, Q, 0.0), (Q, P, 0.0), (P, A, 0.0)])
    b.add_face(labels[2], [(Q, A2, 0.0), (A2, B2, -math.pi / 2.0), (B2, Q, 0.0)])
    b.add_face(labels[3], [(P, Q, 0.0), (Q, B2, 0.0), (B2, B, -math.pi / 3.0), (B, P, 0.0)])
    return b.build()


def _rot(p: Point, ang: float) -> Point:
    ca, sa = math.cos(ang), math.sin(ang)
    return Point(ca * p.x - sa * p.y, ca * p.y + sa * p.x)


def construct_flower(
    kappa: float, fivegon_params: list | None = None, base_labels=(1, 2, 3)
) -> BubbleComplex:
    """Ring of six 4-gons alternating with six 5-gons around a symmetric
    interior core (six collar hexagons and a central regular hexagon).

    fivegon_params: optional [t] or [t, rho]; t is the shared straight side
    between each 4-gon and its neighboring 5-gons, rho the radial collar
    edge.  Defaults give the fully symmetric flower.  4-gon labels alternate
    base_labels[0]/base_labels[2]; 5-gons and the core carry base_labels[1];
    collar hexagons carry the label opposite their 4-gon.
    """
    if kappa <= 0.0:
        raise InfeasibleError("kappa must be positive")
    k = kappa
    c4 = ngon_arc_chord(4, k)  # sqrt(3)/k
    c5 = ngon_arc_chord(5, k)  # 1/k
    ell = 1.0 / (SQRT3 * k)  # 5-gon inner edge (symmetric)
    t = None
    rho = None
    if fivegon_params:
        t = fivegon_params[0]
        if len(fivegon_params) > 1:
            rho = fivegon_params[1]
    if t is None:
        t = c4 / 2.0
    if not 0.0 < t < c4:
        raise InfeasibleError(f"flower side t must lie in (0, {c4})")
    a4 = c4 - t  # 4-gon central edge
    collar = a4 + ell  # apex radius; also rho + h
    if rho is None:
        rho = collar / 2.0
    if not 0.0 < rho < collar:
        raise InfeasibleError(f"flower rho must lie in (0, {collar})")
    h = collar - rho  # central hexagon side = circumradius

    d4 = 2.5 / k  # 4-gon chord center radius
    d5 = 1.5 * SQRT3 / k  # 5-gon chord center radius

    l1, l2, l3 = base_labels
    b = ComplexBuilder()

    def v(p: Point) -> int:
        return b.vertex(p.x, p.y, tol=1e-9 / k)

    # canonical 4-gon on the +x axis: chord vertical at x=d4 from
    # (d4, -c4/2) up to (d4, c4/2), arc bulging +x, sides going inward.
    def fourgon_pts(i: int):
        ang = i * math.pi / 3.0
        g_top = _rot(Point(d4, c4 / 2.0), ang)
        g_bot = _rot(Point(d4, -c4 / 2.0), ang)
        t_top = _rot(Point(d4 - t * SQRT3 / 2.0, c4 / 2.0 - t / 2.0), ang)
        t_bot = _rot(Point(d4 - t * SQRT3 / 2.0, -c4 / 2.0 + t / 2.0), ang)
        return g_top, g_bot, t_top, t_bot

    # canonical 5-gon centered on the 30 deg axis; apex on the axis.
    def fivegon_pts(i: int):
        ang = math.pi / 6.0 + i * math.pi / 3.0
        u_ax = Point(math.cos(ang), math.sin(ang))
        apex = Point(u_ax.x * (d5 - t - c5 / (2.0 * SQRT3)), u_ax.y * (d5 - t - c5 / (2.0 * SQRT3)))
        return apex

    def hex_vertex(i: int):
        ang = math.pi / 6.0 + i * math.pi / 3.0
        r = collar - rho  # = h, central hexagon circumradius
        return Point(r * math.cos(ang), r * math.sin(ang))

    # faces
    hex_ids = []
    apex_ids = []
    four_pts = [fourgon_pts(i) for i in range(6)]
    for i in range(6):
        apex_ids.append(v(fivegon_pts(i)))
        hex_ids.append(v(hex_vertex(i)))

    for i in range(6):
        g_top, g_bot, t_top, t_bot = four_pts[i]
        lab4 = l1 if i % 2 == 0 else l3
        gt, gb, tt, tb = v(g_top), v(g_bot), v(t_top), v(t_bot)
        # CCW: up the arc (bulging outward = right of travel), then inward,
        # down the central edge, back out.
        b.add_face(lab4, [(gb, gt, -math.pi / 3.0), (gt, tt, 0.0), (tt, tb, 0.0), (tb, gb, 0.0)])
        # 5-gon between 4-gon i and i+1, centered on axis 30 + 60 i
        gn_top, gn_bot, tn_top, tn_bot = four_pts[(i + 1) % 6]
        ap = apex_ids[i]
        b.add_face(
            l2,
            [
                (gt, v(gn_bot), -math.pi / 6.0),
                (v(gn_bot), v(tn_bot), 0.0),
                (v(tn_bot), ap, 0.0),
                (ap, tt, 0.0),
                (tt, gt, 0.0),
            ],
        )
        # collar hexagon inward of 4-gon i: [central a4, inner ell, rho, h, rho, ell]
        lab_x = l3 if i % 2 == 0 else l1
        ap_prev = apex_ids[(i - 1) % 6]
        hx_prev = hex_ids[(i - 1) % 6]
        hx = hex_ids[i]
        tt_i, tb_i = v(four_pts[i][2]), v(four_pts[i][3])
        b.add_face(
            lab_x,
            [
                (tt_i, ap, 0.0),
                (ap, hx, 0.0),
                (hx, hx_prev, 0.0),
                (hx_prev, ap_prev, 0.0),
                (ap_prev, tb_i, 0.0),
                (tb_i, tt_i, 0.0),
            ],
        )
    # central hexagon, CCW
    b.add_face(l2, [(hex_ids[i], hex_ids[(i + 1) % 6], 0.0) for i in range(6)])
    return b.build()


def circle_with_radii(areas: list[float], label_start: int = 1) -> BubbleComplex:
    """One circle partitioned by radial segments into sectors of the given
    areas.  Non-regular (radii meet the circle at right angles); used as a
    perimeter upper bound."""
    if not areas or any(a <= 0.0 for a in areas):
        raise InfeasibleError("areas must be positive")
    if len(areas) < 2:
        raise InfeasibleError("need at least two sectors")
    total = sum(areas)
    r = math.sqrt(total / math.pi)
    b = ComplexBuilder()
    o = b.vertex(0.0, 0.0)
    angs = [0.0]
    for a in areas[:-1]:
        angs.append(angs[-1] + 2.0 * math.pi * a / total)
    rim = [b.vertex(r * math.cos(a), r * math.sin(a)) for a in angs]
    n = len(areas)
    for i in range(n):
        j = (i + 1) % n
        half = math.pi * areas[i] / total
        b.add_face(label_start + i, [(o, rim[i], 0.0), (rim[i], rim[j], -half), (rim[j], o, 0.0)])
    return b.build()
