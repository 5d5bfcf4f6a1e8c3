"""Planar bubble complexes as half-edge (DCEL) subdivisions with arc edges.

A complex is built from explicit face boundary walks.  Interior faces are
given counterclockwise; every directed edge not matched by an opposite walk
is assigned to the single exterior face (region label 0).  Once built, a
complex is immutable; moves and perturbations construct a new one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .arc_geometry import (
    ArcSpec,
    Point,
    arc_curvature,
    arc_length,
    normalize_angle,
    point_at,
    segment_area,
    split_at,
    tangent_at_end,
    tangent_at_start,
)

EXTERIOR_REGION = 0
FORMAT_VERSION = "1"

# Geometric tolerance used for merging coincident vertices and smoothness tests.
GEOM_TOL = 1e-9


@dataclass(frozen=True)
class EdgeRecord:
    """Undirected edge: directed v0 -> v1 with half_angle, faces on each side."""

    v0: int
    v1: int
    half_angle: float
    face_left: int
    face_right: int


@dataclass
class HalfEdge:
    origin: int
    dest: int
    half_angle: float
    face: int
    edge: int  # undirected edge index
    twin: int = -1
    nxt: int = -1


class ComplexError(ValueError):
    pass


class BubbleComplex:
    """Immutable planar subdivision; construct via ComplexBuilder."""

    def __init__(
        self,
        vertices: list[Point],
        edges: list[EdgeRecord],
        face_regions: dict[int, int],
        empty_labels: frozenset[int] = frozenset(),
    ):
        self.vertices = list(vertices)
        self.edges = list(edges)
        self.face_regions = dict(face_regions)
        self.empty_labels = frozenset(empty_labels)
        self._check_basic()
        self._build_halfedges()
        self._resolve_next()
        self._trace_faces()
        self._check_euler()

    # -- construction internals ------------------------------------------------

    def _check_basic(self) -> None:
        for p in self.vertices:
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ComplexError("non-finite vertex coordinate")
        exterior = [f for f, r in self.face_regions.items() if r == EXTERIOR_REGION]
        if len(exterior) != 1:
            raise ComplexError("exactly one face must carry region label 0")
        self.exterior_face = exterior[0]
        for e in self.edges:
            if e.v0 == e.v1:
                raise ComplexError("loop edges are not supported")
            if e.face_left == e.face_right:
                raise ComplexError("edge with identical face on both sides")
            for f in (e.face_left, e.face_right):
                if f not in self.face_regions:
                    raise ComplexError(f"edge references unknown face {f}")

    def arc(self, edge_index: int) -> ArcSpec:
        e = self.edges[edge_index]
        return ArcSpec(self.vertices[e.v0], self.vertices[e.v1], e.half_angle)

    def _build_halfedges(self) -> None:
        self.halfedges: list[HalfEdge] = []
        for i, e in enumerate(self.edges):
            h = HalfEdge(e.v0, e.v1, e.half_angle, e.face_left, i)
            t = HalfEdge(e.v1, e.v0, -e.half_angle, e.face_right, i)
            h.twin = 2 * i + 1
            t.twin = 2 * i
            self.halfedges.extend([h, t])

    def _halfedge_arc(self, hi: int) -> ArcSpec:
        h = self.halfedges[hi]
        return ArcSpec(self.vertices[h.origin], self.vertices[h.dest], h.half_angle)

    def _resolve_next(self) -> None:
        # Outgoing half-edges sorted counterclockwise by tangent direction at
        # each vertex; ties (tangent circles) broken by leftward curvature.
        outgoing: dict[int, list[int]] = {}
        for hi, h in enumerate(self.halfedges):
            outgoing.setdefault(h.origin, []).append(hi)

        def sort_key(hi: int) -> tuple[float, float]:
            a = self._halfedge_arc(hi)
            psi = tangent_at_start(a)
            kappa = arc_curvature(a.chord(), a.half_angle)
            return (psi, -kappa)

        self._vertex_order: dict[int, list[int]] = {}
        for v, out in outgoing.items():
            if len(out) == 1:
                raise ComplexError(f"dangling edge at vertex {v}")
            out.sort(key=sort_key)
            for i in range(len(out) - 1):
                a, b = sort_key(out[i]), sort_key(out[i + 1])
                if abs(a[0] - b[0]) < GEOM_TOL and abs(a[1] - b[1]) < GEOM_TOL:
                    raise ComplexError(f"overlapping edges at vertex {v}")
            self._vertex_order[v] = out
        for hi, h in enumerate(self.halfedges):
            out = self._vertex_order[h.dest]
            k = out.index(h.twin)
            self.halfedges[hi].nxt = out[(k - 1) % len(out)]

    def _trace_faces(self) -> None:
        self.face_cycles: dict[int, list[list[int]]] = {f: [] for f in self.face_regions}
        seen = [False] * len(self.halfedges)
        for start in range(len(self.halfedges)):
            if seen[start]:
                continue
            cycle = []
            hi = start
            while not seen[hi]:
                seen[hi] = True
                cycle.append(hi)
                hi = self.halfedges[hi].nxt
            if hi != start:
                raise ComplexError("half-edge next-pointers do not close a cycle")
            faces = {self.halfedges[i].face for i in cycle}
            if len(faces) != 1:
                raise ComplexError(f"inconsistent face labels around a cycle: {faces}")
            self.face_cycles[faces.pop()].append(cycle)
        for f, cycles in self.face_cycles.items():
            if not cycles:
                raise ComplexError(f"face {f} has no boundary")
            if f != self.exterior_face and len(cycles) != 1:
                raise ComplexError(f"interior face {f} has {len(cycles)} boundary cycles")

    def _check_euler(self) -> None:
        v = len(self.vertices)
        e = len(self.edges)
        f = len(self.face_regions)
        comps = self._component_count()
        if v - e + f != 1 + comps:
            raise ComplexError(f"Euler check failed: V={v} E={e} F={f} components={comps}")

    def _component_count(self) -> int:
        parent = list(range(len(self.vertices)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            parent[find(e.v0)] = find(e.v1)
        return len({find(i) for i in range(len(self.vertices))})

    # -- queries ---------------------------------------------------------------

    @property
    def regions(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for f, r in self.face_regions.items():
            out.setdefault(r, []).append(f)
        return out

    def region_labels(self) -> list[int]:
        """Enclosed region labels: non-exterior, non-empty."""
        labels = {r for r in self.face_regions.values()}
        labels.discard(EXTERIOR_REGION)
        return sorted(labels - self.empty_labels)

    def vertex_degree(self, v: int) -> int:
        return len(self._vertex_order.get(v, []))

    def edges_at_vertex(self, v: int) -> list[int]:
        """Outgoing half-edge indices at v, counterclockwise."""
        return list(self._vertex_order.get(v, []))

    def _cycle_signed_area(self, cycle: list[int]) -> float:
        total = 0.0
        for hi in cycle:
            h = self.halfedges[hi]
            p0, p1 = self.vertices[h.origin], self.vertices[h.dest]
            total += (p0.x * p1.y - p1.x * p0.y) / 2.0
            total -= segment_area((p1 - p0).norm(), h.half_angle)
        return total

    def face_area(self, face: int) -> float:
        if face == self.exterior_face:
            raise ComplexError("exterior face has infinite area")
        a = self._cycle_signed_area(self.face_cycles[face][0])
        if a <= 0.0:
            raise ComplexError(f"face {face} has non-positive traversal area {a}")
        return a

    def region_area(self, label: int) -> float:
        faces = [f for f, r in self.face_regions.items() if r == label]
        if not faces or label == EXTERIOR_REGION:
            raise ComplexError(f"no enclosed region with label {label}")
        return sum(self.face_area(f) for f in faces)

    def region_areas(self) -> dict[int, float]:
        return {r: self.region_area(r) for r in self.region_labels()}

    def total_perimeter(self) -> float:
        return sum(arc_length(self.arc(i).chord(), e.half_angle) for i, e in enumerate(self.edges))

    def edge_length(self, edge_index: int) -> float:
        return arc_length(self.arc(edge_index).chord(), self.edges[edge_index].half_angle)

    def face_sides(self, face: int) -> int:
        return len(self.face_cycles[face][0])

    def boundary_halfedges(self, face: int) -> list[int]:
        return list(self.face_cycles[face][0])

    def dual_adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """Adjacency of faces: face -> [(neighbor_face, edge_index), ...]."""
        adj: dict[int, list[tuple[int, int]]] = {f: [] for f in self.face_regions}
        for i, e in enumerate(self.edges):
            adj[e.face_left].append((e.face_right, i))
            adj[e.face_right].append((e.face_left, i))
        return adj

    def exterior_edge_count(self, face: int) -> int:
        ext = self.exterior_face
        return sum(
            1
            for hi in self.face_cycles[face][0]
            if self.halfedges[self.halfedges[hi].twin].face == ext
        )

    def is_smooth_joint(self, v: int, tol: float = 1e-9) -> bool:
        """True for an artificial degree-2 vertex where the two arcs continue
        each other with matching tangent and curvature."""
        out = self._vertex_order.get(v, [])
        if len(out) != 2:
            return False
        a0, a1 = self._halfedge_arc(out[0]), self._halfedge_arc(out[1])
        d = abs(normalize_angle(tangent_at_start(a0) - tangent_at_start(a1)))
        if abs(d - math.pi) > tol:
            return False
        k0 = arc_curvature(a0.chord(), a0.half_angle)
        k1 = arc_curvature(a1.chord(), a1.half_angle)
        return abs(k0 + k1) <= tol * max(1.0, abs(k0))

    def corners(self, face: int) -> list[tuple[int, int, int]]:
        """(vertex, incoming halfedge, outgoing halfedge) triples around a face."""
        out = []
        for cycle in self.face_cycles[face]:
            n = len(cycle)
            for i in range(n):
                hi, hj = cycle[i], cycle[(i + 1) % n]
                out.append((self.halfedges[hi].dest, hi, hj))
        return out

    def corner_interior_angle(self, incoming: int, outgoing: int) -> float:
        """Interior angle of the face at the corner between two half-edges."""
        a_in = self._halfedge_arc(incoming)
        a_out = self._halfedge_arc(outgoing)
        turn = normalize_angle(tangent_at_start(a_out) - tangent_at_end(a_in))
        return math.pi - turn

    # -- transforms ------------------------------------------------------------

    def rescale(self, factor: float) -> "BubbleComplex":
        if factor <= 0.0:
            raise ComplexError("scale factor must be positive")
        verts = [Point(p.x * factor, p.y * factor) for p in self.vertices]
        return BubbleComplex(verts, self.edges, self.face_regions, self.empty_labels)

    def translated(self, dx: float, dy: float) -> "BubbleComplex":
        verts = [Point(p.x + dx, p.y + dy) for p in self.vertices]
        return BubbleComplex(verts, self.edges, self.face_regions, self.empty_labels)

    def with_vertices(self, verts: list[Point]) -> "BubbleComplex":
        return BubbleComplex(verts, self.edges, self.face_regions, self.empty_labels)

    def subdivide_arcs(self, max_half_angle: float) -> "BubbleComplex":
        """Split arcs until every |half_angle| <= max_half_angle.

        Inserted vertices are smooth degree-2 joints.
        """
        verts = list(self.vertices)
        edges: list[EdgeRecord] = []
        for ei, e in enumerate(self.edges):
            theta = abs(e.half_angle)
            parts = max(1, math.ceil(theta / max_half_angle - 1e-12))
            if parts == 1:
                edges.append(e)
                continue
            arc = self.arc(ei)
            chain = [e.v0]
            for k in range(1, parts):
                verts.append(point_at(arc, k / parts))
                chain.append(len(verts) - 1)
            chain.append(e.v1)
            for k in range(parts):
                edges.append(
                    EdgeRecord(
                        chain[k], chain[k + 1], e.half_angle / parts, e.face_left, e.face_right
                    )
                )
        return BubbleComplex(verts, edges, self.face_regions, self.empty_labels)

    # -- serialization ---------------------------------------------------------

    def to_document(self, metadata: dict | None = None) -> dict:
        meta = dict(metadata or {})
        if self.empty_labels:
            meta["empty_labels"] = sorted(self.empty_labels)
        return {
            "format_version": FORMAT_VERSION,
            "vertices": [
                {"id": i, "x": _g17(p.x), "y": _g17(p.y)} for i, p in enumerate(self.vertices)
            ],
            "edges": [
                {
                    "id": i,
                    "v_from": e.v0,
                    "v_to": e.v1,
                    "half_angle": _g17(e.half_angle),
                    "face_left": e.face_left,
                    "face_right": e.face_right,
                }
                for i, e in enumerate(self.edges)
            ],
            "faces": [
                {"id": f, "region_label": r} for f, r in sorted(self.face_regions.items())
            ],
            "metadata": meta,
        }

    @staticmethod
    def from_document(doc: dict) -> "BubbleComplex":
        if doc.get("format_version") != FORMAT_VERSION:
            raise ComplexError(f"unsupported format_version {doc.get('format_version')!r}")
        vid_map = {v["id"]: i for i, v in enumerate(doc["vertices"])}
        verts = [Point(float(v["x"]), float(v["y"])) for v in doc["vertices"]]
        edges = [
            EdgeRecord(
                vid_map[e["v_from"]],
                vid_map[e["v_to"]],
                float(e["half_angle"]),
                e["face_left"],
                e["face_right"],
            )
            for e in sorted(doc["edges"], key=lambda e: e["id"])
        ]
        faces = {f["id"]: f["region_label"] for f in doc["faces"]}
        empty = frozenset(doc.get("metadata", {}).get("empty_labels", []))
        return BubbleComplex(verts, edges, faces, empty)

    def save(self, path: str, metadata: dict | None = None) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_document(metadata), fh, indent=1)
            fh.write("\n")

    @staticmethod
    def load(path: str) -> "BubbleComplex":
        with open(path) as fh:
            return BubbleComplex.from_document(json.load(fh))


def _g17(x: float) -> float:
    # floats survive JSON round-trips exactly; keep as-is.
    return x


@dataclass
class _DirectedSide:
    v0: int
    v1: int
    half_angle: float
    face: int


class ComplexBuilder:
    """Accumulates face boundary walks and assembles a BubbleComplex.

    Interior faces are added as counterclockwise walks; each directed edge
    carries the half-angle for that traversal direction.  Unmatched directed
    sides are assigned to the exterior face.
    """

    EXTERIOR_FACE = 0

    def __init__(self) -> None:
        self.points: list[Point] = []
        self.sides: list[_DirectedSide] = []
        self.face_regions: dict[int, int] = {self.EXTERIOR_FACE: EXTERIOR_REGION}
        self._next_face = 1

    def vertex(self, x: float, y: float, tol: float = GEOM_TOL) -> int:
        for i, p in enumerate(self.points):
            if math.hypot(p.x - x, p.y - y) <= tol:
                return i
        self.points.append(Point(x, y))
        return len(self.points) - 1

    def add_face(self, region: int, walk: list[tuple[int, int, float]]) -> int:
        """walk: [(v0, v1, half_angle), ...] counterclockwise, closed."""
        if region == EXTERIOR_REGION:
            raise ComplexError("exterior face is implicit")
        for i, (a, b, _) in enumerate(walk):
            if walk[(i + 1) % len(walk)][0] != b:
                raise ComplexError("face walk is not a closed chain")
        fid = self._next_face
        self._next_face += 1
        self.face_regions[fid] = region
        for v0, v1, theta in walk:
            self.sides.append(_DirectedSide(v0, v1, theta, fid))
        return fid

    @staticmethod
    def from_complex(c: BubbleComplex) -> "ComplexBuilder":
        b = ComplexBuilder()
        b.points = list(c.vertices)
        b.face_regions = dict(c.face_regions)
        b._next_face = max(c.face_regions) + 1
        ext = c.exterior_face
        for e in c.edges:
            if e.face_left != ext:
                b.sides.append(_DirectedSide(e.v0, e.v1, e.half_angle, e.face_left))
            if e.face_right != ext:
                b.sides.append(_DirectedSide(e.v1, e.v0, -e.half_angle, e.face_right))
            if e.face_left == ext and e.face_right == ext:
                raise ComplexError("edge bounded by exterior on both sides")
        # remap exterior face id to builder convention
        if ext != ComplexBuilder.EXTERIOR_FACE:
            b.face_regions[ComplexBuilder.EXTERIOR_FACE] = b.face_regions.pop(ext)
        return b

    # -- editing ---------------------------------------------------------------

    def _sides_of_edge(self, v0: int, v1: int) -> list[int]:
        return [
            i
            for i, s in enumerate(self.sides)
            if (s.v0, s.v1) == (v0, v1) or (s.v0, s.v1) == (v1, v0)
        ]

    def split_side(self, v0: int, v1: int, fractions: list[float]) -> list[int]:
        """Split the undirected edge v0-v1 at sweep fractions (measured from
        v0), inserting new vertices; returns the new vertex ids in order."""
        idxs = self._sides_of_edge(v0, v1)
        if not idxs:
            raise ComplexError("no such edge to split")
        fr = sorted(fractions)
        if not all(0.0 < f < 1.0 for f in fr):
            raise ComplexError("split fractions must be inside (0,1)")
        base = self.sides[idxs[0]]
        arc = ArcSpec(self.points[base.v0], self.points[base.v1], base.half_angle)
        new_vids = []
        for f in fr:
            p = point_at(arc, f)
            self.points.append(p)
            new_vids.append(len(self.points) - 1)
        for i in idxs:
            s = self.sides[i]
            forward = (s.v0, s.v1) == (base.v0, base.v1)
            cuts = fr if forward else [1.0 - f for f in reversed(fr)]
            vids = new_vids if forward else list(reversed(new_vids))
            chain_v = [s.v0] + vids + [s.v1]
            bounds = [0.0] + cuts + [1.0]
            repl = [
                _DirectedSide(
                    chain_v[k],
                    chain_v[k + 1],
                    s.half_angle * (bounds[k + 1] - bounds[k]),
                    s.face,
                )
                for k in range(len(chain_v) - 1)
            ]
            self.sides[i] = repl[0]
            self.sides.extend(repl[1:])
        return new_vids

    def delete_edge(self, v0: int, v1: int) -> float:
        """Remove the undirected edge v0-v1, merging its two faces.

        Returns the removed arc length.  Faces must carry the same region.
        """
        idxs = self._sides_of_edge(v0, v1)
        if not idxs:
            raise ComplexError("no such edge to delete")
        faces = sorted({self.sides[i].face for i in idxs})
        exterior_side = len(idxs) == 1
        if exterior_side:
            faces.append(self.EXTERIOR_FACE)
        keep, drop = faces[0], faces[-1]
        if self.face_regions[keep] != self.face_regions[drop] and not exterior_side:
            raise ComplexError("cannot delete edge separating different regions")
        s = self.sides[idxs[0]]
        length = arc_length((self.points[s.v1] - self.points[s.v0]).norm(), s.half_angle)
        for i in sorted(idxs, reverse=True):
            del self.sides[i]
        if drop != keep:
            for side in self.sides:
                if side.face == drop:
                    side.face = keep
            del self.face_regions[drop]
        return length

    def relabel_face(self, face: int, region: int) -> None:
        if face not in self.face_regions:
            raise ComplexError(f"unknown face {face}")
        self.face_regions[face] = region

    def set_half_angle(self, v0: int, v1: int, theta: float) -> None:
        idxs = self._sides_of_edge(v0, v1)
        if not idxs:
            raise ComplexError("no such edge")
        for i in idxs:
            s = self.sides[i]
            s.half_angle = theta if (s.v0, s.v1) == (v0, v1) else -theta

    def delete_same_region_edges(self) -> float:
        """Delete every edge whose two incident faces share a region label.

        Returns total removed length.  Exterior-adjacent sides are kept.
        """
        removed = 0.0
        while True:
            pair = None
            seen: dict[tuple[int, int], _DirectedSide] = {}
            for s in self.sides:
                key = (min(s.v0, s.v1), max(s.v0, s.v1))
                if key in seen:
                    other = seen[key]
                    if (
                        other.face != s.face
                        and self.face_regions[other.face] == self.face_regions[s.face]
                    ):
                        pair = key
                        break
                else:
                    seen[key] = s
            if pair is None:
                return removed
            removed += self.delete_edge(*pair)

    def build(self, empty_labels: frozenset[int] = frozenset()) -> BubbleComplex:
        # Pair opposite directed sides: (a,b,theta) with (b,a,-theta) from a
        # different face.  Vertex pairs may carry several parallel edges
        # (2-gon faces), so matching goes by half-angle as well.
        groups: dict[tuple[int, int], list[_DirectedSide]] = {}
        for s in self.sides:
            groups.setdefault((min(s.v0, s.v1), max(s.v0, s.v1)), []).append(s)
        edges = []
        for ss in groups.values():
            unmatched = list(ss)
            while unmatched:
                s = unmatched.pop()
                mate = None
                for t in unmatched:
                    if (
                        t.v0 == s.v1
                        and t.v1 == s.v0
                        and t.face != s.face
                        and abs(s.half_angle + t.half_angle) <= 1e-9
                    ):
                        mate = t
                        break
                if mate is not None:
                    unmatched.remove(mate)
                    edges.append(EdgeRecord(s.v0, s.v1, s.half_angle, s.face, mate.face))
                else:
                    edges.append(EdgeRecord(s.v0, s.v1, s.half_angle, s.face, self.EXTERIOR_FACE))
        used = {e.v0 for e in edges} | {e.v1 for e in edges}
        remap = {}
        verts = []
        for i, p in enumerate(self.points):
            if i in used:
                remap[i] = len(verts)
                verts.append(p)
        edges = [
            EdgeRecord(remap[e.v0], remap[e.v1], e.half_angle, e.face_left, e.face_right)
            for e in edges
        ]
        used_faces = {e.face_left for e in edges} | {e.face_right for e in edges}
        used_faces.add(self.EXTERIOR_FACE)
        face_regions = {f: r for f, r in self.face_regions.items() if f in used_faces}
        return BubbleComplex(verts, edges, face_regions, empty_labels)


def disjoint_union(*complexes: BubbleComplex) -> BubbleComplex:
    """Combine disjoint complexes into one (sharing the exterior region)."""
    b = ComplexBuilder()
    for c in complexes:
        vmap = {i: b.vertex(p.x, p.y, tol=0.0) for i, p in enumerate(c.vertices)}
        fmap: dict[int, int] = {}
        ext = c.exterior_face
        for e in c.edges:
            for face, v0, v1, theta in (
                (e.face_left, e.v0, e.v1, e.half_angle),
                (e.face_right, e.v1, e.v0, -e.half_angle),
            ):
                if face == ext:
                    continue
                if face not in fmap:
                    fmap[face] = b._next_face
                    b._next_face += 1
                    b.face_regions[fmap[face]] = c.face_regions[face]
                b.sides.append(_DirectedSide(vmap[v0], vmap[v1], theta, fmap[face]))
    empty = frozenset().union(*(c.empty_labels for c in complexes))
    return b.build(empty)


def circle_complex(
    area: float, center: tuple[float, float] = (0.0, 0.0), label: int = 1, n_arcs: int = 2
) -> BubbleComplex:
    """A single circular region of the given area, split into n_arcs arcs."""
    if area <= 0.0 or n_arcs < 2:
        raise ComplexError("need positive area and at least two arcs")
    r = math.sqrt(area / math.pi)
    cx, cy = center
    b = ComplexBuilder()
    vids = [
        b.vertex(cx + r * math.cos(2 * math.pi * k / n_arcs), cy + r * math.sin(2 * math.pi * k / n_arcs))
        for k in range(n_arcs)
    ]
    theta = -math.pi / n_arcs  # counterclockwise interior walk bulges right
    walk = [(vids[k], vids[(k + 1) % n_arcs], theta) for k in range(n_arcs)]
    b.add_face(label, walk)
    return b.build()


def add_disjoint_circles(
    c: BubbleComplex, specs: list[tuple[float, tuple[float, float], int]]
) -> BubbleComplex:
    """Add circles (area, center, label) far from the existing complex."""
    extras = [circle_complex(a, ctr, lab) for a, ctr, lab in specs]
    return disjoint_union(c, *extras)
