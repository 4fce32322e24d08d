"""Embedded webs in the upper half-plane.

A :class:`PlaneWeb` is a combinatorial map.  Every edge owns two darts
``2e`` and ``2e + 1`` (so the twin of ``d`` is ``d ^ 1``); each vertex keeps
its darts in counterclockwise order.  Boundary vertices sit on the axis in
the order of ``PlaneWeb.boundary``.

Face tracing closes the half-plane with a virtual floor: consecutive boundary
vertices are joined along the axis and a virtual vertex below the axis joins
the two ends.  The floor is never crossed when measuring depth.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidEmbedding, NotManifold
from .matchdiag import BandDiagram
from .tableaux import MINUS, PLUS, ZERO

SL2, SL3 = "sl2", "sl3"
BOUNDARY, INTERNAL = "boundary", "internal"


def twin(d: int) -> int:
    return d ^ 1


class PlaneWeb:
    """Mutable dart-based plane multigraph with an optional sl3 orientation."""

    def __init__(self, kind: str = SL3) -> None:
        if kind not in (SL2, SL3):
            raise ValueError(f"unknown web kind {kind!r}")
        self.kind = kind
        self.boundary: list[int] = []
        self.vtype: dict[int, str] = {}
        self.rot: dict[int, list[int]] = {}
        self.dvert: dict[int, int] = {}
        # True when the edge of the dart flows away from the dart's vertex
        self.dout: dict[int, bool] = {}
        self.loops = 0
        self._next_vertex = 0
        self._next_edge = 0

    # construction -----------------------------------------------------

    def add_vertex(self, vtype: str = INTERNAL) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        self.vtype[v] = vtype
        self.rot[v] = []
        return v

    def add_boundary_vertex(self) -> int:
        v = self.add_vertex(BOUNDARY)
        self.boundary.append(v)
        return v

    def add_edge(self, u: int, v: int) -> tuple[int, int]:
        """New edge flowing ``u -> v``; returns ``(dart at u, dart at v)``.

        The darts are not placed in any rotation; callers do that with
        :meth:`set_rotation` or :meth:`replace_dart`.
        """
        e = self._next_edge
        self._next_edge += 1
        du, dv = 2 * e, 2 * e + 1
        self.dvert[du], self.dvert[dv] = u, v
        self.dout[du], self.dout[dv] = True, False
        return du, dv

    def set_rotation(self, v: int, darts: Sequence[int]) -> None:
        for d in darts:
            if self.dvert.get(d) != v:
                raise InvalidEmbedding(f"dart {d} does not start at vertex {v}")
        self.rot[v] = list(darts)

    def replace_dart(self, old: int, new: int) -> None:
        """Put ``new`` where ``old`` sat in its vertex rotation."""
        v = self.dvert[old]
        self.dvert[new] = v
        r = self.rot[v]
        r[r.index(old)] = new

    def remove_edge(self, d: int) -> None:
        for x in (d, twin(d)):
            v = self.dvert.pop(x)
            self.dout.pop(x)
            r = self.rot.get(v)
            if r is not None and x in r:
                r.remove(x)

    def remove_vertex(self, v: int) -> None:
        for d in list(self.rot[v]):
            if d in self.dvert:
                self.remove_edge(d)
        del self.rot[v]
        del self.vtype[v]
        if v in self.boundary:
            self.boundary.remove(v)

    def join(self, a: int, b: int) -> int:
        """Fuse the far halves of darts ``a`` and ``b`` into one edge.

        ``a`` and ``b`` keep their slots in the rotations of their own vertices;
        the edges they belonged to are discarded.  Returns the new dart at a's
        vertex.
        """
        if self.kind == SL3 and self.dout[a] == self.dout[b]:
            raise InvalidEmbedding("joining two darts with the same flow direction")
        ua, ub = self.dvert[a], self.dvert[b]
        out_a = self.dout[a] if self.kind == SL3 else True
        na, nb = self.add_edge(ua, ub) if out_a else reversed(self.add_edge(ub, ua))
        self.replace_dart(a, na)
        self.replace_dart(b, nb)
        for x in (a, twin(a), b, twin(b)):
            if x in self.dvert:
                v = self.dvert.pop(x)
                self.dout.pop(x)
                r = self.rot.get(v)
                if r is not None and x in r:
                    r.remove(x)
        return na

    def copy(self) -> "PlaneWeb":
        w = PlaneWeb.__new__(PlaneWeb)
        w.kind = self.kind
        w.boundary = list(self.boundary)
        w.vtype = dict(self.vtype)
        w.rot = {v: list(r) for v, r in self.rot.items()}
        w.dvert = dict(self.dvert)
        w.dout = dict(self.dout)
        w.loops = self.loops
        w._next_vertex = self._next_vertex
        w._next_edge = self._next_edge
        return w

    # queries -----------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.vtype)

    @property
    def internal_vertices(self) -> list[int]:
        return [v for v in sorted(self.vtype) if self.vtype[v] == INTERNAL]

    @property
    def darts(self) -> list[int]:
        return sorted(self.dvert)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(tail, head)`` pairs following the orientation."""
        out = []
        for d in self.darts:
            if d % 2 == 0:
                a, b = self.dvert[d], self.dvert[d + 1]
                out.append((a, b) if self.dout[d] else (b, a))
        return out

    def head(self, d: int) -> int:
        return self.dvert[twin(d)]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def rot_next(self) -> dict[int, int]:
        nxt = {}
        for r in self.rot.values():
            k = len(r)
            for j, d in enumerate(r):
                nxt[d] = r[(j + 1) % k]
        return nxt

    def rot_prev(self) -> dict[int, int]:
        prv = {}
        for r in self.rot.values():
            k = len(r)
            for j, d in enumerate(r):
                prv[d] = r[(j - 1) % k]
        return prv

    def validate(self) -> None:
        """Structural checks; raises :class:`InvalidEmbedding`."""
        seen = set()
        for v, r in self.rot.items():
            for d in r:
                if self.dvert.get(d) != v or d in seen:
                    raise InvalidEmbedding(f"rotation of vertex {v} lists dart {d} inconsistently")
                seen.add(d)
        if seen != set(self.dvert):
            raise InvalidEmbedding("some darts are missing from every rotation")
        for d in self.dvert:
            if twin(d) not in self.dvert:
                raise InvalidEmbedding(f"dart {d} has no twin")
            if self.dout[d] == self.dout[twin(d)]:
                raise InvalidEmbedding(f"edge of dart {d} has inconsistent orientation")
        for v in self.boundary:
            if self.degree(v) != 1:
                raise InvalidEmbedding(f"boundary vertex {v} has degree {self.degree(v)}")
        for v in self.internal_vertices:
            if self.degree(v) != 3:
                raise InvalidEmbedding(f"internal vertex {v} has degree {self.degree(v)}")
            if self.kind == SL3:
                flows = {self.dout[d] for d in self.rot[v]}
                if len(flows) != 1:
                    raise InvalidEmbedding(f"internal vertex {v} is neither a source nor a sink")
        if self.kind == SL3:
            for v in self.boundary:
                if not self.dout[self.rot[v][0]]:
                    raise InvalidEmbedding(f"boundary vertex {v} is not a source")
        if self.kind == SL2 and self.internal_vertices:
            raise InvalidEmbedding("sl2 webs have no internal vertices")

    def components(self) -> list[set[int]]:
        parent = {v: v for v in self.vtype}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d, v in self.dvert.items():
            parent[find(v)] = find(self.dvert[twin(d)])
        groups: dict[int, set[int]] = {}
        for v in self.vtype:
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def floating_components(self) -> list[set[int]]:
        """Components that touch no boundary vertex."""
        bset = set(self.boundary)
        return [c for c in self.components() if not c & bset]

    def trace_cycles(self) -> list[list[int]]:
        """Face boundaries of the web alone (no floor), as dart cycles."""
        prv = self.rot_prev()
        seen: set[int] = set()
        cycles = []
        for start in self.darts:
            if start in seen:
                continue
            cyc = []
            d = start
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = prv[twin(d)]
            if d != start:
                raise InvalidEmbedding("dart successor map is not a permutation")
            cycles.append(cyc)
        return cycles

    # serialization -----------------------------------------------------

    def to_json(self) -> dict:
        vmap = {v: k for k, v in enumerate(self.boundary)}
        for v in self.internal_vertices:
            vmap[v] = len(vmap)
        dmap = {d: k for k, d in enumerate(self.darts)}
        nxt = self.rot_next()
        vertices = []
        for v in sorted(vmap, key=vmap.get):
            item = {"id": vmap[v], "type": self.vtype[v]}
            if self.vtype[v] == BOUNDARY:
                item["position"] = vmap[v] + 1
            vertices.append(item)
        darts = [
            {
                "id": dmap[d],
                "edge": dmap[d] // 2,
                "vertex": vmap[self.dvert[d]],
                "next_at_vertex": dmap[nxt[d]],
                "twin": dmap[twin(d)],
                "oriented_out": self.dout[d],
            }
            for d in self.darts
        ]
        return {"m": self.m, "kind": self.kind, "vertices": vertices, "darts": darts, "loops": self.loops}

    @classmethod
    def from_json(cls, data: dict) -> "PlaneWeb":
        w = cls(data["kind"])
        vids = {}
        for item in sorted(data["vertices"], key=lambda it: it["id"]):
            vtype = item["type"]
            if vtype == BOUNDARY:
                continue
            vids[item["id"]] = None
        bverts = sorted(
            (it for it in data["vertices"] if it["type"] == BOUNDARY),
            key=lambda it: it.get("position", it["id"]),
        )
        for it in bverts:
            vids[it["id"]] = w.add_boundary_vertex()
        for it in sorted(data["vertices"], key=lambda it: it["id"]):
            if it["type"] != BOUNDARY:
                vids[it["id"]] = w.add_vertex(INTERNAL)
        darts = {d["id"]: d for d in data["darts"]}
        local: dict[int, int] = {}
        for did in sorted(darts):
            d = darts[did]
            if did in local:
                continue
            t = darts[d["twin"]]
            if t["twin"] != did:
                raise InvalidEmbedding(f"dart {did} and its twin disagree")
            u, v = vids[d["vertex"]], vids[t["vertex"]]
            if d["oriented_out"]:
                a, b = w.add_edge(u, v)
            else:
                b, a = w.add_edge(v, u)
            local[did], local[d["twin"]] = a, b
        for v_json, v in vids.items():
            mine = [did for did in darts if darts[did]["vertex"] == v_json]
            if not mine:
                continue
            order = [mine[0]]
            while len(order) < len(mine):
                order.append(darts[order[-1]]["next_at_vertex"])
            if darts[order[-1]]["next_at_vertex"] != order[0] or len(set(order)) != len(mine):
                raise InvalidEmbedding(f"rotation at vertex {v_json} is not a single cycle")
            w.set_rotation(v, [local[x] for x in order])
        w.loops = int(data.get("loops", 0))
        w.validate()
        return w

    def to_dot(self) -> str:
        lines = [f"digraph web {{", "  node [shape=circle, fontsize=10];"]
        for k, v in enumerate(self.boundary):
            lines.append(f'  v{v} [shape=box, label="{k + 1}", pos="{k},0!"];')
        for v in self.internal_vertices:
            lines.append(f'  v{v} [label="", width=0.15];')
        for a, b in self.edges:
            arrow = "" if self.kind == SL3 else " [dir=none]"
            lines.append(f"  v{a} -> v{b}{arrow};")
        if self.loops:
            lines.append(f'  loops [shape=plaintext, label="free loops: {self.loops}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return (
            f"PlaneWeb(kind={self.kind}, m={self.m}, internal={len(self.internal_vertices)}, "
            f"edges={len(self.dvert) // 2}, loops={self.loops})"
        )


@dataclass
class FaceDecomposition:
    """Faces of a web on the closed half-plane.

    ``face_of`` maps web darts and virtual floor darts (negative ids) to face
    ids.  ``depth`` is ``None`` for the face below the floor and for faces of
    components that float free of the boundary.
    """

    cycles: list[list[int]]
    face_of: dict[int, int]
    unbounded: int
    lower: int
    depth: list[int | None]
    floor_faces: list[int]

    @property
    def profile(self) -> list[int]:
        return [self.depth[f] for f in self.floor_faces]  # type: ignore[misc]

    def bounded_faces(self) -> list[int]:
        return [f for f in range(len(self.cycles)) if f not in (self.unbounded, self.lower)]


def _floor_darts(k: int) -> tuple[int, int]:
    """Eastward and westward virtual darts of floor segment ``k`` (0..m)."""
    return -(2 * k + 1), -(2 * k + 2)


def _virtual_twin(d: int) -> int:
    if d >= 0:
        return d ^ 1
    k, east = divmod(-d - 1, 2)
    return -(2 * k + 2) if east == 0 else -(2 * k + 1)


def faces(w: PlaneWeb) -> FaceDecomposition:
    m = w.m
    if m == 0:
        raise InvalidEmbedding("face tracing needs at least one boundary vertex")
    rot: dict[int, list[int]] = {v: list(r) for v, r in w.rot.items()}
    P = -1
    rot[P] = [_floor_darts(0)[0], _floor_darts(m)[1]]
    for k, v in enumerate(w.boundary, start=1):
        east, _ = _floor_darts(k)
        _, west = _floor_darts(k - 1)
        rot[v] = [east] + rot[v] + [west]
    prv = {}
    for r in rot.values():
        for j, d in enumerate(r):
            prv[d] = r[(j - 1) % len(r)]

    all_darts = [d for r in rot.values() for d in r]
    face_of: dict[int, int] = {}
    cycles: list[list[int]] = []
    for start in all_darts:
        if start in face_of:
            continue
        fid = len(cycles)
        cyc = []
        d = start
        while d not in face_of:
            face_of[d] = fid
            cyc.append(d)
            d = prv[_virtual_twin(d)]
        if d != start:
            raise InvalidEmbedding("dart successor map is not a permutation")
        cycles.append(cyc)

    # the floor ties every boundary-touching component to the virtual vertex
    comps = 1 + len(w.floating_components())
    vcount = len(w.vtype) + 1
    ecount = len(w.dvert) // 2 + m + 1
    if vcount - ecount + len(cycles) != 2 * comps:
        raise InvalidEmbedding(
            f"Euler characteristic check failed: V={vcount} E={ecount} F={len(cycles)} components={comps}"
        )

    unbounded = face_of[_floor_darts(0)[0]]
    lower = face_of[_floor_darts(0)[1]]
    depth: list[int | None] = [None] * len(cycles)
    depth[unbounded] = 0
    adj: list[list[int]] = [[] for _ in cycles]
    for d in w.dvert:
        adj[face_of[d]].append(face_of[twin(d)])
    queue = deque([unbounded])
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if depth[g] is None:
                depth[g] = depth[f] + 1  # type: ignore[operator]
                queue.append(g)
    floor_faces = [face_of[_floor_darts(k)[0]] for k in range(m + 1)]
    return FaceDecomposition(cycles, face_of, unbounded, lower, depth, floor_faces)


def face_depths(fd: FaceDecomposition) -> list[int | None]:
    return list(fd.depth)


def boundary_profile(w: PlaneWeb, fd: FaceDecomposition | None = None) -> list[int]:
    return (fd or faces(w)).profile


def word_from_profile(profile: Sequence[int]) -> str:
    symbols = {1: PLUS, 0: ZERO, -1: MINUS}
    out = []
    for a, b in zip(profile, profile[1:]):
        if b - a not in symbols:
            raise InvalidEmbedding("boundary depth jumps by more than one")
        out.append(symbols[b - a])
    return "".join(out)


def boundary_word_of_web(w: PlaneWeb, fd: FaceDecomposition | None = None) -> str:
    return word_from_profile(boundary_profile(w, fd))


def band_arcs(w: PlaneWeb, fd: FaceDecomposition | None = None) -> BandDiagram:
    """Group edges separating faces of different depth into arcs and loops."""
    fd = fd or faces(w)
    for d in w.dvert:
        if fd.depth[fd.face_of[d]] is None:
            raise InvalidEmbedding("band diagram undefined for webs with floating components")
    band = {d for d in w.dvert if fd.depth[fd.face_of[d]] != fd.depth[fd.face_of[twin(d)]]}
    at_vertex: dict[int, list[int]] = {v: [d for d in w.rot[v] if d in band] for v in w.vtype}
    for v in w.internal_vertices:
        if len(at_vertex[v]) not in (0, 2):
            raise NotManifold(f"internal vertex {v} meets {len(at_vertex[v])} band edges")
    position = {v: k for k, v in enumerate(w.boundary, start=1)}
    used: set[int] = set()
    arcs = []
    for v in w.boundary:
        for d in at_vertex[v]:
            if d in used:
                continue
            cur = d
            while True:
                used.add(cur)
                used.add(twin(cur))
                u = w.dvert[twin(cur)]
                if w.vtype[u] == BOUNDARY:
                    break
                nxt = [x for x in at_vertex[u] if x != twin(cur)]
                cur = nxt[0]
            a, b = sorted((position[v], position[u]))
            arcs.append((a, b))
    loops = 0
    for d in band:
        if d in used:
            continue
        loops += 1
        cur = d
        while cur not in used:
            used.add(cur)
            used.add(twin(cur))
            u = w.dvert[twin(cur)]
            cur = [x for x in at_vertex[u] if x != twin(cur)][0]
    return BandDiagram(tuple(sorted(arcs)), loops)


def is_reduced(w: PlaneWeb) -> bool:
    if w.loops or w.floating_components():
        return False
    if w.kind == SL2:
        return True
    fd = faces(w)
    for f in fd.bounded_faces():
        cyc = fd.cycles[f]
        if all(d >= 0 for d in cyc) and len(cyc) < 6:
            return False
    return True


def excluded_faces(w: PlaneWeb, fd: FaceDecomposition) -> set[int]:
    """Faces that are the unique deepest face at some internal vertex."""
    out = set()
    for v in w.internal_vertices:
        around = [fd.face_of[d] for d in w.rot[v]]
        depths = [fd.depth[f] for f in around]
        top = max(depths)  # type: ignore[type-var]
        deepest = {f for f, dd in zip(around, depths) if dd == top}
        if len(deepest) == 1 and depths.count(top) == 1:
            out |= deepest
    return out


def web_rank(w: PlaneWeb, offset: int = 1) -> int:
    """Rank read off the embedding.

    Counts internal sources, then adds ``depth - offset`` over the bounded
    faces that are not excluded.  With the default offset this agrees with
    the M-diagram rank on reduced webs; ``offset=0`` sums raw depths.
    """
    fd = faces(w)
    sources = sum(1 for v in w.internal_vertices if all(w.dout[d] for d in w.rot[v]))
    excl = excluded_faces(w, fd)
    total = sum((fd.depth[f] or 0) - offset for f in fd.bounded_faces() if f not in excl)
    return sources + total


def from_coordinates(
    kind: str,
    points: dict[str, tuple[float, float]],
    edges: Iterable[tuple[str, str] | tuple[str, str, Sequence[tuple[float, float]]]],
) -> PlaneWeb:
    """Build a web from a drawing.

    Points with ``y == 0`` become boundary vertices ordered by ``x``; every
    edge flows from its first to its second endpoint and may bend through
    waypoints.  Rotations come from the angle of the first segment leaving
    each vertex.
    """
    w = PlaneWeb(kind)
    names = {}
    for name, (x, y) in sorted(points.items(), key=lambda kv: (kv[1][1] != 0, kv[1][0])):
        names[name] = w.add_boundary_vertex() if y == 0 else w.add_vertex(INTERNAL)
    angles: dict[int, float] = {}
    for item in edges:
        u, v = item[0], item[1]
        via = list(item[2]) if len(item) > 2 else []  # type: ignore[arg-type]
        path = [points[u]] + via + [points[v]]
        du, dv = w.add_edge(names[u], names[v])
        (x0, y0), (x1, y1) = path[0], path[1]
        angles[du] = math.atan2(y1 - y0, x1 - x0)
        (x0, y0), (x1, y1) = path[-1], path[-2]
        angles[dv] = math.atan2(y1 - y0, x1 - x0)
    for v in w.vtype:
        mine = [d for d in w.dvert if w.dvert[d] == v]
        w.set_rotation(v, sorted(mine, key=lambda d: angles[d] % (2 * math.pi)))
    w.validate()
    return w
