"""Webs from M-diagrams, skein reduction, and the simple-transposition action."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import CoefficientOverflow, InvalidEmbedding, MalformedWord
from .matchdiag import MDiagram, Matching, m_diagram, matching_from_word
from .tableaux import MINUS, PLUS, ZERO, Shape, StandardTableau, boundary_word, syt_index, word_to_tableau
from .webgraph import INTERNAL, SL2, SL3, PlaneWeb, boundary_word_of_web, twin

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1

CIRCLE = {SL2: -2, SL3: 3}
BIGON = -2


def checked(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise CoefficientOverflow(f"coefficient {value} outside the signed 64-bit range")
    return value


def kind_of(shape: Shape) -> str:
    return SL2 if shape.rows == 2 else SL3


# -- WebCombo ---------------------------------------------------------------


@dataclass
class WebCombo:
    """Integer combination of reduced webs keyed by tableau index."""

    kind: str
    shape: Shape
    terms: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {k: checked(v) for k, v in self.terms.items() if v}

    @classmethod
    def basis(cls, shape: Shape, idx: int) -> "WebCombo":
        return cls(kind_of(shape), shape, {idx: 1})

    def add_term(self, idx: int, coeff: int) -> None:
        """In-place accumulation; use only on combos you own."""
        value = checked(self.terms.get(idx, 0) + coeff)
        if value:
            self.terms[idx] = value
        else:
            self.terms.pop(idx, None)

    def __add__(self, other: "WebCombo") -> "WebCombo":
        out = WebCombo(self.kind, self.shape, dict(self.terms))
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "WebCombo") -> "WebCombo":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "WebCombo":
        return WebCombo(self.kind, self.shape, {k: checked(v * c) for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WebCombo):
            return NotImplemented
        return self.kind == other.kind and self.shape == other.shape and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.terms.items())

    def to_json(self) -> dict:
        idx = syt_index(self.shape)
        return {
            "kind": self.kind,
            "shape": str(self.shape),
            "terms": [{"tableau": str(idx.tableau(k)), "coeff": v} for k, v in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WebCombo":
        shape = Shape.parse(data["shape"])
        idx = syt_index(shape)
        terms: dict[int, int] = {}
        for t in data["terms"]:
            k = idx.of_tableau(StandardTableau.parse(t["tableau"]))
            terms[k] = terms.get(k, 0) + int(t["coeff"])
        return cls(data["kind"], shape, terms)

    def __repr__(self) -> str:
        words = syt_index(self.shape).words
        body = " + ".join(f"{v}*[{words[k]}]" for k, v in self.items()) or "0"
        return f"WebCombo({self.kind}, {body})"


# -- building basis webs ------------------------------------------------------


def crossing_x(u: tuple[int, int], l: tuple[int, int]) -> Fraction:
    """x-coordinate where the semicircles over ``u`` and ``l`` meet."""
    c1, r1 = Fraction(u[0] + u[1], 2), Fraction(u[1] - u[0], 2)
    c2, r2 = Fraction(l[0] + l[1], 2), Fraction(l[1] - l[0], 2)
    return (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2 * (c2 - c1))


def web_from_m_diagram(md: MDiagram) -> PlaneWeb:
    """Orient the M-diagram and resolve each crossing into a sink/source pair.

    Upper arcs flow left to right out of their ``+`` endpoint, lower arcs right
    to left out of their ``-`` endpoint.  Both kinds end in the sink sitting
    above the shared ``0`` point.
    """
    word = md.word
    w = PlaneWeb(SL3)
    bverts = [w.add_boundary_vertex() for _ in word]
    zero_sink = {p: w.add_vertex(INTERNAL) for p, s in enumerate(word, start=1) if s == ZERO}

    # darts grouped by vertex and role, assembled into rotations at the end
    slots: dict[int, dict[str, int]] = {v: {} for v in w.vtype}

    crossings = []
    for u in md.upper:
        for l in md.lower:
            a, b = u
            c, d = l
            if a < c < b < d or c < a < d < b:
                crossings.append((u, l, crossing_x(u, l)))
    cross_vertices = {}
    for u, l, x in crossings:
        s = w.add_vertex(INTERNAL)
        r = w.add_vertex(INTERNAL)
        slots[s], slots[r] = {}, {}
        dr, ds = w.add_edge(r, s)
        slots[r]["e"], slots[s]["e"] = dr, ds
        cross_vertices[(u, l)] = (s, r, u[0] < l[0])

    def run_chain(start: int, end: int, stops: list[tuple[int, int]], tag: str) -> None:
        """Lay edges along one arc; ``stops`` are crossing (sink, source) pairs."""
        tail, tail_role = start, "b"
        for s, r in stops:
            dt, dh = w.add_edge(tail, s)
            slots[tail][tail_role] = dt
            slots[s][tag + "_in"] = dh
            tail, tail_role = r, tag + "_out"
        dt, dh = w.add_edge(tail, end)
        slots[tail][tail_role] = dt
        slots[end]["upper" if tag == "U" else "lower"] = dh

    for u in md.upper:
        mine = sorted(((x, l) for uu, l, x in crossings if uu == u), key=lambda t: t[0])
        run_chain(bverts[u[0] - 1], zero_sink[u[1]], [cross_vertices[(u, l)][:2] for _, l in mine], "U")
    for l in md.lower:
        mine = sorted(((x, u) for u, ll, x in crossings if ll == l), key=lambda t: -t[0])
        run_chain(bverts[l[1] - 1], zero_sink[l[0]], [cross_vertices[(u, l)][:2] for _, u in mine], "L")
    for p, z in zero_sink.items():
        dt, dh = w.add_edge(bverts[p - 1], z)
        slots[bverts[p - 1]]["b"] = dt
        slots[z]["down"] = dh

    for v in bverts:
        w.set_rotation(v, [slots[v]["b"]])
    for z in zero_sink.values():
        w.set_rotation(z, [slots[z]["down"], slots[z]["lower"], slots[z]["upper"]])
    for s, r, upper_first in cross_vertices.values():
        if upper_first:
            w.set_rotation(s, [slots[s]["L_in"], slots[s]["U_in"], slots[s]["e"]])
            w.set_rotation(r, [slots[r]["L_out"], slots[r]["U_out"], slots[r]["e"]])
        else:
            w.set_rotation(s, [slots[s]["U_in"], slots[s]["L_in"], slots[s]["e"]])
            w.set_rotation(r, [slots[r]["U_out"], slots[r]["L_out"], slots[r]["e"]])
    w.validate()
    return w


def sl2_web_from_word(word: str) -> Matching:
    return matching_from_word(word, PLUS, MINUS)


def web_from_matching(arcs: Iterable[tuple[int, int]], m: int, loops: int = 0) -> PlaneWeb:
    w = PlaneWeb(SL2)
    bverts = [w.add_boundary_vertex() for _ in range(m)]
    for l, r in arcs:
        dl, dr = w.add_edge(bverts[l - 1], bverts[r - 1])
        w.set_rotation(bverts[l - 1], [dl])
        w.set_rotation(bverts[r - 1], [dr])
    w.loops = loops
    w.validate()
    return w


def web_from_word(word: str) -> PlaneWeb:
    if ZERO in word:
        return web_from_m_diagram(m_diagram(word))
    return web_from_matching(sl2_web_from_word(word), len(word))


def web_from_tableau(t: StandardTableau) -> PlaneWeb:
    return web_from_word(boundary_word(t))


@lru_cache(maxsize=None)
def _basis_web(word: str) -> PlaneWeb:
    return web_from_word(word)


def basis_web(shape: Shape, idx: int) -> PlaneWeb:
    """Fresh working copy of the reduced web of tableau ``idx``."""
    return _basis_web(syt_index(shape).words[idx]).copy()


# -- reduction ----------------------------------------------------------------


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    location: tuple[int, ...]
    factor: int


def rewrite_sites(w: PlaneWeb) -> Iterator[tuple[str, list[int]]]:
    """Bigon and square faces whose corners are distinct internal vertices."""
    for cyc in w.trace_cycles():
        if len(cyc) not in (2, 4):
            continue
        verts = [w.dvert[d] for d in cyc]
        if len(set(verts)) != len(verts):
            continue
        if any(w.vtype[v] != INTERNAL for v in verts):
            continue
        yield ("bigon" if len(cyc) == 2 else "square"), cyc


def _stub(w: PlaneWeb, v: int, face_darts: set[int]) -> int:
    rest = [d for d in w.rot[v] if d not in face_darts]
    if len(rest) != 1:
        raise InvalidEmbedding(f"rewrite site vertex {v} has {len(rest)} external legs")
    return rest[0]


def splice(w: PlaneWeb, removed: set[int], pairs: list[tuple[int, int]]) -> None:
    """Delete ``removed`` and reconnect the paired stubs through the gap.

    A stub's edge may lead into another removed vertex; the walk then continues
    through that vertex's partner stub.  A walk that comes back to its start
    becomes a free loop.
    """
    partner = {}
    for x, y in pairs:
        partner[x], partner[y] = y, x
    done: set[int] = set()

    def walk(s: int, goal: int) -> int | None:
        f = twin(s)
        while w.dvert[f] in removed:
            if f == goal:
                return None
            done.add(f)
            s2 = partner[f]
            done.add(s2)
            f = twin(s2)
        return f

    for x, y in pairs:
        if x in done:
            continue
        done.add(x)
        done.add(y)
        fx = walk(x, y)
        if fx is None:
            w.loops += 1
            continue
        fy = walk(y, x)
        if fy is None:
            raise InvalidEmbedding("inconsistent stub chain during splice")
        w.join(fx, fy)
    for v in removed:
        w.remove_vertex(v)


def _reduce_bigon(w: PlaneWeb, cyc: list[int]) -> list[tuple[int, PlaneWeb]]:
    d1, d2 = cyc
    a, b = w.dvert[d1], w.dvert[d2]
    face = {d1, d2, twin(d1), twin(d2)}
    pairs = [(_stub(w, a, face), _stub(w, b, face))]
    splice(w, {a, b}, pairs)
    return [(BIGON, w)]


def _reduce_square(w: PlaneWeb, cyc: list[int]) -> list[tuple[int, PlaneWeb]]:
    verts = [w.dvert[d] for d in cyc]
    face = set(cyc) | {twin(d) for d in cyc}
    e = [_stub(w, v, face) for v in verts]
    other = w.copy()
    splice(w, set(verts), [(e[0], e[1]), (e[2], e[3])])
    splice(other, set(verts), [(e[1], e[2]), (e[3], e[0])])
    return [(1, w), (1, other)]


def reduce_web(
    w: PlaneWeb,
    shape: Shape | None = None,
    rng: random.Random | None = None,
    trace: list[RewriteStep] | None = None,
) -> WebCombo:
    """Expand ``w`` over reduced webs.

    Sites are taken loops first, then bigons, then squares, unless ``rng`` is
    given, in which case each step applies a uniformly chosen site.  The web
    passed in is consumed.
    """
    if shape is None:
        shape = Shape(2 if w.kind == SL2 else 3, max(1, w.m // (2 if w.kind == SL2 else 3)))
    index = syt_index(shape).index
    out = WebCombo(w.kind, shape)
    circle = CIRCLE[w.kind]
    stack: list[tuple[int, PlaneWeb]] = [(1, w)]
    while stack:
        coeff, cur = stack.pop()
        if cur.loops:
            if trace is not None:
                trace.append(RewriteStep("circle", (), circle ** cur.loops))
            coeff = checked(coeff * circle ** cur.loops)
            cur.loops = 0
        if coeff == 0:
            continue
        sites = list(rewrite_sites(cur)) if cur.kind == SL3 else []
        if sites:
            if rng is not None:
                rule, cyc = rng.choice(sites)
            else:
                bigons = [s for s in sites if s[0] == "bigon"]
                rule, cyc = (bigons or sites)[0]
            expand = _reduce_bigon if rule == "bigon" else _reduce_square
            branches = expand(cur, cyc)
            if trace is not None:
                trace.append(RewriteStep(rule, tuple(cyc), branches[0][0] if rule == "bigon" else len(branches)))
            for c, web in branches:
                stack.append((checked(coeff * c), web))
            continue
        if cur.floating_components():
            raise InvalidEmbedding("closed component left with no reducible face")
        word = boundary_word_of_web(cur)
        if word not in index:
            raise MalformedWord(f"reduction produced a web with boundary word {word!r} outside the basis")
        out.add_term(index[word], coeff)
    return out


# public name used throughout the package
reduce = reduce_web


# -- symmetric group action ----------------------------------------------------


def crossing_term(w: PlaneWeb, i: int) -> PlaneWeb:
    """Replace the strands at boundary points ``i, i+1`` by the second smoothing.

    For sl3 this attaches an H (a new internal source joined to a new internal
    sink); for sl2 it caps the two strands and opens a fresh cup below.
    """
    if not 1 <= i < w.m:
        raise ValueError(f"generator index {i} out of range 1..{w.m - 1}")
    bi, bj = w.boundary[i - 1], w.boundary[i]
    di, dj = w.rot[bi][0], w.rot[bj][0]
    if w.kind == SL3:
        a = w.add_vertex(INTERNAL)
        b = w.add_vertex(INTERNAL)
        ni, nj = w.add_vertex("boundary"), w.add_vertex("boundary")
        for d in (di, dj):
            w.dvert[d] = a
        w.rot[bi], w.rot[bj] = [], []
        da, db = w.add_edge(a, b)
        xi, xb = w.add_edge(ni, b)
        yj, yb = w.add_edge(nj, b)
        w.set_rotation(a, [dj, di, da])
        w.set_rotation(b, [db, xb, yb])
        w.set_rotation(ni, [xi])
        w.set_rotation(nj, [yj])
    else:
        if w.dvert[twin(di)] == bj:
            w.remove_edge(di)
            w.loops += 1
        else:
            w.join(twin(di), twin(dj))
        ni, nj = w.add_vertex("boundary"), w.add_vertex("boundary")
        xi, yj = w.add_edge(ni, nj)
        w.set_rotation(ni, [xi])
        w.set_rotation(nj, [yj])
    for old in (bi, bj):
        del w.rot[old]
        del w.vtype[old]
    w.boundary[i - 1], w.boundary[i] = ni, nj
    return w


_ACTION_CACHE: dict[tuple[Shape, int, int], WebCombo] = {}


def s_action(kind: str, shape: Shape, i: int, idx: int) -> WebCombo:
    """``s_i`` applied to the basis web of tableau ``idx``."""
    if kind != kind_of(shape):
        raise ValueError(f"kind {kind} does not match shape {shape}")
    key = (shape, i, idx)
    hit = _ACTION_CACHE.get(key)
    if hit is None:
        term = reduce_web(crossing_term(basis_web(shape, idx), i), shape)
        hit = WebCombo.basis(shape, idx) + term
        _ACTION_CACHE[key] = hit
    return hit


def s_action_combo(kind: str, shape: Shape, i: int, combo: WebCombo) -> WebCombo:
    out = WebCombo(kind, shape)
    for idx, c in combo.items():
        for k, v in s_action(kind, shape, i, idx).items():
            out.add_term(k, checked(c * v))
    return out


def action_matrix(shape: Shape, i: int) -> list[list[int]]:
    """Matrix of ``s_i`` on the web basis in tableau-index order (columns = inputs)."""
    size = len(syt_index(shape))
    kind = kind_of(shape)
    mat = [[0] * size for _ in range(size)]
    for col in range(size):
        for row, v in s_action(kind, shape, i, col).items():
            mat[row][col] = v
    return mat


def word_web(word: str) -> PlaneWeb:
    """Basis web for a tableau given by its boundary word."""
    word_to_tableau(word)
    return web_from_word(word)
