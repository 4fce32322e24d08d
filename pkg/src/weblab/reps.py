"""Transition matrix from the Specht basis to the web basis.

The Specht module is modelled in tabloid coordinates.  A tabloid is stored
as its row word: entry ``j`` of the tuple is the row holding ``j + 1``, so the
simple transposition ``s_i`` acts by swapping positions ``i - 1`` and ``i``.
"""

from __future__ import annotations

import csv
import io
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import PathInconsistent, SolveFailed
from .orders import SHADOW, TABLEAU, OrderRelation, linear_extension, relation
from .skein import WebCombo, action_matrix, kind_of, s_action_combo
from .tableaux import Shape, StandardTableau, poset, syt_index

Tabloid = tuple[int, ...]
SpechtVector = dict[Tabloid, int]


@dataclass
class TransitionMatrix:
    kind: str
    shape: Shape
    order: list[int]
    columns: dict[int, WebCombo] = field(repr=False)

    def entry(self, web: int, tableau: int) -> int:
        return self.columns[tableau].terms.get(web, 0)

    def dense(self, order: list[int] | None = None) -> np.ndarray:
        """Entries with rows = webs and columns = Specht vectors, both in ``order``."""
        order = self.order if order is None else order
        pos = {k: j for j, k in enumerate(order)}
        out = np.zeros((len(order), len(order)), dtype=np.int64)
        for t, combo in self.columns.items():
            for w, c in combo.terms.items():
                out[pos[w], pos[t]] = c
        return out

    def to_csv(self) -> str:
        idx = syt_index(self.shape)
        labels = [str(idx.tableau(k)) for k in self.order]
        mat = self.dense()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["web\\specht"] + labels)
        for label, row in zip(labels, mat.tolist()):
            writer.writerow([label] + row)
        return buf.getvalue()

    def to_json(self) -> dict:
        idx = syt_index(self.shape)
        return {
            "kind": self.kind,
            "shape": str(self.shape),
            "order": [str(idx.tableau(k)) for k in self.order],
            "matrix": self.dense().tolist(),
        }


def transition_matrix(kind: str, shape: Shape, check_paths: bool = True) -> TransitionMatrix:
    """Propagate ``phi`` up the tableau poset from the column-filled tableau."""
    if kind != kind_of(shape):
        raise ValueError(f"kind {kind} does not match shape {shape}")
    p = poset(shape)
    root = p.index.column_filled
    phi: dict[int, WebCombo] = {root: WebCombo.basis(shape, root)}
    layers = sorted(p.nodes, key=lambda v: p.rank[v])
    for v in layers:
        if v == root:
            continue
        incoming = sorted(p.in_edges[v])
        i, src = incoming[0]
        phi[v] = s_action_combo(kind, shape, i, phi[src])
        if check_paths:
            for j, other in incoming[1:]:
                alt = s_action_combo(kind, shape, j, phi[other])
                if alt != phi[v]:
                    raise PathInconsistent(
                        f"image of {p.index.words[v]} differs along s{i} from {p.index.words[src]} "
                        f"and s{j} from {p.index.words[other]}"
                    )
    order = linear_extension(relation(shape, SHADOW))
    return TransitionMatrix(kind, shape, order, phi)


# -- Specht module --------------------------------------------------------------


def tabloid_of_rows(rows) -> Tabloid:
    m = sum(len(r) for r in rows)
    out = [0] * m
    for r, row in enumerate(rows):
        for x in row:
            out[x - 1] = r
    return tuple(out)


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def polytabloid(t: StandardTableau) -> SpechtVector:
    """Signed sum of the tabloids of ``q T`` over the column stabilizer of ``T``."""
    rows = t.rows
    k, n = len(rows), len(rows[0])
    columns = [[rows[r][j] for r in range(k)] for j in range(n)]
    perms = list(itertools.permutations(range(k)))
    signs = [_perm_sign(q) for q in perms]
    out: SpechtVector = {}
    m = k * n
    for choice in itertools.product(range(len(perms)), repeat=n):
        tab = [0] * m
        sign = 1
        for col, qi in zip(columns, choice):
            q = perms[qi]
            sign *= signs[qi]
            for r in range(k):
                # entry col[r] moves to the cell of col[q[r]]
                tab[col[r] - 1] = q[r]
        key = tuple(tab)
        out[key] = out.get(key, 0) + sign
    return {key: v for key, v in out.items() if v}


def act_on_vector(vec: SpechtVector, i: int) -> SpechtVector:
    out: SpechtVector = {}
    for key, v in vec.items():
        lst = list(key)
        lst[i - 1], lst[i] = lst[i], lst[i - 1]
        out[tuple(lst)] = v
    return out


@dataclass
class SpechtBasis:
    shape: Shape
    vectors: list[SpechtVector]
    pivots: list[Tabloid]

    @property
    def size(self) -> int:
        return len(self.vectors)


@lru_cache(maxsize=8)
def specht_basis(shape: Shape) -> SpechtBasis:
    idx = syt_index(shape)
    vectors = [polytabloid(idx.tableau(k)) for k in range(len(idx))]
    pivots = [tabloid_of_rows(idx.tableau(k).rows) for k in range(len(idx))]
    return SpechtBasis(shape, vectors, pivots)


def solve_exact(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve ``a x = b`` for square ``a`` by Gauss-Jordan over the rationals."""
    n = len(a)
    rows = [list(a[r]) + list(b[r]) for r in range(n)]
    width = len(rows[0]) if rows else 0
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise SolveFailed(f"singular system at column {col}")
        rows[col], rows[piv] = rows[piv], rows[col]
        pr = rows[col]
        inv = 1 / pr[col]
        if inv != 1:
            rows[col] = pr = [x * inv for x in pr]
        nz = [j for j in range(width) if pr[j] != 0]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                row = rows[r]
                for j in nz:
                    row[j] -= f * pr[j]
    return [row[n:] for row in rows]


@lru_cache(maxsize=32)
def specht_action_matrix(shape: Shape, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of ``s_i`` in the standard polytabloid basis (columns = inputs)."""
    basis = specht_basis(shape)
    n = basis.size
    a = [[Fraction(basis.vectors[c].get(basis.pivots[r], 0)) for c in range(n)] for r in range(n)]
    images = [act_on_vector(v, i) for v in basis.vectors]
    b = [[Fraction(images[c].get(basis.pivots[r], 0)) for c in range(n)] for r in range(n)]
    x = solve_exact(a, b)
    out = [[0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            if x[r][c].denominator != 1:
                raise SolveFailed(f"non-integral coordinate {x[r][c]} for s{i}")
            out[r][c] = int(x[r][c])
    # the pivot rows determine x; confirm it on every tabloid
    for c in range(n):
        lhs: SpechtVector = {}
        for r in range(n):
            if out[r][c]:
                for key, v in basis.vectors[r].items():
                    lhs[key] = lhs.get(key, 0) + out[r][c] * v
        lhs = {k: v for k, v in lhs.items() if v}
        if lhs != images[c]:
            raise SolveFailed(f"s{i} image of basis vector {c} is not in the span")
    return tuple(tuple(r) for r in out)


def verify_equivariance(kind: str, shape: Shape) -> dict:
    tm = transition_matrix(kind, shape)
    order = list(range(len(syt_index(shape))))
    phi = tm.dense(order)
    bad = []
    for i in range(1, shape.size):
        web = np.array(action_matrix(shape, i), dtype=np.int64)
        spe = np.array(specht_action_matrix(shape, i), dtype=np.int64)
        if not np.array_equal(web @ phi, phi @ spe):
            bad.append(i)
    return {
        "check": "equivariance",
        "shape": str(shape),
        "kind": kind,
        "passed": not bad,
        "witnesses": [{"generator": i} for i in bad],
    }


def check_unitriangular(tm: TransitionMatrix, order: OrderRelation | Callable[[int, int], bool]) -> dict:
    """Diagonal ones and no entry outside the strict order below the diagonal."""
    lt = order.lt if isinstance(order, OrderRelation) else order
    name = order.kind if isinstance(order, OrderRelation) else "custom"
    words = syt_index(tm.shape).words
    diag_bad = [words[t] for t in tm.columns if tm.entry(t, t) != 1]
    violations = []
    for t, combo in tm.columns.items():
        for w, c in combo.terms.items():
            if w != t and not lt(w, t):
                violations.append({"web": words[w], "specht": words[t], "coeff": c})
    negatives = sum(1 for combo in tm.columns.values() for c in combo.terms.values() if c < 0)
    return {
        "check": "unitriangular",
        "order": name,
        "shape": str(tm.shape),
        "kind": tm.kind,
        "passed": not diag_bad and not violations,
        "diagonal_ok": not diag_bad,
        "negative_entries": negatives,
        "witnesses": violations[:50],
        "violation_count": len(violations),
    }
