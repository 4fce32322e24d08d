"""Rectangular standard Young tableaux, boundary words and the tableau poset.

Tableaux of shape ``(n, n)`` and ``(n, n, n)`` are indexed by their boundary
words: symbol ``i`` of the word records the row holding entry ``i`` (``+`` top,
``0`` middle, ``-`` bottom).  Every other module keys cells of bases on the
position of a tableau in :func:`enumerate_syt` order.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .errors import InvalidShape, MalformedWord, NotGraded, Unbalanced, YamanouchiViolation

PLUS, ZERO, MINUS = "+", "0", "-"
ROW_SYMBOLS = {2: (PLUS, MINUS), 3: (PLUS, ZERO, MINUS)}
# rank of each symbol in the canonical word order
SYMBOL_ORDER = {PLUS: 0, ZERO: 1, MINUS: 2}

# (i, i+1) symbol pairs that admit a covering edge out of a tableau
EDGE_PAIRS = frozenset({(MINUS, PLUS), (MINUS, ZERO), (ZERO, PLUS)})


@dataclass(frozen=True, order=True)
class Shape:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows not in (2, 3):
            raise InvalidShape(f"only 2- and 3-row rectangles are supported, got {self.rows} rows")
        if self.cols < 1:
            raise InvalidShape(f"column count must be positive, got {self.cols}")

    @property
    def size(self) -> int:
        return self.rows * self.cols

    @property
    def symbols(self) -> tuple[str, ...]:
        return ROW_SYMBOLS[self.rows]

    @classmethod
    def parse(cls, text: str) -> "Shape":
        """Parse ``"3x2"`` (rows x columns)."""
        match = re.fullmatch(r"\s*(\d+)\s*[xX,]\s*(\d+)\s*", text)
        if not match:
            raise InvalidShape(f"shape must look like RxN, got {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"


def normalize_word(word: str) -> str:
    return word.replace("−", MINUS).strip()


def is_balanced(word: str, a: str, b: str) -> bool:
    return word.count(a) == word.count(b)


def is_yamanouchi(word: str, a: str, b: str) -> bool:
    """True when no prefix of ``word`` has more ``b`` symbols than ``a`` symbols."""
    excess = 0
    for s in word:
        if s == a:
            excess += 1
        elif s == b:
            excess -= 1
            if excess < 0:
                return False
    return True


def check_word(word: str, rows: int | None = None) -> str:
    """Validate a boundary word of a standard rectangular tableau.

    Returns the normalized word.  Raises :class:`Unbalanced` or
    :class:`YamanouchiViolation` naming the first failing symbol pair.
    """
    word = normalize_word(word)
    if not word or set(word) - {PLUS, ZERO, MINUS}:
        raise MalformedWord(f"boundary word must be a nonempty string over '+0-', got {word!r}")
    if rows is None:
        rows = 3 if ZERO in word else 2
    if rows == 2 and ZERO in word:
        raise MalformedWord("two-row words use only '+' and '-'")
    pairs = [(PLUS, MINUS)] if rows == 2 else [(PLUS, ZERO), (ZERO, MINUS), (PLUS, MINUS)]
    for a, b in pairs:
        if not is_balanced(word, a, b):
            raise Unbalanced(f"word {word!r} is not ({a}{b})-balanced")
        if not is_yamanouchi(word, a, b):
            raise YamanouchiViolation(f"word {word!r} is not ({a}{b})-Yamanouchi")
    return word


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.rows}
        if len(self.rows) not in (2, 3) or len(widths) != 1:
            raise InvalidShape(f"not a 2- or 3-row rectangle: {self.rows}")
        if not is_standard(self.rows):
            raise MalformedWord(f"filling is not standard: {self.rows}")

    @property
    def shape(self) -> Shape:
        return Shape(len(self.rows), len(self.rows[0]))

    @classmethod
    def parse(cls, text: str) -> "StandardTableau":
        """Accept ``"1,3/2,5/4,6"`` or, for single-digit entries, ``"13/25/46"``."""
        parts = text.strip().split("/")
        rows = []
        for part in parts:
            if "," in part:
                rows.append(tuple(int(x) for x in part.split(",")))
            else:
                rows.append(tuple(int(ch) for ch in part.strip()))
        return cls(tuple(rows))

    def __str__(self) -> str:
        return "/".join(",".join(str(x) for x in row) for row in self.rows)

    def compact(self) -> str:
        """``13/25/46`` style when every entry is a single digit."""
        if self.shape.size < 10:
            return "/".join("".join(str(x) for x in row) for row in self.rows)
        return str(self)

    def row_of(self) -> dict[int, int]:
        return {x: r for r, row in enumerate(self.rows) for x in row}

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for row in self.rows for x in row)


def is_standard(rows: Sequence[Sequence[int]]) -> bool:
    m = sum(len(r) for r in rows)
    if sorted(x for r in rows for x in r) != list(range(1, m + 1)):
        return False
    for r in rows:
        if any(r[j] >= r[j + 1] for j in range(len(r) - 1)):
            return False
    for upper, lower in zip(rows, rows[1:]):
        if any(upper[j] >= lower[j] for j in range(min(len(upper), len(lower)))):
            return False
    return True


def boundary_word(t: StandardTableau) -> str:
    symbols = ROW_SYMBOLS[len(t.rows)]
    row = t.row_of()
    return "".join(symbols[row[i]] for i in range(1, t.shape.size + 1))


def word_to_tableau(word: str) -> StandardTableau:
    word = check_word(word)
    rows_n = 3 if ZERO in word else 2
    symbols = ROW_SYMBOLS[rows_n]
    rows: list[list[int]] = [[] for _ in range(rows_n)]
    for i, s in enumerate(word, start=1):
        rows[symbols.index(s)].append(i)
    return StandardTableau(tuple(tuple(r) for r in rows))


class Transposed(NamedTuple):
    rows: tuple[tuple[int, ...], ...]
    standard: bool


def apply_transposition(t: StandardTableau, i: int) -> Transposed:
    """Swap the entries ``i`` and ``i + 1``; the result need not be standard."""
    if not 1 <= i < t.shape.size:
        raise ValueError(f"transposition index {i} out of range 1..{t.shape.size - 1}")
    swap = {i: i + 1, i + 1: i}
    rows = tuple(tuple(swap.get(x, x) for x in row) for row in t.rows)
    return Transposed(rows, is_standard(rows))


def column_word(t: StandardTableau) -> tuple[int, ...]:
    n = len(t.rows[0])
    return tuple(row[j] for j in range(n) for row in t.rows)


def descent_count(t: StandardTableau) -> int:
    """Pairs ``i < j`` with ``j`` read before ``i`` in the column word."""
    w = column_word(t)
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def iter_words(shape: Shape) -> Iterator[str]:
    """Stream boundary words in lexicographic order of the row-reading words.

    Row-reading order compares the top-row position sets first, then the
    middle-row sets, so the generator fixes all ``+`` positions before
    distributing ``0``/``-`` over the rest.
    """
    n, m, k = shape.cols, shape.size, shape.rows
    word = [""] * m

    def top_rows(pos: int, plus: int) -> Iterator[None]:
        if pos == m:
            if plus == n:
                yield None
            return
        rest = pos - plus
        # "+" first: a smaller position in the top row is lexicographically smaller
        if plus < n:
            word[pos] = PLUS
            yield from top_rows(pos + 1, plus + 1)
        if rest + 1 <= (k - 1) * plus and (m - pos - 1) >= n - plus:
            word[pos] = "*"
            yield from top_rows(pos + 1, plus)

    def lower_rows(pos: int, plus: int, zero: int, minus: int) -> Iterator[None]:
        while pos < m and word[pos] == PLUS:
            plus += 1
            pos += 1
        if pos == m:
            yield None
            return
        if zero < plus and zero < n:
            word[pos] = ZERO
            yield from lower_rows(pos + 1, plus, zero + 1, minus)
            word[pos] = "*"
        if minus < zero:
            word[pos] = MINUS
            yield from lower_rows(pos + 1, plus, zero, minus + 1)
            word[pos] = "*"

    if k == 2:
        for _ in top_rows(0, 0):
            w = "".join(MINUS if s == "*" else s for s in word)
            if is_yamanouchi(w, PLUS, MINUS):
                yield w
        return
    for _ in top_rows(0, 0):
        for _ in lower_rows(0, 0, 0, 0):
            yield "".join(word)


def enumerate_syt(shape: Shape) -> Iterator[StandardTableau]:
    for w in iter_words(shape):
        yield word_to_tableau(w)


@dataclass
class SYTIndex:
    """Materialized enumeration: index <-> boundary word."""

    shape: Shape
    words: list[str]
    index: dict[str, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.words)

    def tableau(self, idx: int) -> StandardTableau:
        return word_to_tableau(self.words[idx])

    def of_tableau(self, t: StandardTableau) -> int:
        return self.index[boundary_word(t)]

    @property
    def column_filled(self) -> int:
        sym = self.shape.symbols
        return self.index["".join(sym) * self.shape.cols]

    @property
    def row_filled(self) -> int:
        return self.index["".join(s * self.shape.cols for s in self.shape.symbols)]


@lru_cache(maxsize=None)
def syt_index(shape: Shape) -> SYTIndex:
    words = list(iter_words(shape))
    return SYTIndex(shape, words, {w: i for i, w in enumerate(words)})


def covering_moves(word: str) -> Iterator[tuple[int, str]]:
    """Yield ``(i, target_word)`` for every covering edge out of ``word``."""
    for p in range(len(word) - 1):
        if (word[p], word[p + 1]) in EDGE_PAIRS:
            yield p + 1, word[:p] + word[p + 1] + word[p] + word[p + 2:]


@dataclass
class TableauPoset:
    shape: Shape
    index: SYTIndex
    edges: list[tuple[int, int, int]]
    rank: list[int]
    out_edges: list[list[tuple[int, int]]] = field(repr=False)
    in_edges: list[list[tuple[int, int]]] = field(repr=False)

    @property
    def nodes(self) -> range:
        return range(len(self.rank))

    @property
    def max_rank(self) -> int:
        return max(self.rank)


def build_poset(shape: Shape) -> TableauPoset:
    """Hasse diagram of the tableau order with rank = BFS distance from T0."""
    idx = syt_index(shape)
    size = len(idx)
    out_edges: list[list[tuple[int, int]]] = [[] for _ in range(size)]
    in_edges: list[list[tuple[int, int]]] = [[] for _ in range(size)]
    edges = []
    for src, w in enumerate(idx.words):
        for i, target in covering_moves(w):
            dst = idx.index[target]
            edges.append((src, i, dst))
            out_edges[src].append((i, dst))
            in_edges[dst].append((i, src))

    rank = [-1] * size
    root = idx.column_filled
    rank[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for _, v in out_edges[u]:
            if rank[v] < 0:
                rank[v] = rank[u] + 1
                queue.append(v)
    if any(r < 0 for r in rank):
        raise NotGraded("some tableau is unreachable from the column-filled tableau")
    for src, i, dst in edges:
        if rank[dst] != rank[src] + 1:
            raise NotGraded(f"edge {idx.words[src]} -s{i}-> {idx.words[dst]} skips a rank")
    return TableauPoset(shape, idx, edges, rank, out_edges, in_edges)


@lru_cache(maxsize=8)
def poset(shape: Shape) -> TableauPoset:
    return build_poset(shape)
