"""Arc diagrams on the boundary line.

Points are numbered ``1..m``.  An arc is a pair ``(l, r)`` with ``l < r``.
Matchings are stored as sorted tuples of arcs so they hash and compare by value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Unbalanced, YamanouchiViolation
from .tableaux import MINUS, PLUS, ZERO, StandardTableau, boundary_word, normalize_word

Arc = tuple[int, int]
Matching = tuple[Arc, ...]


def matching_from_word(word: str, left: str, right: str) -> Matching:
    """Stack matching: each ``right`` symbol closes the nearest open ``left``."""
    word = normalize_word(word)
    stack: list[int] = []
    arcs: list[Arc] = []
    for pos, s in enumerate(word, start=1):
        if s == left:
            stack.append(pos)
        elif s == right:
            if not stack:
                raise YamanouchiViolation(f"symbol {right!r} at {pos} has no open {left!r}")
            arcs.append((stack.pop(), pos))
    if stack:
        raise Unbalanced(f"{len(stack)} unmatched {left!r} symbols in {word!r}")
    return tuple(sorted(arcs))


def is_noncrossing(arcs: Iterable[Arc]) -> bool:
    arcs = list(arcs)
    ends = [p for a in arcs for p in a]
    if len(ends) != len(set(ends)):
        return False
    return not any(arcs_cross(a, b) for k, a in enumerate(arcs) for b in arcs[k + 1:])


def arcs_cross(a: Arc, b: Arc) -> bool:
    """Proper interleaving; arcs that share an endpoint never cross."""
    (p, q), (r, s) = a, b
    return p < r < q < s or r < p < s < q


def contains(outer: Arc, inner: Arc) -> bool:
    return outer[0] < inner[0] and inner[1] < outer[1]


def nesting_number(arcs: Sequence[Arc]) -> int:
    """Sum over arcs of the number of non-crossing arcs strictly above it."""
    total = 0
    for a in arcs:
        for b in arcs:
            if contains(b, a) and not arcs_cross(a, b):
                total += 1
    return total


@dataclass(frozen=True)
class MDiagram:
    word: str
    upper: Matching
    lower: Matching

    @property
    def arcs(self) -> Matching:
        return self.upper + self.lower

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "upper": [list(a) for a in self.upper],
            "lower": [list(a) for a in self.lower],
        }


def m_diagram(t: StandardTableau | str) -> MDiagram:
    word = boundary_word(t) if isinstance(t, StandardTableau) else normalize_word(t)
    return MDiagram(word, matching_from_word(word, PLUS, ZERO), matching_from_word(word, ZERO, MINUS))


def crossing_number(m: MDiagram) -> int:
    return sum(1 for a in m.upper for b in m.lower if arcs_cross(a, b))


def depth_profile(word: str) -> list[int]:
    """Prefix count of ``+`` minus ``-``; entry ``k`` sits just right of point ``k``."""
    out = [0]
    for s in normalize_word(word):
        out.append(out[-1] + (s == PLUS) - (s == MINUS))
    return out


def profile_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) == len(b) and all(x <= y for x, y in zip(a, b))


def profile_lt(a: Sequence[int], b: Sequence[int]) -> bool:
    return profile_leq(a, b) and tuple(a) != tuple(b)


def shadow_level(profile: Sequence[int], d: int) -> list[tuple[int, int]]:
    """Closure of the region of depth at least ``d`` as merged point intervals."""
    intervals: list[tuple[int, int]] = []
    for k in range(1, len(profile) - 1):
        if profile[k] >= d:
            if intervals and intervals[-1][1] == k:
                intervals[-1] = (intervals[-1][0], k + 1)
            else:
                intervals.append((k, k + 1))
    return intervals


def shadow_from_profile(profile: Sequence[int]) -> dict[int, list[tuple[int, int]]]:
    return {d: shadow_level(profile, d) for d in range(1, max(profile, default=0) + 1)}


@dataclass(frozen=True)
class BandDiagram:
    arcs: Matching
    closed_loops: int = 0

    @property
    def anchored(self) -> bool:
        return self.closed_loops == 0


def band_from_profile(word: str) -> BandDiagram:
    return BandDiagram(matching_from_word(word, PLUS, MINUS), 0)


def dot_depth(band: BandDiagram, word: str) -> int:
    """Sum over non-endpoint points of the number of band arcs passing over them."""
    ends = {p for a in band.arcs for p in a}
    m = len(normalize_word(word))
    return sum(1 for i in range(1, m + 1) if i not in ends for l, r in band.arcs if l < i < r)


def rank_formula_m(m: MDiagram) -> int:
    return nesting_number(m.arcs) + crossing_number(m)


def rank_formula_band(band: BandDiagram, word: str) -> int:
    return nesting_number(band.arcs) + dot_depth(band, word) - len(band.arcs)


def matching_to_json(arcs: Matching) -> str:
    return json.dumps([list(a) for a in arcs])


def matching_from_json(text: str) -> Matching:
    return tuple(sorted((int(l), int(r)) for l, r in json.loads(text)))
