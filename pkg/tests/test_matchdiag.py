import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weblab.errors import Unbalanced, YamanouchiViolation
from weblab.matchdiag import (
    arcs_cross,
    band_from_profile,
    contains,
    crossing_number,
    depth_profile,
    dot_depth,
    is_noncrossing,
    m_diagram,
    matching_from_json,
    matching_from_word,
    matching_to_json,
    nesting_number,
    profile_leq,
    profile_lt,
    rank_formula_band,
    rank_formula_m,
    shadow_from_profile,
    shadow_level,
)
from weblab.tableaux import Shape, poset, syt_index


def perfect_matchings(points):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        for tail in perfect_matchings(rest[:k] + rest[k + 1:]):
            yield ((first, other),) + tail


def crosses_geometrically(a, b):
    """Two upper semicircles meet iff exactly one endpoint of b is strictly inside a."""
    inside = sum(1 for p in b if a[0] < p < a[1])
    return inside == 1 and not set(a) & set(b)


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10])
def test_noncrossing_matchings_are_stack_matchings(m):
    pts = list(range(1, m + 1))
    nc = {tuple(sorted(mt)) for mt in perfect_matchings(pts)
          if not any(crosses_geometrically(a, b) for a, b in itertools.combinations(mt, 2))}
    assert len(nc) == math.comb(m, m // 2) // (m // 2 + 1)
    stack = {matching_from_word(w, "+", "-") for w in syt_index(Shape(2, m // 2)).words}
    assert stack == nc
    assert all(is_noncrossing(mt) for mt in nc)


def test_arcs_cross_matches_geometry():
    arcs = [(a, b) for a in range(1, 7) for b in range(a + 1, 8)]
    for a, b in itertools.product(arcs, repeat=2):
        assert arcs_cross(a, b) == crosses_geometrically(a, b)


def test_m_diagram_example():
    md = m_diagram("+0+-0-")
    assert md.upper == ((1, 2), (3, 5))
    assert md.lower == ((2, 4), (5, 6))
    assert is_noncrossing(md.upper) and is_noncrossing(md.lower)


def test_matching_errors():
    with pytest.raises(YamanouchiViolation):
        matching_from_word("-+", "+", "-")
    with pytest.raises(Unbalanced):
        matching_from_word("++-", "+", "-")


def brute_nesting(arcs):
    return sum(1 for a in arcs for b in arcs if b[0] < a[0] and a[1] < b[1])


def test_nesting_number_counts_containments():
    arcs = ((1, 8), (2, 3), (4, 7), (5, 6))
    assert nesting_number(arcs) == brute_nesting(arcs) == 4
    assert contains((1, 8), (2, 3)) and not contains((2, 3), (1, 8))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rank_formulas_equal_bfs_rank(n):
    shape = Shape(3, n)
    p = poset(shape)
    for k, w in enumerate(syt_index(shape).words):
        md = m_diagram(w)
        assert rank_formula_m(md) == p.rank[k]
        assert rank_formula_band(band_from_profile(w), w) == p.rank[k]


@pytest.mark.parametrize("n", range(1, 7))
def test_sl2_rank_is_nesting_number(n):
    shape = Shape(2, n)
    p = poset(shape)
    for k, w in enumerate(syt_index(shape).words):
        assert nesting_number(matching_from_word(w, "+", "-")) == p.rank[k]


def test_depth_profile_and_band():
    w = "++++-0---"
    assert depth_profile(w) == [0, 1, 2, 3, 4, 3, 3, 2, 1, 0]
    band = band_from_profile(w)
    assert band.anchored
    assert band.arcs == ((1, 9), (2, 8), (3, 7), (4, 5))
    assert dot_depth(band, w) == 3
    assert rank_formula_band(band, w) == 5


def test_profile_order():
    assert profile_leq([0, 1, 0], [0, 1, 0])
    assert not profile_lt([0, 1, 0], [0, 1, 0])
    assert profile_lt([0, 1, 1, 0], [0, 1, 2, 0])
    assert not profile_leq([0, 1], [0, 1, 0])


def test_shadow_levels():
    prof = depth_profile("++-+--")
    assert prof == [0, 1, 2, 1, 2, 1, 0]
    assert shadow_level(prof, 1) == [(1, 6)]
    assert shadow_level(prof, 2) == [(2, 3), (4, 5)]
    assert set(shadow_from_profile(prof)) == {1, 2}


def test_json_round_trip():
    arcs = ((1, 4), (2, 3))
    assert matching_from_json(matching_to_json(arcs)) == arcs
    assert m_diagram("+0-").to_json() == {"word": "+0-", "upper": [[1, 2]], "lower": [[2, 3]]}


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.sampled_from(syt_index(Shape(3, n)).words)))
def test_crossings_bounded_by_arc_pairs(word):
    md = m_diagram(word)
    n = len(word) // 3
    assert 0 <= crossing_number(md) <= n * n
    # every crossing pair shares no endpoint
    for a in md.upper:
        for b in md.lower:
            if arcs_cross(a, b):
                assert not set(a) & set(b)


def test_witness_pair_shadows():
    from weblab.orders import WITNESS_TILDE, WITNESS_W
    from weblab.tableaux import StandardTableau, boundary_word

    low = depth_profile(boundary_word(StandardTableau(WITNESS_TILDE)))
    high = depth_profile(boundary_word(StandardTableau(WITNESS_W)))
    assert shadow_level(low, 3) == [(3, 13), (14, 16)] and shadow_level(low, 6) == []
    assert shadow_level(high, 3) == [(3, 16)] and shadow_level(high, 6) == [(9, 10)]
