import json

import pytest

from webgraph_oracle import canonical_form, drawn_web
from weblab.errors import InvalidEmbedding
from weblab.matchdiag import band_from_profile, depth_profile
from weblab.skein import web_from_matching, web_from_word
from weblab.tableaux import Shape, poset, syt_index
from weblab.verify import doubled_leg_web, nine_point_web
from weblab.webgraph import (
    SL2,
    SL3,
    PlaneWeb,
    band_arcs,
    boundary_profile,
    boundary_word_of_web,
    excluded_faces,
    faces,
    from_coordinates,
    is_reduced,
    web_rank,
    word_from_profile,
)

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_construction_matches_semicircle_drawing(n):
    for w in syt_index(Shape(3, n)).words:
        assert canonical_form(web_from_word(w)) == canonical_form(drawn_web(w)), w


def test_canonical_form_sees_rotation_changes():
    w = web_from_word("+0+-0-")
    v = w.internal_vertices[0]
    other = w.copy()
    r = other.rot[v]
    other.rot[v] = [r[0], r[2], r[1]]
    assert canonical_form(w) != canonical_form(other)


def test_example_web_size():
    w = web_from_word("+0+-0-")
    assert w.m == 6
    # two zero-point sinks plus the source/sink pair of the single crossing
    assert len(w.internal_vertices) == 4
    assert len(w.vertices) == 10
    assert boundary_word_of_web(w) == "+0+-0-"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dual_bfs_profile_matches_prefix_sums(n):
    for word in syt_index(Shape(3, n)).words:
        w = web_from_word(word)
        fd = faces(w)
        assert boundary_profile(w, fd) == depth_profile(word)
        band = band_arcs(w, fd)
        assert band.anchored
        assert band.arcs == band_from_profile(word).arcs
        assert is_reduced(w)


def test_euler_characteristic_of_faces():
    for word in ("+0-", "+0+-0-", "++00--"):
        w = web_from_word(word)
        fd = faces(w)
        v = len(w.vertices) + 1
        e = len(w.dvert) // 2 + w.m + 1
        assert v - e + len(fd.cycles) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_web_rank_offset_one_matches_poset(n):
    shape = Shape(3, n)
    p = poset(shape)
    for k, word in enumerate(syt_index(shape).words):
        assert web_rank(web_from_word(word)) == p.rank[k]


def test_nine_point_web():
    w = nine_point_web()
    fd = faces(w)
    assert boundary_word_of_web(w, fd) == "++++-0---"
    assert band_arcs(w, fd).arcs == ((1, 9), (2, 8), (3, 7), (4, 5))
    # raw depth version of the face formula
    assert web_rank(w, offset=0) == 16
    assert excluded_faces(w, fd)


def test_doubled_leg_web_is_not_reduced():
    w = doubled_leg_web()
    assert w.m == 3
    assert not is_reduced(w)
    assert boundary_word_of_web(w) == "+0-"


def test_word_from_profile():
    assert word_from_profile([0, 1, 1, 0]) == "+0-"
    with pytest.raises(InvalidEmbedding):
        word_from_profile([0, 2, 0])


@pytest.mark.parametrize("word", ["+0+-0-", "++0-0-", "+0+0+0---", "++--", "+-+-"])
def test_json_round_trip(word):
    w = web_from_word(word)
    data = w.to_json()
    back = PlaneWeb.from_json(json.loads(json.dumps(data)))
    assert canonical_form(back) == canonical_form(w)
    assert back.to_json() == data


def test_from_json_rejects_broken_rotation():
    data = web_from_word("+0-").to_json()
    data["darts"][0]["twin"] = data["darts"][0]["id"]
    with pytest.raises(InvalidEmbedding):
        PlaneWeb.from_json(data)


def test_validate_rejects_mixed_vertex():
    w = PlaneWeb(SL3)
    b = [w.add_boundary_vertex() for _ in range(3)]
    v = w.add_vertex()
    darts = []
    for k, x in enumerate(b):
        du, dv = w.add_edge(x, v) if k else w.add_edge(v, x)
        w.set_rotation(x, [du if k else dv])
        darts.append(dv if k else du)
    w.set_rotation(v, darts)
    with pytest.raises(InvalidEmbedding):
        w.validate()


def test_sl2_web_profile():
    w = web_from_matching(((1, 4), (2, 3)), 4)
    assert w.kind == SL2
    assert boundary_word_of_web(w) == "++--"
    assert band_arcs(w).arcs == ((1, 4), (2, 3))


def test_floating_component_blocks_band():
    pts = {"b1": (1, 0), "b2": (2, 0), "b3": (3, 0), "c": (2, 0.5),
           "p": (2, 2), "q": (2, 3)}
    edges = [("b1", "c"), ("b2", "c"), ("b3", "c"),
             ("p", "q", [(1.5, 2.5)]), ("p", "q", [(2, 2.5)]), ("p", "q", [(2.5, 2.5)])]
    w = from_coordinates(SL3, pts, edges)
    assert len(w.floating_components()) == 1
    fd = faces(w)
    assert fd.profile == [0, 1, 1, 0]
    with pytest.raises(InvalidEmbedding):
        band_arcs(w, fd)


def test_dot_output_mentions_every_edge():
    w = web_from_word("+0-")
    dot = w.to_dot()
    assert dot.startswith("digraph web")
    assert dot.count("->") == len(w.edges)
