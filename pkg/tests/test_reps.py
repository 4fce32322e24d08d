import random
from fractions import Fraction

import numpy as np
import pytest

from weblab.errors import PathInconsistent, SolveFailed
from weblab.orders import SHADOW, TABLEAU, relation
from weblab.reps import (
    act_on_vector,
    check_unitriangular,
    polytabloid,
    solve_exact,
    specht_action_matrix,
    specht_basis,
    tabloid_of_rows,
    transition_matrix,
    verify_equivariance,
)
from weblab.tableaux import Shape, StandardTableau, syt_index


def test_polytabloid_of_small_tableau():
    t = StandardTableau.parse("1,3/2,4")
    vec = polytabloid(t)
    # column stabilizer has order 4
    assert len(vec) == 4
    assert vec[tabloid_of_rows(t.rows)] == 1
    assert sorted(vec.values()) == [-1, -1, 1, 1]


def test_action_on_tabloids():
    vec = {(0, 1, 0, 1): 1}
    assert act_on_vector(vec, 1) == {(1, 0, 0, 1): 1}


@pytest.mark.parametrize("shape", [Shape(2, 2), Shape(2, 3), Shape(3, 2), Shape(3, 3)])
def test_specht_matrices_are_coxeter(shape):
    n = len(syt_index(shape))
    mats = {i: np.array(specht_action_matrix(shape, i)) for i in range(1, shape.size)}
    for i, m in mats.items():
        assert (m @ m == np.eye(n, dtype=int)).all()
        if i + 1 in mats:
            b = mats[i + 1]
            assert (m @ b @ m == b @ m @ b).all()


@pytest.mark.parametrize("shape", [Shape(2, 3), Shape(3, 2)])
def test_specht_character_matches_dimension(shape):
    """Trace of the identity is the dimension; trace of s_i is dim minus twice the -1 eigenspace."""
    n = len(specht_basis(shape).vectors)
    assert n == len(syt_index(shape))
    for i in range(1, shape.size):
        m = np.array(specht_action_matrix(shape, i))
        w = np.linalg.eigvals(m.astype(float))
        assert np.allclose(sorted(w.real), sorted(np.round(w.real)))


def test_solve_exact_against_numpy():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 6)
        while True:
            a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            if abs(np.linalg.det(np.array(a, dtype=float))) > 1e-6:
                break
        b = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(n)]
        x = solve_exact([[Fraction(v) for v in r] for r in a], [[Fraction(v) for v in r] for r in b])
        approx = np.linalg.solve(np.array(a, dtype=float), np.array(b, dtype=float))
        assert np.allclose(np.array(x, dtype=float), approx)


def test_singular_system():
    with pytest.raises(SolveFailed):
        solve_exact([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [[Fraction(1)], [Fraction(1)]])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sl3_transition_is_unitriangular_in_shadow_order(n):
    shape = Shape(3, n)
    tm = transition_matrix("sl3", shape)
    rep = check_unitriangular(tm, relation(shape, SHADOW))
    assert rep["passed"], rep["witnesses"][:3]
    assert rep["negative_entries"] == 0
    dense = tm.dense()
    assert (np.diag(dense) == 1).all()
    assert (np.tril(dense, -1) == 0).all()


@pytest.mark.parametrize("n", range(1, 6))
def test_sl2_transition_is_nonnegative_unitriangular(n):
    shape = Shape(2, n)
    tm = transition_matrix("sl2", shape)
    rep = check_unitriangular(tm, relation(shape, TABLEAU))
    assert rep["passed"] and rep["negative_entries"] == 0


@pytest.mark.parametrize("kind,shape", [("sl3", Shape(3, 2)), ("sl3", Shape(3, 3)), ("sl2", Shape(2, 4))])
def test_equivariance(kind, shape):
    assert verify_equivariance(kind, shape)["passed"]


def test_transition_matrix_3x2_values():
    tm = transition_matrix("sl3", Shape(3, 2))
    assert tm.dense().tolist() == [
        [1, 1, 0, 0, 1],
        [0, 1, 1, 1, 1],
        [0, 0, 1, 0, 1],
        [0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1],
    ]
    csv_text = tm.to_csv()
    assert csv_text.splitlines()[0].startswith("web\\specht,")
    assert tm.to_json()["matrix"] == tm.dense().tolist()


def test_kind_shape_mismatch():
    with pytest.raises(ValueError):
        transition_matrix("sl2", Shape(3, 2))


def test_path_inconsistency_is_reported(monkeypatch):
    import weblab.reps as reps
    from weblab.skein import WebCombo

    real = reps.s_action_combo

    def skewed(kind, shape, i, combo):
        out = real(kind, shape, i, combo)
        return out + WebCombo.basis(shape, 0) if i == 4 else out

    monkeypatch.setattr(reps, "s_action_combo", skewed)
    with pytest.raises(PathInconsistent):
        reps.transition_matrix("sl3", Shape(3, 2))
