import numpy as np
import pytest
from hypothesis import given, strategies as st

from freespec.errors import ResourceError
from freespec.mat2 import Mat2
from freespec.matrixmodel import ModelConfig, trace_word_estimates
from freespec.moments import (FreeTraceEngine, FreeWord, MATRIX_OPS, classify_support,
                              is_r_diagonal_product, is_r_diagonal_sum, moment_sequence,
                              r_diagonal_defect, trace_word)

W1 = np.diag([1, -1])
E12 = [[0, 1], [0, 0]]
X = [[0, 1], [1, 0]]


def random_mat(rng, centered=False):
    m = Mat2(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    return m.centered() if centered else m


def test_alternating_centered_vanishes(rng):
    for _ in range(100):
        n = rng.integers(2, 9)
        letters = [(1 + k % 2, random_mat(rng, centered=True)) for k in range(n)]
        assert abs(trace_word(letters)) < 1e-12


def test_abab_with_traceless_first_factor():
    # tau(ABAB) = tau(A^2) tau(B)^2 when tau(A) = 0
    assert trace_word([(1, W1), (2, np.diag([2, 0]))] * 2) == pytest.approx(1.0)


def test_fourth_moment_of_sum(rng):
    for _ in range(10):
        A, B = random_mat(rng, True), random_mat(rng, True)
        got = moment_sequence("sum", A, B, 4)[3]
        want = A.tau_power(4) + B.tau_power(4) + 4 * A.tau_power(2) * B.tau_power(2)
        assert got == pytest.approx(want, abs=1e-12)


def test_normalized_alternating_moment(rng):
    one = Mat2.identity()
    for _ in range(10):
        A1, B1 = random_mat(rng, True), random_mat(rng, True)
        A, B = one + A1, one + B1
        got = moment_sequence("product", A, B, 2)[1]
        assert got == pytest.approx(1 + A1.tau_power(2) + B1.tau_power(2), abs=1e-12)


def test_cubic_moment_coefficient(rng):
    # the cross term is 3 tau(A1^2) tau(B1^2); 2P * 2Q gives 10
    one = Mat2.identity()
    for _ in range(10):
        A1, B1 = random_mat(rng, True), random_mat(rng, True)
        a, b = A1.tau_power(2), B1.tau_power(2)
        got = moment_sequence("product", one + A1, one + B1, 3)[2]
        assert got == pytest.approx(1 + 3 * (a + b) + 3 * a * b, abs=1e-11)
    P, Q = np.diag([2, 0]), np.diag([2, 0])
    assert moment_sequence("product", P, Q, 3)[2] == pytest.approx(10.0)


def test_haar_product_moments():
    assert np.allclose(moment_sequence("product", X, X, 4), 0)


def test_nilpotent_times_anything():
    B = [[1, 2], [3, 4]]
    seq = moment_sequence("product", E12, B, 2)
    assert seq[0] == pytest.approx(0) and seq[1] == pytest.approx(0)


def test_fusion_invariance(rng):
    for _ in range(20):
        w = FreeWord.of(*[(rng.integers(1, 3), random_mat(rng)) for _ in range(6)])
        assert trace_word(w) == pytest.approx(trace_word(w.fused()), rel=1e-12, abs=1e-12)


def test_cyclic_invariance(rng):
    for _ in range(20):
        letters = [(1 + k % 2, random_mat(rng)) for k in range(int(rng.integers(2, 9)))]
        base = trace_word(letters)
        for r in range(1, len(letters)):
            assert trace_word(letters[r:] + letters[:r]) == pytest.approx(base, rel=1e-10, abs=1e-10)


def test_adjoint_conjugates_trace(rng):
    w = FreeWord.of(*[(1 + k % 2, random_mat(rng)) for k in range(5)])
    assert trace_word(w.adjoint()) == pytest.approx(np.conj(trace_word(w)))


def test_length_bound():
    engine = FreeTraceEngine({1: MATRIX_OPS, 2: MATRIX_OPS}, max_length=4)
    W = Mat2(X)
    with pytest.raises(ResourceError):
        trace_word([(1, W), (2, W)] * 3, engine)
    with pytest.raises(ResourceError):
        moment_sequence("sum", X, X, 9)


def test_matches_matrix_model():
    rng = np.random.default_rng(99)
    words = []
    for _ in range(20):
        n = int(rng.integers(1, 7))
        words.append([(1 + (k % 2), random_mat(rng).a) for k in range(n)])
    mean, se = trace_word_estimates(words, ModelConfig(N=512, trials=4, seed=3))
    exact = np.array([trace_word(w) for w in words])
    dev = np.abs(mean - exact)
    assert np.all(dev <= 3 * np.abs(se) * np.sqrt(2) + 1e-9)


@pytest.mark.parametrize("A,B,expected", [
    (X, [[0, 2], [3, 0]], True),
    (np.eye(2), X, False),
    (W1, E12, True),
    (np.zeros((2, 2)), np.eye(2), True),
])
def test_product_predicate(A, B, expected):
    assert is_r_diagonal_product(A, B) is expected


@pytest.mark.parametrize("A,B,expected", [
    (np.zeros((2, 2)), np.zeros((2, 2)), True),
    (E12, E12, False),
    (np.eye(2), -np.eye(2), True),
    (np.eye(2), -2 * np.eye(2), False),
])
def test_sum_predicate(A, B, expected):
    assert is_r_diagonal_sum(A, B) is expected


def test_defect_oracle_agrees_on_examples():
    assert r_diagonal_defect("product", X, [[0, 2], [3, 0]]) < 1e-12
    assert r_diagonal_defect("product", np.eye(2) + np.array(E12), X) > 1e-3
    assert r_diagonal_defect("sum", np.eye(2), -np.eye(2)) < 1e-12
    assert r_diagonal_defect("sum", E12, E12) > 1e-3


def test_classify_examples():
    assert classify_support("product", 2 * np.eye(2), 3 * np.eye(2))["classification"] == "scalar"
    one_e = np.eye(2) + np.array(E12)
    res = classify_support("product", one_e, one_e)
    assert res["classification"] == "multi-point-support"
    res = classify_support("sum", W1, np.diag([1j, -1j]))
    assert res["classification"] == "multi-point-support"
    assert classify_support("sum", np.eye(2), X)["classification"] == "matrix-case"


@given(st.integers(-2, 2), st.integers(-2, 2))
def test_scalar_products_never_multi_point(a, b):
    res = classify_support("product", a * np.eye(2), b * np.eye(2))
    assert res["classification"] == "scalar"


def test_certificate_witnesses_moment_gap():
    res = classify_support("product", W1, np.diag([2, 1]))
    wit = res["certificates"]["witness"]
    assert wit is not None and wit["order"] == 2
