import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from freespec.errors import ResourceError
from freespec.freeprod import (ONE, SymbolicMat2, WordExpr, decompose, evaluate_matrix_model,
                               h, s, symbolic_trace, trace_expr, u, us, v, v1_conjugations, vs)

small = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
mat = st.lists(small, min_size=4, max_size=4).map(lambda e: np.reshape(e, (2, 2)))


def test_normal_form_relations():
    assert (s * s).equals(ONE - h * h)
    assert (u * us).equals(ONE) and (vs * v).equals(ONE)
    assert (h * s * s * h).equals(h * h - h * h * h * h)
    assert str(h * s * u - 3 * (us * h)) in ("h sqrt(1-h^2) u - 3 u* h", "-3 u* h + h sqrt(1-h^2) u")


def test_adjoint_reverses_and_conjugates():
    x = (2 + 1j) * (h * vs * s * u)
    assert x.adjoint().equals((2 - 1j) * (us * s * v * h))


def test_identity_decomposes_to_identity():
    assert decompose(np.eye(2)).equals(SymbolicMat2.identity())


def test_diagonal_case():
    a, si = 2.0, -1.5
    D = decompose(np.diag([a, si]))
    assert D[0][1].equals((a - si) * (h * s * u))
    assert D[0][0].equals(si * ONE + (a - si) * (h * h))


def test_upper_triangular_case():
    a, be = 1.0, 2.5j
    D = decompose([[a, be], [0, a]])
    assert D[1][0].equals(be * (us * s * vs * s))


def test_v1_conjugations_match_decompose():
    e11, e12 = v1_conjugations()
    assert e11[0][0].equals(h * h)
    assert e11.equals(decompose([[1, 0], [0, 0]]))
    assert e12.equals(decompose([[0, 1], [0, 0]]))
    assert e11.adjoint().equals(e11)
    assert (e11 @ e11).equals(e11)


@given(mat, mat)
def test_homomorphism(B1, B2):
    lhs = decompose(B1) @ decompose(B2)
    rhs = decompose(B1 @ B2)
    assert lhs.equals(rhs, tol=1e-9)
    diff = lhs - rhs
    assert abs(symbolic_trace(diff.adjoint() @ diff)) < 1e-10


@given(mat)
def test_adjoint_compatible(B):
    assert decompose(B.conj().T).equals(decompose(B).adjoint(), tol=1e-12)


@given(mat)
def test_trace_preserved(B):
    assert symbolic_trace(decompose(B)) == pytest.approx(np.trace(B) / 2, abs=1e-12)


def test_power_traces(rng):
    for _ in range(5):
        B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        D = decompose(B)
        for k in range(1, 5):
            exact = np.trace(np.linalg.matrix_power(B, k)) / 2
            assert symbolic_trace(D ** k) == pytest.approx(exact, abs=1e-10)


def test_trace_examples():
    assert symbolic_trace(decompose(np.diag([1, -1]))) == pytest.approx(0)
    assert symbolic_trace(decompose(np.diag([1, 0])) ** 2) == pytest.approx(0.5)
    assert trace_expr(h * h) == pytest.approx(0.5)


def test_h_squared_has_arcsine_moments():
    # C(2k, k) / 4^k
    for k in range(1, 5):
        hk = WordExpr.word(("h", 2 * k, 0))
        assert trace_expr(hk) == pytest.approx(math.comb(2 * k, k) / 4 ** k, abs=1e-12)


def test_long_words_raise():
    with pytest.raises(ResourceError):
        trace_expr(WordExpr.word(*[("u", 1), ("h", 1, 0)] * 9))


def test_matrix_model_identity_is_exact():
    M = evaluate_matrix_model(decompose(np.eye(2)), 16, seed=0)
    assert np.array_equal(M, np.eye(32))


def test_matrix_model_projection_square():
    vals = []
    for seed in range(4):
        M = evaluate_matrix_model(decompose(np.diag([2, 0])), 256, seed=seed)
        vals.append(np.trace(M @ M).real / M.shape[0])
    se = np.std(vals, ddof=1) / 2
    assert abs(np.mean(vals) - 2.0) <= max(3 * se, 1e-9)


def test_offdiagonal_second_moment():
    e11, _ = v1_conjugations()
    N = 1024
    M = evaluate_matrix_model(e11, N, seed=1)
    sv = np.linalg.svd(M[:N, N:], compute_uv=False)
    assert np.mean(sv ** 2) == pytest.approx(1 / 8, abs=0.01)
