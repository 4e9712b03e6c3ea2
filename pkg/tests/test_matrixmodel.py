import math

import numpy as np
import pytest

from freespec.brown import brown_sum_nilpotents
from freespec.mat2 import Mat2
from freespec.matrixmodel import (EmpiricalSpectrum, ModelConfig, arcsine_ks, embed_pair,
                                  empirical_brown, empirical_radial_cdf,
                                  empirical_singular_values, haar_unitary,
                                  log_abs_det_normalized, log_determinant_potential,
                                  shift_invariance_hausdorff, trace_word_estimates)
from freespec.measures import sup_distance

X = [[0, 1], [1, 0]]
E12 = [[0, 1], [0, 0]]


def test_config_validation():
    with pytest.raises(ValueError):
        ModelConfig(N=1)
    with pytest.raises(ValueError):
        ModelConfig(trials=0)


def test_haar_is_unitary(rng):
    for n in (1, 5, 64):
        U = haar_unitary(n, rng)
        assert np.max(np.abs(U.conj().T @ U - np.eye(n))) < 1e-12


def test_haar_phase_is_uniform(rng):
    z = np.array([haar_unitary(1, rng)[0, 0] for _ in range(10000)])
    assert abs(z.mean()) < 0.05


def test_haar_trace_second_moment(rng):
    vals = [abs(np.trace(haar_unitary(64, rng))) ** 2 for _ in range(1000)]
    assert np.mean(vals) == pytest.approx(1.0, abs=0.15)


def test_haar_left_invariance():
    # rows of W U have the same law as rows of U; compare |U_11|^2 statistics
    rng = np.random.default_rng(4)
    W = haar_unitary(8, np.random.default_rng(0))
    a = [abs(haar_unitary(8, rng)[0, 0]) ** 2 for _ in range(3000)]
    b = [abs((W @ haar_unitary(8, rng))[0, 0]) ** 2 for _ in range(3000)]
    assert np.mean(a) == pytest.approx(1 / 8, abs=0.01)
    assert np.mean(b) == pytest.approx(1 / 8, abs=0.01)


def test_embedding_preserves_spectrum_and_norm(rng):
    A, B = Mat2([[1, 2], [0, 3]]), Mat2([[0, 1], [2, 0]])
    A_N, B_N = embed_pair(A, B, 8, rng)
    ev = np.sort_complex(np.linalg.eigvals(A_N))
    assert np.allclose(ev, np.sort_complex(np.repeat([1, 3], 8)), atol=1e-10)
    assert np.linalg.norm(B_N, 2) == pytest.approx(B.opnorm, abs=1e-12)


def test_mixed_trace_factorizes():
    A, B = np.array([[1, 2], [0, 3]]), np.array([[2, 0], [1, -1]])
    mean, se = trace_word_estimates([[(1, A), (2, B)]], ModelConfig(N=64, trials=32, seed=2))
    target = (np.trace(A) / 2) * (np.trace(B) / 2)
    assert abs(mean[0] - target) <= 3 * np.abs(se[0]) * math.sqrt(2)


def test_reproducible_and_thread_independent(monkeypatch):
    cfg = ModelConfig(N=16, trials=3, seed=42)
    a = empirical_brown(X, E12, "sum", cfg)
    monkeypatch.setenv("FREESPEC_THREADS", "1")
    b = empirical_brown(X, E12, "sum", cfg)
    assert np.array_equal(a.samples, b.samples)
    assert a.samples.size == 2 * 16 * 3
    assert list(a.trial[:32]) == [0] * 32


def test_haar_product_lies_on_circle():
    cloud = empirical_brown(X, X, "product", ModelConfig(N=512, trials=1, seed=1))
    inside = np.mean((cloud.moduli >= 0.9) & (cloud.moduli <= 1.1))
    assert inside >= 0.99


def test_squaring_haar_unitary_stays_on_circle():
    cloud = empirical_brown(X, X, "product", ModelConfig(N=128, trials=1, seed=2))
    sq = np.abs(cloud.samples ** 2)
    assert np.max(np.abs(sq - 1)) < 1e-8


def test_empirical_radial_cdf_cases():
    circle = EmpiricalSpectrum(np.tile([1, 1j, -1, -1j], 12).astype(complex), np.zeros(48), 24, 1)
    nu = empirical_radial_cdf(circle)
    assert nu.cdf(np.array([0.999, 1.0])) == pytest.approx([0.0, 1.0])
    nilpotent = empirical_brown(E12, np.zeros((2, 2)), "sum", ModelConfig(N=16, trials=1))
    assert empirical_radial_cdf(nilpotent).atom_at_zero == 1.0


def test_nilpotent_sum_radial_law():
    cloud = empirical_brown(E12, E12, "sum", ModelConfig(N=512, trials=2, seed=5))
    emp = empirical_radial_cdf(cloud)
    s = np.linspace(0, 0.75, 400)
    assert sup_distance(emp, brown_sum_nilpotents(1, 1).cdf, s) < 0.03


def test_log_potential_haar():
    est = log_determinant_potential(X, X, "product", 2.0, ModelConfig(N=512, trials=1, seed=0))
    assert est == pytest.approx(math.log(2), abs=0.01)


def test_log_potential_at_zero_is_determinant():
    A, B = [[0, 2], [1, 0]], [[1, 1], [0, 3]]
    est = log_determinant_potential(A, B, "product", 0.0, ModelConfig(N=32, trials=2, seed=0))
    assert est == pytest.approx(0.5 * math.log(2) + 0.5 * math.log(3), abs=1e-10)


def test_log_potential_nilpotent_sum_at_one():
    est = log_determinant_potential(E12, E12, "sum", 1.0, ModelConfig(N=512, trials=1, seed=0))
    assert est == pytest.approx(0.0, abs=0.01)


def test_singular_matrix_floor():
    assert log_abs_det_normalized(np.zeros((4, 4))) == pytest.approx(math.log(1e-14))


def test_standard_error_shrinks_with_trials():
    words = [[(1, X), (2, [[1, 2], [3, 4]])] * 2]
    _, se_few = trace_word_estimates(words, ModelConfig(N=4, trials=16, seed=1))
    _, se_many = trace_word_estimates(words, ModelConfig(N=4, trials=144, seed=1))
    ratio = abs(se_few[0]) / abs(se_many[0])
    assert 2 < ratio < 4.5  # sqrt(144 / 16) = 3


def test_singular_values_count():
    sv = empirical_singular_values(X, E12, "product", ModelConfig(N=8, trials=2, seed=0))
    assert sv.samples.size == 32 and np.all(sv.samples >= 0)


def test_q_model_arcsine():
    assert arcsine_ks(N=256, seed=1) < 0.05


def test_shift_invariance_of_e12_products():
    d = shift_invariance_hausdorff([[1, 2], [3, 4]], 1.0, ModelConfig(N=512, trials=1, seed=0))
    assert d < 0.1
