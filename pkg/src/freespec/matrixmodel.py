"""Random-matrix model of the two free copies of ``M_2``.

``A`` in the first copy becomes ``A_N = U (A kron I_N) U*`` and ``B`` in the
second becomes ``B_N = V (B kron I_N) V*`` with ``U, V`` independent Haar
unitaries of size ``2N``.  As ``N`` grows the pair is asymptotically free, so
eigenvalue clouds, traces and log-determinants of ``A_N B_N`` and
``A_N + B_N`` estimate the corresponding free-product quantities.

Trials are independent: trial ``k`` draws from
``default_rng(SeedSequence([seed, k]))`` and results are merged in trial
order, so output does not depend on the number of worker threads.
``FREESPEC_THREADS`` caps the pool.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import stats
from scipy.spatial.distance import directed_hausdorff

from .mat2 import Mat2
from .measures import RadialMeasure

SV_FLOOR = 1e-14
# square-zero blocks scatter their eigenvalues to about sqrt(eps) ~ 1e-8
ZERO_MODULUS = 1e-6


@dataclass(frozen=True)
class ModelConfig:
    """Block size ``N`` (matrices are ``2N x 2N``), trial count and seed."""

    N: int = 512
    trials: int = 16
    seed: int = 0
    what: str = "eigenvalues"

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.what not in ("eigenvalues", "singular_values", "trace_words", "log_potential"):
            raise ValueError(f"unknown quantity {self.what!r}")

    def rng(self, trial: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, trial]))


@dataclass(frozen=True)
class EmpiricalSpectrum:
    """Pooled samples with the trial each one came from."""

    samples: np.ndarray
    trial: np.ndarray
    N: int
    trials: int
    kind: str = "eigenvalues"
    extra: dict = field(default_factory=dict)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.samples)


def worker_count() -> int:
    cap = os.environ.get("FREESPEC_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def run_trials(fn: Callable[[np.random.Generator], object], cfg: ModelConfig) -> list:
    """Evaluate ``fn(rng)`` once per trial, in trial order."""
    workers = min(worker_count(), cfg.trials)
    rngs = [cfg.rng(k) for k in range(cfg.trials)]
    if workers == 1:
        return [fn(r) for r in rngs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, rngs))


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary.

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` moved
    into ``Q`` so the law does not depend on the QR sign convention.
    """
    if n < 1:
        raise ValueError("n must be positive")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))[None, :]


def _conjugate(M: np.ndarray, U: np.ndarray) -> np.ndarray:
    return U @ M @ U.conj().T


def embed(A, N: int, U: np.ndarray) -> np.ndarray:
    return _conjugate(np.kron(np.asarray(Mat2.coerce(A)), np.eye(N)), U)


def embed_pair(A, B, N: int, rng: np.random.Generator, return_frames: bool = False):
    """``(A_N, B_N)``, optionally with the two Haar frames ``(U, V)``."""
    U, V = haar_unitary(2 * N, rng), haar_unitary(2 * N, rng)
    pair = (embed(A, N, U), embed(B, N, V))
    return (*pair, U, V) if return_frames else pair


def combine(A_N: np.ndarray, B_N: np.ndarray, kind: str) -> np.ndarray:
    if kind == "product":
        return A_N @ B_N
    if kind == "sum":
        return A_N + B_N
    raise ValueError(f"kind must be 'product' or 'sum', got {kind!r}")


def empirical_brown(A, B, kind: str, cfg: ModelConfig) -> EmpiricalSpectrum:
    """Eigenvalues of ``A_N B_N`` or ``A_N + B_N``, pooled over trials."""
    def one(rng):
        A_N, B_N = embed_pair(A, B, cfg.N, rng)
        return np.linalg.eigvals(combine(A_N, B_N, kind))
    return _pool(run_trials(one, cfg), cfg, "eigenvalues")


def empirical_singular_values(A, B, kind: str, cfg: ModelConfig) -> EmpiricalSpectrum:
    def one(rng):
        A_N, B_N = embed_pair(A, B, cfg.N, rng)
        return np.linalg.svd(combine(A_N, B_N, kind), compute_uv=False)
    return _pool(run_trials(one, cfg), cfg, "singular_values")


def _pool(chunks: Sequence[np.ndarray], cfg: ModelConfig, kind: str) -> EmpiricalSpectrum:
    samples = np.concatenate(chunks)
    trial = np.concatenate([np.full(len(c), k) for k, c in enumerate(chunks)])
    return EmpiricalSpectrum(samples, trial, cfg.N, cfg.trials, kind)


def empirical_radial_cdf(spec: EmpiricalSpectrum) -> RadialMeasure:
    """Right-continuous step CDF of the sample moduli."""
    r = np.sort(np.abs(np.asarray(spec.samples)))
    if r.size == 0:
        raise ValueError("no samples")
    n = r.size
    zero = r < ZERO_MODULUS
    atom = float(np.count_nonzero(zero)) / n
    r = r[~zero]
    if r.size == 0:
        return RadialMeasure.dirac0()
    knots = np.unique(r)
    # F at knot k counts every sample <= knot
    counts = np.searchsorted(r, knots, side="right") + np.count_nonzero(zero)
    F = counts / n
    F[-1] = 1.0
    return RadialMeasure(atom, float(knots[0]), float(knots[-1]), knots, F, interp="step")


def log_abs_det_normalized(X: np.ndarray) -> float:
    """``(1/n) sum log sigma_i(X)`` with singular values floored at ``SV_FLOOR``."""
    n = X.shape[0]
    sign, logdet = np.linalg.slogdet(X)
    if sign != 0 and np.isfinite(logdet) and logdet / n > np.log(SV_FLOOR) + 5:
        return float(logdet / n)
    sv = np.linalg.svd(X, compute_uv=False)
    return float(np.mean(np.log(np.maximum(sv, SV_FLOOR))))


def log_determinant_potential(A, B, kind: str, lam: complex | Sequence[complex],
                              cfg: ModelConfig, return_stderr: bool = False):
    """Matrix-model estimate of ``log Delta(X - lam)``.

    ``lam`` may be a sequence; every value is evaluated on the same samples.
    LU-based ``slogdet`` is used unless the matrix is numerically singular,
    in which case floored singular values are used.
    """
    lams = np.atleast_1d(np.asarray(lam, dtype=complex))

    def one(rng):
        A_N, B_N = embed_pair(A, B, cfg.N, rng)
        X = combine(A_N, B_N, kind)
        eye = np.eye(X.shape[0])
        return [log_abs_det_normalized(X - l * eye) for l in lams]

    vals = np.array(run_trials(one, cfg))
    mean = vals.mean(axis=0)
    se = vals.std(axis=0, ddof=1) / np.sqrt(cfg.trials) if cfg.trials > 1 else np.zeros_like(mean)
    if np.ndim(lam) == 0:
        mean, se = float(mean[0]), float(se[0])
    return (mean, se) if return_stderr else mean


def _times_kron(X: np.ndarray, M: np.ndarray, N: int) -> np.ndarray:
    # X @ (M kron I_N) with block arithmetic instead of a dense product
    left, right = X[:, :N], X[:, N:]
    return np.hstack([left * M[0, 0] + right * M[1, 0], left * M[0, 1] + right * M[1, 1]])


def trace_word_estimates(words: Sequence[Sequence[tuple]], cfg: ModelConfig):
    """Monte Carlo ``tau`` of words in the two copies.

    Each word is a sequence of ``(copy, matrix)`` letters; one Haar pair per
    trial is shared by all words.  Traces are unitarily invariant, so words
    are evaluated in the first copy's frame, where only the relative frame
    ``W = U* V`` is dense.  Returns ``(means, standard_errors)``.
    """
    N = cfg.N
    mats = [[(copy, np.asarray(Mat2.coerce(m))) for copy, m in w] for w in words]

    def one(rng):
        U, V = haar_unitary(2 * N, rng), haar_unitary(2 * N, rng)
        W = U.conj().T @ V
        # W (m kron I) W* = sum_ij m_ij W_i W_j*, with W_i the column halves
        halves = (W[:, :N], W[:, N:])
        G = [[wi @ wj.conj().T for wj in halves] for wi in halves]

        def second(m):
            return m[0, 0] * G[0][0] + m[0, 1] * G[0][1] + m[1, 0] * G[1][0] + m[1, 1] * G[1][1]

        out = []
        for w in mats:
            prod = None
            for copy, m in w:
                if copy == 1:
                    prod = np.kron(m, np.eye(N)) if prod is None else _times_kron(prod, m, N)
                else:
                    prod = second(m) if prod is None else prod @ second(m)
            out.append(np.trace(prod) / (2 * N) if prod is not None else 1.0)
        return out

    vals = np.array(run_trials(one, cfg), dtype=complex)
    mean = vals.mean(axis=0)
    se = (vals.std(axis=0, ddof=1) / np.sqrt(cfg.trials) if cfg.trials > 1
          else np.zeros(len(words)))
    return mean, se


def copy1_blocks(X: np.ndarray, U: np.ndarray, N: int) -> list[list[np.ndarray]]:
    """Blocks ``x_ij`` of ``X`` relative to the first copy's matrix units.

    The range of ``E_jj`` is spanned by the ``j``-th group of ``N`` columns of
    the first frame ``U``; ``x_ij = U_i* X U_j``.
    """
    cols = [U[:, :N], U[:, N:]]
    return [[ci.conj().T @ X @ cj for cj in cols] for ci in cols]


def q_model_corner(N: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Corner ``P Q P`` and off-diagonal block of ``Q = F11`` seen from the first copy.

    Returns the eigenvalues of the ``(1, 1)`` block and the singular values
    of the ``(1, 2)`` block.
    """
    Q = Mat2([[1, 0], [0, 0]])
    U, V = haar_unitary(2 * N, rng), haar_unitary(2 * N, rng)
    blocks = copy1_blocks(embed(Q, N, V), U, N)
    corner = blocks[0][0]
    ev = np.clip(np.linalg.eigvalsh((corner + corner.conj().T) / 2), 0.0, 1.0)
    sv = np.linalg.svd(blocks[0][1], compute_uv=False)
    return ev, sv


def arcsine01_cdf(t):
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    return 2 / np.pi * np.arcsin(np.sqrt(t))


def arcsine_ks(N: int = 1024, seed: int = 0) -> float:
    """Kolmogorov-Smirnov distance between the ``P Q P`` corner spectrum and arcsine01."""
    ev, _ = q_model_corner(N, np.random.default_rng(np.random.SeedSequence([seed, 0])))
    return float(stats.kstest(ev, arcsine01_cdf).statistic)


def offdiagonal_second_moment(N: int = 1024, seed: int = 0) -> float:
    """``tau_P`` of ``|x_12|^2`` for ``Q``: the matrix-model value of ``tau(h^2 (1 - h^2))``."""
    _, sv = q_model_corner(N, np.random.default_rng(np.random.SeedSequence([seed, 0])))
    return float(np.mean(sv ** 2))


def shift_invariance_hausdorff(B, lam: complex, cfg: ModelConfig) -> float:
    """Hausdorff distance between eigenvalue clouds of ``E12_N B_N`` and ``E12_N (lam + B_N)``.

    Both clouds use the same Haar pair; the largest distance over trials is
    returned.  The two spectra agree in the free product, so this should be
    small.
    """
    E12 = Mat2([[0, 1], [0, 0]])

    def one(rng):
        A_N, B_N = embed_pair(E12, B, cfg.N, rng)
        e1 = np.linalg.eigvals(A_N @ B_N)
        e2 = np.linalg.eigvals(A_N @ (B_N + lam * np.eye(B_N.shape[0])))
        p1, p2 = np.column_stack([e1.real, e1.imag]), np.column_stack([e2.real, e2.imag])
        return max(directed_hausdorff(p1, p2)[0], directed_hausdorff(p2, p1)[0])

    return float(max(run_trials(one, cfg)))
