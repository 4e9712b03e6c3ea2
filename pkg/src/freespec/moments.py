"""Mixed moments in a free product, R-diagonality predicates, support classification.

The trace of a word in free algebras is computed by the centering
expansion: adjacent letters from the same algebra are multiplied, the word
is closed up cyclically, and the first letter ``a`` with ``tau(a) != 0`` is
split as ``tau(a) 1 + (a - tau(a))``.  Once every letter of a word of
length at least two is centered, the trace vanishes by freeness.

The engine is generic: each algebra supplies ``mul``, ``tau``, ``center``
and a hashable ``key``.  It is used with the two matrix copies here and
with the ``h, u, v`` algebras in :mod:`freespec.freeprod`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import ResourceError
from .mat2 import Mat2

MAX_WORD_LENGTH = 24
MAX_MOMENT_ORDER = 8
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class AlgebraOps:
    """Operations the trace engine needs from one free factor."""

    mul: Callable
    tau: Callable[[object], complex]
    center: Callable
    key: Callable[[object], Hashable]


def _mat_key(x: Mat2):
    return x.a.tobytes()


MATRIX_OPS = AlgebraOps(
    mul=lambda x, y: x @ y,
    tau=lambda x: x.tau,
    center=lambda x: x.centered(),
    key=_mat_key,
)


def _laurent_mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for (m, a), (n, b) in itertools.product(x.items(), y.items()):
        out[m + n] = out.get(m + n, 0) + a * b
    return {k: c for k, c in out.items() if c != 0}


# group algebra of Z: a Haar unitary, tau(u^n) = 0 for n != 0
LAURENT_OPS = AlgebraOps(
    mul=_laurent_mul,
    tau=lambda x: complex(x.get(0, 0)),
    center=lambda x: {k: c for k, c in x.items() if k != 0},
    key=lambda x: tuple(sorted(x.items())),
)


class FreeTraceEngine:
    """Trace of words in a free product of tracial algebras.

    Parameters
    ----------
    algebras : mapping
        Algebra label to :class:`AlgebraOps`.
    max_length : int
        Longest word (after fusion) accepted before raising
        :class:`~freespec.errors.ResourceError`.

    Notes
    -----
    The memo table lives on the instance; create one engine per call
    site when independent evaluations should not share state.
    """

    def __init__(self, algebras: Mapping[Hashable, AlgebraOps],
                 max_length: int = MAX_WORD_LENGTH):
        self.algebras = dict(algebras)
        self.max_length = max_length
        self._memo: dict = {}

    def _reduce(self, word):
        out: list = []
        for lab, x, c in word:
            if out and out[-1][0] == lab:
                out[-1] = (lab, self.algebras[lab].mul(out[-1][1], x), False)
            else:
                out.append((lab, x, c))
        while len(out) > 1 and out[0][0] == out[-1][0]:
            lab = out[0][0]
            last = out.pop()
            out[0] = (lab, self.algebras[lab].mul(last[1], out[0][1]), False)
        return out

    def trace(self, word: Iterable[tuple]) -> complex:
        """``tau`` of the product of ``(label, element)`` letters."""
        return self._trace([(lab, x, False) for lab, x in word])

    def _trace(self, word) -> complex:
        w = self._reduce(word)
        if len(w) > self.max_length:
            raise ResourceError(
                f"word of length {len(w)} exceeds the bound {self.max_length}")
        if not w:
            return 1.0 + 0j
        if len(w) == 1:
            return complex(self.algebras[w[0][0]].tau(w[0][1]))
        key = tuple((lab, self.algebras[lab].key(x), c) for lab, x, c in w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        value = 0j
        for i, (lab, x, c) in enumerate(w):
            if c:
                continue
            ops = self.algebras[lab]
            t = complex(ops.tau(x))
            if t == 0:
                continue
            rest = w[:i] + w[i + 1:]
            cen = w[:i] + [(lab, ops.center(x), True)] + w[i + 1:]
            value = t * self._trace(rest) + self._trace(cen)
            break
        self._memo[key] = value
        return value


# ----------------------------------------------------------------------
# words in the two matrix copies


@dataclass(frozen=True)
class FreeWord:
    """Product of letters ``(copy, Mat2)`` with ``copy`` in ``{1, 2}``."""

    letters: tuple = ()

    @classmethod
    def of(cls, *letters) -> "FreeWord":
        return cls(tuple((int(c), Mat2.coerce(m)) for c, m in letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def adjoint(self) -> "FreeWord":
        return FreeWord(tuple((c, m.H) for c, m in reversed(self.letters)))

    def fused(self) -> "FreeWord":
        out: list = []
        for c, m in self.letters:
            if out and out[-1][0] == c:
                out[-1] = (c, out[-1][1] @ m)
            else:
                out.append((c, m))
        return FreeWord(tuple(out))

    def __len__(self):
        return len(self.letters)


def trace_word(w: FreeWord | Sequence, engine: FreeTraceEngine | None = None) -> complex:
    """Exact free-product trace of a word in the two copies of ``M_2``."""
    letters = w.letters if isinstance(w, FreeWord) else tuple(w)
    engine = engine or FreeTraceEngine({1: MATRIX_OPS, 2: MATRIX_OPS})
    return engine.trace((c, Mat2.coerce(m)) for c, m in letters)


def _expand_power(kind: str, A: Mat2, B: Mat2, k: int) -> list[FreeWord]:
    if kind == "product":
        return [FreeWord(((1, A), (2, B)) * k)]
    if kind == "sum":
        return [FreeWord(tuple((1, A) if s == 0 else (2, B) for s in choice))
                for choice in itertools.product((0, 1), repeat=k)]
    raise ValueError(f"kind must be 'product' or 'sum', got {kind!r}")


def moment_sequence(kind: str, A, B, n: int) -> list[complex]:
    """``[tau(X), ..., tau(X^n)]`` for ``X = A B`` or ``X = A + B``."""
    if n > MAX_MOMENT_ORDER:
        raise ResourceError(f"moment order {n} exceeds {MAX_MOMENT_ORDER}")
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    engine = FreeTraceEngine({1: MATRIX_OPS, 2: MATRIX_OPS})
    return [sum(trace_word(w, engine) for w in _expand_power(kind, A, B, k))
            for k in range(1, n + 1)]


# ----------------------------------------------------------------------
# R-diagonality


def is_r_diagonal_product(A, B) -> bool:
    """Trace criterion for ``A B`` to be R-diagonal.

    A vanishing factor makes ``A B = 0``, which is R-diagonal; otherwise
    both normalized traces must vanish.
    """
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    if A.is_zero or B.is_zero:
        return True
    return A.is_traceless(ZERO_TOL) and B.is_traceless(ZERO_TOL)


def is_r_diagonal_sum(A, B) -> bool:
    """``A + B`` is R-diagonal exactly when it is the zero operator.

    Elements of different copies add to zero only as opposite scalars.
    """
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    return A.is_scalar and B.is_scalar and abs(A.tau + B.tau) <= ZERO_TOL


def r_diagonal_defect(kind: str, A, B, max_length: int = 4) -> float:
    """Largest gap between the *-moments of ``X`` and of ``u X``.

    ``u`` is a Haar unitary free from both copies.  ``X`` is R-diagonal
    exactly when ``X`` and ``u X`` share their *-distribution, so a zero
    defect over all *-words up to ``max_length`` is a moment-level test
    that does not use any trace criterion.
    """
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    if kind == "product":
        X = [(1.0, ((1, A), (2, B)))]
    elif kind == "sum":
        X = [(1.0, ((1, A),)), (1.0, ((2, B),))]
    else:
        raise ValueError(f"kind must be 'product' or 'sum', got {kind!r}")
    Xs = [(c.conjugate() if isinstance(c, complex) else c,
           tuple((lab, m.H) for lab, m in reversed(w))) for c, w in X]
    U, Us = ((3, {1: 1}),), ((3, {-1: 1}),)
    engine = FreeTraceEngine({1: MATRIX_OPS, 2: MATRIX_OPS, 3: LAURENT_OPS})
    worst = 0.0
    for L in range(1, max_length + 1):
        for eps in itertools.product((0, 1), repeat=L):
            plain = [X if e == 0 else Xs for e in eps]
            rotated = [[(c, U + w) for c, w in X] if e == 0
                       else [(c, w + Us) for c, w in Xs] for e in eps]
            a = _multilinear_trace(engine, plain)
            b = _multilinear_trace(engine, rotated)
            worst = max(worst, abs(a - b))
    return worst


def _multilinear_trace(engine: FreeTraceEngine, factors) -> complex:
    total = 0j
    for terms in itertools.product(*factors):
        coef = np.prod([c for c, _ in terms])
        if coef == 0:
            continue
        total += coef * engine.trace(itertools.chain.from_iterable(w for _, w in terms))
    return total


# ----------------------------------------------------------------------
# classification of the Brown support


def _single_point_certificate(moments: Sequence[complex], tol: float = 1e-9):
    # support {lam} forces tau(X^n) = lam^n
    lam = moments[0]
    for n, m in enumerate(moments, start=1):
        if abs(m - lam ** n) > tol * max(1.0, abs(lam) ** n):
            return {"order": n, "moment": m, "single_point_value": lam ** n}
    return None


def _encode(z: complex):
    z = complex(z)
    return [z.real, z.imag]


def classify_support(kind: str, A, B) -> dict:
    """Decide whether the Brown measure of ``A B`` or ``A + B`` is concentrated.

    Returns
    -------
    dict
        ``classification`` is ``scalar`` (``X`` is a multiple of 1),
        ``matrix-case`` (one factor is scalar, so ``X`` lives in a single
        copy and an eigenspace is hyperinvariant) or ``multi-point-support``
        (the support has more than two points).  ``reason`` names the
        branch taken and ``certificates`` holds the moments that witness it.
    """
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    if kind not in ("product", "sum"):
        raise ValueError(f"kind must be 'product' or 'sum', got {kind!r}")
    if kind == "product":
        return _classify_product(A, B)
    return _classify_sum(A, B)


def _result(cls: str, reason: str, **cert) -> dict:
    return {"classification": cls, "reason": reason, "certificates": cert}


def _classify_product(A: Mat2, B: Mat2) -> dict:
    if A.is_zero or B.is_zero:
        return _result("scalar", "a factor vanishes, so X = 0")
    if A.is_scalar and B.is_scalar:
        return _result("scalar", "both factors are scalar",
                       value=_encode(A.tau * B.tau))
    if A.is_scalar or B.is_scalar:
        return _result("matrix-case",
                       "one factor is scalar; X is a matrix in a single copy")
    moments = moment_sequence("product", A, B, 3)
    cert = {"moments": [_encode(m) for m in moments]}
    ta, tb = A.is_traceless(), B.is_traceless()
    if ta and tb:
        return _result("multi-point-support",
                       "both factors traceless: X is R-diagonal and nonzero, "
                       "its support is an annulus or a disk", **cert)
    if ta or tb:
        zero, other = (A, B) if ta else (B, A)
        if abs(zero.tau_power(2)) > ZERO_TOL:
            wit = _single_point_certificate(moments)
            return _result("multi-point-support",
                           "one factor traceless with nonzero square trace: "
                           "tau(X) = 0 but tau(X^2) != 0", witness=wit, **cert)
        return _result("multi-point-support",
                       "one factor traceless and nilpotent: X has the Brown "
                       "measure of a nonzero R-diagonal product", **cert)
    A1, B1 = A.centered() * (1 / A.tau), B.centered() * (1 / B.tau)
    a2, b2 = A1.tau_power(2), B1.tau_power(2)
    cert["normalized_square_traces"] = [_encode(a2), _encode(b2)]
    if abs(a2) > ZERO_TOL or abs(b2) > ZERO_TOL:
        wit = _single_point_certificate(moments)
        return _result("multi-point-support",
                       "both traces nonzero, a centered part has nonzero square "
                       "trace: the moments are not powers of tau(X)",
                       witness=wit, **cert)
    return _result("multi-point-support",
                   "both traces nonzero with nilpotent centered parts: X is a "
                   "multiple of (1 + a E12)(1 + b F12), whose spectrum is the "
                   "region |l - 1|^2 <= c |l|", **cert)


def _classify_sum(A: Mat2, B: Mat2) -> dict:
    if A.is_scalar and B.is_scalar:
        return _result("scalar", "both summands are scalar",
                       value=_encode(A.tau + B.tau))
    if A.is_scalar or B.is_scalar:
        return _result("matrix-case",
                       "one summand is scalar; X is a matrix in a single copy")
    A0, B0 = A.centered(), B.centered()
    l1, l2 = A0.tau_power(2), B0.tau_power(2)
    moments = moment_sequence("sum", A0, B0, 4)
    cert = {"centered_moments": [_encode(m) for m in moments],
            "square_traces": [_encode(l1), _encode(l2)]}
    if abs(l1) <= ZERO_TOL and abs(l2) <= ZERO_TOL:
        return _result("multi-point-support",
                       "both centered summands nilpotent: X is a translate of "
                       "a E12 + b F12, whose Brown measure fills a disk", **cert)
    if abs(l1 + l2) > ZERO_TOL:
        return _result("multi-point-support",
                       "centered sum has tau(X) = 0 and tau(X^2) != 0",
                       witness=_single_point_certificate(moments), **cert)
    return _result("multi-point-support",
                   "centered sum has vanishing second moment and "
                   "tau(X^4) = 2 l1^2 l2^2 != 0",
                   witness=_single_point_certificate(moments), **cert)
