"""psi-functions and S-transforms of laws on ``[0, inf)``.

Conventions::

    psi(z)  = int t z / (1 - t z) dmu(t)
    chi     = inverse of psi
    S(w)    = chi(w) (1 + w) / w,       w in (mu({0}) - 1, 0)

``psi`` maps ``(-inf, 0)`` increasingly onto ``(mu({0}) - 1, 0)``, so the
whole real domain of ``S`` is reached from negative ``z``.  ``S(0)`` is the
limit ``1 / int t dmu``.  S-transforms multiply under free multiplicative
convolution, which is how products of free positive laws are handled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, SingularityError
from .measures import MeasureR

BISECT_ITER = 200
FLOOR_MARGIN = 10.0
_Y_LO, _Y_HI = -60.0, 60.0  # chi is searched as z = -exp(y)


def psi(mu: MeasureR, z):
    """``int t z / (1 - t z) dmu(t)``, vectorized in ``z``."""
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    lo, hi = mu.support_hint
    for zz in z_arr:
        if (zz > 0 and hi * zz >= 1) or (zz < 0 and lo * zz >= 1):
            raise SingularityError(f"1 - t z vanishes on the support at z={zz!r}")
    locs = np.array([x for x, _ in mu.atoms] + list(mu.nodes))
    mass = np.array([m for _, m in mu.atoms] + list(mu.weights))
    tz = np.multiply.outer(z_arr, locs)
    out = (tz / (1.0 - tz)) @ mass
    return out if np.ndim(z) else float(out[0])


def chi(mu: MeasureR, w):
    """Inverse of :func:`psi` on ``(mu({0}) - 1, 0)``, by vectorized bisection."""
    w_arr = np.atleast_1d(np.asarray(w, dtype=float))
    lower = mu.mass_at(0.0) - 1.0
    if np.any(w_arr <= lower) or np.any(w_arr >= 0):
        raise DomainError(f"w must lie in ({lower}, 0)")
    if np.any(np.array([x for x, _ in mu.atoms] + list(mu.nodes)) < 0):
        raise DomainError("S-transform needs a law on [0, inf)")
    lo = np.full_like(w_arr, _Y_LO)
    hi = np.full_like(w_arr, _Y_HI)
    # psi(-exp(y)) decreases in y
    for _ in range(BISECT_ITER):
        mid = (lo + hi) / 2
        val = psi(mu, -np.exp(mid))
        right = val > w_arr
        lo = np.where(right, mid, lo)
        hi = np.where(right, hi, mid)
        if np.max(hi - lo) < 1e-14:
            break
    out = -np.exp((lo + hi) / 2)
    return out if np.ndim(w) else float(out[0])


def _two_atom_chi(a: float, b: float, p: float) -> Callable:
    # root of ab(1+w) z^2 - K z + w = 0 that tends to 0 with w
    def f(w):
        w = np.asarray(w, dtype=float)
        K = p * a + (1 - p) * b + w * (a + b)
        return 2 * w / (K + np.sqrt(K * K - 4 * a * b * w * (1 + w)))
    return f


@dataclass(frozen=True)
class STransform:
    """S-transform as a callable on its real domain ``(lower, 0]``.

    ``method`` is one of ``closed-form-dirac``, ``closed-form-two-atom``,
    ``closed-form-arcsine``, ``numeric-inversion`` or ``product``.
    """

    lower: float
    method: str
    evaluator: Callable
    source: MeasureR | None = None
    mean: float = math.nan
    reliable_lower: float | None = None

    @property
    def tabulation_floor(self) -> float:
        """Smallest ``w`` at which the evaluator is trusted."""
        return self.lower if self.reliable_lower is None else self.reliable_lower

    def __call__(self, w):
        w_arr = np.atleast_1d(np.asarray(w, dtype=float))
        if np.any(w_arr <= self.lower) or np.any(w_arr > 0):
            raise DomainError(f"w must lie in ({self.lower}, 0]")
        out = np.empty_like(w_arr)
        zero = w_arr == 0
        out[zero] = 1.0 / self.mean
        if np.any(~zero):
            out[~zero] = self.evaluator(w_arr[~zero])
        return out if np.ndim(w) else float(out[0])

    @property
    def is_constant(self) -> bool:
        return bool(getattr(self.evaluator, "constant", False))

    @classmethod
    def of(cls, mu: MeasureR, method: str | None = None) -> "STransform":
        """Build the S-transform of ``mu``; ``method`` forces a route."""
        lo, _ = mu.support_hint
        if lo < 0:
            raise DomainError("S-transform needs a law on [0, inf)")
        lower = mu.mass_at(0.0) - 1.0
        mean = mu.moment(1)
        if mean <= 0:
            raise DomainError("S-transform undefined for the point mass at 0")
        if method is None:
            method = _pick_method(mu)
        if method == "closed-form-dirac":
            c = mu.atoms[0][0]
            fn = lambda w: np.full_like(np.asarray(w, dtype=float), 1.0 / c)
            fn.constant = True
        elif method == "closed-form-two-atom":
            (a, p), (b, _) = mu.atoms
            chi2 = _two_atom_chi(a, b, p)
            fn = lambda w: chi2(w) * (1 + w) / w
        elif method == "closed-form-arcsine":
            c = mu.law[1]
            fn = lambda w: (w + 2) / ((w + 1) * c)
        elif method == "numeric-inversion":
            fn = lambda w: chi(mu, w) * (1 + w) / w
            # the quadrature cannot resolve psi below its own floor at z -> -inf
            floor = psi(mu, -math.exp(_Y_HI))
            reliable = lower + FLOOR_MARGIN * max(floor - lower, 0.0)
            return cls(lower=lower, method=method, evaluator=fn, source=mu, mean=mean,
                       reliable_lower=min(reliable, lower / 2))
        else:
            raise ValueError(f"unknown method {method!r}")
        return cls(lower=lower, method=method, evaluator=fn, source=mu, mean=mean)


def _pick_method(mu: MeasureR) -> str:
    if mu.is_dirac:
        return "closed-form-dirac"
    if mu.weights.sum() == 0 and len(mu.atoms) == 2:
        return "closed-form-two-atom"
    if mu.law is not None and mu.law[0] == "arcsine01" and not mu.atoms:
        return "closed-form-arcsine"
    return "numeric-inversion"


def s_transform(mu: MeasureR, w):
    """``S_mu(w)``, using a closed form when one applies."""
    return STransform.of(mu)(w)


def s_product(s1: STransform, s2: STransform) -> STransform:
    """Pointwise product ``S1 S2`` on the common domain."""
    lower = max(s1.lower, s2.lower)
    if lower >= 0:
        raise DomainError("S-transform domains do not overlap")

    def fn(w):
        return s1.evaluator(w) * s2.evaluator(w)

    fn.constant = s1.is_constant and s2.is_constant
    return STransform(lower=lower, method="product", evaluator=fn,
                      mean=s1.mean * s2.mean,
                      reliable_lower=max(s1.tabulation_floor, s2.tabulation_floor))
