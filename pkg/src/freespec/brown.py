"""Brown measures of R-diagonal elements and of the worked examples.

For ``T = U H`` with ``U`` Haar unitary *-free from ``H >= 0`` the Brown
measure is rotation invariant; its radial distribution is recovered from the
S-transform of ``H^2`` by the radial inversion

    mu(B(0, S(t - 1)^{-1/2})) = t,        t in (mu_H({0}), 1],

with support the annulus between ``||H^{-1}||_2^{-1}`` and ``||H||_2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DiracInputError, PreconditionError
from .mat2 import Mat2
from .measures import MeasureR, RadialMeasure, arcsine01, integrate_moment
from .transforms import STransform, s_product

RADIAL_POINTS = 512


def _t_grid(atom: float, n: int) -> np.ndarray:
    # cosine clustering refines both ends, where s(t) moves fastest
    u = (1 - np.cos(np.linspace(0.0, np.pi, n))) / 2
    t = atom + (1 - atom) * u[1:]
    t[-1] = 1.0
    return t


def radial_from_s(S: STransform, atom: float, r_inner: float, r_outer: float,
                  n: int = RADIAL_POINTS) -> RadialMeasure:
    """Tabulate ``s(t) = S(t - 1)^{-1/2}`` and invert it into a radial CDF."""
    t = _t_grid(atom, n)
    t = t[t - 1.0 > S.tabulation_floor]
    s = 1.0 / np.sqrt(S(t - 1.0))
    s[-1] = r_outer
    if np.any(np.diff(s) < -1e-12 * max(r_outer, 1.0)):
        raise ArithmeticError("S-transform tabulation is not monotone")
    s = np.concatenate([[r_inner], s])
    F = np.concatenate([[atom], t])
    keep = np.concatenate([[True], np.diff(s) > 0])
    return RadialMeasure(atom, r_inner, r_outer, s[keep], F[keep])


def haagerup_larsen(mu_H2: MeasureR, n: int = RADIAL_POINTS) -> RadialMeasure:
    """Brown measure of ``U H`` from the law of ``H^2``."""
    if mu_H2.is_dirac:
        raise DiracInputError("the law of H^2 is a Dirac mass; U H is a scaled Haar unitary")
    atom = mu_H2.mass_at(0.0)
    r_outer = math.sqrt(integrate_moment(mu_H2, 1))
    inv = integrate_moment(mu_H2, -1)
    r_inner = 0.0 if math.isinf(inv) else 1.0 / math.sqrt(inv)
    return radial_from_s(STransform.of(mu_H2), atom, r_inner, r_outer, n)


def _gram_measure(A: Mat2) -> MeasureR:
    return MeasureR.from_atoms(A.gram_law())


def brown_product(A, B, n: int = RADIAL_POINTS) -> RadialMeasure:
    """Brown measure of ``A B`` with ``A``, ``B`` traceless in the two free copies."""
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    if not (A.is_traceless() and B.is_traceless()):
        raise PreconditionError("A B is R-diagonal only when tau(A) = tau(B) = 0")
    if A.is_zero or B.is_zero:
        raise PreconditionError("A and B must be nonzero")
    r_outer = A.l2norm * B.l2norm
    r_inner = 0.0
    if not (A.is_singular or B.is_singular):
        r_inner = 1.0 / (A.inv_l2norm * B.inv_l2norm)
    mu_a, mu_b = _gram_measure(A), _gram_measure(B)
    if mu_a.is_dirac and mu_b.is_dirac:
        return RadialMeasure.uniform_circle(r_outer)
    S = s_product(STransform.of(mu_a), STransform.of(mu_b))
    atom = max(mu_a.mass_at(0.0), mu_b.mass_at(0.0))
    return radial_from_s(S, atom, r_inner, r_outer, n)


def brown_sum_nilpotents(alpha: complex, beta: complex, n: int = 2049) -> RadialMeasure:
    """Brown measure of ``alpha E12 + beta F12``.

    A disk of radius ``sqrt(|alpha beta| / 2)`` with
    ``F(s) = (s^2 / c) / (1 - s^2 / c)``, ``c = |alpha beta|``.
    """
    c = abs(complex(alpha) * complex(beta))
    if c == 0:
        return RadialMeasure.dirac0()
    base = RadialMeasure.from_cdf(lambda s: s * s / (1 - s * s), 0.0, 1 / math.sqrt(2), n=n)
    return base.dilate(math.sqrt(c))


def _rdiag_component() -> RadialMeasure:
    # |v* sqrt(1-h^2) h|^2 has the law of (1 - h^2) h^2 with h^2 arcsine on [0, 1]
    mu = arcsine01().pushforward(lambda t: t * (1.0 - t))
    return haagerup_larsen(mu)


@dataclass(frozen=True)
class BrownMixture:
    """``sum(mass * delta_loc) + weight * (component translated by center)``."""

    atoms: tuple
    component: RadialMeasure
    weight: float
    center: complex = 0j
    notes: dict = field(default_factory=dict)

    @property
    def total_mass(self) -> float:
        return sum(m for _, m in self.atoms) + self.weight

    def support_descriptor(self) -> dict:
        comp = self.component.support_descriptor()
        return {
            "kind": "union",
            "atoms": [[complex(z).real, complex(z).imag, m] for z, m in self.atoms],
            "component": {**comp, "center": [self.center.real, self.center.imag],
                          "weight": self.weight},
        }


def brown_example_64(alpha: complex, beta: complex) -> BrownMixture:
    """Brown measure of ``E11 (alpha 1 + beta F12)``.

    Half the mass sits at ``0``; the other half is the R-diagonal law of
    ``beta h v* sqrt(1 - h^2)`` (a disk of radius ``|beta| / (2 sqrt 2)``)
    translated to ``alpha``.
    """
    alpha, beta = complex(alpha), complex(beta)
    comp = _rdiag_component().dilate(abs(beta)) if beta != 0 else RadialMeasure.dirac0()
    return BrownMixture(atoms=((0j, 0.5),), component=comp, weight=0.5, center=alpha)


def brown_example_65(alpha: complex, beta: complex) -> RadialMeasure:
    """Brown measure of ``E12 diag(alpha, beta)``: disk of radius ``|alpha - beta| / (2 sqrt 2)``."""
    d = abs(complex(alpha) - complex(beta))
    if d == 0:
        return RadialMeasure.dirac0()
    return _rdiag_component().dilate(d)
