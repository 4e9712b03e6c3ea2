"""Reproduction suite: ten numbered checks with their tolerances.

Each check returns a :class:`CheckResult` carrying the measured values, the
tolerance it was held to and the verdict.  Monte Carlo checks draw from the
``seed`` passed to :func:`run_suite`; everything else is deterministic.
"""

from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import stats

from .brown import brown_product, brown_sum_nilpotents, haagerup_larsen
from .freeprod import SymbolicMat2, decompose, symbolic_trace
from .mat2 import Mat2
from .matrixmodel import (ModelConfig, arcsine01_cdf, empirical_brown,
                          log_determinant_potential, q_model_corner)
from .measures import RadialMeasure, arcsine01, log_potential, sup_distance
from .moments import (is_r_diagonal_product, is_r_diagonal_sum, moment_sequence,
                      r_diagonal_defect, trace_word)
from .spectra import (ellipse_families_equal, representation_spectrum_sampler,
                      spectrum_example_66)

# eight representatives per copy; together they cover every feasible
# (traceless, singular, scalar) class
GRID_COPY1 = (
    [[0, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 1], [1, 0]], [[0, 2j], [3, 0]],
    [[1, 0], [0, 0]], [[2, 0], [0, 2]], [[1, 1], [0, 1]], [[1, 2], [2, 4]],
)
GRID_COPY2 = (
    [[0, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 1j], [-1j, 0]], [[0, 1], [2, 0]],
    [[0, 0], [0, 1]], [[-2, 0], [0, -2]], [[2, 1], [0, 1]], [[1, 1], [1, 1]],
)
DEFECT_TOL = 1e-9


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    measured: dict
    tolerance: str
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        shown = ", ".join(f"{k}={_short(v)}" for k, v in self.measured.items())
        return f"[{verdict}] {self.number:2d} {self.name}: {shown} (tolerance: {self.tolerance})"

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "measured": {k: _plain(v) for k, v in self.measured.items()},
                "tolerance": self.tolerance, "seconds": round(self.seconds, 3)}


def _short(v) -> str:
    if isinstance(v, float):
        return f"{v:.4g}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)


def _plain(v):
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


@functools.lru_cache(maxsize=4)
def _q_model(N: int, seed: int):
    return q_model_corner(N, np.random.default_rng(np.random.SeedSequence([seed, 0])))


# ----------------------------------------------------------------------


def check_arcsine_radial_law(seed: int = 0) -> CheckResult:
    """Radial law of ``E12 + F12`` from the arcsine law of ``H^2``."""
    nu = haagerup_larsen(arcsine01())
    exact = lambda s: s * s / (1 - s * s)
    err = sup_distance(nu, exact, np.linspace(0.0, 1 / math.sqrt(2), 4001))
    return CheckResult(1, "arcsine radial law", err < 1e-5,
                       {"sup_error": err, "r_outer": nu.r_outer}, "sup error < 1e-5")


def check_nilpotent_sum_radius(seed: int = 0, N: int = 512, trials: int = 16) -> CheckResult:
    cloud = empirical_brown([[0, 1], [0, 0]], [[0, 1], [0, 0]], "sum",
                            ModelConfig(N=N, trials=trials, seed=seed))
    r = float(cloud.moduli.max())
    return CheckResult(2, "nilpotent sum spectral radius", 0.67 <= r <= 0.74,
                       {"max_modulus": r, "target": 1 / math.sqrt(2)},
                       "max modulus in [0.67, 0.74]")


def check_quarter_moment(seed: int = 0, N: int = 1024) -> CheckResult:
    quad = arcsine01().integrate(lambda t: t * (1 - t))
    _, sv = _q_model(N, seed)
    mc = float(np.mean(sv ** 2))
    ok = abs(quad - 0.125) <= 1e-10 and abs(mc - 0.125) <= 0.01
    return CheckResult(3, "t(1-t) arcsine moment", ok,
                       {"quadrature": quad, "matrix_model": mc},
                       "quadrature 1/8 +- 1e-10, matrix model 0.125 +- 0.01")


def check_annulus_ellipses(seed: int = 0) -> CheckResult:
    measured: dict = {}
    ok = True
    for b1, b2 in ((2.0, 3.0), (1.5, 1.5)):
        pts = representation_spectrum_sampler([[0, b1], [1, 0]], [[0, b2], [1, 0]]).points
        lo, hi = float(np.abs(pts).min()), float(np.abs(pts).max())
        cmp = ellipse_families_equal(b1, b2)
        ok &= abs(lo - 1) < 1e-2 and abs(hi - b1 * b2) < 1e-2
        ok &= cmp.equal and cmp.hausdorff < 1e-2
        measured[f"extremes_{b1}_{b2}"] = [lo, hi]
        measured[f"hausdorff_{b1}_{b2}"] = cmp.hausdorff
    return CheckResult(4, "annulus and ellipse families", bool(ok), measured,
                       "extremes within 1e-2 of [1, b1 b2], Hausdorff < 1e-2")


def check_product_radii(seed: int = 0, N: int = 512, trials: int = 4) -> CheckResult:
    A, B = [[0, 1], [1, 0]], [[0, 1], [2, 0]]
    nu = brown_product(A, B)
    r_in, r_out = math.sqrt(8 / 5), math.sqrt(5 / 2)
    radii_err = max(abs(nu.r_inner - r_in), abs(nu.r_outer - r_out))
    mod = empirical_brown(A, B, "product", ModelConfig(N=N, trials=trials, seed=seed)).moduli
    frac = float(np.mean((mod >= r_in - 0.05) & (mod <= r_out + 0.05)))
    return CheckResult(5, "product annulus radii", radii_err < 1e-9 and frac >= 0.98,
                       {"radii": [nu.r_inner, nu.r_outer], "radii_error": radii_err,
                        "fraction_inside": frac},
                       "radii to 1e-9, >= 98% of moduli within 0.05")


def predicate_table() -> list[dict]:
    """Predicate vs *-moment oracle on every pair of grid matrices."""
    rows = []
    for a in GRID_COPY1:
        for b in GRID_COPY2:
            for kind, pred in (("product", is_r_diagonal_product), ("sum", is_r_diagonal_sum)):
                defect = r_diagonal_defect(kind, a, b)
                rows.append({"kind": kind, "A": a, "B": b, "predicate": pred(a, b),
                             "oracle": defect < DEFECT_TOL, "defect": defect})
    return rows


def check_predicates(seed: int = 0) -> CheckResult:
    rows = predicate_table()
    bad = [r for r in rows if r["predicate"] != r["oracle"]]
    positives = sum(r["oracle"] for r in rows)
    return CheckResult(6, "R-diagonality truth table", not bad,
                       {"cases": len(rows), "r_diagonal": positives,
                        "counterexamples": len(bad)}, "no counterexamples")


def _random_traceless(rng: np.random.Generator) -> Mat2:
    m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    return Mat2(m).centered()


def check_moment_identities(seed: int = 0, instances: int = 50) -> CheckResult:
    rng = np.random.default_rng(np.random.SeedSequence([seed, 7]))
    one = Mat2.identity()
    worst_sum = worst_alt = 0.0
    for _ in range(instances):
        A, B = _random_traceless(rng), _random_traceless(rng)
        lhs = moment_sequence("sum", A, B, 4)[3]
        rhs = A.tau_power(4) + B.tau_power(4) + 4 * A.tau_power(2) * B.tau_power(2)
        worst_sum = max(worst_sum, abs(lhs - rhs))
        # normalized factors 1 + A1, 1 + B1 with A1, B1 traceless
        A1, B1 = _random_traceless(rng), _random_traceless(rng)
        An, Bn = one + A1, one + B1
        lhs = trace_word([(1, An), (2, Bn), (1, An), (2, Bn)])
        rhs = 1 + A1.tau_power(2) + B1.tau_power(2)
        worst_alt = max(worst_alt, abs(lhs - rhs))
    ok = worst_sum <= 1e-12 and worst_alt <= 1e-12
    return CheckResult(7, "fourth-moment identities", ok,
                       {"instances": instances, "sum_error": worst_sum,
                        "alternating_error": worst_alt}, "error <= 1e-12")


def check_decomposition(seed: int = 0, instances: int = 20, N: int = 1024) -> CheckResult:
    rng = np.random.default_rng(np.random.SeedSequence([seed, 8]))
    worst = 0.0
    for _ in range(instances):
        B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        D = decompose(B)
        P = SymbolicMat2.identity()
        for k in range(1, 5):
            P = P @ D
            exact = np.trace(np.linalg.matrix_power(B, k)) / 2
            worst = max(worst, abs(symbolic_trace(P) - exact))
    ev, _ = _q_model(N, seed)
    ks = float(stats.kstest(ev, arcsine01_cdf).statistic)
    return CheckResult(8, "two-copy decomposition", worst <= 1e-10 and ks < 0.05,
                       {"trace_error": worst, "ks_distance": ks},
                       "trace error <= 1e-10, KS < 0.05")


def check_triangular_region(seed: int = 0, N: int = 512, trials: int = 4) -> CheckResult:
    region = spectrum_example_66(1, 1)
    cloud = empirical_brown([[1, 1], [0, 1]], [[1, 1], [0, 1]], "product",
                            ModelConfig(N=N, trials=trials, seed=seed))
    frac = float(np.mean(region.contains(cloud.samples, margin=0.05)))
    return CheckResult(9, "triangular product region", frac >= 0.98,
                       {"fraction_inside": frac, "c": region.params["c"]},
                       ">= 98% within 0.05 of the region (engineering margin)")


LOG_POTENTIAL_CASES = (
    ("haar product", [[0, 1], [1, 0]], [[0, 1], [1, 0]], "product",
     RadialMeasure.uniform_circle(1.0)),
    ("nilpotent sum", [[0, 1], [0, 0]], [[0, 1], [0, 0]], "sum", None),
    ("traceless product", [[0, 1], [1, 0]], [[0, 1], [2, 0]], "product", None),
)
LAMBDA_FACTORS = (1.25j, -1.5, 2.0 * np.exp(0.7j), -3.0j, 4.0)


def check_log_potential(seed: int = 0, N: int = 512, trials: int = 2) -> CheckResult:
    measures = {"haar product": LOG_POTENTIAL_CASES[0][4],
                "nilpotent sum": brown_sum_nilpotents(1, 1),
                "traceless product": brown_product([[0, 1], [1, 0]], [[0, 1], [2, 0]])}
    measured = {}
    worst = 0.0
    for name, A, B, kind, _ in LOG_POTENTIAL_CASES:
        nu = measures[name]
        lams = [complex(f) * nu.r_outer for f in LAMBDA_FACTORS]
        est = log_determinant_potential(A, B, kind, lams,
                                        ModelConfig(N=N, trials=trials, seed=seed))
        for lam, e in zip(lams, est):
            # outside the support the potential is log|lam|
            analytic = log_potential(nu, lam)
            worst = max(worst, abs(e - math.log(abs(lam))), abs(analytic - math.log(abs(lam))))
        measured[name] = float(np.max(np.abs(est - np.log(np.abs(lams)))))
    measured["worst"] = worst
    return CheckResult(10, "log-potential outside the support", worst < 0.01, measured,
                       "|estimate - log|lam|| < 0.01")


CHECKS: tuple[Callable[..., CheckResult], ...] = (
    check_arcsine_radial_law, check_nilpotent_sum_radius, check_quarter_moment,
    check_annulus_ellipses, check_product_radii, check_predicates,
    check_moment_identities, check_decomposition, check_triangular_region,
    check_log_potential,
)


def run_suite(suite: str = "paper", seed: int = 7, only=None,
              report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    """Run the checks in order; ``only`` restricts to a set of check numbers."""
    if suite != "paper":
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    for number, check in enumerate(CHECKS, start=1):
        if only is not None and number not in only:
            continue
        t0 = time.perf_counter()
        res = check(seed=seed)
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if report is not None:
            report(res)
    return results
