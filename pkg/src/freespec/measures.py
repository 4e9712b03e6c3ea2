"""Probability measures on the line and rotation-invariant measures in the plane.

A :class:`MeasureR` is stored as a finite set of atoms plus a discretized
absolutely continuous part given by quadrature ``nodes`` and ``weights``.
Integrals are always taken against that rule, so a constructor that knows a
good rule (the arcsine laws, integrated through ``t = sin^2 theta``) gets
spectral accuracy even though the density blows up at the endpoints.  An
optional exact density table ``(grid, values)`` is kept for display and CSV
output only.

A :class:`RadialMeasure` is a planar measure invariant under rotations about
the origin, described by its mass at ``0`` and its radial distribution
function ``F(s) = mu(|z| <= s)`` tabulated on ``[r_inner, r_outer]``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import InvalidMeasureError

MASS_TOL = 1e-9
DEFAULT_GRID = 4096


def _frozen(x) -> np.ndarray:
    a = np.array(x, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class MeasureR:
    """Probability measure on the real line.

    Parameters
    ----------
    atoms : sequence of (location, mass)
        Point masses.  Locations must be distinct, masses in ``(0, 1]``.
    nodes, weights : array_like
        Quadrature rule for the absolutely continuous part.  ``weights`` are
        masses, not density values; they sum to the continuous mass.
    grid, values : array_like, optional
        Exact density table, strictly increasing grid.  Used for output only.
    law : tuple, optional
        ``("arcsine01", c)`` marks the law of ``c * T`` with ``T`` arcsine on
        ``[0, 1]``; the S-transform uses it to pick a closed form.
    """

    atoms: tuple = ()
    nodes: np.ndarray = field(default_factory=lambda: _frozen([]))
    weights: np.ndarray = field(default_factory=lambda: _frozen([]))
    grid: np.ndarray | None = None
    values: np.ndarray | None = None
    law: tuple | None = None

    def __post_init__(self):
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "nodes", _frozen(self.nodes))
        object.__setattr__(self, "weights", _frozen(self.weights))
        if self.grid is not None:
            object.__setattr__(self, "grid", _frozen(self.grid))
            object.__setattr__(self, "values", _frozen(self.values))
        self._validate()

    def _validate(self):
        locs = [x for x, _ in self.atoms]
        if len(set(locs)) != len(locs):
            raise InvalidMeasureError("atom locations must be distinct")
        if any(not (0 < m <= 1 + MASS_TOL) for _, m in self.atoms):
            raise InvalidMeasureError("atom masses must lie in (0, 1]")
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise InvalidMeasureError("nodes and weights must be 1-d and aligned")
        if np.any(self.weights < 0):
            raise InvalidMeasureError("quadrature weights must be nonnegative")
        if self.grid is not None:
            if self.grid.shape != self.values.shape:
                raise InvalidMeasureError("density grid and values differ in shape")
            if np.any(np.diff(self.grid) <= 0):
                raise InvalidMeasureError("density grid must be strictly increasing")
            if np.any(self.values < 0):
                raise InvalidMeasureError("density values must be nonnegative")
        total = self.total_mass
        if abs(total - 1.0) > MASS_TOL:
            raise InvalidMeasureError(f"total mass is {total!r}, expected 1")

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def dirac(cls, c: float) -> "MeasureR":
        return cls(atoms=((c, 1.0),))

    @classmethod
    def from_atoms(cls, atoms: Iterable[tuple[float, float]]) -> "MeasureR":
        merged: dict[float, float] = {}
        for x, m in atoms:
            if m > 0:
                merged[float(x)] = merged.get(float(x), 0.0) + float(m)
        return cls(atoms=tuple(sorted(merged.items())))

    @classmethod
    def from_density(cls, grid, values, atoms=(), normalize: bool = False) -> "MeasureR":
        """Density table integrated with the trapezoid rule.

        With ``normalize=True`` the continuous part is rescaled so the total
        mass is one; otherwise a mass defect raises :class:`InvalidMeasureError`.
        """
        grid = np.asarray(grid, dtype=float)
        values = np.asarray(values, dtype=float)
        if not np.all(np.isfinite(values)):
            raise InvalidMeasureError("trapezoid densities must be finite; use a"
                                      " quadrature-aware constructor for singular laws")
        dx = np.diff(grid)
        w = np.zeros_like(grid)
        w[:-1] += dx / 2
        w[1:] += dx / 2
        weights = w * values
        if normalize:
            atom_mass = sum(m for _, m in atoms)
            scale = (1.0 - atom_mass) / weights.sum()
            weights = weights * scale
            values = values * scale
        return cls(atoms=tuple(atoms), nodes=grid, weights=weights, grid=grid, values=values)

    # ------------------------------------------------------------------
    @property
    def atom_mass(self) -> float:
        return float(sum(m for _, m in self.atoms))

    @property
    def total_mass(self) -> float:
        return self.atom_mass + float(self.weights.sum())

    def mass_at(self, x: float) -> float:
        return float(sum(m for loc, m in self.atoms if loc == x))

    @property
    def support_hint(self) -> tuple[float, float]:
        pts = [x for x, _ in self.atoms]
        if self.nodes.size:
            live = self.nodes[self.weights > 0]
            pts += [float(live.min()), float(live.max())]
        return (min(pts), max(pts))

    @property
    def is_dirac(self) -> bool:
        return len(self.atoms) == 1 and self.weights.sum() == 0

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """``int f dmu`` using the atoms and the quadrature rule."""
        total = 0.0
        if self.atoms:
            locs = np.array([x for x, _ in self.atoms])
            masses = np.array([m for _, m in self.atoms])
            total += float(np.dot(masses, f(locs)))
        if self.nodes.size:
            live = self.weights > 0
            total += float(np.dot(self.weights[live], f(self.nodes[live])))
        return total

    def moment(self, k: int) -> float:
        return integrate_moment(self, k)

    def pushforward(self, f: Callable[[np.ndarray], np.ndarray]) -> "MeasureR":
        """Image measure under ``f``; the density table is not carried over."""
        atoms: dict[float, float] = {}
        for x, m in self.atoms:
            y = float(f(np.array([x]))[0])
            atoms[y] = atoms.get(y, 0.0) + m
        return MeasureR(atoms=tuple(sorted(atoms.items())), nodes=f(self.nodes),
                        weights=self.weights)

    def scaled(self, c: float) -> "MeasureR":
        """Law of ``c * X`` for ``c > 0``."""
        if c <= 0:
            raise ValueError("scale must be positive")
        law = None if self.law is None else (self.law[0], self.law[1] * c)
        grid = values = None
        if self.grid is not None:
            grid, values = self.grid * c, self.values / c
        return MeasureR(atoms=tuple((x * c, m) for x, m in self.atoms),
                        nodes=self.nodes * c, weights=self.weights,
                        grid=grid, values=values, law=law)

    def density_table(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(t, density)``; estimated from the weights when no exact table exists."""
        if self.grid is not None:
            return self.grid, self.values
        if self.nodes.size < 2:
            return self.nodes.copy(), np.zeros_like(self.nodes)
        order = np.argsort(self.nodes)
        t, w = self.nodes[order], self.weights[order]
        t, inv = np.unique(t, return_inverse=True)
        w = np.bincount(inv, weights=w)
        cell = np.empty_like(t)
        cell[1:-1] = (t[2:] - t[:-2]) / 2
        cell[0] = (t[1] - t[0]) / 2
        cell[-1] = (t[-1] - t[-2]) / 2
        return t, w / cell

    def with_law(self, law: tuple | None) -> "MeasureR":
        return MeasureR(atoms=self.atoms, nodes=self.nodes, weights=self.weights,
                        grid=self.grid, values=self.values, law=law)

    # ------------------------------------------------------------------
    def to_csv(self) -> str:
        """CSV text: ``# atom,<t>,<mass>`` header lines, then ``t,density,mass`` rows."""
        buf = io.StringIO()
        for x, m in self.atoms:
            buf.write(f"# atom,{x!r},{m!r}\n")
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["t", "density", "mass"])
        order = np.argsort(self.nodes, kind="stable")
        density = _density_at_nodes(self)
        for i in order:
            wr.writerow([repr(float(self.nodes[i])), _fmt(density[i]), repr(float(self.weights[i]))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "MeasureR":
        """Inverse of :meth:`to_csv`.  A file without a ``mass`` column is
        integrated with the trapezoid rule."""
        atoms = []
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = [p.strip() for p in line[1:].split(",")]
                if parts[0] == "atom":
                    atoms.append((float(parts[1]), float(parts[2])))
                continue
            rows.append(line)
        if not rows:
            return cls.from_atoms(atoms)
        reader = list(csv.reader(rows))
        header = [h.strip() for h in reader[0]]
        data = np.array([[float(v) for v in r] for r in reader[1:]], dtype=float)
        if data.size == 0:
            return cls.from_atoms(atoms)
        t = data[:, header.index("t")]
        if "mass" in header:
            return cls(atoms=tuple(atoms), nodes=t, weights=data[:, header.index("mass")])
        return cls.from_density(t, data[:, header.index("density")], atoms=tuple(atoms))


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def _density_at_nodes(mu: MeasureR) -> np.ndarray:
    t, d = mu.density_table()
    if t.size == 0:
        return np.zeros_like(mu.nodes)
    out = np.interp(mu.nodes, t, d)
    exact = np.isin(mu.nodes, t)
    if exact.any():
        idx = np.searchsorted(t, mu.nodes[exact])
        out[exact] = d[idx]
    return out


# ----------------------------------------------------------------------
def integrate_moment(mu: MeasureR, k: int) -> float:
    """``int t^k dmu(t)`` for integer ``k >= -1``.

    For ``k = -1`` the value is ``inf`` whenever ``mu`` charges the origin,
    either through an atom or through positive quadrature mass at ``t = 0``
    (a density that does not vanish at zero).
    """
    if k < -1 or int(k) != k:
        raise ValueError("k must be an integer >= -1")
    if abs(mu.total_mass - 1.0) > MASS_TOL:
        raise InvalidMeasureError("measure does not have unit mass")
    if k == -1:
        if mu.mass_at(0.0) > 0 or np.any((mu.nodes == 0) & (mu.weights > 0)):
            return math.inf
        return mu.integrate(lambda t: 1.0 / t)
    if k == 0:
        return mu.total_mass
    return mu.integrate(lambda t: t ** k)


def _arcsine_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    # uniform angle grid with endpoints; trapezoid weights, normalized to 1
    theta = np.linspace(0.0, np.pi / 2, n)
    w = np.full(n, 1.0 / (n - 1))
    w[0] = w[-1] = 0.5 / (n - 1)
    return theta, w


def arcsine01(n: int = DEFAULT_GRID) -> MeasureR:
    """Arcsine law on ``[0, 1]``, density ``1 / (pi sqrt(t (1 - t)))``.

    The rule is the trapezoid rule in ``theta`` after ``t = sin^2 theta``,
    where the law becomes uniform; smooth integrands converge geometrically.
    """
    if n < 3:
        raise ValueError("need at least 3 grid points")
    theta, w = _arcsine_rule(n)
    t = np.sin(theta) ** 2
    t[0], t[-1] = 0.0, 1.0
    with np.errstate(divide="ignore"):
        dens = 1.0 / (np.pi * np.sqrt(t * (1.0 - t)))
    return MeasureR(nodes=t, weights=w, grid=t, values=dens, law=("arcsine01", 1.0))


def arcsine_sym(n: int = DEFAULT_GRID) -> MeasureR:
    """Arcsine law on ``[-1, 1]``, density ``1 / (pi sqrt(1 - t^2))``."""
    if n < 3:
        raise ValueError("need at least 3 grid points")
    phi = np.linspace(0.0, np.pi, n)
    w = np.full(n, 1.0 / (n - 1))
    w[0] = w[-1] = 0.5 / (n - 1)
    t = -np.cos(phi)
    t[0], t[-1] = -1.0, 1.0
    if n % 2:
        t[n // 2] = 0.0
    with np.errstate(divide="ignore"):
        dens = 1.0 / (np.pi * np.sqrt(1.0 - t * t))
    return MeasureR(nodes=t, weights=w, grid=t, values=dens, law=("arcsine_sym", 1.0))


def pushforward_square(mu: MeasureR) -> MeasureR:
    """Law of ``X^2`` when ``X ~ mu``.  Atoms at ``+-a`` merge at ``a^2``."""
    atoms: dict[float, float] = {}
    for x, m in mu.atoms:
        atoms[x * x] = atoms.get(x * x, 0.0) + m
    grid = values = None
    if mu.grid is not None and mu.grid.size >= 2:
        g, d = mu.grid, mu.values
        s = np.unique(np.concatenate([g[g >= 0] ** 2, g[g <= 0] ** 2]))
        root = np.sqrt(s)
        with np.errstate(divide="ignore", invalid="ignore"):
            f_pos = _interp_density(root, g, d)
            f_neg = _interp_density(-root, g, d)
            values = (f_pos + f_neg) / (2 * root)
        values[~np.isfinite(values)] = np.inf
        values[(s == 0) & (f_pos + f_neg == 0)] = 0.0
        grid = s
    law = None
    if mu.law is not None and mu.law[0] == "arcsine_sym":
        law = ("arcsine01", mu.law[1] ** 2)
    return MeasureR(atoms=tuple(sorted(atoms.items())), nodes=mu.nodes ** 2,
                    weights=mu.weights, grid=grid, values=values, law=law)


def _interp_density(x, g, d):
    out = np.interp(x, g, d, left=0.0, right=0.0)
    hit = np.isin(x, g)
    out[hit] = d[np.searchsorted(g, x[hit])]
    return out


# ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class RadialMeasure:
    """Rotation-invariant probability measure on the plane.

    Parameters
    ----------
    atom_at_zero : float
        Mass of the point ``0``.
    r_inner, r_outer : float
        Support is contained in ``{0} U {r_inner <= |z| <= r_outer}``.
    s, F : array_like
        Radial table, ``s`` strictly increasing in ``[r_inner, r_outer]``,
        ``F`` nondecreasing with ``F[-1] = 1``.
    interp : {"pchip", "linear", "step"}
        How ``F`` is read between knots.  ``"step"`` is right-continuous.
    """

    atom_at_zero: float
    r_inner: float
    r_outer: float
    s: np.ndarray
    F: np.ndarray
    interp: str = "pchip"

    def __post_init__(self):
        s, F = _frozen(self.s), _frozen(self.F)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "F", F)
        if self.r_outer < self.r_inner or self.r_inner < 0:
            raise InvalidMeasureError("need 0 <= r_inner <= r_outer")
        if s.shape != F.shape or s.size == 0:
            raise InvalidMeasureError("radial table must be nonempty and aligned")
        if np.any(np.diff(s) <= 0):
            raise InvalidMeasureError("radial knots must be strictly increasing")
        if np.any(np.diff(F) < -MASS_TOL):
            raise InvalidMeasureError("radial CDF must be nondecreasing")
        if abs(F[-1] - 1.0) > MASS_TOL:
            raise InvalidMeasureError(f"F(r_outer) = {F[-1]!r}, expected 1")
        if not 0 <= self.atom_at_zero <= 1 + MASS_TOL:
            raise InvalidMeasureError("atom at zero must lie in [0, 1]")
        if self.interp not in ("pchip", "linear", "step"):
            raise ValueError(f"unknown interpolation {self.interp!r}")
        if self.interp == "pchip" and s.size >= 2:
            object.__setattr__(self, "_pchip", PchipInterpolator(s, F, extrapolate=False))

    # ------------------------------------------------------------------
    @classmethod
    def dirac0(cls) -> "RadialMeasure":
        return cls(1.0, 0.0, 0.0, [0.0], [1.0], interp="step")

    @classmethod
    def uniform_circle(cls, r: float) -> "RadialMeasure":
        if r == 0:
            return cls.dirac0()
        return cls(0.0, r, r, [r], [1.0], interp="step")

    @classmethod
    def from_cdf(cls, cdf: Callable[[np.ndarray], np.ndarray], r_inner: float,
                 r_outer: float, atom: float = 0.0, n: int = 2049) -> "RadialMeasure":
        """Tabulate a closed-form radial CDF on a cosine-clustered grid."""
        u = (1 - np.cos(np.linspace(0.0, np.pi, n))) / 2
        s = r_inner + (r_outer - r_inner) * u
        s[0], s[-1] = r_inner, r_outer
        F = np.asarray(cdf(s), dtype=float)
        F[-1] = 1.0
        return cls(atom, r_inner, r_outer, s, F)

    def cdf(self, x) -> np.ndarray:
        """``mu(|z| <= x)``, vectorized."""
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        below = x < self.s[0]
        above = x >= self.s[-1]
        mid = ~(below | above)
        out[below] = self.atom_at_zero
        out[x < 0] = 0.0
        out[above] = 1.0
        if np.any(mid):
            xm = x[mid]
            if self.interp == "step":
                idx = np.searchsorted(self.s, xm, side="right") - 1
                out[mid] = self.F[idx]
            elif self.interp == "linear" or self.s.size < 2:
                out[mid] = np.interp(xm, self.s, self.F)
            else:
                out[mid] = self._pchip(xm)
        return out

    def __call__(self, x):
        return self.cdf(x)

    def dilate(self, c: float) -> "RadialMeasure":
        """Law of ``c Z``; ``c = 0`` collapses to the point mass at 0."""
        c = abs(c)
        if c == 0:
            return RadialMeasure.dirac0()
        return RadialMeasure(self.atom_at_zero, self.r_inner * c, self.r_outer * c,
                             self.s * c, self.F, self.interp)

    def support_descriptor(self) -> dict:
        if self.r_outer == 0:
            kind = "point"
        elif self.r_inner == 0:
            kind = "disk"
        elif self.r_inner == self.r_outer:
            kind = "circle"
        else:
            kind = "annulus"
        return {"kind": kind, "r_inner": self.r_inner, "r_outer": self.r_outer,
                "atom_at_zero": self.atom_at_zero}

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# r_inner,{self.r_inner!r}\n# r_outer,{self.r_outer!r}\n")
        buf.write(f"# atom_at_zero,{self.atom_at_zero!r}\n")
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["s", "F"])
        for a, b in zip(self.s, self.F):
            wr.writerow([repr(float(a)), repr(float(b))])
        return buf.getvalue()

    def _integral_F_over_r(self, a: float, b: float) -> float:
        """``int_a^b F(r) / r dr`` for ``r_inner <= a <= b <= r_outer``."""
        if b <= a:
            return 0.0
        s, F = self.s, self.F
        knots = np.concatenate([[a], s[(s > a) & (s < b)], [b]])
        if self.interp == "step":
            vals = self.cdf(knots[:-1])
            with np.errstate(divide="ignore", invalid="ignore"):
                logs = np.log(knots[1:] / knots[:-1])
                terms = np.where(vals == 0, 0.0, vals * logs)
            return float(np.sum(terms))
        x, w = np.polynomial.legendre.leggauss(8)
        lo, hi = knots[:-1, None], knots[1:, None]
        r = (hi - lo) / 2 * x[None, :] + (hi + lo) / 2
        vals = self.cdf(r.ravel()).reshape(r.shape) / r
        return float(np.sum((hi - lo)[:, 0] / 2 * (vals @ w)))


def log_potential(nu: RadialMeasure, lam: complex) -> float:
    """``int log|z - lam| dnu(z)`` for a rotation-invariant ``nu``.

    Averaging over the angle gives ``int log max(r, |lam|) dF(r)``; after an
    integration by parts this is ``log r_outer - int_{|lam|}^{r_outer} F(r)/r dr``.
    Returns ``-inf`` at ``lam = 0`` when ``nu`` has an atom at the origin.
    """
    a = abs(complex(lam))
    if a >= nu.r_outer:
        return math.log(a) if a > 0 else -math.inf
    if a == 0 and nu.atom_at_zero > 0:
        return -math.inf
    total = math.log(nu.r_outer)
    if a < nu.r_inner:
        if nu.atom_at_zero > 0:
            total -= nu.atom_at_zero * math.log(nu.r_inner / a)
        a = nu.r_inner
    return total - nu._integral_F_over_r(a, nu.r_outer)


def sup_distance(nu: RadialMeasure, cdf: Callable[[np.ndarray], np.ndarray],
                 points: Sequence[float] | np.ndarray) -> float:
    """Largest ``|nu.cdf(s) - cdf(s)|`` over the given radii."""
    pts = np.asarray(points, dtype=float)
    return float(np.max(np.abs(nu.cdf(pts) - cdf(pts))))
