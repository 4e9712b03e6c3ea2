"""Spectra of products and sums of elements from two free copies of ``M_2``.

Results carry an ``ambient`` tag: ``"universal"`` for the universal free
product C*-algebra, ``"reduced"`` for the reduced free product.  Radius
formulas that coincide in both settings say so in their docstrings.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .errors import PreconditionError
from .mat2 import Mat2

__all__ = [
    "Mat2",
    "SpectrumRegion",
    "EllipseComparison",
    "spectral_radius_product",
    "spectrum_product_traceless",
    "canonical_traceless",
    "representation_spectrum_sampler",
    "ellipse_families_equal",
    "spectrum_example_66",
]

ANGLE_GRID = 720
TRACE_TOL = 1e-12


def _jsonable(x):
    if isinstance(x, SpectrumRegion):
        return x.to_json()
    if isinstance(x, (complex, np.complexfloating)):
        return [float(np.real(x)), float(np.imag(x))]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


@dataclass(frozen=True, eq=False)
class SpectrumRegion:
    """A compact subset of the complex plane.

    ``kind`` and its ``params``:

    ``annulus``
        ``r_inner``, ``r_outer``; a circle when they agree.
    ``disk``
        ``center`` (complex), ``radius``.
    ``union``
        ``parts``, a list of regions.
    ``point_set``
        ``points``, complex array.
    ``implicit_cardioid``
        ``c``; the set ``|z - 1|^2 <= c |z|``.
    """

    kind: str
    params: dict = field(default_factory=dict)
    ambient: str = "universal"

    def __post_init__(self):
        if self.kind not in ("annulus", "disk", "union", "point_set", "implicit_cardioid"):
            raise ValueError(f"unknown region kind {self.kind!r}")
        if self.kind == "annulus" and self.params["r_inner"] > self.params["r_outer"]:
            raise ValueError("annulus needs r_inner <= r_outer")

    @property
    def points(self) -> np.ndarray:
        return np.asarray(self.params.get("points", []), dtype=complex)

    # membership ------------------------------------------------------
    def contains(self, z, margin: float = 0.0) -> np.ndarray:
        """Points within Euclidean distance ``margin`` of the region."""
        z = np.asarray(z, dtype=complex)
        p = self.params
        if self.kind == "annulus":
            r = np.abs(z)
            return (r >= p["r_inner"] - margin) & (r <= p["r_outer"] + margin)
        if self.kind == "disk":
            return np.abs(z - complex(p["center"])) <= p["radius"] + margin
        if self.kind == "union":
            out = np.zeros(z.shape, dtype=bool)
            for part in p["parts"]:
                out |= part.contains(z, margin)
            return out
        if self.kind == "point_set":
            pts = self.points
            if pts.size == 0:
                return np.zeros(z.shape, dtype=bool)
            d = np.min(np.abs(z.reshape(-1, 1) - pts.reshape(1, -1)), axis=1)
            return (d <= max(margin, 1e-12)).reshape(z.shape)
        c = p["c"]
        inside = np.abs(z - 1) ** 2 <= c * np.abs(z)
        if margin <= 0:
            return inside
        return inside | (self._boundary_distance(z) <= margin)

    def _boundary_distance(self, z: np.ndarray, n: int = 8192) -> np.ndarray:
        bd = self.boundary(n)
        tree = cKDTree(np.column_stack([bd.real, bd.imag]))
        d, _ = tree.query(np.column_stack([z.real.ravel(), z.imag.ravel()]))
        return d.reshape(z.shape)

    # boundary ----------------------------------------------------------
    def boundary(self, n: int = ANGLE_GRID) -> np.ndarray:
        """Sample of boundary points, each satisfying the defining equality."""
        p = self.params
        th = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        ring = np.exp(1j * th)
        if self.kind == "annulus":
            if p["r_inner"] in (0, p["r_outer"]):
                return p["r_outer"] * ring
            return np.concatenate([p["r_inner"] * ring, p["r_outer"] * ring])
        if self.kind == "disk":
            return complex(p["center"]) + p["radius"] * ring
        if self.kind == "union":
            return np.concatenate([part.boundary(n) for part in p["parts"]])
        if self.kind == "point_set":
            return self.points
        return _cardioid_boundary(p["c"], n)

    def to_json(self) -> dict:
        return {"kind": self.kind, "ambient": self.ambient,
                "params": {k: _jsonable(v) for k, v in self.params.items()}}


def _cardioid_boundary(c: float, n: int) -> np.ndarray:
    # |l - 1|^2 = c |l| in polar form: r^2 - (2 cos t + c) r + 1 = 0
    if c >= 4:
        th = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    else:
        tip = math.acos(1 - c / 2)
        th = np.linspace(-tip, tip, n)
    b = 2 * np.cos(th) + c
    disc = np.sqrt(np.clip(b * b - 4, 0.0, None))
    if c < 4:
        disc[[0, -1]] = 0.0
    r_hi, r_lo = (b + disc) / 2, (b - disc) / 2
    keep_lo = disc > 0
    return np.concatenate([r_hi * np.exp(1j * th), (r_lo * np.exp(1j * th))[keep_lo]])


# ----------------------------------------------------------------------


def spectral_radius_product(A, B, mode: str = "normal", ambient: str = "universal") -> float:
    """``r(A B) = ||A|| ||B||`` for normal pairs or for traceless pairs.

    The formula holds in the universal and in the reduced free product;
    ``ambient`` only records which one the caller means.
    """
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    if ambient not in ("universal", "reduced"):
        raise ValueError(f"unknown ambient {ambient!r}")
    if mode == "normal":
        if not (A.is_normal and B.is_normal):
            raise PreconditionError("mode 'normal' needs normal A and B")
    elif mode == "traceless":
        if not (A.is_traceless(TRACE_TOL) and B.is_traceless(TRACE_TOL)):
            raise PreconditionError("mode 'traceless' needs Tr A = Tr B = 0")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return A.opnorm * B.opnorm


def spectrum_product_traceless(A, B) -> SpectrumRegion:
    """Annulus ``[1 / (||A^-1|| ||B^-1||), ||A|| ||B||]`` in the universal algebra."""
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    if not (A.is_traceless(TRACE_TOL) and B.is_traceless(TRACE_TOL)):
        raise PreconditionError("the annulus formula needs Tr A = Tr B = 0")
    r_out = A.opnorm * B.opnorm
    r_in = 1.0 / (A.inv_opnorm * B.inv_opnorm)
    if r_in == 0:
        return SpectrumRegion("disk", {"center": 0j, "radius": r_out})
    return SpectrumRegion("annulus", {"r_inner": r_in, "r_outer": r_out})


def canonical_traceless(A) -> tuple[float, float, complex]:
    """``(alpha, beta, phase)`` with ``A`` unitarily equivalent to
    ``phase * [[0, alpha], [beta, 0]]`` and ``alpha >= beta >= 0``.

    Since ``A^2 = -det(A) 1`` for traceless ``A``, the phase satisfies
    ``phase^2 alpha beta = -det A``.
    """
    A = Mat2.coerce(A)
    if not A.is_traceless(TRACE_TOL):
        raise PreconditionError("canonical form needs Tr A = 0")
    alpha = A.opnorm
    if alpha == 0:
        return 0.0, 0.0, 1 + 0j
    d = A.det
    beta = abs(d) / alpha
    if abs(d) <= TRACE_TOL * max(1.0, alpha * alpha):
        return alpha, 0.0, 1 + 0j
    phase = cmath.sqrt(-d / abs(d))
    return alpha, beta, phase


def _eig2(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # closed-form eigenvalues of stacked 2x2 matrices
    half = (M[..., 0, 0] + M[..., 1, 1]) / 2
    det = M[..., 0, 0] * M[..., 1, 1] - M[..., 0, 1] * M[..., 1, 0]
    root = np.sqrt(half * half - det)
    return half + root, half - root


def _rotation(theta: np.ndarray) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.stack([np.stack([c, s], -1), np.stack([-s, c], -1)], -2)


def representation_spectrum_sampler(A, B, grid: int = ANGLE_GRID,
                                    mode: str = "auto") -> SpectrumRegion:
    """Eigenvalues of ``pi(A B)`` over a two-parameter family of 2x2 representations.

    Parameters
    ----------
    A, B : Mat2 or array_like
        Traceless matrices, replaced by their canonical antidiagonal forms.
    grid : int
        Points per angle.
    mode : {"auto", "singular", "invertible"}
        ``singular`` conjugates ``B`` by real rotations with ``A`` reduced to
        ``alpha E12`` and adds the rotation orbit of the resulting segment;
        ``invertible`` uses the unitaries
        ``[[cos psi, e^{i phi} sin psi], [-sin psi, e^{i phi} cos psi]]``.
        ``auto`` picks ``singular`` when either factor is singular.

    Returns
    -------
    SpectrumRegion
        A ``point_set`` in the universal algebra's spectrum.
    """
    A, B = Mat2.coerce(A), Mat2.coerce(B)
    aA, bA, pA = canonical_traceless(A)
    aB, bB, pB = canonical_traceless(B)
    singular = A.is_singular or B.is_singular
    if mode == "auto":
        mode = "singular" if singular else "invertible"
    if mode not in ("singular", "invertible"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "invertible" and singular:
        raise PreconditionError("mode 'invertible' needs invertible A and B")
    phase = pA * pB
    if mode == "singular":
        # sigma(AB) and sigma(BA) agree once 0 is in both; put the singular one first
        if not (A.is_singular or B.is_singular):
            raise PreconditionError("mode 'singular' needs a singular factor")
        if not A.is_singular:
            aA, bA, aB, bB = aB, bB, aA, bA
        Ac = np.array([[0, aA], [0, 0]], dtype=complex)
        Bc = np.array([[0, bB], [aB, 0]], dtype=complex)
        th = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
        R = _rotation(th)
        M = Ac @ R @ Bc @ np.swapaxes(R, -1, -2)
        l1, l2 = _eig2(M)
        seg = np.concatenate([l1, l2])
        rot = np.exp(1j * np.linspace(0.0, 2 * np.pi, grid, endpoint=False))
        pts = np.unique(np.round((seg[:, None] * rot[None, :]).ravel(), 14))
        pts = np.concatenate([pts, [0j]])
    else:
        Ac = np.array([[0, bA], [aA, 0]], dtype=complex)
        Bc = np.array([[0, bB], [aB, 0]], dtype=complex)
        phi = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
        psi = np.linspace(0.0, np.pi / 2, grid)
        P, S = np.meshgrid(phi, psi, indexing="ij")
        e = np.exp(1j * P)
        U = np.empty(P.shape + (2, 2), dtype=complex)
        U[..., 0, 0], U[..., 0, 1] = np.cos(S), e * np.sin(S)
        U[..., 1, 0], U[..., 1, 1] = -np.sin(S), e * np.cos(S)
        M = U @ Ac @ np.conj(np.swapaxes(U, -1, -2)) @ Bc
        l1, l2 = _eig2(M)
        pts = np.concatenate([l1.ravel(), l2.ravel()])
    return SpectrumRegion("point_set", {"points": phase * pts, "mode": mode, "grid": grid})


# ----------------------------------------------------------------------
# the two ellipse families


@dataclass(frozen=True)
class EllipseComparison:
    equal: bool
    hausdorff: float
    outer_axes_family1: tuple
    outer_axes_family2: tuple
    pixel: float
    area_mismatch: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _family1_axes(b1: float, b2: float, t: np.ndarray):
    p = b1 * b2
    r = 1 + (p - 1) * t
    return r + p / r, r - p / r


def _family2_axes(b1: float, b2: float, t: np.ndarray):
    p = b1 * b2
    return (t * (1 + b1) * (1 + b2) - (1 + p),
            t * (b1 - 1) * (b2 + 1) + (1 - p))


def _rasterize(axes_fn, n_param: int, n_theta: int, extent, shape, chunk: int = 64):
    x0, x1, y0, y1 = extent
    ny, nx = shape
    img = np.zeros(shape, dtype=bool)
    th = np.linspace(0.0, 2 * np.pi, n_theta, endpoint=False)
    c, s = np.cos(th), np.sin(th)
    t_all = np.linspace(0.0, 1.0, n_param)
    for k in range(0, n_param, chunk):
        a, b = axes_fn(t_all[k:k + chunk])
        x = a[:, None] * c[None, :]
        y = b[:, None] * s[None, :]
        ix = np.clip(((x - x0) / (x1 - x0) * nx).astype(int), 0, nx - 1)
        iy = np.clip(((y - y0) / (y1 - y0) * ny).astype(int), 0, ny - 1)
        img[iy.ravel(), ix.ravel()] = True
    return img


def _directed(src: np.ndarray, dst: np.ndarray, sampling) -> float:
    if not src.any():
        return 0.0
    if not dst.any():
        return math.inf
    d = ndimage.distance_transform_edt(~dst, sampling=sampling)
    return float(d[src].max())


def ellipse_families_equal(beta1: float, beta2: float, raster: int = 1024,
                           tol: float = 1e-2) -> EllipseComparison:
    """Compare the two unions of centered ellipses on a common raster.

    Family 1 has semi-axes ``r + b/r`` and ``r - b/r`` for
    ``r in [1, b]``, ``b = beta1 beta2``.  Family 2 has semi-axes
    ``a(1+beta1)(1+beta2) - (1+b)`` and ``a(beta1-1)(beta2+1) + (1-b)`` for
    ``a in [0, 1]``.  Each union of curves is sampled densely enough that
    neighbouring curves are less than a pixel apart.  A two-step binary
    closing removes sampling pinholes, but a genuine hole in either union
    would remain.  The symmetric Hausdorff distance between the two rasters
    is measured in plane units.
    """
    if beta1 < 1 or beta2 < 1:
        raise PreconditionError("both parameters must be at least 1")
    p = beta1 * beta2
    fam1 = lambda t: _family1_axes(beta1, beta2, t)
    fam2 = lambda t: _family2_axes(beta1, beta2, t)
    # largest axis change per unit parameter, (major, minor)
    slopes1 = ((p - 1) ** 2, (1 + p) * (p - 1))
    slopes2 = ((1 + beta1) * (1 + beta2), (beta1 - 1) * (beta2 + 1))
    hd, mismatch, pix = _compare_families(fam1, slopes1, fam2, slopes2,
                                          (1 + p, p - 1), raster)
    a1, b1_ = fam1(np.array([0.0]))
    a2, b2_ = fam2(np.array([0.0]))
    return EllipseComparison(
        equal=bool(hd < tol), hausdorff=hd,
        outer_axes_family1=(abs(float(a1[0])), abs(float(b1_[0]))),
        outer_axes_family2=(abs(float(a2[0])), abs(float(b2_[0]))),
        pixel=pix, area_mismatch=float(mismatch))


def _compare_families(fam1, slopes1, fam2, slopes2, outer, raster: int):
    """Hausdorff distance and area mismatch of two rasterized ellipse unions."""
    half_x = 1.02 * outer[0]
    half_y = 1.02 * max(outer[1], 0.25 * outer[0])
    extent = (-half_x, half_x, -half_y, half_y)
    dx, dy = 2 * half_x / raster, 2 * half_y / raster

    def count(slopes):
        # neighbouring curves stay within half a pixel on both axes
        n = max(slopes[0] / dx, slopes[1] / dy) / 0.5
        return int(np.clip(math.ceil(n), 2, 1 << 14))

    n_theta = 2 * int(math.ceil(math.pi * max(outer[0] / dx, outer[1] / dy) / 0.5))
    shape = (raster, raster)
    img1 = _rasterize(fam1, count(slopes1), n_theta, extent, shape)
    img2 = _rasterize(fam2, count(slopes2), n_theta, extent, shape)
    st = ndimage.generate_binary_structure(2, 1)
    img1 = ndimage.binary_closing(img1, st, iterations=2) | img1
    img2 = ndimage.binary_closing(img2, st, iterations=2) | img2
    sampling = (dy, dx)
    hd = max(_directed(img1, img2, sampling), _directed(img2, img1, sampling))
    union = np.count_nonzero(img1 | img2)
    mismatch = np.count_nonzero(img1 ^ img2) / union if union else 0.0
    return hd, mismatch, min(dx, dy)


def spectrum_example_66(alpha: complex, beta: complex) -> SpectrumRegion:
    """Spectrum of ``(1 + alpha E12)(1 + beta F12)``: ``|l - 1|^2 <= |alpha beta| |l| / 2``."""
    c = abs(complex(alpha) * complex(beta)) / 2
    if c == 0:
        return SpectrumRegion("point_set", {"points": np.array([1 + 0j])}, ambient="reduced")
    return SpectrumRegion("implicit_cardioid", {"c": c}, ambient="reduced")
