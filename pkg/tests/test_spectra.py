import math

import numpy as np
import pytest

from freespec.errors import PreconditionError
from freespec.mat2 import Mat2
from freespec.matrixmodel import haar_unitary
from freespec.spectra import (SpectrumRegion, _compare_families, _family1_axes,
                              _family2_axes, canonical_traceless, ellipse_families_equal,
                              representation_spectrum_sampler, spectral_radius_product,
                              spectrum_example_66, spectrum_product_traceless)


def test_spectral_radius_examples():
    assert spectral_radius_product(np.diag([2, 1]), np.diag([3, 1])) == pytest.approx(6)
    assert spectral_radius_product([[0, 1], [0, 0]], [[0, 1], [2, 0]],
                                   mode="traceless") == pytest.approx(2)
    assert spectral_radius_product([[0, 2], [3, 0]], [[0, 1], [1, 0]],
                                   mode="traceless") == pytest.approx(3)
    with pytest.raises(PreconditionError):
        spectral_radius_product([[0, 1], [0, 0]], np.eye(2))
    with pytest.raises(PreconditionError):
        spectral_radius_product(np.eye(2), np.eye(2), mode="traceless")


def test_product_regions():
    r = spectrum_product_traceless([[0, 1], [1, 0]], [[0, 1], [1, 0]])
    assert (r.kind, r.params["r_inner"], r.params["r_outer"]) == ("annulus", 1.0, 1.0)
    r = spectrum_product_traceless([[0, 1], [0, 0]], [[0, 1], [2, 0]])
    assert r.kind == "disk" and r.params["radius"] == pytest.approx(2)
    r = spectrum_product_traceless([[0, 1], [2, 0]], [[0, 1], [3, 0]])
    assert (r.params["r_inner"], r.params["r_outer"]) == pytest.approx((1, 6))


def test_regions_invariant_under_unitary_conjugation():
    A, B = Mat2([[0, 1], [2, 0]]), Mat2([[0, 3j], [0.5, 0]])
    ref = spectrum_product_traceless(A, B).params
    rng = np.random.default_rng(5)
    for _ in range(20):
        U, V = haar_unitary(2, rng), haar_unitary(2, rng)
        got = spectrum_product_traceless(U @ A.a @ U.conj().T, V @ B.a @ V.conj().T).params
        assert abs(got["r_inner"] - ref["r_inner"]) < 1e-12
        assert abs(got["r_outer"] - ref["r_outer"]) < 1e-12


@pytest.mark.parametrize("A,expected", [
    ([[0, 1], [0, 0]], (1, 0, 1)),
    ([[1, 0], [0, -1]], (1, 1, 1)),
    ([[0, 2j], [3j, 0]], (3, 2, 1j)),
])
def test_canonical_traceless_examples(A, expected):
    a, b, ph = canonical_traceless(A)
    assert (a, b) == pytest.approx(expected[:2])
    assert ph == pytest.approx(expected[2])


def test_canonical_traceless_reproduces_invariants():
    rng = np.random.default_rng(11)
    for _ in range(30):
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        A = Mat2(m).centered()
        a, b, ph = canonical_traceless(A)
        C = ph * np.array([[0, a], [b, 0]])
        assert np.trace(C @ C) == pytest.approx(np.trace(A.a @ A.a), abs=1e-10)
        assert np.trace(C.conj().T @ C) == pytest.approx(np.trace(A.a.conj().T @ A.a), abs=1e-10)
    with pytest.raises(PreconditionError):
        canonical_traceless(np.eye(2))


def test_sampler_extremes():
    for b1, b2 in ((2, 3), (1.5, 1.5)):
        m = np.abs(representation_spectrum_sampler([[0, b1], [1, 0]], [[0, b2], [1, 0]]).points)
        assert m.min() == pytest.approx(1, abs=1e-2) and m.max() == pytest.approx(b1 * b2, abs=1e-2)


def test_sampler_on_unit_circle():
    pts = representation_spectrum_sampler([[0, 1], [1, 0]], [[0, 1], [1, 0]], grid=90).points
    assert np.max(np.abs(np.abs(pts) - 1)) < 1e-9


def test_sampler_singular_fills_disk():
    region = representation_spectrum_sampler([[0, 1], [0, 0]], [[0, 1], [2, 0]], grid=720)
    m = np.abs(region.points)
    assert region.params["mode"] == "singular"
    assert m.max() == pytest.approx(2, abs=1e-9) and m.min() == 0
    # radii fill [0, 2] with no large gaps
    assert np.max(np.diff(np.unique(np.round(m, 6)))) < 0.05


def test_sampler_inside_annulus():
    A, B = [[0, 2], [1, 0]], [[0, 1j], [3, 0]]
    ann = spectrum_product_traceless(A, B)
    pts = representation_spectrum_sampler(A, B, grid=120).points
    assert np.all(ann.contains(pts, margin=1e-9))


def test_sampler_refinement_is_monotone():
    # extremes are hit exactly; refinement shows up in how densely [1, 6] is covered
    A, B = [[0, 2], [1, 0]], [[0, 3], [1, 0]]
    gaps = []
    for g in (30, 90, 270):
        m = np.sort(np.abs(representation_spectrum_sampler(A, B, grid=g).points))
        assert m[0] == pytest.approx(1, abs=1e-12) and m[-1] == pytest.approx(6, abs=1e-12)
        gaps.append(np.max(np.diff(m)))
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.parametrize("b", [(2, 3), (1.5, 1.5), (1, 1)])
def test_ellipse_families_equal(b):
    cmp = ellipse_families_equal(*b)
    assert cmp.equal and cmp.hausdorff < 1e-2
    p = b[0] * b[1]
    assert cmp.outer_axes_family1 == pytest.approx((1 + p, p - 1), abs=1e-12)
    assert cmp.outer_axes_family2 == pytest.approx((1 + p, p - 1), abs=1e-12)


def test_ellipse_comparison_detects_shrinkage():
    f1 = lambda t: _family1_axes(2, 3, t)
    f2 = lambda t: tuple(0.98 * x for x in _family2_axes(2, 3, t))
    hd, _, _ = _compare_families(f1, (25, 35), f2, (12, 4), (7, 5), 512)
    assert hd > 0.05


def test_ellipse_precondition():
    with pytest.raises(PreconditionError):
        ellipse_families_equal(0.5, 2)


def test_unipotent_product_region():
    assert spectrum_example_66(0, 3).kind == "point_set"
    r = spectrum_example_66(2, 2)
    assert r.params["c"] == 2 and bool(r.contains(1.0))
    theta0 = np.sort(np.abs(r.boundary(721)[np.abs(np.angle(r.boundary(721))) < 1e-12]))
    assert theta0 == pytest.approx([2 - math.sqrt(3), 2 + math.sqrt(3)], abs=1e-12)


@pytest.mark.parametrize("c", [0.5, 2.0, 4.0, 6.0])
def test_unipotent_product_boundary_equation(c):
    r = SpectrumRegion("implicit_cardioid", {"c": c})
    z = r.boundary(360)
    assert 360 <= z.size <= 720
    assert np.max(np.abs(np.abs(z - 1) ** 2 - c * np.abs(z))) < 1e-10


def test_region_membership_margin():
    r = SpectrumRegion("annulus", {"r_inner": 1.0, "r_outer": 2.0})
    assert list(r.contains([0.5, 1.5, 2.04], margin=0.05)) == [False, True, True]
    with pytest.raises(ValueError):
        SpectrumRegion("annulus", {"r_inner": 2.0, "r_outer": 1.0})
    card = spectrum_example_66(1, 1)
    edge = card.boundary(200)
    assert np.all(card.contains(edge * 1.01, margin=0.05))
