import numpy as np
import pytest

from freespec.errors import DomainError, SingularityError
from freespec.measures import MeasureR, arcsine01
from freespec.transforms import STransform, chi, psi, s_product, s_transform

HALF_ONE_FOUR = MeasureR.from_atoms([(1.0, 0.5), (4.0, 0.5)])


def test_psi_examples():
    assert psi(MeasureR.dirac(1.0), 0.5) == pytest.approx(1.0)
    assert psi(MeasureR.from_atoms([(0.0, 0.5), (1.0, 0.5)]), 0.5) == pytest.approx(0.5)
    # scipy quad oracle: 1 - 1/sqrt(2) with a minus sign
    assert psi(arcsine01(), -1.0) == pytest.approx(-0.2928932188134524, abs=1e-12)


def test_psi_pole_raises():
    with pytest.raises(SingularityError):
        psi(MeasureR.dirac(1.0), 1.0)


def test_dirac_s_transform_is_constant():
    S = STransform.of(MeasureR.dirac(2.5))
    assert S.method == "closed-form-dirac"
    assert S(np.array([-0.9, -0.3, 0.0])) == pytest.approx([0.4, 0.4, 0.4])


def test_arcsine_closed_form():
    assert s_transform(arcsine01(), -0.5) == pytest.approx(3.0)


def test_arcsine_closed_form_matches_numeric():
    mu = arcsine01()
    closed = STransform.of(mu)
    numeric = STransform.of(mu, method="numeric-inversion")
    w = -np.geomspace(1e-3, 0.9, 20)
    # the numeric route is trusted only above its tabulation floor
    w = w[w > numeric.tabulation_floor]
    assert np.max(np.abs(closed(w) - numeric(w))) < 1e-8


def test_two_atom_value():
    # brentq oracle on psi(z) = -1/2
    assert s_transform(HALF_ONE_FOUR, -0.5) == pytest.approx(0.5, abs=1e-12)
    mu = MeasureR.from_atoms([(0.25, 0.5), (4.0, 0.5)])
    assert s_transform(mu, -0.3) == pytest.approx(2 / 3, abs=1e-12)


@pytest.mark.parametrize("a,b,p", [(0.25, 1.0, 0.5), (1.0, 4.0, 0.3), (0.25, 4.0, 0.7),
                                   (0.0, 1.0, 0.5)])
def test_two_atom_closed_form_matches_numeric(a, b, p):
    mu = MeasureR.from_atoms([(a, p), (b, 1 - p)])
    closed = STransform.of(mu)
    numeric = STransform.of(mu, method="numeric-inversion")
    assert closed.method == "closed-form-two-atom"
    w = np.linspace(closed.lower, 0, 22)[1:-1]
    assert np.max(np.abs(closed(w) - numeric(w))) < 1e-8


def test_chi_inverts_psi():
    mu = HALF_ONE_FOUR
    z = -np.geomspace(1e-3, 1e3, 20)
    assert chi(mu, psi(mu, z)) == pytest.approx(z, rel=1e-8)


def test_psi_increasing_inside_reciprocal_support():
    z = np.linspace(1e-3, 0.249, 50)
    assert np.all(np.diff(psi(HALF_ONE_FOUR, z)) > 0)


def test_domain_errors():
    S = STransform.of(MeasureR.from_atoms([(0.0, 0.5), (1.0, 0.5)]))
    with pytest.raises(DomainError):
        S(-0.6)
    with pytest.raises(DomainError):
        S(0.1)
    with pytest.raises(DomainError):
        STransform.of(MeasureR.dirac(0.0))


def test_s_product_identities():
    one = STransform.of(MeasureR.dirac(1.0))
    arc = STransform.of(arcsine01())
    w = np.linspace(-0.9, 0, 10)
    assert s_product(one, arc)(w) == pytest.approx(arc(w))
    const = s_product(STransform.of(MeasureR.dirac(2.0)), STransform.of(MeasureR.dirac(3.0)))
    assert const.is_constant and const(-0.5) == pytest.approx(1 / 6)
    assert s_product(arc, arc)(-0.5) == pytest.approx(9.0)


def test_positive_on_domain():
    S = STransform.of(HALF_ONE_FOUR)
    assert np.all(S(np.linspace(-0.99, 0, 30)) > 0)
