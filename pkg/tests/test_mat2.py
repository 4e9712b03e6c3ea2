import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from freespec.mat2 import Mat2

entries = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
matrices = st.lists(entries, min_size=4, max_size=4).map(lambda e: Mat2(np.reshape(e, (2, 2))))


def test_rejects_wrong_shape():
    with pytest.raises(ValueError):
        Mat2([1, 2, 3])


def test_singular_conventions():
    E12 = Mat2([[0, 1], [0, 0]])
    assert E12.is_singular
    assert math.isinf(E12.inv_opnorm) and math.isinf(E12.inv_l2norm)
    assert E12.opnorm == pytest.approx(1.0)
    assert E12.l2norm == pytest.approx(1 / math.sqrt(2))


def test_norms_of_weighted_shift():
    B = Mat2([[0, 1], [2, 0]])
    assert B.l2norm ** 2 == pytest.approx(5 / 2, abs=1e-15)
    assert B.inv_l2norm ** 2 == pytest.approx(5 / 8, abs=1e-15)
    assert B.opnorm == pytest.approx(2.0)
    assert B.inv_opnorm == pytest.approx(1.0)


@given(matrices)
def test_l2_below_operator_norm(A):
    assert A.l2norm <= A.opnorm * (1 + 1e-12) + 1e-300


@given(matrices)
def test_det_is_product_of_singular_values(A):
    assert abs(A.det) == pytest.approx(float(np.prod(A.singular_values)), rel=1e-9, abs=1e-9)


def test_gram_law_of_nilpotent():
    law = dict(Mat2([[0, 1], [0, 0]]).gram_law())
    assert law == pytest.approx({0.0: 0.5, 1.0: 0.5})
