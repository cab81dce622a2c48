import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cxkrylov import DimensionError, Precision, dotc, dotu, norm2
from cxkrylov.numerics import machine_epsilon, working_dtype

I = 1j


@pytest.mark.parametrize("u, v, expected", [
    ([1 + I], [1 + I], 2 + 0j),
    ([I, 0], [0, 1], 0),
    ([1 + 2 * I, 3], [2, I], 2 - I),
])
def test_dotc_examples(u, v, expected):
    assert dotc(np.array(u, complex), np.array(v, complex)) == expected


@pytest.mark.parametrize("u, v, expected", [
    ([I], [I], -1),
    ([1, 1], [1, -1], 0),
    ([1 + I, 2], [1 - I, I], 2 + 2 * I),
])
def test_dotu_examples(u, v, expected):
    assert dotu(np.array(u, complex), np.array(v, complex)) == expected


@pytest.mark.parametrize("u, expected", [([0, 0, 0], 0.0), ([3 + 4 * I], 5.0), ([1, I, 1 + I], 2.0)])
def test_norm2_examples(u, expected):
    assert norm2(np.array(u, complex)) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("f", [dotc, dotu])
def test_length_mismatch(f):
    with pytest.raises(DimensionError):
        f(np.ones(2, complex), np.ones(3, complex))


def test_precision_policy():
    assert Precision.SINGLE.dtype == np.complex64
    assert Precision.DOUBLE.dtype == np.complex128
    assert working_dtype(np.float32) == np.complex64
    assert working_dtype(np.complex64, np.float64) == np.complex128
    assert machine_epsilon(np.complex64) == np.finfo(np.float32).eps


def test_single_precision_products_stay_single():
    u = np.ones(4, np.complex64)
    assert dotc(u, u).dtype == np.complex64


finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
cvec = st.integers(1, 12).flatmap(
    lambda n: st.tuples(arrays(np.complex128, n, elements=st.complex_numbers(
        max_magnitude=1e3, allow_nan=False, allow_infinity=False)),
        arrays(np.complex128, n, elements=st.complex_numbers(
            max_magnitude=1e3, allow_nan=False, allow_infinity=False))))


@settings(max_examples=200, deadline=None)
@given(cvec)
def test_inner_product_symmetries(uv):
    u, v = uv
    uu = dotc(u, u)
    assert uu.imag == 0 and uu.real >= 0
    assert dotc(u, v) == np.conj(dotc(v, u))
    tol = 1e-12 * (norm2(u) * norm2(v) + 1)
    assert abs(dotu(u, v) - dotu(v, u)) <= tol


@settings(max_examples=200, deadline=None)
@given(cvec)
def test_triangle_inequality(uv):
    u, v = uv
    slack = 4 * np.finfo(float).eps * u.size
    assert norm2(u + v) <= (norm2(u) + norm2(v)) * (1 + slack)
