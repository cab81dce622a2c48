import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cxkrylov import (
    BreakdownError,
    CsrMatrix,
    DenseMatrix,
    DimensionError,
    IdentityPreconditioner,
    InvalidInputError,
    apply_precond,
    build_ilu0,
    build_jacobi,
)
from cxkrylov.precond import ZeroDiagonalError

I = 1j


def test_jacobi_examples():
    assert np.allclose(build_jacobi(np.diag([2, 4 * I])).solve(np.array([2, 4 * I])), [1, 1])
    p = build_jacobi(DenseMatrix(np.diag([1 + I, 2])))
    assert np.allclose(p.solve(np.array([2, 2])), [1 - I, 1], rtol=0, atol=1e-15)
    assert np.array_equal(apply_precond(build_jacobi(np.diag([2.0, 2.0])), np.array([2, 2])),
                          [1, 1])


def test_jacobi_of_identity_is_exact_identity():
    v = np.array([1 + 2 * I, -3.5, 1e-300 * I])
    assert np.array_equal(build_jacobi(CsrMatrix.from_dense(np.eye(3))).solve(v), v)


def test_jacobi_zero_diagonal_names_row():
    with pytest.raises(ZeroDiagonalError) as info:
        build_jacobi(np.array([[1, 2, 0], [1, 0, 3], [0, 1, 1]]))
    assert info.value.row == 1


def test_identity_returns_input():
    v = np.array([1, I, 2 - I])
    assert np.array_equal(apply_precond(IdentityPreconditioner(3), v), v)
    with pytest.raises(DimensionError):
        IdentityPreconditioner(3).solve(np.ones(2))


def test_ilu0_of_diagonal_is_exact_inverse():
    d = np.array([2, 3, 1 - I])
    p = build_ilu0(CsrMatrix.from_dense(np.diag(d)))
    v = np.array([1 + I, -2, 5 * I])
    assert np.allclose(apply_precond(p, v), v / d, rtol=1e-15, atol=0)
    assert np.allclose(build_ilu0(CsrMatrix.from_dense(np.diag([2.0, 3.0]))).solve(np.ones(2)),
                       [0.5, 1 / 3])


def test_ilu0_of_lower_triangular_is_exact():
    rng = np.random.default_rng(4)
    n = 9
    a = np.tril(rng.standard_normal((n, n)) + I * rng.standard_normal((n, n))) + 4 * np.eye(n)
    p = build_ilu0(CsrMatrix.from_dense(a))
    for _ in range(3):
        x = rng.standard_normal(n) + I * rng.standard_normal(n)
        assert np.linalg.norm(p.solve(a @ x) - x) <= 1e-12 * np.linalg.norm(x)


def test_ilu0_pattern_has_no_fill():
    a = np.array([[4, 1, 0, 1], [1, 4, 1, 0], [0, 1, 4, 1], [1, 0, 1, 4]], dtype=complex)
    m = CsrMatrix.from_dense(a)
    f = build_ilu0(m).factors
    assert np.array_equal(f.row_offsets, m.row_offsets)
    assert np.array_equal(f.col_indices, m.col_indices)


def test_ilu0_matches_hand_factorization():
    # Tridiagonal: ILU(0) equals the exact LU since LU of a tridiagonal matrix has no fill.
    a = np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]], dtype=complex)
    f = build_ilu0(CsrMatrix.from_dense(a)).factors.to_dense()
    expected = np.array([[2, 1, 0], [0.5, 1.5, 1], [0, 2 / 3, 4 / 3]])
    assert np.allclose(f, expected, rtol=0, atol=1e-15)


def test_ilu0_missing_diagonal_raises_with_row():
    m = CsrMatrix.from_dense(np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1]], dtype=complex))
    with pytest.raises(BreakdownError) as info:
        build_ilu0(m)
    assert info.value.row == 1 and info.value.name == "pivot"


def test_ilu0_tiny_pivot_raises():
    m = CsrMatrix.from_dense(np.array([[1, 1], [1, 1 + 1e-15]], dtype=complex))
    with pytest.raises(BreakdownError) as info:
        build_ilu0(m)
    assert info.value.row == 1


def test_ilu0_requires_csr():
    with pytest.raises(InvalidInputError):
        build_ilu0(DenseMatrix(np.eye(2)))


def test_ilu0_hermitian_and_transpose_solves():
    rng = np.random.default_rng(5)
    n = 6
    a = np.triu(rng.standard_normal((n, n)) + I * rng.standard_normal((n, n))) + 3 * np.eye(n)
    p = build_ilu0(CsrMatrix.from_dense(a))
    v = rng.standard_normal(n) + I * rng.standard_normal(n)
    assert np.allclose(a.conj().T @ p.solve_hermitian(v), v, atol=1e-12)
    assert np.allclose(a.T @ p.solve_transpose(v), v, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**31), st.sampled_from(["diag", "lower", "upper"]))
def test_ilu0_exact_when_lu_has_no_fill(n, seed, kind):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + I * rng.standard_normal((n, n))
    a = {"diag": np.diag(np.diag(a)), "lower": np.tril(a), "upper": np.triu(a)}[kind]
    a += (2 + np.abs(a).sum(axis=1).max()) * np.eye(n)
    p = build_ilu0(CsrMatrix.from_dense(a))
    x = rng.standard_normal(n) + I * rng.standard_normal(n)
    assert np.linalg.norm(apply_precond(p, a @ x) - x) <= 1e-10 * np.linalg.norm(x)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**31))
def test_preconditioners_are_linear(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + I * rng.standard_normal((n, n)) + 2 * n * np.eye(n)
    m = CsrMatrix.from_dense(a)
    u, v = (rng.standard_normal(n) + I * rng.standard_normal(n) for _ in range(2))
    al, be = 2 - I, 0.5 + 3 * I
    for p in (build_jacobi(m), build_ilu0(m), IdentityPreconditioner(n)):
        lhs = p.solve(al * u + be * v)
        rhs = al * p.solve(u) + be * p.solve(v)
        assert np.linalg.norm(lhs - rhs) <= 1e-12 * (np.linalg.norm(rhs) + 1)
