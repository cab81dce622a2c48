"""Preconditioners: identity, Jacobi and ILU(0).

A preconditioner represents a matrix ``M ~ A`` through solves with ``M``,
``M^H`` and ``M^T``. Which side it is applied on is decided by each solver
and recorded in :attr:`SolverOutcome.precond_side`.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve_triangular

from .exceptions import BreakdownError, DimensionError, InvalidInputError
from .numerics import machine_epsilon
from .operator import CsrMatrix, DenseMatrix

__all__ = [
    "Preconditioner",
    "IdentityPreconditioner",
    "JacobiPreconditioner",
    "Ilu0Preconditioner",
    "ZeroDiagonalError",
    "build_jacobi",
    "build_ilu0",
    "apply_precond",
]


class ZeroDiagonalError(InvalidInputError):
    def __init__(self, row):
        super().__init__(f"zero diagonal entry in row {row}")
        self.row = row


class Preconditioner:
    """Base class. Subclasses implement ``_solve``, ``_solve_h``, ``_solve_t``."""

    is_identity = False

    def __init__(self, n, dtype=np.complex128):
        self.n = int(n)
        self.dtype = np.dtype(dtype)

    def _check(self, v):
        v = np.asarray(v)
        if v.shape != (self.n,):
            raise DimensionError(
                f"preconditioner of dimension {self.n} applied to vector of shape {v.shape}")
        return v

    def solve(self, v):
        """Return z with ``M z = v``."""
        return self._solve(self._check(v))

    def solve_hermitian(self, v):
        """Return z with ``M^H z = v``."""
        return self._solve_h(self._check(v))

    def solve_transpose(self, v):
        """Return z with ``M^T z = v``."""
        return self._solve_t(self._check(v))


class IdentityPreconditioner(Preconditioner):
    is_identity = True

    def _solve(self, v):
        return v.copy()

    _solve_h = _solve
    _solve_t = _solve


class JacobiPreconditioner(Preconditioner):
    def __init__(self, diagonal):
        d = np.asarray(diagonal)
        super().__init__(d.size, np.result_type(d.dtype, np.complex64))
        self.diagonal = d

    def _solve(self, v):
        return v / self.diagonal

    def _solve_h(self, v):
        return v / np.conj(self.diagonal)

    _solve_t = _solve


class Ilu0Preconditioner(Preconditioner):
    """ILU(0) factors ``L U`` stored on the sparsity pattern of the input.

    Attributes
    ----------
    factors : CsrMatrix
        Combined storage: strict lower part holds L (unit diagonal implied),
        upper part including the diagonal holds U.
    """

    def __init__(self, factors: CsrMatrix):
        super().__init__(factors.n, factors.dtype)
        self.factors = factors
        m = factors.scipy
        self.L = (sp.tril(m, k=-1) + sp.identity(self.n, dtype=m.dtype, format="csr")).tocsr()
        self.U = sp.triu(m, k=0).tocsr()
        self._Lh = self.L.conj().T.tocsr()
        self._Uh = self.U.conj().T.tocsr()
        self._Lt = self.L.T.tocsr()
        self._Ut = self.U.T.tocsr()

    def _tri(self, m, v, lower, unit):
        v = np.asarray(v, dtype=np.result_type(v.dtype, self.dtype))
        return spsolve_triangular(m, v, lower=lower, unit_diagonal=unit)

    def solve_lower(self, v):
        """``L^-1 v``."""
        return self._tri(self.L, self._check(v), True, True)

    def solve_upper(self, v):
        """``U^-1 v``."""
        return self._tri(self.U, self._check(v), False, False)

    def solve_lower_hermitian(self, v):
        """``L^-H v``."""
        return self._tri(self._Lh, self._check(v), False, True)

    def solve_upper_hermitian(self, v):
        """``U^-H v``."""
        return self._tri(self._Uh, self._check(v), True, False)

    def _solve(self, v):
        return self._tri(self.U, self._tri(self.L, v, True, True), False, False)

    def _solve_h(self, v):
        return self._tri(self._Lh, self._tri(self._Uh, v, True, False), False, True)

    def _solve_t(self, v):
        return self._tri(self._Lt, self._tri(self._Ut, v, True, False), False, True)


def _diagonal_of(m):
    if isinstance(m, CsrMatrix):
        return m.diagonal()
    if isinstance(m, DenseMatrix):
        return np.diag(m.array).copy()
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("matrix must be square")
    return np.diag(a).copy()


def build_jacobi(m) -> JacobiPreconditioner:
    """Diagonal preconditioner ``z_i = v_i / a_ii``."""
    d = _diagonal_of(m)
    zero = np.flatnonzero(np.abs(d) == 0)
    if zero.size:
        raise ZeroDiagonalError(int(zero[0]))
    return JacobiPreconditioner(d)


def build_ilu0(m: CsrMatrix) -> Ilu0Preconditioner:
    """Zero-fill incomplete LU factorization in IKJ order.

    Raises
    ------
    BreakdownError
        If a diagonal entry is structurally missing or a pivot falls below
        ``1e3 * eps * max|A|``.
    """
    if not isinstance(m, CsrMatrix):
        raise InvalidInputError("ILU(0) requires a CsrMatrix; convert dense input first")
    n = m.n
    ptr, idx = m.row_offsets, m.col_indices
    vals = m.values.copy()
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    pivot_tol = 1e3 * machine_epsilon(m.dtype) * scale

    diag_pos = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        hit = np.flatnonzero(idx[ptr[i]:ptr[i + 1]] == i)
        if hit.size == 0:
            raise BreakdownError(f"ILU(0): diagonal entry missing in row {i}",
                                 name="pivot", row=i)
        diag_pos[i] = ptr[i] + hit[0]

    for i in range(n):
        start, end = ptr[i], ptr[i + 1]
        cols = {int(idx[p]): p for p in range(start, end)}
        for p in range(start, end):
            k = int(idx[p])
            if k >= i:
                break
            vals[p] /= vals[diag_pos[k]]
            lik = vals[p]
            for q in range(diag_pos[k] + 1, ptr[k + 1]):
                j = int(idx[q])
                target = cols.get(j)
                if target is not None:
                    vals[target] -= lik * vals[q]
        pivot = abs(vals[diag_pos[i]])
        if not pivot >= pivot_tol or pivot == 0:
            raise BreakdownError(
                f"ILU(0): pivot {vals[diag_pos[i]]!r} in row {i} is (near) zero",
                name="pivot", row=i)

    factors = CsrMatrix(ptr, idx, vals, n, verify=False)
    return Ilu0Preconditioner(factors)


def apply_precond(p: Preconditioner, v):
    """Return z solving ``M z = v``."""
    return p.solve(v)
