"""Dense direct solver used as ground truth.

Gaussian elimination with partial pivoting, written independently of every
iterative method in the package so that a shared bug cannot hide itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, InvalidInputError, SingularMatrixError
from .numerics import machine_epsilon, working_dtype
from .operator import CsrMatrix, DenseMatrix, aslinearoperator

__all__ = ["LuFactorization", "lu_factor", "lu_solve", "rel_residual"]


@dataclass(frozen=True)
class LuFactorization:
    """``P A = L U`` in combined storage.

    ``lu`` holds the unit lower factor below the diagonal and U on and above
    it; ``perm[i]`` is the original row now in position i.
    """

    lu: np.ndarray
    perm: np.ndarray

    @property
    def n(self):
        return self.lu.shape[0]

    def factors(self):
        L = np.tril(self.lu, -1) + np.eye(self.n, dtype=self.lu.dtype)
        U = np.triu(self.lu)
        return L, U

    def solve(self, y):
        y = np.asarray(y)
        if y.shape != (self.n,):
            raise DimensionError(f"rhs of shape {y.shape} for a {self.n}x{self.n} factorization")
        lu = self.lu
        z = np.asarray(y, dtype=np.result_type(lu.dtype, y.dtype))[self.perm].copy()
        for i in range(1, self.n):
            z[i] -= lu[i, :i] @ z[:i]
        for i in range(self.n - 1, -1, -1):
            z[i] = (z[i] - lu[i, i + 1:] @ z[i + 1:]) / lu[i, i]
        return z


def _dense_array(A):
    if isinstance(A, DenseMatrix):
        return A.array
    if isinstance(A, CsrMatrix):
        return A.to_dense()
    a = np.asarray(A)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {a.shape}")
    return a


def lu_factor(A) -> LuFactorization:
    """Factor a dense (or CSR, expanded) matrix with row partial pivoting.

    Raises
    ------
    SingularMatrixError
        When the best available pivot at some step is below
        ``eps * n * max|A|``.
    """
    a = _dense_array(A)
    n = a.shape[0]
    lu = np.array(a, dtype=working_dtype(a.dtype), copy=True)
    perm = np.arange(n)
    scale = float(np.max(np.abs(lu))) if lu.size else 0.0
    tol = machine_epsilon(lu.dtype) * n * scale
    for k in range(n):
        piv = k + int(np.argmax(np.abs(lu[k:, k])))
        if not abs(lu[piv, k]) > tol:
            raise SingularMatrixError(f"matrix is singular to working precision at step {k}",
                                      step=k)
        if piv != k:
            lu[[k, piv]] = lu[[piv, k]]
            perm[[k, piv]] = perm[[piv, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LuFactorization(lu, perm)


def lu_solve(A, y):
    """Solve ``A x = y`` by LU with partial pivoting."""
    return lu_factor(A).solve(y)


def rel_residual(A, x, y, denom="rhs"):
    """``||y - A x|| / denominator``.

    `denom` is ``"rhs"`` for ``||y||`` or a positive number (e.g. ``||r0||``).
    """
    op = aslinearoperator(A)
    y = np.asarray(y)
    r = y - op.apply(np.asarray(x))
    d = float(np.linalg.norm(y)) if isinstance(denom, str) and denom == "rhs" else float(denom)
    if not d > 0:
        raise InvalidInputError("zero denominator in relative residual")
    return float(np.linalg.norm(r)) / d
