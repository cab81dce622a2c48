"""Matrix-free linear operators.

Solvers only ever see a :class:`LinearOperator`: they call :meth:`apply`
(``A @ x``), :meth:`apply_hermitian` (``A^H @ x``) and, for requirement
checks, :meth:`apply_transpose` (``A^T @ x``, no conjugation). Matrix entries
are never inspected by an iteration.

Two explicit realizations are provided, :class:`DenseMatrix` and
:class:`CsrMatrix`, plus :class:`FunctionOperator` for user-supplied
``matvec``/``cmatvec`` callables.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .exceptions import CapabilityError, DimensionError, InvalidInputError
from .numerics import machine_epsilon, working_dtype

__all__ = [
    "LinearOperator",
    "FunctionOperator",
    "IdentityOperator",
    "DenseMatrix",
    "CsrMatrix",
    "CountingOperator",
    "check_complex_symmetric",
    "aslinearoperator",
]


class LinearOperator:
    """Abstract square operator of dimension `n`.

    Subclasses implement ``_matvec`` and, when available, ``_rmatvec``
    (the conjugate-transpose product). ``apply_transpose`` defaults to
    ``conj(A^H conj(x))`` so two routines are enough for every method.

    Parameters
    ----------
    n : int
        Dimension.
    dtype : numpy dtype
        Scalar type of the operator's entries.
    supports_hermitian : bool
        Whether ``apply_hermitian`` is available.
    declared_symmetric : bool
        Claim that ``A == A^T`` (unconjugated). Not verified here.
    """

    def __init__(self, n, dtype=np.complex128, supports_hermitian=True,
                 declared_symmetric=False):
        n = int(n)
        if n < 1:
            raise DimensionError(f"operator dimension must be >= 1, got {n}")
        self.n = n
        self.dtype = working_dtype(dtype)
        self.supports_hermitian = bool(supports_hermitian)
        self.declared_symmetric = bool(declared_symmetric)

    @property
    def shape(self):
        return (self.n, self.n)

    @property
    def supports_transpose(self):
        return self.supports_hermitian or type(self)._tmatvec is not LinearOperator._tmatvec

    def _matvec(self, x):
        raise NotImplementedError

    def _rmatvec(self, x):
        raise NotImplementedError

    def _tmatvec(self, x):
        return np.conj(self._rmatvec(np.conj(x)))

    def _check(self, x):
        x = np.asarray(x)
        if x.shape != (self.n,):
            raise DimensionError(
                f"operator of dimension {self.n} applied to vector of shape {x.shape}")
        return x

    def _cast(self, out, x):
        return np.asarray(out, dtype=working_dtype(self.dtype, x.dtype)).reshape(self.n)

    def apply(self, x):
        x = self._check(x)
        return self._cast(self._matvec(x), x)

    def apply_hermitian(self, x):
        if not self.supports_hermitian:
            raise CapabilityError(f"{type(self).__name__} does not provide A^H products")
        x = self._check(x)
        return self._cast(self._rmatvec(x), x)

    def apply_transpose(self, x):
        if not self.supports_transpose:
            raise CapabilityError(f"{type(self).__name__} does not provide A^T products")
        x = self._check(x)
        return self._cast(self._tmatvec(x), x)

    def __matmul__(self, x):
        return self.apply(x)

    def __repr__(self):
        return f"<{type(self).__name__} n={self.n} dtype={self.dtype}>"


class FunctionOperator(LinearOperator):
    """Operator defined by user callables.

    ``cmatvec`` computes ``A^H x``; ``tmatvec`` is optional and overrides the
    default derived from ``cmatvec``. ``symmetric=True`` is taken on trust.
    """

    def __init__(self, n, matvec, cmatvec=None, tmatvec=None,
                 dtype=np.complex128, symmetric=False):
        super().__init__(n, dtype, supports_hermitian=cmatvec is not None,
                         declared_symmetric=symmetric)
        self._mv = matvec
        self._cmv = cmatvec
        self._tmv = tmatvec

    @property
    def supports_transpose(self):
        return self._cmv is not None or self._tmv is not None

    def _matvec(self, x):
        return self._mv(x)

    def _rmatvec(self, x):
        return self._cmv(x)

    def _tmatvec(self, x):
        if self._tmv is not None:
            return self._tmv(x)
        return np.conj(self._cmv(np.conj(x)))


class IdentityOperator(LinearOperator):
    def __init__(self, n, dtype=np.complex128):
        super().__init__(n, dtype, supports_hermitian=True, declared_symmetric=True)

    def _matvec(self, x):
        return x.copy()

    _rmatvec = _matvec
    _tmatvec = _matvec


def _symmetry_gap(a):
    """Return (max|A - A^T|, max|A|) for a dense or scipy-sparse matrix."""
    if sp.issparse(a):
        d = abs(a - a.T)
        gap = d.max() if d.nnz else 0.0
        scale = abs(a).max() if a.nnz else 0.0
        return float(gap), float(scale)
    a = np.asarray(a)
    if a.size == 0:
        return 0.0, 0.0
    return float(np.max(np.abs(a - a.T))), float(np.max(np.abs(a)))


def check_complex_symmetric(m, tol=0.0):
    """Test ``max|A[i,j] - A[j,i]| <= tol * max|A|`` (no conjugation).

    Hermitian matrices with nonreal off-diagonal entries fail this test.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if isinstance(m, DenseMatrix):
        a = m.array
    elif isinstance(m, CsrMatrix):
        a = m.scipy
    else:
        a = m if sp.issparse(m) else np.asarray(m)
    gap, scale = _symmetry_gap(a)
    return gap <= tol * scale


class DenseMatrix(LinearOperator):
    """Dense ``n x n`` matrix operator (row-major numpy array).

    Parameters
    ----------
    array : array_like
        Square matrix.
    symmetric : bool
        Declare complex symmetry. With ``verify=True`` the claim is checked
        with :func:`check_complex_symmetric` at tolerance `sym_tol`.
    """

    def __init__(self, array, symmetric=False, verify=True, sym_tol=None):
        a = np.asarray(array)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"dense matrix must be square, got shape {a.shape}")
        dtype = working_dtype(a.dtype)
        a = np.ascontiguousarray(a, dtype=dtype)
        if not np.all(np.isfinite(a)):
            raise InvalidInputError("dense matrix has non-finite entries")
        super().__init__(a.shape[0], dtype, supports_hermitian=True,
                         declared_symmetric=symmetric)
        if symmetric and verify:
            tol = 100 * machine_epsilon(dtype) if sym_tol is None else sym_tol
            if not check_complex_symmetric(a, tol):
                raise InvalidInputError("matrix declared symmetric but A != A^T")
        self.array = a

    @property
    def nnz(self):
        return int(np.count_nonzero(self.array))

    def to_dense(self):
        return self.array.copy()

    def _matvec(self, x):
        return self.array @ x

    def _rmatvec(self, x):
        return self.array.conj().T @ x

    def _tmatvec(self, x):
        return self.array.T @ x


class CsrMatrix(LinearOperator):
    """Square compressed-sparse-row matrix in canonical form.

    Canonical means ``row_offsets[0] == 0``, ``row_offsets[n] == nnz`` and
    strictly increasing column indices within each row. Use
    :meth:`from_coo` or :meth:`from_dense` to build one from unsorted or
    duplicated entries.
    """

    def __init__(self, row_offsets, col_indices, values, n, symmetric=False,
                 verify=True, sym_tol=None):
        ptr = np.asarray(row_offsets, dtype=np.int64)
        idx = np.asarray(col_indices, dtype=np.int64)
        vals = np.asarray(values)
        n = int(n)
        dtype = working_dtype(vals.dtype)
        vals = np.asarray(vals, dtype=dtype)
        _validate_csr(ptr, idx, vals, n)
        super().__init__(n, dtype, supports_hermitian=True, declared_symmetric=symmetric)
        self.row_offsets = ptr
        self.col_indices = idx
        self.values = vals
        self.scipy = sp.csr_matrix((vals, idx, ptr), shape=(n, n))
        self._h = self.scipy.conj().T.tocsr()
        self._t = self.scipy.T.tocsr()
        if symmetric and verify:
            tol = 100 * machine_epsilon(dtype) if sym_tol is None else sym_tol
            if not check_complex_symmetric(self.scipy, tol):
                raise InvalidInputError("matrix declared symmetric but A != A^T")

    @classmethod
    def from_coo(cls, rows, cols, vals, n, symmetric=False, verify=True):
        """Build from coordinate triplets; duplicates are summed."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals)
        n = int(n)
        if rows.size and (rows.min() < 0 or rows.max() >= n or cols.min() < 0 or cols.max() >= n):
            raise DimensionError("coordinate index out of range")
        dtype = working_dtype(vals.dtype)
        m = sp.coo_matrix((vals.astype(dtype), (rows, cols)), shape=(n, n)).tocsr()
        m.sum_duplicates()
        m.sort_indices()
        return cls(m.indptr, m.indices, m.data, n, symmetric=symmetric, verify=verify)

    @classmethod
    def from_dense(cls, array, symmetric=False, verify=True, keep_zeros=False):
        a = np.asarray(array)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"matrix must be square, got shape {a.shape}")
        if keep_zeros:
            rows, cols = np.indices(a.shape)
            return cls.from_coo(rows.ravel(), cols.ravel(), a.ravel(), a.shape[0],
                                symmetric=symmetric, verify=verify)
        rows, cols = np.nonzero(a)
        return cls.from_coo(rows, cols, a[rows, cols], a.shape[0],
                            symmetric=symmetric, verify=verify)

    @property
    def nnz(self):
        return int(self.values.size)

    def diagonal(self):
        return self.scipy.diagonal()

    def to_dense(self):
        return self.scipy.toarray()

    def _matvec(self, x):
        return self.scipy @ x

    def _rmatvec(self, x):
        return self._h @ x

    def _tmatvec(self, x):
        return self._t @ x

    def __eq__(self, other):
        if not isinstance(other, CsrMatrix):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.row_offsets, other.row_offsets)
                and np.array_equal(self.col_indices, other.col_indices)
                and np.array_equal(self.values, other.values))

    __hash__ = None


def _validate_csr(ptr, idx, vals, n):
    if n < 1:
        raise DimensionError("CSR dimension must be >= 1")
    if ptr.shape != (n + 1,):
        raise DimensionError(f"row_offsets must have length n+1={n + 1}")
    if ptr[0] != 0:
        raise InvalidInputError("row_offsets[0] must be 0")
    if np.any(np.diff(ptr) < 0):
        raise InvalidInputError("row_offsets must be nondecreasing")
    nnz = int(ptr[-1])
    if idx.shape != (nnz,) or vals.shape != (nnz,):
        raise InvalidInputError("row_offsets[n] must equal len(col_indices) == len(values)")
    if nnz and (idx.min() < 0 or idx.max() >= n):
        raise InvalidInputError("column index out of range")
    for i in range(n):
        row = idx[ptr[i]:ptr[i + 1]]
        if row.size > 1 and np.any(np.diff(row) <= 0):
            raise InvalidInputError(f"row {i}: column indices not strictly increasing")
    if not np.all(np.isfinite(vals)):
        raise InvalidInputError("CSR matrix has non-finite values")


class CountingOperator(LinearOperator):
    """Wrap an operator and count every product it performs."""

    def __init__(self, op):
        super().__init__(op.n, op.dtype, supports_hermitian=op.supports_hermitian,
                         declared_symmetric=op.declared_symmetric)
        self.op = op
        self.matvecs = 0
        self.rmatvecs = 0
        self.tmatvecs = 0

    @property
    def supports_transpose(self):
        return self.op.supports_transpose

    def reset(self):
        self.matvecs = self.rmatvecs = self.tmatvecs = 0

    def _matvec(self, x):
        self.matvecs += 1
        return self.op.apply(x)

    def _rmatvec(self, x):
        self.rmatvecs += 1
        return self.op.apply_hermitian(x)

    def _tmatvec(self, x):
        self.tmatvecs += 1
        return self.op.apply_transpose(x)


def aslinearoperator(a, symmetric=False):
    """Return `a` as a :class:`LinearOperator`.

    Operators pass through unchanged; numpy arrays become :class:`DenseMatrix`
    and scipy sparse matrices become :class:`CsrMatrix`.
    """
    if isinstance(a, LinearOperator):
        return a
    if sp.issparse(a):
        m = sp.csr_matrix(a)
        m.sum_duplicates()
        m.sort_indices()
        return CsrMatrix(m.indptr, m.indices, m.data, m.shape[0], symmetric=symmetric)
    return DenseMatrix(a, symmetric=symmetric)
