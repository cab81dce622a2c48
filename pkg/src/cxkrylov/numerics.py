"""Precision policy and complex vector primitives.

Every solver works in the precision of its inputs: ``complex64`` (single)
or ``complex128`` (double). Anything else is promoted to the nearest of the
two, so the inner loops only ever see one of these dtypes.
"""

from __future__ import annotations

import enum

import numpy as np

from .exceptions import DimensionError

__all__ = [
    "Precision",
    "working_dtype",
    "machine_epsilon",
    "as_vector",
    "dotc",
    "dotu",
    "norm2",
]


class Precision(enum.Enum):
    SINGLE = "single"
    DOUBLE = "double"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.complex64 if self is Precision.SINGLE else np.complex128)


DEFAULT_PRECISION = Precision.DOUBLE


def working_dtype(*dtypes) -> np.dtype:
    """Return the complex working dtype for a mix of input dtypes.

    Single precision is kept only when every input is single (or narrower);
    one double input promotes the whole solve to double.
    """
    if not dtypes:
        return DEFAULT_PRECISION.dtype
    dt = np.result_type(np.complex64, *dtypes)
    if dt == np.complex64:
        return np.dtype(np.complex64)
    return np.dtype(np.complex128)


def machine_epsilon(dtype) -> float:
    return float(np.finfo(np.dtype(dtype)).eps)


def as_vector(x, dtype=None) -> np.ndarray:
    """Coerce `x` into a 1-D complex array of the working dtype."""
    arr = np.asarray(x)
    if dtype is None:
        dtype = working_dtype(arr.dtype)
    arr = np.asarray(arr, dtype=dtype)
    if arr.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError("vectors must have length >= 1")
    return arr


def _check_lengths(u, v):
    if u.shape != v.shape:
        raise DimensionError(f"length mismatch: {u.shape[0]} vs {v.shape[0]}")


def dotc(u, v):
    """Conjugated inner product ``sum(conj(u) * v)``."""
    u = np.asarray(u)
    v = np.asarray(v)
    _check_lengths(u, v)
    return np.vdot(u, v)


def dotu(u, v):
    """Unconjugated bilinear form ``sum(u * v)``.

    This is the product the complex-symmetric methods (COCG, COCR) are built
    on; it is not positive definite, so ``dotu(u, u)`` may vanish for u != 0.
    """
    u = np.asarray(u)
    v = np.asarray(v)
    _check_lengths(u, v)
    return np.dot(u, v)


def norm2(u) -> float:
    u = np.asarray(u)
    return float(np.sqrt(np.vdot(u, u).real))
