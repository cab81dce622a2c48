"""Matrix Market coordinate files, right-hand sides, and history reports.

Supported banners::

    %%MatrixMarket matrix coordinate {complex|real} {general|symmetric}

``symmetric`` means ``A == A^T`` with no conjugation: an off-diagonal entry
(i, j) is mirrored to (j, i) unchanged. Hermitian and skew-symmetric files
are rejected. Right-hand sides are plain text with one ``re im`` pair per
line.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .exceptions import MatrixMarketError, UnsupportedFormatError
from .numerics import as_vector
from .operator import CsrMatrix, DenseMatrix, aslinearoperator, check_complex_symmetric

__all__ = [
    "MatrixMarketHeader",
    "HistoryReport",
    "read_matrix_market_header",
    "read_matrix_market",
    "write_matrix_market",
    "read_rhs",
    "write_rhs",
    "generate_rhs",
    "write_history",
    "read_history_json",
]


@dataclass(frozen=True)
class MatrixMarketHeader:
    object: str
    format: str
    field: str
    symmetry: str
    rows: int
    cols: int
    nnz: int


def _fmt(v):
    # repr() gives the shortest string that round-trips a double exactly.
    return repr(float(v))


def _parse_banner(line, lineno):
    parts = line.split()
    if not parts or parts[0].lower() != "%%matrixmarket":
        raise MatrixMarketError("missing %%MatrixMarket banner", lineno)
    if len(parts) != 5:
        raise MatrixMarketError(f"banner needs 4 qualifiers, got {len(parts) - 1}", lineno)
    obj, fmt, fld, sym = (p.lower() for p in parts[1:])
    if obj != "matrix":
        raise UnsupportedFormatError(f"object {obj!r} is not supported", lineno)
    if fmt != "coordinate":
        raise UnsupportedFormatError(f"format {fmt!r} is not supported (coordinate only)", lineno)
    if fld not in ("complex", "real"):
        raise UnsupportedFormatError(f"field {fld!r} is not supported", lineno)
    if sym not in ("general", "symmetric"):
        raise UnsupportedFormatError(f"symmetry {sym!r} is not supported", lineno)
    return obj, fmt, fld, sym


def _read(path):
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise MatrixMarketError("empty file", 1)
    obj, fmt, fld, sym = _parse_banner(lines[0], 1)
    i = 1
    while i < len(lines) and (not lines[i].strip() or lines[i].lstrip().startswith("%")):
        i += 1
    if i == len(lines):
        raise MatrixMarketError("missing size line", i)
    size = lines[i].split()
    try:
        rows, cols, nnz = (int(s) for s in size)
    except ValueError:
        raise MatrixMarketError(f"bad size line {lines[i]!r}", i + 1) from None
    if rows < 1 or cols < 1 or nnz < 0:
        raise MatrixMarketError("dimensions must be positive", i + 1)
    if rows != cols:
        raise UnsupportedFormatError(f"matrix must be square, got {rows}x{cols}", i + 1)
    header = MatrixMarketHeader(obj, fmt, fld, sym, rows, cols, nnz)

    ncols = 4 if fld == "complex" else 3
    I = np.empty(nnz, dtype=np.int64)
    J = np.empty(nnz, dtype=np.int64)
    V = np.empty(nnz, dtype=np.complex128)
    count = 0
    for lineno in range(i + 2, len(lines) + 1):
        text = lines[lineno - 1].strip()
        if not text or text.startswith("%"):
            continue
        if count == nnz:
            raise MatrixMarketError(f"more than {nnz} entries", lineno)
        parts = text.split()
        if len(parts) != ncols:
            raise MatrixMarketError(f"expected {ncols} fields, got {len(parts)}", lineno)
        try:
            r, c = int(parts[0]), int(parts[1])
            re_ = float(parts[2])
            im = float(parts[3]) if ncols == 4 else 0.0
        except ValueError:
            raise MatrixMarketError(f"unparsable entry {text!r}", lineno) from None
        if not (1 <= r <= rows and 1 <= c <= cols):
            raise MatrixMarketError(f"index ({r}, {c}) out of range", lineno)
        if not (math.isfinite(re_) and math.isfinite(im)):
            raise MatrixMarketError("non-finite value", lineno)
        I[count], J[count], V[count] = r - 1, c - 1, complex(re_, im)
        count += 1
    if count != nnz:
        raise MatrixMarketError(f"header announces {nnz} entries, found {count}", len(lines))
    return header, I, J, V


def read_matrix_market_header(path) -> MatrixMarketHeader:
    return _read(path)[0]


def read_matrix_market(path) -> CsrMatrix:
    """Read a coordinate Matrix Market file into a canonical :class:`CsrMatrix`.

    Indices become 0-based, duplicates are summed, real files are promoted
    to complex, and symmetric storage is expanded. A symmetric-tagged file
    yields an operator with ``declared_symmetric=True``.
    """
    header, I, J, V = _read(path)
    symmetric = header.symmetry == "symmetric"
    if symmetric:
        off = I != J
        I, J, V = (np.concatenate([I, J[off]]), np.concatenate([J, I[off]]),
                   np.concatenate([V, V[off]]))
    return CsrMatrix.from_coo(I, J, V, header.rows, symmetric=symmetric, verify=False)


def write_matrix_market(m, path, symmetric=None, comment=None):
    """Write `m` in coordinate complex format.

    Every stored entry is written (explicit zeros included). With
    ``symmetric=True`` only the lower triangle is stored under a
    ``symmetric`` banner; ``None`` uses ``m.declared_symmetric``.
    """
    if not isinstance(m, (CsrMatrix, DenseMatrix)):
        m = aslinearoperator(m)
    if isinstance(m, DenseMatrix):
        m = CsrMatrix.from_dense(m.array)
    if symmetric is None:
        symmetric = m.declared_symmetric
    if symmetric and not check_complex_symmetric(m, 0.0):
        raise ValueError("cannot write a nonsymmetric matrix with a symmetric banner")
    coo = m.scipy.tocoo()
    rows, cols, vals = coo.row, coo.col, coo.data
    if symmetric:
        keep = rows >= cols
        rows, cols, vals = rows[keep], cols[keep], vals[keep]
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"%%MatrixMarket matrix coordinate complex "
                 f"{'symmetric' if symmetric else 'general'}\n")
        if comment:
            for line in str(comment).splitlines():
                fh.write(f"% {line}\n")
        fh.write(f"{m.n} {m.n} {len(vals)}\n")
        for r, c, v in zip(rows, cols, vals):
            fh.write(f"{r + 1} {c + 1} {_fmt(v.real)} {_fmt(v.imag)}\n")


def read_rhs(path):
    """Read a right-hand side: one ``re im`` pair per nonblank line."""
    values = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) != 2:
                raise MatrixMarketError(f"expected 're im', got {text!r}", lineno)
            try:
                values.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise MatrixMarketError(f"unparsable value {text!r}", lineno) from None
    if not values:
        raise MatrixMarketError("empty right-hand side", 1)
    return np.array(values, dtype=np.complex128)


def write_rhs(y, path):
    y = as_vector(y)
    with open(path, "w", encoding="ascii") as fh:
        for v in y:
            fh.write(f"{_fmt(v.real)} {_fmt(v.imag)}\n")


def generate_rhs(A, mode="ones", seed=0):
    """Build a right-hand side for `A`.

    Parameters
    ----------
    mode : {"ones", "seeded"}
        ``"ones"``: ``x* = 1`` and ``y = A x*``; ``x*`` is returned too.
        ``"seeded"``: a standard complex normal vector from `seed`; no ``x*``.

    Returns
    -------
    y, x_star
    """
    op = aslinearoperator(A)
    if mode == "ones":
        x_star = np.ones(op.n, dtype=op.dtype)
        return op.apply(x_star), x_star
    if mode == "seeded":
        rng = np.random.default_rng(seed)
        y = rng.standard_normal(op.n) + 1j * rng.standard_normal(op.n)
        return y.astype(op.dtype), None
    raise ValueError(f"unknown rhs mode {mode!r}")


@dataclass
class HistoryReport:
    method: str
    n: int
    nnz: int
    status: str
    iterations: int
    matvecs: int
    wall_ms: float
    true_rel_residual: float
    history: list = field(default_factory=list)

    @classmethod
    def from_outcome(cls, outcome, n, nnz, wall_ms):
        return cls(outcome.method.value, int(n), int(nnz), outcome.status.value,
                   outcome.iterations, outcome.matvecs + outcome.rmatvecs, float(wall_ms),
                   float(outcome.true_rel_residual),
                   [(int(k), float(r)) for k, r in outcome.history])


def write_history(report: HistoryReport, path, format="csv"):
    """Export a report: CSV with columns ``k,rnorm`` or JSON with every field."""
    fmt = format.lower()
    if fmt == "csv":
        with open(path, "w", newline="", encoding="ascii") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "rnorm"])
            for k, r in report.history:
                w.writerow([int(k), _fmt(r)])
    elif fmt == "json":
        data = asdict(report)
        data["history"] = [[int(k), float(r)] for k, r in report.history]
        for key in ("wall_ms", "true_rel_residual"):
            if not math.isfinite(data[key]):
                data[key] = None
        with open(path, "w", encoding="ascii") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
    else:
        raise ValueError(f"unknown history format {format!r}")


def read_history_json(path) -> HistoryReport:
    with open(path, "r", encoding="ascii") as fh:
        data = json.load(fh)
    data["history"] = [(int(k), float(r)) for k, r in data["history"]]
    for key in ("wall_ms", "true_rel_residual"):
        if data[key] is None:
            data[key] = float("nan")
    return HistoryReport(**data)

