"""Krylov-subspace solvers for complex linear systems ``A x = y``.

The operator is only accessed through matrix-vector products, so any
:class:`LinearOperator` works, including matrix-free ones.

>>> import numpy as np
>>> from cxkrylov import DenseMatrix, SolverConfig, solve
>>> A = DenseMatrix(np.diag([1 + 1j, 2.0, 3 - 1j]))
>>> out = solve("bicgstab", A, np.ones(3), SolverConfig(epsilon_err=1e-12))
>>> out.status.value
'Converged'
"""

from .core import (
    METHODS,
    MethodId,
    MethodInfo,
    Side,
    SolverConfig,
    SolverOutcome,
    Status,
    StopMode,
    finalize,
    stopping_test,
)
from .exceptions import (
    BreakdownError,
    CapabilityError,
    DimensionError,
    InvalidInputError,
    KrylovError,
    MatrixMarketError,
    SingularMatrixError,
    UnsupportedFormatError,
)
from .numerics import Precision, dotc, dotu, norm2
from .operator import (
    CountingOperator,
    CsrMatrix,
    DenseMatrix,
    FunctionOperator,
    IdentityOperator,
    LinearOperator,
    aslinearoperator,
    check_complex_symmetric,
)
from .oracle import lu_factor, lu_solve, rel_residual
from .precond import (
    IdentityPreconditioner,
    Ilu0Preconditioner,
    JacobiPreconditioner,
    Preconditioner,
    apply_precond,
    build_ilu0,
    build_jacobi,
)
from .solvers import (
    solve,
    solve_bicgstab_l,
    solve_gmres,
    solve_ilucg,
    solve_normal,
    solve_shadow,
    solve_symmetric,
    solve_transpose_free,
)

__version__ = "0.1.0"
