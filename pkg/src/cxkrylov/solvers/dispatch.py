"""Family entry points and the unified :func:`solve` dispatcher."""

from ..core import MethodId
from ..exceptions import InvalidInputError
from .bicgstabl import bicgstab_l
from .gmres import gmres
from .ilucg import ilucg
from .normal import cgne, cgnr
from .shadow import bicg, bicor, cors, qmr
from .symmetric import cocg, cocr, csym
from .transpose_free import bicgstab, cgs, gpbicg, tfqmr

__all__ = [
    "SOLVERS",
    "solve",
    "solve_transpose_free",
    "solve_shadow",
    "solve_symmetric",
    "solve_normal",
    "solve_gmres",
    "solve_bicgstab_l",
    "solve_ilucg",
]

SOLVERS = {
    MethodId.BICG: bicg,
    MethodId.CGS: cgs,
    MethodId.BICGSTAB: bicgstab,
    MethodId.BICGSTABL: bicgstab_l,
    MethodId.TFQMR: tfqmr,
    MethodId.QMR: qmr,
    MethodId.GPBICG: gpbicg,
    MethodId.BICOR: bicor,
    MethodId.CORS: cors,
    MethodId.COCG: cocg,
    MethodId.COCR: cocr,
    MethodId.CSYM: csym,
    MethodId.CGNE: cgne,
    MethodId.CGNR: cgnr,
    MethodId.GMRES: gmres,
    MethodId.ILUCG: ilucg,
}

_TRANSPOSE_FREE = {MethodId.CGS, MethodId.BICGSTAB, MethodId.TFQMR, MethodId.GPBICG}
_SHADOW = {MethodId.BICG, MethodId.QMR, MethodId.BICOR, MethodId.CORS}
_SYMMETRIC = {MethodId.COCG, MethodId.COCR, MethodId.CSYM}
_NORMAL = {MethodId.CGNE, MethodId.CGNR}


def _family(allowed, method):
    method = MethodId.parse(method)
    if method not in allowed:
        names = ", ".join(sorted(m.value for m in allowed))
        raise InvalidInputError(f"{method.value} is not one of {names}")
    return SOLVERS[method]


def solve_transpose_free(method, A, y, cfg=None, M=None):
    return _family(_TRANSPOSE_FREE, method)(A, y, cfg, M)


def solve_shadow(method, A, y, cfg=None, M=None):
    return _family(_SHADOW, method)(A, y, cfg, M)


def solve_symmetric(method, A, y, cfg=None, M=None):
    return _family(_SYMMETRIC, method)(A, y, cfg, M)


def solve_normal(variant, A, y, cfg=None, M=None):
    return _family(_NORMAL, variant)(A, y, cfg, M)


def solve_gmres(A, y, cfg=None, M=None):
    return gmres(A, y, cfg, M)


def solve_bicgstab_l(A, y, cfg=None, M=None):
    return bicgstab_l(A, y, cfg, M)


def solve_ilucg(A, y, cfg=None):
    return ilucg(A, y, cfg)


def solve(method, A, y, cfg=None, M=None):
    """Run `method` on ``A x = y``.

    Parameters
    ----------
    method : MethodId or str
        Method name, e.g. ``"bicgstab"`` or ``MethodId.COCR``.
    A : LinearOperator, numpy array or scipy sparse matrix
        ILUCG needs a :class:`CsrMatrix` (or scipy sparse input).
    y : array_like
        Right-hand side.
    cfg : SolverConfig, optional
    M : Preconditioner, optional

    Returns
    -------
    SolverOutcome

    Raises
    ------
    InvalidInputError
        If the inputs cannot satisfy the method's requirements.
    """
    return SOLVERS[MethodId.parse(method)](A, y, cfg, M)
