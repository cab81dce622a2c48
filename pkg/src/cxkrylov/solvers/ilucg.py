"""ILUCG: ILU(0)-preconditioned CG on the normal equations.

With ``A ~ L U`` from :func:`build_ilu0`, CGNR is run on the split system
``(L^-1 A U^-1) w = L^-1 y`` and ``x = U^-1 w``. CGNR minimizes the
Euclidean norm of the preconditioned residual ``L^-1 (y - A x)``; the norm
recorded and tested is that of the true residual ``y - A x``, recovered as
``L`` times the preconditioned one (a sparse product, not an operator
application).
"""

from ..core import MethodId
from ..numerics import norm2
from ..precond import build_ilu0
from ._base import method_entry
from .normal import _cgnr_loop

__all__ = ["ilucg"]


@method_entry(MethodId.ILUCG)
def ilucg(ctx):
    """ILUCG for a :class:`CsrMatrix`. One A and one A^H product per iteration.

    A failed factorization is reported as a breakdown before any iteration.
    """
    ilu = build_ilu0(ctx.A)
    A = ctx.counter

    def apply(v):
        return ilu.solve_lower(A.apply(ilu.solve_upper(v)))

    def apply_h(v):
        return ilu.solve_upper_hermitian(A.apply_hermitian(ilu.solve_lower_hermitian(v)))

    def true_rnorm(r_hat):
        return norm2(ilu.L @ r_hat)

    w = ctx.zeros()
    ctx.keep(lambda: ilu.solve_upper(w))
    w, status = _cgnr_loop(ctx, apply, apply_h, ilu.solve_lower(ctx.y), w, true_rnorm)
    return ilu.solve_upper(w), status
