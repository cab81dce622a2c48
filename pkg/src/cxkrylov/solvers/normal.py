"""CG on the normal equations: CGNR (residual minimizing) and CGNE (error minimizing)."""

from ..core import MethodId, Status
from ..numerics import norm2
from ._base import method_entry

__all__ = ["cgnr", "cgne"]


def _cgnr_loop(ctx, apply, apply_h, rhs, u, true_rnorm=None):
    """CGNR iteration on ``apply`` for right-hand side `rhs`, updating `u` in place.

    Shared with ILUCG, which runs it on the ILU-scaled operator and reports
    the residual of the original system through `true_rnorm`.
    """
    r = rhs.copy()
    s = apply_h(r)
    p = s.copy()
    gamma = norm2(s) ** 2
    while True:
        k = ctx.step()
        ctx.divisor("||A^H r||^2", gamma, norm2(r) ** 2)
        q = apply(p)
        qq = norm2(q) ** 2
        alpha = gamma / ctx.divisor("||A p||^2", qq, qq + norm2(p) ** 2)
        u += alpha * p
        r -= alpha * q
        rnorm = norm2(r) if true_rnorm is None else true_rnorm(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return u, Status.CONVERGED
        s = apply_h(r)
        gamma_new = norm2(s) ** 2
        beta = gamma_new / gamma
        gamma = gamma_new
        p = s + beta * p


@method_entry(MethodId.CGNR)
def cgnr(ctx):
    """CG on ``A^H A x = A^H y``.

    Minimizes ``||y - A x_k||`` over the Krylov space of ``A^H A``, so the
    residual norm never increases. One product with A and one with A^H per
    iteration, plus one A^H product up front.
    """
    op = ctx.op
    return _cgnr_loop(ctx, op.apply, op.apply_hermitian, ctx.y, ctx.keep(ctx.zeros()))


@method_entry(MethodId.CGNE)
def cgne(ctx):
    """CG on ``A A^H w = y`` with ``x = A^H w`` (Craig's method).

    Minimizes the error ``||x* - x_k||``; the residual may oscillate.
    """
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    p = op.apply_hermitian(r)
    rho = norm2(r) ** 2
    while True:
        k = ctx.step()
        pp = norm2(p) ** 2
        alpha = rho / ctx.divisor("||p||^2", pp, rho)
        x += alpha * p
        r -= alpha * op.apply(p)
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rho_new = rnorm ** 2
        beta = rho_new / rho
        rho = rho_new
        p = op.apply_hermitian(r) + beta * p
