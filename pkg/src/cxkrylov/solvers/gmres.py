"""Restarted GMRES(m) with modified Gram-Schmidt Arnoldi and Givens QR."""

import numpy as np

from ..core import MethodId, Status
from ..numerics import dotc, norm2
from ._base import method_entry
from .symmetric import givens

__all__ = ["gmres"]


@method_entry(MethodId.GMRES)
def gmres(ctx):
    """GMRES restarted every ``cfg.restart_m`` inner steps.

    Iterations count inner (Arnoldi) steps. Each restart after the first
    recomputes the residual, costing one extra product with A. A vanishing
    Hessenberg subdiagonal ends the cycle with the exact projected solution.
    """
    op = ctx.op
    m = int(ctx.cfg.restart_m)
    maxit = int(ctx.cfg.maxit)
    n = ctx.n
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    beta = ctx.r0norm
    V = np.zeros((m + 1, n), dtype=ctx.dtype)
    H = np.zeros((m + 1, m), dtype=ctx.dtype)
    cs = np.zeros(m)
    sn = np.zeros(m, dtype=ctx.dtype)
    while True:
        V[0] = r / beta
        g = np.zeros(m + 1, dtype=ctx.dtype)
        g[0] = beta
        j = 0
        done = False
        status = None
        while j < m:
            if ctx.iterations >= maxit:
                status = Status.MAX_ITERATIONS
                break
            k = ctx.step()
            w = op.apply(V[j])
            wnorm0 = norm2(w)
            for i in range(j + 1):
                H[i, j] = dotc(V[i], w)
                w -= H[i, j] * V[i]
            h_next = norm2(w)
            for i in range(j):
                a, b = H[i, j], H[i + 1, j]
                H[i, j] = cs[i] * a + sn[i] * b
                H[i + 1, j] = -np.conj(sn[i]) * a + cs[i] * b
            cs[j], sn[j], H[j, j] = givens(H[j, j], h_next)
            H[j + 1, j] = 0.0
            g[j + 1] = -np.conj(sn[j]) * g[j]
            g[j] = cs[j] * g[j]
            j += 1
            rnorm = abs(g[j])
            ctx.record(k, rnorm)
            if ctx.converged(rnorm):
                status = Status.CONVERGED
                break
            if h_next <= ctx.eps * wnorm0:
                # happy breakdown: the Krylov space is invariant
                status = Status.CONVERGED
                break
            V[j] = w / h_next
        if j:
            ctx.divisor("H[k, k]", np.min(np.abs(np.diag(H[:j, :j]))), np.max(np.abs(H[:j, :j])))
            yk = _back_substitute(H[:j, :j], g[:j])
            x += yk @ V[:j]
        if status is not None:
            return x, status
        r = ctx.y - op.apply(x)
        beta = norm2(r)
        if ctx.converged(beta):
            return x, Status.CONVERGED


def _back_substitute(R, g):
    k = R.shape[0]
    y = np.zeros(k, dtype=np.result_type(R, g))
    for i in range(k - 1, -1, -1):
        y[i] = (g[i] - R[i, i + 1:] @ y[i + 1:]) / R[i, i]
    return y
