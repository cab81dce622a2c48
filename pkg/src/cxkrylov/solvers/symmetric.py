"""Methods for complex symmetric systems (A == A^T): COCG, COCR, CSYM.

COCG and COCR are CG and CR with the unconjugated bilinear form ``x^T y``.
Since that form is indefinite, ``p^T A p`` can vanish for a nonzero ``p``;
this is reported as a breakdown. Both accept a (complex symmetric)
preconditioner on the left; the residual they carry stays unpreconditioned.

CSYM minimizes the residual over the subspace produced by the conjugate
tridiagonalization ``A Q = conj(Q) T``, where T is complex symmetric
tridiagonal and Q has orthonormal columns.
"""

import numpy as np

from ..core import MethodId, Status
from ..exceptions import BreakdownError
from ..numerics import dotu, norm2
from ._base import method_entry

__all__ = ["cocg", "cocr", "csym", "givens"]


@method_entry(MethodId.COCG)
def cocg(ctx):
    """Conjugate orthogonal conjugate gradients. One product per iteration."""
    op, M = ctx.op, ctx.M
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    z = r if M is None else M.solve(r)
    p = z.copy()
    rho = dotu(r, z)
    while True:
        k = ctx.step()
        ctx.divisor("rho", rho, norm2(r) * norm2(z))
        q = op.apply(p)
        alpha = rho / ctx.divisor("p^T A p", dotu(p, q), norm2(p) * norm2(q))
        x += alpha * p
        r -= alpha * q
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        z = r if M is None else M.solve(r)
        rho_new = dotu(r, z)
        beta = rho_new / rho
        rho = rho_new
        p = z + beta * p


@method_entry(MethodId.COCR)
def cocr(ctx):
    """Conjugate A-orthogonal conjugate residual.

    One product per iteration (``A z``); ``A p`` follows by recurrence. With
    a preconditioner, ``M^{-1} A p`` is carried as well.
    """
    op, M = ctx.op, ctx.M
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    z = r if M is None else M.solve(r)
    p = z.copy()
    Az = op.apply(z)
    Ap = Az.copy()
    MAp = Ap if M is None else M.solve(Ap)
    rho = dotu(z, Az)
    while True:
        k = ctx.step()
        ctx.divisor("rho", rho, norm2(z) * norm2(Az))
        alpha = rho / ctx.divisor("(Ap)^T M^-1 Ap", dotu(MAp, Ap), norm2(MAp) * norm2(Ap))
        x += alpha * p
        r -= alpha * Ap
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        if M is None:
            z = r
        else:
            z = z - alpha * MAp
        Az = op.apply(z)
        rho_new = dotu(z, Az)
        beta = rho_new / rho
        rho = rho_new
        p = z + beta * p
        Ap = Az + beta * Ap
        MAp = Ap if M is None else M.solve(Ap)


def givens(a, b):
    """Complex Givens rotation ``G = [[c, s], [-conj(s), c]]`` with
    ``G @ [a, b] == [r, 0]``. Returns ``(c, s, r)``; c is real."""
    absa = abs(a)
    if absa == 0:
        return 0.0, 1.0 + 0j, complex(b)
    nrm = np.hypot(absa, abs(b))
    phase = a / absa
    return absa / nrm, phase * np.conj(b) / nrm, phase * nrm


@method_entry(MethodId.CSYM)
def csym(ctx):
    """Minimal residual method on the conjugate tridiagonalization.

    One product with A per iteration. The recorded norm is the exact
    residual norm of the small least-squares problem, which is
    nonincreasing.
    """
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    beta1 = ctx.r0norm
    q = np.conj(ctx.y) / beta1
    qbar_prev = ctx.zeros()
    beta_prev = 0.0
    # rotations k-2 and k-1, and direction vectors d_{k-2}, d_{k-1}
    c2, s2 = 1.0, 0j
    c1, s1 = 1.0, 0j
    d2 = ctx.zeros()
    d1 = ctx.zeros()
    g = complex(beta1)
    scale = 0.0
    while True:
        k = ctx.step()
        Aq = op.apply(q)
        qbar = np.conj(q)
        alpha = dotu(q, Aq)
        w = Aq - alpha * qbar - beta_prev * qbar_prev
        beta = norm2(w)
        scale = max(scale, abs(alpha), beta_prev, beta)
        # column k of T is (beta_prev, alpha, beta) on rows k-1, k, k+1
        e_km2 = s2 * beta_prev
        h = c2 * beta_prev
        e_km1 = c1 * h + s1 * alpha
        diag = -np.conj(s1) * h + c1 * alpha
        c, s, rkk = givens(diag, beta)
        if abs(rkk) <= ctx.tiny * scale:
            raise BreakdownError("CSYM: singular tridiagonal projection", name="r_kk")
        d = (q - e_km2 * d2 - e_km1 * d1) / rkk
        gk = c * g
        g = -np.conj(s) * g
        x += gk * d
        rnorm = abs(g)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        if beta <= ctx.eps * scale:
            # invariant subspace: the projected solution is exact
            return x, Status.CONVERGED
        d2, d1 = d1, d
        c2, s2, c1, s1 = c1, s1, c, s
        qbar_prev = qbar
        q = np.conj(w) / beta
        beta_prev = beta
