"""Two-sided Lanczos methods: BiCG, QMR, BiCOR and CORS.

BiCG, QMR and BiCOR drive a shadow sequence with A^H every iteration. CORS
is the squared (transpose-free) variant of BiCOR and uses A^H only to seed
its shadow residual. BiCG and QMR shadow with ``r0``; BiCOR and CORS seed
the shadow with ``A^H r0`` so that the first recurrence scalar is
``||A r0||^2`` in BiCOR's A-biorthogonality.
"""

import numpy as np

from ..core import MethodId, Status
from ..numerics import dotc, norm2
from ._base import method_entry

__all__ = ["bicg", "qmr", "bicor", "cors"]


@method_entry(MethodId.BICG)
def bicg(ctx):
    """Biconjugate gradients. One product with A and one with A^H per iteration."""
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    rt = r.copy()
    p = r.copy()
    pt = rt.copy()
    rho = dotc(rt, r)
    while True:
        k = ctx.step()
        q = op.apply(p)
        qt = op.apply_hermitian(pt)
        alpha = rho / ctx.divisor("<p~, Ap>", dotc(pt, q), norm2(pt) * norm2(q))
        x += alpha * p
        r -= alpha * q
        rt -= np.conj(alpha) * qt
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rho_new = dotc(rt, r)
        ctx.divisor("rho", rho_new, norm2(rt) * rnorm)
        beta = rho_new / rho
        rho = rho_new
        p = r + beta * p
        pt = rt + np.conj(beta) * pt


@method_entry(MethodId.QMR)
def qmr(ctx):
    """Quasi-minimal residual with coupled two-term recurrences, no look-ahead.

    The residual is updated alongside the iterate, so the recorded norm is
    ``||r_k||`` rather than the quasi-residual bound.
    """
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    vt = r.copy()
    rho = norm2(vt)
    wt = r.copy()
    xi = norm2(wt)
    gamma_old = 1.0
    eta = -1.0
    theta_old = 0.0
    eps_old = 1.0
    p = q = d = s = None
    while True:
        k = ctx.step()
        ctx.divisor("rho", rho, ctx.r0norm)
        ctx.divisor("xi", xi, ctx.r0norm)
        v = vt / rho
        w = wt / xi
        delta = ctx.divisor("delta", dotc(w, v), 1.0)
        if k == 1:
            p = v.copy()
            q = w.copy()
        else:
            p = v - (xi * delta / eps_old) * p
            q = w - np.conj(rho * delta / eps_old) * q
        pt = op.apply(p)
        eps_new = ctx.divisor("epsilon", dotc(q, pt), norm2(q) * norm2(pt))
        beta = eps_new / delta
        vt = pt - beta * v
        rho_new = norm2(vt)
        wt = op.apply_hermitian(q) - np.conj(beta) * w
        xi = norm2(wt)
        theta = rho_new / (gamma_old * abs(beta))
        gamma = 1.0 / np.sqrt(1.0 + theta ** 2)
        eta = -eta * rho * gamma ** 2 / (beta * gamma_old ** 2)
        if k == 1:
            d = eta * p
            s = eta * pt
        else:
            c = (theta_old * gamma) ** 2
            d = eta * p + c * d
            s = eta * pt + c * s
        x += d
        r -= s
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rho = rho_new
        gamma_old = gamma
        theta_old = theta
        eps_old = eps_new


@method_entry(MethodId.BICOR)
def bicor(ctx):
    """Biconjugate A-orthogonal residual method.

    Residuals are A-biorthogonal to the shadow residuals. One product with A
    (for ``A r``) and one with A^H (for the shadow direction) per iteration.
    """
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    rs = op.apply_hermitian(r)
    Ar = op.apply(r)
    p = r.copy()
    ps = rs.copy()
    q = Ar.copy()
    qs = op.apply_hermitian(ps)
    rho = dotc(rs, Ar)
    while True:
        k = ctx.step()
        ctx.divisor("rho", rho, norm2(rs) * norm2(Ar))
        alpha = rho / ctx.divisor("<A^H p*, Ap>", dotc(qs, q), norm2(qs) * norm2(q))
        x += alpha * p
        r -= alpha * q
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rs -= np.conj(alpha) * qs
        Ar = op.apply(r)
        rho_new = dotc(rs, Ar)
        beta = rho_new / rho
        rho = rho_new
        p = r + beta * p
        ps = rs + np.conj(beta) * ps
        q = Ar + beta * q
        qs = op.apply_hermitian(ps)


@method_entry(MethodId.CORS)
def cors(ctx):
    """Conjugate A-orthogonal residual squared.

    The BiCOR polynomials squared, CGS-style. Besides ``r``, ``u``, ``p``,
    ``q`` the method carries their images under A so that every iteration
    costs exactly two products with A (``A (A p)`` and ``A r``).
    """
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    rs = op.apply_hermitian(r)
    rsnorm = norm2(rs)
    rh = op.apply(r)
    rho = dotc(rs, rh)
    u = r.copy()
    uh = rh.copy()
    p = r.copy()
    v = rh.copy()
    q = ctx.zeros()
    qh = ctx.zeros()
    while True:
        k = ctx.step()
        ctx.divisor("rho", rho, rsnorm * norm2(rh))
        c = op.apply(v)
        alpha = rho / ctx.divisor("<r*, A^2 p>", dotc(rs, c), rsnorm * norm2(c))
        q = u - alpha * v
        qh = uh - alpha * c
        x += alpha * (u + q)
        r -= alpha * (uh + qh)
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rh = op.apply(r)
        rho_new = dotc(rs, rh)
        beta = rho_new / rho
        rho = rho_new
        u = r + beta * q
        uh = rh + beta * qh
        p = u + beta * (q + beta * p)
        v = uh + beta * (qh + beta * v)
