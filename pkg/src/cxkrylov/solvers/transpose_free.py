"""Transpose-free Lanczos-type methods: CGS, BiCGSTAB, TFQMR, GPBiCG(m,n).

All four only multiply by A. Preconditioning is applied on the right, so the
residual each recurrence carries is the residual of the original system.
The shadow residual is ``r0`` itself.
"""

import numpy as np

from ..core import MethodId, Status
from ..numerics import dotc, norm2
from ._base import method_entry

__all__ = ["cgs", "bicgstab", "tfqmr", "gpbicg"]


@method_entry(MethodId.CGS)
def cgs(ctx):
    """Conjugate Gradient Squared. Two products with A per iteration."""
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    rt = r.copy()
    rho = dotc(rt, r)
    u = r.copy()
    p = r.copy()
    q = ctx.zeros()
    rnorm = ctx.r0norm
    while True:
        k = ctx.step()
        v = op.apply(p)
        sigma = ctx.divisor("sigma", dotc(rt, v), norm2(rt) * norm2(v))
        alpha = rho / sigma
        q[:] = u - alpha * v
        uq = u + q
        x += alpha * uq
        r -= alpha * op.apply(uq)
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rho_new = dotc(rt, r)
        beta = rho_new / ctx.divisor("rho", rho, norm2(rt) * rnorm)
        rho = rho_new
        u = r + beta * q
        p = u + beta * (q + beta * p)


@method_entry(MethodId.BICGSTAB)
def bicgstab(ctx):
    """BiCGSTAB (van der Vorst). Two products with A per iteration.

    Convergence is also tested after the BiCG half step; an iteration that
    stops there spends a single product. The update order matches
    :func:`bicgstab_l` so that BiCGstab(1) reproduces this iteration
    exactly.
    """
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    rt = r.copy()
    rtnorm = norm2(rt)
    rho = dotc(rt, r)
    p = r.copy()
    while True:
        k = ctx.step()
        v = op.apply(p)
        alpha = rho / ctx.divisor("<r0, v>", dotc(rt, v), rtnorm * norm2(v))
        s = r - alpha * v
        x += alpha * p
        snorm = norm2(s)
        if ctx.converged(snorm):
            ctx.record(k, snorm)
            return x, Status.CONVERGED
        t = op.apply(s)
        tt = ctx.divisor("<t, t>", dotc(t, t), norm2(t) ** 2)
        omega = dotc(t, s) / tt
        ctx.divisor("omega", omega, snorm / np.sqrt(tt.real))
        x += omega * s
        r = s - omega * t
        p -= omega * v
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rho_new = dotc(rt, r)
        ctx.divisor("rho", rho_new, rtnorm * rnorm)
        beta = (rho_new / rho) * (alpha / omega)
        rho = rho_new
        p = r + beta * p


@method_entry(MethodId.TFQMR)
def tfqmr(ctx):
    """Transpose-free QMR (Freund).

    One iteration is a pair of half steps and costs two products with A,
    plus one product before the loop. TFQMR does not carry a residual
    vector; the recorded norm is the standard bound ``sqrt(m + 1) * tau``
    on ``||r_m||`` after half step m.
    """
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r0 = ctx.y
    rt = r0.copy()
    rtnorm = norm2(rt)
    w = r0.copy()
    u = r0.copy()
    v = op.apply(u)
    Au = v.copy()
    d = ctx.zeros()
    tau = ctx.r0norm
    theta = 0.0
    eta = 0.0
    rho = dotc(rt, r0)
    alpha = 0.0
    m = 0
    while True:
        k = ctx.step()
        alpha = rho / ctx.divisor("<r0, v>", dotc(rt, v), rtnorm * norm2(v))
        u_next = u - alpha * v
        for half in range(2):
            if half == 1:
                u = u_next
                Au = op.apply(u)
            w -= alpha * Au
            d = u + (theta ** 2 / alpha) * eta * d
            theta = norm2(w) / tau
            c = 1.0 / np.sqrt(1.0 + theta ** 2)
            tau = tau * theta * c
            eta = c ** 2 * alpha
            x += eta * d
            m += 1
            bound = np.sqrt(m + 1.0) * tau
            if ctx.converged(bound):
                ctx.record(k, bound)
                return x, Status.CONVERGED
        ctx.record(k, bound)
        rho_new = dotc(rt, w)
        beta = rho_new / ctx.divisor("rho", rho, rtnorm * norm2(w))
        rho = rho_new
        u_new = w + beta * u
        Au_new = op.apply(u_new)
        v = Au_new + beta * (Au + beta * v)
        u, Au = u_new, Au_new


@method_entry(MethodId.GPBICG)
def gpbicg(ctx):
    """GPBiCG(m,n): cycles of `gp_m` BiCGSTAB-type steps then `gp_n`
    GPBiCG-type steps (Zhang's product-type recurrence).

    A BiCGSTAB-type step fixes ``eta = 0`` and takes the one-parameter
    minimal residual ``zeta``; a GPBiCG-type step minimizes the residual
    over both ``zeta`` and ``eta``. The first step is always BiCGSTAB-type.
    Two products with A per iteration in either phase. As in
    :func:`bicgstab`, convergence is also tested after the BiCG half step.
    """
    cfg = ctx.cfg
    cycle = cfg.gp_m + cfg.gp_n
    op = ctx.op
    x = ctx.keep(ctx.zeros())
    r = ctx.y.copy()
    rt = r.copy()
    rtnorm = norm2(rt)
    rho = dotc(rt, r)
    p = ctx.zeros()
    u = ctx.zeros()
    z = ctx.zeros()
    w = ctx.zeros()
    t_prev = ctx.zeros()
    beta = 0.0
    step = 0
    while True:
        k = ctx.step()
        p = r + beta * (p - u)
        q = op.apply(p)
        alpha = rho / ctx.divisor("<r0, Ap>", dotc(rt, q), rtnorm * norm2(q))
        t = r - alpha * q
        tnorm = norm2(t)
        if ctx.converged(tnorm):
            x += alpha * p
            ctx.record(k, tnorm)
            return x, Status.CONVERGED
        yv = t_prev - t - alpha * w
        c = op.apply(t)
        cc = dotc(c, c).real
        ctx.divisor("<At, At>", cc, norm2(c) ** 2)
        ct = dotc(c, t)
        if step == 0 or (step % cycle) < cfg.gp_m:
            zeta = ct / cc
            eta = 0.0
        else:
            yy = dotc(yv, yv).real
            cy = dotc(c, yv)
            yt = dotc(yv, t)
            det = cc * yy - abs(cy) ** 2
            ctx.divisor("det", det, cc * yy)
            zeta = (yy * ct - cy * yt) / det
            eta = (cc * yt - np.conj(cy) * ct) / det
        ctx.divisor("zeta", zeta, tnorm / np.sqrt(cc))
        u = zeta * q + eta * (t_prev - r + beta * u)
        z = zeta * r + eta * z - alpha * u
        x += alpha * p + z
        r = t - eta * yv - zeta * c
        rnorm = norm2(r)
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x, Status.CONVERGED
        rho_new = dotc(rt, r)
        ctx.divisor("rho", rho_new, rtnorm * rnorm)
        beta = (alpha / zeta) * (rho_new / rho)
        rho = rho_new
        w = c + beta * q
        t_prev = t
        step += 1
