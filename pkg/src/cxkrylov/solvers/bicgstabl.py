"""BiCGstab(l): l BiCG steps followed by a degree-l minimal residual polynomial.

For ``l >= 2`` two refinements are included:

* the minimal residual polynomial is blended with the degree ``l - 1`` one
  whenever the two residual directions are close to orthogonal
  (|cos| < 0.7), which keeps the BiCG coefficients accurate;
* reliable updates: when the residual has dropped two orders of magnitude
  below its running maximum, it is replaced by the true residual, and the
  iterate is accumulated group-wise into a separate vector.

With ``l == 1`` neither is applied and the iteration performs the same
floating-point operations as :func:`bicgstab`.
"""

import numpy as np

from ..core import MethodId, Status
from ..numerics import dotc, norm2
from ._base import method_entry

__all__ = ["bicgstab_l"]

KAPPA = 0.7
DELTA = 1e-2


def _gram(R):
    m = R.shape[0]
    Z = np.empty((m, m), dtype=R.dtype)
    for i in range(m):
        for j in range(m):
            Z[i, j] = dotc(R[i], R[j])
    return Z


def _mr_coefficients(Z, ell):
    """Coefficients ``y`` (``y[0] == -1``) of the new residual ``-R @ y``."""
    if ell == 1:
        return np.array([-1.0, Z[1, 0] / Z[1, 1]])
    inner = Z[1:ell, 1:ell]
    y0 = np.zeros(ell + 1, dtype=Z.dtype)
    yl = np.zeros(ell + 1, dtype=Z.dtype)
    y0[0] = -1.0
    yl[ell] = -1.0
    y0[1:ell] = np.linalg.solve(inner, Z[1:ell, 0])
    yl[1:ell] = np.linalg.solve(inner, Z[1:ell, ell])
    k0 = np.sqrt(abs(np.vdot(y0, Z @ y0)))
    kl = np.sqrt(abs(np.vdot(yl, Z @ yl)))
    varrho = np.vdot(yl, Z @ y0) / (k0 * kl)
    hat = varrho / abs(varrho) * max(abs(varrho), KAPPA)
    return y0 - (hat * k0 / kl) * yl


@method_entry(MethodId.BICGSTABL)
def bicgstab_l(ctx):
    """BiCGstab(l) with ``l = cfg.ell``; ``2 l`` products with A per outer step.

    A residual replacement costs one extra product and is counted in
    ``SolverOutcome.residual_replacements``.
    """
    ell = int(ctx.cfg.ell)
    reliable = ell > 1
    op = ctx.op
    n = ctx.n
    x = ctx.zeros()
    x_acc = ctx.zeros()
    ctx.keep(lambda: x_acc + x)
    b = ctx.y.copy()
    R = np.zeros((ell + 1, n), dtype=ctx.dtype)
    U = np.zeros((ell + 1, n), dtype=ctx.dtype)
    R[0] = b
    rt = b.copy()
    rtnorm = norm2(rt)
    rho0, alpha, omega = 1.0, 0.0, 1.0
    r0norm = ctx.r0norm
    mx_r = mx_x = r0norm
    while True:
        k = ctx.step()
        for j in range(ell):
            rho1 = dotc(rt, R[j])
            ctx.divisor("rho", rho1, rtnorm * norm2(R[j]))
            if j == 0:
                beta = -((rho1 / rho0) * (alpha / omega))
            else:
                beta = (rho1 / rho0) * alpha
            rho0 = rho1
            U[:j + 1] = R[:j + 1] - beta * U[:j + 1]
            U[j + 1] = op.apply(U[j])
            gamma = ctx.divisor("<r0, A u>", dotc(rt, U[j + 1]), rtnorm * norm2(U[j + 1]))
            alpha = rho0 / gamma
            R[:j + 1] -= alpha * U[1:j + 2]
            x += alpha * U[0]
            rnorm = norm2(R[0])
            if ctx.converged(rnorm):
                ctx.record(k, rnorm)
                return x_acc + x, Status.CONVERGED
            R[j + 1] = op.apply(R[j])
        Z = _gram(R)
        ctx.divisor("det Z", np.linalg.det(Z[1:, 1:]), np.prod(np.abs(np.diag(Z)[1:])))
        y = _mr_coefficients(Z, ell)
        omega = ctx.divisor("omega", y[ell], 0.0)
        for j in range(1, ell + 1):
            x += y[j] * R[j - 1]
        for j in range(1, ell + 1):
            R[0] -= y[j] * R[j]
            U[0] -= y[j] * U[j]
        rnorm = norm2(R[0])
        ctx.record(k, rnorm)
        if ctx.converged(rnorm):
            return x_acc + x, Status.CONVERGED
        if not reliable:
            continue

        mx_r = max(mx_r, rnorm)
        mx_x = max(mx_x, rnorm)
        update_x = rnorm < DELTA * r0norm and r0norm < mx_x
        if (rnorm < DELTA * mx_r and r0norm < mx_r) or update_x:
            R[0] = b - op.apply(x)
            ctx.replacements += 1
            mx_r = norm2(R[0])
            if update_x:
                x_acc += x
                x[:] = 0
                b = R[0].copy()
                mx_x = mx_r
