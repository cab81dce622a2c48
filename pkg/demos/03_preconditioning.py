# coding: utf-8

# # Preconditioning and matrix-free operators

# In[1]:

import numpy as np

from cxkrylov import (
    CsrMatrix,
    FunctionOperator,
    SolverConfig,
    build_ilu0,
    build_jacobi,
    solve,
)


# A sparse, badly scaled matrix: a random symmetric pattern plus a diagonal
# that grows along the rows.

# In[2]:

rng = np.random.default_rng(3)
n = 64
B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
B[rng.random((n, n)) > 0.08] = 0
A = B + B.T + np.diag(np.linspace(1, 60, n) * (1 + 0.2j))
csr = CsrMatrix.from_dense(A)
y = A @ np.ones(n)
cfg = SolverConfig(epsilon_err=1e-10, maxit=2000)


# GMRES and BiCGSTAB with no preconditioner, Jacobi, and ILU(0). Every
# method applies its preconditioner on a fixed side, reported in the outcome.

# In[3]:

for name, M in (("none", None), ("jacobi", build_jacobi(csr)), ("ilu0", build_ilu0(csr))):
    for method in ("gmres", "bicgstab"):
        out = solve(method, csr, y, cfg, M)
        print(f"{method:9s} {name:7s} {out.iterations:4d} it  side={out.precond_side.value}")


# ILUCG builds its own ILU(0) and runs CG on the normal equations of the
# split-preconditioned system.

# In[4]:

out = solve("ilucg", csr, y, cfg)
print("ilucg", out.status.value, out.iterations)


# ## Matrix-free
#
# Any pair of callables works. Here A is never formed: it is the 1-D
# Laplacian plus a complex shift, applied by differences.

# In[5]:

def lap(v):
    w = (2 + 0.3j) * v
    w[1:] -= v[:-1]
    w[:-1] -= v[1:]
    return w


def lap_h(v):
    w = (2 - 0.3j) * v
    w[1:] -= v[:-1]
    w[:-1] -= v[1:]
    return w


op = FunctionOperator(200, lap, cmatvec=lap_h, symmetric=True)
rhs = np.ones(200, dtype=complex)
for method in ("cocr", "qmr", "gmres"):
    out = solve(method, op, rhs, cfg)
    print(f"{method:6s} {out.status.value} {out.iterations}")
