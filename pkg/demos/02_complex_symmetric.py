# coding: utf-8

# # Complex symmetric systems
#
# A complex symmetric matrix satisfies A == A^T with no conjugation. It is not
# Hermitian, so CG does not apply, but the unconjugated bilinear form
# u^T v gives CG-like short recurrences: COCG, COCR and CSYM.

# In[1]:

import numpy as np

from cxkrylov import CsrMatrix, DenseMatrix, InvalidInputError, SolverConfig, dotc, dotu, solve
from cxkrylov.io import generate_rhs


# The two inner products differ on complex vectors. dotu(u, u) is not a norm:

# In[2]:

u = np.array([1, 1j])
print("dotc(u, u) =", dotc(u, u))
print("dotu(u, u) =", dotu(u, u))


# A shifted 1-D Helmholtz operator is a standard complex symmetric test case.

# In[3]:

n = 32
H = np.diag(np.full(n, 1 + 0.05j)) - np.eye(n, k=1) - np.eye(n, k=-1)
A = CsrMatrix.from_dense(H, symmetric=True)
y, _ = generate_rhs(A, "seeded", 0)
cfg = SolverConfig(epsilon_err=1e-10)

runs = {m: solve(m, A, y, cfg) for m in ("cocg", "cocr", "csym")}
for m, out in runs.items():
    print(f"{m:5s} {out.status.value:10s} {out.iterations:3d} it  rel {out.true_rel_residual:.1e}")


# COCG residuals jump around; COCR tends to be smoother. Count the
# iterations where the residual went up:

# In[4]:

def increases(out):
    r = [v for _, v in out.history]
    return sum(b > a for a, b in zip(r, r[1:]))


for m in ("cocg", "cocr"):
    print(m, increases(runs[m]))


# The symmetry requirement is checked. A Hermitian matrix is rejected rather
# than silently giving wrong answers:

# In[5]:

try:
    solve("cocg", DenseMatrix(np.array([[1, 1j], [-1j, 2]])), np.ones(2))
except InvalidInputError as exc:
    print("refused:", exc)
