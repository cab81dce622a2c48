# coding: utf-8

# # Comparing every method on one system
#
# The same table the command-line driver prints, built by hand. Iterations
# are not comparable across methods on their own: BiCGSTAB spends two products
# per iteration and BiCG spends one product with A and one with A^H, so the
# product count is printed too.

# In[1]:

import time

import numpy as np

from cxkrylov import CsrMatrix, MethodId, SolverConfig, solve
from cxkrylov.io import HistoryReport, write_history

rng = np.random.default_rng(1)
n = 32
B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
A = B + B.T + 12 * np.eye(n)
csr = CsrMatrix.from_dense(A, symmetric=True)
y = A @ np.ones(n)
cfg = SolverConfig(epsilon_err=1e-10, maxit=10 * n)


# In[2]:

reports = []
print(f"{'method':10s} {'status':12s} {'iters':>5s} {'products':>8s} {'rel_resid':>10s}")
for m in MethodId:
    t0 = time.perf_counter()
    out = solve(m, csr, y, cfg)
    ms = 1e3 * (time.perf_counter() - t0)
    reports.append(HistoryReport.from_outcome(out, n, csr.nnz, ms))
    print(f"{m.value:10s} {out.status.value:12s} {out.iterations:5d} "
          f"{out.total_products:8d} {out.true_rel_residual:10.2e}")


# Histories can be exported for plotting elsewhere:

# In[3]:

write_history(reports[0], "bicg_history.csv", "csv")
print(open("bicg_history.csv").read()[:80])


# From a shell, the same comparison on a Matrix Market file:
#
#     cxkrylov --matrix A.mtx --rhs-ones --method all --tol 1e-10 --out hist.json --format json
