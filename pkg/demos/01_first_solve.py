# coding: utf-8

# # A first solve
#
# This walkthrough solves a small complex system A x = y with BiCGSTAB and
# looks at what comes back. The solvers never look at matrix entries; they
# only multiply by A (and sometimes by A^H), so a dense array is just one way
# to supply the operator.

# In[1]:

import numpy as np

from cxkrylov import DenseMatrix, SolverConfig, lu_solve, solve

rng = np.random.default_rng(0)
n = 16
R = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
A = np.eye(n) + 0.4 * R / np.sqrt(2 * n)
x_star = np.ones(n, dtype=complex)
y = A @ x_star


# Wrap the array in an operator and solve. The default tolerance is 1e-8
# relative to the initial residual, which is y since the start vector is 0.

# In[2]:

out = solve("bicgstab", DenseMatrix(A), y, SolverConfig(epsilon_err=1e-10))
print(out.status.value, "after", out.iterations, "iterations")
print("products with A:", out.matvecs)
print("true relative residual:", out.true_rel_residual)


# The true residual is recomputed from x at the end. If the recurrence had
# claimed convergence while the true residual was more than ten times the
# tolerance, the status would read FalseConvergence instead.
#
# The history holds (iteration, residual norm) pairs, starting at iteration 0:

# In[3]:

for k, r in out.history[:6]:
    print(f"{k:3d}  {r:.3e}")


# Compare with the dense LU oracle:

# In[4]:

x_lu = lu_solve(A, y)
print("difference from LU:", np.linalg.norm(out.x - x_lu) / np.linalg.norm(x_lu))


# ## Single precision
#
# Precision follows the dtype of the inputs. complex64 in, complex64 out.

# In[5]:

out32 = solve("bicgstab", DenseMatrix(A.astype(np.complex64)), y.astype(np.complex64),
              SolverConfig(epsilon_err=1e-5))
print(out32.x.dtype, out32.status.value, out32.iterations)
