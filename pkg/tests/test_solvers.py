import numpy as np
import pytest

from cxkrylov import (
    CapabilityError,
    CsrMatrix,
    DenseMatrix,
    FunctionOperator,
    IdentityPreconditioner,
    InvalidInputError,
    MethodId,
    Side,
    SolverConfig,
    Status,
    build_ilu0,
    build_jacobi,
    lu_solve,
    solve,
    solve_bicgstab_l,
    solve_gmres,
    solve_ilucg,
    solve_normal,
    solve_shadow,
    solve_symmetric,
    solve_transpose_free,
)
from cxkrylov.operator import IdentityOperator
from cxkrylov.solvers import SOLVERS
from suite import dft, nonsym_system, sym_matrix, unit_disk

I = 1j
TIGHT = SolverConfig(epsilon_err=1e-10, maxit=2000)
TRANSPOSE_FREE = ("cgs", "bicgstab", "tfqmr", "gpbicg")
SHADOW = ("bicg", "qmr", "bicor", "cors")
SYMMETRIC = ("cocg", "cocr", "csym")
NORMAL = ("cgne", "cgnr")


def relerr(x, ref):
    return np.linalg.norm(x - ref) / np.linalg.norm(ref)


def seeded(n, seed):
    a = np.eye(n) + 0.4 * unit_disk(np.random.default_rng(seed), (n, n))
    return a, a @ np.ones(n)


def matrix_for(method, a, symmetric=False):
    if MethodId.parse(method).info.needs_csr:
        return CsrMatrix.from_dense(a)
    return DenseMatrix(a, symmetric=symmetric)


# -- transpose-free ----------------------------------------------------------

@pytest.mark.parametrize("method", TRANSPOSE_FREE)
def test_transpose_free_identity(method):
    y = np.random.default_rng(0).standard_normal(5) + I
    out = solve_transpose_free(method, IdentityOperator(5), y, TIGHT)
    assert out.converged and out.iterations <= 1
    assert np.allclose(out.x, y, rtol=1e-14, atol=0)


@pytest.mark.parametrize("method", TRANSPOSE_FREE)
def test_transpose_free_diagonal(method):
    d = np.arange(1, 9) * np.exp(0.3j * np.arange(8))
    xs = np.linspace(1, 2, 8) - 0.5j
    out = solve_transpose_free(method, DenseMatrix(np.diag(d)), d * xs,
                               SolverConfig(epsilon_err=1e-12))
    assert out.converged and relerr(out.x, xs) <= 1e-10


@pytest.mark.parametrize("method", TRANSPOSE_FREE)
def test_transpose_free_needs_only_forward_products(method):
    a, y = seeded(8, 3)
    op = FunctionOperator(8, lambda v: a @ v)
    out = solve_transpose_free(method, op, y, TIGHT)
    assert out.converged and out.rmatvecs == 0
    assert relerr(out.x, lu_solve(a, y)) <= 1e-8


def test_transpose_free_rejects_other_families():
    with pytest.raises(InvalidInputError):
        solve_transpose_free("bicg", IdentityOperator(2), np.ones(2))


# -- shadow-residual methods ------------------------------------------------------

@pytest.mark.parametrize("method", SHADOW)
def test_shadow_identity(method):
    out = solve_shadow(method, IdentityOperator(4), np.arange(1, 5) + 0j, TIGHT)
    assert out.converged and out.iterations <= 1


@pytest.mark.parametrize("seed", range(5))
def test_bicg_on_hpd_behaves_like_cg(seed):
    b = unit_disk(np.random.default_rng(seed), (8, 8))
    a = b @ b.conj().T + np.eye(8)
    out = solve_shadow("bicg", DenseMatrix(a), a @ np.ones(8), TIGHT)
    assert out.converged and out.iterations <= 8


def test_shadow_methods_match_oracle():
    a, y = seeded(16, 11)
    ref = lu_solve(a, y)
    for method in SHADOW:
        out = solve_shadow(method, DenseMatrix(a), y, TIGHT)
        assert out.converged and relerr(out.x, ref) <= 1e-7, method


@pytest.mark.parametrize("method", SHADOW + NORMAL)
def test_hermitian_methods_need_adjoint(method):
    op = FunctionOperator(3, lambda v: 2 * v)
    with pytest.raises(CapabilityError):
        solve(method, op, np.ones(3))


# -- complex symmetric -----------------------------------------------------------

@pytest.mark.parametrize("method", SYMMETRIC)
def test_symmetric_identity(method):
    out = solve_symmetric(method, IdentityOperator(3), np.array([1, 3, 2]) * (1 - I), TIGHT)
    assert out.converged and out.iterations <= 1


@pytest.mark.parametrize("method", ["cocg", "cocr"])
def test_cocg_cocr_identity_complex_rhs(method):
    out = solve_symmetric(method, IdentityOperator(3), np.array([1, I, 2]), TIGHT)
    assert out.converged and out.iterations <= 1


def test_csym_identity_complex_rhs_needs_two_steps():
    # CSYM starts from q1 = conj(y)/||y||, so its first iterate lies in span{conj(y)}.
    # For y = [1, i, 2] that span misses y; the second step adds it.
    out = solve_symmetric("csym", IdentityOperator(3), np.array([1, I, 2]), TIGHT)
    assert out.converged and out.iterations == 2


@pytest.mark.parametrize("method", SYMMETRIC)
def test_symmetric_diagonal(method):
    d = np.array([1 + I, 2, 3 - I, 5])
    xs = np.array([1, -I, 2 + I, 0.5])
    out = solve_symmetric(method, DenseMatrix(np.diag(d), symmetric=True), d * xs,
                          SolverConfig(epsilon_err=1e-12))
    assert out.converged and relerr(out.x, xs) <= 1e-10


@pytest.mark.parametrize("method", SYMMETRIC)
def test_symmetric_methods_refuse_hermitian(method):
    h = np.array([[1, I], [-I, 2]])
    with pytest.raises(InvalidInputError):
        solve_symmetric(method, DenseMatrix(h), np.ones(2))
    with pytest.raises(InvalidInputError):
        solve(method, CsrMatrix.from_dense(h), np.ones(2))


@pytest.mark.parametrize("method", SYMMETRIC)
def test_symmetric_matrix_free(method):
    a = sym_matrix(12, 4)
    op = FunctionOperator(12, lambda v: a @ v, symmetric=True)
    out = solve(method, op, a @ np.ones(12), TIGHT)
    assert out.converged and relerr(out.x, np.ones(12)) <= 1e-7


def test_cocg_genuine_breakdown():
    # p^T A p = 0 for p = e1 and A the swap: dotu is not definite.
    out = solve("cocg", DenseMatrix(np.array([[0, 1], [1, 0]]), symmetric=True),
                np.array([1, 0]))
    assert out.status is Status.BREAKDOWN and "p^T A p" in out.breakdown_detail


def test_bicg_breakdown_is_reported_not_raised():
    out = solve("bicg", DenseMatrix(np.array([[0, 1], [1, 0]])), np.array([1, 0]))
    assert out.status is Status.BREAKDOWN and out.breakdown_detail


# -- normal equations --------------------------------------------------------

@pytest.mark.parametrize("method", NORMAL)
def test_normal_identity(method):
    out = solve_normal(method, IdentityOperator(3), np.ones(3), TIGHT)
    assert out.converged and out.iterations <= 1


def test_cgnr_unitary_one_step():
    f = dft(4)
    y = np.array([1, 2 - I, 0.5, 3 * I])
    out = solve_normal("cgnr", DenseMatrix(f), y, TIGHT)
    assert out.converged and out.iterations == 1
    assert relerr(out.x, f.conj().T @ y) <= 1e-12


def test_cgnr_history_nonincreasing():
    a, y = seeded(8, 21)
    out = solve_normal("cgnr", DenseMatrix(a), y, TIGHT)
    r = [v for _, v in out.history]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(r, r[1:]))


def test_cgne_error_nonincreasing():
    a, y = seeded(8, 22)
    xs = np.ones(8)
    errs = []
    for k in range(1, 9):
        out = solve_normal("cgne", DenseMatrix(a), y, SolverConfig(epsilon_err=1e-14, maxit=k))
        errs.append(np.linalg.norm(out.x - xs))
    assert all(b <= a * (1 + 1e-10) for a, b in zip(errs, errs[1:]))


def test_solve_normal_rejects_other_methods():
    with pytest.raises(InvalidInputError):
        solve_normal("gmres", IdentityOperator(2), np.ones(2))


# -- GMRES ----------------------------------------------------------------------

def test_gmres_identity():
    out = solve_gmres(IdentityOperator(4), np.ones(4), TIGHT)
    assert out.converged and out.iterations == 1


@pytest.mark.parametrize("seed", range(5))
def test_gmres_full_krylov_termination(seed):
    a, y = seeded(8, seed)
    out = solve_gmres(DenseMatrix(a), y, SolverConfig(epsilon_err=1e-10, restart_m=8))
    assert out.converged and out.iterations <= 8 + 2


def test_gmres_cycle_monotone_with_short_restart():
    a, y = seeded(16, 7)
    m = 4
    out = solve_gmres(DenseMatrix(a), y, SolverConfig(epsilon_err=1e-10, restart_m=m, maxit=5000))
    assert out.converged
    r = [v for _, v in out.history]
    for k in range(1, len(r)):
        if (k - 1) % m:
            assert r[k] <= r[k - 1] * (1 + 1e-12)


def test_gmres_restart_costs_one_product():
    a, y = seeded(16, 7)
    out = solve_gmres(DenseMatrix(a), y, SolverConfig(epsilon_err=1e-14, restart_m=4, maxit=10))
    assert out.status is Status.MAX_ITERATIONS
    assert out.matvecs == 10 + 2


# -- BiCGstab(l) --------------------------------------------------------------

def test_bicgstab_l_identity():
    out = solve_bicgstab_l(IdentityOperator(3), np.ones(3), SolverConfig(ell=2))
    assert out.converged and out.iterations <= 1


@pytest.mark.parametrize("seed", range(4))
def test_bicgstab_l1_matches_bicgstab(seed):
    a, y = seeded(8, seed)
    ref = solve("bicgstab", DenseMatrix(a), y, TIGHT)
    out = solve_bicgstab_l(DenseMatrix(a), y, SolverConfig(epsilon_err=1e-10, ell=1))
    assert out.iterations == ref.iterations
    assert relerr(out.x, ref.x) <= 1e-8


@pytest.mark.parametrize("ell", [2, 4])
def test_bicgstab_l_higher_degree(ell):
    a, y = seeded(16, 5)
    out = solve_bicgstab_l(DenseMatrix(a), y, SolverConfig(epsilon_err=1e-10, ell=ell))
    assert out.converged and relerr(out.x, lu_solve(a, y)) <= 1e-7


# -- ILUCG ----------------------------------------------------------------------

def test_ilucg_diagonal_one_step():
    d = np.array([2, 3 - I, 0.5, 7 * I])
    out = solve_ilucg(CsrMatrix.from_dense(np.diag(d)), np.array([1, I, -1, 2]), TIGHT)
    assert out.converged and out.iterations == 1


def test_ilucg_tridiagonal():
    rng = np.random.default_rng(2)
    n = 32
    off = unit_disk(rng, (2, n - 1))
    a = np.diag(4 + unit_disk(rng, n)) + np.diag(off[0], 1) + np.diag(off[1], -1)
    y = a @ np.ones(n)
    out = solve_ilucg(CsrMatrix.from_dense(a), y, TIGHT)
    assert out.converged and relerr(out.x, lu_solve(a, y)) <= 1e-8


def test_ilucg_zero_diagonal_breaks_down():
    a = CsrMatrix.from_dense(np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1]], dtype=complex))
    out = solve_ilucg(a, np.ones(3))
    assert out.status is Status.BREAKDOWN and out.iterations == 0
    assert "row 1" in out.breakdown_detail


def test_ilucg_needs_csr():
    with pytest.raises(InvalidInputError):
        solve("ilucg", FunctionOperator(2, lambda v: v, cmatvec=lambda v: v), np.ones(2))
    with pytest.raises(InvalidInputError):
        solve("ilucg", DenseMatrix(np.eye(2)), np.ones(2))


# -- dispatcher and preconditioning -----------------------------------------------

def test_solve_identity_returns_rhs():
    y = np.array([1 + I, 2, -I])
    assert np.array_equal(solve("bicgstab", IdentityOperator(3), y).x, y)


def test_solve_hermitian_not_symmetric_cocg():
    with pytest.raises(InvalidInputError):
        solve("cocg", DenseMatrix(np.array([[1, I], [-I, 2]])), np.ones(2))


@pytest.mark.parametrize("method", list(MethodId))
def test_dispatch_equals_direct_call(method):
    a = sym_matrix(8, 1)
    A = matrix_for(method, a, symmetric=True)
    y = a @ np.ones(8)
    via = solve(method, A, y, TIGHT)
    direct = SOLVERS[method](A, y, TIGHT)
    assert via.iterations == direct.iterations
    assert np.array_equal(via.x, direct.x)
    assert via.history == direct.history


def test_rhs_length_checked():
    with pytest.raises(InvalidInputError):
        solve("cgs", IdentityOperator(3), np.ones(4))


PRECONDITIONED = [m for m in MethodId if m.info.side is not Side.NONE]


@pytest.mark.parametrize("method", PRECONDITIONED)
@pytest.mark.parametrize("kind", ["jacobi", "ilu0"])
def test_preconditioned_runs(method, kind):
    a = sym_matrix(16, 6)
    a[np.abs(a) < 0.8] = 0  # sparse pattern so ILU(0) is inexact
    a += np.diag(np.arange(16) * (1 + I))
    A = matrix_for(method, a, symmetric=True)
    csr = CsrMatrix.from_dense(a)
    M = build_jacobi(csr) if kind == "jacobi" else build_ilu0(csr)
    out = solve(method, A, a @ np.ones(16), TIGHT, M)
    assert out.converged and out.precond_side is method.info.side
    assert relerr(out.x, np.ones(16)) <= 1e-7


def test_ilu0_preconditioner_reduces_gmres_work():
    a = sym_matrix(32, 2)
    a[np.abs(a) < 0.9] = 0
    a += np.diag(np.linspace(1, 40, 32))
    y = a @ np.ones(32)
    plain = solve("gmres", DenseMatrix(a), y, TIGHT)
    pre = solve("gmres", DenseMatrix(a), y, TIGHT, build_ilu0(CsrMatrix.from_dense(a)))
    assert pre.converged and pre.iterations < plain.iterations


@pytest.mark.parametrize("method", ["csym", "ilucg"])
def test_methods_without_preconditioner(method):
    a = np.diag([2.0, 3.0, 4.0]) + 0j
    A = matrix_for(method, a, symmetric=True)
    with pytest.raises(InvalidInputError):
        solve(method, A, np.ones(3), M=build_jacobi(a))
    assert solve(method, A, np.ones(3), M=IdentityPreconditioner(3)).converged


@pytest.mark.parametrize("method", list(MethodId))
def test_single_precision(method):
    a = sym_matrix(8, 3).astype(np.complex64)
    A = matrix_for(method, a, symmetric=True)
    y = (a @ np.ones(8)).astype(np.complex64)
    out = solve(method, A, y, SolverConfig(epsilon_err=1e-5, maxit=200))
    assert out.x.dtype == np.complex64
    assert out.converged and relerr(out.x, np.ones(8)) <= 1e-4


@pytest.mark.parametrize("method", list(MethodId))
def test_zero_rhs(method):
    A = matrix_for(method, np.eye(3) + 0j, symmetric=True)
    out = solve(method, A, np.zeros(3))
    assert out.converged and out.iterations == 0 and not out.x.any()


def test_relative_to_rhs_mode_and_maxit():
    a, y = nonsym_system(3)
    cfg = SolverConfig(epsilon_err=1e-10, maxit=3, stop_mode="rhs")
    out = solve("bicg", DenseMatrix(a), y, cfg)
    assert out.status is Status.MAX_ITERATIONS and out.iterations == 3
    assert 0 < out.true_rel_residual < 1
