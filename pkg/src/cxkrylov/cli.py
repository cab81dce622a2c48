"""Command-line driver: run one method or all applicable ones on a system.

Example::

    cxkrylov --matrix A.mtx --rhs-ones --method all --tol 1e-10

Right-hand side files hold one complex number per line as ``re im``. Without
``--rhs`` or ``--rhs-ones`` a pseudo-random right-hand side is drawn from
``--seed``.

Exit status is 0 when every executed method converged, 1 when at least one
did not, and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .core import MethodId, SolverConfig, Status
from .exceptions import KrylovError
from .io import HistoryReport, generate_rhs, read_matrix_market, read_rhs, write_history
from .operator import CsrMatrix, check_complex_symmetric
from .precond import build_ilu0, build_jacobi
from .solvers import solve

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_HEADER = f"{'method':<10} {'status':<16} {'iters':>6} {'matvecs':>8} {'rel_resid':>10} {'ms':>9}"


class _UsageError(Exception):
    pass


def build_parser():
    p = argparse.ArgumentParser(
        prog="cxkrylov",
        description="Solve a complex system A x = y with Krylov methods and compare them.",
        epilog="RHS files: one complex entry per line, written as 're im'.")
    p.add_argument("--matrix", required=True, help="Matrix Market coordinate file")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--rhs", help="right-hand side file ('re im' per line)")
    src.add_argument("--rhs-ones", action="store_true",
                     help="use y = A*ones so the exact solution is known")
    names = [m.value for m in MethodId]
    p.add_argument("--method", default="all", help=f"one of {', '.join(names)}, or 'all'")
    p.add_argument("--tol", type=float, default=1e-8, help="relative residual tolerance")
    p.add_argument("--maxit", type=int, default=None, help="iteration limit (default 10*n)")
    # None marks "not given" so method-specific flags can be checked for consistency.
    p.add_argument("--restart", type=int, default=None, help="GMRES restart length (30)")
    p.add_argument("--ell", type=int, default=None, help="BiCGstab(l) degree (2)")
    p.add_argument("--gpm", type=int, default=None, help="GPBiCG BiCGSTAB-type steps (1)")
    p.add_argument("--gpn", type=int, default=None, help="GPBiCG GPBiCG-type steps (1)")
    p.add_argument("--precond", choices=("none", "jacobi", "ilu0"), default="none")
    p.add_argument("--seed", type=int, default=0, help="seed of the generated rhs")
    p.add_argument("--out", help="history output path; with 'all' one file per method")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="history format (default csv)")
    return p


def _select_methods(arg):
    if arg.strip().lower() == "all":
        return list(MethodId), True
    try:
        return [MethodId.parse(arg)], False
    except KrylovError as exc:
        raise _UsageError(str(exc)) from None


def _check_consistency(args, methods, all_mode):
    owners = {"restart": MethodId.GMRES, "ell": MethodId.BICGSTABL,
              "gpm": MethodId.GPBICG, "gpn": MethodId.GPBICG}
    for flag, owner in owners.items():
        if getattr(args, flag) is not None and not all_mode and methods[0] is not owner:
            raise _UsageError(f"--{flag} only applies to {owner.value} or 'all'")
    if args.format is not None and args.out is None:
        raise _UsageError("--format requires --out")


def _load_matrix(path):
    A = read_matrix_market(path)
    if not A.declared_symmetric and check_complex_symmetric(A, 0.0):
        A = CsrMatrix(A.row_offsets, A.col_indices, A.values, A.n, symmetric=True,
                      verify=False)
    return A


def _build_precond(kind, A):
    if kind == "jacobi":
        return build_jacobi(A)
    if kind == "ilu0":
        return build_ilu0(A)
    return None


def _skip_reason(method, A, M):
    info = method.info
    if info.needs_symmetric and not A.declared_symmetric:
        return "matrix is not complex symmetric"
    if method is MethodId.CSYM and M is not None:
        return "takes no preconditioner"
    return None


def _out_path(out, method, all_mode):
    if not all_mode:
        return out
    root, ext = os.path.splitext(out)
    return f"{root}_{method.value}{ext}"


def _row(method, status, iters="-", matvecs="-", resid="-", ms="-"):
    return f"{method:<10} {status:<16} {iters:>6} {matvecs:>8} {resid:>10} {ms:>9}"


def run(args, stdout=None):
    stdout = stdout or sys.stdout
    methods, all_mode = _select_methods(args.method)
    _check_consistency(args, methods, all_mode)
    A = _load_matrix(args.matrix)
    if args.rhs:
        y = read_rhs(args.rhs)
        if y.size != A.n:
            raise _UsageError(f"rhs has {y.size} entries, matrix is {A.n}x{A.n}")
    else:
        y, _ = generate_rhs(A, "ones" if args.rhs_ones else "seeded", args.seed)
    M = _build_precond(args.precond, A)
    cfg = SolverConfig(
        epsilon_err=args.tol,
        maxit=args.maxit if args.maxit is not None else 10 * A.n,
        restart_m=args.restart if args.restart is not None else 30,
        ell=args.ell if args.ell is not None else 2,
        gp_m=args.gpm if args.gpm is not None else 1,
        gp_n=args.gpn if args.gpn is not None else 1)

    if not all_mode:
        reason = _skip_reason(methods[0], A, M)
        if reason is not None:
            raise _UsageError(f"{methods[0].value}: {reason}")

    print(_HEADER, file=stdout)
    ok = True
    for method in methods:
        reason = _skip_reason(method, A, M)
        if reason is not None:
            print(_row(method.value, "SKIPPED") + f"  ({reason})", file=stdout)
            continue
        # ILUCG factors the matrix itself; the --precond choice does not apply.
        m_arg = None if method is MethodId.ILUCG else M
        t0 = time.perf_counter()
        out = solve(method, A, y, cfg, m_arg)
        ms = 1e3 * (time.perf_counter() - t0)
        ok &= out.status is Status.CONVERGED
        print(_row(method.value, out.status.value, out.iterations, out.total_products,
                   f"{out.true_rel_residual:.3e}", f"{ms:.1f}"), file=stdout)
        if args.out:
            report = HistoryReport.from_outcome(out, A.n, A.nnz, ms)
            write_history(report, _out_path(args.out, method, all_mode), args.format or "csv")
    return EXIT_OK if ok else EXIT_FAILED


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (_UsageError, KrylovError, OSError) as exc:
        print(f"cxkrylov: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
