"""Plumbing shared by every method: input checks, products, stop/breakdown."""

from __future__ import annotations

import functools

import numpy as np

from ..core import METHODS, MethodId, Side, SolverConfig, Status, finalize, stopping_test
from ..exceptions import BreakdownError, CapabilityError, InvalidInputError
from ..numerics import as_vector, machine_epsilon, norm2, working_dtype
from ..operator import CountingOperator, CsrMatrix, LinearOperator, aslinearoperator

__all__ = ["SolveContext", "method_entry"]


class _RightPreconditioned(LinearOperator):
    """``A M^{-1}`` as an operator; x is recovered as ``M^{-1} u``."""

    def __init__(self, op, M):
        super().__init__(op.n, op.dtype, supports_hermitian=op.supports_hermitian,
                         declared_symmetric=False)
        self.op = op
        self.M = M

    def _matvec(self, x):
        return self.op.apply(self.M.solve(x))

    def _rmatvec(self, x):
        return self.M.solve_hermitian(self.op.apply_hermitian(x))


class _MaxIterations(Exception):
    pass


class SolveContext:
    """Per-solve workspace handed to a method body.

    The body reads ``ctx.op`` (already preconditioned for right-side
    methods), ``ctx.y`` and ``ctx.cfg``, reports progress through
    :meth:`step` and :meth:`record`, and guards divisors with
    :meth:`divisor`. It returns ``(u, status)``.
    """

    def __init__(self, method, A, y, cfg, M):
        self.method = method
        info = METHODS[method]
        self.info = info
        self.cfg = cfg if cfg is not None else SolverConfig()
        A = aslinearoperator(A)
        if info.needs_csr and not isinstance(A, CsrMatrix):
            raise InvalidInputError(f"{info.label} needs an explicit CsrMatrix, got {type(A).__name__}")
        if info.needs_hermitian and not A.supports_hermitian:
            raise CapabilityError(f"{info.label} needs A^H products, which the operator lacks")
        if info.needs_symmetric and not A.declared_symmetric:
            raise InvalidInputError(
                f"{info.label} requires a complex symmetric operator (A == A^T)")
        self.A = A
        self.dtype = working_dtype(A.dtype, np.asarray(y).dtype)
        self.y = as_vector(y, self.dtype)
        if self.y.shape[0] != A.n:
            raise InvalidInputError(f"rhs length {self.y.shape[0]} != operator dimension {A.n}")
        self.n = A.n
        self.eps = machine_epsilon(self.dtype)
        self.tiny = self.eps ** 2
        self.counter = CountingOperator(A)

        if M is not None and M.n != A.n:
            raise InvalidInputError(f"preconditioner dimension {M.n} != {A.n}")
        self.M = M
        self.side = Side.NONE
        op = self.counter
        if M is not None:
            if info.side is Side.NONE:
                if not getattr(M, "is_identity", False):
                    raise InvalidInputError(f"{info.label} does not accept a preconditioner")
            else:
                self.side = info.side
                if info.side is Side.RIGHT:
                    op = _RightPreconditioned(self.counter, M)
        self.op = op

        self.ynorm = norm2(self.y)
        self.r0norm = self.ynorm
        self.history = []
        self.iterations = 0
        self.replacements = 0
        self._maxit = int(self.cfg.maxit)

    # -- progress ---------------------------------------------------------
    def converged(self, rnorm):
        if not np.isfinite(rnorm):
            raise BreakdownError(f"{self.info.label}: non-finite residual norm", name="residual")
        return stopping_test(rnorm, self.r0norm, self.ynorm, self.cfg)

    def record(self, k, rnorm):
        if self.cfg.record_history:
            self.history.append((int(k), float(rnorm)))

    def step(self):
        """Open a new iteration; raises once ``maxit`` is exhausted."""
        if self.iterations >= self._maxit:
            raise _MaxIterations
        self.iterations += 1
        return self.iterations

    # -- guards -----------------------------------------------------------
    def divisor(self, name, value, scale):
        """Fail with a named breakdown when `value` is negligible against `scale`."""
        mag = abs(value)
        if not np.isfinite(mag) or mag <= self.tiny * scale or mag == 0:
            raise BreakdownError(
                f"{self.info.label}: {name} = {complex(value):.3e} vanished (scale {scale:.3e})", name=name)
        return value

    def zeros(self):
        return np.zeros(self.n, dtype=self.dtype)

    # -- driver -----------------------------------------------------------
    def run(self, body):
        self.record(0, self.r0norm)
        x = self.zeros()
        detail = None
        if self.converged(self.r0norm):
            status = Status.CONVERGED
        else:
            try:
                x, status = body(self)
            except _MaxIterations:
                x, status = self._current_x(), Status.MAX_ITERATIONS
            except BreakdownError as exc:
                x, status, detail = self._current_x(), Status.BREAKDOWN, str(exc)
            if self.side is Side.RIGHT:
                x = self.M.solve(x)
        return finalize(x, self.A, self.y, self.cfg, self.history, status, self.iterations,
                        self.method, r0norm=self.r0norm, breakdown_detail=detail,
                        matvecs=self.counter.matvecs, rmatvecs=self.counter.rmatvecs,
                        precond_side=self.side, residual_replacements=self.replacements)

    # Bodies register their iterate (an array updated in place, or a callable
    # producing it) so breakdown and maxit exits can return it.
    _last_x = None

    def keep(self, x):
        self._last_x = x
        return x

    def _current_x(self):
        x = self._last_x
        return x() if callable(x) else x


def method_entry(method: MethodId):
    """Decorate a method body ``body(ctx) -> (x, status)`` as a public solver.

    The resulting function has signature ``solver(A, y, cfg=None, M=None)``.
    """

    def wrap(body):
        @functools.wraps(body)
        def solver(A, y, cfg=None, M=None):
            ctx = SolveContext(method, A, y, cfg, M)
            ctx.keep(ctx.zeros())
            return ctx.run(body)

        solver.method = method
        return solver

    return wrap
