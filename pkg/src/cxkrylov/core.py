"""Solver configuration, method catalog, stopping tests and outcomes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import InvalidInputError
from .numerics import norm2

__all__ = [
    "StopMode",
    "Status",
    "Side",
    "MethodId",
    "MethodInfo",
    "METHODS",
    "SolverConfig",
    "SolverOutcome",
    "stopping_test",
    "finalize",
    "FALSE_CONVERGENCE_FACTOR",
]

FALSE_CONVERGENCE_FACTOR = 10.0


class StopMode(enum.Enum):
    RELATIVE_TO_R0 = "r0"
    RELATIVE_TO_RHS = "rhs"


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    BREAKDOWN = "Breakdown"
    FALSE_CONVERGENCE = "FalseConvergence"
    INVALID_INPUT = "InvalidInput"


class Side(enum.Enum):
    NONE = "none"
    LEFT = "left"
    RIGHT = "right"


class MethodId(enum.Enum):
    BICG = "bicg"
    CGS = "cgs"
    BICGSTAB = "bicgstab"
    BICGSTABL = "bicgstabl"
    TFQMR = "tfqmr"
    QMR = "qmr"
    GPBICG = "gpbicg"
    BICOR = "bicor"
    CORS = "cors"
    COCG = "cocg"
    COCR = "cocr"
    CSYM = "csym"
    CGNE = "cgne"
    CGNR = "cgnr"
    GMRES = "gmres"
    ILUCG = "ilucg"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("(", "").replace(")", "").replace("_", "")
        aliases = {"bicgstabell": "bicgstabl", "bicgstab2": "bicgstabl", "rgmres": "gmres",
                   "bigcg": "bicg", "cgmr": "cgnr", "petr": "ilucg"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise InvalidInputError(f"unknown method {name!r}") from None

    @property
    def info(self) -> "MethodInfo":
        return METHODS[self]


class MethodInfo(NamedTuple):
    """Requirements and work per method.

    ``matvecs``/``rmatvecs`` are products with A and A^H per iteration;
    ``setup_*`` are the products spent before the first iteration.
    """

    label: str
    needs_hermitian: bool
    needs_symmetric: bool
    needs_csr: bool
    params: tuple
    side: Side
    matvecs: int
    rmatvecs: int
    setup_matvecs: int
    setup_rmatvecs: int


# BiCGstab(l) spends 2*ell products per outer step; entries for it are per ell=1
# and scaled in matvecs_per_iteration(). GMRES pays one extra product per restart.
METHODS = {
    MethodId.BICG: MethodInfo("BiCG", True, False, False, (), Side.RIGHT, 1, 1, 0, 0),
    MethodId.CGS: MethodInfo("CGS", False, False, False, (), Side.RIGHT, 2, 0, 0, 0),
    MethodId.BICGSTAB: MethodInfo("BiCGSTAB", False, False, False, (), Side.RIGHT, 2, 0, 0, 0),
    MethodId.BICGSTABL: MethodInfo("BiCGstab(l)", False, False, False, ("ell",), Side.RIGHT,
                                   2, 0, 0, 0),
    MethodId.TFQMR: MethodInfo("TFQMR", False, False, False, (), Side.RIGHT, 2, 0, 1, 0),
    MethodId.QMR: MethodInfo("QMR", True, False, False, (), Side.RIGHT, 1, 1, 0, 0),
    MethodId.GPBICG: MethodInfo("GPBiCG(m,n)", False, False, False, ("gp_m", "gp_n"),
                                Side.RIGHT, 2, 0, 0, 0),
    MethodId.BICOR: MethodInfo("BiCOR", True, False, False, (), Side.RIGHT, 1, 1, 1, 2),
    MethodId.CORS: MethodInfo("CORS", True, False, False, (), Side.RIGHT, 2, 0, 1, 1),
    MethodId.COCG: MethodInfo("COCG", False, True, False, (), Side.LEFT, 1, 0, 0, 0),
    MethodId.COCR: MethodInfo("COCR", False, True, False, (), Side.LEFT, 1, 0, 1, 0),
    MethodId.CSYM: MethodInfo("CSYM", False, True, False, (), Side.NONE, 1, 0, 0, 0),
    MethodId.CGNE: MethodInfo("CGNE", True, False, False, (), Side.RIGHT, 1, 1, 0, 1),
    MethodId.CGNR: MethodInfo("CGNR", True, False, False, (), Side.RIGHT, 1, 1, 0, 1),
    MethodId.GMRES: MethodInfo("GMRES(m)", False, False, False, ("restart_m",), Side.RIGHT,
                               1, 0, 0, 0),
    MethodId.ILUCG: MethodInfo("ILUCG", True, False, True, (), Side.NONE, 1, 1, 0, 1),
}


@dataclass(frozen=True)
class SolverConfig:
    """Parameters shared by all methods.

    Parameters
    ----------
    epsilon_err : float
        Relative residual tolerance, ``0 < epsilon_err < 1``.
    maxit : int
        Maximum number of outer iterations (inner steps for GMRES).
    stop_mode : StopMode
        Denominator of the relative residual test.
    restart_m : int
        GMRES restart length.
    ell : int
        Degree of the minimal-residual polynomial in BiCGstab(l).
    gp_m, gp_n : int
        Lengths of the BiCGSTAB-type and GPBiCG-type phases of GPBiCG(m,n).
    record_history : bool
        Keep the per-iteration recurrence residual norms.
    """

    epsilon_err: float = 1e-8
    maxit: int = 1000
    stop_mode: StopMode = StopMode.RELATIVE_TO_R0
    restart_m: int = 30
    ell: int = 2
    gp_m: int = 1
    gp_n: int = 1
    record_history: bool = True

    def __post_init__(self):
        if not (0.0 < self.epsilon_err < 1.0):
            raise InvalidInputError(f"epsilon_err must lie in (0, 1), got {self.epsilon_err}")
        if int(self.maxit) < 1:
            raise InvalidInputError(f"maxit must be >= 1, got {self.maxit}")
        if int(self.restart_m) < 1:
            raise InvalidInputError(f"restart_m must be >= 1, got {self.restart_m}")
        if int(self.ell) < 1:
            raise InvalidInputError(f"ell must be >= 1, got {self.ell}")
        if self.gp_m < 0 or self.gp_n < 0 or self.gp_m + self.gp_n < 1:
            raise InvalidInputError("gp_m, gp_n must be >= 0 with gp_m + gp_n >= 1")
        if not isinstance(self.stop_mode, StopMode):
            object.__setattr__(self, "stop_mode", StopMode(self.stop_mode))

    def matvecs_per_iteration(self, method):
        info = MethodId.parse(method).info
        if info is METHODS[MethodId.BICGSTABL]:
            return 2 * self.ell, 0
        return info.matvecs, info.rmatvecs


@dataclass
class SolverOutcome:
    """Result of one solve.

    ``history`` holds ``(iteration, recurrence residual norm)`` pairs starting
    with ``(0, ||r0||)``; ``true_rel_residual`` is recomputed from ``x``.
    ``matvecs`` and ``rmatvecs`` count the products the iteration spent,
    excluding the final verification product.
    """

    method: MethodId
    status: Status
    iterations: int
    x: np.ndarray
    true_rel_residual: float
    history: list = field(default_factory=list)
    breakdown_detail: str | None = None
    matvecs: int = 0
    rmatvecs: int = 0
    precond_side: Side = Side.NONE
    residual_replacements: int = 0

    @property
    def converged(self):
        return self.status is Status.CONVERGED

    @property
    def total_products(self):
        return self.matvecs + self.rmatvecs


def stopping_test(rnorm, r0norm, ynorm, cfg: SolverConfig) -> bool:
    """Relative residual test under ``cfg.stop_mode``."""
    if rnorm == 0:
        return True
    denom = r0norm if cfg.stop_mode is StopMode.RELATIVE_TO_R0 else ynorm
    if not denom > 0:
        raise InvalidInputError("zero denominator in stopping test with nonzero residual")
    return bool(rnorm <= cfg.epsilon_err * denom)


def finalize(x_hat, A, y, cfg: SolverConfig, history, status: Status, iterations: int,
             method: MethodId, r0norm=None, breakdown_detail=None, **extra) -> SolverOutcome:
    """Recompute the true residual and settle the final status.

    A loop that claims convergence is downgraded to ``FALSE_CONVERGENCE``
    when ``||y - A x|| / denom > 10 * epsilon_err``. Non-finite iterates are
    never reported as converged.
    """
    y = np.asarray(y)
    ynorm = norm2(y)
    if r0norm is None:
        r0norm = ynorm
    denom = r0norm if cfg.stop_mode is StopMode.RELATIVE_TO_R0 else ynorm
    if not np.all(np.isfinite(x_hat)):
        return SolverOutcome(method, Status.BREAKDOWN, iterations, x_hat, float("nan"),
                             list(history), breakdown_detail or "non-finite iterate", **extra)
    rnorm = norm2(y - A.apply(x_hat))
    if denom > 0:
        rel = rnorm / denom
    else:
        rel = 0.0 if rnorm == 0 else float("inf")
    if status is Status.CONVERGED and not rel <= FALSE_CONVERGENCE_FACTOR * cfg.epsilon_err:
        status = Status.FALSE_CONVERGENCE
        breakdown_detail = breakdown_detail or (
            f"recurrence residual met tolerance but true relative residual is {rel:.3e}")
    return SolverOutcome(method, status, iterations, x_hat, float(rel), list(history),
                         breakdown_detail, **extra)
