"""The method catalog."""

from .bicgstabl import bicgstab_l
from .dispatch import (
    SOLVERS,
    solve,
    solve_bicgstab_l,
    solve_gmres,
    solve_ilucg,
    solve_normal,
    solve_shadow,
    solve_symmetric,
    solve_transpose_free,
)
from .gmres import gmres
from .ilucg import ilucg
from .normal import cgne, cgnr
from .shadow import bicg, bicor, cors, qmr
from .symmetric import cocg, cocr, csym
from .transpose_free import bicgstab, cgs, gpbicg, tfqmr

__all__ = [
    "SOLVERS", "solve", "solve_bicgstab_l", "solve_gmres", "solve_ilucg", "solve_normal",
    "solve_shadow", "solve_symmetric", "solve_transpose_free",
    "bicg", "bicgstab", "bicgstab_l", "bicor", "cgne", "cgnr", "cgs", "cocg", "cocr",
    "cors", "csym", "gmres", "gpbicg", "ilucg", "qmr", "tfqmr",
]
