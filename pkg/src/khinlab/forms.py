"""Multilinear forms on X_p x X_inf x ... x X_inf and the mixed Littlewood inequalities.

A form is stored through its coefficients a[i_1, ..., i_M] = T(e_{i_1}, ..., e_{i_M}).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _engine
from ._engine import DEFAULT_BIT_BUDGET
from .constants import conjugate_exponent, haagerup_constant, mixed_littlewood_constant, parse_exponent
from .errors import DomainError
from .moments import as_tensor
from .norms import mixed_norm

__all__ = [
    "Theorem",
    "MultilinearForm",
    "InequalityReport",
    "form_norm",
    "mixed_lhs_outer",
    "mixed_lhs_inner",
    "verify_mixed_littlewood",
    "littlewood_form_construction",
    "equivalence_report",
]

HOLDS_SLACK = 1e-9


class Theorem(enum.Enum):
    MIXED_C = "MIXED_C"
    MIXED_D = "MIXED_D"


@dataclass(frozen=True)
class MultilinearForm:
    """M-linear form with first factor X_p and the remaining factors X_inf."""

    coefficients: np.ndarray
    first_exponent: float

    def __post_init__(self):
        coef = as_tensor(self.coefficients)
        if coef.ndim < 2:
            raise DomainError(f"a multilinear form needs order M >= 2, got {coef.ndim}")
        p = parse_exponent(self.first_exponent)
        if p < 1:
            raise DomainError(f"first exponent must be >= 1, got {p}")
        object.__setattr__(self, "coefficients", coef)
        object.__setattr__(self, "first_exponent", p)

    @property
    def order(self) -> int:
        return self.coefficients.ndim

    def matrix(self) -> np.ndarray:
        """Coefficients as N_1 x (N_2 ... N_M), later indices flattened row-major."""
        return self.coefficients.reshape(self.coefficients.shape[0], -1)


@dataclass(frozen=True)
class InequalityReport:
    lhs: float
    norm: float
    ratio: float | None
    constant: float
    theorem: Theorem
    holds: bool


def form_norm(T: MultilinearForm, bit_budget: int = DEFAULT_BIT_BUDGET, threads=None) -> float:
    """sup |T(x_1, ..., x_M)| over the unit balls.

    For fixed x_2..x_M the sup over the l_p ball is the l_{p*} norm of the
    contraction b_{i_1} = sum a[i_1, ...] x_2 ... x_M, and the contraction
    is affine in each remaining slot, so the sup over l_inf balls is reached
    at sign vectors.  All of those are enumerated.
    """
    dual = conjugate_exponent(T.first_exponent)
    coef = T.matrix()
    if not np.any(coef):
        _engine.check_budget(sum(T.coefficients.shape[1:]), bit_budget)
        return 0.0
    best, _ = _engine.enumerate_signs(
        coef, T.coefficients.shape[1:], _engine.MODE_MAX_NORM, dual, bit_budget, threads
    )
    return best


def _require_littlewood_range(T):
    if T.first_exponent < 2:
        raise DomainError(f"mixed Littlewood sums need p >= 2, got {T.first_exponent}")


def mixed_lhs_outer(T: MultilinearForm) -> float:
    """(sum_{i_1} (sum_{i_2..i_M} |a|^2)^{p*/2})^{1/p*}."""
    _require_littlewood_range(T)
    return mixed_norm(T.matrix(), outer=conjugate_exponent(T.first_exponent), inner=2)


def mixed_lhs_inner(T: MultilinearForm) -> float:
    """(sum_{i_2..i_M} (sum_{i_1} |a|^{p*})^{2/p*})^{1/2}."""
    _require_littlewood_range(T)
    return mixed_norm(T.matrix().T, outer=2, inner=conjugate_exponent(T.first_exponent))


def _report(lhs, norm, constant, theorem):
    ratio = lhs / norm if norm > 0 else None
    holds = lhs <= constant * norm * (1 + HOLDS_SLACK)
    return InequalityReport(lhs, norm, ratio, constant, theorem, holds)


def verify_mixed_littlewood(T: MultilinearForm, which: Theorem = Theorem.MIXED_C,
                            bit_budget: int = DEFAULT_BIT_BUDGET, threads=None) -> InequalityReport:
    which = Theorem(which)
    lhs = mixed_lhs_outer(T) if which is Theorem.MIXED_C else mixed_lhs_inner(T)
    constant = mixed_littlewood_constant(T.order, T.first_exponent)
    return _report(lhs, form_norm(T, bit_budget, threads), constant, which)


def _check_p_range(p):
    if not 1 <= p <= 2:
        raise DomainError(f"the Khintchine-to-Littlewood construction needs 1 <= p <= 2, got {p}")


def littlewood_form_construction(y, p: float, bit_budget: int = DEFAULT_BIT_BUDGET) -> MultilinearForm:
    """(m+1)-linear form on X_{p*} x X_inf^m whose norm is the L_p moment of y.

    A(e_i, e_{j_1}, ..., e_{j_m}) = 2^{-B/p} y_{j_1..j_m} delta^(i)_{j_1..j_m},
    where i runs over the 2^B sign assignments (B = N_1 + ... + N_m) in the
    Gray order of the enumeration engine and delta^(i) is the product of the
    assignment's signs at (j_1, ..., j_m).
    """
    _check_p_range(p)
    arr = as_tensor(y)
    n_bits = sum(arr.shape)
    _engine.check_budget(n_bits, bit_budget)
    rows = _engine.sign_rows(n_bits)
    delta = np.ones((rows.shape[0],) + arr.shape)
    base = 0
    for axis, n in enumerate(arr.shape):
        shape = [rows.shape[0]] + [1] * arr.ndim
        shape[axis + 1] = n
        delta *= rows[:, base:base + n].reshape(shape)
        base += n
    coef = math.pow(2.0, -n_bits / p) * arr[None, ...] * delta
    return MultilinearForm(coef, conjugate_exponent(p))


def equivalence_report(y, p: float, bit_budget: int = DEFAULT_BIT_BUDGET, threads=None) -> InequalityReport:
    """Mixed D-inequality report for the form built from y.

    ratio = mixed_lhs_inner / form_norm = l2(y) / ||sum y r...r||_p, compared
    with (A_p)^m, the best constant D_{(m+1),p*}.
    """
    _check_p_range(p)
    arr = as_tensor(y)
    form = littlewood_form_construction(arr, p, bit_budget)
    lhs = mixed_lhs_inner(form)
    constant = haagerup_constant(p).value ** arr.ndim
    return _report(lhs, form_norm(form, bit_budget, threads), constant, Theorem.MIXED_D)
