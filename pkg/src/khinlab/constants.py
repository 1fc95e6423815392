"""Optimal Khintchine constants and the quantities derived from them.

Exponents are plain floats; ``math.inf`` plays the role of the infinite
exponent throughout the package.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from .errors import DomainError

INFINITY = math.inf

SQRT_PI = math.sqrt(math.pi)
P0_TOLERANCE = 1e-12
# Gamma((p+1)/2) - sqrt(pi)/2 changes sign exactly once on this bracket.
P0_BRACKET = (1.8, 1.9)


class Branch(enum.Enum):
    FLAT = "FLAT"
    GAUSSIAN = "GAUSSIAN"
    DYADIC = "DYADIC"


@dataclass(frozen=True)
class HaagerupConstant:
    p: float
    value: float
    branch: Branch


@dataclass(frozen=True)
class Breakpoint:
    p0: float
    residual: float


def parse_exponent(text) -> float:
    """Parse ``"inf"``/``"infinity"``/``"∞"`` or a positive number."""
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        s = str(text).strip().lower()
        if s in ("inf", "infinity", "∞", "+inf"):
            return INFINITY
        try:
            value = float(s)
        except ValueError:
            raise DomainError(f"not an exponent: {text!r}") from None
    if math.isnan(value) or value <= 0:
        raise DomainError(f"exponent must be positive, got {text!r}")
    return value


def gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"gamma is only evaluated for x > 0, got {x}")
    return math.gamma(x)


def conjugate_exponent(p: float) -> float:
    """Return p* with 1/p + 1/p* = 1, using 1* = inf and inf* = 1."""
    if math.isnan(p) or p < 1:
        raise DomainError(f"conjugate exponent needs p >= 1, got {p}")
    if p == 1:
        return INFINITY
    if p == INFINITY:
        return 1.0
    return p / (p - 1)


def _p0_residual(p):
    return gamma((p + 1) / 2) - SQRT_PI / 2


def solve_p0(tolerance: float = P0_TOLERANCE) -> Breakpoint:
    """Bisect for the root of Gamma((p+1)/2) = sqrt(pi)/2 in (1.8, 1.9).

    Stops once both the residual and the bracket width are within
    ``tolerance``.
    """
    if not tolerance >= 1e-14:
        raise DomainError(f"tolerance must be >= 1e-14, got {tolerance}")
    lo, hi = P0_BRACKET
    f_lo = _p0_residual(lo)
    mid, f_mid = lo, f_lo
    while True:
        mid = 0.5 * (lo + hi)
        f_mid = _p0_residual(mid)
        if (abs(f_mid) <= tolerance and hi - lo <= tolerance) or mid in (lo, hi):
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return Breakpoint(p0=mid, residual=abs(f_mid))


@functools.lru_cache(maxsize=None)
def cached_breakpoint() -> Breakpoint:
    return solve_p0(P0_TOLERANCE)


def p0() -> float:
    return cached_breakpoint().p0


def _gaussian_formula(p):
    return (gamma((p + 1) / 2) / SQRT_PI) ** (-1 / p) / math.sqrt(2)


def _dyadic_formula(p):
    return 2.0 ** (1 / p - 0.5)


def haagerup_constant(p: float) -> HaagerupConstant:
    """Best constant A_p in the Khintchine inequality (real scalars)."""
    if math.isnan(p) or p <= 0:
        raise DomainError(f"Khintchine exponent must be positive, got {p}")
    if p >= 2:
        return HaagerupConstant(p, 1.0, Branch.FLAT)
    if p > p0():
        return HaagerupConstant(p, _gaussian_formula(p), Branch.GAUSSIAN)
    return HaagerupConstant(p, _dyadic_formula(p), Branch.DYADIC)


def gaussian_moment_limit(r: float) -> float:
    """Limit of the normalized L_r moment of (r_1 + ... + r_n)/sqrt(n)."""
    if not 0 < r < 2:
        raise DomainError(f"gaussian moment limit needs 0 < r < 2, got {r}")
    return math.sqrt(2) * (gamma((r + 1) / 2) / SQRT_PI) ** (1 / r)


def multiple_khintchine_constant(m: int, r: float) -> float:
    if m < 1:
        raise DomainError(f"order m must be >= 1, got {m}")
    return haagerup_constant(r).value ** m


def mixed_littlewood_constant(M: int, p: float) -> float:
    """Best constant of the mixed (l_{p*}, l_2) Littlewood inequality for M-linear forms."""
    if M < 2:
        raise DomainError(f"number of factors M must be >= 2, got {M}")
    if math.isnan(p) or p < 2:
        raise DomainError(f"mixed Littlewood inequality needs p >= 2, got {p}")
    return haagerup_constant(conjugate_exponent(p)).value ** (M - 1)
