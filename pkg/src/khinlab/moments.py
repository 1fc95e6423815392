"""Exact L_r moments of (multiple) Rademacher polynomials.

The integral over [0,1]^m of |sum y_{i_1..i_m} r_{i_1}(t_1)...r_{i_m}(t_m)|^r
equals the average of the same expression over every sign assignment in
{-1,1}^{N_1} x ... x {-1,1}^{N_m}, which is what these functions evaluate.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _engine
from ._engine import DEFAULT_BIT_BUDGET
from .errors import DomainError
from .norms import lp_norm

__all__ = [
    "Method",
    "MomentResult",
    "rademacher",
    "exact_moment",
    "moment_rank_one",
    "sign_transform",
    "l2_of_tensor",
    "as_tensor",
]


class Method(enum.Enum):
    FULL_ENUM = "FULL_ENUM"
    RANK_ONE_PRODUCT = "RANK_ONE_PRODUCT"
    BINOMIAL = "BINOMIAL"


@dataclass(frozen=True)
class MomentResult:
    r: float
    value: float
    configurations_enumerated: int
    method: Method


def as_tensor(y) -> np.ndarray:
    """Validate a coefficient tensor: order >= 1, nonempty axes, finite entries."""
    arr = np.asarray(y, dtype=np.float64)
    if arr.ndim < 1:
        raise DomainError("coefficient tensor needs at least one axis")
    if any(n < 1 for n in arr.shape):
        raise DomainError(f"every axis needs length >= 1, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("coefficient tensor entries must be finite")
    return arr


def _check_r(r):
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"moment exponent must be a positive real, got {r}")


def rademacher(j: int, t) -> int:
    """sign(sin(2^j pi t)), read off the j-th binary digit of t.

    Points where the sine vanishes map to +1.
    """
    if j < 1:
        raise DomainError(f"Rademacher index must be >= 1, got {j}")
    if not 0 <= t < 1:
        raise DomainError(f"t must lie in [0, 1), got {t}")
    if isinstance(t, float):
        u = math.ldexp(t, j)
        whole = math.floor(u)
        if u == whole:
            return 1
    else:
        u = Fraction(t) * (1 << j)
        whole = math.floor(u)
        if u == whole:
            return 1
    return 1 if whole % 2 == 0 else -1


def _power_of_two_scale(arr):
    top = float(np.max(np.abs(arr)))
    if top == 0.0:
        return arr, 0
    # scale the largest entry into [1, 2)
    e = math.frexp(top)[1] - 1
    return np.ldexp(arr, -e), e


def exact_moment(y, r: float, bit_budget: int = DEFAULT_BIT_BUDGET, threads=None) -> MomentResult:
    """(2^-B sum over all sign assignments of |sum y eta^(1)...eta^(m)|^r)^(1/r), B = sum N_j."""
    _check_r(r)
    arr = as_tensor(y)
    n_bits = sum(arr.shape)
    _engine.check_budget(n_bits, bit_budget)
    if not np.any(arr):
        return MomentResult(r, 0.0, 2**n_bits, Method.FULL_ENUM)
    scaled, e = _power_of_two_scale(arr)
    total, _ = _engine.enumerate_signs(
        scaled.reshape(1, -1), arr.shape, _engine.MODE_POWER_SUM, r, bit_budget, threads
    )
    mean = math.ldexp(total, -n_bits)
    value = math.ldexp(mean ** (1.0 / r), e)
    return MomentResult(r, value, 2**n_bits, Method.FULL_ENUM)


def _is_uniform(v):
    a = np.abs(v)
    return bool(np.all(a == a[0]))


def moment_rank_one(factors, r: float, bit_budget: int = DEFAULT_BIT_BUDGET, threads=None) -> MomentResult:
    """Moment of the separable tensor factors[0] x ... x factors[m-1].

    The m-fold integral factorizes, so the value is the product of the 1-d
    moments.  Factors whose entries share one absolute value use the
    binomial closed form; the rest are enumerated.
    """
    from .witnesses import binomial_moment

    _check_r(r)
    if len(factors) < 1:
        raise DomainError("need at least one factor")
    value = 1.0
    configs = 0
    for factor in factors:
        v = as_tensor(factor)
        if v.ndim != 1:
            raise DomainError("rank-one factors must be vectors")
        if _is_uniform(v):
            n = v.size
            one_d = abs(float(v[0])) * math.sqrt(n) * binomial_moment(n, r)
            configs += n + 1
        else:
            res = exact_moment(v, r, bit_budget, threads)
            one_d = res.value
            configs += res.configurations_enumerated
        value *= one_d
    return MomentResult(r, value, configs, Method.RANK_ONE_PRODUCT)


def sign_transform(y, signs) -> np.ndarray:
    """Multiply entry (i_1..i_m) by eps^(1)_{i_1} ... eps^(m)_{i_m}."""
    arr = as_tensor(y)
    if len(signs) != arr.ndim:
        raise DomainError(f"need {arr.ndim} sign vectors, got {len(signs)}")
    out = arr.copy()
    for axis, s in enumerate(signs):
        s = np.asarray(s)
        if s.shape != (arr.shape[axis],):
            raise DomainError(f"sign vector {axis} has shape {s.shape}, axis has {arr.shape[axis]}")
        if not np.all(np.abs(s) == 1):
            raise DomainError("signs must be exactly +1 or -1")
        shape = [1] * arr.ndim
        shape[axis] = -1
        out *= s.astype(np.float64).reshape(shape)
    return out


def l2_of_tensor(y) -> float:
    return lp_norm(np.asarray(y, dtype=np.float64).ravel(), 2)
