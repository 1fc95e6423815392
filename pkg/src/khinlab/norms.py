"""l_p norms, mixed l_p(l_q) norms and the Minkowski mixed-norm gap.

Sums go through ``math.fsum`` and inputs are rescaled by a power of two
before exponentiation, so the results are homogeneous to the last bit for
power-of-two scalings and never overflow for finite input.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = ["lp_norm", "mixed_norm", "minkowski_gap"]


def _check_exponent(p, name="p"):
    if math.isnan(p) or p <= 0:
        raise DomainError(f"{name} must be positive or inf, got {p}")


def _finite_array(a, ndim=None):
    arr = np.asarray(a, dtype=np.float64)
    if ndim is not None and arr.ndim != ndim:
        raise DomainError(f"expected a {ndim}-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("entries must be finite")
    return arr


def _lp(x: np.ndarray, p: float) -> float:
    # x: 1-d, finite, already validated
    if x.size == 0:
        return 0.0
    ax = np.abs(x)
    top = float(ax.max())
    if top == 0.0:
        return 0.0
    if p == math.inf:
        return top
    e = math.frexp(top)[1] - 1
    scaled = np.ldexp(ax, -e)
    if p == 2:
        return math.ldexp(math.sqrt(math.fsum(scaled * scaled)), e)
    if p == 1:
        return math.ldexp(math.fsum(scaled), e)
    # zero entries stay zero under x**p for p > 0
    return math.ldexp(math.fsum(scaled**p) ** (1.0 / p), e)


def lp_norm(v, p: float) -> float:
    """(sum |v_i|^p)^(1/p); max |v_i| for p = inf; a quasi-norm for p < 1."""
    _check_exponent(p)
    return _lp(_finite_array(v).ravel(), p)


def mixed_norm(a, outer: float, inner: float) -> float:
    """l_outer over rows of the l_inner norms of each row.

    Rows index the outer sum; transpose ``a`` to swap the roles.
    """
    _check_exponent(outer, "outer")
    _check_exponent(inner, "inner")
    arr = _finite_array(a, ndim=2)
    rows = np.array([_lp(row, inner) for row in arr], dtype=np.float64)
    return _lp(rows, outer)


def minkowski_gap(a, p: float, q: float) -> float:
    """RHS minus LHS of the Minkowski inequality for mixed sums, 0 < p < q < inf.

    LHS = (sum_i (sum_j |a_ij|^p)^(q/p))^(1/q)
    RHS = (sum_j (sum_i |a_ij|^q)^(p/q))^(1/p)
    """
    if not (0 < p < q < math.inf):
        raise DomainError(f"need 0 < p < q < inf, got p={p}, q={q}")
    arr = _finite_array(a, ndim=2)
    lhs = mixed_norm(arr, outer=q, inner=p)
    rhs = mixed_norm(arr.T, outer=p, inner=q)
    return rhs - lhs
