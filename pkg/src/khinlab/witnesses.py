"""Extremal arrays for the multiple Khintchine inequality and their ratios.

Two families certify that (A_r)^m cannot be improved:

* block ones (1 on {1,2}^m, 0 elsewhere) attains the dyadic value
  (2^{1/r-1/2})^m exactly, at every size N >= 2;
* the uniform array N^{-m/2} approaches the Gaussian value as N grows.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import gaussian_moment_limit, multiple_khintchine_constant, p0
from .errors import DegenerateError, DomainError
from .moments import as_tensor, exact_moment, l2_of_tensor

__all__ = [
    "WitnessKind",
    "WitnessReport",
    "block_ones_witness",
    "uniform_witness",
    "binomial_moment",
    "witness_ratio",
    "lower_bound_sweep",
]

# exact big-integer binomial weights up to here, log-gamma weights beyond
EXACT_BINOMIAL_MAX_N = 20_000


class WitnessKind(enum.Enum):
    BLOCK_ONES = "BLOCK_ONES"
    UNIFORM = "UNIFORM"


@dataclass(frozen=True)
class WitnessReport:
    m: int
    r: float
    N: int
    l2: float
    moment: float
    ratio: float
    theoretical_bound: float
    kind: WitnessKind | None


def block_ones_witness(m: int, N: int) -> np.ndarray:
    if m < 1:
        raise DomainError(f"order m must be >= 1, got {m}")
    if N < 2:
        raise DomainError(f"block ones witness needs N >= 2, got {N}")
    y = np.zeros((N,) * m)
    y[(slice(0, 2),) * m] = 1.0
    return y


def uniform_witness(m: int, N: int) -> np.ndarray:
    if m < 1 or N < 1:
        raise DomainError(f"need m >= 1 and N >= 1, got m={m}, N={N}")
    return np.full((N,) * m, float(N) ** (-m / 2))


def _binomial_weights(N):
    if N <= EXACT_BINOMIAL_MAX_N:
        denom = 1 << N
        out, c = [], 1
        for k in range(N + 1):
            # int / int is correctly rounded
            out.append(c / denom)
            c = c * (N - k) // (k + 1)
        return out
    ks = range(N + 1)
    head = math.lgamma(N + 1) - N * math.log(2)
    return [math.exp(head - math.lgamma(k + 1) - math.lgamma(N - k + 1)) for k in ks]


def binomial_moment(N: int, r: float) -> float:
    """Exact L_r moment of (1/sqrt N)(r_1 + ... + r_N).

    Sign vectors with k minus signs all give |N - 2k|, so the 2^N-term
    average collapses to a binomial sum over k.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"moment exponent must be a positive real, got {r}")
    weights = _binomial_weights(N)
    terms = [w * float(abs(N - 2 * k)) ** r for k, w in enumerate(weights) if N != 2 * k]
    mean = math.fsum(terms)
    if mean == 0.0 or not math.isfinite(mean):
        raise OverflowError(f"binomial moment sum is not representable for N={N}, r={r}")
    return mean ** (1.0 / r) / math.sqrt(N)


def witness_ratio(y, r: float, kind: WitnessKind | None = None, bit_budget=None, threads=None) -> WitnessReport:
    """l2(y) / ||sum y r...r||_r, a lower bound for K_{m,r}."""
    arr = as_tensor(y)
    if not np.any(arr):
        raise DegenerateError("witness ratio of the zero tensor is undefined")
    kwargs = {} if bit_budget is None else {"bit_budget": bit_budget}
    moment = exact_moment(arr, r, threads=threads, **kwargs).value
    l2 = l2_of_tensor(arr)
    return WitnessReport(
        m=arr.ndim,
        r=r,
        N=max(arr.shape),
        l2=l2,
        moment=moment,
        ratio=l2 / moment,
        theoretical_bound=multiple_khintchine_constant(arr.ndim, r),
        kind=kind,
    )


def _block_report(m, r, N, threads):
    # zero slices do not change the moment: evaluate on the {1,2}^m support
    support = block_ones_witness(m, 2)
    moment = exact_moment(support, r, threads=threads).value
    l2 = l2_of_tensor(support)
    return WitnessReport(m, r, N, l2, moment, l2 / moment,
                         multiple_khintchine_constant(m, r), WitnessKind.BLOCK_ONES)


def _uniform_report(m, r, N):
    # rank one: the m-fold moment is the m-th power of the 1-d moment
    moment = binomial_moment(N, r) ** m
    return WitnessReport(m, r, N, 1.0, moment, 1.0 / moment,
                         multiple_khintchine_constant(m, r), WitnessKind.UNIFORM)


def lower_bound_sweep(m: int, r: float, N_values, kind: WitnessKind | None = None, threads=None):
    """One witness report per N.

    By default the block ones family is used for r <= p0 and the uniform
    family for p0 < r < 2, where its ratio tends to
    gaussian_moment_limit(r)^(-m) = (A_r)^m.
    """
    if m < 1:
        raise DomainError(f"order m must be >= 1, got {m}")
    if not 0 < r < 2:
        raise DomainError(f"witness sweeps need 0 < r < 2, got {r}")
    if kind is None:
        kind = WitnessKind.BLOCK_ONES if r <= p0() else WitnessKind.UNIFORM
    reports = []
    for N in N_values:
        if kind is WitnessKind.BLOCK_ONES:
            if N < 2:
                raise DomainError(f"block ones witness needs N >= 2, got {N}")
            reports.append(_block_report(m, r, N, threads))
        else:
            reports.append(_uniform_report(m, r, int(N)))
    return reports


def clt_target(m: int, r: float) -> float:
    """Limit of the uniform witness ratio, gaussian_moment_limit(r)^(-m)."""
    return gaussian_moment_limit(r) ** (-m)
