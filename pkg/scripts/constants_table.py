"""Print a table of A_p, K_{m,p} and C_{(M),p*} over a grid of exponents."""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from khinlab import conjugate_exponent, haagerup_constant, mixed_littlewood_constant, multiple_khintchine_constant, p0


@dataclass
class TableConfig:
    p_min: float = 0.25
    p_max: float = 2.5
    points: int = 19
    m: int = 2
    M: int = 3


def rows(cfg: TableConfig):
    grid = sorted(set(np.linspace(cfg.p_min, cfg.p_max, cfg.points).tolist()) | {p0()})
    for p in grid:
        A = haagerup_constant(p)
        # C_(M),q with q* = p is defined for q >= 2, i.e. 1 <= p <= 2
        q = conjugate_exponent(p) if 1 <= p <= 2 else None
        C = mixed_littlewood_constant(cfg.M, q) if q is not None else math.nan
        yield p, A.branch.value, A.value, multiple_khintchine_constant(cfg.m, p), C


def main():
    cfg = TableConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(cfg).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = TableConfig(**vars(ap.parse_args()))
    print(f"{'p':>10} {'branch':>9} {'A_p':>12} {f'K_{cfg.m},p':>12} {f'C_({cfg.M}),p*':>12}")
    for p, branch, A, K, C in rows(cfg):
        print(f"{p:10.6f} {branch:>9} {A:12.9f} {K:12.9f} {C:12.9f}")


if __name__ == "__main__":
    main()
