"""Uniform-witness ratios against N, showing the approach to (A_r)^m for p0 < r < 2.

Writes a CSV with one row per (r, N): the ratio, the limit and their gap.
"""
import argparse
import csv
import sys
from dataclasses import dataclass, field

from khinlab import lower_bound_sweep, multiple_khintchine_constant, p0


@dataclass
class SweepConfig:
    m: int = 1
    r_values: list = field(default_factory=lambda: [1.86, 1.9, 1.95, 1.99])
    log2_N: list = field(default_factory=lambda: list(range(2, 17)))


def sweep(cfg: SweepConfig):
    Ns = [2**k for k in cfg.log2_N]
    for r in cfg.r_values:
        if not p0() < r < 2:
            raise SystemExit(f"r={r} is outside (p0, 2)")
        limit = multiple_khintchine_constant(cfg.m, r)
        for rep in lower_bound_sweep(cfg.m, r, Ns):
            yield {"r": r, "N": rep.N, "ratio": rep.ratio, "limit": limit, "gap": limit - rep.ratio}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--r", type=float, nargs="+", dest="r_values")
    ap.add_argument("--log2-N", type=int, nargs="+")
    args = ap.parse_args()
    cfg = SweepConfig(**{k: v for k, v in vars(args).items() if v is not None})
    writer = csv.DictWriter(sys.stdout, fieldnames=["r", "N", "ratio", "limit", "gap"])
    writer.writeheader()
    for row in sweep(cfg):
        writer.writerow(row)


if __name__ == "__main__":
    main()
