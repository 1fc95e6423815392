"""Random search for the largest mixed Littlewood ratio lhs / (C * ||T||).

Every ratio must stay at or below 1; the Littlewood matrix reaches 1 at p = inf.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from khinlab import INFINITY, MultilinearForm, Theorem, parse_exponent, verify_mixed_littlewood


@dataclass
class SearchConfig:
    p: float = INFINITY
    M: int = 2
    N: int = 4
    trials: int = 500
    seed: int = 0
    signs_only: bool = False


def search(cfg: SearchConfig):
    rng = np.random.default_rng(cfg.seed)
    best = {Theorem.MIXED_C: (0.0, None), Theorem.MIXED_D: (0.0, None)}
    for _ in range(cfg.trials):
        shape = (cfg.N,) * cfg.M
        a = rng.choice([-1.0, 1.0], size=shape) if cfg.signs_only else rng.uniform(-1, 1, size=shape)
        T = MultilinearForm(a, cfg.p)
        for which in best:
            rep = verify_mixed_littlewood(T, which)
            if not rep.holds:
                raise SystemExit(f"violation found: {rep}")
            score = rep.ratio / rep.constant if rep.ratio is not None else 0.0
            if score > best[which][0]:
                best[which] = (score, a)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=parse_exponent, default=INFINITY)
    ap.add_argument("--M", type=int, default=2)
    ap.add_argument("--N", type=int, default=4)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--signs-only", action="store_true")
    cfg = SearchConfig(**vars(ap.parse_args()))
    lw = verify_mixed_littlewood(MultilinearForm([[1.0, 1.0], [1.0, -1.0]], INFINITY))
    print(f"Littlewood matrix at p=inf: ratio/constant = {lw.ratio / lw.constant:.15f}")
    for which, (score, a) in search(cfg).items():
        print(f"{which.value}: best ratio/constant = {score:.6f} over {cfg.trials} forms of shape {(cfg.N,) * cfg.M}")


if __name__ == "__main__":
    main()
