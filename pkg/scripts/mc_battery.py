"""Run the Monte Carlo agreement battery over many seeds and report z-scores per layout."""

from __future__ import annotations

import argparse
import statistics
from dataclasses import dataclass, field

from rmtmoments import Ensemble, MomentCache, moment
from rmtmoments.layout import format_layout, parse_layout
from rmtmoments.oracle.montecarlo import MonteCarloConfig, mc_estimate_many

DEFAULT_LAYOUTS = {
    Ensemble.GUE: [(2,), (4,), (2, 2)],
    Ensemble.GOE: [(2,), (4,), (2, 2)],
    Ensemble.WISHART_COMPLEX: [(1,), (2,), (1, 1)],
    Ensemble.WISHART_REAL: [(1,), (2,), (1, 1)],
}


@dataclass
class BatteryConfig:
    mc: MonteCarloConfig = field(default_factory=lambda: MonteCarloConfig(samples=20_000))
    seeds: int = 20
    sigmas: float = 5.0
    ensembles: list[Ensemble] = field(default_factory=lambda: list(Ensemble))
    layouts: list[tuple[int, ...]] | None = None


def run(cfg: BatteryConfig) -> None:
    mc = cfg.mc
    print("ensemble\tlayout\texact\tagree\tmean_z\tmax_|z|")
    for e in cfg.ensembles:
        layouts = cfg.layouts or DEFAULT_LAYOUTS[e]
        exact = [moment(e, l, MomentCache()).evaluate(mc.n, mc.p) for l in layouts]
        zs: list[list[float]] = [[] for _ in layouts]
        for seed in range(mc.seed, mc.seed + cfg.seeds):
            for i, est in enumerate(mc_estimate_many(e, layouts, mc.n, mc.p, mc.samples, seed, mc.chunk_size)):
                zs[i].append(est.z_score(exact[i]))
        for l, x, z in zip(layouts, exact, zs):
            agree = sum(abs(v) <= cfg.sigmas for v in z)
            print(f"{e.value}\t({format_layout(l)})\t{x}\t{agree}/{len(z)}\t"
                  f"{statistics.fmean(z):+.3f}\t{max(map(abs, z)):.3f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--p", type=int, default=6)
    ap.add_argument("--samples", type=int, default=20_000)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--ensemble", type=Ensemble.parse, action="append")
    ap.add_argument("--layout", type=parse_layout, action="append")
    a = ap.parse_args()
    cfg = BatteryConfig(MonteCarloConfig(a.n, a.p, a.samples, a.first_seed), a.seeds,
                        ensembles=a.ensemble or list(Ensemble), layouts=a.layout)
    run(cfg)


if __name__ == "__main__":
    main()
