"""Tabulate GUE gluing counts by Euler genus and confirm they rebuild the exact moments."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from rmtmoments import MomentCache
from rmtmoments.genus import epsilon_table, expansion_check
from rmtmoments.layout import format_layout, partitions


@dataclass
class CensusConfig:
    max_total: int = 10
    connected_only: bool = False


def run(cfg: CensusConfig) -> None:
    cache = MomentCache()
    for L in range(2, cfg.max_total + 1, 2):
        for l in partitions(L):
            if cfg.connected_only and len(l) > 1:
                continue
            table = epsilon_table(l)
            counts = "  ".join(f"g={g}:{c}" for g, c in sorted(table.counts.items()))
            ok = "ok" if expansion_check(l, cache) else "MISMATCH"
            print(f"({format_layout(l)})\ttotal={table.total}\t{counts}\t{ok}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-L", dest="max_total", type=int, default=CensusConfig.max_total)
    ap.add_argument("--single-trace", dest="connected_only", action="store_true")
    run(CensusConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
