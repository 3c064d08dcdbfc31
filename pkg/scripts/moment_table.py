"""Print exact moment polynomials for every layout up to a total, with an optional Wick cross-check."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rmtmoments import Ensemble, MomentCache, moment
from rmtmoments.cli import table_layouts
from rmtmoments.layout import format_layout
from rmtmoments.oracle.wick import DEFAULT_MAX_TOTAL, wick_moment


@dataclass
class TableConfig:
    ensemble: Ensemble = Ensemble.GUE
    max_total: int = 8
    wick: bool = False


def run(cfg: TableConfig) -> None:
    cache = MomentCache()
    start = time.perf_counter()
    for l in table_layouts(cfg.ensemble, cfg.max_total):
        poly = moment(cfg.ensemble, l, cache)
        mark = ""
        if cfg.wick and sum(l) <= DEFAULT_MAX_TOTAL[cfg.ensemble]:
            mark = "  wick ok" if wick_moment(cfg.ensemble, l) == poly else "  WICK MISMATCH"
        print(f"({format_layout(l)})\t{poly.to_text()}{mark}")
    st = cache.stats()
    print(f"# {sum(st.entries.values())} cached layouts, {time.perf_counter() - start:.2f}s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ensemble", type=Ensemble.parse, default=TableConfig.ensemble)
    ap.add_argument("--max-L", dest="max_total", type=int, default=TableConfig.max_total)
    ap.add_argument("--wick", action="store_true")
    run(TableConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
