"""Command-line frontend: ``rmtm {eval,genus,verify,table,cache}``.

Exit codes: 0 success or match, 1 mismatch, 2 usage error, 3 resource bound.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import __version__
from .engine import Ensemble, MomentCache, moment
from .errors import BudgetExceeded, CacheVersionError, ContractViolation
from .genus import epsilon_table, expansion_check
from .layout import Layout, format_layout, parse_layout, partitions
from .oracle.harer_zagier import hz_closed_form
from .oracle.montecarlo import mc_estimate
from .oracle.wick import wick_moment

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
CACHE_ENV = "RMTM_CACHE"
DEFAULT_TABLE_CEILING = 20


class UsageError(Exception):
    pass


def _ensemble(text: str) -> Ensemble:
    try:
        return Ensemble.parse(text)
    except ContractViolation as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _layout(text: str) -> Layout:
    try:
        return parse_layout(text)
    except ContractViolation as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-file", help=f"moment cache file (default: ${CACHE_ENV})")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")

    parser = argparse.ArgumentParser(prog="rmtm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="exact moment polynomial of a layout")
    ev.add_argument("--ensemble", type=_ensemble, required=True)
    ev.add_argument("--layout", type=_layout, required=True)
    ev.add_argument("--n", type=_nonneg)
    ev.add_argument("--p", type=_nonneg)

    ge = sub.add_parser("genus", parents=[common], help="GUE gluing counts by genus")
    ge.add_argument("--layout", type=_layout, required=True)

    ve = sub.add_parser("verify", parents=[common], help="check the engine against an oracle")
    ve.add_argument("--ensemble", type=_ensemble, required=True)
    ve.add_argument("--layout", type=_layout, required=True)
    ve.add_argument("--method", choices=["wick", "closed-form", "montecarlo"], required=True)
    ve.add_argument("--n", type=int)
    ve.add_argument("--p", type=int)
    ve.add_argument("--samples", type=int)
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--max-L", dest="max_l", type=int, help="override the Wick enumeration bound")

    ta = sub.add_parser("table", parents=[common], help="moments of all layouts up to a total")
    ta.add_argument("--ensemble", type=_ensemble, required=True)
    ta.add_argument("--max-L", dest="max_l", type=_nonneg, required=True)
    ta.add_argument("--ceiling", type=_nonneg, default=DEFAULT_TABLE_CEILING)

    ca = sub.add_parser("cache", parents=[common], help="manage the moment cache file")
    ca.add_argument("action", choices=["stats", "save", "load"])
    ca.add_argument("--ensemble", type=_ensemble, help="with save: warm this ensemble first")
    ca.add_argument("--max-L", dest="max_l", type=_nonneg, help="with save: warm layouts up to this total")
    return parser


def _cache_path(args) -> str | None:
    return args.cache_file or os.environ.get(CACHE_ENV) or None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_eval(args, cache: MomentCache) -> int:
    e, l = args.ensemble, args.layout
    poly = moment(e, l, cache)
    value = None
    if args.n is not None:
        if e.is_wishart and args.p is None:
            raise UsageError("evaluating a Wishart moment needs both --n and --p")
        value = poly.evaluate(args.n, args.p or 0)
    elif args.p is not None:
        raise UsageError("--p given without --n")
    if args.format == "json":
        out = {"ensemble": e.value, "layout": format_layout(l),
               "polynomial": poly.to_json(), "text": poly.to_text()}
        if value is not None:
            out["value"] = str(value)
        _emit(json.dumps(out))
    else:
        _emit(str(value) if value is not None else poly.to_text())
    return EXIT_OK


def cmd_genus(args, cache: MomentCache) -> int:
    l = args.layout
    if sum(l) % 2:
        raise UsageError(f"genus needs an even total exponent, layout {format_layout(l)} has {sum(l)}")
    table = epsilon_table(l)
    check = expansion_check(l, cache) if all(x > 0 for x in l) else None
    if args.format == "json":
        out = table.to_json()
        out["expansion_check"] = check
        _emit(json.dumps(out))
    else:
        lines = [f"{g}: {c}" for g, c in sorted(table.counts.items())]
        if check is not None:
            lines.append(f"expansion_check: {'true' if check else 'false'}")
        _emit("\n".join(lines))
    return EXIT_OK if check in (None, True) else EXIT_MISMATCH


def cmd_verify(args, cache: MomentCache) -> int:
    e, l = args.ensemble, args.layout
    report = {"ensemble": e.value, "layout": format_layout(l)}
    actual = moment(e, l, cache)
    if args.method == "wick":
        expected = wick_moment(e, l, args.max_l)
        report.update(method="wick", match=expected == actual,
                      expected=expected.to_text(), actual=actual.to_text())
    elif args.method == "closed-form":
        if e is not Ensemble.GUE or len(l) != 1 or l[0] % 2:
            raise UsageError("closed-form verification applies to GUE layouts (2m) only")
        expected = hz_closed_form(l[0] // 2)
        report.update(method="closed_form", match=expected == actual,
                      expected=expected.to_text(), actual=actual.to_text())
    else:
        if args.n is None or args.samples is None or (e.is_wishart and args.p is None):
            need = "--n, --p and --samples" if e.is_wishart else "--n and --samples"
            raise UsageError(f"montecarlo verification needs {need}")
        exact = actual.evaluate(args.n, args.p or 0)
        est = mc_estimate(e, l, args.n, args.p or 1, args.samples, args.seed)
        report.update(method="montecarlo", match=est.agrees_with(exact),
                      expected=str(exact), actual=est.mean, std_error=est.std_error,
                      samples=est.samples, seed=est.seed, n=args.n)
        if e.is_wishart:
            report["p"] = args.p
    _emit(json.dumps(report))
    return EXIT_OK if report["match"] else EXIT_MISMATCH


def table_layouts(e: Ensemble, max_l: int) -> list[Layout]:
    """Canonical positive layouts ordered by total, then descending lexicographic."""
    step = 1 if e.is_wishart else 2
    return [part for L in range(step, max_l + 1, step) for part in partitions(L)]


def cmd_table(args, cache: MomentCache) -> int:
    e = args.ensemble
    if args.max_l > args.ceiling:
        raise BudgetExceeded("table --max-L", args.max_l, args.ceiling)
    rows = [(l, moment(e, l, cache)) for l in table_layouts(e, args.max_l)]
    if args.format == "json":
        _emit(json.dumps([{"layout": format_layout(l), "total": sum(l),
                           "polynomial": poly.to_json(), "text": poly.to_text()} for l, poly in rows]))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["ensemble", "layout", "total", "moment"])
        for l, poly in rows:
            writer.writerow([e.value, format_layout(l), sum(l), poly.to_text()])
        _emit(buf.getvalue())
    else:
        _emit("\n".join(f"({format_layout(l)})\t{poly.to_text()}" for l, poly in rows))
    return EXIT_OK


def _render_stats(cache: MomentCache, fmt: str) -> str:
    st = cache.stats()
    if fmt == "json":
        return json.dumps({"entries": st.entries, "hits": st.hits, "misses": st.misses})
    lines = [f"{name}: {count}" for name, count in st.entries.items()]
    lines += [f"hits: {st.hits}", f"misses: {st.misses}"]
    return "\n".join(lines)


def cmd_cache(args, cache: MomentCache) -> int:
    path = _cache_path(args)
    if args.action in ("save", "load") and not path:
        raise UsageError(f"cache {args.action} needs --cache-file or ${CACHE_ENV}")
    if args.action == "load" and not os.path.exists(path):
        raise UsageError(f"no cache file at {path}")
    if args.action == "save":
        if args.max_l is not None:
            ensembles = [args.ensemble] if args.ensemble else list(Ensemble)
            for e in ensembles:
                for l in table_layouts(e, args.max_l):
                    moment(e, l, cache)
        cache.save(path)
    _emit(_render_stats(cache, args.format))
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "genus": cmd_genus, "verify": cmd_verify,
            "table": cmd_table, "cache": cmd_cache}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache = MomentCache()
    try:
        path = _cache_path(args)
        if path and os.path.exists(path):
            cache.load(path)
        return COMMANDS[args.command](args, cache)
    except (UsageError, ContractViolation, CacheVersionError) as exc:
        print(f"rmtm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"rmtm: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
