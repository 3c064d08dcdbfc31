"""Memoized evaluation of mixed trace moments by the four recursions.

Moments are for the unnormalized matrices: the hermitian ``Z`` (GUE), the
symmetric ``Z~`` (GOE), and ``Y Y*`` / ``X X^T`` for a ``p x n`` complex/real
Gaussian matrix. Results are exact polynomials in ``n`` and ``p``.
"""

from __future__ import annotations

import enum
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import CacheVersionError, ContractViolation
from .layout import (
    Layout,
    as_layout,
    canonicalize,
    format_layout,
    goe_s1,
    parse_layout,
    s2,
    s3,
    w_s1,
    w_s2,
    w_s3,
)
from .polynomial import MomentPolynomial, poly_one, poly_var_n, poly_zero

CACHE_FORMAT = "rmtmoments-cache"


class Ensemble(enum.Enum):
    GUE = "gue"
    GOE = "goe"
    WISHART_COMPLEX = "wishart-complex"
    WISHART_REAL = "wishart-real"

    @property
    def is_wishart(self) -> bool:
        return self in (Ensemble.WISHART_COMPLEX, Ensemble.WISHART_REAL)

    @property
    def zero_part_factor(self) -> tuple[int, int]:
        """Exponent of the factor contributed by a ``tr(M^0)`` factor."""
        return (0, 1) if self.is_wishart else (1, 0)

    @classmethod
    def parse(cls, name: str | "Ensemble") -> "Ensemble":
        if isinstance(name, Ensemble):
            return name
        key = name.strip().lower().replace("_", "-")
        aliases = {"wc": "wishart-complex", "wr": "wishart-real",
                   "wishartcomplex": "wishart-complex", "wishartreal": "wishart-real"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ContractViolation(f"unknown ensemble {name!r}") from None


@dataclass
class CacheStats:
    entries: dict[str, int]
    hits: int
    misses: int

    def as_tuple(self) -> tuple[dict[str, int], int, int]:
        return self.entries, self.hits, self.misses


class MomentCache:
    """Per-ensemble memo of canonical layout -> moment polynomial.

    Entries are inserted whole under a lock and never mutated, so concurrent
    readers never see a partial value. Two threads may compute the same entry;
    the first insert wins and both values are equal.
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._store: dict[Ensemble, dict[Layout, MomentPolynomial]] = {e: {} for e in Ensemble}
        self.hits = 0
        self.misses = 0

    def get(self, e: Ensemble, key: Layout) -> MomentPolynomial | None:
        return self._store[e].get(key)

    def put(self, e: Ensemble, key: Layout, value: MomentPolynomial) -> MomentPolynomial:
        with self._lock:
            return self._store[e].setdefault(key, value)

    def _count(self, hits: int = 0, misses: int = 0) -> None:
        with self._lock:
            self.hits += hits
            self.misses += misses

    def stats(self) -> CacheStats:
        with self._lock:
            return CacheStats({e.value: len(d) for e, d in self._store.items()}, self.hits, self.misses)

    def clear(self) -> None:
        with self._lock:
            for d in self._store.values():
                d.clear()
            self.hits = 0
            self.misses = 0

    def __len__(self) -> int:
        return sum(len(d) for d in self._store.values())

    def entries(self, e: Ensemble) -> dict[Layout, MomentPolynomial]:
        with self._lock:
            return dict(self._store[e])

    def save(self, path: str | os.PathLike) -> None:
        with self._lock:
            payload = {
                "format": CACHE_FORMAT,
                "version": __version__,
                "entries": {
                    e.value: {format_layout(k): v.to_json() for k, v in sorted(d.items())}
                    for e, d in self._store.items()
                },
            }
        Path(path).write_text(json.dumps(payload, indent=1))

    def load(self, path: str | os.PathLike) -> int:
        """Merge entries from ``path``; returns the number of entries read."""
        try:
            payload = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise CacheVersionError(f"{path}: unreadable cache file ({exc})") from None
        if not isinstance(payload, dict) or payload.get("format") != CACHE_FORMAT:
            raise CacheVersionError(f"{path}: not a {CACHE_FORMAT} file")
        if payload.get("version") != __version__:
            raise CacheVersionError(
                f"{path}: cache version {payload.get('version')!r} != {__version__!r}"
            )
        count = 0
        for name, table in payload["entries"].items():
            e = Ensemble.parse(name)
            for text, terms in table.items():
                key = parse_layout(text)
                if canonicalize(key).reconstruct() != key:
                    raise CacheVersionError(f"{path}: non-canonical key {text!r}")
                self.put(e, key, MomentPolynomial.from_json(terms))
                count += 1
        return count


default_cache = MomentCache()


def _transforms(e: Ensemble, l: Layout) -> list[tuple[MomentPolynomial, Layout]]:
    """Right-hand side of rule (b) for ``l`` with ``l[0] > 0``: (coefficient, layout)."""
    l1, K = l[0], len(l)
    one = poly_one()
    terms: list[tuple[MomentPolynomial, Layout]] = []
    if e is Ensemble.GUE or e is Ensemble.GOE:
        mult = 2 if e is Ensemble.GOE else 1
        if e is Ensemble.GOE and l1 >= 2:
            terms.append((MomentPolynomial.monomial(l1 - 1), goe_s1(l)))
        terms.extend((one, s2(l, q)) for q in range(1, l1))
        terms.extend((MomentPolynomial.monomial(mult * l[k - 1]), s3(l, k))
                     for k in range(2, K + 1) if l[k - 1])
    else:
        mult = 2 if e is Ensemble.WISHART_REAL else 1
        lead = poly_var_n() if e is Ensemble.WISHART_COMPLEX else poly_var_n() + (l1 - 1)
        terms.append((lead, w_s1(l)))
        terms.extend((one, w_s2(l, r)) for r in range(1, l1))
        terms.extend((MomentPolynomial.monomial(mult * l[k - 1]), w_s3(l, k))
                     for k in range(2, K + 1) if l[k - 1])
    # merge terms carry the factor l_k, so zero parts are skipped rather than merged
    return terms


def _canonical_transforms(e: Ensemble, key: Layout) -> list[tuple[MomentPolynomial, Layout]]:
    """Rule (b) on a canonical key, merging equal parts ``l_k`` into one term.

    Merges with parts of equal size give the same layout up to order, so each
    distinct size is expanded once with its multiplicity folded in.
    """
    if len(key) <= 2:
        return _transforms(e, key)
    merge_mult = 2 if e in (Ensemble.GOE, Ensemble.WISHART_REAL) else 1
    merge = s3 if not e.is_wishart else w_s3
    head = _transforms(e, key[:1])
    counts: dict[int, int] = {}
    first_index: dict[int, int] = {}
    for k in range(2, len(key) + 1):
        v = key[k - 1]
        counts[v] = counts.get(v, 0) + 1
        first_index.setdefault(v, k)
    out = [(coeff, (*child, *key[1:])) for coeff, child in head]
    for v, c in counts.items():
        out.append((MomentPolynomial.monomial(merge_mult * v * c), merge(key, first_index[v])))
    return out


def _children(e: Ensemble, key: Layout) -> dict[Layout, MomentPolynomial]:
    """Rule (b) on a canonical key with zero parts absorbed into the coefficients."""
    en, ep = e.zero_part_factor
    grouped: dict[Layout, MomentPolynomial] = {}
    for coeff, child in _canonical_transforms(e, key):
        c = canonicalize(child)
        if not e.is_wishart and c.total % 2:
            continue
        weight = coeff.shift(en * c.zero_count, ep * c.zero_count)
        prev = grouped.get(c.sorted_parts)
        grouped[c.sorted_parts] = weight if prev is None else prev + weight
    return grouped


def _evaluate(e: Ensemble, key: Layout, cache: MomentCache) -> MomentPolynomial:
    found = cache.get(e, key)
    if found is not None:
        cache._count(hits=1)
        return found
    pending: dict[Layout, dict[Layout, MomentPolynomial]] = {}
    stack = [key]
    hits = misses = 0
    # explicit stack: depth grows like L + K, well past the interpreter's recursion limit
    while stack:
        node = stack[-1]
        if cache.get(e, node) is not None:
            stack.pop()
            continue
        if not node:
            cache.put(e, node, poly_one())
            misses += 1
            stack.pop()
            continue
        children = pending.get(node)
        if children is None:
            children = pending[node] = _children(e, node)
            missing = [c for c in children if cache.get(e, c) is None]
            hits += len(children) - len(missing)
            if missing:
                stack.extend(missing)
                continue
        elif any(cache.get(e, c) is None for c in children):
            stack.extend(c for c in children if cache.get(e, c) is None)
            continue
        value = poly_zero()
        for child, coeff in children.items():
            value = value + coeff * cache.get(e, child)
        cache.put(e, node, value)
        del pending[node]
        misses += 1
        stack.pop()
    cache._count(hits=hits, misses=misses)
    return cache.get(e, key)


def moment(e: Ensemble | str, l: Sequence[int], cache: MomentCache | None = None) -> MomentPolynomial:
    """``E[prod_k tr(M^{l_k})]`` as an exact polynomial in ``n`` (and ``p``)."""
    e = Ensemble.parse(e)
    l = as_layout(l)
    if cache is None:
        cache = default_cache
    c = canonicalize(l)
    if not e.is_wishart and c.total % 2:
        return poly_zero()
    en, ep = e.zero_part_factor
    return _evaluate(e, c.sorted_parts, cache).shift(en * c.zero_count, ep * c.zero_count)


def moment_literal(e: Ensemble | str, l: Sequence[int]) -> MomentPolynomial:
    """Reference path: recurse on ``l_1`` of the layout as given, never reordering.

    Zero parts are pulled out as scalar ``tr(I)`` factors wherever they sit;
    the positive parts keep their order. The memo is keyed on exact ordered
    tuples and shares nothing with the canonical cache. Recursion depth is
    about ``L``; intended for small layouts.
    """
    e = Ensemble.parse(e)
    l = as_layout(l)
    en, ep = e.zero_part_factor
    memo: dict[Layout, MomentPolynomial] = {}

    def rec(x: Layout) -> MomentPolynomial:
        zeros = x.count(0)
        if zeros:
            return rec(tuple(v for v in x if v)).shift(en * zeros, ep * zeros)
        if x in memo:
            return memo[x]
        if not e.is_wishart and sum(x) % 2:
            value = poly_zero()
        elif not x:
            value = poly_one()
        else:
            value = poly_zero()
            for coeff, child in _transforms(e, x):
                value = value + coeff * rec(child)
        memo[x] = value
        return value

    return rec(l)


def cache_stats(cache: MomentCache | None = None) -> tuple[dict[str, int], int, int]:
    return (default_cache if cache is None else cache).stats().as_tuple()


def cache_clear(cache: MomentCache | None = None) -> None:
    (default_cache if cache is None else cache).clear()
