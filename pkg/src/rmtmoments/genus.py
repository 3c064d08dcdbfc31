"""Genus-refined gluing counts for GUE layouts.

The recursion below runs on its own bookkeeping index (call it the recursion
level ``h``): a split keeps ``h``, a merge raises it by one, and the empty
layout sits at ``h = 0``. Level ``h`` pairs with the power ``n^{L/2 + K - 2h}``.

Public tables are keyed by the Euler genus ``g = 1 - chi/2`` of the glued
surface instead, so that ``E_Z(l) = sum_g n^{2 - 2g + L/2 - K} eps_g(l)``.
The two agree for a single polygon and differ by ``K - 1`` in general. When
the gluing is disconnected ``chi`` can exceed 2, so ``g`` can be negative:
two 2-gons each glued to themselves give two spheres, ``g = -1``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

from .engine import Ensemble, MomentCache, moment
from .errors import ContractViolation
from .layout import Layout, as_layout, canonicalize, format_layout, s2, s3
from .polynomial import MomentPolynomial


def _require_even(L: int) -> None:
    if L < 0 or L % 2:
        raise ContractViolation(f"total exponent must be even and nonnegative, got {L}")


def euler_vertices(L: int, K: int, g: int) -> int:
    """Vertex count ``2 - 2g + L/2 - K`` of a genus-``g`` gluing."""
    _require_even(L)
    return 2 - 2 * g + L // 2 - K


def euler_genus_bound(L: int, K: int) -> int:
    """``floor(L/4 + 1 - K/2)``, the genus at zero vertices."""
    _require_even(L)
    return (L + 4 - 2 * K) // 4


@dataclass
class GenusTable:
    layout: Layout
    counts: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def polynomial(self) -> MomentPolynomial:
        """``sum_g n^{V_{L,K}(g)} eps_g`` over the positive parts of the layout."""
        parts = [x for x in self.layout if x > 0]
        L, K = sum(parts), len(parts)
        return MomentPolynomial({(euler_vertices(L, K, g), 0): c for g, c in self.counts.items()})

    def to_json(self) -> dict:
        return {
            "layout": format_layout(self.layout),
            "counts": {str(g): str(c) for g, c in sorted(self.counts.items())},
        }


class _EpsilonMemo:
    def __init__(self) -> None:
        self.lock = threading.Lock()
        self.table: dict[Layout, dict[int, int]] = {(): {0: 1}}


_memo = _EpsilonMemo()


def _children(key: Layout) -> list[tuple[Layout, int, int]]:
    """(canonical child, level shift, multiplicity) for the split and merge steps."""
    out = []
    for q in range(1, key[0]):
        out.append((canonicalize(s2(key, q)).sorted_parts, 0, 1))
    for k in range(2, len(key) + 1):
        out.append((canonicalize(s3(key, k)).sorted_parts, 1, key[k - 1]))
    return out


def epsilon_recursive(l: Sequence[int]) -> dict[int, int]:
    """Counts by recursion level; zero parts are dropped (they do not change the counts)."""
    l = as_layout(l)
    _require_even(sum(l))
    key = canonicalize(l).sorted_parts
    table = _memo.table
    stack = [key]
    while stack:
        node = stack[-1]
        if node in table:
            stack.pop()
            continue
        kids = _children(node)
        missing = [c for c, _, _ in kids if c not in table]
        if missing:
            stack.extend(missing)
            continue
        acc: dict[int, int] = {}
        for child, shift, mult in kids:
            for h, c in table[child].items():
                acc[h + shift] = acc.get(h + shift, 0) + mult * c
        with _memo.lock:
            table.setdefault(node, {h: c for h, c in acc.items() if c})
        stack.pop()
    return dict(table[key])


def epsilon_table(l: Sequence[int]) -> GenusTable:
    """Gluing counts keyed by Euler genus, for the positive parts of ``l``."""
    l = as_layout(l)
    K = sum(1 for x in l if x > 0)
    levels = epsilon_recursive(l)
    return GenusTable(l, {h - (K - 1): c for h, c in sorted(levels.items())})


def expansion_check(l: Sequence[int], cache: MomentCache | None = None) -> bool:
    """Does ``sum_g n^{V_{L,K}(g)} eps_g(l)`` reproduce the GUE moment exactly?"""
    l = as_layout(l)
    if any(x == 0 for x in l):
        raise ContractViolation(f"genus expansion needs strictly positive parts, got {l}")
    _require_even(sum(l))
    return epsilon_table(l).polynomial() == moment(Ensemble.GUE, l, cache)
