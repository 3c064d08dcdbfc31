"""Brute-force moments from Wick pairings over abstract index classes.

Each trace is expanded into a cyclic chain of Gaussian factors, each factor
holding a row and a column index slot. The trace structure ties neighbouring
slots together; every perfect matching of factors ties more slots together
according to the covariance of the ensemble. A matching contributes
``n^{#classes}`` (GUE/GOE) or ``p^{#row classes} n^{#col classes}`` (Wishart).

The enumeration never touches concrete indices and shares no code with the
recursions, so it is an independent check of them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from ..engine import Ensemble
from ..errors import BudgetExceeded
from ..layout import as_layout
from ..polynomial import MomentPolynomial

ROW, COL = 0, 1
# GUE/GOE slots all range over [n]; use the COL type for them
DEFAULT_MAX_TOTAL = {
    Ensemble.GUE: 12,
    Ensemble.GOE: 12,
    Ensemble.WISHART_COMPLEX: 8,
    Ensemble.WISHART_REAL: 8,
}


class RollbackUnionFind:
    """Union by size without path compression, so unions can be undone."""

    def __init__(self, kinds: Sequence[int]):
        self.parent = list(range(len(kinds)))
        self.size = [1] * len(kinds)
        self.kinds = list(kinds)
        self.classes = [0, 0]
        for k in kinds:
            self.classes[k] += 1
        self.history: list[int] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.history.append(-1)
            return
        if self.kinds[ra] != self.kinds[rb]:
            raise AssertionError("identified a row slot with a column slot")
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.classes[self.kinds[ra]] -= 1
        self.history.append(rb)

    def mark(self) -> int:
        return len(self.history)

    def rollback(self, mark: int) -> None:
        while len(self.history) > mark:
            rb = self.history.pop()
            if rb < 0:
                continue
            ra = self.parent[rb]
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]
            self.classes[self.kinds[ra]] += 1


@dataclass
class FactorChain:
    """Gaussian factors of an expanded trace product.

    ``factors[t] = (row_slot, col_slot)``; ``conjugate[t]`` marks the factors
    that enter conjugated (Wishart complex only); ``wiring`` lists slot pairs
    forced equal by the trace structure; ``kinds[s]`` is ROW or COL.
    """

    factors: list[tuple[int, int]]
    conjugate: list[bool]
    wiring: list[tuple[int, int]]
    kinds: list[int]


def build_chain(e: Ensemble, l: Sequence[int]) -> FactorChain:
    kinds: list[int] = []
    factors: list[tuple[int, int]] = []
    conjugate: list[bool] = []
    wiring: list[tuple[int, int]] = []

    def slot(kind: int) -> int:
        kinds.append(kind)
        return len(kinds) - 1

    for lk in l:
        if lk == 0:
            # tr(I): one free index, p-valued for Wishart (X X^T is p x p)
            slot(ROW if e.is_wishart else COL)
            continue
        if not e.is_wishart:
            chain = [(slot(COL), slot(COL)) for _ in range(lk)]
            for t in range(lk):
                wiring.append((chain[t][1], chain[(t + 1) % lk][0]))
            factors.extend(chain)
            conjugate.extend([False] * lk)
            continue
        # (M M^*)^lk = M_{r0 c0} conj(M_{r1 c0}) M_{r1 c1} conj(M_{r2 c1}) ...
        plain = [(slot(ROW), slot(COL)) for _ in range(lk)]
        starred = [(slot(ROW), slot(COL)) for _ in range(lk)]
        for s in range(lk):
            wiring.append((plain[s][1], starred[s][1]))
            wiring.append((starred[s][0], plain[(s + 1) % lk][0]))
        for s in range(lk):
            factors.extend([plain[s], starred[s]])
            conjugate.extend([False, True])
    return FactorChain(factors, conjugate, wiring, kinds)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def expected_matchings(e: Ensemble, l: Sequence[int]) -> int:
    L = sum(l)
    if e is Ensemble.WISHART_COMPLEX:
        out = 1
        for k in range(2, L + 1):
            out *= k
        return out
    F = 2 * L if e is Ensemble.WISHART_REAL else L
    return 0 if F % 2 else _double_factorial(F - 1)


@dataclass
class WickResult:
    polynomial: MomentPolynomial
    matchings: int
    terms: int


def wick_enumerate(e: Ensemble | str, l: Sequence[int], max_total: int | None = None) -> WickResult:
    e = Ensemble.parse(e)
    l = as_layout(l)
    bound = DEFAULT_MAX_TOTAL[e] if max_total is None else max_total
    L = sum(l)
    if L > bound:
        raise BudgetExceeded(f"wick enumeration for {e.value}: total exponent", L, bound)
    chain = build_chain(e, l)
    uf = RollbackUnionFind(chain.kinds)
    for a, b in chain.wiring:
        uf.union(a, b)
    uf.history.clear()

    factors, conjugate = chain.factors, chain.conjugate
    twisted = e is Ensemble.GOE
    acc: Counter[tuple[int, int]] = Counter()
    leaves = 0

    def choices(s: int, t: int):
        (rs, cs), (rt, ct) = factors[s], factors[t]
        if e is Ensemble.GUE:
            # E[Z_ab Z_cd] = d_ad d_bc
            yield ((rs, ct), (cs, rt))
        elif twisted:
            # E[Z_ab Z_cd] = d_ac d_bd + d_ad d_bc
            yield ((rs, rt), (cs, ct))
            yield ((rs, ct), (cs, rt))
        else:
            yield ((rs, rt), (cs, ct))

    def rec(free: list[int]) -> None:
        nonlocal leaves
        if not free:
            leaves += 1
            acc[(uf.classes[COL], uf.classes[ROW])] += 1
            return
        s, rest = free[0], free[1:]
        for i, t in enumerate(rest):
            if e is Ensemble.WISHART_COMPLEX and conjugate[s] == conjugate[t]:
                continue
            remaining = rest[:i] + rest[i + 1 :]
            for (a, b), (c, d) in choices(s, t):
                m = uf.mark()
                uf.union(a, b)
                uf.union(c, d)
                rec(remaining)
                uf.rollback(m)

    if len(factors) % 2 == 0:
        rec(list(range(len(factors))))
    pairs = len(factors) // 2
    matchings = leaves >> pairs if twisted else leaves
    if matchings != expected_matchings(e, l):
        raise AssertionError(f"enumerated {matchings} matchings, expected {expected_matchings(e, l)}")
    if e.is_wishart:
        poly = MomentPolynomial({(en, ep): c for (en, ep), c in acc.items()})
    else:
        poly = MomentPolynomial({(en, 0): c for (en, _), c in acc.items()})
    return WickResult(poly, matchings, leaves)


def wick_moment(e: Ensemble | str, l: Sequence[int], max_total: int | None = None) -> MomentPolynomial:
    return wick_enumerate(e, l, max_total).polynomial
