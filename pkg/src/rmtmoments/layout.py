"""Layouts of trace exponents and the transforms used by the recursions.

A layout ``(l_1, ..., l_K)`` stands for the product ``tr(M^l_1) ... tr(M^l_K)``.
Layouts are plain tuples of nonnegative ints. Every transform acts on the
first part; callers that want a different pivot permute first (the product of
traces is symmetric in its factors).
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .errors import ContractViolation

Layout = tuple[int, ...]


class CanonicalLayout(NamedTuple):
    """Zero-free, non-increasing parts plus the number of stripped zeros."""

    sorted_parts: Layout
    zero_count: int

    def reconstruct(self) -> Layout:
        return self.sorted_parts + (0,) * self.zero_count

    @property
    def total(self) -> int:
        return sum(self.sorted_parts)


def as_layout(parts: Sequence[int]) -> Layout:
    """Validate ``parts`` and return it as a tuple."""
    out = tuple(int(x) for x in parts)
    for x, src in zip(out, parts):
        if x != src or x < 0:
            raise ContractViolation(f"layout parts must be nonnegative integers, got {parts!r}")
    return out


def total(l: Sequence[int]) -> int:
    return sum(l)


def canonicalize(l: Sequence[int]) -> CanonicalLayout:
    positive = sorted((x for x in l if x > 0), reverse=True)
    return CanonicalLayout(tuple(positive), sum(1 for x in l if x == 0))


def parse_layout(text: str) -> Layout:
    """Parse ``"4,2,2"``; the empty (or all-blank) string is the empty layout.

    >>> parse_layout("4, 2,2")
    (4, 2, 2)
    >>> parse_layout("")
    ()
    """
    if not text.strip():
        return ()
    parts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.isdigit():
            raise ContractViolation(f"invalid layout token {tok!r} in {text!r}")
        parts.append(int(tok))
    return tuple(parts)


def format_layout(l: Sequence[int]) -> str:
    return ",".join(str(x) for x in l)


def _need_first(l: Sequence[int], minimum: int, name: str) -> None:
    if not l or l[0] < minimum:
        raise ContractViolation(f"{name} needs l_1 >= {minimum}, got layout {tuple(l)}")


def s2(l: Sequence[int], q: int) -> Layout:
    """Split the first trace: ``(q-1, l_1-q-1, l_2, ...)`` for ``1 <= q <= l_1-1``."""
    _need_first(l, 1, "s2")
    if not 1 <= q <= l[0] - 1:
        raise ContractViolation(f"s2: q={q} outside [1, {l[0] - 1}]")
    return (q - 1, l[0] - q - 1, *l[1:])


def s3(l: Sequence[int], k: int) -> Layout:
    """Merge trace ``k`` (1-based, ``k >= 2``) into the first: ``l_1+l_k-2``."""
    _need_first(l, 1, "s3")
    if not 2 <= k <= len(l):
        raise ContractViolation(f"s3: k={k} outside [2, {len(l)}]")
    return (l[0] + l[k - 1] - 2, *l[1 : k - 1], *l[k:])


def w_s1(l: Sequence[int]) -> Layout:
    _need_first(l, 1, "w_s1")
    return (l[0] - 1, *l[1:])


def w_s2(l: Sequence[int], r: int) -> Layout:
    """Wishart split ``(r, l_1-r-1, l_2, ...)`` for ``1 <= r <= l_1-1``."""
    _need_first(l, 1, "w_s2")
    if not 1 <= r <= l[0] - 1:
        raise ContractViolation(f"w_s2: r={r} outside [1, {l[0] - 1}]")
    return (r, l[0] - r - 1, *l[1:])


def w_s3(l: Sequence[int], k: int) -> Layout:
    _need_first(l, 1, "w_s3")
    if not 2 <= k <= len(l):
        raise ContractViolation(f"w_s3: k={k} outside [2, {len(l)}]")
    return (l[0] + l[k - 1] - 1, *l[1 : k - 1], *l[k:])


def goe_s1(l: Sequence[int]) -> Layout:
    # The term carrying this layout has coefficient l_1 - 1, so l_1 = 1 is skipped upstream.
    _need_first(l, 2, "goe_s1")
    return (l[0] - 2, *l[1:])


def partitions(total_: int, max_part: int | None = None):
    """Yield partitions of ``total_`` as non-increasing tuples, lexicographically descending."""
    if max_part is None:
        max_part = total_
    if total_ == 0:
        yield ()
        return
    for first in range(min(total_, max_part), 0, -1):
        for rest in partitions(total_ - first, first):
            yield (first, *rest)
