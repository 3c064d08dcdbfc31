"""Seeded Monte Carlo estimates of mixed trace moments.

Randomness: ``numpy.random.Generator(PCG64(seed))`` with numpy's ziggurat
``standard_normal``. Samples are drawn in chunks of ``chunk_size`` from that
single stream, in the order documented in ``sample_matrices``; for a fixed
numpy version, seed and chunk size the estimate is reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..engine import Ensemble
from ..errors import ContractViolation
from ..layout import as_layout

DEFAULT_CHUNK = 10_000
IMAG_SIGMAS = 5.0


@dataclass(frozen=True)
class MonteCarloConfig:
    n: int = 8
    p: int = 6
    samples: int = 100_000
    seed: int = 0
    chunk_size: int = DEFAULT_CHUNK


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int
    n_val: int
    p_val: int
    imag_mean: float = 0.0
    imag_std_error: float = 0.0

    def z_score(self, exact: float) -> float:
        if self.std_error == 0:
            return 0.0 if self.mean == exact else math.inf
        return (self.mean - exact) / self.std_error

    def agrees_with(self, exact: float, sigmas: float = 5.0) -> bool:
        return abs(self.mean - exact) <= sigmas * self.std_error


class MonteCarloError(RuntimeError):
    pass


def sample_matrices(e: Ensemble, n: int, p: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` matrices whose traces of powers give the moments of ``e``.

    GUE and GOE draw one ``(size, n, n)`` standard normal block ``A``.
    GUE: diagonal ``A_ii``; for ``i < j`` the entry is ``(A_ij + i A_ji)/sqrt(2)``.
    GOE: diagonal ``sqrt(2) A_ii``; for ``i < j`` the entry is ``A_ij``.
    Wishart draws ``A`` (then ``B`` if complex) of shape ``(size, p, n)`` and
    returns ``M M^*`` with ``M = A`` or ``M = (A + iB)/sqrt(2)``.
    """
    if e is Ensemble.GUE or e is Ensemble.GOE:
        a = rng.standard_normal((size, n, n))
        upper = np.triu(a, 1)
        diag = np.einsum("bii->bi", a)
        if e is Ensemble.GUE:
            lower_t = np.swapaxes(np.tril(a, -1), 1, 2)
            off = (upper + 1j * lower_t) / math.sqrt(2)
            z = off + np.conj(np.swapaxes(off, 1, 2))
            idx = np.arange(n)
            z[:, idx, idx] = diag
            return z
        z = upper + np.swapaxes(upper, 1, 2)
        idx = np.arange(n)
        z[:, idx, idx] = math.sqrt(2) * diag
        return z
    if e is Ensemble.WISHART_REAL:
        x = rng.standard_normal((size, p, n))
        return x @ np.swapaxes(x, 1, 2)
    a = rng.standard_normal((size, p, n))
    b = rng.standard_normal((size, p, n))
    y = (a + 1j * b) / math.sqrt(2)
    return y @ np.conj(np.swapaxes(y, 1, 2))


def trace_products(mats: np.ndarray, layouts: Sequence[Sequence[int]]) -> list[np.ndarray]:
    """Per-sample ``prod_k tr(M^{l_k})`` for each layout.

    ``tr(M^k)`` is read off as ``sum_ij (M^a)_ij (M^b)_ji`` with ``a + b = k``,
    so only powers up to ``ceil(k/2)`` are formed.
    """
    needed = sorted({lk for l in layouts for lk in l})
    top = max(needed, default=0)
    dim = mats.shape[-1]
    powers = {1: mats}
    for k in range(2, (top + 1) // 2 + 1):
        powers[k] = powers[k - 1] @ mats
    traces = {}
    for k in needed:
        if k == 0:
            traces[0] = np.full(mats.shape[0], dim, dtype=mats.dtype)
        elif k == 1:
            traces[1] = np.einsum("bii->b", mats)
        else:
            a = (k + 1) // 2
            traces[k] = np.einsum("bij,bji->b", powers[a], powers[k - a])
    out = []
    for l in layouts:
        val = np.ones(mats.shape[0], dtype=mats.dtype)
        for lk in l:
            val = val * traces[lk]
        out.append(val)
    return out


def _check_args(e: Ensemble, n_val: int, p_val: int, samples: int) -> None:
    if n_val < 1:
        raise ContractViolation(f"n must be positive, got {n_val}")
    if e.is_wishart and p_val < 1:
        raise ContractViolation(f"p must be positive, got {p_val}")
    if samples < 2:
        raise ContractViolation(f"need at least 2 samples, got {samples}")


def mc_estimate_many(e: Ensemble | str, layouts: Sequence[Sequence[int]], n_val: int, p_val: int = 1,
                     samples: int = 100_000, seed: int = 0,
                     chunk_size: int = DEFAULT_CHUNK) -> list[McEstimate]:
    """Estimate several layouts from one shared stream of sampled matrices."""
    e = Ensemble.parse(e)
    layouts = [as_layout(l) for l in layouts]
    _check_args(e, n_val, p_val, samples)
    if chunk_size < 1:
        raise ContractViolation("chunk_size must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    chunks: list[list[np.ndarray]] = [[] for _ in layouts]
    left = samples
    while left > 0:
        size = min(chunk_size, left)
        mats = sample_matrices(e, n_val, p_val, size, rng)
        for acc, vals in zip(chunks, trace_products(mats, layouts)):
            acc.append(vals)
        left -= size

    results = []
    for l, acc in zip(layouts, chunks):
        vals = np.concatenate(acc)
        re = vals.real
        mean = float(re.mean())
        se = float(re.std(ddof=1) / math.sqrt(samples))
        imag_mean = imag_se = 0.0
        if np.iscomplexobj(vals):
            im = vals.imag
            imag_mean = float(im.mean())
            imag_se = float(im.std(ddof=1) / math.sqrt(samples))
            # floor for rounding noise when the imaginary parts are all ~0
            slack = 1e-9 * (1.0 + abs(mean))
            if abs(imag_mean) > IMAG_SIGMAS * imag_se + slack:
                raise MonteCarloError(
                    f"imaginary mean {imag_mean:.3g} exceeds {IMAG_SIGMAS} standard errors ({imag_se:.3g}) for {l}"
                )
        results.append(McEstimate(mean, se, samples, seed, n_val, p_val if e.is_wishart else 0,
                                  imag_mean, imag_se))
    return results


def mc_estimate(e: Ensemble | str, l: Sequence[int], n_val: int, p_val: int = 1,
                samples: int = 100_000, seed: int = 0, chunk_size: int = DEFAULT_CHUNK) -> McEstimate:
    return mc_estimate_many(e, [l], n_val, p_val, samples, seed, chunk_size)[0]
