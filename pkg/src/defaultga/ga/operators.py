"""Rank-replication selection, one-point crossover and bit-flip mutation."""

from __future__ import annotations

import random
from typing import Mapping, Optional, Sequence


def rank_key(g: str, fitness) -> tuple:
    """Total order used for ranking: penalty, then |CGD|, then larger bit value first.

    The bit value reads the first bit as least significant, so ``01001`` (18)
    outranks ``10010`` (9).
    """
    return (fitness[0], fitness[1], -int(g[::-1], 2) if g else 0)


def triangular_levels(p_size: int) -> int:
    """Smallest ``N`` with ``N + (N-1) + ... + 1 >= p_size`` (25 for 325, 30 for 465)."""
    n = 1
    while n * (n + 1) // 2 < p_size:
        n += 1
    return n


def rank_weights(n: int, rank_levels: int) -> list:
    """Weights ``N, N-1, ..., 1`` for the first ``N = rank_levels`` ranks, 0 beyond."""
    return [max(rank_levels - r, 0) for r in range(n)]


def apportion(weights: Sequence[int], total: int) -> list:
    """Largest-remainder apportionment of ``total`` seats in proportion to ``weights``.

    Remainder ties go to the better (earlier) rank.
    """
    s = sum(weights)
    quotas = [w * total / s for w in weights]
    counts = [int(q) for q in quotas]
    left = total - sum(counts)
    by_remainder = sorted(range(len(weights)), key=lambda r: (-(quotas[r] - counts[r]), r))
    for r in by_remainder[:left]:
        counts[r] += 1
    return counts


def select(population: Sequence[str], fitnesses: Sequence, p_size: int,
           rank_levels: Optional[int] = None) -> list:
    """Build the intermediate population by replicating ranked distinct chromosomes.

    Distinct chromosome ``r`` (0 = best) gets weight ``max(N - r, 0)`` and a
    share of ``p_size`` copies in proportion to it, where ``N`` is
    ``rank_levels`` or, by default, ``triangular_levels(p_size)`` so that the
    best gets ``N`` copies, the next ``N - 1`` and so on.  The best chromosome
    always ends up with strictly more copies than anything strictly worse.
    """
    best: dict = {}
    for g, f in zip(population, fitnesses):
        best.setdefault(g, f)
    ranked = sorted(best, key=lambda g: rank_key(g, best[g]))
    if rank_levels is None:
        rank_levels = triangular_levels(p_size)
    counts = apportion(rank_weights(len(ranked), rank_levels), p_size)

    top = best[ranked[0]]
    worse = [r for r in range(1, len(ranked)) if tuple(best[ranked[r]]) > tuple(top)]
    while worse and counts[0] <= max(counts[r] for r in worse):
        donor = max(r for r in range(1, len(ranked)) if counts[r] > 0)
        counts[donor] -= 1
        counts[0] += 1

    out = []
    for g, c in zip(ranked, counts):
        out.extend([g] * c)
    return out


def crossover_at(a: str, b: str, cut: int) -> tuple:
    """Swap the tails of ``a`` and ``b`` after the first ``cut`` bits."""
    if len(a) != len(b):
        raise ValueError("parents differ in length")
    return a[:cut] + b[cut:], b[:cut] + a[cut:]


def cut_points(n: int, aligned: bool = True) -> range:
    """Admissible cuts: gene boundaries (even positions) or, if not ``aligned``, any of 1..n-1."""
    return range(2, n - 1, 2) if aligned else range(1, n)


def crossover(a: str, b: str, rng: random.Random, p_c: float,
              aligned: bool = True, forced: Mapping[int, str] = None) -> tuple:
    """One-point crossover applied with probability ``p_c``."""
    if len(a) != len(b):
        raise ValueError("parents differ in length")
    if rng.random() >= p_c:
        return a, b
    cuts = cut_points(len(a), aligned)
    if not cuts:
        return a, b
    c, d = crossover_at(a, b, rng.choice(cuts))
    if forced:
        c, d = _force(c, forced), _force(d, forced)
    return c, d


def mutate(g: str, rng: random.Random, p_m: float, forced: Mapping[int, str] = None) -> str:
    """Flip every non-forced bit independently with probability ``p_m``.

    One random draw is consumed per non-forced bit, in bit order.
    """
    forced = forced or {}
    bits = list(g)
    for k, b in enumerate(bits):
        if k in forced:
            continue
        if rng.random() < p_m:
            bits[k] = "1" if b == "0" else "0"
    return "".join(bits)


def _force(g: str, forced: Mapping[int, str]) -> str:
    bits = list(g)
    for k, v in forced.items():
        bits[k] = v
    return "".join(bits)
