"""Distance-based diversity metrics used as baselines next to behaviour count."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence


def stability_distance(p1, p2) -> Fraction:
    """One minus the Jaccard similarity of the two plans' action sets."""
    a, b = set(p1), set(p2)
    union = a | b
    if not union:
        return Fraction(0)
    return 1 - Fraction(len(a & b), len(union))


def distance_matrix(plans: Sequence, dist: Callable = stability_distance) -> list[list[Fraction]]:
    m = [[Fraction(0)] * len(plans) for _ in plans]
    for i, j in combinations(range(len(plans)), 2):
        m[i][j] = m[j][i] = Fraction(dist(plans[i], plans[j]))
    return m


def maxsum(plans: Sequence, dist: Callable = stability_distance) -> Fraction:
    return sum((Fraction(dist(plans[i], plans[j])) for i, j in combinations(range(len(plans)), 2)), Fraction(0))


def greedy_select(pool: Sequence, k: int, dist: Callable = stability_distance) -> list:
    """Start from ``pool[0]`` and repeatedly add the plan farthest (in summed distance) from the selection."""
    if not pool:
        raise ValueError("empty pool")
    if k > len(pool):
        raise ValueError(f"k={k} exceeds pool size {len(pool)}")
    chosen = [0]
    score = [Fraction(dist(pool[0], p)) for p in pool]
    while len(chosen) < k:
        best = max((i for i in range(len(pool)) if i not in chosen), key=lambda i: (score[i], -i))
        chosen.append(best)
        for i, p in enumerate(pool):
            score[i] += Fraction(dist(pool[best], p))
    return [pool[i] for i in chosen]
