"""Count-table construction shared by both query kernels.

Level ``k`` (1-based) predicts a token from the last ``k - 1`` context
tokens. The top level uses raw k-gram counts; every lower level uses
continuation counts (for a k-gram, the number of distinct tokens that
precede it anywhere in the corpus), which is what makes the smoothing
Kneser-Ney rather than plain absolute discounting. Each table entry is
pre-discounted: ``(ids, (count - D) / total, D * types / total)``.
"""

from __future__ import annotations

from collections import Counter, defaultdict

import numpy as np

RawCounts = dict[int, Counter]
# context tuple -> (continuation ids, discounted weights, backoff mass)
LevelTable = dict[tuple[int, ...], tuple[np.ndarray, np.ndarray, float]]


def count_ngrams(sequences: list[list[int]], order: int) -> RawCounts:
    raw: RawCounts = {k: Counter() for k in range(1, order + 1)}
    for seq in sequences:
        length = len(seq)
        for i in range(length):
            top = min(order, length - i)
            for k in range(1, top + 1):
                raw[k][tuple(seq[i : i + k])] += 1
    return raw


def build_levels(raw: RawCounts, order: int, discount: float) -> list[LevelTable]:
    levels: list[LevelTable] = []
    for k in range(1, order + 1):
        if k == order:
            counts_k: dict[tuple[int, ...], int] = dict(raw[k])
        else:
            preceding: dict[tuple[int, ...], set[int]] = defaultdict(set)
            for gram in raw[k + 1]:
                preceding[gram[1:]].add(gram[0])
            counts_k = {gram: len(firsts) for gram, firsts in preceding.items()}

        grouped: dict[tuple[int, ...], list[tuple[int, int]]] = defaultdict(list)
        for gram, count in counts_k.items():
            grouped[gram[:-1]].append((gram[-1], count))

        table: LevelTable = {}
        for ctx, items in grouped.items():
            items.sort()
            ids = np.array([w for w, _ in items], dtype=np.int32)
            counts = np.array([c for _, c in items], dtype=np.float64)
            total = float(counts.sum())
            weights = (counts - discount) / total
            backoff_mass = discount * len(items) / total
            table[ctx] = (ids, weights, backoff_mass)
        levels.append(table)
    return levels
