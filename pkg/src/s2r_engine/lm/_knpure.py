"""Pure-Python query kernel, the fallback when the compiled one is absent."""

from __future__ import annotations

import numpy as np

from ._tables import LevelTable


class KnKernel:
    """Interpolated smoothed next-token distributions over int-coded tokens.

    ``levels[k-1]`` maps a ``k - 1``-token context to pre-discounted
    continuation arrays. Below level 1 sits the uniform distribution, so
    every query yields a proper distribution over the vocabulary. A
    context absent at level ``k`` is absent at every higher level, which
    lets the walk stop early; out-of-vocabulary context tokens are coded
    as ``-1`` and never match a table, forcing backoff below them.
    """

    backend = "python"

    def __init__(self, order: int, vocab_size: int, levels: list[LevelTable]):
        self.order = order
        self.vocab_size = vocab_size
        self.levels = levels

    def distribution(self, context: tuple[int, ...]) -> np.ndarray:
        p = np.full(self.vocab_size, 1.0 / self.vocab_size)
        top = min(self.order, len(context) + 1)
        for k in range(1, top + 1):
            ctx = context[len(context) - (k - 1) :] if k > 1 else ()
            entry = self.levels[k - 1].get(ctx)
            if entry is None:
                break
            ids, weights, backoff_mass = entry
            p *= backoff_mass
            p[ids] += weights
        return p

    def topk(self, context: tuple[int, ...], k: int) -> list[int]:
        p = self.distribution(context)
        ranked = np.argsort(-p, kind="stable")  # ties keep ascending id
        return [int(i) for i in ranked[: min(k, self.vocab_size)]]
