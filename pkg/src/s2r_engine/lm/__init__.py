"""Closed-vocabulary n-gram language model with Kneser-Ney smoothing.

The vocabulary is exactly the training-token set. Queries against a
context whose most recent token is out of vocabulary are flagged
no-suggestion; earlier out-of-vocabulary tokens simply force backoff to
the orders that exclude them, so one unknown token perturbs at most
``order - 1`` subsequent predictions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import ModelFormatError
from ._tables import build_levels, count_ngrams
from .backend import KnKernel, kernel_backend

ARTIFACT_FORMAT = "s2r-ngram-model"
ARTIFACT_VERSION = 1
SMOOTHING = "interpolated-kneser-ney"
DEFAULT_DISCOUNT = 0.75
MAX_ORDER = 10

__all__ = ["NgramModel", "NextPrediction", "kernel_backend", "DEFAULT_DISCOUNT", "MAX_ORDER"]


@dataclass
class NextPrediction:
    probs: dict[str, float]
    no_suggestion: bool


class NgramModel:
    def __init__(self, order, discount, vocab, raw_counts, kind=None, kernel_cls=None):
        self.order = order
        self.discount = discount
        self.kind = kind
        self.vocab: tuple[str, ...] = tuple(vocab)
        self._ids = {tok: i for i, tok in enumerate(self.vocab)}
        self._raw_counts = raw_counts  # {k: {id tuple: count}}, kept for persistence
        cls = kernel_cls or KnKernel
        self._kernel = cls(order, len(self.vocab), build_levels(raw_counts, order, discount))

    # -- training ------------------------------------------------------------

    @classmethod
    def train(cls, sequences, order, discount=DEFAULT_DISCOUNT, kind=None, kernel_cls=None):
        """Build a model from token sequences; the vocabulary is closed
        over exactly the tokens seen here."""
        if not 1 <= order <= MAX_ORDER:
            raise ValueError(f"order must be in [1, {MAX_ORDER}], got {order}")
        if not 0.0 < discount <= 1.0:
            raise ValueError(f"discount must be in (0, 1], got {discount}")
        tokens = [t for seq in sequences for t in seq]
        if not tokens:
            raise ValueError("empty corpus")
        vocab = tuple(sorted(set(tokens)))
        ids = {tok: i for i, tok in enumerate(vocab)}
        encoded = [[ids[t] for t in seq] for seq in sequences if seq]
        raw = count_ngrams(encoded, order)
        return cls(order, discount, vocab, raw, kind=kind, kernel_cls=kernel_cls)

    # -- queries ---------------------------------------------------------------

    def _encode_context(self, context) -> tuple[int, ...]:
        ids = tuple(self._ids.get(t, -1) for t in context)
        if self.order == 1:
            return ()
        return ids[-(self.order - 1) :]

    def next_distribution(self, context) -> NextPrediction:
        context = list(context)
        no_suggestion = bool(context) and context[-1] not in self._ids
        vec = self._kernel.distribution(self._encode_context(context))
        probs = {tok: float(vec[i]) for i, tok in enumerate(self.vocab)}
        return NextPrediction(probs=probs, no_suggestion=no_suggestion)

    def suggest(self, context, k) -> list[str]:
        """Top-k continuations, ties broken lexicographically; empty when
        the most recent context token is unknown."""
        if k < 1:
            raise ValueError("k must be >= 1")
        context = list(context)
        if context and context[-1] not in self._ids:
            return []
        top = self._kernel.topk(self._encode_context(context), min(k, len(self.vocab)))
        return [self.vocab[i] for i in top]

    # -- persistence -----------------------------------------------------------

    def to_dict(self) -> dict:
        counts = {}
        for k, table in sorted(self._raw_counts.items()):
            counts[str(k)] = [
                [[self.vocab[i] for i in gram], table[gram]] for gram in sorted(table)
            ]
        return {
            "format": ARTIFACT_FORMAT,
            "version": ARTIFACT_VERSION,
            "kind": self.kind,
            "order": self.order,
            "discount": self.discount,
            "smoothing": SMOOTHING,
            "vocabulary": list(self.vocab),
            "counts": counts,
        }

    def save(self, path: str | Path) -> None:
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        Path(path).write_text(text + "\n", encoding="utf-8")

    @classmethod
    def from_dict(cls, data: dict) -> "NgramModel":
        if (
            data.get("format") != ARTIFACT_FORMAT
            or data.get("version") != ARTIFACT_VERSION
            or data.get("smoothing") != SMOOTHING
        ):
            raise ModelFormatError(
                f"expected {ARTIFACT_FORMAT} v{ARTIFACT_VERSION} ({SMOOTHING}), got "
                f"{data.get('format')!r} v{data.get('version')!r} ({data.get('smoothing')!r})"
            )
        vocab = tuple(data["vocabulary"])
        ids = {tok: i for i, tok in enumerate(vocab)}
        raw = {}
        for k_str, entries in data["counts"].items():
            raw[int(k_str)] = {tuple(ids[t] for t in gram): count for gram, count in entries}
        return cls(
            order=data["order"],
            discount=data["discount"],
            vocab=vocab,
            raw_counts=raw,
            kind=data.get("kind"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "NgramModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
