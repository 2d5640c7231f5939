"""Word-embedding store and the phrase-similarity functions used for
ranking GUI elements against natural-language element descriptions.

Vectors load from the common text interchange format (optional
``count dimension`` header, then ``word v1 ... vD`` per line), so
full-scale pretrained files drop in unchanged. A small bundled lexicon
covers the test fixtures.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import VectorFormatError

_WORD_RE = re.compile(r"[a-z0-9']+")
_CAMEL_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z0-9])|[A-Z]?[a-z0-9]+|[A-Z]+")


def _default_stopwords() -> frozenset[str]:
    text = resources.files("s2r_engine.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


@dataclass(frozen=True)
class SimilarityScore:
    value: float
    fallback: bool  # True when token overlap replaced the embedding cosine


class EmbeddingStore:
    """Case-insensitive word-vector lookup with a configurable stopword set."""

    def __init__(self, vectors: dict[str, list[float]], dimension: int, stopwords=None):
        self.dimension = dimension
        self.vectors = vectors
        self.stopwords = frozenset(stopwords) if stopwords is not None else _default_stopwords()

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.vectors

    def tokenize(self, phrase: str) -> list[str]:
        return _WORD_RE.findall(phrase.lower())

    def content_words(self, phrase: str) -> list[str]:
        return [w for w in self.tokenize(phrase) if w not in self.stopwords]

    def phrase_vector(self, phrase: str) -> list[float] | None:
        """Mean of the in-vocabulary content-word vectors; None when no
        word of the phrase is in vocabulary."""
        hits = [self.vectors[w] for w in self.content_words(phrase) if w in self.vectors]
        if not hits:
            return None
        return [sum(col) / len(hits) for col in zip(*hits)]

    def score(self, a: str, b: str) -> SimilarityScore:
        """Cosine of the phrase vectors clamped to [0, 1]; falls back to
        token-overlap Jaccard when either phrase is out of vocabulary."""
        va = self.phrase_vector(a)
        vb = self.phrase_vector(b)
        if va is None or vb is None:
            wa = set(self.content_words(a))
            wb = set(self.content_words(b))
            union = wa | wb
            value = len(wa & wb) / len(union) if union else 0.0
            return SimilarityScore(value=value, fallback=True)
        dot = sum(x * y for x, y in zip(va, vb))
        norm = math.sqrt(sum(x * x for x in va)) * math.sqrt(sum(y * y for y in vb))
        if norm == 0.0:
            return SimilarityScore(value=0.0, fallback=True)
        return SimilarityScore(value=min(1.0, max(0.0, dot / norm)), fallback=False)

    def similarity(self, a: str, b: str) -> float:
        return self.score(a, b).value


def load_vectors(path: str | Path, stopwords=None) -> EmbeddingStore:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rows = [ln for ln in lines if ln.strip()]
    if not rows:
        raise VectorFormatError(f"{path}: empty vector file")
    start = 0
    first = rows[0].split()
    if len(first) == 2 and all(p.isdigit() for p in first):
        start = 1  # "count dimension" header
    vectors: dict[str, list[float]] = {}
    dimension: int | None = None
    for ln in rows[start:]:
        parts = ln.split()
        word, values = parts[0].lower(), [float(v) for v in parts[1:]]
        if dimension is None:
            dimension = len(values)
            if dimension == 0:
                raise VectorFormatError(f"{path}: row without vector values")
        elif len(values) != dimension:
            raise VectorFormatError(
                f"{path}: inconsistent dimension {len(values)} != {dimension} for {word!r}"
            )
        vectors[word] = values
    if not vectors:
        raise VectorFormatError(f"{path}: no vector rows")
    return EmbeddingStore(vectors=vectors, dimension=dimension, stopwords=stopwords)


def load_bundled_vectors(stopwords=None) -> EmbeddingStore:
    """The ~300-word lexicon shipped with the package."""
    with resources.as_file(
        resources.files("s2r_engine.data").joinpath("mini_vectors.txt")
    ) as path:
        return load_vectors(path, stopwords=stopwords)


def split_identifier(raw: str) -> list[str]:
    """Split a developer identifier into lowercase words: underscores are
    separators and camel-case boundaries break words."""
    words: list[str] = []
    for chunk in raw.replace("_", " ").split():
        words.extend(m.group(0).lower() for m in _CAMEL_RE.finditer(chunk))
    return words


def identifier_words(raw: str) -> str:
    return " ".join(split_identifier(raw))
