"""Sentence preprocessing: noise removal, lexicon normalization, and
object standardization.

Parenthesized asides are dropped, non-canonical action words are mapped
through the synonym table, and multi-word GUI element names known from
the model are replaced by single placeholder tokens so the clause parser
sees them as one object. All three transforms leave quoted spans
untouched, and the placeholder map makes standardization reversible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..gui_model import GuiModel
from .config import DEFAULT_CONFIG, NlpConfig
from .parsing import _QUOTE_PAIRS

_PARENS_RE = re.compile(r"\s*\([^()]*\)")
_WORD_RE = re.compile(r"[A-Za-z']+")
_SPACE_BEFORE_PUNCT_RE = re.compile(r"\s+([.!?;,])")

PLACEHOLDER_PREFIX = "guiobj"


@dataclass(frozen=True)
class PreprocessResult:
    text: str
    placeholders: dict[str, str]  # placeholder token -> original phrase


def _split_quoted(text: str) -> list[tuple[bool, str]]:
    """Segments of (is_quoted, text); quote characters stay with their span."""
    segments: list[tuple[bool, str]] = []
    i = 0
    start = 0
    while i < len(text):
        ch = text[i]
        if ch in _QUOTE_PAIRS:
            closing = _QUOTE_PAIRS[ch]
            end = text.find(closing, i + 1)
            if end == -1:
                end = len(text) - 1
            if start < i:
                segments.append((False, text[start:i]))
            segments.append((True, text[i : end + 1]))
            i = end + 1
            start = i
        else:
            i += 1
    if start < len(text):
        segments.append((False, text[start:]))
    return segments


def _apply_synonyms(text: str, config: NlpConfig) -> str:
    def replace(match: re.Match) -> str:
        word = match.group(0)
        target = config.synonyms.get(word.lower())
        if target is None:
            return word
        if word[0].isupper():
            return target.capitalize()
        return target

    return _WORD_RE.sub(replace, text)


def _element_names(gm: GuiModel) -> list[str]:
    names = {e.text.strip() for e in gm.elements.values() if len(e.text.split()) >= 2}
    return sorted(names, key=len, reverse=True)  # longest first so supersets win


def preprocess(
    sentence: str, gm: GuiModel | None = None, config: NlpConfig = DEFAULT_CONFIG
) -> PreprocessResult:
    placeholders: dict[str, str] = {}
    names = _element_names(gm) if gm is not None else []
    counter = 0
    out: list[str] = []
    for is_quoted, segment in _split_quoted(sentence):
        if is_quoted:
            out.append(segment)
            continue
        segment = _PARENS_RE.sub("", segment)
        segment = _apply_synonyms(segment, config)
        for name in names:
            if name in segment:
                token = f"{PLACEHOLDER_PREFIX}{counter}"
                counter += 1
                placeholders[token] = name
                segment = segment.replace(name, token)
        out.append(segment)
    text = re.sub(r"  +", " ", "".join(out))
    text = _SPACE_BEFORE_PUNCT_RE.sub(r"\1", text)
    return PreprocessResult(text=text.strip(), placeholders=placeholders)


def expand_placeholders(text: str, placeholders: dict[str, str]) -> str:
    for token, original in placeholders.items():
        text = text.replace(token, original)
    return text
