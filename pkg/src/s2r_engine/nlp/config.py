"""Verb classes, particles, and the synonym table.

The defaults cover the imperative register of reproduction steps; apps
with a different vocabulary can extend them from a JSON document of the
same field names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class NlpConfig:
    click_verbs: frozenset[str] = frozenset({"click", "press", "select", "choose", "open"})
    type_verbs: frozenset[str] = frozenset({"type", "enter", "write", "input", "fill"})
    scroll_verbs: frozenset[str] = frozenset({"scroll", "swipe"})
    rotate_verbs: frozenset[str] = frozenset({"rotate", "turn"})
    directions: frozenset[str] = frozenset({"up", "down", "left", "right"})
    determiners: frozenset[str] = frozenset({"the", "a", "an", "this", "that"})
    # words that mark a clause as narrative rather than imperative when
    # they precede the verb ("The Save button is broken", "It turns black")
    subject_blockers: frozenset[str] = frozenset(
        {"the", "a", "an", "this", "that", "i", "you", "he", "she", "it", "we", "they"}
    )
    prepositions: frozenset[str] = frozenset(
        {"in", "on", "into", "onto", "at", "inside", "within", "to", "from"}
    )
    # noun-phrase-internal prepositions never end an object phrase
    np_prepositions: frozenset[str] = frozenset({"of"})
    synonyms: dict[str, str] = field(
        default_factory=lambda: {
            "tap": "click",
            "touch": "click",
            "hit": "click",
            "push": "press",
            "insert": "enter",
            "spin": "rotate",
        }
    )

    @property
    def verbs(self) -> frozenset[str]:
        return self.click_verbs | self.type_verbs | self.scroll_verbs | self.rotate_verbs

    @classmethod
    def from_file(cls, path: str | Path) -> "NlpConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        base = cls()
        kwargs = {}
        for name in (
            "click_verbs",
            "type_verbs",
            "scroll_verbs",
            "rotate_verbs",
            "directions",
            "determiners",
            "subject_blockers",
            "prepositions",
            "np_prepositions",
        ):
            if name in data:
                kwargs[name] = frozenset(w.lower() for w in data[name])
        if "synonyms" in data:
            merged = dict(base.synonyms)
            merged.update({k.lower(): v.lower() for k, v in data["synonyms"].items()})
            kwargs["synonyms"] = merged
        return cls(**kwargs) if kwargs else base


DEFAULT_CONFIG = NlpConfig()
