"""Grammar rules over clause parses.

``extract_aga`` turns a complete clause into an abstract GUI action
(action type, element-description phrase, parameter phrase); the first
matching rule wins and a clause matching nothing yields None.
``classify_partial`` decides which kind of completion a partial clause
needs: a structural particle, a missing parameter, or a target element.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .config import DEFAULT_CONFIG, NlpConfig
from .parsing import ClauseParse, Token, parse_clause


@dataclass(frozen=True)
class AbstractGuiAction:
    a_type: str
    e_desc: str | None = None
    p_desc: str | None = None


class PartialKind(Enum):
    PARTICLE = "PARTICLE"
    PARAM = "PARAM"
    TARGET = "TARGET"
    NONE = "NONE"


def _pobj_phrase(parse: ClauseParse, config: NlpConfig) -> str | None:
    """The object phrase of the first verb-attached preposition, unless it
    is still just a bare determiner."""
    for prep in parse.deps(parse.root, "prep"):
        head = parse.dep(prep, "pobj")
        if head is None:
            continue
        tok = parse.tokens[head]
        if tok.kind == "WORD" and tok.lower in config.determiners:
            continue
        return parse.span_text(head)
    return None


def extract_aga(clause: str, config: NlpConfig = DEFAULT_CONFIG) -> AbstractGuiAction | None:
    parse = parse_clause(clause, config)
    if parse.root is None:
        return None
    verb = parse.tokens[parse.root].lower

    if verb in config.rotate_verbs:
        return AbstractGuiAction(a_type="ROTATE")

    dobj = parse.dep(parse.root, "dobj")
    dobj_phrase = parse.span_text(dobj) if dobj is not None else None
    pobj_phrase = _pobj_phrase(parse, config)

    if verb in config.click_verbs:
        long_mod = any(
            parse.tokens[d].lower == "long" for d in parse.deps(parse.root, "advmod")
        )
        a_type = "LONG_CLICK" if long_mod else "CLICK"
        target = dobj_phrase or pobj_phrase
        if target is None:
            return None
        return AbstractGuiAction(a_type=a_type, e_desc=target)

    if verb in config.type_verbs:
        if dobj_phrase is None and pobj_phrase is None:
            return None
        return AbstractGuiAction(a_type="TYPE", e_desc=pobj_phrase, p_desc=dobj_phrase)

    if verb in config.scroll_verbs:
        prt = parse.dep(parse.root, "prt")
        if prt is None:
            return None
        direction = parse.tokens[prt].lower.upper()
        return AbstractGuiAction(
            a_type="SCROLL", e_desc=pobj_phrase or dobj_phrase, p_desc=direction
        )

    return None


def classify_partial(text: str, config: NlpConfig = DEFAULT_CONFIG) -> PartialKind:
    parse = parse_clause(text, config)
    if parse.root is None:
        return PartialKind.NONE
    verb = parse.tokens[parse.root].lower

    if not parse.has_argument():
        # bare verb, pre-verb modifiers allowed ("Long click")
        if verb in config.click_verbs:
            return PartialKind.PARTICLE
        if verb in config.type_verbs:
            return PartialKind.PARAM
        return PartialKind.NONE

    if verb in config.type_verbs and parse.dep(parse.root, "dobj") is not None:
        preps = parse.deps(parse.root, "prep")
        if preps:
            last_prep = preps[-1]
            pobj = parse.dep(last_prep, "pobj")
            if pobj is not None:
                tok: Token = parse.tokens[pobj]
                ends_clause = pobj == len(parse.tokens) - 1
                if tok.kind == "WORD" and tok.lower in config.determiners and ends_clause:
                    return PartialKind.TARGET
    return PartialKind.NONE
