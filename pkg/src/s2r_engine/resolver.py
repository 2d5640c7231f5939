"""Binding abstract GUI actions to concrete model elements.

Candidates are the elements of the reached screen (all elements when the
previous step failed to match and the screen is the wildcard), filtered
by action-type compatibility, then ranked by a weighted mix of phrase
similarity and screen proximity:

    R = alpha * Max(S(desc, text), S(desc, id words)) + (1 - alpha) / (1 + D)

when the similarity Max exceeds beta, and 0 otherwise. ``compute_s2res``
maps a whole description incrementally: the longest prefix of clauses
whose actions are unchanged is reused as-is and remapping restarts at
the first divergence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gui_model import ElementNode, GuiModel, screen_distance
from .nlp import (
    AbstractGuiAction,
    NlpConfig,
    DEFAULT_CONFIG,
    expand_placeholders,
    extract_aga,
    preprocess,
    split_clauses,
    split_sentences,
)
from .similarity import EmbeddingStore, identifier_words

# action kinds a dummy self-transition is taken to satisfy: the action
# happened, the screen just did not change
DUMMY_SATISFIES = frozenset({"CLICK", "LONG_CLICK", "TYPE", "SCROLL"})

WILDCARD = None  # reached screen unknown: any screen in the model


@dataclass(frozen=True)
class GuiElementRef:
    e_screen: str
    e_type: str
    e_id: str
    e_text: str


@dataclass(frozen=True)
class GuiAction:
    a_type: str
    element: GuiElementRef
    params: tuple[str, ...] = ()


@dataclass(frozen=True)
class S2REntity:
    s2r_text: str
    a_action: AbstractGuiAction
    action: GuiAction | None = None
    b_screen: str | None = None
    a_screen: str | None = None  # None marks the wildcard reached-screen state

    @property
    def validated(self) -> bool:
        return self.action is not None


@dataclass(frozen=True)
class RankingParams:
    alpha: float = 0.5
    beta: float = 0.5
    unreachable_as_max: bool = False  # see screen_distance

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must be in [0, 1), got {self.beta}")


def _accepts(gm: GuiModel, element: ElementNode, a_type: str) -> str | None:
    """Target screen of the first transition compatible with ``a_type``."""
    for edge in gm.transitions_from(element.key):
        if edge.a_type == a_type:
            return edge.target
    for edge in gm.transitions_from(element.key):
        if edge.a_type == "DUMMY" and a_type in DUMMY_SATISFIES:
            return edge.target
    return None


def rank_elements(
    gm: GuiModel,
    store: EmbeddingStore,
    lrs: str,
    rs: str | None,
    aga: AbstractGuiAction,
    params: RankingParams = RankingParams(),
) -> list[tuple[ElementNode, float]]:
    """Candidate elements with their relevance scores, best first."""
    candidates = gm.elements_on(rs) if rs is not None else list(gm.elements.values())
    scored: list[tuple[ElementNode, float]] = []
    for element in candidates:
        if _accepts(gm, element, aga.a_type) is None:
            continue
        if aga.a_type == "ROTATE":
            # rotation has no element description; the pseudo-element of the
            # reached screen is the only sensible binding
            if rs is None or not element.is_rotation:
                continue
            scored.append((element, 1.0))
            continue
        if element.is_rotation:
            continue
        if aga.e_desc is None:
            scored.append((element, 0.0))
            continue
        sim = 0.0
        if element.text:
            sim = max(sim, store.score(aga.e_desc, element.text).value)
        if element.e_id:
            sim = max(sim, store.score(aga.e_desc, identifier_words(element.e_id)).value)
        if sim > params.beta:
            distance = screen_distance(
                gm, lrs, element.screen, unreachable_as_max=params.unreachable_as_max
            )
            score = params.alpha * sim + (1.0 - params.alpha) / (1.0 + distance)
        else:
            score = 0.0
        scored.append((element, score))
    # ties: prefer the reached screen, then element id order
    scored.sort(key=lambda pair: (-pair[1], 0 if pair[0].screen == rs else 1, pair[0].e_id))
    return scored


def _action_params(aga: AbstractGuiAction) -> tuple[str, ...]:
    if aga.p_desc is None:
        return ()
    if aga.a_type == "TYPE":
        return (aga.p_desc.strip('"“”'),)
    if aga.a_type == "SCROLL":
        return (aga.p_desc.upper(),)
    return (aga.p_desc,)


def resolve_aga(
    gm: GuiModel,
    store: EmbeddingStore,
    lrs: str,
    rs: str | None,
    aga: AbstractGuiAction,
    params: RankingParams = RankingParams(),
    s2r_text: str = "",
) -> S2REntity:
    """Create the entity for one abstract action.

    The top-ranked element with a positive score becomes the action
    target; an all-zero ranking yields an entity without a GUI action and
    the reached screen downstream becomes the wildcard.
    """
    ranked = rank_elements(gm, store, lrs, rs, aga, params)
    if ranked and ranked[0][1] > 0.0:
        element = ranked[0][0]
        target = _accepts(gm, element, aga.a_type)
        action = GuiAction(
            a_type=aga.a_type,
            element=GuiElementRef(
                e_screen=element.screen,
                e_type=element.etype,
                e_id=element.e_id,
                e_text=element.text,
            ),
            params=_action_params(aga),
        )
        return S2REntity(
            s2r_text=s2r_text,
            a_action=aga,
            action=action,
            b_screen=element.screen,
            a_screen=target,
        )
    return S2REntity(s2r_text=s2r_text, a_action=aga, action=None, b_screen=rs, a_screen=None)


def extract_clause_agas(
    gm: GuiModel, s2rs_text: str, config: NlpConfig = DEFAULT_CONFIG
) -> list[tuple[str, AbstractGuiAction]]:
    """(clause text, abstract action) pairs for every action clause of the
    complete sentences in the description; clauses describing no GUI
    action are not steps and yield nothing."""
    pairs: list[tuple[str, AbstractGuiAction]] = []
    sentences, _ = split_sentences(s2rs_text)
    for sentence in sentences:
        pre = preprocess(sentence, gm, config)
        for clause in split_clauses(pre.text, config):
            aga = extract_aga(clause, config)
            if aga is None:
                continue
            aga = AbstractGuiAction(
                a_type=aga.a_type,
                e_desc=expand_placeholders(aga.e_desc, pre.placeholders)
                if aga.e_desc
                else None,
                p_desc=expand_placeholders(aga.p_desc, pre.placeholders)
                if aga.p_desc
                else None,
            )
            pairs.append((expand_placeholders(clause, pre.placeholders), aga))
    return pairs


def compute_s2res(
    gm: GuiModel,
    store: EmbeddingStore,
    s2rs_text: str,
    prev_entities: list[S2REntity] | None = None,
    params: RankingParams = RankingParams(),
    config: NlpConfig = DEFAULT_CONFIG,
) -> list[S2REntity]:
    """Map the whole description to entities, reusing the longest prefix of
    previously mapped entities whose clause and abstract action are
    unchanged. The first action starts from the app's initial screen; a
    step that fails to match turns the reached screen into the wildcard
    while the last successfully matched screen keeps feeding distances.
    """
    prev_entities = prev_entities or []
    pairs = extract_clause_agas(gm, s2rs_text, config)

    reuse = 0
    for (clause, aga), prev in zip(pairs, prev_entities):
        if prev.s2r_text == clause and prev.a_action == aga:
            reuse += 1
        else:
            break

    entities: list[S2REntity] = list(prev_entities[:reuse])
    lrs = gm.initial_screen
    rs: str | None = gm.initial_screen
    for entity in entities:
        if entity.validated:
            rs = entity.a_screen
            lrs = entity.a_screen if entity.a_screen is not None else lrs
        else:
            rs = WILDCARD

    for clause, aga in pairs[reuse:]:
        entity = resolve_aga(gm, store, lrs, rs, aga, params, s2r_text=clause)
        entities.append(entity)
        if entity.validated:
            rs = entity.a_screen
            lrs = entity.a_screen if entity.a_screen is not None else lrs
        else:
            rs = WILDCARD
    return entities
