"""The live reporting session: per-edit dispatch, validation feedback,
prediction-backed suggestions, template rendering, and submission.

Every event carries the complete current description text plus an
insert/delete descriptor. The descriptor only routes the event; the text
is the ground truth, so the session's entity list always equals the
batch mapping of whatever the client last sent. Inserting a sentence
terminator validates steps and suggests whole next steps; inserting a
space classifies the partial step and suggests a target element, a
parameter, or a structural particle; any other insert is matched against
element names; deletions just re-validate.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from enum import Enum

from .errors import UndecodableTokenError
from .gui_model import ROTATION_ID, ElementNode, GuiModel, screen_distance
from .lm import NgramModel
from .nlp import (
    DEFAULT_CONFIG,
    NlpConfig,
    PartialKind,
    classify_partial,
    preprocess,
    split_sentences,
)
from .reports import BugReport, ReportStore, new_report_id, utc_now
from .resolver import RankingParams, S2REntity, compute_s2res
from .similarity import EmbeddingStore, identifier_words

PARAM_GHOST = '"<text>"'
PARTICLE_GHOST = "the"

# rendered noun for an element kind inside suggestion templates
ETYPE_WORDS = {
    "Button": "button",
    "ImageButton": "button",
    "FloatingActionButton": "button",
    "EditText": "text box",
    "TextView": "element",
    "ListView": "list",
    "RecyclerView": "list",
    "CheckBox": "checkbox",
    "Switch": "switch",
    "Spinner": "dropdown",
}


class SuggestionKind(Enum):
    GUI_ACTION = "GUI_ACTION"
    GUI_ELEMENT = "GUI_ELEMENT"
    PARAM = "PARAM"
    STRUCTURE = "STRUCTURE"


class EditOp(Enum):
    INSERT = "INSERT"
    DELETE = "DELETE"


@dataclass(frozen=True)
class TextEdit:
    op: EditOp
    new_text: str = ""


@dataclass(frozen=True)
class Suggestion:
    kind: SuggestionKind
    text: str
    rank: int
    token: str | None = None
    screenshot: str | None = None


@dataclass
class UpdateResult:
    entities: list[S2REntity]
    current_screen: str | None  # None = wildcard (last step unmatched)
    suggestions: list[Suggestion]


def element_label(element: ElementNode) -> str:
    return element.text if element.text else identifier_words(element.e_id)


def etype_word(etype: str) -> str:
    return ETYPE_WORDS.get(etype, "element")


def action_template(a_type: str, element: ElementNode) -> str:
    label = element_label(element)
    word = etype_word(element.etype)
    if a_type == "ROTATE":
        return "Rotate the screen."
    if a_type == "CLICK":
        return f'Click the "{label}" {word}.'
    if a_type == "LONG_CLICK":
        return f'Long click the "{label}" {word}.'
    if a_type == "TYPE":
        return f'Type "<text>" in the "{label}" {word}.'
    if a_type == "SCROLL":
        return f'Scroll down on the "{label}" {word}.'
    raise UndecodableTokenError(f"no template for action type {a_type!r}")


def render_suggestion(token: str, gm: GuiModel, rank: int = 1) -> Suggestion:
    """Turn a prediction-model token into a user-facing suggestion.

    Action tokens (screen.a_type.e_type.e_id) render through the step
    templates; element tokens (screen.e_type.e_id) render as the phrase a
    target completion inserts.
    """
    parts = token.split(".")
    if len(parts) == 4:
        screen, a_type, e_type, e_id = parts
        element = _decode_element(gm, screen, e_type, e_id)
        return Suggestion(
            kind=SuggestionKind.GUI_ACTION,
            text=action_template(a_type, element),
            rank=rank,
            token=token,
            screenshot=element.screenshot,
        )
    if len(parts) == 3:
        screen, e_type, e_id = parts
        element = _decode_element(gm, screen, e_type, e_id)
        return Suggestion(
            kind=SuggestionKind.GUI_ELEMENT,
            text=f'"{element_label(element)}" {etype_word(element.etype)}.',
            rank=rank,
            token=token,
            screenshot=element.screenshot,
        )
    raise UndecodableTokenError(token)


def _decode_element(gm: GuiModel, screen: str, e_type: str, e_id: str) -> ElementNode:
    for element in gm.elements.values():
        if element.screen == screen and element.e_id == e_id and element.etype == e_type:
            return element
    raise UndecodableTokenError(f"{screen}.{e_type}.{e_id}")


def entity_action_token(entity: S2REntity) -> str:
    action = entity.action
    e = action.element
    return f"{e.e_screen}.{action.a_type}.{e.e_type}.{e.e_id}"


def entity_element_tokens(entity: S2REntity) -> list[str]:
    action = entity.action
    e = action.element
    return [f"{e.e_screen}.{action.a_type}", f"{e.e_screen}.{e.e_type}.{e.e_id}"]


def _validated_suffix(entities: list[S2REntity]) -> list[S2REntity]:
    """Longest trailing run of entities that all carry actions; prediction
    contexts never include an unmatched step."""
    suffix: list[S2REntity] = []
    for entity in reversed(entities):
        if not entity.validated:
            break
        suffix.append(entity)
    suffix.reverse()
    return suffix


class ReportingSession:
    def __init__(
        self,
        app_id: str,
        gm: GuiModel,
        gapm: NgramModel,
        gepm: NgramModel,
        store: EmbeddingStore,
        gapm_sn: int = 3,
        gepm_sn: int = 3,
        params: RankingParams = RankingParams(),
        nlp_config: NlpConfig = DEFAULT_CONFIG,
        report_store: ReportStore | None = None,
    ):
        self.session_id = uuid.uuid4().hex
        self.app_id = app_id
        self.gm = gm
        self.gapm = gapm
        self.gepm = gepm
        self.store = store
        self.gapm_sn = gapm_sn
        self.gepm_sn = gepm_sn
        self.params = params
        self.nlp_config = nlp_config
        self.report_store = report_store
        self.full_text = ""
        self.entities: list[S2REntity] = []
        self.last_suggestions: list[Suggestion] = []
        self.closed = False

    @property
    def current_screen(self) -> str | None:
        if self.entities:
            return self.entities[-1].a_screen
        return self.gm.initial_screen

    @property
    def last_reached_screen(self) -> str:
        for entity in reversed(self.entities):
            if entity.validated:
                return entity.a_screen
        return self.gm.initial_screen

    # -- event dispatch ------------------------------------------------------

    def on_text_change(self, full_text: str, edit: TextEdit) -> UpdateResult:
        if self.closed:
            raise RuntimeError("session is closed")
        self.full_text = full_text
        if edit.op == EditOp.DELETE:
            self._recompute()
            return self._result([])
        tail = edit.new_text[-1:] if edit.new_text else ""
        if tail in (".", "!", "?"):
            self._recompute()
            return self._result(self._step_suggestions())
        if tail == " ":
            return self._result(self._partial_suggestions())
        return self._result(self._text_match_suggestions())

    def _recompute(self) -> None:
        self.entities = compute_s2res(
            self.gm,
            self.store,
            self.full_text,
            prev_entities=self.entities,
            params=self.params,
            config=self.nlp_config,
        )

    def _result(self, suggestions: list[Suggestion]) -> UpdateResult:
        self.last_suggestions = suggestions
        return UpdateResult(
            entities=list(self.entities),
            current_screen=self.current_screen,
            suggestions=suggestions,
        )

    # -- suggestion computation ------------------------------------------------

    def _step_suggestions(self) -> list[Suggestion]:
        """Whole next steps from the action prediction model, in model order."""
        context = [entity_action_token(e) for e in _validated_suffix(self.entities)]
        suggestions = []
        for token in self.gapm.suggest(context, self.gapm_sn):
            try:
                suggestions.append(render_suggestion(token, self.gm, rank=len(suggestions) + 1))
            except UndecodableTokenError:
                continue
        return suggestions

    def _current_partial(self) -> str:
        _, partial = split_sentences(self.full_text)
        return preprocess(partial.strip(), self.gm, self.nlp_config).text

    def _partial_suggestions(self) -> list[Suggestion]:
        partial = self._current_partial()
        kind = classify_partial(partial, self.nlp_config)
        if kind == PartialKind.TARGET:
            return self._target_suggestions(partial)
        if kind == PartialKind.PARAM:
            return [Suggestion(kind=SuggestionKind.PARAM, text=PARAM_GHOST, rank=1)]
        if kind == PartialKind.PARTICLE:
            return [Suggestion(kind=SuggestionKind.STRUCTURE, text=PARTICLE_GHOST, rank=1)]
        return []

    def _partial_action_type(self, partial: str) -> str | None:
        from .nlp.parsing import parse_clause

        parse = parse_clause(partial, self.nlp_config)
        if parse.root is None:
            return None
        verb = parse.tokens[parse.root].lower
        cfg = self.nlp_config
        if verb in cfg.type_verbs:
            return "TYPE"
        if verb in cfg.click_verbs:
            return "CLICK"
        if verb in cfg.scroll_verbs:
            return "SCROLL"
        if verb in cfg.rotate_verbs:
            return "ROTATE"
        return None

    def _target_suggestions(self, partial: str) -> list[Suggestion]:
        """Likely target elements for the partial step.

        The element prediction model answers when the current screen is
        known; with the wildcard screen (an unmatched previous step) the
        fallback lists every compatible element ordered by model distance
        from the last matched screen.
        """
        a_type = self._partial_action_type(partial) or "CLICK"
        screen = self.current_screen
        if screen is None:
            return self._distance_ordered_elements(a_type)
        context: list[str] = []
        for entity in _validated_suffix(self.entities):
            context.extend(entity_element_tokens(entity))
        context.append(f"{screen}.{a_type}")
        tokens = self.gepm.suggest(context, 10)  # wide, then filtered to elements
        suggestions = []
        for token in tokens:
            if len(token.split(".")) != 3:
                continue  # action tokens are not targets
            try:
                suggestions.append(render_suggestion(token, self.gm, rank=len(suggestions) + 1))
            except UndecodableTokenError:
                continue
            if len(suggestions) == self.gepm_sn:
                break
        if not suggestions:
            return self._distance_ordered_elements(a_type)
        return suggestions

    def _distance_ordered_elements(self, a_type: str) -> list[Suggestion]:
        from .resolver import DUMMY_SATISFIES

        lrs = self.last_reached_screen
        ranked: list[tuple[int, str, ElementNode]] = []
        for element in self.gm.elements.values():
            if element.is_rotation:
                continue
            compatible = any(
                t.a_type == a_type or (t.a_type == "DUMMY" and a_type in DUMMY_SATISFIES)
                for t in self.gm.transitions_from(element.key)
            )
            if not compatible:
                continue
            ranked.append(
                (screen_distance(self.gm, lrs, element.screen), element.e_id, element)
            )
        ranked.sort(key=lambda item: (item[0], item[1]))
        return [
            Suggestion(
                kind=SuggestionKind.GUI_ELEMENT,
                text=f'"{element_label(e)}" {etype_word(e.etype)}.',
                rank=i + 1,
                token=f"{e.screen}.{e.etype}.{e.e_id}",
                screenshot=e.screenshot,
            )
            for i, (_, _, e) in enumerate(ranked[: self.gepm_sn])
        ]

    def _text_match_suggestions(self) -> list[Suggestion]:
        """Completions for a partially typed element name."""
        _, partial = split_sentences(self.full_text)
        fragment = partial.strip().strip('"“”').rsplit(" ", 1)[-1].lower()
        if len(fragment) < 2:
            return []
        lrs = self.last_reached_screen
        matches: list[tuple[int, str, ElementNode]] = []
        for element in self.gm.elements.values():
            if element.is_rotation:
                continue
            label = element_label(element).lower()
            if label.startswith(fragment) or any(
                w.startswith(fragment) for w in label.split()
            ):
                matches.append(
                    (screen_distance(self.gm, lrs, element.screen), element.e_id, element)
                )
        matches.sort(key=lambda item: (item[0], item[1]))
        return [
            Suggestion(
                kind=SuggestionKind.GUI_ELEMENT,
                text=element_label(e),
                rank=i + 1,
                token=f"{e.screen}.{e.etype}.{e.e_id}",
                screenshot=e.screenshot,
            )
            for i, (_, _, e) in enumerate(matches[: self.gepm_sn])
        ]

    # -- submission --------------------------------------------------------------

    def submit(self, title: str, description: str, expected: str, observed: str) -> BugReport:
        if self.closed:
            raise RuntimeError("session is closed")
        self._recompute()
        report = BugReport(
            report_id=new_report_id(),
            app_id=self.app_id,
            title=title,
            description=description,
            expected=expected,
            observed=observed,
            s2r_text=self.full_text,
            entities=tuple(self.entities),
            created_at=utc_now(),
        )
        if self.report_store is not None:
            self.report_store.save(report)
        self.closed = True
        return report
