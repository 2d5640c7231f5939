import random

import pytest

from s2r_engine.gui_model import ElementNode, GuiModel, TransitionEdge
from s2r_engine.nlp import AbstractGuiAction
from s2r_engine.resolver import (
    RankingParams,
    compute_s2res,
    rank_elements,
    resolve_aga,
)
from s2r_engine.similarity import SimilarityScore


class FakeStore:
    """Similarity stub with hand-pinned pair scores (symmetric)."""

    def __init__(self, table, default=0.0):
        self.table = {frozenset(k): v for k, v in table.items()}
        self.default = default

    def score(self, a, b):
        return SimilarityScore(value=self.table.get(frozenset((a, b)), self.default), fallback=False)

    def similarity(self, a, b):
        return self.score(a, b).value


def grid_model():
    """A -> B -> C chain, one clickable element per screen plus an inert one."""
    gm = GuiModel(app_id="grid", initial_screen="A")
    for name in ("A", "B", "C"):
        gm.add_screen(name)
    hops = {"A": "B", "B": "C", "C": "C"}
    for name, target in hops.items():
        elem = gm.add_element(ElementNode(screen=name, e_id=f"go_{name.lower()}", etype="Button", text=f"go {name}"))
        gm.add_transition(TransitionEdge(source=elem.key, target=target, a_type="CLICK", t_type="STATIC"))
        gm.add_element(ElementNode(screen=name, e_id=f"label_{name.lower()}", etype="TextView", text=f"label {name}"))
    return gm.finalize()


def test_ranking_anchor_new_transaction_button(gui_model, store):
    aga = AbstractGuiAction("CLICK", 'the "new transaction" button')
    ranked = rank_elements(gui_model, store, "AccountsActivity", "AccountsActivity", aga)
    assert ranked[0][0].e_id == "btn_new_transaction"
    assert ranked[0][1] > 0


def test_below_threshold_scores_zero():
    gm = grid_model()
    fake = FakeStore({frozenset(("desc", "go A")): 0.4, frozenset(("desc", "go a")): 0.3})
    ranked = rank_elements(gm, fake, "A", "A", AbstractGuiAction("CLICK", "desc"))
    assert all(score == 0.0 for _, score in ranked)


def test_equation_direct_evaluation():
    # S(text) = 0.8, S(id words) = 0.6, distance 1, alpha 0.5 -> 0.5*0.8 + 0.5*(1/2)
    gm = grid_model()
    fake = FakeStore(
        {frozenset(("desc", "go B")): 0.8, frozenset(("desc", "go b")): 0.6},
    )
    ranked = rank_elements(gm, fake, "A", "B", AbstractGuiAction("CLICK", "desc"))
    top = {e.e_id: score for e, score in ranked}
    assert top["go_b"] == pytest.approx(0.65)


def test_max_of_text_and_identifier_similarity():
    gm = grid_model()
    # identifier similarity alone is enough to clear the threshold
    fake = FakeStore({frozenset(("desc", "go a")): 0.9})
    ranked = rank_elements(gm, fake, "A", "A", AbstractGuiAction("CLICK", "desc"))
    assert ranked[0][0].e_id == "go_a"
    assert ranked[0][1] == pytest.approx(0.5 * 0.9 + 0.5 * 1.0)


def test_scores_always_within_unit_interval(gui_model, store):
    rng = random.Random(21)
    descriptions = [
        'the "new transaction" button',
        'the "Save" element',
        "the list",
        "frobnicate",
        'the "Account name" text box',
    ]
    for desc in descriptions:
        for rs in (None, "AccountsActivity", "TransactionsActivity"):
            aga = AbstractGuiAction(rng.choice(["CLICK", "TYPE"]), desc)
            for _, score in rank_elements(gui_model, store, "AccountsActivity", rs, aga):
                assert 0.0 <= score <= 1.0


def test_action_type_filter_uses_transitions(gui_model, store):
    aga = AbstractGuiAction("TYPE", 'the "Account name" text box')
    ranked = rank_elements(gui_model, store, "AccountsActivity", "AccountsActivity", aga)
    ids = [e.e_id for e, _ in ranked]
    assert "edit_text_account_name" in ids
    # clickable menu entries accept TYPE only via dummy edges, which they lack
    assert "menu_save" not in ids


def test_wildcard_reached_screen_considers_all_screens(gui_model, store):
    aga = AbstractGuiAction("TYPE", 'the "Description" text box')
    ranked = rank_elements(gui_model, store, "AccountsActivity", None, aga)
    assert ranked[0][0].e_id == "input_transaction_name"


def test_rotation_binds_structurally(gui_model, store):
    entity = resolve_aga(
        gui_model, store, "AccountsActivity", "AccountsActivity", AbstractGuiAction("ROTATE")
    )
    assert entity.validated
    assert entity.action.element.e_id == "__rotate__"
    assert entity.a_screen == "AccountsActivity"
    # wildcard screen: no structural binding possible
    entity = resolve_aga(gui_model, store, "AccountsActivity", None, AbstractGuiAction("ROTATE"))
    assert not entity.validated


def test_resolve_nonexistent_element_yields_entity_without_action(gui_model, store):
    aga = AbstractGuiAction("CLICK", 'the "Quantum Flux" panel')
    entity = resolve_aga(gui_model, store, "AccountsActivity", "AccountsActivity", aga)
    assert entity.action is None
    assert entity.a_screen is None  # wildcard downstream


def test_tie_break_prefers_reached_screen_then_element_id():
    gm = GuiModel(app_id="tie", initial_screen="A")
    gm.add_screen("A")
    gm.add_screen("B")
    for screen, e_id in (("B", "aa_widget"), ("A", "zz_widget"), ("A", "mm_widget")):
        elem = gm.add_element(ElementNode(screen=screen, e_id=e_id, etype="Button", text="same"))
        gm.add_transition(TransitionEdge(source=elem.key, target=screen, a_type="CLICK", t_type="STATIC"))
    # connect A -> B so distances are defined; same-screen candidates win ties
    bridge = gm.add_element(ElementNode(screen="A", e_id="bridge", etype="Button", text="bridge"))
    gm.add_transition(TransitionEdge(source=bridge.key, target="B", a_type="CLICK", t_type="STATIC"))
    gm.finalize()
    fake = FakeStore(
        {frozenset(("same", "desc")): 0.9},
        default=0.0,
    )
    # all three candidates tie on similarity; distance from lrs=A differs
    ranked = rank_elements(gm, fake, "A", None, AbstractGuiAction("CLICK", "desc"))
    positive = [e.e_id for e, score in ranked if score > 0]
    assert positive[0] == "mm_widget"  # on-screen-A candidates first (D=0), id order
    assert positive[1] == "zz_widget"


def test_screenshot_changes_do_not_move_the_argmax(gui_model, store):
    aga = AbstractGuiAction("CLICK", 'the "new transaction" button')
    before = rank_elements(gui_model, store, "AccountsActivity", "AccountsActivity", aga)
    for elem in gui_model.elements.values():
        elem.screenshot = "sshot.png"
    after = rank_elements(gui_model, store, "AccountsActivity", "AccountsActivity", aga)
    assert [e.e_id for e, _ in before] == [e.e_id for e, _ in after]


def test_unreachable_screens_cannot_raise_other_scores(store, gui_model):
    import copy

    aga = AbstractGuiAction("CLICK", 'the "new transaction" button')
    base = rank_elements(gui_model, store, "AccountsActivity", None, aga)
    extended = copy.deepcopy(gui_model)
    extended.add_screen("IslandScreen")
    elem = extended.add_element(
        ElementNode(screen="IslandScreen", e_id="island_btn", etype="Button", text="island")
    )
    extended.add_transition(
        TransitionEdge(source=elem.key, target="IslandScreen", a_type="CLICK", t_type="STATIC")
    )
    again = rank_elements(extended, store, "AccountsActivity", None, aga)
    base_scores = {e.e_id: s for e, s in base}
    for e, s in again:
        if e.e_id in base_scores:
            assert s == pytest.approx(base_scores[e.e_id])
    assert [e.e_id for e, _ in again][0] == [e.e_id for e, _ in base][0]


def test_same_screen_ranking_reduces_to_similarity_order(gui_model, store):
    aga = AbstractGuiAction("CLICK", 'the "Save" element')
    ranked = rank_elements(gui_model, store, "AccountsActivity", "AccountsActivity", aga)
    sims = []
    for elem, score in ranked:
        sim = 0.0
        if elem.text:
            sim = max(sim, store.similarity(aga.e_desc, elem.text))
        if elem.e_id:
            from s2r_engine.similarity import identifier_words

            sim = max(sim, store.similarity(aga.e_desc, identifier_words(elem.e_id)))
        sims.append(sim if sim > 0.5 else 0.0)
    # when lrs == rs the distance factor is constant, so score order == sim order
    assert sims == sorted(sims, reverse=True)


# -- incremental mapping -------------------------------------------------------------


STEPS = [
    'Click the "Create Account" button.',
    'Type "Checking" in the "Account name" text box.',
    'Click the "Save" element.',
    'Click the "new transaction" button.',
    'Enter "Lunch" in the "Description" text box.',
]


def test_appending_a_sentence_reuses_previous_entities(gui_model, store):
    first = compute_s2res(gui_model, store, " ".join(STEPS[:3]))
    second = compute_s2res(gui_model, store, " ".join(STEPS[:4]), prev_entities=first)
    assert len(second) == 4
    for old, new in zip(first, second):
        assert old is new  # reused objects, not recomputed equals


def test_editing_the_first_sentence_recomputes_everything(gui_model, store):
    first = compute_s2res(gui_model, store, " ".join(STEPS[:3]))
    edited = 'Click the "Save" element. ' + " ".join(STEPS[1:3])
    second = compute_s2res(gui_model, store, edited, prev_entities=first)
    assert second[0] is not first[0]


def test_unmatched_step_sets_wildcard_then_recovers(gui_model, store):
    text = (
        STEPS[0] + ' Click the "Nonexistent Gizmo" panel. '
        'Type "Lunch" in the "Description" text box.'
    )
    entities = compute_s2res(gui_model, store, text)
    assert entities[0].validated
    assert not entities[1].validated
    assert entities[1].a_screen is None
    # wildcard search still finds the description box on the other screen
    assert entities[2].validated
    assert entities[2].action.element.e_id == "input_transaction_name"


def test_incremental_equals_batch_spot_check(gui_model, store):
    rng = random.Random(5)
    texts = [" ".join(STEPS[:k]) for k in range(1, len(STEPS) + 1)]
    prev = []
    for text in texts:
        prev = compute_s2res(gui_model, store, text, prev_entities=prev)
        batch = compute_s2res(gui_model, store, text, prev_entities=[])
        assert prev == batch


def test_non_action_clauses_produce_no_entities(gui_model, store):
    text = STEPS[0] + " The app crashes with a long error."
    entities = compute_s2res(gui_model, store, text)
    assert len(entities) == 1


def test_conjoined_sentence_yields_two_entities(gui_model, store):
    text = 'Click the "Save" element and rotate the screen.'
    entities = compute_s2res(gui_model, store, text)
    assert len(entities) == 2
    assert entities[0].action.element.e_id == "menu_save"
    assert entities[1].action.a_type == "ROTATE"
    assert entities[1].action.element.e_id == "__rotate__"
    assert entities[1].a_screen == "AccountsActivity"


def test_standardized_multiword_name_resolves(gui_model, store):
    # unquoted multi-word element text goes through placeholder
    # standardization and still binds to the right element
    entities = compute_s2res(gui_model, store, "Open Create Account.")
    assert len(entities) == 1
    assert entities[0].validated
    assert entities[0].action.element.e_id == "menu_add_account"
    assert "Create Account" in entities[0].s2r_text


def test_curly_quotes_resolve_like_straight_quotes(gui_model, store):
    text = "Type “Checking” in the “Account name” text box."
    entities = compute_s2res(gui_model, store, text)
    assert len(entities) == 1
    assert entities[0].validated
    assert entities[0].action.element.e_id == "edit_text_account_name"
    assert entities[0].action.params == ("Checking",)


def test_ranking_params_validation():
    with pytest.raises(ValueError):
        RankingParams(alpha=1.5)
    with pytest.raises(ValueError):
        RankingParams(beta=1.0)
