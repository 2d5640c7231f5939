import random

import pytest

from s2r_engine.errors import TraceFormatError
from s2r_engine.gui_model import GuiModel, model_to_dict
from s2r_engine.traces import (
    TraceTuple,
    parse_trace_lines,
    refine_model,
    serialize_trace,
    to_gat,
    to_get,
    tuple_from_token,
)

FIG_TUPLES = [
    TraceTuple("AccountsActivity", "CLICK", "TextView", "menu_add_account"),
    TraceTuple("AccountsActivity", "TYPE", "EditText", "edit_text_account_name"),
    TraceTuple("AccountsActivity", "CLICK", "TextView", "menu_save"),
    TraceTuple("AccountsActivity", "CLICK", "ImageButton", "btn_new_transaction"),
    TraceTuple("TransactionsActivity", "TYPE", "EditText", "input_transaction_name"),
    TraceTuple("TransactionsActivity", "TYPE", "EditText", "input_transaction_amount"),
    TraceTuple("TransactionsActivity", "CLICK", "TextView", "menu_save"),
]


def test_parse_single_line():
    line = "AccountsActivity\tCLICK\tTextView\tmenu_add_account"
    assert parse_trace_lines([line]) == [FIG_TUPLES[0]]


def test_parse_empty_file():
    assert parse_trace_lines([]) == []


def test_parse_rejects_unknown_action():
    with pytest.raises(TraceFormatError):
        parse_trace_lines(["A\tSWIPE\tButton\tx"])


def test_parse_rejects_malformed_line():
    with pytest.raises(TraceFormatError):
        parse_trace_lines(["only three\tfields\there"])


def test_parse_skips_comments_and_blanks():
    lines = ["# header", "", "AccountsActivity\tCLICK\tTextView\tmenu_save"]
    assert len(parse_trace_lines(lines)) == 1


def test_round_trip_serialize_parse():
    assert parse_trace_lines(serialize_trace(FIG_TUPLES).splitlines()) == FIG_TUPLES


# -- encodings ----------------------------------------------------------------


def test_gat_token_for_second_tuple():
    gat = to_gat(FIG_TUPLES)
    assert gat.tokens[1] == "AccountsActivity.TYPE.EditText.edit_text_account_name"
    assert len(gat.tokens) == len(FIG_TUPLES)


def test_gat_round_trips_through_token_split():
    for t, token in zip(FIG_TUPLES, to_gat(FIG_TUPLES).tokens):
        assert tuple_from_token(token) == t


def test_get_first_tuple_pair():
    get = to_get(FIG_TUPLES)
    assert get.tokens[0] == "AccountsActivity.CLICK"
    assert get.tokens[1] == "AccountsActivity.TextView.menu_add_account"


def test_get_is_twice_the_trace_length():
    assert len(to_get(FIG_TUPLES).tokens) == 2 * len(FIG_TUPLES)
    one = to_get(FIG_TUPLES[:1])
    assert len(one.tokens) == 2


def random_trace(rng):
    screens = ["A", "B", "C"]
    etypes = ["Button", "EditText", "ListView"]
    actions = ["CLICK", "TYPE", "SCROLL", "LONG_CLICK"]
    return [
        TraceTuple(rng.choice(screens), rng.choice(actions), rng.choice(etypes), f"e{rng.randint(0, 9)}")
        for _ in range(rng.randint(1, 12))
    ]


def test_get_alternation_holds_over_random_traces():
    rng = random.Random(20240811)
    for _ in range(1000):
        trace = random_trace(rng)
        tokens = to_get(trace).tokens
        assert len(tokens) == 2 * len(trace)
        for i, token in enumerate(tokens):
            parts = token.split(".")
            assert len(parts) == (2 if i % 2 == 0 else 3)


def test_gat_length_matches_trace_over_random_traces():
    rng = random.Random(99)
    for _ in range(200):
        trace = random_trace(rng)
        assert len(to_gat(trace).tokens) == len(trace)


def test_token_file_round_trip(tmp_path):
    from s2r_engine.traces import read_token_file, write_token_file

    tokens = to_gat(FIG_TUPLES).tokens
    path = tmp_path / "fixture.gat"
    write_token_file(path, tokens)
    content = path.read_text(encoding="utf-8")
    assert content.count("\n") == 1  # single line of space-separated tokens
    assert " " in content
    assert read_token_file(path) == tokens


def test_lm_vocabulary_is_exactly_the_gat_token_set(gat_sequences):
    from s2r_engine.lm import NgramModel

    model = NgramModel.train(gat_sequences, order=3)
    assert set(model.vocab) == {t for seq in gat_sequences for t in seq}


# -- refinement -----------------------------------------------------------------


def test_refine_materializes_missing_screen():
    gm = GuiModel(app_id="d", initial_screen="A")
    gm.add_screen("A")
    trace = [
        TraceTuple("A", "CLICK", "Button", "go"),
        TraceTuple("Z", "CLICK", "Button", "back"),
    ]
    refined = refine_model(gm, [trace])
    assert "Z" in refined.screens
    edge = refined.transitions_from(("A", "go", "Button", ""))[0]
    assert edge.target == "Z" and edge.t_type == "TRACE"


def test_refine_covered_trace_is_fixpoint(gui_model, fixture_traces):
    before = model_to_dict(gui_model)
    refined = refine_model(gui_model, fixture_traces)
    assert model_to_dict(refined) == before


def test_refine_then_union_node_sets_order_insensitive(app_spec, fixture_traces):
    from s2r_engine.app_sim import explore_dft, extract_declared_model
    from s2r_engine.gui_model import union

    one = refine_model(
        union(extract_declared_model(app_spec), explore_dft(app_spec)), fixture_traces
    )
    other = union(
        extract_declared_model(app_spec), refine_model(explore_dft(app_spec), fixture_traces)
    )
    assert set(one.elements) == set(other.elements)
    assert set(one.screens) == set(other.screens)
