import math

import pytest

from s2r_engine.errors import VectorFormatError
from s2r_engine.similarity import (
    EmbeddingStore,
    identifier_words,
    load_bundled_vectors,
    load_vectors,
    split_identifier,
)


def write_vectors(path, rows, header=None):
    lines = ([header] if header else []) + rows
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_load_three_word_fixture(tmp_path):
    path = write_vectors(
        tmp_path / "v.txt",
        ["alpha 1 0 0", "beta 0 1 0", "gamma 0 0 1"],
        header="3 3",
    )
    store = load_vectors(path)
    assert store.dimension == 3
    assert len(store.vectors) == 3


def test_mixed_dimensions_rejected(tmp_path):
    path = write_vectors(tmp_path / "v.txt", ["alpha 1 0", "beta 0 1 0"])
    with pytest.raises(VectorFormatError):
        load_vectors(path)


def test_empty_file_rejected(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("", encoding="utf-8")
    with pytest.raises(VectorFormatError):
        load_vectors(path)


def test_bundled_lexicon_create_add_cosine(store):
    # independent cosine straight from the published file contents
    va = store.vectors["create"]
    vb = store.vectors["add"]
    dot = sum(x * y for x, y in zip(va, vb))
    norm = math.sqrt(sum(x * x for x in va)) * math.sqrt(sum(y * y for y in vb))
    assert dot / norm > 0.5
    assert store.similarity("create", "add") > 0.5
    assert len(store.vectors) >= 290


# -- phrase vectors -----------------------------------------------------------


def simple_store():
    return EmbeddingStore(
        vectors={"save": [1.0, 0.0], "button": [0.0, 1.0], "exit": [1.0, 0.0]},
        dimension=2,
        stopwords={"the", "in", "a"},
    )


def test_single_word_phrase_is_that_vector():
    store = simple_store()
    assert store.phrase_vector("save") == [1.0, 0.0]


def test_all_stopword_phrase_has_no_vector():
    store = simple_store()
    assert store.phrase_vector("in the") is None


def test_two_word_phrase_is_componentwise_mean():
    store = simple_store()
    vec = store.phrase_vector("save button")
    expected = [(1.0 + 0.0) / 2, (0.0 + 1.0) / 2]
    assert vec == expected


def test_stopword_insertion_does_not_change_phrase_vector():
    store = simple_store()
    assert store.phrase_vector("the save button") == store.phrase_vector("save button")


# -- similarity ------------------------------------------------------------------


def test_identical_phrases_score_one():
    store = simple_store()
    assert store.similarity("save button", "save button") == pytest.approx(1.0)


def test_orthogonal_vectors_score_zero():
    store = simple_store()
    assert store.similarity("save", "button") == pytest.approx(0.0)


def test_oov_pair_falls_back_to_jaccard():
    store = simple_store()
    result = store.score("frobnicate", "frobnicate widget")
    assert result.fallback
    assert result.value == pytest.approx(0.5)


def test_similarity_symmetric_and_bounded(store):
    phrases = ["the save button", "create account", "transactions list", "frobnicate"]
    for a in phrases:
        for b in phrases:
            ab = store.similarity(a, b)
            assert 0.0 <= ab <= 1.0
            assert ab == pytest.approx(store.similarity(b, a))


def test_negative_cosine_clamped_to_zero():
    store = EmbeddingStore(
        vectors={"hot": [1.0, 0.0], "cold": [-1.0, 0.0]}, dimension=2, stopwords=set()
    )
    assert store.similarity("hot", "cold") == 0.0


# -- identifier splitting ----------------------------------------------------------


def test_split_underscore_identifier():
    assert split_identifier("btn_new_transaction") == ["btn", "new", "transaction"]


def test_split_camel_case():
    assert split_identifier("menuSave") == ["menu", "save"]


def test_split_plain_word():
    assert split_identifier("save") == ["save"]


def test_split_mixed_and_acronyms():
    assert split_identifier("HTTPServer_port2") == ["http", "server", "port2"]


def test_split_idempotent_on_joined_output():
    for raw in ("btn_new_transaction", "menuSave", "save", "inputTransactionName"):
        once = split_identifier(raw)
        again = split_identifier(" ".join(once))
        assert once == again
    assert identifier_words("btn_new_transaction") == "btn new transaction"
