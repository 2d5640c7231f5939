"""Text pipeline: preprocessing, segmentation, clause parsing, and the
grammar rules that extract abstract GUI actions from reproduction steps."""

from .config import DEFAULT_CONFIG, NlpConfig
from .parsing import SENTENCE_TERMINATORS, parse_clause, split_clauses, split_sentences, tokenize
from .preprocess import PreprocessResult, expand_placeholders, preprocess
from .rules import AbstractGuiAction, PartialKind, classify_partial, extract_aga

__all__ = [
    "AbstractGuiAction",
    "DEFAULT_CONFIG",
    "NlpConfig",
    "PartialKind",
    "PreprocessResult",
    "SENTENCE_TERMINATORS",
    "classify_partial",
    "expand_placeholders",
    "extract_aga",
    "parse_clause",
    "preprocess",
    "split_clauses",
    "split_sentences",
    "tokenize",
]
