"""Model selection and baselines driven by the wasted-effort score.

A suggestion task shows a ranked list to the user; the wasted effort of
one task is the number of suggestions processed before the useful one
(the full list length when the useful one is absent). The score of a
model is total wasted effort divided by total correct suggestions,
computed by leave-one-out cross-validation over trace sequences while
walking every position >= 1 of each held-out sequence.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import SelectionError
from .lm import MAX_ORDER, NgramModel

Suggester = Callable[[Sequence[str]], list[str]]


@dataclass(frozen=True)
class PredictionTask:
    context: tuple[str, ...]
    expected: str


@dataclass
class WesResult:
    total_we: int
    total_correct: int
    tasks: int

    @property
    def defined(self) -> bool:
        return self.total_correct > 0

    @property
    def wes(self) -> float:
        if not self.defined:
            raise ZeroDivisionError("wes is undefined: no correct suggestions")
        return self.total_we / self.total_correct


@dataclass(frozen=True)
class ModelConfig:
    kind: str  # GAPM | GEPM | AKOM
    order: int
    suggestion_len: int

    def __post_init__(self):
        if not 1 <= self.order <= MAX_ORDER:
            raise ValueError(f"order out of range: {self.order}")
        if not 1 <= self.suggestion_len <= MAX_ORDER:
            raise ValueError(f"suggestion_len out of range: {self.suggestion_len}")


def wasted_effort_score(
    tasks: Iterable[PredictionTask], suggester: Suggester, suggestion_len: int
) -> WesResult:
    """Score a suggester over tasks at a fixed suggestion-list length.

    A hit at 1-based rank r costs r - 1; a miss costs however many
    suggestions were actually shown (the list may be shorter than
    ``suggestion_len``).
    """
    if suggestion_len < 1:
        raise ValueError("suggestion_len must be >= 1")
    total_we = 0
    total_correct = 0
    count = 0
    for task in tasks:
        count += 1
        shown = suggester(task.context)[:suggestion_len]
        if task.expected in shown:
            total_we += shown.index(task.expected)
            total_correct += 1
        else:
            total_we += len(shown)
    return WesResult(total_we=total_we, total_correct=total_correct, tasks=count)


def sequence_tasks(
    sequence: Sequence[str], element_positions_only: bool = False
) -> list[PredictionTask]:
    """Prediction tasks for one held-out sequence: every position >= 1.

    For element-trace sequences (alternating action/element tokens) only
    the element positions, i.e. the odd indices, are scored.
    """
    tasks = []
    for i in range(1, len(sequence)):
        if element_positions_only and i % 2 == 0:
            continue
        tasks.append(PredictionTask(context=tuple(sequence[:i]), expected=sequence[i]))
    return tasks


def _loo_folds(sequences: list[Sequence[str]]):
    for held_out in range(len(sequences)):
        training = [s for i, s in enumerate(sequences) if i != held_out]
        yield training, sequences[held_out]


def _grid_search(
    sequences: list[Sequence[str]],
    make_suggester: Callable[[list[Sequence[str]], int], Suggester],
    element_positions_only: bool,
) -> dict[tuple[int, int], WesResult]:
    """Evaluate every (order, suggestion_len) cell in [1, 10]^2.

    The ranked list at width 10 is computed once per task and reused for
    every narrower suggestion length.
    """
    cells: dict[tuple[int, int], list[int]] = defaultdict(lambda: [0, 0, 0])
    for order in range(1, MAX_ORDER + 1):
        for training, held_out in _loo_folds(sequences):
            suggester = make_suggester(training, order)
            for task in sequence_tasks(held_out, element_positions_only):
                ranked = suggester(task.context)[:MAX_ORDER]
                hit_rank = ranked.index(task.expected) if task.expected in ranked else None
                for sn in range(1, MAX_ORDER + 1):
                    cell = cells[(order, sn)]
                    cell[2] += 1
                    if hit_rank is not None and hit_rank < sn:
                        cell[0] += hit_rank
                        cell[1] += 1
                    else:
                        cell[0] += min(sn, len(ranked))
    return {
        key: WesResult(total_we=c[0], total_correct=c[1], tasks=c[2])
        for key, c in cells.items()
    }


def _pick_best(results: dict[tuple[int, int], WesResult], kind: str) -> tuple[ModelConfig, WesResult]:
    defined = {key: r for key, r in results.items() if r.defined}
    if not defined:
        raise SelectionError(f"no {kind} config produced a correct suggestion")
    # minimize wes, then order, then suggestion length
    best_key = min(defined, key=lambda key: (defined[key].wes, key[0], key[1]))
    config = ModelConfig(kind=kind, order=best_key[0], suggestion_len=best_key[1])
    return config, defined[best_key]


def select_model(
    sequences: list[Sequence[str]],
    kind: str,
    discount: float | None = None,
) -> tuple[ModelConfig, WesResult, NgramModel]:
    """Pick the (order, suggestion length) minimizing the wasted-effort
    score by leave-one-out cross-validation, then train the final model
    on the full corpus at the chosen order."""
    if kind not in ("GAPM", "GEPM"):
        raise ValueError(f"kind must be GAPM or GEPM, got {kind!r}")
    if len(sequences) < 2:
        raise SelectionError("leave-one-out selection needs at least 2 sequences")
    kwargs = {} if discount is None else {"discount": discount}

    def make_suggester(training, order):
        model = NgramModel.train(training, order=order, **kwargs)
        return lambda context: model.suggest(context, MAX_ORDER)

    results = _grid_search(sequences, make_suggester, element_positions_only=(kind == "GEPM"))
    config, wes = _pick_best(results, kind)
    model = NgramModel.train(sequences, order=config.order, kind=kind, **kwargs)
    return config, wes, model


class AkomModel:
    """All-k-order Markov baseline: the longest matching context suffix
    up to ``max_order`` selects a frequency-ranked continuation list."""

    def __init__(self, sequences: list[Sequence[str]], max_order: int):
        if max_order < 1:
            raise ValueError("max_order must be >= 1")
        self.max_order = max_order
        self._tables: list[dict[tuple[str, ...], Counter]] = []
        for k in range(1, max_order + 1):
            table: dict[tuple[str, ...], Counter] = defaultdict(Counter)
            for seq in sequences:
                for i in range(len(seq) - k):
                    table[tuple(seq[i : i + k])][seq[i + k]] += 1
            self._tables.append(dict(table))

    def suggest(self, context: Sequence[str], k: int) -> list[str]:
        context = tuple(context)
        for length in range(min(self.max_order, len(context)), 0, -1):
            table = self._tables[length - 1]
            continuations = table.get(context[-length:])
            if continuations:
                ranked = sorted(continuations.items(), key=lambda kv: (-kv[1], kv[0]))
                return [tok for tok, _ in ranked[:k]]
        return []


def akom_suggest(
    sequences: list[Sequence[str]], max_order: int, context: Sequence[str], k: int
) -> list[str]:
    return AkomModel(sequences, max_order).suggest(context, k)


def select_akom(
    sequences: list[Sequence[str]], element_positions_only: bool = False
) -> tuple[ModelConfig, WesResult]:
    if len(sequences) < 2:
        raise SelectionError("leave-one-out selection needs at least 2 sequences")

    def make_suggester(training, order):
        model = AkomModel(training, max_order=order)
        return lambda context: model.suggest(context, MAX_ORDER)

    results = _grid_search(sequences, make_suggester, element_positions_only)
    return _pick_best(results, "AKOM")


# -- comparison report -------------------------------------------------------


@dataclass
class ComparisonRow:
    kind: str  # GAPM | GEPM
    approach: str  # ngram | akom
    traces: int
    predictions: int
    order: int
    suggestion_len: int
    wes: float


@dataclass
class ComparisonReport:
    app_id: str
    rows: list[ComparisonRow]
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "app_id": self.app_id,
            "metadata": self.metadata,
            "rows": [
                {
                    "kind": r.kind,
                    "approach": r.approach,
                    "traces": r.traces,
                    "predictions": r.predictions,
                    "order": r.order,
                    "sn": r.suggestion_len,
                    "wes": r.wes,
                }
                for r in self.rows
            ],
        }

    def render_text(self) -> str:
        header = ("Kind", "Approach", "Traces", "Predictions", "Order", "SN", "wes")
        body = [
            (
                r.kind,
                r.approach,
                str(r.traces),
                str(r.predictions),
                str(r.order),
                str(r.suggestion_len),
                f"{r.wes:.3f}",
            )
            for r in self.rows
        ]
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
        lines = [f"App: {self.app_id}"]
        lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)))
        lines.append("  ".join("-" * w for w in widths))
        for row in body:
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
        return "\n".join(lines)


def compare_models(
    app_id: str,
    sequences_by_kind: dict[str, list[Sequence[str]]],
    kinds: Sequence[str] = ("GAPM", "GEPM"),
    discount: float | None = None,
) -> ComparisonReport:
    """Best n-gram config vs best all-k-order Markov config per kind."""
    rows: list[ComparisonRow] = []
    for kind in kinds:
        sequences = sequences_by_kind[kind]
        element_only = kind == "GEPM"
        config, wes, _ = select_model(sequences, kind, discount=discount)
        rows.append(
            ComparisonRow(
                kind=kind,
                approach="ngram",
                traces=len(sequences),
                predictions=wes.tasks,
                order=config.order,
                suggestion_len=config.suggestion_len,
                wes=wes.wes,
            )
        )
        a_config, a_wes = select_akom(sequences, element_positions_only=element_only)
        rows.append(
            ComparisonRow(
                kind=kind,
                approach="akom",
                traces=len(sequences),
                predictions=a_wes.tasks,
                order=a_config.order,
                suggestion_len=a_config.suggestion_len,
                wes=a_wes.wes,
            )
        )
    return ComparisonReport(
        app_id=app_id,
        rows=rows,
        metadata={
            "scored_positions": "every position >= 1 of each held-out sequence "
            "(element-token positions only for GEPM)",
            "selection": "leave-one-out over sequences, grid over order x SN in [1,10]^2",
        },
    )
