"""User traces and their token encodings.

A trace file holds one interaction per line as four tab-separated
fields (screen name, action type, element type, element id); lines
starting with ``#`` are comments. Two token encodings are derived from a
trace: the action encoding (one ``s_name.a_type.e_type.e_id`` token per
tuple) and the element encoding (an alternating ``s_name.a_type`` /
``s_name.e_type.e_id`` pair per tuple).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .app_spec import USER_ACTION_TYPES
from .errors import TraceFormatError
from .gui_model import ElementNode, GuiModel, TransitionEdge


@dataclass(frozen=True)
class TraceTuple:
    s_name: str
    a_type: str
    e_type: str
    e_id: str


@dataclass(frozen=True)
class GatSequence:
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class GetSequence:
    tokens: tuple[str, ...]


def parse_trace_lines(lines, source: str = "<trace>") -> list[TraceTuple]:
    tuples = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise TraceFormatError(
                f"{source}:{lineno}: expected 4 tab-separated fields, got {len(parts)}"
            )
        s_name, a_type, e_type, e_id = parts
        if a_type not in USER_ACTION_TYPES:
            raise TraceFormatError(f"{source}:{lineno}: unknown action type {a_type!r}")
        if not s_name or not e_type:
            raise TraceFormatError(f"{source}:{lineno}: empty field")
        tuples.append(TraceTuple(s_name=s_name, a_type=a_type, e_type=e_type, e_id=e_id))
    return tuples


def parse_trace(path: str | Path) -> list[TraceTuple]:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return parse_trace_lines(fh, source=str(path))


def serialize_trace(tuples: list[TraceTuple]) -> str:
    return "".join(f"{t.s_name}\t{t.a_type}\t{t.e_type}\t{t.e_id}\n" for t in tuples)


def action_token(t: TraceTuple) -> str:
    return f"{t.s_name}.{t.a_type}.{t.e_type}.{t.e_id}"


def to_gat(trace: list[TraceTuple]) -> GatSequence:
    return GatSequence(tokens=tuple(action_token(t) for t in trace))


def to_get(trace: list[TraceTuple]) -> GetSequence:
    tokens: list[str] = []
    for t in trace:
        tokens.append(f"{t.s_name}.{t.a_type}")
        tokens.append(f"{t.s_name}.{t.e_type}.{t.e_id}")
    return GetSequence(tokens=tuple(tokens))


def tuple_from_token(token: str) -> TraceTuple:
    """Invert the canonical action-token encoding."""
    parts = token.split(".")
    if len(parts) != 4:
        raise TraceFormatError(f"not an action token: {token!r}")
    return TraceTuple(s_name=parts[0], a_type=parts[1], e_type=parts[2], e_id=parts[3])


def load_trace_dir(path: str | Path) -> list[list[TraceTuple]]:
    """All ``*.trace`` files under ``path``, sorted by filename."""
    files = sorted(Path(path).glob("*.trace"))
    return [parse_trace(f) for f in files]


def write_token_file(path: str | Path, tokens) -> None:
    """Token-sequence file: one line of space-separated tokens."""
    Path(path).write_text(" ".join(tokens) + "\n", encoding="utf-8")


def read_token_file(path: str | Path) -> tuple[str, ...]:
    return tuple(Path(path).read_text(encoding="utf-8").split())


def refine_model(gm: GuiModel, traces: list[list[TraceTuple]]) -> GuiModel:
    """Materialize trace content missing from the model, tagged TRACE.

    Every tuple's screen and element become nodes if absent; a tuple's
    action adds a transition whose target is the next tuple's screen
    (the same screen for the last tuple of a trace).
    """
    for trace in traces:
        for index, t in enumerate(trace):
            gm.add_screen(t.s_name)
            target = trace[index + 1].s_name if index + 1 < len(trace) else t.s_name
            gm.add_screen(target)
            elem = gm.find_element(t.s_name, t.e_id)
            if elem is None or elem.etype != t.e_type:
                elem = gm.add_element(
                    ElementNode(screen=t.s_name, e_id=t.e_id, etype=t.e_type)
                )
            gm.add_transition(
                TransitionEdge(source=elem.key, target=target, a_type=t.a_type, t_type="TRACE")
            )
    return gm
