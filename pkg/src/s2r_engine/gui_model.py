"""GUI model graph: screens, elements, containment and typed transitions.

The model is a directed graph with two node kinds (screens and elements)
and two edge kinds: containment (screen -> element, stored as the
element's ``screen`` attribute) and transitions (element -> screen,
tagged with the action that triggers them and the provenance of the
edge). A rotation pseudo-element with the reserved id ``__rotate__`` is
attached to every screen; elements left without any outgoing transition
receive a self-referential dummy edge at finalization time.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path

from .app_spec import AppSpec
from .errors import ModelFormatError, UnknownScreenError

ROTATION_ID = "__rotate__"
ROTATION_ETYPE = "Screen"

MODEL_FORMAT = "s2r-gui-model"
MODEL_VERSION = 1

# (screen name, element id, etype, text) — the node-matching key for union.
ElementKey = tuple[str, str, str, str]


@dataclass
class ScreenNode:
    name: str
    screenshot: str | None = None


@dataclass
class ElementNode:
    screen: str
    e_id: str
    etype: str
    text: str = ""
    container: bool = False
    screenshot: str | None = None

    @property
    def key(self) -> ElementKey:
        return (self.screen, self.e_id, self.etype, self.text)

    @property
    def is_rotation(self) -> bool:
        return self.e_id == ROTATION_ID


@dataclass(frozen=True)
class TransitionEdge:
    source: ElementKey
    target: str
    a_type: str
    t_type: str  # STATIC | DYNAMIC | TRACE | DUMMY


@dataclass
class GuiModel:
    app_id: str
    initial_screen: str
    screens: dict[str, ScreenNode] = field(default_factory=dict)
    elements: dict[ElementKey, ElementNode] = field(default_factory=dict)
    transitions: list[TransitionEdge] = field(default_factory=list)
    _edge_keys: set[tuple[ElementKey, str, str]] = field(default_factory=set, repr=False)

    # -- construction ------------------------------------------------------

    def add_screen(self, name: str, screenshot: str | None = None) -> ScreenNode:
        node = self.screens.get(name)
        if node is None:
            node = ScreenNode(name=name, screenshot=screenshot)
            self.screens[name] = node
        elif screenshot is not None:
            node.screenshot = screenshot
        return node

    def add_element(self, element: ElementNode) -> ElementNode:
        if element.screen not in self.screens:
            raise UnknownScreenError(element.screen)
        existing = self.elements.get(element.key)
        if existing is None:
            self.elements[element.key] = element
            return element
        if element.screenshot is not None:
            existing.screenshot = element.screenshot
        return existing

    def add_transition(self, edge: TransitionEdge) -> None:
        """Insert an edge; edges equal up to provenance are kept once."""
        if edge.target not in self.screens:
            raise UnknownScreenError(edge.target)
        if edge.source not in self.elements:
            raise KeyError(f"transition from unknown element {edge.source}")
        dedupe = (edge.source, edge.target, edge.a_type)
        if dedupe in self._edge_keys:
            return
        self._edge_keys.add(dedupe)
        self.transitions.append(edge)

    def attach_rotation(self, screen: str, t_type: str) -> None:
        elem = ElementNode(screen=screen, e_id=ROTATION_ID, etype=ROTATION_ETYPE)
        self.add_element(elem)
        self.add_transition(
            TransitionEdge(source=elem.key, target=screen, a_type="ROTATE", t_type=t_type)
        )

    def finalize(self) -> "GuiModel":
        """Attach missing rotation pseudo-elements and dummy self edges.

        After this, every element has out-degree >= 1.
        """
        for name in self.screens:
            key = (name, ROTATION_ID, ROTATION_ETYPE, "")
            if key not in self.elements:
                self.attach_rotation(name, t_type="DUMMY")
        with_out = {e.source for e in self.transitions}
        for key, elem in self.elements.items():
            if key not in with_out:
                self.add_transition(
                    TransitionEdge(source=key, target=elem.screen, a_type="DUMMY", t_type="DUMMY")
                )
        return self

    # -- queries -----------------------------------------------------------

    def elements_on(self, screen: str) -> list[ElementNode]:
        if screen not in self.screens:
            raise UnknownScreenError(screen)
        return [e for e in self.elements.values() if e.screen == screen]

    def transitions_from(self, source: ElementKey) -> list[TransitionEdge]:
        return [t for t in self.transitions if t.source == source]

    def find_element(self, screen: str, e_id: str) -> ElementNode | None:
        for e in self.elements.values():
            if e.screen == screen and e.e_id == e_id:
                return e
        return None


def build_from_spec(spec: AppSpec) -> GuiModel:
    """Materialize a GUI model from a spec document; transitions are STATIC."""
    gm = GuiModel(app_id=spec.app_id, initial_screen=spec.initial_screen)
    for screen in spec.screens:
        gm.add_screen(screen.name)
    for screen in spec.screens:
        for decl in screen.elements:
            elem = ElementNode(
                screen=screen.name,
                e_id=decl.e_id,
                etype=decl.etype,
                text=decl.text,
                container=decl.container,
            )
            gm.add_element(elem)
            for action in decl.actions:
                gm.add_transition(
                    TransitionEdge(
                        source=elem.key,
                        target=action.target_screen,
                        a_type=action.a_type,
                        t_type="STATIC",
                    )
                )
    for name in gm.screens:
        gm.attach_rotation(name, t_type="STATIC")
    return gm


def union(gm_s: GuiModel, gm_d: GuiModel) -> GuiModel:
    """Node-wise union of two models of the same app.

    Screens match by name and elements by (screen, id, etype, text);
    screenshots never participate in matching, and on conflict the value
    from ``gm_d`` wins. The result is finalized: every element lacking an
    outgoing transition gets a dummy self edge.
    """
    if gm_s.app_id != gm_d.app_id:
        raise ValueError(f"union across apps: {gm_s.app_id!r} vs {gm_d.app_id!r}")
    out = GuiModel(app_id=gm_s.app_id, initial_screen=gm_s.initial_screen)
    for side in (gm_s, gm_d):
        for screen in side.screens.values():
            out.add_screen(screen.name, screenshot=screen.screenshot)
    for side in (gm_s, gm_d):
        for elem in side.elements.values():
            out.add_element(replace(elem))
    for side in (gm_s, gm_d):
        for edge in side.transitions:
            if edge.a_type == "DUMMY":
                continue  # dummies are re-derived after the union
            out.add_transition(edge)
    return out.finalize()


def screen_distance(
    gm: GuiModel, start: str, goal: str, unreachable_as_max: bool = False
) -> int:
    """Transition-edge count of the shortest ``start -> goal`` screen path.

    Same screen and unreachable pairs both yield 0; pass
    ``unreachable_as_max`` to report unreachable pairs as ``len(screens)``
    instead.
    """
    if start not in gm.screens or goal not in gm.screens:
        raise UnknownScreenError(start if start not in gm.screens else goal)
    if start == goal:
        return 0
    adjacency: dict[str, set[str]] = {name: set() for name in gm.screens}
    for edge in gm.transitions:
        adjacency[edge.source[0]].add(edge.target)
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        screen, dist = frontier.popleft()
        for nxt in sorted(adjacency[screen]):
            if nxt == goal:
                return dist + 1
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, dist + 1))
    return len(gm.screens) if unreachable_as_max else 0


# -- screen snapshots ------------------------------------------------------


@dataclass(frozen=True)
class SnapshotNode:
    """One element of a screen snapshot tree captured by the simulator."""

    e_id: str
    etype: str
    text: str = ""
    container: bool = False
    children: tuple["SnapshotNode", ...] = ()


def _pruned(node: SnapshotNode) -> tuple:
    children = () if node.container else tuple(_pruned(c) for c in node.children)
    return (node.e_id, node.etype, node.text, node.container, children)


def screens_equal(a: tuple[SnapshotNode, ...], b: tuple[SnapshotNode, ...]) -> bool:
    """Tree equality that ignores the children of container elements.

    Containers (e.g. list views) gain and lose children dynamically, so
    their contents never distinguish two captures of the same screen.
    """
    return tuple(_pruned(n) for n in a) == tuple(_pruned(n) for n in b)


# -- persistence -----------------------------------------------------------


def model_to_dict(gm: GuiModel) -> dict:
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "app_id": gm.app_id,
        "initial_screen": gm.initial_screen,
        "screens": [
            {"name": s.name, "screenshot": s.screenshot}
            for s in sorted(gm.screens.values(), key=lambda s: s.name)
        ],
        "elements": [
            {
                "screen": e.screen,
                "id": e.e_id,
                "etype": e.etype,
                "text": e.text,
                "container": e.container,
                "screenshot": e.screenshot,
            }
            for e in sorted(gm.elements.values(), key=lambda e: e.key)
        ],
        "transitions": [
            {
                "source": list(t.source),
                "target": t.target,
                "a_type": t.a_type,
                "t_type": t.t_type,
            }
            for t in sorted(gm.transitions, key=lambda t: (t.source, t.target, t.a_type))
        ],
    }


def model_from_dict(data: dict) -> GuiModel:
    if data.get("format") != MODEL_FORMAT or data.get("version") != MODEL_VERSION:
        raise ModelFormatError(
            f"expected {MODEL_FORMAT} v{MODEL_VERSION}, "
            f"got {data.get('format')!r} v{data.get('version')!r}"
        )
    gm = GuiModel(app_id=data["app_id"], initial_screen=data["initial_screen"])
    for s in data["screens"]:
        gm.add_screen(s["name"], screenshot=s.get("screenshot"))
    for e in data["elements"]:
        gm.add_element(
            ElementNode(
                screen=e["screen"],
                e_id=e["id"],
                etype=e["etype"],
                text=e.get("text", ""),
                container=bool(e.get("container", False)),
                screenshot=e.get("screenshot"),
            )
        )
    for t in data["transitions"]:
        gm.add_transition(
            TransitionEdge(
                source=tuple(t["source"]),
                target=t["target"],
                a_type=t["a_type"],
                t_type=t["t_type"],
            )
        )
    return gm


def save_model(gm: GuiModel, path: str | Path) -> None:
    text = json.dumps(model_to_dict(gm), indent=1, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_model(path: str | Path) -> GuiModel:
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
