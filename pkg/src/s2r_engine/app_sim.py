"""Deterministic app simulator.

Executes an app spec as if it were the live app: a depth-first
exploration yields the dynamic GUI model, ``extract_declared_model``
stands in for static analysis, and ``replay`` executes resolved action
sequences as the reproduction oracle. Actions marked ``declared_only``
exist in the spec but the simulated app never responds to them, which is
what makes the static and dynamic models genuinely different.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .app_spec import ActionDecl, AppSpec, ElementDecl
from .errors import ExplorationBudgetError, UnknownScreenError
from .gui_model import (
    ROTATION_ID,
    ElementNode,
    GuiModel,
    SnapshotNode,
    TransitionEdge,
    screens_equal,
)
from .traces import TraceTuple

DEFAULT_STEP_CAP = 10_000
EXPLORE_TYPE_TEXT = "Test"


@dataclass
class AppState:
    current_screen: str
    field_values: dict[tuple[str, str], str] = field(default_factory=dict)
    visited: set[str] = field(default_factory=set)
    failure_flags: set[str] = field(default_factory=set)


@dataclass(frozen=True)
class ReplayAction:
    """One executable step: an action on an element identified by (screen, id)."""

    screen: str
    e_id: str
    a_type: str
    param: str | None = None


@dataclass
class ReplayOutcome:
    final_screen: str
    triggered_failures: set[str]
    rejected_at: int | None = None

    @property
    def accepted(self) -> bool:
        return self.rejected_at is None


def _runtime_actions(decl: ElementDecl) -> list[ActionDecl]:
    return [a for a in decl.actions if not a.declared_only]


def extract_declared_model(spec: AppSpec) -> GuiModel:
    """Model of the statically declared surface: only ``declared_only`` entries.

    All screens are carried over; an element appears only if it has at
    least one declared-only action.
    """
    gm = GuiModel(app_id=spec.app_id, initial_screen=spec.initial_screen)
    for screen in spec.screens:
        gm.add_screen(screen.name)
    for screen in spec.screens:
        for decl in screen.elements:
            declared = [a for a in decl.actions if a.declared_only]
            if not declared:
                continue
            elem = gm.add_element(
                ElementNode(
                    screen=screen.name,
                    e_id=decl.e_id,
                    etype=decl.etype,
                    text=decl.text,
                    container=decl.container,
                )
            )
            for action in declared:
                gm.add_transition(
                    TransitionEdge(
                        source=elem.key,
                        target=action.target_screen,
                        a_type=action.a_type,
                        t_type="STATIC",
                    )
                )
    return gm


class Simulator:
    """Single-threaded executor of one app spec."""

    def __init__(self, spec: AppSpec):
        self.spec = spec
        self.state = AppState(current_screen=spec.initial_screen)
        self._executed: list[ReplayAction] = []

    # -- primitive execution ------------------------------------------------

    def restart(self) -> None:
        """Relaunch the app: back to the initial screen with data reset."""
        self.state.current_screen = self.spec.initial_screen
        self.state.field_values.clear()

    def snapshot(self, screen: str | None = None) -> tuple[SnapshotNode, ...]:
        name = screen or self.state.current_screen
        decl = self.spec.screen(name)
        return tuple(
            SnapshotNode(e_id=e.e_id, etype=e.etype, text=e.text, container=e.container)
            for e in decl.elements
        )

    def element_on_current(self, e_id: str) -> ElementDecl | None:
        for e in self.spec.screen(self.state.current_screen).elements:
            if e.e_id == e_id:
                return e
        return None

    def perform(self, action: ReplayAction) -> bool:
        """Execute one action; returns False when its element is absent.

        Actions the element does not respond to are no-ops (the screen
        does not change), mirroring a tap on an inert widget.
        """
        if action.screen != self.state.current_screen:
            return False
        if action.a_type == "ROTATE" or action.e_id == ROTATION_ID:
            self._executed.append(action)
            self._check_failures()
            return True
        decl = self.element_on_current(action.e_id)
        if decl is None:
            return False
        for a in _runtime_actions(decl):
            if a.a_type == action.a_type:
                if action.a_type == "TYPE":
                    self.state.field_values[(action.screen, action.e_id)] = action.param or ""
                self.state.current_screen = a.target_screen
                break
        self._executed.append(action)
        self._check_failures()
        return True

    def _check_failures(self) -> None:
        for failure in self.spec.failures:
            if failure.failure_id in self.state.failure_flags:
                continue
            if _subsequence_match(failure.trigger, self._executed):
                self.state.failure_flags.add(failure.failure_id)


def _subsequence_match(trigger, executed: list[ReplayAction]) -> bool:
    pos = 0
    for action in executed:
        step = trigger[pos]
        if (
            step.a_type == action.a_type
            and step.e_id == action.e_id
            and (step.screen is None or step.screen == action.screen)
            and (step.param is None or step.param == action.param)
        ):
            pos += 1
            if pos == len(trigger):
                return True
    return False


def replay(spec: AppSpec, actions: list[ReplayAction]) -> ReplayOutcome:
    """Run ``actions`` in order from the initial screen.

    Rejection (an action whose element is not on the current screen) is
    reported as data, not raised.
    """
    sim = Simulator(spec)
    for index, action in enumerate(actions):
        if not sim.perform(action):
            return ReplayOutcome(
                final_screen=sim.state.current_screen,
                triggered_failures=set(sim.state.failure_flags),
                rejected_at=index,
            )
    return ReplayOutcome(
        final_screen=sim.state.current_screen,
        triggered_failures=set(sim.state.failure_flags),
    )


def record_trace(spec: AppSpec, actions: list[ReplayAction]) -> list[TraceTuple]:
    """Execute ``actions`` and log them as trace tuples (recording mode)."""
    sim = Simulator(spec)
    tuples: list[TraceTuple] = []
    for action in actions:
        if not sim.perform(action):
            raise UnknownScreenError(
                f"action on {action.screen}/{action.e_id} not executable"
            )
        if action.e_id == ROTATION_ID or action.a_type == "ROTATE":
            etype = "Screen"
            e_id = ROTATION_ID
        else:
            decl = spec.screen(action.screen)
            etype = next(e.etype for e in decl.elements if e.e_id == action.e_id)
            e_id = action.e_id
        tuples.append(
            TraceTuple(s_name=action.screen, a_type=action.a_type, e_type=etype, e_id=e_id)
        )
    return tuples


def explore_dft(spec: AppSpec, step_cap: int = DEFAULT_STEP_CAP) -> GuiModel:
    """Depth-first exploration producing the dynamic GUI model.

    Every runtime action of every element is exercised once, in spec
    declaration order; editable elements receive the fixed text
    ``"Test"``. When the current screen has nothing left to exercise the
    app is restarted and navigated back to the next pending screen.
    Screen identity is decided by ``screens_equal`` over snapshots, so two
    spec screens with identical trees collapse into one model node.
    """
    gm = GuiModel(app_id=spec.app_id, initial_screen=spec.initial_screen)
    sim = Simulator(spec)
    canonical: dict[str, str] = {}
    snapshots: list[tuple[str, tuple[SnapshotNode, ...]]] = []
    # (canonical screen, element id, a_type) not yet exercised; LIFO = depth first
    pending: list[tuple[str, str, str]] = []
    steps = 0

    def register(screen: str) -> str:
        if screen in canonical:
            return canonical[screen]
        snap = sim.snapshot(screen)
        for name, known_snap in snapshots:
            if screens_equal(known_snap, snap):
                canonical[screen] = name
                return name
        canonical[screen] = screen
        snapshots.append((screen, snap))
        gm.add_screen(screen)
        new_pending = []
        for e in spec.screen(screen).elements:
            gm.add_element(
                ElementNode(
                    screen=screen,
                    e_id=e.e_id,
                    etype=e.etype,
                    text=e.text,
                    container=e.container,
                )
            )
            for a in _runtime_actions(e):
                new_pending.append((screen, e.e_id, a.a_type))
        gm.attach_rotation(screen, t_type="DYNAMIC")
        # reversed so the first declared action is popped first
        pending.extend(reversed(new_pending))
        return screen

    def here() -> str:
        return register(sim.state.current_screen)

    def exercise(e_id: str, a_type: str) -> None:
        param = EXPLORE_TYPE_TEXT if a_type == "TYPE" else None
        sim.perform(
            ReplayAction(screen=sim.state.current_screen, e_id=e_id, a_type=a_type, param=param)
        )

    def navigate_to(goal: str) -> None:
        if here() == goal:
            return
        sim.restart()
        if here() == goal:
            return
        path = _screen_path(gm, here(), goal)
        if path is None:
            raise UnknownScreenError(f"no dynamic path back to {goal}")
        for _, e_id, a_type in path:
            exercise(e_id, a_type)
        if here() != goal:
            raise UnknownScreenError(f"navigation to {goal} diverged at {here()}")

    register(spec.initial_screen)
    while pending:
        steps += 1
        if steps > step_cap:
            raise ExplorationBudgetError(f"exceeded {step_cap} exploration steps")
        screen, e_id, a_type = pending.pop()
        navigate_to(screen)
        source = here()
        exercise(e_id, a_type)
        reached = here()
        elem = gm.find_element(source, e_id)
        if elem is not None:
            gm.add_transition(
                TransitionEdge(source=elem.key, target=reached, a_type=a_type, t_type="DYNAMIC")
            )
    return gm


def _screen_path(gm: GuiModel, start: str, goal: str):
    """Shortest executable action path between screens in the model so far."""
    frontier = deque([(start, [])])
    seen = {start}
    while frontier:
        screen, path = frontier.popleft()
        for edge in gm.transitions:
            if edge.source[0] != screen or edge.a_type in ("DUMMY", "ROTATE"):
                continue
            step = (screen, edge.source[1], edge.a_type)
            if edge.target == goal:
                return path + [step]
            if edge.target not in seen:
                seen.add(edge.target)
                frontier.append((edge.target, path + [step]))
    return None
