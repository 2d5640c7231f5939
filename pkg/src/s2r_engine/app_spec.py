"""App specification documents.

An app spec is a JSON document describing the screens of an app, the
elements on each screen, the actions those elements respond to, and
optional failure triggers consumed by the simulator:

    {
      "app_id": "...",
      "initial_screen": "...",
      "screens": [
        {"name": "...",
         "elements": [
           {"id": "...", "etype": "Button", "text": "...",
            "container": false,
            "actions": [{"a_type": "CLICK", "target_screen": "...",
                         "declared_only": false}]}
         ]}
      ],
      "failures": [
        {"id": "...",
         "trigger": [{"screen": "...", "a_type": "CLICK", "e_id": "...",
                      "param": "..."}]}
      ]
    }

`screen`, `param` in trigger steps and `text` on elements may be omitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import AppSpecError

ACTION_TYPES = ("CLICK", "LONG_CLICK", "SCROLL", "TYPE", "ROTATE", "DUMMY")
USER_ACTION_TYPES = ("CLICK", "LONG_CLICK", "SCROLL", "TYPE", "ROTATE")


@dataclass(frozen=True)
class ActionDecl:
    a_type: str
    target_screen: str
    declared_only: bool = False


@dataclass(frozen=True)
class ElementDecl:
    e_id: str
    etype: str
    text: str = ""
    container: bool = False
    actions: tuple[ActionDecl, ...] = ()


@dataclass(frozen=True)
class ScreenDecl:
    name: str
    elements: tuple[ElementDecl, ...] = ()


@dataclass(frozen=True)
class TriggerStep:
    """One step of a failure trigger; ``screen``/``param`` of None match anything."""

    a_type: str
    e_id: str
    screen: str | None = None
    param: str | None = None


@dataclass(frozen=True)
class FailureSpec:
    failure_id: str
    trigger: tuple[TriggerStep, ...]


@dataclass(frozen=True)
class AppSpec:
    app_id: str
    initial_screen: str
    screens: tuple[ScreenDecl, ...]
    failures: tuple[FailureSpec, ...] = ()
    screen_index: dict[str, ScreenDecl] = field(default_factory=dict, compare=False)

    def screen(self, name: str) -> ScreenDecl:
        return self.screen_index[name]


def parse_app_spec(data: dict) -> AppSpec:
    """Validate and build an :class:`AppSpec` from a decoded JSON object."""
    try:
        app_id = data["app_id"]
        initial = data["initial_screen"]
        screens_raw = data["screens"]
    except (KeyError, TypeError) as exc:
        raise AppSpecError(f"missing required field: {exc}") from exc
    if not screens_raw:
        raise AppSpecError("spec declares no screens")

    screens: list[ScreenDecl] = []
    names: set[str] = set()
    for s in screens_raw:
        name = s.get("name")
        if not name:
            raise AppSpecError("screen without a name")
        if name in names:
            raise AppSpecError(f"duplicate screen name: {name}")
        names.add(name)
        elements = []
        for e in s.get("elements", ()):
            actions = []
            for a in e.get("actions", ()):
                a_type = a.get("a_type")
                if a_type not in USER_ACTION_TYPES:
                    raise AppSpecError(f"unknown action type: {a_type!r}")
                actions.append(
                    ActionDecl(
                        a_type=a_type,
                        target_screen=a["target_screen"],
                        declared_only=bool(a.get("declared_only", False)),
                    )
                )
            elements.append(
                ElementDecl(
                    e_id=e.get("id", ""),
                    etype=e.get("etype", ""),
                    text=e.get("text", ""),
                    container=bool(e.get("container", False)),
                    actions=tuple(actions),
                )
            )
        screens.append(ScreenDecl(name=name, elements=tuple(elements)))

    if initial not in names:
        raise AppSpecError(f"initial screen {initial!r} is not declared")
    for s in screens:
        for e in s.elements:
            for a in e.actions:
                if a.target_screen not in names:
                    raise AppSpecError(
                        f"transition from {s.name}/{e.e_id} targets "
                        f"undeclared screen {a.target_screen!r}"
                    )

    failures = []
    for f in data.get("failures", ()):
        steps = tuple(
            TriggerStep(
                a_type=t["a_type"],
                e_id=t["e_id"],
                screen=t.get("screen"),
                param=t.get("param"),
            )
            for t in f.get("trigger", ())
        )
        if not steps:
            raise AppSpecError(f"failure {f.get('id')!r} has an empty trigger")
        failures.append(FailureSpec(failure_id=f["id"], trigger=steps))

    spec = AppSpec(
        app_id=app_id,
        initial_screen=initial,
        screens=tuple(screens),
        failures=tuple(failures),
        screen_index={s.name: s for s in screens},
    )
    return spec


def load_app_spec(path: str | Path) -> AppSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AppSpecError(f"{path}: not valid JSON: {exc}") from exc
    return parse_app_spec(data)
