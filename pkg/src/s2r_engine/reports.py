"""Bug report artifacts and their on-disk store.

Each report is one JSON document named by its id inside the reports
directory, plus a line in an append-only index file.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .nlp import AbstractGuiAction
from .resolver import GuiAction, GuiElementRef, S2REntity

INDEX_FILE = "index.jsonl"


@dataclass(frozen=True)
class BugReport:
    report_id: str
    app_id: str
    title: str
    description: str
    expected: str
    observed: str
    s2r_text: str
    entities: tuple[S2REntity, ...]
    created_at: str  # UTC ISO-8601


def new_report_id() -> str:
    return uuid.uuid4().hex


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


def entity_to_dict(entity: S2REntity) -> dict:
    action = None
    if entity.action is not None:
        action = {
            "a_type": entity.action.a_type,
            "screen": entity.action.element.e_screen,
            "e_type": entity.action.element.e_type,
            "e_id": entity.action.element.e_id,
            "e_text": entity.action.element.e_text,
            "params": list(entity.action.params),
        }
    return {
        "text": entity.s2r_text,
        "validated": entity.validated,
        "a_action": {
            "a_type": entity.a_action.a_type,
            "e_desc": entity.a_action.e_desc,
            "p_desc": entity.a_action.p_desc,
        },
        "action": action,
        "b_screen": entity.b_screen,
        "a_screen": entity.a_screen,
    }


def entity_from_dict(data: dict) -> S2REntity:
    action = None
    if data.get("action"):
        a = data["action"]
        action = GuiAction(
            a_type=a["a_type"],
            element=GuiElementRef(
                e_screen=a["screen"], e_type=a["e_type"], e_id=a["e_id"], e_text=a["e_text"]
            ),
            params=tuple(a.get("params", ())),
        )
    aga = data["a_action"]
    return S2REntity(
        s2r_text=data["text"],
        a_action=AbstractGuiAction(
            a_type=aga["a_type"], e_desc=aga.get("e_desc"), p_desc=aga.get("p_desc")
        ),
        action=action,
        b_screen=data.get("b_screen"),
        a_screen=data.get("a_screen"),
    )


def report_to_dict(report: BugReport) -> dict:
    return {
        "report_id": report.report_id,
        "app_id": report.app_id,
        "title": report.title,
        "description": report.description,
        "expected": report.expected,
        "observed": report.observed,
        "s2r_text": report.s2r_text,
        "entities": [entity_to_dict(e) for e in report.entities],
        "created_at": report.created_at,
    }


def report_from_dict(data: dict) -> BugReport:
    return BugReport(
        report_id=data["report_id"],
        app_id=data["app_id"],
        title=data["title"],
        description=data.get("description", ""),
        expected=data.get("expected", ""),
        observed=data.get("observed", ""),
        s2r_text=data.get("s2r_text", ""),
        entities=tuple(entity_from_dict(e) for e in data.get("entities", ())),
        created_at=data["created_at"],
    )


class ReportStore:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def save(self, report: BugReport) -> None:
        path = self.directory / f"{report.report_id}.json"
        path.write_text(
            json.dumps(report_to_dict(report), indent=1, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        with (self.directory / INDEX_FILE).open("a", encoding="utf-8") as fh:
            fh.write(
                json.dumps(
                    {
                        "report_id": report.report_id,
                        "app_id": report.app_id,
                        "title": report.title,
                        "created_at": report.created_at,
                    },
                    sort_keys=True,
                )
                + "\n"
            )

    def get(self, report_id: str) -> BugReport | None:
        path = self.directory / f"{report_id}.json"
        if not path.is_file():
            return None
        return report_from_dict(json.loads(path.read_text(encoding="utf-8")))

    def list(self, app_id: str | None = None) -> list[dict]:
        """Report summaries, newest first; the documents are the truth."""
        summaries = []
        for path in self.directory.glob("*.json"):
            data = json.loads(path.read_text(encoding="utf-8"))
            if app_id is not None and data.get("app_id") != app_id:
                continue
            summaries.append(
                {
                    "report_id": data["report_id"],
                    "app_id": data["app_id"],
                    "title": data["title"],
                    "created_at": data["created_at"],
                    "steps": len(data.get("entities", ())),
                }
            )
        summaries.sort(key=lambda s: (s["created_at"], s["report_id"]), reverse=True)
        return summaries
