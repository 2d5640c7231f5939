"""Regenerate the bundled word-vector lexicon (data/mini_vectors.txt).

Vectors are synthesized from semantic clusters: words in a cluster share
a centroid plus small noise, generic GUI nouns get a reduced norm so
they weigh less inside phrase means, and a weak shared component gives
every pair a small background similarity. The script asserts the
similarity anchors the test suite depends on before writing the file.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

DIM = 64
SEED = 7
NOISE = 0.18
COMMON = 0.25
OUT = Path(__file__).resolve().parent.parent / "src" / "s2r_engine" / "data" / "mini_vectors.txt"

# scale 1.0 = content word, smaller = generic GUI noun
CLUSTERS: list[tuple[float, list[str]]] = [
    (1.0, ["create", "add", "new", "make", "plus", "compose", "build", "creating"]),
    (1.0, ["save", "store", "keep", "persist", "submit", "apply", "confirm", "ok", "done"]),
    (1.0, ["delete", "remove", "erase", "clear", "discard", "trash", "cancel"]),
    (1.0, ["edit", "change", "modify", "update", "rename", "adjust"]),
    (1.0, ["click", "press", "tap", "touch", "select", "choose", "pick", "hit"]),
    (1.0, ["open", "launch", "start", "begin", "show", "display", "go", "navigate"]),
    (1.0, ["type", "enter", "write", "input", "fill", "insert"]),
    (1.0, ["scroll", "swipe", "slide", "drag", "pan"]),
    (1.0, ["rotate", "turn", "flip", "orientation", "landscape", "portrait"]),
    (0.35, ["button", "btn", "icon", "control", "widget", "fab"]),
    (0.35, ["box", "field", "text", "textbox", "area", "form"]),
    (0.35, ["list", "item", "row", "table", "grid", "menu"]),
    (0.35, ["screen", "page", "view", "window", "activity", "dialog", "panel"]),
    (0.35, ["checkbox", "check", "toggle", "switch", "radio", "checkmark"]),
    (0.35, ["image", "picture", "photo", "screenshot", "camera", "gallery"]),
    (1.0, ["account", "accounts", "wallet", "bank", "checking", "savings"]),
    (1.0, ["transaction", "transactions", "payment", "transfer", "expense", "purchase"]),
    (1.0, ["amount", "balance", "total", "sum", "value", "price", "cost", "money", "currency"]),
    (1.0, ["name", "title", "label", "caption", "heading"]),
    (1.0, ["description", "note", "notes", "comment", "message", "detail", "info", "memo"]),
    (1.0, ["date", "time", "day", "month", "year", "calendar", "schedule"]),
    (1.0, ["number", "count", "quantity", "digits", "entry"]),
    (1.0, ["top", "bottom", "back", "forward", "next", "previous", "left", "right", "upward", "downward"]),
    (1.0, ["search", "find", "filter", "query", "lookup", "locate"]),
    (1.0, ["settings", "options", "preferences", "config", "configuration", "setup"]),
    (1.0, ["deposit", "withdrawal", "withdraw", "credit", "debit", "income", "spend"]),
    (1.0, ["error", "bug", "crash", "failure", "fail", "problem", "issue", "wrong", "broken"]),
    (1.0, ["app", "application", "software", "program", "system", "device", "phone", "mobile"]),
    (1.0, ["user", "person", "profile", "reporter", "developer", "tester"]),
    (1.0, ["category", "kind", "group", "section", "tag"]),
    (1.0, ["home", "main", "help", "report", "yes", "okay", "exit", "close"]),
    (1.0, ["red", "green", "blue", "yellow", "black", "white", "color"]),
    (1.0, ["file", "document", "folder", "attachment", "download", "upload"]),
    (1.0, ["password", "login", "logout", "username", "email", "register"]),
    (1.0, ["first", "second", "third", "last", "single", "double", "long"]),
    (1.0, ["test", "example", "sample", "demo", "dummy"]),
    (1.0, ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]),
    (1.0, ["january", "february", "march", "april", "june", "july", "august"]),
    (1.0, ["share", "send", "receive", "sync", "export", "import", "copy", "paste"]),
    (1.0, ["budget", "invoice", "receipt", "bill", "tax", "fee", "refund", "order"]),
    (1.0, ["chart", "graph", "plot", "summary", "overview", "statistics", "history"]),
    (1.0, ["contact", "address", "city", "country", "location", "place", "map"]),
    (1.0, ["big", "small", "large", "wide", "narrow", "empty", "full", "visible", "hidden"]),
    (1.0, ["active", "inactive", "enabled", "disabled", "selected", "current", "default"]),
]


def generate() -> dict[str, np.ndarray]:
    rng = np.random.RandomState(SEED)
    common = rng.normal(size=DIM)
    common /= np.linalg.norm(common)
    vectors: dict[str, np.ndarray] = {}
    for scale, words in CLUSTERS:
        centroid = rng.normal(size=DIM)
        centroid /= np.linalg.norm(centroid)
        for word in words:
            noise = rng.normal(size=DIM)
            noise /= np.linalg.norm(noise)
            vec = centroid + COMMON * common + NOISE * noise
            vec = scale * vec / np.linalg.norm(vec)
            vectors[word] = vec
    return vectors


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    return float(a @ b / (np.linalg.norm(a) * np.linalg.norm(b)))


def phrase(vectors: dict[str, np.ndarray], words: str) -> np.ndarray:
    hit = [vectors[w] for w in words.split() if w in vectors]
    return np.mean(hit, axis=0)


def verify(vectors: dict[str, np.ndarray]) -> None:
    def sim(a: str, b: str) -> float:
        return cosine(phrase(vectors, a), phrase(vectors, b))

    anchors = [
        ("create", "add", 0.5, ">"),
        ("new transaction button", "btn new transaction", 0.5, ">"),
        ("description text box", "description", 0.5, ">"),
        ("account name text box", "account name", 0.5, ">"),
        ("create account button", "create account", 0.5, ">"),
        ("transactions list", "transactions", 0.5, ">"),
        ("save element", "add transaction account", 0.5, "<"),
        ("new transaction button", "menu save", 0.5, "<"),
        ("save element", "menu add account", 0.5, "<"),
        ("description text box", "account name", 0.5, "<"),
    ]
    # the ranking fixture: the new-transaction button must outscore the
    # other clickable elements of the accounts screen on BOTH properties
    competitors = [
        ("new transaction button", "btn new transaction"),
        ("new transaction button", "add transaction account"),
    ]
    rivals = [
        ("new transaction button", "menu add account"),
        ("new transaction button", "create account"),
        ("new transaction button", "menu save"),
        ("new transaction button", "save"),
    ]
    best = max(sim(a, b) for a, b in competitors)
    worst_rival = max(sim(a, b) for a, b in rivals)
    assert best > 0.5 and best > worst_rival + 0.1, (best, worst_rival)
    for a, b, bound, op in anchors:
        value = sim(a, b)
        ok = value > bound if op == ">" else value < bound
        assert ok, f"sim({a!r}, {b!r}) = {value:.3f}, wanted {op} {bound}"
        print(f"  sim({a!r:40s}, {b!r:28s}) = {value:.3f} {op} {bound}")


def main() -> None:
    vectors = generate()
    verify(vectors)
    lines = [f"{len(vectors)} {DIM}"]
    for word in sorted(vectors):
        values = " ".join(f"{v:.5f}" for v in vectors[word])
        lines.append(f"{word} {values}")
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(vectors)} vectors ({DIM}d) to {OUT}")


if __name__ == "__main__":
    main()
