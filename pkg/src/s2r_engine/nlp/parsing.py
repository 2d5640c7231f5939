"""Tokenizer, segmentation, and the imperative-clause parser.

Reproduction steps are short verb-initial clauses, so a deterministic
pattern parser is enough to recover the handful of grammatical relations
the extraction rules consume: direct object, preposition + its object,
adverbial modifier, verb particle, and determiner. Quoted spans are
atomic tokens throughout, so quoted parameters and element names are
never split.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_CONFIG, NlpConfig

SENTENCE_TERMINATORS = (".", "!", "?")
_QUOTE_PAIRS = {'"': '"', "“": "”"}
_PUNCT = set(".!?;,()")

WORD = "WORD"
QUOTED = "QUOTED"
PUNCT = "PUNCT"


@dataclass(frozen=True)
class Token:
    text: str  # surface form, quotes included for quoted spans
    kind: str
    start: int  # character offsets into the source text
    end: int

    @property
    def lower(self) -> str:
        return self.text.lower()

    @property
    def inner(self) -> str:
        """Quoted content without the quote characters."""
        if self.kind == QUOTED and len(self.text) >= 2:
            return self.text[1:-1]
        return self.text


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _QUOTE_PAIRS:
            closing = _QUOTE_PAIRS[ch]
            end = text.find(closing, i + 1)
            if end == -1:
                end = n - 1  # unpaired quote while typing: swallow the rest
            tokens.append(Token(text=text[i : end + 1], kind=QUOTED, start=i, end=end + 1))
            i = end + 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(text=ch, kind=PUNCT, start=i, end=i + 1))
            i += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in _PUNCT and text[j] not in _QUOTE_PAIRS:
            j += 1
        tokens.append(Token(text=text[i:j], kind=WORD, start=i, end=j))
        i = j
    return tokens


def split_sentences(text: str) -> tuple[list[str], str]:
    """Complete sentences (terminator kept) and the trailing partial text.

    Terminators inside quoted spans do not split.
    """
    sentences: list[str] = []
    tokens = tokenize(text)
    start = 0
    for tok in tokens:
        if tok.kind == PUNCT and tok.text in SENTENCE_TERMINATORS:
            sentences.append(text[start : tok.end].strip())
            start = tok.end
    return [s for s in sentences if s], text[start:]


def split_clauses(sentence: str, config: NlpConfig = DEFAULT_CONFIG) -> list[str]:
    """Split one sentence into action clauses.

    Boundaries are semicolons, the word "then", and a coordinating "and"
    immediately followed by an imperative verb; an "and" inside an object
    phrase never fires the verb test.
    """
    tokens = tokenize(sentence)
    clauses: list[str] = []
    current: list[Token] = []

    def flush() -> None:
        while current and current[0].kind == PUNCT:
            current.pop(0)
        while current and current[-1].kind == PUNCT and current[-1].text == ",":
            current.pop()
        if current:
            clauses.append(sentence[current[0].start : current[-1].end].strip())
        current.clear()

    i = 0
    while i < len(tokens):
        tok = tokens[i]
        nxt = tokens[i + 1] if i + 1 < len(tokens) else None
        if tok.kind == PUNCT and tok.text == ";":
            flush()
        elif tok.kind == WORD and tok.lower == "then" and current:
            flush()
        elif (
            tok.kind == WORD
            and tok.lower == "and"
            and nxt is not None
            and nxt.kind == WORD
            and (nxt.lower in config.verbs or nxt.lower == "then")
        ):
            flush()
        else:
            current.append(tok)
        i += 1
    flush()
    return clauses


@dataclass(frozen=True)
class Arc:
    label: str  # dobj | pobj | prep | advmod | prt | det
    head: int
    dep: int


@dataclass
class ClauseParse:
    tokens: list[Token]
    root: int | None
    arcs: list[Arc]
    spans: dict[int, tuple[int, int]]  # phrase head -> [start, end) token span

    def deps(self, head: int, label: str) -> list[int]:
        return [a.dep for a in self.arcs if a.head == head and a.label == label]

    def dep(self, head: int, label: str) -> int | None:
        found = self.deps(head, label)
        return found[0] if found else None

    def span_text(self, head: int) -> str:
        start, end = self.spans.get(head, (head, head + 1))
        return " ".join(t.text for t in self.tokens[start:end])

    def root_token(self) -> Token | None:
        return self.tokens[self.root] if self.root is not None else None

    def has_argument(self) -> bool:
        """True when the root has any argument arc (modifiers aside)."""
        return any(
            a.head == self.root and a.label in ("dobj", "prep", "prt") for a in self.arcs
        )


def parse_clause(clause: str | list[Token], config: NlpConfig = DEFAULT_CONFIG) -> ClauseParse:
    tokens = tokenize(clause) if isinstance(clause, str) else clause
    arcs: list[Arc] = []
    spans: dict[int, tuple[int, int]] = {}

    root = None
    for i, tok in enumerate(tokens):
        if tok.kind != WORD:
            continue
        if tok.lower in config.verbs:
            root = i
            break
        if tok.lower in config.subject_blockers:
            break  # a subject precedes the verb: narrative, not imperative
    if root is None:
        return ClauseParse(tokens=tokens, root=None, arcs=[], spans={})

    for i in range(root):
        if tokens[i].kind == WORD:
            arcs.append(Arc(label="advmod", head=root, dep=i))

    def parse_np(start: int) -> tuple[int | None, int]:
        """Collect a noun phrase from ``start``; returns (head, next index).

        The phrase ends at punctuation or a verb-attached preposition;
        phrase-internal prepositions ("of") are swallowed.
        """
        i = start
        content: list[int] = []
        while i < len(tokens):
            tok = tokens[i]
            if tok.kind == PUNCT:
                break
            if (
                tok.kind == WORD
                and tok.lower in config.prepositions
                and tok.lower not in config.np_prepositions
            ):
                break
            content.append(i)
            i += 1
        if not content:
            return None, start
        head = content[-1]
        spans[head] = (start, content[-1] + 1)
        for j in content[:-1]:
            if tokens[j].kind == WORD and tokens[j].lower in config.determiners:
                arcs.append(Arc(label="det", head=head, dep=j))
        return head, i

    i = root + 1
    if i < len(tokens) and tokens[i].kind == WORD and tokens[i].lower in config.directions:
        arcs.append(Arc(label="prt", head=root, dep=i))
        i += 1

    saw_dobj = False
    while i < len(tokens):
        tok = tokens[i]
        if tok.kind == PUNCT:
            i += 1
            continue
        if tok.kind == WORD and tok.lower in config.prepositions:
            prep_idx = i
            head, i = parse_np(i + 1)
            arcs.append(Arc(label="prep", head=root, dep=prep_idx))
            if head is not None:
                arcs.append(Arc(label="pobj", head=prep_idx, dep=head))
            continue
        head, i = parse_np(i)
        if head is None:
            i += 1
            continue
        if not saw_dobj:
            arcs.append(Arc(label="dobj", head=root, dep=head))
            saw_dobj = True
    return ClauseParse(tokens=tokens, root=root, arcs=arcs, spans=spans)
