"""Dependency trees: data model, CoNLL-U / HTTP ingestion, subtrees, detokenization."""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from prunetest.errors import ParseError, ProtocolError, StructureError

ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS, MISC = range(10)

NO_SPACE_BEFORE = frozenset(".,;:!?'\")]}%")
NO_SPACE_AFTER = frozenset("([{")


def is_punctuation(text: str) -> bool:
    return bool(text) and all(unicodedata.category(ch).startswith("P") for ch in text)


def base_relation(deprel: str) -> str:
    """Lowercase a DEPREL and drop its subtype (``nmod:poss`` -> ``nmod``)."""
    return deprel.strip().lower().split(":", 1)[0]


@dataclass(frozen=True)
class Token:
    index: int
    surface: str
    head: int
    relation: str
    deprel: str = ""

    def __post_init__(self):
        if not self.deprel:
            object.__setattr__(self, "deprel", self.relation)

    @property
    def is_punct(self) -> bool:
        return self.relation == "punct" or is_punctuation(self.surface)


@dataclass(frozen=True)
class DependencyTree:
    """An immutable dependency parse with tokens indexed 1..n.

    ``deprel`` on each token keeps the full label (``compound:prt``) while
    ``relation`` holds the truncated base label used by the relation policy.
    """

    sentence_id: str
    tokens: tuple[Token, ...]
    source_text: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        validate(self)

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, index: int) -> Token:
        if not 1 <= index <= len(self.tokens):
            raise IndexError(f"token index {index} outside 1..{len(self.tokens)}")
        return self.tokens[index - 1]

    @property
    def indices(self) -> range:
        return range(1, len(self.tokens) + 1)

    @cached_property
    def root(self) -> int:
        return next(t.index for t in self.tokens if t.head == 0)

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        kids: dict[int, list[int]] = {i: [] for i in range(0, len(self.tokens) + 1)}
        for tok in self.tokens:
            kids[tok.head].append(tok.index)
        return {i: tuple(c) for i, c in kids.items()}

    @cached_property
    def depth(self) -> dict[int, int]:
        out = {}
        stack = [(self.root, 0)]
        while stack:
            node, d = stack.pop()
            out[node] = d
            stack.extend((c, d + 1) for c in self.children[node])
        return out

    @property
    def text(self) -> str:
        if self.source_text is not None:
            return self.source_text
        return detokenize(self, set(self.indices))

    def surfaces(self, indices: Iterable[int] | None = None) -> list[str]:
        if indices is None:
            return [t.surface for t in self.tokens]
        return [self[i].surface for i in sorted(indices)]

    def dependents(self, index: int, relations: Iterable[str] | None = None) -> list[int]:
        kids = self.children[index]
        if relations is None:
            return list(kids)
        rels = set(relations)
        return [c for c in kids if self[c].relation in rels]


def validate(tree: DependencyTree) -> None:
    sid = tree.sentence_id
    n = len(tree.tokens)
    if n == 0:
        raise StructureError("empty sentence", sid)
    for position, tok in enumerate(tree.tokens, start=1):
        if tok.index != position:
            raise StructureError(f"token indices must run 1..{n}, found {tok.index} at position {position}", sid)
        if not tok.surface:
            raise StructureError(f"token {tok.index} has an empty surface", sid)
        if tok.head == tok.index:
            raise StructureError(f"token {tok.index} is its own head", sid)
        if not 0 <= tok.head <= n:
            raise StructureError(f"token {tok.index} has head {tok.head} outside 0..{n}", sid)
    roots = [t.index for t in tree.tokens if t.head == 0]
    if len(roots) != 1:
        raise StructureError(f"expected exactly one root, found {len(roots)}", sid)
    # every token must reach the root; a cycle never does
    reaches_root = {0}
    for tok in tree.tokens:
        path = []
        node = tok.index
        while node not in reaches_root:
            if node in path:
                raise StructureError(f"cycle through token {node}", sid)
            path.append(node)
            node = tree.tokens[node - 1].head
        reaches_root.update(path)


def make_tree(sentence_id: str, rows: Sequence[tuple[str, int, str]], text: str | None = None) -> DependencyTree:
    """Build a tree from ``(surface, head, deprel)`` rows; indices are implied by order."""
    tokens = tuple(
        Token(index=i, surface=surface, head=head, relation=base_relation(deprel), deprel=deprel.lower())
        for i, (surface, head, deprel) in enumerate(rows, start=1)
    )
    return DependencyTree(sentence_id, tokens, text)


def _parse_block(lines: list[tuple[int, str]], sentence_id: str, text: str | None) -> DependencyTree:
    tokens = []
    for line_number, line in lines:
        columns = line.split("\t")
        if len(columns) != 10:
            raise ParseError(f"expected 10 tab-separated columns, found {len(columns)}", line_number)
        token_id = columns[ID]
        if "-" in token_id or "." in token_id:
            continue
        try:
            index = int(token_id)
        except ValueError:
            raise ParseError(f"non-integer ID {token_id!r}", line_number) from None
        try:
            head = int(columns[HEAD])
        except ValueError:
            raise ParseError(f"non-integer HEAD {columns[HEAD]!r}", line_number) from None
        deprel = columns[DEPREL].strip().lower()
        tokens.append(Token(index, columns[FORM], head, base_relation(deprel), deprel))
    return DependencyTree(sentence_id, tuple(tokens), text)


def iter_conllu_blocks(text: str) -> Iterator[tuple[str, str | None, list[tuple[int, str]]]]:
    """Yield ``(sentence_id, text, numbered_lines)`` for each sentence block."""
    ordinal = 0
    sid = None
    sent_text = None
    lines: list[tuple[int, str]] = []

    def flush():
        nonlocal ordinal
        ordinal += 1
        return (sid or f"s{ordinal}", sent_text, lines)

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            key = key.strip()
            if key == "sent_id":
                sid = value.strip()
            elif key == "text":
                sent_text = value.strip()
            continue
        if not line.strip():
            if lines:
                yield flush()
            sid, sent_text, lines = None, None, []
            continue
        lines.append((line_number, line))
    if lines:
        yield flush()


def parse_conllu_block(sentence_id: str, text: str | None, lines: list[tuple[int, str]]) -> DependencyTree:
    return _parse_block(lines, sentence_id, text)


def parse_conllu(text: str) -> list[DependencyTree]:
    """Parse every sentence block of a CoNLL-U document.

    Multiword token ranges and empty nodes are skipped. Raises
    :class:`ParseError` for unreadable lines and :class:`StructureError`
    for blocks that do not form a tree.
    """
    return [parse_conllu_block(sid, txt, lines) for sid, txt, lines in iter_conllu_blocks(text)]


def read_conllu(path) -> list[DependencyTree]:
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f.read())


def to_conllu(tree: DependencyTree) -> str:
    lines = [f"# sent_id = {tree.sentence_id}", f"# text = {tree.text}"]
    for tok in tree.tokens:
        lines.append("\t".join([str(tok.index), tok.surface, "_", "_", "_", "_", str(tok.head), tok.deprel, "_", "_"]))
    return "\n".join(lines) + "\n"


def from_parser_response(body: str | bytes | Mapping, sentence_id: str = "s1") -> DependencyTree:
    """Build a tree from a parser service response.

    The body is JSON with a ``tokens`` array of objects carrying ``index``,
    ``word``, ``head`` and ``deprel``. An optional top-level ``sentence_id``
    overrides the argument.
    """
    if isinstance(body, Mapping):
        doc = body
    else:
        try:
            doc = json.loads(body)
        except (TypeError, ValueError) as exc:
            raise ProtocolError(f"response is not JSON: {exc}") from None
    if not isinstance(doc, Mapping) or not isinstance(doc.get("tokens"), list):
        raise ProtocolError("response must be an object with a 'tokens' array")
    sentence_id = str(doc.get("sentence_id", sentence_id))
    tokens = []
    for position, item in enumerate(doc["tokens"]):
        if not isinstance(item, Mapping):
            raise ProtocolError(f"tokens[{position}] is not an object")
        missing = [k for k in ("index", "word", "head", "deprel") if k not in item]
        if missing:
            raise ProtocolError(f"tokens[{position}] missing field(s): {', '.join(missing)}")
        index, head = item["index"], item["head"]
        if isinstance(index, bool) or isinstance(head, bool) or not isinstance(index, int) or not isinstance(head, int):
            raise ProtocolError(f"tokens[{position}] index/head must be integers")
        if not isinstance(item["word"], str) or not isinstance(item["deprel"], str):
            raise ProtocolError(f"tokens[{position}] word/deprel must be strings")
        deprel = item["deprel"].strip().lower()
        tokens.append(Token(index, item["word"], head, base_relation(deprel), deprel))
    return DependencyTree(sentence_id, tuple(tokens), doc.get("text"))


def to_parser_response(tree: DependencyTree) -> dict:
    return {
        "sentence_id": tree.sentence_id,
        "tokens": [{"index": t.index, "word": t.surface, "head": t.head, "deprel": t.deprel} for t in tree.tokens],
    }


class HttpParser:
    """Client for a parser service that accepts ``{"sentence": ...}`` by POST."""

    def __init__(self, url: str, timeout: float = 30.0, session=None):
        import requests

        self.url = url
        self.timeout = timeout
        self.session = session or requests.Session()

    def parse(self, sentence: str, sentence_id: str = "s1") -> DependencyTree:
        import requests

        try:
            resp = self.session.post(self.url, json={"sentence": sentence}, timeout=self.timeout)
            resp.raise_for_status()
        except requests.RequestException as exc:
            raise ProtocolError(f"parser request failed: {exc}") from exc
        return from_parser_response(resp.text, sentence_id)


def subtree(tree: DependencyTree, index: int) -> set[int]:
    """Return ``index`` together with all of its transitive dependents."""
    if not 1 <= index <= len(tree):
        raise IndexError(f"token index {index} outside 1..{len(tree)}")
    out = set()
    stack = [index]
    while stack:
        node = stack.pop()
        out.add(node)
        stack.extend(tree.children[node])
    return out


def detokenize(tree: DependencyTree, kept: Iterable[int]) -> str:
    kept = sorted(set(kept))
    if not kept:
        raise ValueError("cannot detokenize an empty token set")
    if kept[0] < 1 or kept[-1] > len(tree):
        raise ValueError(f"kept indices must lie in 1..{len(tree)}")
    parts = []
    previous = None
    for i in kept:
        surface = tree[i].surface
        if previous is not None and surface not in NO_SPACE_BEFORE and previous not in NO_SPACE_AFTER:
            parts.append(" ")
        parts.append(surface)
        previous = surface
    text = "".join(parts)
    if kept[0] != 1:
        for pos, ch in enumerate(text):
            if ch.isalpha():
                text = text[:pos] + ch.upper() + text[pos + 1 :]
                break
    return text
