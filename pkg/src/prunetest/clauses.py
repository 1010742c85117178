"""Sentence-type classification, clause splitting and core-semantics extraction."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from prunetest.deptree import DependencyTree, Token, subtree
from prunetest.errors import ContractError, ExtractionError

CLAUSAL_RELATIONS = frozenset({"ccomp", "advcl", "acl"})
SUBJECT_RELATIONS = frozenset({"nsubj", "nsubjpass", "xsubj", "csubj", "csubjpass"})
OBJECT_RELATIONS = frozenset({"obj", "dobj"})
IOBJ_RELATIONS = frozenset({"iobj"})
COMPLEMENT_RELATIONS = frozenset({"xcomp", "attr", "acomp"})
COPULA_RELATIONS = frozenset({"cop"})


class SentenceType(enum.Enum):
    SIMPLE = "Simple"
    COMPOUND = "Compound"
    COMPLEX = "Complex"
    COMPOUND_COMPLEX = "CompoundComplex"


class Pattern(enum.Enum):
    SV = "SV"
    SVO = "SVO"
    SVC = "SVC"
    SVOO = "SVOO"
    SVOC = "SVOC"


@dataclass(frozen=True)
class CoreSemantics:
    pattern: Pattern
    indices: frozenset[int]
    tree_id: str


def _root_coordinated(tree: DependencyTree) -> bool:
    root = tree.root
    conjs = tree.dependents(root, {"conj"})
    if not conjs:
        return False
    # cc hangs off the root in Stanford style and off the conjunct in UD v2
    if tree.dependents(root, {"cc"}):
        return True
    return any(tree.dependents(c, {"cc"}) for c in conjs)


def _has_clausal_edge(tree: DependencyTree) -> bool:
    return any(t.relation in CLAUSAL_RELATIONS for t in tree.tokens)


def classify(tree: DependencyTree) -> SentenceType:
    compound = _root_coordinated(tree)
    complex_ = _has_clausal_edge(tree)
    if compound and complex_:
        return SentenceType.COMPOUND_COMPLEX
    if compound:
        return SentenceType.COMPOUND
    if complex_:
        return SentenceType.COMPLEX
    return SentenceType.SIMPLE


def _final_punct(tree: DependencyTree) -> int | None:
    last = tree.tokens[-1]
    if last.is_punct and last.head == tree.root:
        return last.index
    return None


def restrict(tree: DependencyTree, keep: set[int], new_root: int, sentence_id: str) -> DependencyTree:
    """Project ``tree`` onto ``keep`` with ``new_root`` as the root.

    Kept tokens whose governor was dropped are reattached to the new root.
    """
    order = sorted(keep)
    renum = {old: new for new, old in enumerate(order, start=1)}
    tokens = []
    for old in order:
        tok = tree[old]
        if old == new_root:
            tokens.append(Token(renum[old], tok.surface, 0, "root", "root"))
        elif tok.head in renum:
            tokens.append(Token(renum[old], tok.surface, renum[tok.head], tok.relation, tok.deprel))
        else:
            tokens.append(Token(renum[old], tok.surface, renum[new_root], tok.relation, tok.deprel))
    return DependencyTree(sentence_id, tuple(tokens))


def _compound_pieces(tree: DependencyTree) -> list[DependencyTree]:
    root = tree.root
    final = _final_punct(tree)
    conjs = tree.dependents(root, {"conj"})
    removed: set[int] = set()
    pieces = []
    for c in conjs:
        span = subtree(tree, c)
        removed |= span
        for d in tree.children[c]:
            rel = tree[d].relation
            if rel in ("cc", "mark") or (rel == "punct" and d < c):
                span -= subtree(tree, d)
        if final is not None:
            span.add(final)
        pieces.append((c, span))
    for d in tree.children[root]:
        if tree[d].relation == "cc":
            removed |= subtree(tree, d)
    first_conj = min(min(subtree(tree, c)) for c in conjs)
    for d in tree.children[root]:
        if d != final and tree[d].relation == "punct" and d > first_conj:
            removed.add(d)
    remainder = set(tree.indices) - removed
    out = [restrict(tree, remainder, root, f"{tree.sentence_id}~0")]
    for k, (c, span) in enumerate(pieces, start=1):
        out.append(restrict(tree, span, c, f"{tree.sentence_id}~{k}"))
    return out


def _complex_pieces(tree: DependencyTree) -> list[DependencyTree]:
    root = tree.root
    final = _final_punct(tree)
    host = set(tree.indices)
    clauses = []
    for c in tree.dependents(root, {"ccomp"}):
        span = subtree(tree, c)
        host -= span
        for d in tree.children[c]:
            if tree[d].relation in ("mark", "cc"):
                span -= subtree(tree, d)
        if final is not None:
            span.add(final)
        clauses.append((c, span))
    for tok in tree.tokens:
        if tok.index in host and tok.relation in CLAUSAL_RELATIONS:
            host -= subtree(tree, tok.index)
    out = [restrict(tree, host, root, f"{tree.sentence_id}~0")]
    for k, (c, span) in enumerate(clauses, start=1):
        out.append(restrict(tree, span, c, f"{tree.sentence_id}~{k}"))
    return out


def _decompose(tree: DependencyTree) -> list[DependencyTree]:
    kind = classify(tree)
    if kind is SentenceType.SIMPLE:
        return [tree]
    if kind is SentenceType.COMPLEX:
        pieces = _complex_pieces(tree)
    else:
        pieces = _compound_pieces(tree)
    out = []
    for piece in pieces:
        out.extend(_decompose(piece))
    return out


def _numbered(tree: DependencyTree, pieces: list[DependencyTree]) -> list[DependencyTree]:
    out = []
    for piece in pieces:
        out.extend(_decompose(piece))
    return [
        DependencyTree(f"{tree.sentence_id}#{k}", piece.tokens)
        for k, piece in enumerate(out, start=1)
    ]


def split_compound(tree: DependencyTree) -> list[DependencyTree]:
    """Split coordinated independent clauses into separate simple trees.

    Each root-level ``conj`` becomes the root of its own tree (its ``cc`` and
    ``mark`` children dropped); the remainder keeps the original root. Pieces
    are decomposed recursively and numbered ``<id>#1``, ``<id>#2``, ...
    """
    if classify(tree) not in (SentenceType.COMPOUND, SentenceType.COMPOUND_COMPLEX):
        raise ContractError(f"{tree.sentence_id}: split_compound needs a compound sentence")
    return _numbered(tree, _compound_pieces(tree))


def simplify_complex(tree: DependencyTree) -> list[DependencyTree]:
    """Split noun clauses off the main verb and prune other clausal modifiers."""
    if classify(tree) not in (SentenceType.COMPLEX, SentenceType.COMPOUND_COMPLEX):
        raise ContractError(f"{tree.sentence_id}: simplify_complex needs a complex sentence")
    return _numbered(tree, _complex_pieces(tree))


def to_simple(tree: DependencyTree) -> list[DependencyTree]:
    """Reduce any tree to simple sentences; simple input comes back unchanged."""
    kind = classify(tree)
    if kind is SentenceType.SIMPLE:
        return [tree]
    if kind is SentenceType.COMPLEX:
        return simplify_complex(tree)
    return split_compound(tree)


def extract_core(tree: DependencyTree) -> CoreSemantics:
    if classify(tree) is not SentenceType.SIMPLE:
        raise ContractError(f"{tree.sentence_id}: extract_core needs a simple sentence")
    root = tree.root
    subjects = tree.dependents(root, SUBJECT_RELATIONS)
    if not subjects:
        raise ExtractionError(f"{tree.sentence_id}: no subject attached to the main predicate")
    objects = tree.dependents(root, OBJECT_RELATIONS)
    iobjects = tree.dependents(root, IOBJ_RELATIONS)
    complements = tree.dependents(root, COMPLEMENT_RELATIONS)
    copulas = tree.dependents(root, COPULA_RELATIONS)

    if copulas:
        pattern = Pattern.SVC
    elif objects and iobjects:
        pattern = Pattern.SVOO
    elif objects and complements:
        pattern = Pattern.SVOC
    elif objects:
        pattern = Pattern.SVO
    elif complements:
        pattern = Pattern.SVC
    else:
        pattern = Pattern.SV

    indices = {root, *subjects, *objects, *iobjects, *complements, *copulas}
    final = _final_punct(tree)
    if final is not None:
        indices.add(final)
    return CoreSemantics(pattern, frozenset(indices), tree.sentence_id)
