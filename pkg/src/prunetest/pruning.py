"""Relation policy and core-preserving pruned sentence generation."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from prunetest.clauses import CoreSemantics, SentenceType, classify
from prunetest.deptree import DependencyTree, Token, detokenize, subtree
from prunetest.errors import ContractError


class PruneAction(enum.Enum):
    UP = "up"  # unprunable
    PR = "pr"  # prunable with its subtree
    PP = "pp"  # prunable only together with its governor


UP, PR, PP = PruneAction.UP, PruneAction.PR, PruneAction.PP

# Dependency relation mapping table, labels as printed.
RELATION_TABLE: Mapping[str, PruneAction] = MappingProxyType({
    "ROOT": UP, "dep": PP, "aux": PP, "auxpass": PP,
    "cop": UP, "ccomp": PP, "xcomp": PP, "obj": UP,
    "iobj": UP, "nsubj": UP, "dobj": UP, "det": PP,
    "expl": PP, "amod": PR, "nmod": PR, "nummod": PP,
    "predet": PR, "preconj": PR, "mwe": PP, "mark": PP,
    "advmod": PR, "neg": PR, "tmod": PR, "punct": UP,
    "poss": PR, "prt": PP, "compound": PR, "goeswith": PP,
    "ref": PP, "xsubj": UP, "case": PP, "obl": PR,
})

# UD v2 labels whose subtype or renaming changes the matching table entry.
UD_EXTENSIONS: Mapping[str, PruneAction] = MappingProxyType({
    "compound:prt": PP,
    "nmod:poss": PR,
    "nmod:tmod": PR,
    "obl:tmod": PR,
    "det:predet": PR,
    "aux:pass": PP,
    "flat": PP,
    "fixed": PP,
})


@dataclass(frozen=True)
class RelationPolicy:
    mapping: Mapping[str, PruneAction]
    default: PruneAction = UP

    def action(self, relation: str) -> PruneAction:
        return self.mapping.get(relation.lower(), self.default)

    def action_for_token(self, token: Token) -> PruneAction:
        if token.deprel in self.mapping:
            return self.mapping[token.deprel]
        return self.action(token.relation)


def default_policy() -> RelationPolicy:
    mapping = {label.lower(): act for label, act in RELATION_TABLE.items()}
    mapping.update(UD_EXTENSIONS)
    return RelationPolicy(MappingProxyType(mapping))


DEFAULT_POLICY = default_policy()


def load_policy(path, base: RelationPolicy | None = None) -> RelationPolicy:
    """Read a JSON object mapping relation labels to ``up``/``pr``/``pp``.

    Entries override ``base`` (the built-in table by default).
    """
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    return policy_from_mapping(raw, base)


def policy_from_mapping(raw, base: RelationPolicy | None = None) -> RelationPolicy:
    if not isinstance(raw, dict):
        raise ValueError("policy must be a JSON object of relation -> action")
    base = base or DEFAULT_POLICY
    mapping = dict(base.mapping)
    for label, value in raw.items():
        try:
            mapping[str(label).lower()] = PruneAction(str(value).lower())
        except ValueError:
            raise ValueError(f"relation {label!r}: action must be one of up, pr, pp (got {value!r})") from None
    return RelationPolicy(MappingProxyType(mapping), base.default)


def action_for(policy: RelationPolicy, relation: str) -> PruneAction:
    return policy.action(relation)


@dataclass(frozen=True)
class GeneratedSentence:
    id: str
    text: str
    parent_id: str
    removed_indices: frozenset[int]
    depth: int
    original_id: str = ""
    kept_indices: tuple[int, ...] = field(default=(), compare=False)


def removal_unit(
    tree: DependencyTree,
    index: int,
    policy: RelationPolicy = DEFAULT_POLICY,
    core: CoreSemantics | frozenset[int] | None = None,
) -> set[int] | None:
    """Return the token set removed when ``index`` is pruned, or ``None``.

    ``pr`` tokens take their whole subtree with them. ``pp`` tokens are only
    removable with their governor, so their unit is the governor's unit. A
    unit that would swallow a core token or any ``up`` token is refused.
    """
    if not 1 <= index <= len(tree):
        raise IndexError(f"token index {index} outside 1..{len(tree)}")
    core_idx = _core_indices(core)
    seen = set()
    node = index
    while True:
        if node in core_idx or node in seen:
            return None
        seen.add(node)
        act = policy.action_for_token(tree[node])
        if act is UP:
            return None
        if act is PR:
            break
        node = tree[node].head
        if node == 0:
            return None
    span = subtree(tree, node)
    if span & core_idx:
        return None
    if any(policy.action_for_token(tree[j]) is UP for j in span):
        return None
    return span


def _core_indices(core) -> frozenset[int]:
    if core is None:
        return frozenset()
    if isinstance(core, CoreSemantics):
        return core.indices
    return frozenset(core)


def postorder(tree: DependencyTree) -> list[int]:
    """Children left to right before their governor."""
    order = []
    stack = [(tree.root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        stack.append((node, True))
        stack.extend((c, False) for c in reversed(tree.children[node]))
    return order


def prunable_units(
    tree: DependencyTree, core: CoreSemantics | frozenset[int], policy: RelationPolicy = DEFAULT_POLICY
) -> list[tuple[int, frozenset[int]]]:
    """All ``(anchor, subtree)`` units of the full tree in bottom-up, leftmost-first order."""
    units = []
    for node in postorder(tree):
        if policy.action_for_token(tree[node]) is not PR:
            continue
        unit = removal_unit(tree, node, policy, core)
        if unit is not None:
            units.append((node, frozenset(unit)))
    return units


def generate(
    tree: DependencyTree,
    core: CoreSemantics,
    policy: RelationPolicy = DEFAULT_POLICY,
    max_depth: int = 10,
    max_sentences: int = 64,
) -> list[GeneratedSentence]:
    """Depth-first enumeration of pruned variants of a simple sentence.

    At each state the prunable units still present are tried bottom-up and
    leftmost-first; each new removed-index set yields one sentence and the
    search continues from it. States are deduplicated by removed-index set.
    """
    if classify(tree) is not SentenceType.SIMPLE:
        raise ContractError(f"{tree.sentence_id}: generate needs a simple sentence")
    if max_depth < 1 or max_sentences < 1:
        raise ValueError("max_depth and max_sentences must be at least 1")

    units = prunable_units(tree, core, policy)
    all_indices = frozenset(tree.indices)
    seen = {frozenset()}
    out: list[GeneratedSentence] = []

    def visit(removed: frozenset[int], parent_id: str, depth: int) -> None:
        for anchor, span in units:
            if len(out) >= max_sentences:
                return
            if anchor in removed:
                continue
            state = removed | span
            if state in seen:
                continue
            seen.add(state)
            kept = all_indices - state
            gen = GeneratedSentence(
                id=f"{tree.sentence_id}.g{len(out) + 1}",
                text=detokenize(tree, kept),
                parent_id=parent_id,
                removed_indices=state,
                depth=depth + 1,
                original_id=tree.sentence_id,
                kept_indices=tuple(sorted(kept)),
            )
            out.append(gen)
            if gen.depth < max_depth:
                visit(state, gen.id, gen.depth)

    visit(frozenset(), tree.sentence_id, 0)
    return out
