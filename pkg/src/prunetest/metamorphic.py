"""Source sentence pairs along derivation edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from prunetest.errors import ConsistencyError
from prunetest.pruning import GeneratedSentence


@dataclass(frozen=True)
class SentencePair:
    pair_id: str
    parent_id: str
    derived_id: str
    original_id: str
    parent_text: str
    derived_text: str


def make_pairs(
    original_id: str, generated: Sequence[GeneratedSentence], original_text: str = ""
) -> list[SentencePair]:
    """One pair per derivation edge, i.e. exactly one per generated sentence.

    A depth-1 sentence pairs with the original; deeper sentences pair with the
    generated sentence they were pruned from.
    """
    texts = {original_id: original_text}
    depths = {original_id: 0}
    for g in generated:
        if g.original_id and g.original_id != original_id:
            raise ConsistencyError(f"{g.id} belongs to {g.original_id!r}, not {original_id!r}")
        if g.id in depths:
            raise ConsistencyError(f"duplicate generated id {g.id!r}")
        texts[g.id] = g.text
        depths[g.id] = g.depth

    pairs = []
    for g in generated:
        if g.parent_id not in depths:
            raise ConsistencyError(f"{g.id} names unknown parent {g.parent_id!r}")
        if g.depth != depths[g.parent_id] + 1:
            raise ConsistencyError(
                f"{g.id} has depth {g.depth} but its parent {g.parent_id!r} has depth {depths[g.parent_id]}"
            )
        pairs.append(
            SentencePair(
                pair_id=f"{g.parent_id}>{g.id}",
                parent_id=g.parent_id,
                derived_id=g.id,
                original_id=original_id,
                parent_text=texts[g.parent_id],
                derived_text=g.text,
            )
        )
    return pairs
