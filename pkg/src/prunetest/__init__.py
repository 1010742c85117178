"""Metamorphic testing of machine translation by pruning dependency trees.

Source sentences are parsed into dependency trees, reduced to simple clauses,
and pruned of contextual material that leaves the basic clause structure
intact. Each pruned sentence is translated next to the sentence it came from;
a pruned translation that introduces words absent from its parent's
translation points at a translation error.
"""

from prunetest.clauses import CoreSemantics, Pattern, SentenceType, classify, extract_core, simplify_complex, split_compound, to_simple
from prunetest.deptree import DependencyTree, Token, detokenize, from_parser_response, parse_conllu, read_conllu, subtree
from prunetest.detection import SuspiciousIssue, bow, detect, distance
from prunetest.metamorphic import SentencePair, make_pairs
from prunetest.pruning import DEFAULT_POLICY, GeneratedSentence, PruneAction, RelationPolicy, action_for, generate, removal_unit

__all__ = [
    "CoreSemantics", "Pattern", "SentenceType", "classify", "extract_core", "simplify_complex", "split_compound",
    "to_simple", "DependencyTree", "Token", "detokenize", "from_parser_response", "parse_conllu", "read_conllu",
    "subtree", "SuspiciousIssue", "bow", "detect", "distance", "SentencePair", "make_pairs", "DEFAULT_POLICY",
    "GeneratedSentence", "PruneAction", "RelationPolicy", "action_for", "generate", "removal_unit",
]
