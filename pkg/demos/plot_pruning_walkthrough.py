"""
Pruning a sentence down to its trunk
====================================

Start from a hand-checked dependency parse, find the clause trunk that must
survive, and list every shorter sentence the generator derives from it.
"""

# %%
# Load the parse. ``read_conllu`` returns one validated tree per block.
from pathlib import Path

from prunetest import extract_core, generate, read_conllu
from prunetest.pruning import DEFAULT_POLICY

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
trees = {t.sentence_id: t for t in read_conllu(FIXTURES / "examples.conllu")}
tree = trees["motivating"]
print(tree.text)
for tok in tree.tokens:
    print(f"{tok.index:>3} {tok.surface:<10} <-{tok.deprel:<12} {tok.head:>3}  {DEFAULT_POLICY.action_for_token(tok).value}")

# %%
# The trunk here is subject, predicate and final punctuation. Nothing in it is
# ever removed.
core = extract_core(tree)
print(core.pattern.name, [tree[i].surface for i in sorted(core.indices)])

# %%
# Generate. Each sentence records its parent, so chains of successive
# removals can be read off directly.
generated = generate(tree, core)
for g in generated:
    print(f"{g.id:<16} depth={g.depth} parent={g.parent_id:<16} {g.text}")

# %%
# Multi-word names are glued to their head, so the prepositional phrase goes
# while the full name stays.
einstein = trees["einstein"]
print([g.text for g in generate(einstein, extract_core(einstein))])
