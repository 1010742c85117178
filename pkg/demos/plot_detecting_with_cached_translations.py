"""
Flagging a translation from cached outputs
==========================================

Pair each pruned sentence with the sentence it came from, translate both,
and compare the bags of words. The translations are replayed from a JSONL
cache, so this runs offline.
"""

# %%
from pathlib import Path

from prunetest.pipeline import RunConfig, run
from prunetest.detection import bow, distance

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# %%
# Only the first derived sentence has cached translations, so cap generation at one.
config = RunConfig(
    str(FIXTURES / "motivating.conllu"),
    translator=f"cache:{FIXTURES / 'motivating_cache.jsonl'}",
    max_sentences=1,
)
report = run(config)
for issue in report.issues:
    print(issue.parent_text, "->", issue.parent_translation)
    print(issue.derived_text, "->", issue.derived_translation)
    print("distance", issue.distance)

# %%
# Distance counts tokens the shorter sentence's translation gained. Here the
# two characters of a new word appear only on the pruned side.
tp, td = report.issues[0].parent_translation, report.issues[0].derived_translation
print(sorted((bow(td) - bow(tp)).elements()), distance(tp, td))

# %%
# The identity backend trivially satisfies the relation: no issue anywhere.
print(len(run(RunConfig(str(FIXTURES / "corpus.conllu"))).issues))
