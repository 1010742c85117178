"""Deterministic mock translators and fault injection for measuring the detector.

Faults model five common translation error types. Three of them change token
counts (under-translation, over-translation, mistranslation); the other two
(incorrect modification, unclear logic) only reorder tokens, which a
bag-of-words comparison cannot see.
"""

from __future__ import annotations

import enum
import random
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from prunetest.deptree import DependencyTree
from prunetest.detection import bow, distance, is_cjk, token_spans
from prunetest.translation import PairTranslation, TranslationRecord, Translator

SENTINEL = "OOV_SENTINEL"

_WORD = re.compile(r"\w+")


class FaultKind(enum.Enum):
    UNDER = "under"
    OVER = "over"
    MISTRANSLATION = "mistranslation"
    MODIFICATION = "modification"
    LOGIC = "logic"

    @property
    def changes_counts(self) -> bool:
        return self in (FaultKind.UNDER, FaultKind.OVER, FaultKind.MISTRANSLATION)


class Scope(enum.Enum):
    PARENT_ONLY = "parent_only"
    DERIVED_ONLY = "derived_only"
    BOTH = "both"


_KIND_ALIASES = {
    "under": FaultKind.UNDER, "undertranslation": FaultKind.UNDER,
    "over": FaultKind.OVER, "overtranslation": FaultKind.OVER,
    "mistranslation": FaultKind.MISTRANSLATION, "mis": FaultKind.MISTRANSLATION,
    "modification": FaultKind.MODIFICATION, "incorrectmodification": FaultKind.MODIFICATION,
    "logic": FaultKind.LOGIC, "unclearlogic": FaultKind.LOGIC,
}


@dataclass(frozen=True)
class FaultSpec:
    kind: FaultKind
    rate: float = 1.0
    seed: int = 0
    scope: Scope = Scope.BOTH
    base: str | None = None

    def __post_init__(self):
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"fault rate must lie in [0, 1], got {self.rate}")


def parse_fault_spec(text: str) -> FaultSpec:
    """Parse ``kind=over,rate=1.0,seed=7,scope=parent_only[,base=dict:path]``."""
    fields = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"fault option {part!r} is not key=value")
        fields[key.strip().lower()] = value.strip()
    unknown = set(fields) - {"kind", "rate", "seed", "scope", "base"}
    if unknown:
        raise ValueError(f"unknown fault option(s): {', '.join(sorted(unknown))}")
    if "kind" not in fields:
        raise ValueError("fault spec needs kind=")
    kind_key = re.sub(r"[\s_-]", "", fields["kind"].lower())
    if kind_key not in _KIND_ALIASES:
        raise ValueError(f"unknown fault kind {fields['kind']!r}")
    return FaultSpec(
        kind=_KIND_ALIASES[kind_key],
        rate=float(fields.get("rate", 1.0)),
        seed=int(fields.get("seed", 0)),
        scope=Scope(fields.get("scope", "both").lower()),
        base=fields.get("base"),
    )


def dict_translate(text: str, mapping: Mapping[str, str]) -> str:
    """Substitute every word through ``mapping``; unmapped words pass through.

    Lookup tries the exact word, then its casefolded form. Punctuation and
    spacing are left in place.
    """
    def sub(m):
        word = m.group()
        if word in mapping:
            return mapping[word]
        return mapping.get(word.casefold(), word)

    return _WORD.sub(sub, text)


def vocabulary_mapping(trees: Iterable[DependencyTree]) -> dict[str, str]:
    """An injective mapping over the casefolded vocabulary (each word reversed)."""
    words = set()
    for tree in trees:
        for tok in tree.tokens:
            words.update(w.casefold() for w in _WORD.findall(tok.surface))
    return {w: w[::-1] for w in sorted(words)}


class DictTranslator(Translator):
    translator_id = "dict"

    def __init__(self, mapping: Mapping[str, str]):
        super().__init__()
        self.mapping = dict(mapping)

    def _fetch(self, source_text, target_lang):
        return TranslationRecord(source_text, dict_translate(source_text, self.mapping), self.translator_id, target_lang)


def _drop(text: str, start: int, end: int) -> str:
    left, right = text[:start], text[end:]
    if left.endswith(" ") and (not right or right.startswith(" ")):
        left = left[:-1]
    return left + right


def inject(
    translation: str,
    spec: FaultSpec,
    rng: random.Random,
    candidates: Iterable[str] | None = None,
) -> tuple[str, bool]:
    """Apply one fault of ``spec.kind`` to ``translation``.

    Returns the new text and whether anything was changed. Count-changing
    faults only touch tokens whose casefolded form is in ``candidates`` when
    that is given; with no eligible token the text comes back unchanged.
    """
    spans = list(token_spans(translation))
    if not spans:
        return translation, False

    if not spec.kind.changes_counts:
        if len(spans) < 2:
            return translation, False
        (s1, e1, t1), (s2, e2, t2) = sorted(rng.sample(spans, 2))
        return translation[:s1] + t2 + translation[e1:s2] + t1 + translation[e2:], True

    if candidates is not None:
        allowed = set(candidates)
        spans = [s for s in spans if s[2].casefold() in allowed]
        if not spans:
            return translation, False
    start, end, tok = rng.choice(spans)
    if spec.kind is FaultKind.UNDER:
        return _drop(translation, start, end), True
    if spec.kind is FaultKind.OVER:
        sep = "" if is_cjk(tok[0]) else " "
        return translation[:end] + sep + tok + translation[end:], True
    return translation[:start] + SENTINEL + translation[end:], True


def tight_survivors(parent_translation: str, derived_translation: str) -> set[str]:
    """Tokens of the derived translation that occur at least as often there as in the parent."""
    p, d = bow(parent_translation), bow(derived_translation)
    return {tok for tok, n in d.items() if n >= p[tok]}


class FaultyTranslator(Translator):
    """Wraps a base translator and corrupts pair translations per a :class:`FaultSpec`.

    Single translations pass through untouched; faults are drawn per pair with
    a generator seeded by ``spec.seed ^ ordinal``.
    """

    def __init__(self, base: Translator, spec: FaultSpec):
        super().__init__()
        self.base = base
        self.spec = spec
        self.translator_id = f"fault[{spec.kind.value},{spec.scope.value}]({base.translator_id})"
        self.ineligible = 0

    def translate(self, source_text, target_lang="zh"):
        return self.base.translate(source_text, target_lang)

    def translate_pair(self, parent_text, derived_text, target_lang="zh", ordinal=0) -> PairTranslation:
        tp = self.base.translate(parent_text, target_lang).target_text
        td = self.base.translate(derived_text, target_lang).target_text
        rng = random.Random(self.spec.seed ^ ordinal)
        if rng.random() >= self.spec.rate:
            return PairTranslation(tp, td)
        survivors = tight_survivors(tp, td)
        kind = self.spec.kind
        hit_p = hit_d = False
        new_p, new_d = tp, td
        if self.spec.scope in (Scope.PARENT_ONLY, Scope.BOTH):
            pool = survivors if kind in (FaultKind.UNDER, FaultKind.MISTRANSLATION) else None
            new_p, hit_p = inject(tp, self.spec, rng, pool)
        if self.spec.scope in (Scope.DERIVED_ONLY, Scope.BOTH):
            pool = survivors if kind is FaultKind.OVER else None
            new_d, hit_d = inject(td, self.spec, rng, pool)
        if not (hit_p or hit_d):
            self.ineligible += 1
        return PairTranslation(new_p, new_d, hit_p, hit_d)


def detectable_in_principle(kind: FaultKind, injected_parent: bool, injected_derived: bool) -> bool:
    """Whether the fault can raise a derived token count above the parent's."""
    if injected_parent and kind in (FaultKind.UNDER, FaultKind.MISTRANSLATION):
        return True
    return injected_derived and kind in (FaultKind.OVER, FaultKind.MISTRANSLATION)


@dataclass(frozen=True)
class MeasureResult:
    pairs: int
    injected: int
    detectable: int
    detected: int
    recall: float
    false_positives: int
    ineligible: int


def measure(
    corpus: Iterable[DependencyTree],
    spec: FaultSpec,
    t: int = 0,
    mapping: Mapping[str, str] | None = None,
    max_depth: int = 10,
    max_sentences: int = 64,
) -> MeasureResult:
    """Run pruning, pairing and detection over ``corpus`` with injected faults.

    The base backend is :class:`DictTranslator`, which satisfies the
    metamorphic relation exactly, so every flagged un-injected pair is a
    false positive. Recall is detected injected pairs over injected pairs.
    """
    from prunetest.pipeline import build_pairs

    corpus = list(corpus)
    if mapping is None:
        mapping = vocabulary_mapping(corpus)
    translator = FaultyTranslator(DictTranslator(mapping), spec)
    pairs = []
    for tree in corpus:
        pairs.extend(build_pairs(tree, max_depth=max_depth, max_sentences=max_sentences).pairs)

    injected = detectable = detected = false_positives = 0
    for ordinal, pair in enumerate(pairs):
        out = translator.translate_pair(pair.parent_text, pair.derived_text, "zz", ordinal)
        flagged = distance(out.parent, out.derived) > t
        if out.injected:
            injected += 1
            detected += flagged
            detectable += detectable_in_principle(spec.kind, out.injected_parent, out.injected_derived)
        else:
            false_positives += flagged
    return MeasureResult(
        pairs=len(pairs),
        injected=injected,
        detectable=detectable,
        detected=detected,
        recall=detected / injected if injected else 0.0,
        false_positives=false_positives,
        ineligible=translator.ineligible,
    )
