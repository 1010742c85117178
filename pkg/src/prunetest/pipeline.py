"""End-to-end run: ingest, simplify, prune, pair, translate, detect, report."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

from prunetest.clauses import extract_core, to_simple
from prunetest.deptree import DependencyTree, HttpParser, iter_conllu_blocks, parse_conllu_block
from prunetest.detection import SuspiciousIssue, distance
from prunetest.errors import PruneTestError
from prunetest.metamorphic import SentencePair, make_pairs
from prunetest.pruning import DEFAULT_POLICY, GeneratedSentence, RelationPolicy, generate, load_policy
from prunetest.translation import Translator, make_translator

log = logging.getLogger(__name__)

SWEEP_THRESHOLDS = (0, 2, 4, 6, 8, 10, 12)


@dataclass
class RunConfig:
    input_path: str
    input_kind: str = "conllu"  # or "raw" (one sentence per line, parsed over HTTP)
    parser_url: str | None = None
    translator: str = "identity"
    target_lang: str = "zh"
    threshold: int = 0
    max_depth: int = 10
    max_sentences: int = 64
    output_path: str | None = None
    seed: int = 0
    workers: int = 4
    policy_path: str | None = None
    rate: float | None = None
    cache_path: str | None = None

    def __post_init__(self):
        if not self.input_path:
            raise ValueError("input_path must be non-empty")
        if self.output_path == "":
            raise ValueError("output_path must be non-empty when given")
        if self.threshold < 0:
            raise ValueError("threshold must be non-negative")
        if self.input_kind not in ("conllu", "raw"):
            raise ValueError(f"unknown input kind {self.input_kind!r}")
        if self.input_kind == "raw" and not self.parser_url:
            raise ValueError("raw input needs a parser_url")


@dataclass
class SentenceWork:
    """Everything generated for one input sentence before translation."""

    sentence_id: str
    clauses: list[DependencyTree] = field(default_factory=list)
    generated: list[GeneratedSentence] = field(default_factory=list)
    pairs: list[SentencePair] = field(default_factory=list)
    clause_skips: list[str] = field(default_factory=list)


def build_pairs(
    tree: DependencyTree,
    policy: RelationPolicy = DEFAULT_POLICY,
    max_depth: int = 10,
    max_sentences: int = 64,
) -> SentenceWork:
    """Simplify, extract the core of each clause, prune, and pair."""
    work = SentenceWork(tree.sentence_id)
    for clause in to_simple(tree):
        try:
            core = extract_core(clause)
        except PruneTestError as exc:
            work.clause_skips.append(str(exc))
            continue
        generated = generate(clause, core, policy, max_depth, max_sentences)
        work.clauses.append(clause)
        work.generated.extend(generated)
        work.pairs.extend(make_pairs(clause.sentence_id, generated, clause.text))
    return work


@dataclass(frozen=True)
class ScoredPair:
    pair: SentencePair
    parent_translation: str
    derived_translation: str
    distance: int
    injected: bool = False

    def issue(self, t: int) -> SuspiciousIssue:
        return SuspiciousIssue(
            pair_id=self.pair.pair_id,
            original_id=self.pair.original_id,
            parent_text=self.pair.parent_text,
            derived_text=self.pair.derived_text,
            parent_translation=self.parent_translation,
            derived_translation=self.derived_translation,
            distance=self.distance,
            threshold=t,
        )


def dedup_errors(issues: Iterable[SuspiciousIssue]) -> set[tuple[str, str]]:
    """Distinct erroneous translations, as ``(source_text, target_text)`` of the pruned side."""
    return {(i.derived_text, i.derived_translation) for i in issues}


@dataclass
class Report:
    config: RunConfig
    scored: list[ScoredPair]
    stats: dict
    timings: dict
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def threshold(self) -> int:
        return self.config.threshold

    def issues_at(self, t: int) -> list[SuspiciousIssue]:
        return [s.issue(t) for s in self.scored if s.distance > t]

    @property
    def issues(self) -> list[SuspiciousIssue]:
        return self.issues_at(self.threshold)

    def sweep(self, thresholds: Iterable[int] = SWEEP_THRESHOLDS) -> list[dict]:
        rows = []
        for t in thresholds:
            issues = self.issues_at(t)
            rows.append({"t": t, "issues": len(issues), "unique_errors": len(dedup_errors(issues))})
        return rows

    def sweep_csv(self, thresholds: Iterable[int] = SWEEP_THRESHOLDS) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["t", "issues", "unique_errors"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.sweep(thresholds))
        return buf.getvalue()

    def to_jsonl(self) -> str:
        header = {"type": "header", "config": asdict(self.config), "stats": self.stats}
        lines = [json.dumps(header, ensure_ascii=False, sort_keys=True)]
        for issue in self.issues:
            lines.append(json.dumps({"type": "issue", **issue.to_dict()}, ensure_ascii=False, sort_keys=True))
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_jsonl(), encoding="utf-8")


def read_report(path) -> tuple[dict, list[dict]]:
    """Return the header and the issue records of a JSONL report."""
    header, issues = None, []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec.get("type") == "header":
                header = rec
            else:
                issues.append(rec)
    if header is None:
        raise ValueError(f"{path}: no header line")
    return header, issues


def _ingest(config: RunConfig) -> list[tuple[str, DependencyTree | None, str | None]]:
    text = Path(config.input_path).read_text(encoding="utf-8")
    out = []
    if config.input_kind == "conllu":
        for sid, sent_text, lines in iter_conllu_blocks(text):
            try:
                out.append((sid, parse_conllu_block(sid, sent_text, lines), None))
            except PruneTestError as exc:
                out.append((sid, None, f"parse: {exc}"))
        return out
    parser = HttpParser(config.parser_url)
    sentences = [line.strip() for line in text.splitlines() if line.strip()]
    for k, sentence in enumerate(sentences, start=1):
        sid = f"s{k}"
        try:
            out.append((sid, parser.parse(sentence, sid), None))
        except PruneTestError as exc:
            out.append((sid, None, f"parse: {exc}"))
    return out


def _make_translator(config: RunConfig) -> Translator:
    from prunetest.simulator import FaultyTranslator

    translator = make_translator(config.translator, rate=config.rate, cache_path=config.cache_path)
    if isinstance(translator, FaultyTranslator) and "seed=" not in config.translator:
        from dataclasses import replace

        translator = FaultyTranslator(translator.base, replace(translator.spec, seed=config.seed))
    return translator


def run(config: RunConfig, translator: Translator | None = None) -> Report:
    """Execute the whole pipeline and, if ``output_path`` is set, write the report.

    Per-sentence failures (parse, extraction of every clause, translation) are
    counted as skipped; only an unreadable input file is fatal.
    """
    policy = load_policy(config.policy_path) if config.policy_path else DEFAULT_POLICY
    translator = translator or _make_translator(config)
    timings = {}

    t0 = time.perf_counter()
    ingested = _ingest(config)
    timings["parse"] = time.perf_counter() - t0

    skipped: list[tuple[str, str]] = [(sid, why) for sid, tree, why in ingested if tree is None]
    trees = [tree for _, tree, _ in ingested if tree is not None]

    def gen(tree):
        try:
            return build_pairs(tree, policy, config.max_depth, config.max_sentences)
        except PruneTestError as exc:
            return exc

    t0 = time.perf_counter()
    with ThreadPoolExecutor(max_workers=max(1, config.workers)) as pool:
        works = list(pool.map(gen, trees))
    timings["generation"] = time.perf_counter() - t0

    kept_works = []
    for tree, work in zip(trees, works):
        if isinstance(work, Exception):
            skipped.append((tree.sentence_id, f"generation: {work}"))
        elif not work.clauses:
            skipped.append((tree.sentence_id, "extraction: " + "; ".join(work.clause_skips)))
        else:
            kept_works.append(work)

    jobs = []
    ordinal = 0
    for w, work in enumerate(kept_works):
        for pair in work.pairs:
            jobs.append((w, ordinal, pair))
            ordinal += 1

    def translate(job):
        w, k, pair = job
        try:
            return translator.translate_pair(pair.parent_text, pair.derived_text, config.target_lang, k)
        except PruneTestError as exc:
            return exc

    t0 = time.perf_counter()
    with ThreadPoolExecutor(max_workers=max(1, config.workers)) as pool:
        translations = list(pool.map(translate, jobs))
    timings["translation"] = time.perf_counter() - t0

    failed: dict[int, str] = {}
    for (w, _, _), out in zip(jobs, translations):
        if isinstance(out, Exception) and w not in failed:
            failed[w] = f"translation: {out}"

    t0 = time.perf_counter()
    scored = []
    for (w, _, pair), out in zip(jobs, translations):
        if w in failed:
            continue
        scored.append(ScoredPair(pair, out.parent, out.derived, distance(out.parent, out.derived), out.injected))
    timings["detection"] = time.perf_counter() - t0

    for w, why in failed.items():
        skipped.append((kept_works[w].sentence_id, why))
    processed = [work for w, work in enumerate(kept_works) if w not in failed]

    n_in = len(ingested)
    stats = {
        "sentences_in": n_in,
        "sentences_processed": len(processed),
        "sentences_skipped": len(skipped),
        "clauses": sum(len(w.clauses) for w in processed),
        "clauses_skipped": sum(len(w.clause_skips) for w in processed),
        "generated_count": sum(len(w.generated) for w in processed),
        "pairs_count": len(scored),
    }
    report = Report(config, scored, stats, timings, skipped)
    issues = report.issues
    stats["issues_count"] = len(issues)
    stats["unique_erroneous_translations"] = len(dedup_errors(issues))
    stats["threshold_counts"] = {str(row["t"]): row["issues"] for row in report.sweep()}
    if n_in:
        timings["generation_per_sentence"] = timings["generation"] / n_in
        timings["translation_per_sentence"] = timings["translation"] / n_in
        timings["detection_per_sentence"] = timings["detection"] / n_in
    for sid, why in skipped:
        log.info("skipped %s: %s", sid, why)
    if config.output_path:
        report.write(config.output_path)
    return report
