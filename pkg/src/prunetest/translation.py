"""Translator backends, the JSONL translation cache and a token-bucket rate limiter."""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from prunetest.errors import CacheMiss, TranslationError

log = logging.getLogger(__name__)

API_KEY_ENV = "PRUNETEST_API_KEY"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class TranslationRecord:
    source_text: str
    target_text: str
    translator_id: str
    target_lang: str
    fetched_at: str = field(default_factory=_now, compare=False)

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.source_text, self.translator_id, self.target_lang)

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "TranslationRecord":
        return cls(
            source_text=d["source_text"],
            target_text=d["target_text"],
            translator_id=d["translator_id"],
            target_lang=d["target_lang"],
            fetched_at=d.get("fetched_at", ""),
        )


class TranslationCache:
    """Append-only JSONL store of translation records.

    Loading tolerates malformed lines (counted in ``malformed``); when a key
    appears more than once the last line wins.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else None
        self.records: dict[tuple[str, str, str], TranslationRecord] = {}
        self._by_source: dict[tuple[str, str], TranslationRecord] = {}
        self.malformed = 0
        self._lock = threading.Lock()

    @classmethod
    def load(cls, path) -> "TranslationCache":
        cache = cls(path)
        if not cache.path.exists():
            return cache
        with open(cache.path, encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    record = TranslationRecord.from_dict(json.loads(line))
                except (ValueError, KeyError, TypeError) as exc:
                    cache.malformed += 1
                    log.warning("%s:%d: skipping malformed cache line (%s)", path, line_number, exc)
                    continue
                cache._remember(record)
        return cache

    def _remember(self, record: TranslationRecord) -> None:
        self.records[record.key] = record
        self._by_source[(record.source_text, record.target_lang)] = record

    def get(self, source_text: str, target_lang: str, translator_id: str | None = None) -> TranslationRecord | None:
        if translator_id is None:
            return self._by_source.get((source_text, target_lang))
        return self.records.get((source_text, translator_id, target_lang))

    def persist(self, record: TranslationRecord) -> None:
        with self._lock:
            self._remember(record)
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as f:
                    f.write(record.to_json() + "\n")

    def __len__(self) -> int:
        return len(self.records)


def load_cache(path) -> TranslationCache:
    return TranslationCache.load(path)


class TokenBucket:
    """Blocking token bucket; ``acquire`` never lets more than ``rate`` calls per second through on average."""

    def __init__(self, rate: float, capacity: float = 1.0, clock=time.monotonic, sleep=time.sleep):
        if rate <= 0:
            raise ValueError("rate must be positive")
        self.rate = rate
        self.capacity = capacity
        self.tokens = capacity
        self.clock = clock
        self.sleep = sleep
        self.updated = clock()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        with self._lock:
            while True:
                now = self.clock()
                self.tokens = min(self.capacity, self.tokens + (now - self.updated) * self.rate)
                self.updated = now
                if self.tokens >= 1:
                    self.tokens -= 1
                    return
                self.sleep((1 - self.tokens) / self.rate)


@dataclass(frozen=True)
class PairTranslation:
    parent: str
    derived: str
    injected_parent: bool = False
    injected_derived: bool = False

    @property
    def injected(self) -> bool:
        return self.injected_parent or self.injected_derived


class Translator:
    """Base translator: memoises one record per distinct (source, language).

    Subclasses implement :meth:`_fetch`. Concurrent callers asking for the
    same source wait for a single fetch.
    """

    translator_id = "base"

    def __init__(self):
        self._memo: dict[tuple[str, str], TranslationRecord] = {}
        self._key_locks: dict[tuple[str, str], threading.Lock] = {}
        self._lock = threading.Lock()

    def _fetch(self, source_text: str, target_lang: str) -> TranslationRecord:
        raise NotImplementedError

    def translate(self, source_text: str, target_lang: str = "zh") -> TranslationRecord:
        if not source_text:
            raise ValueError("source_text must be non-empty")
        key = (source_text, target_lang)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
            key_lock = self._key_locks.setdefault(key, threading.Lock())
        with key_lock:
            with self._lock:
                if key in self._memo:
                    return self._memo[key]
            record = self._fetch(source_text, target_lang)
            with self._lock:
                self._memo[key] = record
            return record

    def translate_pair(self, parent_text: str, derived_text: str, target_lang: str = "zh", ordinal: int = 0) -> PairTranslation:
        return PairTranslation(
            self.translate(parent_text, target_lang).target_text,
            self.translate(derived_text, target_lang).target_text,
        )


class IdentityTranslator(Translator):
    translator_id = "identity"

    def _fetch(self, source_text, target_lang):
        return TranslationRecord(source_text, source_text, self.translator_id, target_lang)


class ReplayTranslator(Translator):
    """Serves translations from a cache file and never goes to the network."""

    def __init__(self, cache: TranslationCache, translator_id: str | None = None):
        super().__init__()
        self.cache = cache
        self.source_id = translator_id
        self.translator_id = f"cache:{translator_id or '*'}"

    def _fetch(self, source_text, target_lang):
        record = self.cache.get(source_text, target_lang, self.source_id)
        if record is None:
            raise CacheMiss(f"no cached {target_lang} translation for {source_text!r}")
        return record


class HttpTranslator(Translator):
    """Generic JSON translation endpoint.

    Sends ``{"q": text, "target": lang}`` by POST and reads ``{"translation": ...}``.
    Failed calls are retried with exponential backoff; an optional cache is
    consulted first and appended to after each successful fetch.
    """

    def __init__(
        self,
        url: str,
        rate: float | None = None,
        retries: int = 3,
        backoff: float = 0.5,
        timeout: float = 30.0,
        cache: TranslationCache | None = None,
        translator_id: str | None = None,
        api_key: str | None = None,
        session=None,
    ):
        import requests

        super().__init__()
        self.url = url
        self.retries = retries
        self.backoff = backoff
        self.timeout = timeout
        self.cache = cache
        self.translator_id = translator_id or f"http:{url}"
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        self.bucket = TokenBucket(rate) if rate else None
        self.session = session or requests.Session()
        self.calls = 0

    def _fetch(self, source_text, target_lang):
        import requests

        if self.cache is not None:
            hit = self.cache.get(source_text, target_lang, self.translator_id)
            if hit is not None:
                return hit
        headers = {"X-API-Key": self.api_key} if self.api_key else {}
        last_error = None
        for attempt in range(self.retries):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            if self.bucket is not None:
                self.bucket.acquire()
            self.calls += 1
            try:
                resp = self.session.post(
                    self.url, json={"q": source_text, "target": target_lang}, headers=headers, timeout=self.timeout
                )
                resp.raise_for_status()
                target = resp.json()["translation"]
                if not isinstance(target, str):
                    raise ValueError("'translation' is not a string")
            except (requests.RequestException, ValueError, KeyError) as exc:
                last_error = exc
                log.info("translation attempt %d/%d failed: %s", attempt + 1, self.retries, exc)
                continue
            record = TranslationRecord(source_text, target, self.translator_id, target_lang)
            if self.cache is not None:
                self.cache.persist(record)
            return record
        raise TranslationError(f"{self.url}: giving up after {self.retries} attempts: {last_error}")


def make_translator(spec: str, rate: float | None = None, cache_path=None) -> Translator:
    """Build a backend from ``identity``, ``dict:<path>``, ``cache:<path>``, ``http:<url>`` or ``fault:<spec>``."""
    from prunetest import simulator

    name, _, arg = spec.partition(":")
    if name == "identity":
        return IdentityTranslator()
    if name == "dict":
        with open(arg, encoding="utf-8") as f:
            return simulator.DictTranslator(json.load(f))
    if name == "cache":
        return ReplayTranslator(TranslationCache.load(arg))
    if name == "http":
        cache = TranslationCache.load(cache_path) if cache_path else None
        return HttpTranslator(arg, rate=rate, cache=cache)
    if name == "fault":
        fault = simulator.parse_fault_spec(arg)
        base = make_translator(fault.base) if fault.base else IdentityTranslator()
        return simulator.FaultyTranslator(base, fault)
    raise ValueError(f"unknown translator backend {spec!r}")
