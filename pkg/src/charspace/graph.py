"""Knowledge-graph lookups: related words and antonyms over labeled edges.

Two backends share one contract: a local index built from a tab-separated
assertion dump, and a remote HTTP client with an on-disk response cache.
Adjacency is immutable after ingestion and safe to share across threads.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import struct
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, NamedTuple, Optional

from .errors import DataFormatError, TransportError

# Relation names follow the graph's URI labels.
RELATED_TO = "RelatedTo"
SIMILAR_TO = "SimilarTo"
SYNONYM = "Synonym"
ANTONYM = "Antonym"
DERIVED_FROM = "DerivedFrom"
FORM_OF = "FormOf"

KNOWN_RELATIONS = frozenset(
    {RELATED_TO, SIMILAR_TO, SYNONYM, ANTONYM, DERIVED_FROM, FORM_OF}
)
SYMMETRIC_RELATIONS = frozenset({RELATED_TO, SIMILAR_TO, SYNONYM, ANTONYM})

#: Directed relations indexed from both endpoints so nominalization can walk
#: from an adjective to the noun derived from it.
BIDIRECTIONAL_INDEX_RELATIONS = SYMMETRIC_RELATIONS | {DERIVED_FROM, FORM_OF}

#: Associative relations used by default when searching candidate words.
DEFAULT_CANDIDATE_RELATIONS = frozenset({RELATED_TO, SIMILAR_TO, SYNONYM})

GRAPH_CACHE_MAGIC = b"CSGRF1"

_POS_BY_SUFFIX = {"a": "adjective", "s": "adjective", "n": "noun", "v": "verb", "r": "adverb"}


@dataclass(frozen=True, order=True)
class TermSense:
    """A lemma with an optional part-of-speech tag and language."""

    lemma: str
    pos: str = "unknown"
    language: str = "en"


class RelatedResult(NamedTuple):
    """Ranked neighbors plus whether the query lemma exists in the graph."""

    items: list[tuple[TermSense, float]]
    found: bool


@dataclass(frozen=True)
class AntonymCandidate:
    sense: TermSense
    weight: float
    indirect: bool = False  # True when reached via a synonym's antonym


def parse_concept_uri(uri: str) -> Optional[TermSense]:
    """Parse ``/c/<lang>/<lemma>[/<pos>...]`` into a TermSense, or None."""
    parts = uri.strip().split("/")
    if len(parts) < 4 or parts[1] != "c":
        return None
    language = parts[2]
    lemma = parts[3].lower()
    pos = "unknown"
    if len(parts) >= 5 and parts[4]:
        pos = _POS_BY_SUFFIX.get(parts[4], "unknown")
    if not lemma:
        return None
    return TermSense(lemma=lemma, pos=pos, language=language)


def relation_from_uri(uri: str) -> str:
    name = uri.rstrip("/").rsplit("/", 1)[-1]
    return name


class ConceptGraph:
    """Local adjacency index keyed by (lemma, relation)."""

    def __init__(self, adjacency: dict[tuple[str, str], list[tuple[TermSense, float]]],
                 senses: Optional[dict[str, set[str]]] = None,
                 source_id: str = "", kept: int = 0, dropped: int = 0):
        self._adjacency = adjacency
        self.source_id = source_id
        self.kept = kept
        self.dropped = dropped
        self._lemmas = {lemma for lemma, _rel in adjacency}
        if senses is None:
            senses = {}
            for (lemma, _rel), entries in adjacency.items():
                senses.setdefault(lemma, set())
                for sense, _w in entries:
                    senses.setdefault(sense.lemma, set()).add(sense.pos)
        self._senses = senses

    def __contains__(self, lemma: str) -> bool:
        return lemma in self._lemmas or lemma in self._senses

    def edges(self, lemma: str, relation: str) -> list[tuple[TermSense, float]]:
        return self._adjacency.get((lemma, relation), [])

    def pos_tags(self, lemma: str) -> set[str]:
        """All part-of-speech tags observed for a lemma across the dump."""
        return self._senses.get(lemma, set())

    def related_terms(
        self,
        query: str,
        pos_filter: Optional[str] = None,
        relations: Iterable[str] = DEFAULT_CANDIDATE_RELATIONS,
        limit: int = 50,
    ) -> RelatedResult:
        return _rank_related(self, query, pos_filter, relations, limit)

    def antonyms(self, query: str, pos_filter: Optional[str] = None) -> list[AntonymCandidate]:
        return _rank_antonyms(self, query, pos_filter)


def _rank_related(backend, query, pos_filter, relations, limit) -> RelatedResult:
    relations = set(relations)
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if not relations:
        raise ValueError("relations set must be non-empty")
    query = query.lower()
    found = query in backend if isinstance(backend, ConceptGraph) else True
    best: dict[str, tuple[TermSense, float]] = {}
    for rel in relations:
        for sense, weight in backend.edges(query, rel):
            if sense.lemma == query:
                continue
            if pos_filter is not None and sense.pos != pos_filter:
                continue
            prev = best.get(sense.lemma)
            if prev is None or weight > prev[1]:
                best[sense.lemma] = (sense, weight)
    ranked = sorted(best.values(), key=lambda sw: (-sw[1], sw[0].lemma))
    return RelatedResult(items=ranked[:limit], found=found)


def _rank_antonyms(backend, query, pos_filter) -> list[AntonymCandidate]:
    query = query.lower()

    def direct(lemma: str) -> list[tuple[TermSense, float]]:
        out = []
        for sense, weight in backend.edges(lemma, ANTONYM):
            if sense.lemma == query:
                continue
            if pos_filter is not None and sense.pos != pos_filter:
                continue
            out.append((sense, weight))
        return out

    results = [AntonymCandidate(s, w) for s, w in direct(query)]
    if not results:
        # fallback tier: antonyms of the top-3 synonyms, tagged indirect
        synonyms = sorted(
            (sw for sw in backend.edges(query, SYNONYM) if sw[0].lemma != query),
            key=lambda sw: (-sw[1], sw[0].lemma),
        )[:3]
        for syn_sense, _w in synonyms:
            for sense, weight in direct(syn_sense.lemma):
                results.append(AntonymCandidate(sense, weight, indirect=True))
    ranked = sorted(results, key=lambda c: (c.indirect, -c.weight, c.sense.lemma))
    deduped: list[AntonymCandidate] = []
    seen: set[str] = set()
    for cand in ranked:
        if cand.sense.lemma in seen:
            continue
        seen.add(cand.sense.lemma)
        deduped.append(cand)
    return deduped


def ingest_assertions(path: str | Path, language: str = "en") -> ConceptGraph:
    """Build a ConceptGraph from a tab-separated assertion dump.

    Keeps only assertions whose start and end terms are in the requested
    language; multiword lemmas are dropped (phrase slots hold single
    adjectives).  Symmetric relations are stored in both directions.
    """
    path = Path(path)
    adjacency: dict[tuple[str, str], list[tuple[TermSense, float]]] = {}
    senses: dict[str, set[str]] = {}
    kept = 0
    dropped = 0

    def opener():
        with open(path, "rb") as probe:
            magic = probe.read(2)
        return gzip.open(path, "rt", encoding="utf-8") if magic == b"\x1f\x8b" \
            else open(path, "rt", encoding="utf-8")

    try:
        stream = opener()
    except OSError as exc:
        raise DataFormatError(f"cannot read assertion dump {path}: {exc}") from exc

    with stream:
        for raw in stream:
            cols = raw.rstrip("\n").split("\t")
            if len(cols) < 5:
                dropped += 1
                continue
            relation = relation_from_uri(cols[1])
            start = parse_concept_uri(cols[2])
            end = parse_concept_uri(cols[3])
            if start is None or end is None:
                dropped += 1
                continue
            if start.language != language or end.language != language:
                dropped += 1
                continue
            if "_" in start.lemma or "_" in end.lemma:
                dropped += 1
                continue
            try:
                meta = json.loads(cols[4])
                weight = float(meta["weight"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                dropped += 1
                continue
            if weight < 0:
                dropped += 1
                continue
            kept += 1
            senses.setdefault(start.lemma, set()).add(start.pos)
            senses.setdefault(end.lemma, set()).add(end.pos)
            adjacency.setdefault((start.lemma, relation), []).append((end, weight))
            if relation in BIDIRECTIONAL_INDEX_RELATIONS:
                adjacency.setdefault((end.lemma, relation), []).append((start, weight))

    if kept == 0:
        raise DataFormatError(f"{path}: no assertions retained for language {language!r}")

    for key, entries in adjacency.items():
        entries.sort(key=lambda sw: (-sw[1], sw[0].lemma))
    return ConceptGraph(adjacency, senses=senses, source_id=str(path),
                        kept=kept, dropped=dropped)


# --- binary cache -----------------------------------------------------------

def save_graph_cache(graph: ConceptGraph, path: str | Path) -> None:
    """Binary adjacency cache: magic, entry count, length-prefixed records."""
    def put_str(fh, s: str):
        raw = s.encode("utf-8")
        fh.write(struct.pack("<H", len(raw)))
        fh.write(raw)

    with open(path, "wb") as fh:
        fh.write(GRAPH_CACHE_MAGIC)
        fh.write(struct.pack("<II", len(graph._adjacency), graph.kept))
        fh.write(struct.pack("<I", len(graph._senses)))
        for lemma in sorted(graph._senses):
            put_str(fh, lemma)
            put_str(fh, ",".join(sorted(graph._senses[lemma])))
        for (lemma, relation), entries in sorted(graph._adjacency.items()):
            put_str(fh, lemma)
            put_str(fh, relation)
            fh.write(struct.pack("<I", len(entries)))
            for sense, weight in entries:
                put_str(fh, sense.lemma)
                put_str(fh, sense.pos)
                put_str(fh, sense.language)
                fh.write(struct.pack("<d", weight))


def load_graph_cache(path: str | Path) -> ConceptGraph:
    path = Path(path)

    def get_str(fh) -> str:
        (n,) = struct.unpack("<H", fh.read(2))
        return fh.read(n).decode("utf-8")

    with open(path, "rb") as fh:
        magic = fh.read(len(GRAPH_CACHE_MAGIC))
        if magic != GRAPH_CACHE_MAGIC:
            raise DataFormatError(f"{path}: bad magic {magic!r}")
        n_entries, kept = struct.unpack("<II", fh.read(8))
        (n_senses,) = struct.unpack("<I", fh.read(4))
        senses: dict[str, set[str]] = {}
        for _ in range(n_senses):
            lemma = get_str(fh)
            tags = get_str(fh)
            senses[lemma] = set(tags.split(",")) if tags else set()
        adjacency: dict[tuple[str, str], list[tuple[TermSense, float]]] = {}
        for _ in range(n_entries):
            lemma = get_str(fh)
            relation = get_str(fh)
            (n,) = struct.unpack("<I", fh.read(4))
            entries = []
            for _ in range(n):
                other = get_str(fh)
                pos = get_str(fh)
                lang = get_str(fh)
                (weight,) = struct.unpack("<d", fh.read(8))
                entries.append((TermSense(other, pos, lang), weight))
            adjacency[(lemma, relation)] = entries
    return ConceptGraph(adjacency, senses=senses, source_id=str(path), kept=kept)


# --- remote backend ---------------------------------------------------------

Transport = Callable[[str, dict], tuple[int, bytes]]
"""(url, params) -> (status_code, body bytes).  Injectable for tests."""


def _default_transport(url: str, params: dict) -> tuple[int, bytes]:
    import requests

    try:
        resp = requests.get(url, params=params, timeout=10)
    except requests.RequestException as exc:
        raise TransportError("network", str(exc)) from exc
    return resp.status_code, resp.content


class RemoteConceptGraph:
    """HTTP client with disk cache and rate limiting, same lookup contract.

    Responses are cached on disk keyed by (endpoint, query, relation); cache
    hits never touch the network.
    """

    def __init__(
        self,
        endpoint: str,
        cache_dir: str | Path,
        min_interval: float = 1.1,
        transport: Transport = _default_transport,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
        language: str = "en",
    ):
        self.endpoint = endpoint.rstrip("/")
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.min_interval = min_interval
        self._transport = transport
        self._clock = clock
        self._sleep = sleep
        self._last_request = -float("inf")
        self.language = language

    def _cache_path(self, query: str, relation: str) -> Path:
        key = hashlib.sha256(
            f"{self.endpoint}\x00{query}\x00{relation}".encode("utf-8")
        ).hexdigest()
        return self.cache_dir / f"{key}.json"

    def _fetch(self, query: str, relation: str) -> dict:
        cache = self._cache_path(query, relation)
        if cache.exists():
            return json.loads(cache.read_text(encoding="utf-8"))
        wait = self.min_interval - (self._clock() - self._last_request)
        if wait > 0:
            self._sleep(wait)
        self._last_request = self._clock()
        url = f"{self.endpoint}/query"
        params = {"node": f"/c/{self.language}/{query}", "rel": f"/r/{relation}"}
        status, body = self._transport(url, params)
        if status != 200:
            raise TransportError("status", f"GET {url} returned {status}")
        try:
            payload = json.loads(body)
            payload["edges"]  # shape check before caching
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise TransportError("payload", f"malformed body from {url}") from exc
        cache.write_text(json.dumps(payload, sort_keys=True), encoding="utf-8")
        return payload

    def edges(self, lemma: str, relation: str) -> list[tuple[TermSense, float]]:
        payload = self._fetch(lemma.lower(), relation)
        out: list[tuple[TermSense, float]] = []
        for edge in payload.get("edges", []):
            try:
                start = parse_concept_uri(edge["start"]["term"])
                end = parse_concept_uri(edge["end"]["term"])
                weight = float(edge.get("weight", 1.0))
            except (KeyError, TypeError, ValueError):
                continue
            if start is None or end is None:
                continue
            other = end if start.lemma == lemma.lower() else start
            if other.language != self.language or "_" in other.lemma:
                continue
            out.append((other, weight))
        out.sort(key=lambda sw: (-sw[1], sw[0].lemma))
        return out

    def remote_lookup(self, query: str, relation: str) -> list[tuple[TermSense, float]]:
        return self.edges(query, relation)

    def related_terms(
        self,
        query: str,
        pos_filter: Optional[str] = None,
        relations: Iterable[str] = DEFAULT_CANDIDATE_RELATIONS,
        limit: int = 50,
    ) -> RelatedResult:
        return _rank_related(self, query, pos_filter, relations, limit)

    def antonyms(self, query: str, pos_filter: Optional[str] = None) -> list[AntonymCandidate]:
        return _rank_antonyms(self, query, pos_filter)
