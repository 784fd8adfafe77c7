"""Session state machine: brief -> word 1 pool -> phrase -> antonyms -> quadrant.

Each accepted operation appends exactly one event to the session log and
advances (or keeps) the state; any call outside its allowed states raises
without mutating the session.  Offer lists follow documented total orders so
identical assets always reproduce identical sessions.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Optional

from .brief import DesignBrief, extract_query_adjectives, load_stopwords
from .embeddings import EmbeddingIndex, similarity
from .errors import InvalidTransitionError, ValidationError
from .graph import ConceptGraph, DEFAULT_CANDIDATE_RELATIONS
from .morphology import NominalizationTable, is_adjective, nominalize, shares_stem
from .scoring import BracketTable, WordScorerModel, word_score

WORD_SCORE_GATE = 1.7
MAX_POOL_SIZE = 5

EXPLANATION_TEMPLATE = (
    "My design concept is {dcp}. It has a sense of {w2} yet is {w1}, "
    "not {w3}. It is {w1} but not {w4}. In this design, {w1} and {w2} "
    "can go together."
)


class SessionState(str, Enum):
    CREATED = "Created"
    BRIEF_SUBMITTED = "BriefSubmitted"
    W1_OFFERED = "W1Offered"
    W1_POOL_SELECTED = "W1PoolSelected"
    PHRASES_OFFERED = "PhrasesOffered"
    PHRASE_SELECTED = "PhraseSelected"
    ANTONYMS_OFFERED = "AntonymsOffered"
    COMPLETED = "Completed"


@dataclass(frozen=True)
class WordCandidate:
    lemma: str
    usefulness: float
    source: str  # "query-word:relation" provenance


@dataclass(frozen=True)
class PhraseCandidate:
    w1: str
    w2: str
    w2_noun: str
    similarity: float
    score: float

    @property
    def display(self) -> str:
        return f"{self.w1} {self.w2_noun}"


@dataclass(frozen=True)
class CharacterSpace:
    """Four axis poles; w1 top, then clockwise w2 (right), w3, w4."""

    w1: str
    w2: str
    w2_noun: str
    w3: str
    w4: str
    manual_w3: bool = False
    manual_w4: bool = False

    @property
    def quadrant_labels(self) -> tuple[str, str, str, str]:
        # target quadrant first, then clockwise
        return (
            f"{self.w1} {self.w2_noun}",
            f"{self.w2} {self.w3}",
            f"{self.w3} {self.w4}",
            f"{self.w4} {self.w1}",
        )


@dataclass
class Event:
    timestamp: str  # RFC3339
    type: str
    payload: dict


@dataclass
class Session:
    id: str
    state: SessionState
    brief: DesignBrief
    query_words: list[str] = field(default_factory=list)
    no_query_words: bool = False
    w1_offers: list[WordCandidate] = field(default_factory=list)
    manual_words: list[str] = field(default_factory=list)
    w1_pool: list[str] = field(default_factory=list)
    phrase_offers: list[tuple[str, list[PhraseCandidate]]] = field(default_factory=list)
    chosen_phrase: Optional[PhraseCandidate] = None
    w3_offers: list[str] = field(default_factory=list)
    w4_offers: list[str] = field(default_factory=list)
    character_space: Optional[CharacterSpace] = None
    events: list[Event] = field(default_factory=list)

    def offered_phrase(self, w1: str, w2: str) -> Optional[PhraseCandidate]:
        for group_w1, group in self.phrase_offers:
            if group_w1 != w1:
                continue
            for cand in group:
                if cand.w2 == w2:
                    return cand
        return None


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class Engine:
    """Binds the shared read-only assets and drives session operations.

    Assets (graph, index, model, tables) are immutable and shared; callers
    must serialize operations on any single session.
    """

    def __init__(
        self,
        graph: ConceptGraph,
        index: EmbeddingIndex,
        model: WordScorerModel,
        brackets: BracketTable,
        nominalization: NominalizationTable,
        stopwords: Optional[frozenset[str]] = None,
        candidate_relations: frozenset[str] = DEFAULT_CANDIDATE_RELATIONS,
    ):
        self.graph = graph
        self.index = index
        self.model = model
        self.brackets = brackets
        self.nominalization = nominalization
        self.stopwords = stopwords if stopwords is not None else load_stopwords()
        self.candidate_relations = candidate_relations

    # -- helpers ------------------------------------------------------------

    def _require_state(self, session: Session, *allowed: SessionState) -> None:
        if session.state not in allowed:
            raise InvalidTransitionError(
                f"operation not allowed in state {session.state.value}; "
                f"requires one of {[s.value for s in allowed]}"
            )

    def _log(self, session: Session, event_type: str, payload: dict) -> None:
        session.events.append(Event(timestamp=_now(), type=event_type, payload=payload))

    def _usefulness(self, lemma: str) -> Optional[float]:
        # silent skip for unembedded candidates inside batch ranking
        if lemma not in self.index:
            return None
        return word_score(lemma, self.model, self.index)

    def _related_candidates(self, query: str, limit: int) -> list[WordCandidate]:
        result = self.graph.related_terms(
            query, pos_filter="adjective",
            relations=self.candidate_relations, limit=limit,
        )
        out = []
        for sense, _weight in result.items:
            usefulness = self._usefulness(sense.lemma)
            if usefulness is None:
                continue
            out.append(WordCandidate(lemma=sense.lemma, usefulness=usefulness,
                                     source=f"{query}:related"))
        return out

    @staticmethod
    def _merge_candidates(existing: list[WordCandidate],
                          new: list[WordCandidate]) -> list[WordCandidate]:
        best: dict[str, WordCandidate] = {c.lemma: c for c in existing}
        for cand in new:
            prev = best.get(cand.lemma)
            if prev is None or cand.usefulness > prev.usefulness:
                best[cand.lemma] = cand
        return sorted(best.values(), key=lambda c: (-c.usefulness, c.lemma))

    # -- operations ---------------------------------------------------------

    def start_session(self, brief: DesignBrief) -> Session:
        extraction = extract_query_adjectives(
            brief, self.graph, stopwords=self.stopwords
        )
        session = Session(
            id=uuid.uuid4().hex,
            state=SessionState.BRIEF_SUBMITTED,
            brief=brief,
            query_words=list(extraction.lemmas),
            no_query_words=extraction.no_query_words,
        )
        self._log(session, "session_started",
                  {"query_words": session.query_words,
                   "no_query_words": session.no_query_words})
        return session

    def offer_w1(self, session: Session, limit_per_query_word: int = 30) -> list[WordCandidate]:
        self._require_state(session, SessionState.BRIEF_SUBMITTED, SessionState.W1_OFFERED)
        offers: list[WordCandidate] = list(session.w1_offers)
        for query in session.query_words:
            offers = self._merge_candidates(
                offers, self._related_candidates(query, limit_per_query_word)
            )
        session.w1_offers = offers
        session.state = SessionState.W1_OFFERED
        self._log(session, "w1_offered",
                  {"count": len(offers), "empty": not offers})
        return offers

    def manual_query(self, session: Session, word: str,
                     limit: int = 30) -> list[WordCandidate]:
        self._require_state(session, SessionState.W1_OFFERED)
        word = word.strip().lower()
        if not word:
            raise ValidationError("manual query word is empty")
        warning = not is_adjective(word, self.graph)
        merged = self._merge_candidates(
            session.w1_offers, self._related_candidates(word, limit)
        )
        session.w1_offers = merged
        if word not in session.manual_words:
            session.manual_words.append(word)
        self._log(session, "manual_query",
                  {"word": word, "non_adjective_warning": warning,
                   "count": len(merged)})
        return merged

    def select_w1_pool(self, session: Session, lemmas: list[str]) -> Session:
        self._require_state(session, SessionState.W1_OFFERED)
        if not 1 <= len(lemmas) <= MAX_POOL_SIZE:
            raise ValidationError(
                f"pool must hold 1-{MAX_POOL_SIZE} words, got {len(lemmas)}"
            )
        if len(set(lemmas)) != len(lemmas):
            raise ValidationError("pool contains duplicate lemmas")
        offered = {c.lemma for c in session.w1_offers} | set(session.manual_words)
        unknown = [w for w in lemmas if w not in offered]
        if unknown:
            raise ValidationError(f"lemmas not among offers: {unknown}")
        session.w1_pool = list(lemmas)
        session.state = SessionState.W1_POOL_SELECTED
        self._log(session, "w1_pool_selected", {"pool": session.w1_pool})
        return session

    def offer_phrases(self, session: Session,
                      limit_per_w1: int = 20) -> list[tuple[str, list[PhraseCandidate]]]:
        self._require_state(session, SessionState.W1_POOL_SELECTED)
        groups: list[tuple[str, list[PhraseCandidate]]] = []
        for w1 in session.w1_pool:
            group: list[PhraseCandidate] = []
            if w1 in self.index:
                related = self.graph.related_terms(
                    w1, pos_filter="adjective",
                    relations=self.candidate_relations, limit=limit_per_w1,
                )
                for sense, _weight in related.items:
                    w2 = sense.lemma
                    if w2 == w1 or shares_stem(w1, w2):
                        continue
                    usefulness = self._usefulness(w2)
                    if usefulness is None or usefulness < WORD_SCORE_GATE:
                        continue
                    sim = similarity(w1, w2, self.index)
                    group.append(PhraseCandidate(
                        w1=w1, w2=w2,
                        w2_noun=nominalize(w2, self.nominalization, self.graph),
                        similarity=sim,
                        score=self.brackets.score(sim),
                    ))
            group.sort(key=lambda c: (-c.score, -c.similarity, c.w2))
            groups.append((w1, group))
        session.phrase_offers = groups
        session.state = SessionState.PHRASES_OFFERED
        self._log(session, "phrases_offered",
                  {"counts": {w1: len(g) for w1, g in groups}})
        return groups

    def select_phrase(self, session: Session, w1: str, w2: str) -> Session:
        # re-selection before the antonym step replaces the prior choice
        self._require_state(session, SessionState.PHRASES_OFFERED,
                            SessionState.PHRASE_SELECTED)
        candidate = session.offered_phrase(w1, w2)
        if candidate is None:
            raise ValidationError(f"phrase ({w1!r}, {w2!r}) was not offered")
        session.chosen_phrase = candidate
        session.state = SessionState.PHRASE_SELECTED
        self._log(session, "phrase_selected", {"w1": w1, "w2": w2})
        return session

    def offer_antonyms(self, session: Session) -> tuple[list[str], list[str]]:
        self._require_state(session, SessionState.PHRASE_SELECTED)
        phrase = session.chosen_phrase
        assert phrase is not None
        w3 = [c.sense.lemma for c in self.graph.antonyms(phrase.w1, pos_filter="adjective")]
        w4 = [c.sense.lemma for c in self.graph.antonyms(phrase.w2, pos_filter="adjective")]
        session.w3_offers = w3
        session.w4_offers = w4
        session.state = SessionState.ANTONYMS_OFFERED
        self._log(session, "antonyms_offered",
                  {"w3_count": len(w3), "w4_count": len(w4),
                   "manual_w3_required": not w3, "manual_w4_required": not w4})
        return w3, w4

    def complete_character_space(self, session: Session, w3: str, w4: str,
                                 manual_w3: bool = False,
                                 manual_w4: bool = False) -> CharacterSpace:
        self._require_state(session, SessionState.ANTONYMS_OFFERED)
        phrase = session.chosen_phrase
        assert phrase is not None
        if not manual_w3 and w3 not in session.w3_offers:
            raise ValidationError(f"w3 {w3!r} not among offers (manual flag not set)")
        if not manual_w4 and w4 not in session.w4_offers:
            raise ValidationError(f"w4 {w4!r} not among offers (manual flag not set)")
        poles = [phrase.w1, phrase.w2, w3, w4]
        if len(set(poles)) != 4:
            raise ValidationError(f"poles must be pairwise distinct: {poles}")
        cs = CharacterSpace(w1=phrase.w1, w2=phrase.w2, w2_noun=phrase.w2_noun,
                            w3=w3, w4=w4, manual_w3=manual_w3, manual_w4=manual_w4)
        session.character_space = cs
        session.state = SessionState.COMPLETED
        self._log(session, "completed",
                  {"w1": cs.w1, "w2": cs.w2, "w3": cs.w3, "w4": cs.w4,
                   "manual_w3": manual_w3, "manual_w4": manual_w4})
        return cs


def generate_explanation(cs: CharacterSpace) -> str:
    """Byte-exact template substitution from the completed character space."""
    return EXPLANATION_TEMPLATE.format(
        dcp=f"{cs.w1} {cs.w2_noun}",
        w1=cs.w1,
        w2=cs.w2_noun,
        w3=cs.w3,
        w4=cs.w4,
    )


def export_event_log(session: Session) -> list[dict]:
    """Line-record form of the event log (timestamp, session id, type, payload)."""
    return [
        {"timestamp": e.timestamp, "session_id": session.id,
         "event": e.type, "payload": e.payload}
        for e in session.events
    ]
