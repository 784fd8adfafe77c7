"""Session persistence: append-only event log plus a snapshot per session.

The snapshot is rewritten after every accepted operation so a restart loses
nothing committed; the JSONL event log is the analysis hook keyed by session
id.  Access to any one session is serialized through a per-id lock.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Iterator, Optional

from .brief import DesignBrief
from .engine import (
    CharacterSpace,
    Event,
    PhraseCandidate,
    Session,
    SessionState,
    WordCandidate,
)


def _phrase_to_dict(p: PhraseCandidate) -> dict:
    return {"w1": p.w1, "w2": p.w2, "w2_noun": p.w2_noun,
            "similarity": p.similarity, "score": p.score, "display": p.display}


def _phrase_from_dict(d: dict) -> PhraseCandidate:
    return PhraseCandidate(w1=d["w1"], w2=d["w2"], w2_noun=d["w2_noun"],
                           similarity=d["similarity"], score=d["score"])


def session_to_dict(session: Session) -> dict:
    return {
        "id": session.id,
        "state": session.state.value,
        "brief": {"text": session.brief.text, "id": session.brief.id},
        "query_words": session.query_words,
        "no_query_words": session.no_query_words,
        "w1_offers": [
            {"lemma": c.lemma, "usefulness": c.usefulness, "source": c.source}
            for c in session.w1_offers
        ],
        "manual_words": session.manual_words,
        "w1_pool": session.w1_pool,
        "phrase_offers": [
            {"w1": w1, "phrases": [_phrase_to_dict(p) for p in group]}
            for w1, group in session.phrase_offers
        ],
        "chosen_phrase": _phrase_to_dict(session.chosen_phrase)
        if session.chosen_phrase else None,
        "w3_offers": session.w3_offers,
        "w4_offers": session.w4_offers,
        "character_space": {
            "w1": session.character_space.w1,
            "w2": session.character_space.w2,
            "w2_noun": session.character_space.w2_noun,
            "w3": session.character_space.w3,
            "w4": session.character_space.w4,
            "manual_w3": session.character_space.manual_w3,
            "manual_w4": session.character_space.manual_w4,
            "quadrant_labels": list(session.character_space.quadrant_labels),
        } if session.character_space else None,
        "events": [
            {"timestamp": e.timestamp, "event": e.type, "payload": e.payload}
            for e in session.events
        ],
    }


def session_from_dict(data: dict) -> Session:
    cs = None
    if data.get("character_space"):
        c = data["character_space"]
        cs = CharacterSpace(w1=c["w1"], w2=c["w2"], w2_noun=c["w2_noun"],
                            w3=c["w3"], w4=c["w4"],
                            manual_w3=c.get("manual_w3", False),
                            manual_w4=c.get("manual_w4", False))
    return Session(
        id=data["id"],
        state=SessionState(data["state"]),
        brief=DesignBrief(text=data["brief"]["text"], id=data["brief"].get("id")),
        query_words=list(data["query_words"]),
        no_query_words=data.get("no_query_words", False),
        w1_offers=[WordCandidate(lemma=c["lemma"], usefulness=c["usefulness"],
                                 source=c["source"]) for c in data["w1_offers"]],
        manual_words=list(data.get("manual_words", [])),
        w1_pool=list(data["w1_pool"]),
        phrase_offers=[(g["w1"], [_phrase_from_dict(p) for p in g["phrases"]])
                       for g in data["phrase_offers"]],
        chosen_phrase=_phrase_from_dict(data["chosen_phrase"])
        if data.get("chosen_phrase") else None,
        w3_offers=list(data["w3_offers"]),
        w4_offers=list(data["w4_offers"]),
        character_space=cs,
        events=[Event(timestamp=e["timestamp"], type=e["event"],
                      payload=e["payload"]) for e in data["events"]],
    )


class SessionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _snapshot_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def _log_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.log.jsonl"

    def save(self, session: Session) -> None:
        """Rewrite the snapshot and append any new event-log lines."""
        path = self._snapshot_path(session.id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(session_to_dict(session)), encoding="utf-8")
        tmp.replace(path)
        log_path = self._log_path(session.id)
        existing = 0
        if log_path.exists():
            with open(log_path, "r", encoding="utf-8") as fh:
                existing = sum(1 for _ in fh)
        with open(log_path, "a", encoding="utf-8") as fh:
            for event in session.events[existing:]:
                fh.write(json.dumps({
                    "timestamp": event.timestamp,
                    "session_id": session.id,
                    "event": event.type,
                    "payload": event.payload,
                }) + "\n")

    def load(self, session_id: str) -> Optional[Session]:
        path = self._snapshot_path(session_id)
        if not path.exists():
            return None
        return session_from_dict(json.loads(path.read_text(encoding="utf-8")))

    def event_log_lines(self, session_id: str) -> list[dict]:
        path = self._log_path(session_id)
        if not path.exists():
            return []
        return [json.loads(line) for line in
                path.read_text(encoding="utf-8").splitlines() if line]

    def ids(self) -> Iterator[str]:
        for path in sorted(self.root.glob("*.json")):
            yield path.stem
