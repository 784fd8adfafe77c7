"""Non-interactive session policies for scripted runs and smoke tests."""

from __future__ import annotations

from dataclasses import dataclass

from .brief import DesignBrief
from .engine import (
    CharacterSpace,
    Engine,
    MAX_POOL_SIZE,
    PhraseCandidate,
    Session,
    generate_explanation,
)
from .errors import ValidationError


@dataclass
class ScriptedRun:
    session: Session
    character_space: CharacterSpace
    explanation: str


def _pick_top_phrase(groups: list[tuple[str, list[PhraseCandidate]]]) -> PhraseCandidate:
    best: PhraseCandidate | None = None
    for _w1, group in groups:
        for cand in group:
            # strict comparison: ties keep the earlier group / list position,
            # which is already ordered by (score, similarity, w2)
            if best is None or (cand.score, cand.similarity) > (best.score, best.similarity):
                best = cand
    if best is None:
        raise ValidationError("no phrase candidates were offered")
    return best


def _first_distinct(offers: list[str], taken: set[str]) -> str:
    for lemma in offers:
        if lemma not in taken:
            return lemma
    raise ValidationError("no usable antonym offer (all empty or duplicate poles)")


def run_top1(engine: Engine, brief: DesignBrief) -> ScriptedRun:
    """Always take the top-ranked option at every step; pool up to 5 words."""
    session = engine.start_session(brief)
    offers = engine.offer_w1(session)
    if not offers:
        raise ValidationError("no word-1 candidates for this brief")
    pool = [c.lemma for c in offers[:MAX_POOL_SIZE]]
    engine.select_w1_pool(session, pool)
    groups = engine.offer_phrases(session)
    phrase = _pick_top_phrase(groups)
    engine.select_phrase(session, phrase.w1, phrase.w2)
    w3_offers, w4_offers = engine.offer_antonyms(session)
    taken = {phrase.w1, phrase.w2}
    w3 = _first_distinct(w3_offers, taken)
    taken.add(w3)
    w4 = _first_distinct(w4_offers, taken)
    cs = engine.complete_character_space(session, w3, w4)
    return ScriptedRun(session=session, character_space=cs,
                       explanation=generate_explanation(cs))
