import pytest

from charspace.brief import DesignBrief
from charspace.engine import SessionState
from charspace.errors import ValidationError
from charspace.policy import run_top1


class TestTop1Policy:
    def test_retired_couple_brief_full_space(self, demo_engine, brief_a_text):
        run = run_top1(demo_engine, DesignBrief(text=brief_a_text))
        cs = run.character_space
        assert run.session.state is SessionState.COMPLETED
        assert (cs.w1, cs.w2, cs.w2_noun, cs.w3, cs.w4) == \
            ("kinetic", "warm", "warmth", "calm", "cold")
        assert run.explanation == (
            "My design concept is kinetic warmth. It has a sense of warmth "
            "yet is kinetic, not calm. It is kinetic but not cold. "
            "In this design, kinetic and warmth can go together."
        )

    def test_family_brief_completes(self, demo_engine, brief_b_text):
        run = run_top1(demo_engine, DesignBrief(text=brief_b_text))
        assert run.session.state is SessionState.COMPLETED
        assert run.character_space.w1 == "playful"

    def test_pool_is_leading_offers_capped_at_five(self, demo_engine, brief_a_text):
        run = run_top1(demo_engine, DesignBrief(text=brief_a_text))
        offers = [c.lemma for c in run.session.w1_offers]
        assert run.session.w1_pool == offers[:5]

    def test_deterministic_across_runs(self, demo_engine, brief_a_text):
        brief = DesignBrief(text=brief_a_text)
        a = run_top1(demo_engine, brief)
        b = run_top1(demo_engine, brief)
        assert a.character_space == b.character_space
        assert a.explanation == b.explanation
        assert [c.lemma for c in a.session.w1_offers] == \
            [c.lemma for c in b.session.w1_offers]
        assert a.session.phrase_offers == b.session.phrase_offers

    def test_no_candidates_is_error(self, demo_engine):
        with pytest.raises(ValidationError):
            run_top1(demo_engine, DesignBrief(text="the owner of it"))

    def test_poles_are_pairwise_distinct(self, demo_engine, brief_b_text):
        cs = run_top1(demo_engine, DesignBrief(text=brief_b_text)).character_space
        assert len({cs.w1, cs.w2, cs.w3, cs.w4}) == 4
