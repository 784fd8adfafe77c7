import json

from charspace.brief import DesignBrief
from charspace.store import SessionStore, session_from_dict, session_to_dict


def complete_session(engine, brief_text):
    from charspace.policy import run_top1
    return run_top1(engine, DesignBrief(text=brief_text)).session


class TestRoundTrip:
    def test_completed_session_survives_dict_cycle(self, demo_engine, brief_a_text):
        session = complete_session(demo_engine, brief_a_text)
        restored = session_from_dict(session_to_dict(session))
        assert restored.id == session.id
        assert restored.state == session.state
        assert restored.query_words == session.query_words
        assert restored.w1_offers == session.w1_offers
        assert restored.phrase_offers == session.phrase_offers
        assert restored.chosen_phrase == session.chosen_phrase
        assert restored.character_space == session.character_space
        assert restored.events == session.events

    def test_dict_form_is_json_serializable(self, demo_engine, brief_a_text):
        session = complete_session(demo_engine, brief_a_text)
        text = json.dumps(session_to_dict(session))
        assert session_from_dict(json.loads(text)).id == session.id

    def test_fresh_session_round_trip(self, demo_engine, brief_b_text):
        session = demo_engine.start_session(DesignBrief(text=brief_b_text))
        restored = session_from_dict(session_to_dict(session))
        assert restored.state == session.state
        assert restored.character_space is None


class TestSessionStore:
    def test_save_load(self, demo_engine, brief_a_text, tmp_path):
        store = SessionStore(tmp_path / "sessions")
        session = complete_session(demo_engine, brief_a_text)
        store.save(session)
        loaded = store.load(session.id)
        assert loaded.character_space == session.character_space
        assert list(store.ids()) == [session.id]

    def test_load_unknown_returns_none(self, tmp_path):
        store = SessionStore(tmp_path / "sessions")
        assert store.load("missing") is None

    def test_incremental_saves_append_once_per_event(self, demo_engine,
                                                     brief_a_text, tmp_path):
        store = SessionStore(tmp_path / "sessions")
        session = demo_engine.start_session(DesignBrief(text=brief_a_text))
        store.save(session)
        demo_engine.offer_w1(session)
        store.save(session)
        store.save(session)  # no new events, no new lines
        lines = store.event_log_lines(session.id)
        assert [e["event"] for e in lines] == ["session_started", "w1_offered"]

    def test_lock_is_stable_per_session(self, tmp_path):
        store = SessionStore(tmp_path / "sessions")
        assert store.lock("abc") is store.lock("abc")
        assert store.lock("abc") is not store.lock("xyz")
