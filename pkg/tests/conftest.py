import json

import pytest

from charspace import embeddings as emb
from charspace import graph as graph_mod
from charspace import morphology
from charspace import scoring
from charspace.brief import load_stopwords
from charspace.config import asset_path, fixture_path
from charspace.engine import Engine

DEMO_TRAIN_CONFIG = scoring.TrainConfig(max_rounds=60, seed=7)


@pytest.fixture(scope="session")
def fixture_index():
    return emb.load_embeddings(fixture_path("embeddings.txt"))


@pytest.fixture(scope="session")
def fixture_graph():
    return graph_mod.ingest_assertions(fixture_path("graph.tsv"))


@pytest.fixture(scope="session")
def demo_lexicon():
    return scoring.load_lexicon(asset_path("demo_lexicon.tsv"))


@pytest.fixture(scope="session")
def demo_model(demo_lexicon, fixture_index):
    model, _report = scoring.train_word_scorer(
        demo_lexicon, fixture_index, DEMO_TRAIN_CONFIG
    )
    return model


@pytest.fixture(scope="session")
def demo_engine(fixture_graph, fixture_index, demo_model):
    return Engine(
        graph=fixture_graph,
        index=fixture_index,
        model=demo_model,
        brackets=scoring.default_bracket_table(),
        nominalization=morphology.default_table(),
        stopwords=load_stopwords(),
    )


@pytest.fixture(scope="session")
def brief_a_text():
    return fixture_path("brief_a.txt").read_text(encoding="utf-8").strip()


@pytest.fixture(scope="session")
def brief_b_text():
    return fixture_path("brief_b.txt").read_text(encoding="utf-8").strip()


@pytest.fixture(scope="session")
def demo_assets_dir(tmp_path_factory, demo_model):
    """Asset directory + config file for service/CLI runs."""
    root = tmp_path_factory.mktemp("assets")
    scoring.save_model(demo_model, root / "model.csgbt")
    config = {
        "embeddings": str(fixture_path("embeddings.txt")),
        "graph": str(fixture_path("graph.tsv")),
        "model": str(root / "model.csgbt"),
        "bracket_table": str(asset_path("bracket_table.json")),
        "nominalization_exceptions": str(asset_path("nominalization_exceptions.tsv")),
        "stopwords": str(asset_path("stopwords.txt")),
        "session_store": str(root / "sessions"),
    }
    (root / "config.json").write_text(json.dumps(config), encoding="utf-8")
    return root
