import json

import pytest

from charspace import config as C
from charspace.errors import DataFormatError, ValidationError


class TestLoadConfig:
    def test_loads_demo_config(self, demo_assets_dir):
        cfg = C.load_config(demo_assets_dir / "config.json")
        assert cfg.model_path.exists()
        assert cfg.port == 8040

    def test_relative_paths_resolve_against_config_dir(self, tmp_path):
        (tmp_path / "emb.txt").write_text("warm 1 0\ncold 0 1\n")
        config = {"embeddings": "emb.txt", "graph": "g.tsv", "model": "m.bin"}
        path = tmp_path / "config.json"
        path.write_text(json.dumps(config))
        cfg = C.load_config(path)
        assert cfg.embeddings_path == tmp_path / "emb.txt"

    def test_missing_required_key(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"embeddings": "e.txt"}))
        with pytest.raises(DataFormatError, match="graph"):
            C.load_config(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{nope")
        with pytest.raises(DataFormatError):
            C.load_config(path)

    def test_env_var_override(self, demo_assets_dir, monkeypatch):
        monkeypatch.setenv(C.CONFIG_ENV_VAR, str(demo_assets_dir / "config.json"))
        cfg = C.load_config()
        assert cfg.model_path.exists()

    def test_bad_port_rejected_on_validate(self, demo_assets_dir):
        cfg = C.load_config(demo_assets_dir / "config.json")
        cfg.port = 0
        with pytest.raises(ValidationError):
            cfg.validate()


class TestBuildEngine:
    def test_builds_from_text_assets(self, demo_assets_dir):
        engine = C.build_engine(C.load_config(demo_assets_dir / "config.json"))
        assert "kinetic" in engine.index
        assert "adjective" in engine.graph.pos_tags("kinetic")

    def test_builds_from_binary_caches(self, demo_assets_dir, tmp_path):
        from charspace import embeddings as emb
        from charspace import graph as G

        cfg = C.load_config(demo_assets_dir / "config.json")
        emb.save_cache(emb.load_embeddings(cfg.embeddings_path),
                       tmp_path / "emb.bin")
        G.save_graph_cache(G.ingest_assertions(cfg.graph_path),
                           tmp_path / "graph.bin")
        cfg.embeddings_path = tmp_path / "emb.bin"
        cfg.graph_path = tmp_path / "graph.bin"
        engine = C.build_engine(cfg)
        assert "kinetic" in engine.index

    def test_missing_asset_is_data_error(self, demo_assets_dir, tmp_path):
        cfg = C.load_config(demo_assets_dir / "config.json")
        cfg.model_path = tmp_path / "gone.bin"
        with pytest.raises(DataFormatError):
            C.build_engine(cfg)
