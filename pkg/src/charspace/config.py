"""Service/CLI configuration and asset loading."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from . import embeddings, graph as graph_mod, morphology, scoring
from .brief import load_stopwords
from .engine import Engine
from .errors import DataFormatError, ValidationError

CONFIG_ENV_VAR = "CSC_CONFIG"


def fixture_path(name: str) -> Path:
    """Path of a bundled demo fixture file."""
    ref = resources.files("charspace").joinpath(f"assets/fixtures/{name}")
    with resources.as_file(ref) as path:
        return Path(path)


def asset_path(name: str) -> Path:
    ref = resources.files("charspace").joinpath(f"assets/{name}")
    with resources.as_file(ref) as path:
        return Path(path)


@dataclass
class ServiceConfig:
    embeddings_path: Path
    graph_path: Path
    model_path: Path
    bracket_table_path: Path
    nominalization_path: Path
    stopwords_path: Optional[Path] = None
    session_store: Path = Path("sessions")
    host: str = "127.0.0.1"
    port: int = 8040
    remote_graph_endpoint: Optional[str] = None
    remote_cache_dir: Optional[Path] = None
    remote_min_interval: float = 1.1
    auth_token: Optional[str] = None
    log_level: str = "info"

    def validate(self) -> None:
        if not 0 < self.port < 65536:
            raise ValidationError(f"invalid port {self.port}")
        for label, path in [
            ("embeddings", self.embeddings_path),
            ("graph", self.graph_path),
            ("model", self.model_path),
            ("bracket table", self.bracket_table_path),
            ("nominalization exceptions", self.nominalization_path),
        ]:
            if not Path(path).exists():
                raise DataFormatError(f"{label} asset missing: {path}")


def load_config(path: Optional[str | Path] = None) -> ServiceConfig:
    """Read a JSON config file; CSC_CONFIG overrides the default location."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR, "charspace.json")
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataFormatError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"config {path} is not valid JSON: {exc}") from exc
    base = path.parent

    def p(key: str, default: Optional[str] = None) -> Optional[Path]:
        value = data.get(key, default)
        return (base / value) if value is not None else None

    cfg = ServiceConfig(
        embeddings_path=p("embeddings"),
        graph_path=p("graph"),
        model_path=p("model"),
        bracket_table_path=p("bracket_table"),
        nominalization_path=p("nominalization_exceptions"),
        stopwords_path=p("stopwords"),
        session_store=p("session_store", "sessions"),
        host=data.get("host", "127.0.0.1"),
        port=int(data.get("port", 8040)),
        remote_graph_endpoint=data.get("remote_graph_endpoint"),
        remote_cache_dir=p("remote_cache_dir"),
        remote_min_interval=float(data.get("remote_min_interval", 1.1)),
        auth_token=data.get("auth_token"),
        log_level=data.get("log_level", "info"),
    )
    for label, value in [("embeddings", cfg.embeddings_path),
                         ("graph", cfg.graph_path),
                         ("model", cfg.model_path)]:
        if value is None:
            raise DataFormatError(f"config {path} missing required key: {label}")
    if cfg.bracket_table_path is None:
        cfg.bracket_table_path = asset_path("bracket_table.json")
    if cfg.nominalization_path is None:
        cfg.nominalization_path = asset_path("nominalization_exceptions.tsv")
    return cfg


def _load_index(path: Path) -> embeddings.EmbeddingIndex:
    with open(path, "rb") as fh:
        magic = fh.read(len(embeddings.CACHE_MAGIC))
    if magic == embeddings.CACHE_MAGIC:
        return embeddings.load_cache(path)
    return embeddings.load_embeddings(path)


def _load_graph(path: Path) -> graph_mod.ConceptGraph:
    with open(path, "rb") as fh:
        magic = fh.read(len(graph_mod.GRAPH_CACHE_MAGIC))
    if magic == graph_mod.GRAPH_CACHE_MAGIC:
        return graph_mod.load_graph_cache(path)
    return graph_mod.ingest_assertions(path)


def build_engine(config: ServiceConfig) -> Engine:
    """Load all assets named by the config and wire up an Engine."""
    config.validate()
    index = _load_index(Path(config.embeddings_path))
    graph = _load_graph(Path(config.graph_path))
    model = scoring.load_model(Path(config.model_path))
    brackets = scoring.load_bracket_table(Path(config.bracket_table_path))
    table = morphology.load_exception_table(Path(config.nominalization_path))
    if config.stopwords_path is not None:
        words = {
            w.strip()
            for w in Path(config.stopwords_path).read_text("utf-8").splitlines()
            if w.strip() and not w.startswith("#")
        }
        stopwords = frozenset(words)
    else:
        stopwords = load_stopwords()
    return Engine(graph=graph, index=index, model=model, brackets=brackets,
                  nominalization=table, stopwords=stopwords)
