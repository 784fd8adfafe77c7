"""Command-line entry points: asset ingestion, training, scripted runs, serving.

Exit codes: 0 success, 1 usage error, 2 data/asset error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import embeddings as emb
from . import graph as graph_mod
from . import scoring
from .brief import DesignBrief
from .config import build_engine, load_config
from .errors import CharspaceError
from .policy import run_top1
from .store import SessionStore

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _cmd_ingest(args) -> int:
    if args.kind == "embeddings":
        index = emb.load_embeddings(args.input)
        emb.save_cache(index, args.output)
        print(f"embeddings: {len(index)} terms, dim {index.dim}, "
              f"{index.malformed_lines} malformed lines -> {args.output}")
    else:
        graph = graph_mod.ingest_assertions(args.input, language=args.language)
        graph_mod.save_graph_cache(graph, args.output)
        print(f"graph: kept {graph.kept}, dropped {graph.dropped} -> {args.output}")
    return EXIT_OK


def _cmd_train(args) -> int:
    lexicon = scoring.load_lexicon(args.lexicon)
    index = emb.load_embeddings(args.embeddings)
    config = scoring.TrainConfig(
        max_depth=args.max_depth,
        learning_rate=args.learning_rate,
        max_rounds=args.max_rounds,
        folds=args.folds,
        seed=args.seed,
    )
    model, report = scoring.train_word_scorer(lexicon, index, config)
    scoring.save_model(model, args.out)
    print(f"trained {len(model.trees)} trees (CV best of "
          f"{len(report.mean_rmse) - 1} evaluated rounds)")
    if report.dropped_terms:
        print(f"warning: {len(report.dropped_terms)} lexicon terms lacked "
              f"embeddings: {', '.join(report.dropped_terms[:10])}")
    print(f"baseline RMSE (mean predictor): {report.mean_rmse[0]:.4f}")
    for rounds, mean in enumerate(report.mean_rmse):
        marker = " *" if rounds == report.best_rounds else ""
        per_fold = ""
        if rounds > 0 and args.verbose:
            per_fold = "  [" + ", ".join(f"{r:.3f}" for r in report.fold_rmse[rounds - 1]) + "]"
        print(f"  rounds {rounds:3d}: mean CV RMSE {mean:.4f}{marker}{per_fold}")
    print(f"model saved to {args.out}")
    return EXIT_OK


def _cmd_run(args) -> int:
    config = load_config(args.config)
    engine = build_engine(config)
    text = Path(args.brief_file).read_text(encoding="utf-8").strip()
    result = run_top1(engine, DesignBrief(text=text))
    if args.session_store:
        SessionStore(args.session_store).save(result.session)
    cs = result.character_space
    print(f"session: {result.session.id}")
    print(f"query words: {', '.join(result.session.query_words)}")
    print(f"w1 pool: {', '.join(result.session.w1_pool)}")
    print("character space:")
    print(f"  top    (w1): {cs.w1}")
    print(f"  right  (w2): {cs.w2} (shown as {cs.w2_noun})")
    print(f"  bottom (w3): {cs.w3}")
    print(f"  left   (w4): {cs.w4}")
    print(f"target quadrant: {cs.quadrant_labels[0]}")
    print("explanation:")
    print(result.explanation)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = load_config(args.config)
    engine = build_engine(config)
    store = SessionStore(config.session_store)
    app = create_app(engine, store, auth_token=config.auth_token)
    uvicorn.run(app, host=config.host, port=config.port,
                log_level=config.log_level)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="charspace")
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="build binary asset caches")
    ingest.add_argument("kind", choices=["embeddings", "graph"])
    ingest.add_argument("input")
    ingest.add_argument("output")
    ingest.add_argument("--language", default="en")
    ingest.set_defaults(fn=_cmd_ingest)

    train = sub.add_parser("train", help="fit and save the word scorer")
    train.add_argument("--lexicon", required=True)
    train.add_argument("--embeddings", required=True)
    train.add_argument("--out", required=True)
    train.add_argument("--max-depth", type=int, default=6)
    train.add_argument("--learning-rate", type=float, default=0.05)
    train.add_argument("--max-rounds", type=int, default=200)
    train.add_argument("--folds", type=int, default=10)
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--verbose", action="store_true")
    train.set_defaults(fn=_cmd_train)

    run = sub.add_parser("run", help="non-interactive scripted session")
    run.add_argument("--brief-file", required=True)
    run.add_argument("--policy", choices=["top1"], default="top1")
    run.add_argument("--config", default=None,
                     help="JSON config path (default: $CSC_CONFIG or charspace.json)")
    run.add_argument("--session-store", default=None)
    run.set_defaults(fn=_cmd_run)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--config", default=None)
    serve.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: missing file: {exc.filename or exc}", file=sys.stderr)
        return EXIT_DATA
    except CharspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
