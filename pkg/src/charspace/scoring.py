"""Usefulness scoring for adjectives and creativity scoring for phrases.

The word scorer is a squared-error gradient-boosted ensemble of regression
trees over raw embedding dimensions, trained with k-fold cross validation to
pick the round count.  The phrase scorer maps embedding cosine similarity to
a configured bracket score.  Training is deterministic given the seed: fold
shuffling is the only randomness, splits break ties by lowest feature then
lowest threshold.
"""

from __future__ import annotations

import bisect
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .embeddings import EmbeddingIndex, similarity
from .errors import DataFormatError, ValidationError

MODEL_MAGIC = b"CSGBT1"
MODEL_VERSION = 1

CLIP_RANGE = (0.0, 5.0)


# --- labeled data -----------------------------------------------------------

@dataclass(frozen=True)
class LabeledLexicon:
    """Adjectives with 0-5 usable-label counts from expert raters."""

    records: tuple[tuple[str, int], ...]
    provenance: str = ""

    def __post_init__(self):
        seen = set()
        for adjective, count in self.records:
            if not 0 <= count <= 5:
                raise ValidationError(f"label count out of range for {adjective!r}: {count}")
            if adjective in seen:
                raise ValidationError(f"duplicate lexicon adjective: {adjective!r}")
            seen.add(adjective)


def load_lexicon(path: str | Path) -> LabeledLexicon:
    """TSV of (adjective, count); '#' starts a comment line."""
    records = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        try:
            records.append((cols[0].lower(), int(cols[1])))
        except (IndexError, ValueError) as exc:
            raise DataFormatError(f"{path}: bad lexicon line {lineno + 1}: {line!r}") from exc
    return LabeledLexicon(records=tuple(records), provenance=str(path))


# --- regression trees -------------------------------------------------------

@dataclass(frozen=True)
class RegressionTree:
    """Flat node arrays; feature < 0 marks a leaf holding ``value``."""

    feature: tuple[int, ...]
    threshold: tuple[float, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    value: tuple[float, ...]

    def predict(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(len(X))
        feature = self.feature
        threshold = self.threshold
        for i, row in enumerate(X):
            node = 0
            while feature[node] >= 0:
                node = self.left[node] if row[feature[node]] <= threshold[node] \
                    else self.right[node]
            out[i] = self.value[node]
        return out


def _quantile_thresholds(X: np.ndarray, n_thresholds: int) -> list[np.ndarray]:
    qs = np.arange(1, n_thresholds + 1) / (n_thresholds + 1)
    return [np.unique(np.quantile(X[:, f], qs)) for f in range(X.shape[1])]


class _TreeBuilder:
    def __init__(self, X: np.ndarray, thresholds: list[np.ndarray], max_depth: int):
        self.X = X
        self.thresholds = thresholds
        self.max_depth = max_depth
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def _new_node(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def build(self, idx: np.ndarray, residuals: np.ndarray, depth: int = 0) -> int:
        node = self._new_node()
        r = residuals[idx]
        self.value[node] = float(r.mean())
        if depth >= self.max_depth or len(idx) < 2:
            return node
        split = self._best_split(idx, r)
        if split is None:
            return node
        f, thr = split
        mask = self.X[idx, f] <= thr
        self.feature[node] = f
        self.threshold[node] = thr
        left_child = self.build(idx[mask], residuals, depth + 1)
        right_child = self.build(idx[~mask], residuals, depth + 1)
        self.left[node] = left_child
        self.right[node] = right_child
        return node

    def _best_split(self, idx: np.ndarray, r: np.ndarray) -> Optional[tuple[int, float]]:
        n = len(idx)
        total_sum = r.sum()
        best = None
        best_gain = 1e-12  # require strictly positive SSE reduction
        for f, cuts in enumerate(self.thresholds):
            if cuts.size == 0:
                continue
            x = self.X[idx, f]
            # n x c membership matrix; column-wise left sums and counts
            mask = x[:, None] <= cuts[None, :]
            left_n = mask.sum(axis=0)
            valid = (left_n > 0) & (left_n < n)
            if not valid.any():
                continue
            left_sum = r @ mask
            right_sum = total_sum - left_sum
            right_n = n - left_n
            with np.errstate(divide="ignore", invalid="ignore"):
                explained = left_sum**2 / left_n + right_sum**2 / right_n
            explained = np.where(valid, explained, -np.inf)
            gain = explained - total_sum * total_sum / n
            # argmax takes the first (lowest) threshold on ties; the strict
            # comparison below makes the lowest feature index win across features
            c = int(np.argmax(gain))
            if gain[c] > best_gain:
                best_gain = float(gain[c])
                best = (f, float(cuts[c]))
        return best

    def freeze(self) -> RegressionTree:
        return RegressionTree(
            feature=tuple(self.feature),
            threshold=tuple(self.threshold),
            left=tuple(self.left),
            right=tuple(self.right),
            value=tuple(self.value),
        )


def _fit_tree(X: np.ndarray, idx: np.ndarray, residuals: np.ndarray,
              thresholds: list[np.ndarray], max_depth: int) -> RegressionTree:
    builder = _TreeBuilder(X, thresholds, max_depth)
    builder.build(idx, residuals)
    return builder.freeze()


# --- the word scorer --------------------------------------------------------

@dataclass(frozen=True)
class WordScorerModel:
    base_score: float
    trees: tuple[RegressionTree, ...]
    learning_rate: float
    dim: int
    clip_range: tuple[float, float] = CLIP_RANGE

    def predict_vec(self, vec: np.ndarray) -> float:
        if vec.shape[-1] != self.dim:
            raise ValidationError(
                f"feature dim {vec.shape[-1]} does not match model dim {self.dim}"
            )
        X = np.asarray(vec, dtype=np.float64).reshape(1, -1)
        raw = self.base_score
        for tree in self.trees:
            raw += self.learning_rate * float(tree.predict(X)[0])
        lo, hi = self.clip_range
        return float(min(max(raw, lo), hi))

    def predict_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        raw = np.full(len(X), self.base_score)
        for tree in self.trees:
            raw += self.learning_rate * tree.predict(X)
        lo, hi = self.clip_range
        return np.clip(raw, lo, hi)


def word_score(adjective: str, model: WordScorerModel, index: EmbeddingIndex) -> float:
    """Clipped usefulness prediction for one adjective."""
    return model.predict_vec(index.vector(adjective))


@dataclass(frozen=True)
class TrainConfig:
    max_depth: int = 6
    learning_rate: float = 0.05
    max_rounds: int = 200
    folds: int = 10
    seed: int = 0
    patience: int = 10  # early stop after this many non-improving CV rounds
    n_thresholds: int = 16


@dataclass
class CVReport:
    fold_rmse: list[list[float]]  # per round, per fold validation RMSE
    mean_rmse: list[float]        # per round (index 0 = constant model)
    best_rounds: int
    train_rmse: list[float]       # final full fit, per round incl. round 0
    dropped_terms: list[str]


def _rmse(pred: np.ndarray, y: np.ndarray) -> float:
    return float(np.sqrt(np.mean((pred - y) ** 2)))


def train_word_scorer(
    lexicon: LabeledLexicon,
    index: EmbeddingIndex,
    config: TrainConfig = TrainConfig(),
) -> tuple[WordScorerModel, CVReport]:
    """Fit the boosted ensemble; CV selects the round count."""
    dropped = [adj for adj, _c in lexicon.records if adj not in index]
    usable = [(adj, c) for adj, c in lexicon.records if adj in index]
    if len(usable) < 10:
        raise ValidationError(
            f"need at least 10 embedded lexicon records, have {len(usable)}"
        )
    X = np.vstack([index.vector(adj) for adj, _c in usable]).astype(np.float64)
    y = np.array([float(c) for _adj, c in usable])
    n = len(y)
    base = float(y.mean())

    if np.all(y == y[0]):
        model = WordScorerModel(base_score=base, trees=(), learning_rate=config.learning_rate,
                                dim=index.dim)
        report = CVReport(fold_rmse=[], mean_rmse=[0.0], best_rounds=0,
                          train_rmse=[0.0], dropped_terms=dropped)
        return model, report

    folds = min(config.folds, n)
    rng = np.random.default_rng(config.seed)
    order = rng.permutation(n)
    fold_slices = np.array_split(order, folds)

    # lockstep boosting across folds so early stopping sees the mean curve
    states = []
    for val_idx in fold_slices:
        train_idx = np.setdiff1d(order, val_idx)
        b = float(y[train_idx].mean())
        states.append({
            "train": train_idx,
            "val": val_idx,
            "pred_train": np.full(len(train_idx), b),
            "pred_val": np.full(len(val_idx), b),
            "thresholds": _quantile_thresholds(X[train_idx], config.n_thresholds),
        })

    fold_rmse: list[list[float]] = []
    mean_rmse = [float(np.mean([_rmse(s["pred_val"], y[s["val"]]) for s in states]))]
    best_mean = mean_rmse[0]
    stale = 0
    for _round in range(config.max_rounds):
        round_rmse = []
        for s in states:
            tr = s["train"]
            residuals = np.zeros(n)
            residuals[tr] = y[tr] - s["pred_train"]
            tree = _fit_tree(X, tr, residuals, s["thresholds"], config.max_depth)
            s["pred_train"] += config.learning_rate * tree.predict(X[tr])
            s["pred_val"] += config.learning_rate * tree.predict(X[s["val"]])
            round_rmse.append(_rmse(s["pred_val"], y[s["val"]]))
        fold_rmse.append(round_rmse)
        mean_rmse.append(float(np.mean(round_rmse)))
        if mean_rmse[-1] < best_mean - 1e-12:
            best_mean = mean_rmse[-1]
            stale = 0
        else:
            stale += 1
            if stale >= config.patience:
                break

    best_rounds = int(np.argmin(mean_rmse))

    # final fit on all data for the selected round count
    thresholds = _quantile_thresholds(X, config.n_thresholds)
    all_idx = np.arange(n)
    pred = np.full(n, base)
    trees: list[RegressionTree] = []
    train_rmse = [_rmse(pred, y)]
    for _round in range(best_rounds):
        residuals = y - pred
        tree = _fit_tree(X, all_idx, residuals, thresholds, config.max_depth)
        pred += config.learning_rate * tree.predict(X)
        trees.append(tree)
        train_rmse.append(_rmse(pred, y))

    model = WordScorerModel(base_score=base, trees=tuple(trees),
                            learning_rate=config.learning_rate, dim=index.dim)
    report = CVReport(fold_rmse=fold_rmse, mean_rmse=mean_rmse,
                      best_rounds=best_rounds, train_rmse=train_rmse,
                      dropped_terms=dropped)
    return model, report


# --- model persistence ------------------------------------------------------

def save_model(model: WordScorerModel, path: str | Path) -> None:
    with open(path, "wb") as fh:
        fh.write(MODEL_MAGIC)
        fh.write(struct.pack("<H", MODEL_VERSION))
        fh.write(struct.pack("<ddIdd", model.base_score, model.learning_rate,
                             model.dim, *model.clip_range))
        fh.write(struct.pack("<I", len(model.trees)))
        for tree in model.trees:
            fh.write(struct.pack("<I", len(tree.feature)))
            for i in range(len(tree.feature)):
                fh.write(struct.pack("<idiid", tree.feature[i], tree.threshold[i],
                                     tree.left[i], tree.right[i], tree.value[i]))


def load_model(path: str | Path) -> WordScorerModel:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            magic = fh.read(len(MODEL_MAGIC))
            if magic != MODEL_MAGIC:
                raise DataFormatError(f"{path}: bad magic {magic!r}")
            (version,) = struct.unpack("<H", fh.read(2))
            if version != MODEL_VERSION:
                raise DataFormatError(f"{path}: unsupported model version {version}")
            base, lr, dim, lo, hi = struct.unpack("<ddIdd", fh.read(36))
            (n_trees,) = struct.unpack("<I", fh.read(4))
            trees = []
            for _ in range(n_trees):
                (n_nodes,) = struct.unpack("<I", fh.read(4))
                feature, threshold, left, right, value = [], [], [], [], []
                for _ in range(n_nodes):
                    f, t, l, r, v = struct.unpack(
                        "<idiid", fh.read(struct.calcsize("<idiid")))
                    feature.append(f)
                    threshold.append(t)
                    left.append(l)
                    right.append(r)
                    value.append(v)
                trees.append(RegressionTree(tuple(feature), tuple(threshold),
                                            tuple(left), tuple(right), tuple(value)))
    except struct.error as exc:
        raise DataFormatError(f"{path}: truncated or corrupt model file") from exc
    return WordScorerModel(base_score=base, trees=tuple(trees), learning_rate=lr,
                           dim=dim, clip_range=(lo, hi))


# --- phrase scoring ---------------------------------------------------------

@dataclass(frozen=True)
class BracketTable:
    """Similarity bins with one score each; half-open [lo, hi) membership."""

    bin_edges: tuple[float, ...]
    bin_scores: tuple[float, ...]
    default_score: float

    def __post_init__(self):
        if len(self.bin_edges) != len(self.bin_scores) + 1:
            raise ValidationError("need exactly one score per bin")
        if any(a >= b for a, b in zip(self.bin_edges, self.bin_edges[1:])):
            raise ValidationError("bin edges must be strictly ascending")

    def score(self, sim: float) -> float:
        if sim < self.bin_edges[0] or sim >= self.bin_edges[-1]:
            return self.default_score
        # rightmost edge <= sim gives the half-open bin containing it
        i = bisect.bisect_right(self.bin_edges, sim) - 1
        return self.bin_scores[i]


def load_bracket_table(path: str | Path) -> BracketTable:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return BracketTable(
            bin_edges=tuple(float(e) for e in data["edges"]),
            bin_scores=tuple(float(s) for s in data["scores"]),
            default_score=float(data["default"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DataFormatError(f"{path}: bad bracket table: {exc}") from exc


def default_bracket_table() -> BracketTable:
    from importlib import resources

    ref = resources.files("charspace").joinpath("assets/bracket_table.json")
    with resources.as_file(ref) as path:
        return load_bracket_table(path)


def phrase_score(w1: str, w2: str, table: BracketTable, index: EmbeddingIndex) -> float:
    """Bracket score of the pair's cosine similarity; symmetric in (w1, w2)."""
    return table.score(similarity(w1, w2, index))
