"""Word-embedding store: load text embedding files, cosine similarity, top-k search.

Vectors are L2-normalized float32 at load time, so similarity is a plain dot
product and downstream scoring features are scale-stable.  Lookup is an
exhaustive scan; indexes stay immutable after construction and are safe to
share across threads.
"""

from __future__ import annotations

import gzip
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Optional

import numpy as np

from .errors import DataFormatError, MissingTermError, ValidationError

CACHE_MAGIC = b"CSEMB1"

_GZIP_MAGIC = b"\x1f\x8b"


def _normalize_term(term: str) -> str:
    """Lowercase, strip graph-URI prefixes, spaces -> underscores."""
    term = term.strip().lower()
    if term.startswith("/c/"):
        # /c/<lang>/<term>[/<sense>...] -> keep the term segment
        parts = term.split("/")
        if len(parts) >= 4:
            term = parts[3]
    return term.replace(" ", "_")


@dataclass(frozen=True)
class EmbeddingIndex:
    """Immutable term -> unit-vector map with exhaustive similarity search."""

    dim: int
    terms: tuple[str, ...]
    matrix: np.ndarray  # shape (len(terms), dim), float32, rows unit-norm
    source_id: str
    malformed_lines: int = 0
    _pos: dict[str, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "_pos", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return _normalize_term(term) in self._pos

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddingIndex):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.terms == other.terms
            and np.array_equal(self.matrix, other.matrix)
        )

    def vector(self, term: str) -> np.ndarray:
        key = _normalize_term(term)
        if key not in self._pos:
            raise MissingTermError(term)
        return self.matrix[self._pos[key]]


def _dot(a: np.ndarray, b: np.ndarray) -> float:
    # one shared primitive so similarity() and top_k_neighbors() agree bitwise
    return float(np.dot(a.astype(np.float64), b.astype(np.float64)))


def similarity(a: str, b: str, index: EmbeddingIndex) -> float:
    """Cosine similarity of two stored terms (dot of unit vectors)."""
    return _dot(index.vector(a), index.vector(b))


def top_k_neighbors(
    query: str,
    k: int,
    index: EmbeddingIndex,
    exclude: Iterable[str] = (),
) -> list[tuple[str, float]]:
    """Exhaustive k-nearest by cosine; descending similarity, ties by term.

    The query itself and any excluded terms are never returned.
    """
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    qvec = index.vector(query).astype(np.float64)
    skip = {_normalize_term(t) for t in exclude}
    skip.add(_normalize_term(query))
    matrix64 = index.matrix.astype(np.float64)
    ranked = sorted(
        ((t, float(np.dot(matrix64[i], qvec)))
         for i, t in enumerate(index.terms) if t not in skip),
        key=lambda pair: (-pair[1], pair[0]),
    )
    return ranked[:k]


def _open_maybe_gzip(path: Path) -> IO[bytes]:
    with open(path, "rb") as probe:
        magic = probe.read(2)
    if magic == _GZIP_MAGIC:
        return gzip.open(path, "rb")
    return open(path, "rb")


def _looks_like_header(tokens: list[str]) -> bool:
    if len(tokens) != 2:
        return False
    try:
        int(tokens[0]), int(tokens[1])
    except ValueError:
        return False
    return True


def load_embeddings(
    path: str | Path,
    term_filter: Optional[Iterable[str]] = None,
) -> EmbeddingIndex:
    """Parse a whitespace-separated embedding text file into an index.

    Accepts an optional "count dim" header line and bare or URI-style terms.
    Duplicate terms keep the first occurrence; malformed lines are counted and
    tolerated unless they exceed half of the data lines.
    """
    path = Path(path)
    keep = None
    if term_filter is not None:
        keep = {_normalize_term(t) for t in term_filter}

    terms: list[str] = []
    rows: list[np.ndarray] = []
    seen: set[str] = set()
    dim: Optional[int] = None
    malformed = 0
    total = 0

    try:
        stream = _open_maybe_gzip(path)
    except OSError as exc:
        raise DataFormatError(f"cannot read embedding file {path}: {exc}") from exc

    with stream:
        for lineno, raw in enumerate(stream):
            tokens = raw.decode("utf-8", errors="replace").split()
            if not tokens:
                continue
            if lineno == 0 and _looks_like_header(tokens):
                continue
            total += 1
            term = _normalize_term(tokens[0])
            try:
                vec = np.array([float(x) for x in tokens[1:]], dtype=np.float32)
            except ValueError:
                malformed += 1
                continue
            if not term or vec.size == 0:
                malformed += 1
                continue
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise DataFormatError(
                    f"{path}: line {lineno + 1} has {vec.size} dims, expected {dim}"
                )
            if term in seen:
                continue
            if keep is not None and term not in keep:
                continue
            norm = float(np.linalg.norm(vec))
            if norm == 0.0 or not np.isfinite(norm):
                malformed += 1
                continue
            seen.add(term)
            terms.append(term)
            rows.append(vec / np.float32(norm))

    if total and malformed > total / 2:
        raise DataFormatError(
            f"{path}: {malformed}/{total} lines malformed (over 50%)"
        )
    if not rows:
        raise DataFormatError(f"{path}: no usable embedding records")

    return EmbeddingIndex(
        dim=int(dim),
        terms=tuple(terms),
        matrix=np.vstack(rows),
        source_id=str(path),
        malformed_lines=malformed,
    )


def save_cache(index: EmbeddingIndex, path: str | Path) -> None:
    """Write the binary cache: magic, dim, count, then per-term records."""
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<II", index.dim, len(index.terms)))
        for term, row in zip(index.terms, index.matrix):
            raw = term.encode("utf-8")
            fh.write(struct.pack("<H", len(raw)))
            fh.write(raw)
            fh.write(row.astype("<f4").tobytes())


def load_cache(path: str | Path) -> EmbeddingIndex:
    """Read a cache written by :func:`save_cache`; reproduces the source index."""
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(len(CACHE_MAGIC))
        if magic != CACHE_MAGIC:
            raise DataFormatError(f"{path}: bad magic {magic!r}, expected {CACHE_MAGIC!r}")
        dim, count = struct.unpack("<II", fh.read(8))
        terms: list[str] = []
        matrix = np.empty((count, dim), dtype=np.float32)
        for i in range(count):
            (tlen,) = struct.unpack("<H", fh.read(2))
            terms.append(fh.read(tlen).decode("utf-8"))
            buf = fh.read(4 * dim)
            if len(buf) != 4 * dim:
                raise DataFormatError(f"{path}: truncated vector for record {i}")
            matrix[i] = np.frombuffer(buf, dtype="<f4")
    return EmbeddingIndex(dim=dim, terms=tuple(terms), matrix=matrix, source_id=str(path))
