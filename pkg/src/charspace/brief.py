"""Design-brief analysis: turn free text into an ordered adjective query list."""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, NamedTuple, Optional

from .errors import ValidationError
from .graph import ConceptGraph
from .morphology import is_adjective

MAX_BRIEF_CHARS = 10_000

# letters plus internal hyphens; split on everything else
_TOKEN_RE = re.compile(r"[a-z]+(?:-[a-z]+)*")


@dataclass(frozen=True)
class DesignBrief:
    text: str
    id: Optional[str] = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValidationError("design brief is empty")
        if len(self.text) > MAX_BRIEF_CHARS:
            raise ValidationError(
                f"design brief exceeds {MAX_BRIEF_CHARS} characters"
            )


class ExtractionResult(NamedTuple):
    lemmas: list[str]
    no_query_words: bool  # True when no adjectives were found


def load_stopwords() -> frozenset[str]:
    text = resources.files("charspace").joinpath("assets/stopwords.txt").read_text("utf-8")
    words = {w.strip() for w in text.splitlines()
             if w.strip() and not w.startswith("#")}
    return frozenset(words)


def tokenize(text: str) -> list[str]:
    """Lowercased letter tokens; hyphenated tokens also yield their parts."""
    tokens: list[str] = []
    for match in _TOKEN_RE.finditer(text.lower()):
        token = match.group(0)
        tokens.append(token)
        if "-" in token:
            tokens.extend(token.split("-"))
    return tokens


def extract_query_adjectives(
    brief: DesignBrief,
    graph: ConceptGraph,
    extra_lexicon: Optional[Iterable[str]] = None,
    stopwords: Optional[frozenset[str]] = None,
) -> ExtractionResult:
    """Ordered, deduplicated adjectives from the brief text.

    Pure given the same graph / lexicon / stopword assets.
    """
    if stopwords is None:
        stopwords = load_stopwords()
    lexicon = set(extra_lexicon) if extra_lexicon is not None else None
    out: list[str] = []
    seen: set[str] = set()
    for token in tokenize(brief.text):
        if token in seen or token in stopwords:
            continue
        if is_adjective(token, graph, lexicon):
            seen.add(token)
            out.append(token)
        else:
            seen.add(token)  # reject once, keep first-occurrence semantics
    return ExtractionResult(lemmas=out, no_query_words=not out)
