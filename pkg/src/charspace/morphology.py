"""Adjective identification, adjective -> noun conversion, and stem comparison.

Nominalization resolves in a fixed order: exception table, graph noun
neighbors (DerivedFrom / FormOf) with a matching stem, ordered suffix rules,
then a plain "-ness" fallback.  The stemmer is a small deterministic rule list used
only to block degenerate pairs like "elegant elegance"; it makes no claim to
linguistic completeness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .errors import DataFormatError
from .graph import DERIVED_FROM, FORM_OF, ConceptGraph

# First match wins; order matters ("-ousness" before "-ous" is not needed
# because these map adjective endings, not noun endings).
DEFAULT_SUFFIX_RULES: tuple[tuple[str, str], ...] = (
    ("ant", "ance"),
    ("ent", "ence"),
    ("ous", "ousness"),
    ("ile", "ility"),
    ("ic", "icity"),
    ("ble", "bility"),
    ("y", "iness"),
)

# Longest first.  Stripping only applies when the remaining stem keeps at
# least three characters, so short words like "icy" survive intact.
_STEM_SUFFIXES: tuple[str, ...] = (
    "ousness", "fulness", "iness", "icity", "ility", "ation", "ness",
    "ance", "ence", "ancy", "ency", "able", "ible", "ical", "ant", "ent",
    "ity", "ous", "ful", "ish", "ive", "al", "ic", "th", "y", "e",
)

_MIN_STEM = 3


@dataclass(frozen=True)
class NominalizationTable:
    """Exception map plus ordered suffix rules for adjective -> noun forms."""

    exceptions: dict[str, str] = field(default_factory=dict)
    suffix_rules: tuple[tuple[str, str], ...] = DEFAULT_SUFFIX_RULES
    fallback_suffix: str = "ness"


def load_exception_table(path: str | Path,
                         suffix_rules: tuple[tuple[str, str], ...] = DEFAULT_SUFFIX_RULES
                         ) -> NominalizationTable:
    """Read a two-column TSV (adjective, noun); '#' starts a comment line."""
    exceptions: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not cols[0] or not cols[1]:
            raise DataFormatError(f"{path}: line {lineno + 1} is not a two-column record")
        exceptions[cols[0].lower()] = cols[1].lower()
    return NominalizationTable(exceptions=exceptions, suffix_rules=suffix_rules)


def default_table() -> NominalizationTable:
    """The bundled exception table for common aesthetic adjectives."""
    ref = resources.files("charspace").joinpath("assets/nominalization_exceptions.tsv")
    with resources.as_file(ref) as path:
        return load_exception_table(path)


def stem(word: str) -> str:
    """Deterministic suffix-stripping stem (single longest-match pass)."""
    word = word.lower()
    for suffix in _STEM_SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= _MIN_STEM:
            word = word[: -len(suffix)]
            # a stray "i" left by y->i spelling ("beauti-ful" vs "beaut-y")
            if word.endswith("i") and len(word) > _MIN_STEM:
                word = word[:-1]
            break
    return word


def shares_stem(a: str, b: str) -> bool:
    """True when both words strip to the same stem (blocks "elegant elegance")."""
    return stem(a) == stem(b)


def is_adjective(lemma: str, graph: ConceptGraph,
                 extra_lexicon: Optional[Iterable[str]] = None) -> bool:
    """True iff the graph holds an adjective sense or the extra lexicon lists it."""
    if extra_lexicon is not None and lemma in set(extra_lexicon):
        return True
    return "adjective" in graph.pos_tags(lemma)


def nominalize(adjective: str, table: NominalizationTable,
               graph: Optional[ConceptGraph] = None) -> str:
    """Convert an adjective to its noun form for phrase display."""
    adjective = adjective.lower()
    noun = table.exceptions.get(adjective)
    if noun:
        return noun
    if graph is not None:
        # a noun neighbor sharing the adjective's stem is its nominalization
        for relation in (DERIVED_FROM, FORM_OF):
            for sense, _weight in graph.edges(adjective, relation):
                if sense.pos == "noun" and shares_stem(adjective, sense.lemma):
                    return sense.lemma
    for suffix, replacement in table.suffix_rules:
        if adjective.endswith(suffix):
            return adjective[: -len(suffix)] + replacement
    # "-ness" attaches without stem changes ("polite" -> "politeness");
    # the "-y" rule above already handles the vowel adjustment cases
    return adjective + table.fallback_suffix
