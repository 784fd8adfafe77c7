#!/usr/bin/env python3
"""Regenerate the bundled demo fixtures (embedding file + assertion dump).

Controlled vocabulary words sit on dedicated orthogonal axes so pair
similarities are exact by construction; the one engineered overlap puts
(kinetic, warm) at cosine 0.4, inside the peak phrase-score bracket.
Remaining lexicon words get seeded random unit vectors.
"""

import json
import math
from pathlib import Path

import numpy as np

ASSETS = Path(__file__).resolve().parents[1] / "src" / "charspace" / "assets"
FIXTURES = ASSETS / "fixtures"

DIM = 24

# word -> axis index (orthonormal); warm is a combination, handled below
AXES = {
    "kinetic": 0, "lively": 1, "dynamic": 2, "smart": 3, "economical": 4,
    "efficient": 5, "thrifty": 6, "spacious": 7, "roomy": 8, "functional": 9,
    "practical": 10, "calm": 11, "cold": 12, "playful": 13, "cheerful": 14,
    "serious": 15, "gloomy": 16, "fun": 17, "cool": 19, "soulful": 20,
    "engaging": 21,
}

# (relation, start, start_pos, end, end_pos, weight)
EDGES = [
    ("RelatedTo", "smart", "a", "kinetic", "a", 2.5),
    ("RelatedTo", "economical", "a", "efficient", "a", 2.0),
    ("RelatedTo", "economical", "a", "thrifty", "a", 1.5),
    ("RelatedTo", "spacious", "a", "roomy", "a", 1.8),
    ("RelatedTo", "functional", "a", "practical", "a", 1.6),
    ("RelatedTo", "kinetic", "a", "warm", "a", 2.2),
    ("RelatedTo", "kinetic", "a", "lively", "a", 1.2),
    ("RelatedTo", "kinetic", "a", "dynamic", "a", 1.0),
    ("RelatedTo", "fun", "a", "playful", "a", 1.5),
    ("RelatedTo", "playful", "a", "cheerful", "a", 1.3),
    ("RelatedTo", "soulful", "a", "engaging", "a", 1.0),
    ("Antonym", "kinetic", "a", "calm", "a", 2.0),
    ("Antonym", "warm", "a", "cold", "a", 2.4),
    ("Antonym", "warm", "a", "cool", "a", 1.0),
    ("Antonym", "playful", "a", "serious", "a", 1.5),
    ("Antonym", "cheerful", "a", "gloomy", "a", 1.5),
    ("RelatedTo", "car", "n", "vehicle", "n", 2.0),
    ("DerivedFrom", "warmth", "n", "warm", "a", 1.0),
]


def make_graph() -> str:
    lines = []
    for rel, start, spos, end, epos, weight in EDGES:
        lines.append("\t".join([
            f"/a/[/r/{rel}/,/c/en/{start}/{spos}/,/c/en/{end}/{epos}/]",
            f"/r/{rel}",
            f"/c/en/{start}/{spos}",
            f"/c/en/{end}/{epos}",
            json.dumps({"weight": weight}),
        ]))
    # dropped rows: wrong language and a multiword lemma
    lines.append("\t".join([
        "/a/[/r/RelatedTo/,/c/ja/atatakai/a/,/c/ja/samui/a/]",
        "/r/RelatedTo", "/c/ja/atatakai/a", "/c/ja/samui/a",
        json.dumps({"weight": 1.0}),
    ]))
    lines.append("\t".join([
        "/a/[/r/RelatedTo/,/c/en/warm_hearted/a/,/c/en/warm/a/]",
        "/r/RelatedTo", "/c/en/warm_hearted/a", "/c/en/warm/a",
        json.dumps({"weight": 1.0}),
    ]))
    return "\n".join(lines) + "\n"


def make_embeddings() -> str:
    lexicon_words = []
    for line in (ASSETS / "demo_lexicon.tsv").read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            lexicon_words.append(line.split("\t")[0])

    vectors: dict[str, np.ndarray] = {}
    for word, axis in AXES.items():
        v = np.zeros(DIM)
        v[axis] = 1.0
        vectors[word] = v
    warm = np.zeros(DIM)
    warm[0] = 0.4
    warm[18] = math.sqrt(1 - 0.4**2)
    vectors["warm"] = warm

    rng = np.random.default_rng(20240817)
    for word in lexicon_words:
        if word in vectors:
            continue
        v = rng.standard_normal(DIM)
        vectors[word] = v / np.linalg.norm(v)

    lines = [f"{len(vectors)} {DIM}"]
    for word, vec in vectors.items():
        lines.append(word + " " + " ".join(f"{x:.6f}" for x in vec))
    return "\n".join(lines) + "\n"


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "graph.tsv").write_text(make_graph(), encoding="utf-8")
    (FIXTURES / "embeddings.txt").write_text(make_embeddings(), encoding="utf-8")
    (FIXTURES / "brief_a.txt").write_text(
        "The owner of this car will be retired, married, a countryside dweller, "
        "and a dog owner. The customer's main requirement is that the car be "
        "economical and spacious. The car should be easy to get in and out of "
        "and easy to load. It should be functional and smart.\n",
        encoding="utf-8",
    )
    (FIXTURES / "brief_b.txt").write_text(
        "Imagine a car for a family with small kids in a suburban community of "
        "2030, where technologies are ubiquitous. Consider three important "
        "aspects of the car: harmony with local charm, fun activities, and "
        "safety.\n",
        encoding="utf-8",
    )
    print("wrote", FIXTURES)


if __name__ == "__main__":
    main()
