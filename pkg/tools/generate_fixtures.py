"""Regenerate the fixtures shared between the toolkit and the sidecar.

Writes, under sidecar/fixtures/:
  embedding_parity.jsonl  1000 test strings with their built-in embedder
                          bucket counts (sparse), for cross-implementation
                          equality checks;
  inventory.jsonl         the fixture inventory;
  corpus.jsonl            a gold span-formalism corpus;
  recorded.json           input text -> gold target sequence, for the
                          sidecar's stub-recorded generation mode.

Run from the repository root: python3 tools/generate_fixtures.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from dsrl.codec import encode_input, encode_target
from dsrl.corpus import (
    AnnotatedStructure,
    Argument,
    Corpus,
    Formalism,
    LinkFlag,
    PredicateInstance,
    Sentence,
    iter_with_sentences,
    write_canonical,
)
from dsrl.inventory import CONLL2009_MODIFIERS, CONLL2012_MODIFIERS, load_inventory
from dsrl.retrieval import BUILTIN_DIMENSION, _fnv1a32

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "sidecar" / "fixtures"

INVENTORY_DOC = "\n".join(
    json.dumps(obj, ensure_ascii=False)
    for obj in [
        {"style": "propbank", "modifier_set": "conll2009"},
        {
            "lemma": "give",
            "sense_id": "give.01",
            "definition": "transfer",
            "roles": {"A0": "giver", "A1": "thing given", "A2": "entity given to"},
        },
        {
            "lemma": "attack",
            "sense_id": "attack.01",
            "definition": "assail violently",
            "roles": {"A0": "attacker", "A1": "entity attacked"},
        },
        {
            "lemma": "help",
            "sense_id": "help.01",
            "definition": "aid another",
            "roles": {"A0": "helper", "A1": "entity helped"},
        },
    ]
)


def build_corpus() -> Corpus:
    mary = Sentence(tokens=("Mary", "gave", "the", "book", "to", "John"), sentence_id="mary")
    attacked = Sentence(
        tokens=("It", "was", "during", "this", "year", "that", "the", "Japanese",
                "attacked", "."),
        sentence_id="attacked",
    )
    helped = Sentence(
        tokens=("Japan", ",", "in", "terms", "of", "aid", ",", "it", "could", "have",
                "helped", "."),
        sentence_id="helped",
    )
    structures = (
        AnnotatedStructure(
            predicate=PredicateInstance("mary", 1, 1, "give", "give.01"),
            arguments=(Argument(0, 0, "A0"), Argument(2, 3, "A1"), Argument(4, 5, "A2")),
            formalism=Formalism.SPAN,
        ),
        AnnotatedStructure(
            predicate=PredicateInstance("attacked", 8, 8, "attack", "attack.01"),
            arguments=(
                Argument(2, 4, "AM-TMP"),
                Argument(5, 5, "AM-TMP", link=LinkFlag.REFERENCE_TO),
                Argument(6, 7, "A0"),
            ),
            formalism=Formalism.SPAN,
        ),
        AnnotatedStructure(
            predicate=PredicateInstance("helped", 10, 10, "help", "help.01"),
            arguments=(
                Argument(0, 0, "A0"),
                Argument(2, 5, "AM-ADV"),
                Argument(7, 7, "A0", link=LinkFlag.CONTINUATION_OF),
            ),
            formalism=Formalism.SPAN,
        ),
    )
    return Corpus((mary, attacked, helped), structures, provenance="sidecar-fixture")


def bucket_counts(text: str) -> dict[int, int]:
    normalized = " ".join(text.lower().split())
    counts: dict[int, int] = {}
    if not normalized:
        return counts
    padded = "^" + normalized + "$"
    for i in range(len(padded) - 2):
        bucket = _fnv1a32(padded[i:i + 3].encode("utf-8")) % BUILTIN_DIMENSION
        counts[bucket] = counts.get(bucket, 0) + 1
    return counts


def parity_strings() -> list[str]:
    rng = random.Random(20240)
    strings: list[str] = []
    strings.extend(CONLL2009_MODIFIERS.values())
    strings.extend(CONLL2012_MODIFIERS.values())
    strings.extend(
        [
            "",
            " ",
            "\t\n",
            "a",
            "ab",
            "abc",
            "Time or Duration",
            "time   or duration",
            "Mary gave the book to John",
            "give: transfer. [Mary]{giver} gave [the book]{thing given}",
            "ünïcödé tëxt mit Umlauten",
            "snowman ☃ and beyond \U0001f642",
            "punctuation!? (brackets) [and] {braces} \\ backslash",
            "x" * 300,
        ]
    )
    words = [
        "river", "stone", "light", "meadow", "harbor", "signal", "copper",
        "forest", "window", "garden", "entity", "moving", "quickly", "cause",
        "Zeit", "dauer", "ombre", "lumière", "たべる", "食べる", "мост",
    ]
    while len(strings) < 1000:
        n = rng.randint(1, 8)
        sample = [rng.choice(words) for _ in range(n)]
        if rng.random() < 0.2:
            sample[rng.randrange(n)] = sample[rng.randrange(n)].upper()
        joiner = rng.choice([" ", "  ", " \t "])
        strings.append(joiner.join(sample))
    return strings[:1000]


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    inv = load_inventory(INVENTORY_DOC)
    corpus = build_corpus()

    (FIXTURES / "inventory.jsonl").write_text(INVENTORY_DOC + "\n", encoding="utf-8")
    (FIXTURES / "corpus.jsonl").write_text(write_canonical(corpus), encoding="utf-8")

    recorded = {}
    for struct, sent in iter_with_sentences(corpus):
        key = encode_input(sent, struct.predicate)
        recorded[key] = encode_target(struct, sent, inv).surface
    (FIXTURES / "recorded.json").write_text(
        json.dumps(recorded, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )

    lines = []
    for text in parity_strings():
        counts = bucket_counts(text)
        lines.append(
            json.dumps(
                {"text": text, "counts": [[b, counts[b]] for b in sorted(counts)]},
                ensure_ascii=False,
            )
        )
    (FIXTURES / "embedding_parity.jsonl").write_text(
        "".join(line + "\n" for line in lines), encoding="utf-8"
    )
    print(f"wrote fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()
