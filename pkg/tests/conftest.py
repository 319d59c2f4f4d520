from __future__ import annotations

import json

import pytest

from dsrl.corpus import (
    AnnotatedStructure,
    Argument,
    Corpus,
    Formalism,
    LinkFlag,
    PredicateInstance,
    Sentence,
    Style,
)
from dsrl.inventory import load_inventory

PB_INVENTORY_DOC = "\n".join(
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
            "lemma": "give",
            "sense_id": "give.02",
            "definition": "yield or produce",
            "roles": {"A0": "producer", "A1": "thing produced"},
        },
        {
            "lemma": "run",
            "sense_id": "run.01",
            "definition": "move quickly",
            "roles": {"A0": "runner"},
        },
        {
            "lemma": "write",
            "sense_id": "write.01",
            "definition": "put thoughts on paper",
            "roles": {"A0": "writer", "A1": "thing written"},
        },
        {
            "lemma": "record",
            "sense_id": "record.01",
            "definition": "set down for preservation",
            "roles": {"A1": "thing recorded"},
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

FN_INVENTORY_DOC = "\n".join(
    json.dumps(obj, ensure_ascii=False)
    for obj in [
        {"style": "framenet"},
        {
            "lemma": "hand",
            "sense_id": "Giving",
            "definition": "a donor transfers a theme to a recipient",
            "roles": {
                "Donor": "person who begins in possession of the theme",
                "Theme": "object that changes ownership",
                "Recipient": "person who ends up holding the theme",
            },
        },
        {
            "lemma": "hand",
            "sense_id": "Body_parts",
            "definition": "a part of the body of a person",
            "roles": {"Possessor": "person whose body part is mentioned"},
        },
        {
            "lemma": "eat",
            "sense_id": "Ingestion",
            "definition": "an ingestor consumes food or drink",
            "roles": {
                "Ingestor": "being that consumes the ingestible",
                "Ingestible": "substance that is taken in",
            },
        },
    ]
)


@pytest.fixture(scope="session")
def pb_inventory():
    return load_inventory(PB_INVENTORY_DOC)


@pytest.fixture(scope="session")
def fn_inventory():
    return load_inventory(FN_INVENTORY_DOC)


def _mary_sentence() -> Sentence:
    return Sentence(
        tokens=("Mary", "gave", "the", "book", "to", "John"), sentence_id="mary"
    )


@pytest.fixture(scope="session")
def mary_corpus() -> Corpus:
    """The transfer example with three span arguments."""
    sent = _mary_sentence()
    struct = AnnotatedStructure(
        predicate=PredicateInstance(
            sentence_ref="mary", start=1, end=1, lemma="give", sense_label="give.01"
        ),
        arguments=(
            Argument(0, 0, "A0"),
            Argument(2, 3, "A1"),
            Argument(4, 5, "A2"),
        ),
        formalism=Formalism.SPAN,
    )
    return Corpus((sent,), (struct,), provenance="fixture")


@pytest.fixture(scope="session")
def dep_corpus() -> Corpus:
    """Dependency-formalism fixture with a reference link and a modifier."""
    wrote = Sentence(
        tokens=("Not", "all", "those", "who", "wrote", "oppose", "the", "changes", "."),
        sentence_id="wrote",
    )
    record = Sentence(
        tokens=("A", "record", "date", "has", "not", "been", "set", "."),
        sentence_id="record",
    )
    structures = (
        AnnotatedStructure(
            predicate=PredicateInstance(
                sentence_ref="wrote", start=4, end=4, lemma="write", sense_label="write.01"
            ),
            arguments=(
                Argument(2, 2, "A0"),
                Argument(3, 3, "A0", link=LinkFlag.REFERENCE_TO),
            ),
            formalism=Formalism.DEPENDENCY,
        ),
        AnnotatedStructure(
            predicate=PredicateInstance(
                sentence_ref="record", start=1, end=1, lemma="record", sense_label="record.01"
            ),
            arguments=(
                Argument(2, 2, "A1"),
                Argument(4, 4, "AM-NEG"),
            ),
            formalism=Formalism.DEPENDENCY,
        ),
    )
    return Corpus((wrote, record), structures, provenance="fixture")


@pytest.fixture(scope="session")
def linked_span_corpus() -> Corpus:
    """Span fixture exercising reference and continuation links."""
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
            predicate=PredicateInstance(
                sentence_ref="attacked", start=8, end=8, lemma="attack",
                sense_label="attack.01",
            ),
            arguments=(
                Argument(2, 4, "AM-TMP"),
                Argument(5, 5, "AM-TMP", link=LinkFlag.REFERENCE_TO),
                Argument(6, 7, "A0"),
            ),
            formalism=Formalism.SPAN,
        ),
        AnnotatedStructure(
            predicate=PredicateInstance(
                sentence_ref="helped", start=10, end=10, lemma="help",
                sense_label="help.01",
            ),
            arguments=(
                Argument(0, 0, "A0"),
                Argument(2, 5, "AM-ADV"),
                Argument(7, 7, "A0", link=LinkFlag.CONTINUATION_OF),
            ),
            formalism=Formalism.SPAN,
        ),
    )
    return Corpus((attacked, helped), structures, provenance="fixture")


@pytest.fixture(scope="session")
def framenet_corpus() -> Corpus:
    sent = Sentence(
        tokens=("Mary", "handed", "the", "keys", "to", "John", "."),
        sentence_id="handed",
    )
    struct = AnnotatedStructure(
        predicate=PredicateInstance(
            sentence_ref="handed", start=1, end=1, lemma="hand", sense_label="Giving",
            style=Style.FRAMENET,
        ),
        arguments=(
            Argument(0, 0, "Donor"),
            Argument(2, 3, "Theme"),
            Argument(4, 5, "Recipient"),
        ),
        formalism=Formalism.SPAN,
    )
    return Corpus((sent,), (struct,), provenance="fixture")


@pytest.fixture(scope="session")
def fixture_suites(mary_corpus, dep_corpus, linked_span_corpus, framenet_corpus,
                   pb_inventory, fn_inventory):
    """(name, corpus, inventory, scorer kind) for every bundled fixture."""
    return [
        ("mary", mary_corpus, pb_inventory, "span"),
        ("dep", dep_corpus, pb_inventory, "dep"),
        ("linked", linked_span_corpus, pb_inventory, "span"),
        ("framenet", framenet_corpus, fn_inventory, "framenet"),
    ]
