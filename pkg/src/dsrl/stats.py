"""Corpus statistics: sentence/predicate/argument counts, sequence lengths,
and definition-table summaries."""

from __future__ import annotations

from dataclasses import dataclass

from dsrl.codec import encode_target
from dsrl.corpus import Corpus, dependency_to_span, iter_with_sentences, join_role_label
from dsrl.errors import DefinitionLookupError
from dsrl.inventory import Inventory


@dataclass(frozen=True)
class StatsReport:
    total_sentences: int
    annotated_sentences: int
    avg_sentence_tokens: float | None
    total_predicates: int
    distinct_senses: int
    total_arguments: int
    distinct_roles: int
    encoded_targets: int
    avg_target_chars: float | None
    distinct_sense_definitions: int
    avg_sense_definition_chars: float | None
    distinct_role_definitions: int
    avg_role_definition_chars: float | None

    def to_dict(self) -> dict:
        return {
            "total_sentences": self.total_sentences,
            "annotated_sentences": self.annotated_sentences,
            "avg_sentence_tokens": self.avg_sentence_tokens,
            "total_predicates": self.total_predicates,
            "distinct_senses": self.distinct_senses,
            "total_arguments": self.total_arguments,
            "distinct_roles": self.distinct_roles,
            "encoded_targets": self.encoded_targets,
            "avg_target_chars": self.avg_target_chars,
            "distinct_sense_definitions": self.distinct_sense_definitions,
            "avg_sense_definition_chars": self.avg_sense_definition_chars,
            "distinct_role_definitions": self.distinct_role_definitions,
            "avg_role_definition_chars": self.avg_role_definition_chars,
        }

    def render_text(self) -> str:
        def fmt(value: float | None) -> str:
            return "-" if value is None else f"{value:.1f}"

        return "\n".join(
            [
                f"sentences: total={self.total_sentences} "
                f"annotated={self.annotated_sentences} "
                f"avg_tokens={fmt(self.avg_sentence_tokens)}",
                f"predicates: total={self.total_predicates} senses={self.distinct_senses}",
                f"arguments: total={self.total_arguments} roles={self.distinct_roles}",
                f"targets: encoded={self.encoded_targets} "
                f"avg_chars={fmt(self.avg_target_chars)}",
                f"sense definitions: distinct={self.distinct_sense_definitions} "
                f"avg_chars={fmt(self.avg_sense_definition_chars)}",
                f"role definitions: distinct={self.distinct_role_definitions} "
                f"avg_chars={fmt(self.avg_role_definition_chars)}",
            ]
        )


def _avg(values: list[int]) -> float | None:
    return sum(values) / len(values) if values else None


def corpus_stats(corpus: Corpus, inv: Inventory) -> StatsReport:
    """Summarize a corpus; definition and target-length statistics consult
    the inventory. Structures whose labels do not resolve are skipped for
    the encoded-target average."""
    senses: set[str] = set()
    surface_roles: set[str] = set()
    sense_definitions: set[str] = set()
    role_definitions: set[str] = set()
    target_lengths: list[int] = []
    total_arguments = 0

    for struct, sent in iter_with_sentences(corpus):
        pred = struct.predicate
        if pred.sense_label is not None:
            senses.add(pred.sense_label)
        entry = None
        if pred.sense_label is not None:
            entry = inv.entry(pred.lemma, pred.sense_label)
        if entry is not None:
            sense_definitions.add(entry.definition)
        for arg in struct.arguments:
            total_arguments += 1
            surface_roles.add(join_role_label(arg.role_label, arg.link))
            if entry is not None:
                definition = inv.role_definition(entry, arg.role_label)
                if definition is not None:
                    role_definitions.add(definition)
        try:
            seq = encode_target(dependency_to_span(struct), sent, inv)
        except DefinitionLookupError:
            continue
        target_lengths.append(len(seq.surface))

    token_counts = [len(s) for s in corpus.sentences]
    return StatsReport(
        total_sentences=len(corpus.sentences),
        annotated_sentences=len(corpus.annotated_sentence_ids),
        avg_sentence_tokens=_avg(token_counts),
        total_predicates=len(corpus.structures),
        distinct_senses=len(senses),
        total_arguments=total_arguments,
        distinct_roles=len(surface_roles),
        encoded_targets=len(target_lengths),
        avg_target_chars=_avg(target_lengths),
        distinct_sense_definitions=len(sense_definitions),
        avg_sense_definition_chars=_avg([len(d) for d in sense_definitions]),
        distinct_role_definitions=len(role_definitions),
        avg_role_definition_chars=_avg([len(d) for d in role_definitions]),
    )
