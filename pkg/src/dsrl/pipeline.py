"""End-to-end composition: generate, decode, cast, rebuild, score.

Casting back to a corpus is lossy on purpose: arguments that cannot be
aligned to the sentence, whose role cannot be resolved, that collide with
the predicate span, or that are wider than one token under the dependency
formalism are dropped. Nothing is repaired; dropped arguments simply cost
recall downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from dsrl.codec import (
    DecodeIssue,
    DescriptionSequence,
    ParsedStructure,
    decode_description,
)
from dsrl.corpus import (
    AnnotatedStructure,
    Argument,
    Corpus,
    Formalism,
    Sentence,
    iter_with_sentences,
)
from dsrl.errors import ContractError
from dsrl.inventory import Inventory
from dsrl.retrieval import CastResult, Embedder, cast_structure
from dsrl.scorer import SCORERS, ScoreReport


@dataclass(frozen=True)
class PipelineResult:
    sequences: list[DescriptionSequence]
    parsed: list[ParsedStructure]
    issues: list[list[DecodeIssue]]
    predicted: Corpus
    report: ScoreReport


def rebuild_structure(
    gold: AnnotatedStructure,
    sentence: Sentence,
    parsed: ParsedStructure,
    cast: CastResult,
) -> AnnotatedStructure:
    """Build a predicted structure from a parsed description and its cast
    labels, on the gold (pre-identified) predicate."""
    predicate = replace(gold.predicate, sense_label=cast.sense_label)
    arguments: list[Argument] = []
    if cast.role_labels is not None:
        alignment = parsed.alignment or (None,) * len(parsed.arguments)
        for parsed_arg, span, role in zip(parsed.arguments, alignment, cast.role_labels):
            if span is None or role is None:
                continue
            start, end = span
            if gold.formalism is Formalism.DEPENDENCY and start != end:
                continue
            if start <= predicate.end and predicate.start <= end:
                continue
            arguments.append(
                Argument(start=start, end=end, role_label=role, link=parsed_arg.link)
            )
    arguments.sort(key=lambda a: a.start)
    return AnnotatedStructure(
        predicate=predicate,
        arguments=tuple(arguments),
        formalism=gold.formalism,
    )


def cast_corpus(
    gold: Corpus,
    parsed_list: list[ParsedStructure],
    inv: Inventory,
    embedder: Embedder,
) -> Corpus:
    """Cast one parsed description per gold structure into a predicted
    corpus over the same sentences."""
    if len(parsed_list) != len(gold.structures):
        raise ContractError(
            f"{len(parsed_list)} parsed descriptions for {len(gold.structures)} structures"
        )
    structures = []
    for (struct, sent), parsed in zip(iter_with_sentences(gold), parsed_list):
        cast = cast_structure(parsed, struct.predicate.lemma, inv, embedder)
        structures.append(rebuild_structure(struct, sent, parsed, cast))
    return Corpus(gold.sentences, tuple(structures), provenance="predicted")


def decode_sequences(
    gold: Corpus, sequences: list[DescriptionSequence | str]
) -> tuple[list[ParsedStructure], list[list[DecodeIssue]]]:
    """Decode one sequence per gold structure, aligning to its sentence."""
    if len(sequences) != len(gold.structures):
        raise ContractError(
            f"{len(sequences)} sequences for {len(gold.structures)} structures"
        )
    parsed_list = []
    issue_list = []
    for (_, sent), seq in zip(iter_with_sentences(gold), sequences):
        parsed, issues = decode_description(seq, sent)
        parsed_list.append(parsed)
        issue_list.append(issues)
    return parsed_list, issue_list


def run_pipeline(
    gold: Corpus,
    inv: Inventory,
    sequences: list[DescriptionSequence],
    embedder: Embedder,
    scorer_kind: str,
) -> PipelineResult:
    """Decode, cast, and score a list of generated sequences against gold."""
    if scorer_kind not in SCORERS:
        raise ContractError(
            f"unknown scorer {scorer_kind!r}; expected one of {sorted(SCORERS)}"
        )
    parsed_list, issue_list = decode_sequences(gold, list(sequences))
    predicted = cast_corpus(gold, parsed_list, inv, embedder)
    report = SCORERS[scorer_kind](gold, predicted)
    return PipelineResult(
        sequences=list(sequences),
        parsed=parsed_list,
        issues=issue_list,
        predicted=predicted,
        report=report,
    )
