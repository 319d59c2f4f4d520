"""Quantitative analyses: sense-frequency partitions, down-sampling, and
partitioned score tables."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from dsrl.corpus import AnnotatedStructure, Corpus
from dsrl.errors import AlignmentError, ContractError
from dsrl.generators import SenseCounts
from dsrl.scorer import SCORERS, CategoryCounts, default_scorer_kind, format_percent, prf


class PartitionTag(str, Enum):
    MFS = "MFS"
    LFS = "LFS"
    UNSEEN = "UNSEEN"


def sense_counts(train: Corpus) -> SenseCounts:
    """Exact occurrence counts per (lemma, sense) over annotated predicates."""
    counts: dict[tuple[str, str], int] = {}
    for struct in train.structures:
        sense = struct.predicate.sense_label
        if sense is None:
            continue
        key = (struct.predicate.lemma.lower(), sense)
        counts[key] = counts.get(key, 0) + 1
    return SenseCounts(counts=counts)


def most_frequent_sense(counts: SenseCounts, lemma: str) -> str | None:
    """The lemma's most frequent training sense; count ties resolve to the
    lexicographically smallest sense id."""
    senses = counts.senses_of(lemma)
    if not senses:
        return None
    return min(senses, key=lambda sense: (-senses[sense], sense))


def partition(
    eval_corpus: Corpus, counts: SenseCounts
) -> dict[AnnotatedStructure, PartitionTag]:
    """Tag every evaluated structure as MFS, LFS, or UNSEEN.

    Tags are exhaustive and mutually exclusive; gold senses must be present.
    """
    tags: dict[AnnotatedStructure, PartitionTag] = {}
    for struct in eval_corpus.structures:
        sense = struct.predicate.sense_label
        if sense is None:
            raise ContractError(
                f"structure for lemma {struct.predicate.lemma!r} has no gold sense"
            )
        lemma = struct.predicate.lemma
        if counts.count(lemma, sense) == 0:
            tags[struct] = PartitionTag.UNSEEN
        elif sense == most_frequent_sense(counts, lemma):
            tags[struct] = PartitionTag.MFS
        else:
            tags[struct] = PartitionTag.LFS
    return tags


def downsample(train: Corpus, fraction: float, seed: int) -> Corpus:
    """Uniformly sample annotated sentences without replacement.

    Deterministic per (fraction, seed); samples nest per seed (the 10% set
    is a subset of the 25% set). Unannotated sentences are always retained,
    so ``fraction=1.0`` is the identity. Sample size is
    ``round(fraction * annotated_count)``.
    """
    if not 0 < fraction <= 1:
        raise ContractError(f"fraction must be in (0, 1], got {fraction}")
    annotated = [
        s.sentence_id for s in train.sentences
        if s.sentence_id in train.annotated_sentence_ids
    ]
    order = list(annotated)
    random.Random(seed).shuffle(order)
    chosen = set(order[: round(fraction * len(annotated))])
    sentences = tuple(
        s for s in train.sentences
        if s.sentence_id in chosen or s.sentence_id not in train.annotated_sentence_ids
    )
    structures = tuple(
        st for st in train.structures if st.predicate.sentence_ref in chosen
    )
    return Corpus(sentences, structures, provenance=train.provenance)


@dataclass(frozen=True)
class PartitionCell:
    f1: Fraction
    support: int
    share: Fraction | None  # of the kind's total support; None for the ALL row

    def to_dict(self) -> dict:
        return {
            "f1": float(self.f1),
            "f1_pct": format_percent(self.f1),
            "support": self.support,
            "share_pct": None if self.share is None else format_percent(self.share),
        }


PARTITION_ROWS = ("ALL", PartitionTag.MFS.value, PartitionTag.LFS.value, PartitionTag.UNSEEN.value)
PARTITION_KINDS = ("sense", "argument")


@dataclass(frozen=True)
class PartitionTable:
    """F1 and support per (partition, item kind), plus the ALL row."""

    cells: dict[tuple[str, str], PartitionCell]

    def to_records(self) -> list[dict]:
        records = []
        for row in PARTITION_ROWS:
            for kind in PARTITION_KINDS:
                cell = self.cells[(row, kind)]
                records.append({"partition": row, "kind": kind, **cell.to_dict()})
        return records

    def render_text(self) -> str:
        header = f"{'partition':<10}{'kind':<10}{'F1':>7}{'support':>9}{'share':>8}"
        lines = [header]
        for record in self.to_records():
            share = record["share_pct"]
            lines.append(
                f"{record['partition']:<10}{record['kind']:<10}"
                f"{record['f1_pct']:>7}{record['support']:>9}"
                f"{(share + '%') if share is not None else '':>8}"
            )
        return "\n".join(lines)


def partitioned_scores(
    gold: Corpus,
    pred: Corpus,
    counts: SenseCounts,
    scorer_kind: str | None = None,
) -> PartitionTable:
    """Run the scorer restricted to each partition separately.

    Predicted structures are assigned the partition of the gold structure at
    the same (sentence, predicate range); a predicted structure with no gold
    counterpart cannot be tagged and is an alignment error.
    """
    kind = scorer_kind or default_scorer_kind(gold)
    if kind not in SCORERS:
        raise ContractError(f"unknown scorer {kind!r}; expected one of {sorted(SCORERS)}")
    scorer = SCORERS[kind]
    tags = partition(gold, counts)
    anchor_tags: dict[tuple[str, tuple[int, int]], PartitionTag] = {
        (st.predicate.sentence_ref, st.predicate.token_range): tag
        for st, tag in tags.items()
    }

    def tag_of(struct: AnnotatedStructure) -> PartitionTag:
        key = (struct.predicate.sentence_ref, struct.predicate.token_range)
        tag = anchor_tags.get(key)
        if tag is None:
            raise AlignmentError(
                f"predicted structure at {key!r} has no gold counterpart to partition by"
            )
        return tag

    cells: dict[tuple[str, str], PartitionCell] = {}
    reports = {"ALL": scorer(gold, pred)}
    for tag in PartitionTag:
        sub_gold = Corpus(
            gold.sentences,
            tuple(st for st in gold.structures if tags[st] is tag),
            provenance=gold.provenance,
        )
        sub_pred = Corpus(
            pred.sentences,
            tuple(st for st in pred.structures if tag_of(st) is tag),
            provenance=pred.provenance,
        )
        reports[tag.value] = scorer(sub_gold, sub_pred)

    totals = {
        pkind: reports["ALL"].breakdown[pkind].gold for pkind in PARTITION_KINDS
    }
    for row, report in reports.items():
        for pkind in PARTITION_KINDS:
            c: CategoryCounts = report.breakdown[pkind]
            _, _, f1 = prf(c.correct, c.predicted, c.gold)
            share = None
            if row != "ALL":
                total = totals[pkind]
                share = Fraction(c.gold, total) if total else Fraction(0)
            cells[(row, pkind)] = PartitionCell(f1=f1, support=c.gold, share=share)
    return PartitionTable(cells=cells)
