"""Precision/recall/F1 scoring for the three evaluation settings.

Items are exact tuples (sense items and argument items); a prediction is
correct iff its tuple appears in the gold set. Scores are exact rationals
internally and render as percentages with one decimal.

Conventions: precision is 1 when nothing was predicted, recall is 1 when
there is no gold, F1 is 0 when both are 0. Predicates with an absent sense
contribute no sense item. FrameNet scoring is an exact-match approximation
of the official partial-credit scorer: an argument item counts as correct
only if its structure's frame also matches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from dsrl.corpus import (
    AnnotatedStructure,
    Corpus,
    Formalism,
    Style,
    join_role_label,
)
from dsrl.errors import AlignmentError, ContractError

_SENSE = "SENSE"

Item = tuple


@dataclass(frozen=True)
class CategoryCounts:
    correct: int
    predicted: int
    gold: int


@dataclass(frozen=True)
class ScoreReport:
    precision: Fraction
    recall: Fraction
    f1: Fraction
    correct: int
    predicted: int
    gold: int
    breakdown: dict[str, CategoryCounts]

    def to_dict(self) -> dict:
        return {
            "precision": float(self.precision),
            "recall": float(self.recall),
            "f1": float(self.f1),
            "precision_pct": format_percent(self.precision),
            "recall_pct": format_percent(self.recall),
            "f1_pct": format_percent(self.f1),
            "correct": self.correct,
            "predicted": self.predicted,
            "gold": self.gold,
            "breakdown": {
                kind: {"correct": c.correct, "predicted": c.predicted, "gold": c.gold}
                for kind, c in sorted(self.breakdown.items())
            },
        }

    def render_text(self) -> str:
        lines = [
            f"P={format_percent(self.precision)} R={format_percent(self.recall)} "
            f"F1={format_percent(self.f1)} "
            f"(correct={self.correct} predicted={self.predicted} gold={self.gold})"
        ]
        for kind in sorted(self.breakdown):
            c = self.breakdown[kind]
            p, r, f1 = prf(c.correct, c.predicted, c.gold)
            lines.append(
                f"  {kind}: P={format_percent(p)} R={format_percent(r)} "
                f"F1={format_percent(f1)} "
                f"(correct={c.correct} predicted={c.predicted} gold={c.gold})"
            )
        return "\n".join(lines)


def prf(correct: int, predicted: int, gold: int) -> tuple[Fraction, Fraction, Fraction]:
    precision = Fraction(correct, predicted) if predicted else Fraction(1)
    recall = Fraction(correct, gold) if gold else Fraction(1)
    if precision + recall == 0:
        f1 = Fraction(0)
    else:
        f1 = 2 * precision * recall / (precision + recall)
    return precision, recall, f1


def format_percent(value: Fraction) -> str:
    """Render a fraction as a percentage with one decimal, half up."""
    tenths = int(value * 1000 + Fraction(1, 2))
    return f"{tenths // 10}.{tenths % 10}"


def _report(
    gold_sense: set,
    pred_sense: set,
    gold_args: set,
    pred_args: set,
) -> ScoreReport:
    sense = CategoryCounts(
        correct=len(gold_sense & pred_sense),
        predicted=len(pred_sense),
        gold=len(gold_sense),
    )
    args = CategoryCounts(
        correct=len(gold_args & pred_args),
        predicted=len(pred_args),
        gold=len(gold_args),
    )
    correct = sense.correct + args.correct
    predicted = sense.predicted + args.predicted
    gold = sense.gold + args.gold
    precision, recall, f1 = prf(correct, predicted, gold)
    return ScoreReport(
        precision=precision,
        recall=recall,
        f1=f1,
        correct=correct,
        predicted=predicted,
        gold=gold,
        breakdown={"sense": sense, "argument": args},
    )


def _check_alignment(gold: Corpus, pred: Corpus) -> None:
    gold_ids = {s.sentence_id for s in gold.sentences}
    unmatched = sorted(
        {s.sentence_id for s in pred.sentences} - gold_ids
    )
    if unmatched:
        raise AlignmentError(
            f"predicted corpus references sentences absent from gold: {unmatched[:5]}"
        )


def _check_formalism(corpus: Corpus, formalism: Formalism, which: str) -> None:
    for struct in corpus.structures:
        if struct.formalism is not formalism:
            raise ContractError(
                f"{which} corpus contains a {struct.formalism.value} structure; "
                f"expected {formalism.value}"
            )


def _anchor(struct: AnnotatedStructure) -> tuple[str, tuple[int, int]]:
    return (struct.predicate.sentence_ref, struct.predicate.token_range)


def sense_items(corpus: Corpus) -> set[Item]:
    return {
        (*_anchor(s), _SENSE, s.predicate.sense_label)
        for s in corpus.structures
        if s.predicate.sense_label is not None
    }


def dependency_argument_items(corpus: Corpus) -> set[Item]:
    return {
        (*_anchor(s), a.start, join_role_label(a.role_label, a.link))
        for s in corpus.structures
        for a in s.arguments
    }


def span_argument_items(corpus: Corpus) -> set[Item]:
    return {
        (*_anchor(s), a.start, a.end, join_role_label(a.role_label, a.link))
        for s in corpus.structures
        for a in s.arguments
    }


def framenet_argument_items(corpus: Corpus) -> set[Item]:
    # The structure's frame is part of the item: argument credit is gated on
    # the frame matching.
    return {
        (*_anchor(s), a.start, a.end, join_role_label(a.role_label, a.link), s.predicate.sense_label)
        for s in corpus.structures
        for a in s.arguments
    }


def score_dependency(gold: Corpus, pred: Corpus) -> ScoreReport:
    """Labeled scoring over head-indexed argument items plus sense items."""
    _check_formalism(gold, Formalism.DEPENDENCY, "gold")
    _check_formalism(pred, Formalism.DEPENDENCY, "predicted")
    _check_alignment(gold, pred)
    return _report(
        sense_items(gold),
        sense_items(pred),
        dependency_argument_items(gold),
        dependency_argument_items(pred),
    )


def score_span(gold: Corpus, pred: Corpus) -> ScoreReport:
    """Labeled scoring with exact span-boundary match required."""
    _check_formalism(gold, Formalism.SPAN, "gold")
    _check_formalism(pred, Formalism.SPAN, "predicted")
    _check_alignment(gold, pred)
    return _report(
        sense_items(gold),
        sense_items(pred),
        span_argument_items(gold),
        span_argument_items(pred),
    )


def score_framenet(gold: Corpus, pred: Corpus) -> ScoreReport:
    """Full-structure scoring: frame items plus frame-gated argument items."""
    _check_formalism(gold, Formalism.SPAN, "gold")
    _check_formalism(pred, Formalism.SPAN, "predicted")
    for which, corpus in (("gold", gold), ("predicted", pred)):
        for struct in corpus.structures:
            if struct.predicate.style is not Style.FRAMENET:
                raise ContractError(f"{which} corpus contains a non-framenet structure")
    _check_alignment(gold, pred)
    return _report(
        sense_items(gold),
        sense_items(pred),
        framenet_argument_items(gold),
        framenet_argument_items(pred),
    )


SCORERS = {
    "dep": score_dependency,
    "span": score_span,
    "framenet": score_framenet,
}


def default_scorer_kind(corpus: Corpus) -> str:
    """Pick the scorer matching a corpus: dependency corpora score as `dep`,
    framenet-style span corpora as `framenet`, other span corpora as `span`."""
    if any(s.formalism is Formalism.DEPENDENCY for s in corpus.structures):
        return "dep"
    if any(s.predicate.style is Style.FRAMENET for s in corpus.structures):
        return "framenet"
    return "span"


def export_official(corpus: Corpus) -> str:
    """Write a dependency corpus in CoNLL-2009 column format so the official
    scoring scripts can be invoked externally.

    Unknown columns are filled with ``_``; role labels regain their
    ``R-``/``C-`` link prefixes.
    """
    _check_formalism(corpus, Formalism.DEPENDENCY, "exported")
    lines: list[str] = []
    for sent in corpus.sentences:
        structs = sorted(
            corpus.structures_for(sent.sentence_id),
            key=lambda st: (st.predicate.start, st.predicate.end),
        )
        starts = [st.predicate.start for st in structs]
        if len(set(starts)) != len(starts):
            raise ContractError(
                f"sentence {sent.sentence_id!r} has two structures on one predicate token"
            )
        for st in structs:
            if st.predicate.start != st.predicate.end:
                raise ContractError(
                    "CoNLL-2009 export requires single-token predicates, got "
                    f"{st.predicate.start}..{st.predicate.end}"
                )
        for i, token in enumerate(sent.tokens):
            row = [str(i + 1), token] + ["_"] * 12
            for st in structs:
                if st.predicate.start == i:
                    row[3] = st.predicate.lemma
                    row[12] = "Y"
                    row[13] = st.predicate.sense_label or "_"
            for st in structs:
                role = "_"
                for arg in st.arguments:
                    if arg.start == i:
                        role = join_role_label(arg.role_label, arg.link)
                row.append(role)
            lines.append("\t".join(row))
        lines.append("")
    return "".join(line + "\n" for line in lines)
