"""Domain types for SRL-annotated sentences and corpus readers/writers.

All types are immutable after construction and validate their invariants in
``__post_init__``; no construction path can yield an invariant-violating
value. Token ranges are 0-based inclusive everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from dsrl.errors import FormatError, ValidationError
from dsrl.tokens import RESERVED_MARKERS


class Style(str, Enum):
    PROPBANK = "propbank"
    FRAMENET = "framenet"


class Formalism(str, Enum):
    DEPENDENCY = "dependency"
    SPAN = "span"


class LinkFlag(str, Enum):
    NONE = "none"
    REFERENCE_TO = "reference_to"
    CONTINUATION_OF = "continuation_of"


@dataclass(frozen=True)
class Sentence:
    """A tokenized sentence. Tokens are never re-tokenized; joining them with
    single spaces reconstructs the surface text."""

    tokens: tuple[str, ...]
    sentence_id: str
    doc_id: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise ValidationError(f"sentence {self.sentence_id!r} has no tokens")
        for i, tok in enumerate(self.tokens):
            if not tok:
                raise ValidationError(f"sentence {self.sentence_id!r}: token {i} is empty")
            if any(ch.isspace() for ch in tok):
                raise ValidationError(
                    f"sentence {self.sentence_id!r}: token {i} ({tok!r}) contains whitespace"
                )
            for marker in RESERVED_MARKERS:
                if marker in tok:
                    raise ValidationError(
                        f"sentence {self.sentence_id!r}: token {i} ({tok!r}) "
                        f"contains reserved marker {marker!r}"
                    )

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class PredicateInstance:
    """A predicate occurrence: an inclusive token range in one sentence.

    ``end >= start`` admits multiword predicates. The range is checked
    against the sentence length wherever the sentence is in scope
    (``Corpus`` construction, encoding).
    """

    sentence_ref: str
    start: int
    end: int
    lemma: str
    sense_label: str | None = None
    style: Style = Style.PROPBANK

    def __post_init__(self) -> None:
        if not (0 <= self.start <= self.end):
            raise ValidationError(
                f"predicate range {self.start}..{self.end} is not a valid inclusive range"
            )
        if not self.lemma:
            raise ValidationError("predicate lemma is empty")

    @property
    def token_range(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class Argument:
    """One argument of a predicate: an inclusive token span with a role label.

    In the dependency formalism the span is a single head token
    (``start == end``).
    """

    start: int
    end: int
    role_label: str
    link: LinkFlag = LinkFlag.NONE

    def __post_init__(self) -> None:
        if not (0 <= self.start <= self.end):
            raise ValidationError(
                f"argument span {self.start}..{self.end} is not a valid inclusive range"
            )
        if not self.role_label:
            raise ValidationError("argument role label is empty")


@dataclass(frozen=True)
class AnnotatedStructure:
    """One predicate plus its labeled arguments (the unit of annotation)."""

    predicate: PredicateInstance
    arguments: tuple[Argument, ...]
    formalism: Formalism

    def __post_init__(self) -> None:
        object.__setattr__(self, "arguments", tuple(self.arguments))
        prev: Argument | None = None
        for arg in self.arguments:
            if self.formalism is Formalism.DEPENDENCY and arg.start != arg.end:
                raise ValidationError(
                    f"dependency argument must be a single head token, got {arg.start}..{arg.end}"
                )
            if prev is not None and arg.start <= prev.end:
                raise ValidationError(
                    f"argument spans {prev.start}..{prev.end} and {arg.start}..{arg.end} "
                    f"must be sorted by start and pairwise non-overlapping"
                )
            if arg.start <= self.predicate.end and self.predicate.start <= arg.end:
                raise ValidationError(
                    f"argument span {arg.start}..{arg.end} overlaps predicate range "
                    f"{self.predicate.start}..{self.predicate.end}"
                )
            prev = arg


@dataclass(frozen=True)
class Corpus:
    """Sentences plus their annotated structures.

    ``provenance`` is descriptive metadata and excluded from equality; the
    canonical interchange format does not carry it.
    """

    sentences: tuple[Sentence, ...]
    structures: tuple[AnnotatedStructure, ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(self, "structures", tuple(self.structures))
        by_id: dict[str, Sentence] = {}
        for sent in self.sentences:
            if sent.sentence_id in by_id:
                raise ValidationError(f"duplicate sentence id {sent.sentence_id!r}")
            by_id[sent.sentence_id] = sent
        for struct in self.structures:
            sent = by_id.get(struct.predicate.sentence_ref)
            if sent is None:
                raise ValidationError(
                    f"structure references unknown sentence {struct.predicate.sentence_ref!r}"
                )
            if struct.predicate.end >= len(sent):
                raise ValidationError(
                    f"predicate range {struct.predicate.start}..{struct.predicate.end} "
                    f"exceeds sentence {sent.sentence_id!r} of length {len(sent)}"
                )
            for arg in struct.arguments:
                if arg.end >= len(sent):
                    raise ValidationError(
                        f"argument span {arg.start}..{arg.end} exceeds sentence "
                        f"{sent.sentence_id!r} of length {len(sent)}"
                    )
        object.__setattr__(self, "_by_id", by_id)

    def sentence(self, sentence_id: str) -> Sentence:
        return self._by_id[sentence_id]  # type: ignore[attr-defined]

    def structures_for(self, sentence_id: str) -> tuple[AnnotatedStructure, ...]:
        return tuple(
            s for s in self.structures if s.predicate.sentence_ref == sentence_id
        )

    @property
    def annotated_sentence_ids(self) -> set[str]:
        return {s.predicate.sentence_ref for s in self.structures}


# --- CoNLL-2009 reader ------------------------------------------------------

# 0-based column indices of the CoNLL-2009 shared-task layout. The syntactic
# columns (HEAD, DEPREL, ...) are parsed but discarded.
_COL_FORM = 1
_COL_PLEMMA = 3
_COL_FILLPRED = 12
_COL_PRED = 13
_COL_APRED_START = 14
_NULL = "_"


def split_role_label(raw_role: str) -> tuple[str, LinkFlag]:
    if raw_role.startswith("R-") and len(raw_role) > 2:
        return raw_role[2:], LinkFlag.REFERENCE_TO
    if raw_role.startswith("C-") and len(raw_role) > 2:
        return raw_role[2:], LinkFlag.CONTINUATION_OF
    return raw_role, LinkFlag.NONE


def join_role_label(role_label: str, link: LinkFlag) -> str:
    if link is LinkFlag.REFERENCE_TO:
        return "R-" + role_label
    if link is LinkFlag.CONTINUATION_OF:
        return "C-" + role_label
    return role_label


def parse_conll2009(text: str) -> Corpus:
    """Parse a CoNLL-2009 column document into a dependency-formalism corpus.

    One structure is created per token whose FILLPRED column is ``Y``;
    ``R-``/``C-`` role prefixes become link flags on the arguments.
    """
    sentences: list[Sentence] = []
    structures: list[AnnotatedStructure] = []
    block: list[tuple[int, list[str]]] = []

    def flush() -> None:
        if not block:
            return
        index = len(sentences)
        width = len(block[0][1])
        if width < _COL_APRED_START:
            raise FormatError(
                f"line {block[0][0]}: expected at least {_COL_APRED_START} columns, got {width}"
            )
        for lineno, row in block:
            if len(row) != width:
                raise FormatError(
                    f"line {lineno}: ragged row ({len(row)} columns, expected {width})"
                )
        sent = Sentence(
            tokens=tuple(row[_COL_FORM] for _, row in block),
            sentence_id=f"s{index}",
        )
        pred_rows = [i for i, (_, row) in enumerate(block) if row[_COL_FILLPRED] == "Y"]
        apred_count = width - _COL_APRED_START
        if apred_count != len(pred_rows):
            raise FormatError(
                f"line {block[0][0]}: {apred_count} APRED columns for "
                f"{len(pred_rows)} predicates"
            )
        for pred_no, tok_idx in enumerate(pred_rows):
            row = block[tok_idx][1]
            pred_label = row[_COL_PRED]
            predicate = PredicateInstance(
                sentence_ref=sent.sentence_id,
                start=tok_idx,
                end=tok_idx,
                lemma=row[_COL_PLEMMA],
                sense_label=None if pred_label == _NULL else pred_label,
                style=Style.PROPBANK,
            )
            args = []
            for i, (_, arg_row) in enumerate(block):
                raw = arg_row[_COL_APRED_START + pred_no]
                if raw == _NULL:
                    continue
                role, link = split_role_label(raw)
                args.append(Argument(start=i, end=i, role_label=role, link=link))
            structures.append(
                AnnotatedStructure(
                    predicate=predicate,
                    arguments=tuple(args),
                    formalism=Formalism.DEPENDENCY,
                )
            )
        sentences.append(sent)
        block.clear()

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            flush()
            continue
        block.append((lineno, line.split("\t")))
    flush()
    return Corpus(tuple(sentences), tuple(structures), provenance="conll2009")


# --- Canonical interchange format -------------------------------------------


def _structure_to_record(struct: AnnotatedStructure) -> dict:
    return {
        "predicate": {
            "start": struct.predicate.start,
            "end": struct.predicate.end,
            "lemma": struct.predicate.lemma,
            "sense": struct.predicate.sense_label,
            "style": struct.predicate.style.value,
        },
        "formalism": struct.formalism.value,
        "arguments": [
            {"start": a.start, "end": a.end, "role": a.role_label, "link": a.link.value}
            for a in struct.arguments
        ],
    }


def _structure_from_record(obj: dict, sentence_ref: str, where: str) -> AnnotatedStructure:
    try:
        pred = obj["predicate"]
        predicate = PredicateInstance(
            sentence_ref=sentence_ref,
            start=pred["start"],
            end=pred["end"],
            lemma=pred["lemma"],
            sense_label=pred.get("sense"),
            style=Style(pred["style"]),
        )
        arguments = tuple(
            Argument(
                start=a["start"],
                end=a["end"],
                role_label=a["role"],
                link=LinkFlag(a.get("link", "none")),
            )
            for a in obj.get("arguments", ())
        )
        formalism = Formalism(obj["formalism"])
    except ValidationError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{where}: malformed structure object ({exc})") from exc
    return AnnotatedStructure(predicate=predicate, arguments=arguments, formalism=formalism)


def parse_canonical(text: str, provenance: str = "canonical") -> Corpus:
    """Parse the record-per-line canonical corpus format.

    Validation failures are reported with the 1-based record index.
    """
    sentences: list[Sentence] = []
    structures: list[AnnotatedStructure] = []
    for recno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"record {recno}: invalid JSON ({exc})") from exc
        if not isinstance(obj, dict):
            raise FormatError(f"record {recno}: expected an object")
        try:
            sent = Sentence(
                tokens=tuple(obj["tokens"]),
                sentence_id=obj["sentence_id"],
                doc_id=obj.get("doc_id"),
            )
        except ValidationError as exc:
            raise ValidationError(f"record {recno}: {exc}") from exc
        except (KeyError, TypeError) as exc:
            raise FormatError(f"record {recno}: malformed sentence ({exc})") from exc
        sentences.append(sent)
        for obj_struct in obj.get("structures", ()):
            try:
                structures.append(
                    _structure_from_record(obj_struct, sent.sentence_id, f"record {recno}")
                )
            except ValidationError as exc:
                raise ValidationError(f"record {recno}: {exc}") from exc
    try:
        return Corpus(tuple(sentences), tuple(structures), provenance=provenance)
    except ValidationError as exc:
        raise ValidationError(f"canonical document: {exc}") from exc


def write_canonical(corpus: Corpus) -> str:
    """Serialize a corpus to the canonical format.

    Output is deterministic: records sorted by (doc_id, sentence_id,
    predicate start), byte-identical across runs.
    """
    ordered = sorted(corpus.sentences, key=lambda s: (s.doc_id or "", s.sentence_id))
    lines = []
    for sent in ordered:
        structs = sorted(
            corpus.structures_for(sent.sentence_id),
            key=lambda st: (st.predicate.start, st.predicate.end),
        )
        record = {
            "doc_id": sent.doc_id,
            "sentence_id": sent.sentence_id,
            "tokens": list(sent.tokens),
            "structures": [_structure_to_record(st) for st in structs],
        }
        lines.append(json.dumps(record, ensure_ascii=False, separators=(",", ":")))
    return "".join(line + "\n" for line in lines)


def dependency_to_span(structure: AnnotatedStructure) -> AnnotatedStructure:
    """View a dependency annotation as a span annotation.

    Head tokens become width-1 spans; idempotent on span input. Argument
    count, order, role labels, and link flags are preserved.
    """
    if structure.formalism is Formalism.SPAN:
        return structure
    return AnnotatedStructure(
        predicate=structure.predicate,
        arguments=structure.arguments,
        formalism=Formalism.SPAN,
    )


def iter_with_sentences(corpus: Corpus) -> Iterable[tuple[AnnotatedStructure, Sentence]]:
    """Yield each structure with its resolved sentence, in corpus order."""
    for struct in corpus.structures:
        yield struct, corpus.sentence(struct.predicate.sentence_ref)
