"""Description-sequence producers: gold oracle, MFS baseline, remote model.

The gold oracle and the most-frequent-sense baseline let the full pipeline
run and be tested without any neural model; the remote generator talks to a
model server over ``POST /generate``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import httpx

from dsrl.codec import DescriptionSequence, StylePrefix, encode_target, escape
from dsrl.corpus import (
    Corpus,
    Formalism,
    PredicateInstance,
    Sentence,
    dependency_to_span,
    iter_with_sentences,
)
from dsrl.errors import BackendError, ContractError, ProtocolError, ValidationError
from dsrl.inventory import Inventory

UNKNOWN_SENSE_DEFINITION = "unknown"

_WIRE_FORMALISM = {Formalism.DEPENDENCY: "dep-srl", Formalism.SPAN: "span-srl"}


@dataclass(frozen=True)
class SenseCounts:
    """Occurrence counts per (case-folded lemma, sense id), from training data."""

    counts: dict[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, count in self.counts.items():
            if count < 1:
                raise ValidationError(f"count for {key!r} must be >= 1, got {count}")

    def count(self, lemma: str, sense_id: str) -> int:
        return self.counts.get((lemma.lower(), sense_id), 0)

    def senses_of(self, lemma: str) -> dict[str, int]:
        key = lemma.lower()
        return {sense: n for (lem, sense), n in self.counts.items() if lem == key}


def gold_oracle_generate(
    corpus: Corpus, inv: Inventory, prefix: StylePrefix | None = None
) -> list[DescriptionSequence]:
    """Encode every structure of the corpus, in corpus order."""
    return [
        encode_target(dependency_to_span(struct), sent, inv, prefix)
        for struct, sent in iter_with_sentences(corpus)
    ]


def mfs_baseline_generate(
    sentence: Sentence,
    pred: PredicateInstance,
    counts: SenseCounts,
    inv: Inventory,
) -> DescriptionSequence:
    """Emit a header with the most frequent training sense's definition and
    the unannotated sentence, with no arguments.

    A lemma unseen in training falls back to the lexicographically smallest
    inventory sense; an out-of-inventory lemma gets the sentinel header
    ``"lemma: unknown."``.
    """
    candidates = inv.candidate_senses(pred.lemma)
    if not candidates:
        definition = UNKNOWN_SENSE_DEFINITION
    else:
        best = None
        best_count = 0
        for entry in candidates:  # sorted by sense_id: ties keep the smallest
            n = counts.count(pred.lemma, entry.sense_id)
            if n > best_count:
                best, best_count = entry, n
        chosen = best if best is not None else candidates[0]
        definition = chosen.definition
    body = " ".join(escape(tok) for tok in sentence.tokens)
    surface = escape(pred.lemma) + ": " + escape(definition) + ". " + body
    return DescriptionSequence(surface=surface)


class RemoteGenerator:
    """Client for the ``POST /generate`` wire protocol.

    Outputs are order-preserving, one per input, and are passed verbatim to
    the decoder. Transport failures raise ``BackendError`` naming the failing
    batch indices; count mismatches and empty outputs raise ``ProtocolError``.
    """

    def __init__(
        self,
        endpoint: str,
        client: httpx.Client | None = None,
        batch_size: int = 32,
    ) -> None:
        if batch_size < 1:
            raise ContractError("batch_size must be >= 1")
        self._endpoint = endpoint.rstrip("/")
        self._client = client or httpx.Client(timeout=120.0)
        self._batch_size = batch_size

    def generate(
        self, inputs: list[str], prefix: StylePrefix | None = None
    ) -> list[DescriptionSequence]:
        wire_prefix = None
        if prefix is not None:
            wire_prefix = {
                "inventory": prefix.inventory.value,
                "formalism": _WIRE_FORMALISM[prefix.formalism],
            }
        outputs: list[DescriptionSequence] = []
        for start in range(0, len(inputs), self._batch_size):
            chunk = inputs[start:start + self._batch_size]
            window = f"{start}..{start + len(chunk) - 1}"
            try:
                response = self._client.post(
                    f"{self._endpoint}/generate",
                    json={"inputs": chunk, "prefix": wire_prefix},
                )
            except httpx.HTTPError as exc:
                raise BackendError(
                    f"generation request failed for inputs {window}: {exc}"
                ) from exc
            if response.status_code != 200:
                raise BackendError(
                    f"generation backend returned HTTP {response.status_code} "
                    f"for inputs {window}"
                )
            try:
                rows = response.json()["outputs"]
            except (ValueError, KeyError, TypeError) as exc:
                raise ProtocolError(f"malformed generation response: {exc}") from exc
            if len(rows) != len(chunk):
                raise ProtocolError(
                    f"expected {len(chunk)} outputs, got {len(rows)} for inputs {window}"
                )
            for i, row in enumerate(rows):
                if not isinstance(row, str) or not row:
                    raise ProtocolError(
                        f"generation output {start + i} is not a non-empty string"
                    )
                outputs.append(DescriptionSequence(surface=row))
        return outputs


def remote_generate(
    endpoint: str, inputs: list[str], prefix: StylePrefix | None = None
) -> list[DescriptionSequence]:
    return RemoteGenerator(endpoint).generate(inputs, prefix)
