"""Casting generated definitions back to inventory labels by similarity.

The built-in embedder is a hashed character-trigram bag, chosen so that its
behavior is deterministic across runs, platforms, and implementations:

* lowercase the text, collapse whitespace runs to single spaces, strip;
* pad with ``^`` and ``$`` boundary marks;
* hash each UTF-8 trigram with FNV-1a 32-bit (offset 2166136261, prime
  16777619) into one of 4096 buckets, counting occurrences;
* L2-normalize; empty text maps to the all-zero sentinel vector.

Remote embedders speak ``POST /embed`` with ``{"texts": [...]}`` and answer
``{"dimension": n, "vectors": [[...]]}`` (unit-normalized rows).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt
from typing import Mapping

import httpx

from dsrl.codec import ParsedStructure
from dsrl.errors import BackendError, ContractError, ProtocolError, ValidationError
from dsrl.inventory import Inventory

BUILTIN_DIMENSION = 4096
_FNV_OFFSET = 2166136261
_FNV_PRIME = 16777619
_NORM_TOLERANCE = 1e-6


def _fnv1a32(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & 0xFFFFFFFF
    return h


@dataclass(frozen=True)
class EmbeddingVector:
    """A unit-norm vector, or the all-zero sentinel for empty text."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        norm_sq = sum(v * v for v in self.values)
        is_zero = norm_sq == 0.0
        if not is_zero and abs(sqrt(norm_sq) - 1.0) > _NORM_TOLERANCE:
            raise ValidationError(f"vector norm {sqrt(norm_sq)!r} is neither 1 nor 0")
        object.__setattr__(self, "is_zero", is_zero)

    @property
    def dimension(self) -> int:
        return len(self.values)


@lru_cache(maxsize=65536)
def embed_builtin(text: str) -> EmbeddingVector:
    """Embed text with the hashed character-trigram scheme described above."""
    normalized = " ".join(text.lower().split())
    if not normalized:
        return EmbeddingVector(values=(0.0,) * BUILTIN_DIMENSION)
    padded = "^" + normalized + "$"
    buckets = [0.0] * BUILTIN_DIMENSION
    for i in range(len(padded) - 2):
        gram = padded[i:i + 3]
        buckets[_fnv1a32(gram.encode("utf-8")) % BUILTIN_DIMENSION] += 1.0
    norm = sqrt(sum(v * v for v in buckets))
    return EmbeddingVector(values=tuple(v / norm for v in buckets))


def cosine(u: EmbeddingVector, v: EmbeddingVector) -> float:
    """Cosine similarity of two unit vectors; 0 when either is the zero
    sentinel; exactly 1 for equal non-sentinel vectors."""
    if u.dimension != v.dimension:
        raise ContractError(f"dimension mismatch: {u.dimension} vs {v.dimension}")
    if u.is_zero or v.is_zero:
        return 0.0
    if u.values == v.values:
        return 1.0
    dot = sum(a * b for a, b in zip(u.values, v.values))
    return max(-1.0, min(1.0, dot))


class Embedder:
    """Deterministic text-to-vector interface: equal text, equal vector."""

    dimension: int

    def embed(self, text: str) -> EmbeddingVector:
        raise NotImplementedError

    def embed_batch(self, texts: list[str]) -> list[EmbeddingVector]:
        return [self.embed(t) for t in texts]


class BuiltinEmbedder(Embedder):
    dimension = BUILTIN_DIMENSION

    def embed(self, text: str) -> EmbeddingVector:
        return embed_builtin(text)


class RemoteEmbedder(Embedder):
    """Client for the ``POST /embed`` wire protocol.

    Transport failures surface as ``BackendError``; malformed responses as
    ``ProtocolError``. There is no silent fallback. Batch results preserve
    request order.
    """

    def __init__(
        self,
        endpoint: str,
        client: httpx.Client | None = None,
        batch_size: int = 128,
    ) -> None:
        if batch_size < 1:
            raise ContractError("batch_size must be >= 1")
        self._endpoint = endpoint.rstrip("/")
        self._client = client or httpx.Client(timeout=30.0)
        self._batch_size = batch_size
        self._dimension: int | None = None

    @property
    def dimension(self) -> int:  # type: ignore[override]
        if self._dimension is None:
            self.embed("")
        assert self._dimension is not None
        return self._dimension

    def embed(self, text: str) -> EmbeddingVector:
        return self.embed_batch([text])[0]

    def embed_batch(self, texts: list[str]) -> list[EmbeddingVector]:
        vectors: list[EmbeddingVector] = []
        for start in range(0, len(texts), self._batch_size):
            chunk = texts[start:start + self._batch_size]
            vectors.extend(self._embed_chunk(chunk, start))
        return vectors

    def _embed_chunk(self, chunk: list[str], start: int) -> list[EmbeddingVector]:
        window = f"{start}..{start + max(len(chunk), 1) - 1}"
        try:
            response = self._client.post(f"{self._endpoint}/embed", json={"texts": chunk})
        except httpx.HTTPError as exc:
            raise BackendError(f"embedding request failed for texts {window}: {exc}") from exc
        if response.status_code != 200:
            raise BackendError(
                f"embedding backend returned HTTP {response.status_code} for texts {window}"
            )
        try:
            payload = response.json()
            dimension = int(payload["dimension"])
            rows = payload["vectors"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ProtocolError(f"malformed embedding response: {exc}") from exc
        if self._dimension is None:
            self._dimension = dimension
        elif dimension != self._dimension:
            raise ProtocolError(
                f"embedding dimension changed from {self._dimension} to {dimension}"
            )
        if len(rows) != len(chunk):
            raise ProtocolError(
                f"expected {len(chunk)} vectors, got {len(rows)} for texts {window}"
            )
        out = []
        for row in rows:
            if len(row) != dimension:
                raise ProtocolError(
                    f"vector of length {len(row)} does not match dimension {dimension}"
                )
            try:
                out.append(EmbeddingVector(values=tuple(float(x) for x in row)))
            except (TypeError, ValidationError) as exc:
                raise ProtocolError(f"embedding backend sent a non-unit vector: {exc}") from exc
        return out


@dataclass(frozen=True)
class RetrievalResult:
    label: str | None
    score: float
    runner_up: tuple[str, float] | None = None


def retrieve_label(
    candidates: Mapping[str, str], generated: str, embedder: Embedder
) -> RetrievalResult:
    """Pick the candidate label whose definition is most similar to the
    generated text; ties go to the lexicographically smallest label."""
    if not candidates:
        raise ContractError("retrieve_label requires a non-empty candidate set")
    query = embedder.embed(generated)
    best: tuple[str, float] | None = None
    second: tuple[str, float] | None = None
    for label in sorted(candidates):
        score = cosine(embedder.embed(candidates[label]), query)
        if best is None or score > best[1]:
            second = best
            best = (label, score)
        elif second is None or score > second[1]:
            second = (label, score)
    assert best is not None
    return RetrievalResult(label=best[0], score=best[1], runner_up=second)


@dataclass(frozen=True)
class CastResult:
    """Discrete labels recovered from a parsed description.

    ``role_labels`` is None when the predicate is out of inventory, and is
    otherwise parallel to the parsed arguments (None per argument whose role
    could not be resolved against an empty candidate set).
    """

    sense_label: str | None
    role_labels: tuple[str | None, ...] | None


def cast_structure(
    parsed: ParsedStructure, lemma: str, inv: Inventory, embedder: Embedder
) -> CastResult:
    """Cast a parsed description to inventory labels.

    An out-of-inventory lemma yields absent sense and roles. Otherwise the
    sense is retrieved over the lemma's sense definitions, and each argument
    role over the winning sense's core roles merged with the global modifier
    definitions.
    """
    senses = inv.candidate_senses(lemma)
    if not senses:
        return CastResult(sense_label=None, role_labels=None)
    sense_result = retrieve_label(
        {entry.sense_id: entry.definition for entry in senses},
        parsed.sense_definition,
        embedder,
    )
    assert sense_result.label is not None
    winner = inv.entry(lemma, sense_result.label)
    assert winner is not None
    role_candidates = dict(winner.roles)
    role_candidates.update(inv.modifiers)
    role_labels: list[str | None] = []
    for argument in parsed.arguments:
        if not role_candidates:
            role_labels.append(None)
            continue
        result = retrieve_label(role_candidates, argument.role_definition, embedder)
        role_labels.append(result.label)
    return CastResult(sense_label=sense_result.label, role_labels=tuple(role_labels))
