"""HTTP service wrapping the toolkit for long-running, multi-client use.

The service holds one inventory (loaded at startup) and exposes the corpus
conversion, encoding, decoding, casting, scoring, and statistics operations
over JSON. Corpus payloads use the canonical record schema.
"""

from __future__ import annotations

import json
from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from dsrl.codec import decode_description, encode_input, parsed_to_dict
from dsrl.corpus import Corpus, iter_with_sentences, parse_canonical, parse_conll2009, write_canonical
from dsrl.errors import DsrlError
from dsrl.generators import gold_oracle_generate
from dsrl.inventory import Inventory, load_inventory
from dsrl.pipeline import cast_corpus, decode_sequences
from dsrl.retrieval import BuiltinEmbedder
from dsrl.scorer import SCORERS, default_scorer_kind
from dsrl.stats import corpus_stats


class PredicateModel(BaseModel):
    start: int
    end: int
    lemma: str
    sense: str | None = None
    style: Literal["propbank", "framenet"] = "propbank"


class ArgumentModel(BaseModel):
    start: int
    end: int
    role: str
    link: Literal["none", "reference_to", "continuation_of"] = "none"


class StructureModel(BaseModel):
    predicate: PredicateModel
    formalism: Literal["dependency", "span"]
    arguments: list[ArgumentModel] = Field(default_factory=list)


class SentenceRecord(BaseModel):
    doc_id: str | None = None
    sentence_id: str
    tokens: list[str]
    structures: list[StructureModel] = Field(default_factory=list)


class ConvertRequest(BaseModel):
    text: str


class CorpusPayload(BaseModel):
    records: list[SentenceRecord]


class EncodeResponse(BaseModel):
    inputs: list[str]
    targets: list[str]


class DecodeRequest(BaseModel):
    sequences: list[str]
    records: list[SentenceRecord] | None = None


class DecodeResponse(BaseModel):
    parsed: list[dict]
    issues: list[list[dict]]


class CastRequest(BaseModel):
    sequences: list[str]
    records: list[SentenceRecord]


class ScoreRequest(BaseModel):
    gold: list[SentenceRecord]
    pred: list[SentenceRecord]
    scorer: Literal["dep", "span", "framenet"] | None = None


def _to_corpus(records: list[SentenceRecord]) -> Corpus:
    text = "".join(
        json.dumps(r.model_dump(), ensure_ascii=False, separators=(",", ":")) + "\n"
        for r in records
    )
    return parse_canonical(text)


def _to_records(corpus: Corpus) -> list[SentenceRecord]:
    return [
        SentenceRecord(**json.loads(line))
        for line in write_canonical(corpus).splitlines()
    ]


def _issues_payload(issue_lists) -> list[list[dict]]:
    return [
        [{"kind": i.kind.value, "offset": i.position, "note": i.note} for i in issues]
        for issues in issue_lists
    ]


def create_app(
    inventory: Inventory | None = None, inventory_path: str | None = None
) -> FastAPI:
    if inventory is None and inventory_path is not None:
        with open(inventory_path, encoding="utf-8") as handle:
            inventory = load_inventory(handle.read())

    app = FastAPI(title="dsrl", version="0.1.0")
    app.state.inventory = inventory
    embedder = BuiltinEmbedder()

    def need_inventory() -> Inventory:
        if app.state.inventory is None:
            raise HTTPException(
                status_code=409, detail="service started without an inventory"
            )
        return app.state.inventory

    @app.exception_handler(DsrlError)
    async def _dsrl_error(_, exc: DsrlError):
        from fastapi.responses import JSONResponse

        return JSONResponse(
            status_code=400, content={"error": {"category": exc.category, "detail": str(exc)}}
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/convert", response_model=CorpusPayload)
    def convert(request: ConvertRequest) -> CorpusPayload:
        return CorpusPayload(records=_to_records(parse_conll2009(request.text)))

    @app.post("/encode", response_model=EncodeResponse)
    def encode(payload: CorpusPayload) -> EncodeResponse:
        corpus = _to_corpus(payload.records)
        inv = need_inventory()
        inputs = [
            encode_input(sent, struct.predicate)
            for struct, sent in iter_with_sentences(corpus)
        ]
        targets = [seq.surface for seq in gold_oracle_generate(corpus, inv)]
        return EncodeResponse(inputs=inputs, targets=targets)

    @app.post("/decode", response_model=DecodeResponse)
    def decode(request: DecodeRequest) -> DecodeResponse:
        if request.records is not None:
            corpus = _to_corpus(request.records)
            parsed, issues = decode_sequences(corpus, list(request.sequences))
        else:
            parsed, issues = [], []
            for seq in request.sequences:
                p, i = decode_description(seq)
                parsed.append(p)
                issues.append(i)
        return DecodeResponse(
            parsed=[parsed_to_dict(p) for p in parsed], issues=_issues_payload(issues)
        )

    @app.post("/cast", response_model=CorpusPayload)
    def cast(request: CastRequest) -> CorpusPayload:
        gold = _to_corpus(request.records)
        inv = need_inventory()
        parsed, _ = decode_sequences(gold, list(request.sequences))
        predicted = cast_corpus(gold, parsed, inv, embedder)
        return CorpusPayload(records=_to_records(predicted))

    @app.post("/score")
    def score(request: ScoreRequest) -> dict:
        gold = _to_corpus(request.gold)
        pred = _to_corpus(request.pred)
        kind = request.scorer or default_scorer_kind(gold)
        return SCORERS[kind](gold, pred).to_dict()

    @app.post("/stats")
    def stats(payload: CorpusPayload) -> dict:
        corpus = _to_corpus(payload.records)
        return corpus_stats(corpus, need_inventory()).to_dict()

    return app
