"""Command-line entry point wiring the toolkit into reproducible pipelines.

Every subcommand is a deterministic function of its flags: re-running with
the same configuration reproduces byte-identical artifacts. Errors exit
nonzero with a single machine-parsable ``category: message`` line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from dsrl.analysis import downsample, partitioned_scores, sense_counts
from dsrl.codec import (
    StylePrefix,
    align_parsed,
    decode_description,
    encode_input,
    parsed_from_dict,
    parsed_to_dict,
)
from dsrl.corpus import (
    Corpus,
    Formalism,
    Style,
    iter_with_sentences,
    parse_canonical,
    parse_conll2009,
    write_canonical,
)
from dsrl.errors import ContractError, DsrlError
from dsrl.generators import RemoteGenerator, gold_oracle_generate, mfs_baseline_generate
from dsrl.inventory import Inventory, load_inventory
from dsrl.pipeline import cast_corpus, decode_sequences, run_pipeline
from dsrl.retrieval import BuiltinEmbedder, Embedder, RemoteEmbedder
from dsrl.scorer import SCORERS, default_scorer_kind
from dsrl.stats import corpus_stats

_FORMALISM_FLAG = {"dep-srl": Formalism.DEPENDENCY, "span-srl": Formalism.SPAN}


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _dumps(obj: object) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _load_corpus(path: str) -> Corpus:
    return parse_canonical(_read(path))


def _load_inventory(path: str) -> Inventory:
    return load_inventory(_read(path))


def _prefix_from(args: argparse.Namespace) -> StylePrefix | None:
    style = getattr(args, "style", None)
    formalism = getattr(args, "formalism", None)
    if style is None and formalism is None:
        return None
    if style is None or formalism is None:
        raise ContractError("--style and --formalism must be given together")
    return StylePrefix(inventory=Style(style), formalism=_FORMALISM_FLAG[formalism])


def _endpoint_from(args: argparse.Namespace) -> str:
    endpoint = getattr(args, "endpoint", None) or os.environ.get("DSRL_ENDPOINT")
    if not endpoint:
        raise ContractError("a remote backend needs --endpoint or DSRL_ENDPOINT")
    return endpoint


def _embedder_from(args: argparse.Namespace) -> Embedder:
    if args.embedder == "remote":
        return RemoteEmbedder(_endpoint_from(args))
    return BuiltinEmbedder()


def _generate_sequences(args: argparse.Namespace, gold: Corpus, inv) -> list:
    prefix = _prefix_from(args)
    if args.generator == "gold":
        return gold_oracle_generate(gold, inv, prefix)
    if args.generator == "mfs":
        train = _load_corpus(args.train) if args.train else gold
        counts = sense_counts(train)
        return [
            mfs_baseline_generate(sent, struct.predicate, counts, inv)
            for struct, sent in iter_with_sentences(gold)
        ]
    inputs = [encode_input(sent, struct.predicate) for struct, sent in iter_with_sentences(gold)]
    return RemoteGenerator(_endpoint_from(args)).generate(inputs, prefix)


# --- subcommand handlers -----------------------------------------------------


def _cmd_convert(args: argparse.Namespace) -> int:
    corpus = parse_conll2009(_read(args.input))
    _write(args.output, write_canonical(corpus))
    return 0


def _cmd_encode(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args.input)
    inv = _load_inventory(args.inventory)
    prefix = _prefix_from(args)
    sequences = gold_oracle_generate(corpus, inv, prefix)
    inputs = [
        encode_input(sent, struct.predicate) for struct, sent in iter_with_sentences(corpus)
    ]
    _write(args.output + ".input.txt", "".join(s + "\n" for s in inputs))
    _write(args.output + ".target.txt", "".join(s.surface + "\n" for s in sequences))
    return 0


def _decode_lines(lines: list[str], corpus: Corpus | None):
    if corpus is not None:
        return decode_sequences(corpus, list(lines))
    parsed_list, issue_list = [], []
    for line in lines:
        parsed, issues = decode_description(line)
        parsed_list.append(parsed)
        issue_list.append(issues)
    return parsed_list, issue_list


def _write_decode_artifacts(out: str, parsed_list, issue_list) -> None:
    parsed_lines = [
        _dumps({"line": i + 1, **parsed_to_dict(parsed)})
        for i, parsed in enumerate(parsed_list)
    ]
    issue_lines = [
        _dumps({"line": i + 1, "kind": iss.kind.value, "offset": iss.position, "note": iss.note})
        for i, issues in enumerate(issue_list)
        for iss in issues
    ]
    _write(out + ".parsed.jsonl", "".join(line + "\n" for line in parsed_lines))
    _write(out + ".issues.jsonl", "".join(line + "\n" for line in issue_lines))


def _cmd_decode(args: argparse.Namespace) -> int:
    lines = _read(args.input).splitlines()
    corpus = _load_corpus(args.corpus) if args.corpus else None
    parsed_list, issue_list = _decode_lines(lines, corpus)
    _write_decode_artifacts(args.output, parsed_list, issue_list)
    return 0


def _cmd_cast(args: argparse.Namespace) -> int:
    gold = _load_corpus(args.corpus)
    inv = _load_inventory(args.inventory)
    embedder = _embedder_from(args)
    parsed_list = []
    for line in _read(args.input).splitlines():
        if line.strip():
            parsed_list.append(parsed_from_dict(json.loads(line)))
    if len(parsed_list) != len(gold.structures):
        raise ContractError(
            f"{len(parsed_list)} parsed records for {len(gold.structures)} structures"
        )
    aligned = [
        parsed if parsed.alignment is not None else align_parsed(parsed, sent)
        for parsed, (_, sent) in zip(parsed_list, iter_with_sentences(gold))
    ]
    predicted = cast_corpus(gold, aligned, inv, embedder)
    _write(args.output, write_canonical(predicted))
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    gold = _load_corpus(args.gold)
    pred = _load_corpus(args.input)
    kind = args.scorer or default_scorer_kind(gold)
    report = SCORERS[kind](gold, pred)
    if args.output:
        _write(args.output, _dumps(report.to_dict()) + "\n")
    print(report.render_text())
    return 0


def _cmd_partition(args: argparse.Namespace) -> int:
    gold = _load_corpus(args.gold)
    pred = _load_corpus(args.input)
    counts = sense_counts(_load_corpus(args.train))
    table = partitioned_scores(gold, pred, counts, scorer_kind=args.scorer)
    if args.output:
        _write(
            args.output,
            "".join(_dumps(record) + "\n" for record in table.to_records()),
        )
    print(table.render_text())
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args.input)
    inv = _load_inventory(args.inventory)
    report = corpus_stats(corpus, inv)
    if args.output:
        _write(args.output, _dumps(report.to_dict()) + "\n")
    print(report.render_text())
    return 0


def _cmd_downsample(args: argparse.Namespace) -> int:
    corpus = _load_corpus(args.input)
    sampled = downsample(corpus, args.fraction, args.seed)
    _write(args.output, write_canonical(sampled))
    return 0


def _cmd_pipeline(args: argparse.Namespace) -> int:
    gold = _load_corpus(args.input)
    inv = _load_inventory(args.inventory)
    embedder = _embedder_from(args)
    sequences = _generate_sequences(args, gold, inv)
    kind = args.scorer or default_scorer_kind(gold)
    result = run_pipeline(gold, inv, sequences, embedder, kind)
    out = args.output
    _write(out + ".target.txt", "".join(s.surface + "\n" for s in result.sequences))
    _write_decode_artifacts(out, result.parsed, result.issues)
    _write(out + ".pred.jsonl", write_canonical(result.predicted))
    _write(out + ".score.json", _dumps(result.report.to_dict()) + "\n")
    print(result.report.render_text())
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from dsrl.service import create_app

    app = create_app(inventory_path=args.inventory)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsrl",
        description="Describe, decode, cast, and score predicate-argument structures.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("convert", _cmd_convert, "CoNLL-2009 column file to canonical corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)

    p = add("encode", _cmd_encode, "corpus to paired input/target sequence files")
    p.add_argument("--input", required=True)
    p.add_argument("--inventory", required=True)
    p.add_argument("--output", required=True, help="prefix for .input.txt/.target.txt")
    p.add_argument("--style", choices=[s.value for s in Style])
    p.add_argument("--formalism", choices=sorted(_FORMALISM_FLAG))

    p = add("decode", _cmd_decode, "sequence file to parsed structures plus issue log")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="prefix for .parsed.jsonl/.issues.jsonl")
    p.add_argument("--corpus", help="canonical corpus for argument alignment")

    p = add("cast", _cmd_cast, "parsed descriptions to a labeled canonical corpus")
    p.add_argument("--input", required=True, help="parsed.jsonl from decode")
    p.add_argument("--corpus", required=True, help="gold corpus with pre-identified predicates")
    p.add_argument("--inventory", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--embedder", choices=["builtin", "remote"], default="builtin")
    p.add_argument("--endpoint")

    p = add("score", _cmd_score, "score a predicted corpus against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--input", required=True, help="predicted canonical corpus")
    p.add_argument("--scorer", choices=sorted(SCORERS))
    p.add_argument("--output")

    p = add("partition", _cmd_partition, "MFS/LFS/UNSEEN partitioned score table")
    p.add_argument("--gold", required=True)
    p.add_argument("--input", required=True, help="predicted canonical corpus")
    p.add_argument("--train", required=True, help="training corpus for sense counts")
    p.add_argument("--scorer", choices=sorted(SCORERS))
    p.add_argument("--output")

    p = add("stats", _cmd_stats, "corpus statistics report")
    p.add_argument("--input", required=True)
    p.add_argument("--inventory", required=True)
    p.add_argument("--output")

    p = add("downsample", _cmd_downsample, "sample annotated sentences deterministically")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--fraction", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = add("pipeline", _cmd_pipeline, "generate, decode, cast, and score in one run")
    p.add_argument("--input", required=True, help="gold canonical corpus")
    p.add_argument("--inventory", required=True)
    p.add_argument("--output", required=True, help="prefix for pipeline artifacts")
    p.add_argument("--generator", choices=["gold", "mfs", "remote"], default="gold")
    p.add_argument("--embedder", choices=["builtin", "remote"], default="builtin")
    p.add_argument("--endpoint")
    p.add_argument("--scorer", choices=sorted(SCORERS))
    p.add_argument("--train", help="training corpus for the mfs generator")
    p.add_argument("--style", choices=[s.value for s in Style])
    p.add_argument("--formalism", choices=sorted(_FORMALISM_FLAG))

    p = add("serve", _cmd_serve, "run the HTTP service wrapping the toolkit")
    p.add_argument("--inventory")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DsrlError as exc:
        print(f"{exc.category}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io-error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
