"""Descriptive semantic role labeling toolkit."""

from dsrl.codec import (
    DecodeIssue,
    DecodeIssueKind,
    DescriptionSequence,
    ParsedArgument,
    ParsedStructure,
    StylePrefix,
    decode_description,
    encode_input,
    encode_target,
    strip_prefix,
)
from dsrl.corpus import (
    AnnotatedStructure,
    Argument,
    Corpus,
    Formalism,
    LinkFlag,
    PredicateInstance,
    Sentence,
    Style,
    dependency_to_span,
    parse_canonical,
    parse_conll2009,
    write_canonical,
)
from dsrl.inventory import Inventory, SenseEntry, load_inventory
from dsrl.retrieval import (
    BuiltinEmbedder,
    Embedder,
    EmbeddingVector,
    RemoteEmbedder,
    RetrievalResult,
    cast_structure,
    cosine,
    embed_builtin,
    retrieve_label,
)
from dsrl.scorer import ScoreReport, export_official, score_dependency, score_framenet, score_span

__version__ = "0.1.0"

__all__ = [
    "AnnotatedStructure",
    "Argument",
    "BuiltinEmbedder",
    "Corpus",
    "DecodeIssue",
    "DecodeIssueKind",
    "DescriptionSequence",
    "Embedder",
    "EmbeddingVector",
    "Formalism",
    "Inventory",
    "LinkFlag",
    "ParsedArgument",
    "ParsedStructure",
    "PredicateInstance",
    "RemoteEmbedder",
    "RetrievalResult",
    "ScoreReport",
    "SenseEntry",
    "Sentence",
    "Style",
    "StylePrefix",
    "cast_structure",
    "cosine",
    "decode_description",
    "dependency_to_span",
    "embed_builtin",
    "encode_input",
    "encode_target",
    "export_official",
    "load_inventory",
    "parse_canonical",
    "parse_conll2009",
    "retrieve_label",
    "score_dependency",
    "score_framenet",
    "score_span",
    "strip_prefix",
    "write_canonical",
]
