"""Bidirectional codec between annotated structures and description sequences.

The target surface form is: an optional style prefix, the predicate lemma,
``": "``, the sense definition, ``". "``, then the sentence with every
argument wrapped as ``[argument tokens]{role definition}``. Link flags are
rendered as ``<reference-to>`` / ``<continuation-of>`` markers before the
role definition.

Decoding is total: arbitrary text is accepted, problems are reported as
``DecodeIssue`` values, and nothing is ever silently repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from dsrl.corpus import (
    AnnotatedStructure,
    Formalism,
    LinkFlag,
    PredicateInstance,
    Sentence,
    Style,
)
from dsrl.errors import ContractError, DefinitionLookupError, ValidationError
from dsrl.inventory import Inventory
from dsrl import tokens as tk

_FORMALISM_TOKEN = {Formalism.DEPENDENCY: tk.DEP_SRL, Formalism.SPAN: tk.SPAN_SRL}
_TOKEN_FORMALISM = {v: k for k, v in _FORMALISM_TOKEN.items()}
_STYLE_TOKEN = {Style.PROPBANK: tk.PROPBANK, Style.FRAMENET: tk.FRAMENET}
_TOKEN_STYLE = {v: k for k, v in _STYLE_TOKEN.items()}

# The backslash is part of the escape set so that a literal backslash before
# a structural bracket cannot be misread as an escape sequence.
_ESCAPABLE = "[]{}\\"


@dataclass(frozen=True)
class StylePrefix:
    """Inventory/formalism instruction tokens prepended to a target sequence."""

    inventory: Style
    formalism: Formalism

    def render(self) -> str:
        return _STYLE_TOKEN[self.inventory] + _FORMALISM_TOKEN[self.formalism]


@dataclass(frozen=True)
class DescriptionSequence:
    """A full target surface string, with its style prefix when known."""

    surface: str
    prefix: StylePrefix | None = None

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValidationError("description sequence surface is empty")


@dataclass(frozen=True)
class ParsedArgument:
    text: str
    role_definition: str
    link: LinkFlag = LinkFlag.NONE


@dataclass(frozen=True)
class ParsedStructure:
    """A decoded description: definitions instead of labels.

    ``arguments`` appear in left-to-right surface order. ``alignment`` is
    parallel to ``arguments`` when a sentence was supplied for decoding
    (None per argument that could not be aligned), and None otherwise.
    """

    predicate_surface: str
    sense_definition: str
    arguments: tuple[ParsedArgument, ...]
    alignment: tuple[tuple[int, int] | None, ...] | None = None


class DecodeIssueKind(str, Enum):
    UNBALANCED_BRACKET = "unbalanced_bracket"
    MISSING_SENSE_HEADER = "missing_sense_header"
    UNALIGNABLE_ARGUMENT = "unalignable_argument"
    STRAY_MARKER = "stray_marker"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class DecodeIssue:
    kind: DecodeIssueKind
    position: int
    note: str = ""


def escape(text: str) -> str:
    """Escape the bracket characters that delimit the target grammar."""
    out = []
    for ch in text:
        if ch in _ESCAPABLE:
            out.append("\\")
        out.append(ch)
    return "".join(out)


def unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        if text[i] == "\\" and i + 1 < len(text) and text[i + 1] in _ESCAPABLE:
            out.append(text[i + 1])
            i += 2
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def encode_input(sentence: Sentence, pred: PredicateInstance) -> str:
    """Render the source sequence: the sentence with ``<p>`` / ``</p>``
    markers around the predicate tokens and nothing else altered."""
    if pred.sentence_ref != sentence.sentence_id:
        raise ContractError(
            f"predicate references sentence {pred.sentence_ref!r}, "
            f"got {sentence.sentence_id!r}"
        )
    if pred.end >= len(sentence):
        raise ContractError(
            f"predicate range {pred.start}..{pred.end} out of range for "
            f"sentence of length {len(sentence)}"
        )
    parts: list[str] = []
    for i, token in enumerate(sentence.tokens):
        if i == pred.start:
            parts.append(tk.PREDICATE_START)
        parts.append(token)
        if i == pred.end:
            parts.append(tk.PREDICATE_END)
    return " ".join(parts)


def encode_target(
    structure: AnnotatedStructure,
    sentence: Sentence,
    inv: Inventory,
    prefix: StylePrefix | None = None,
) -> DescriptionSequence:
    """Render the target sequence for a span-formalism structure.

    The sense and every role label must resolve in the inventory; failures
    raise ``DefinitionLookupError`` identifying the label.
    """
    if structure.formalism is not Formalism.SPAN:
        raise ContractError("encode_target requires span formalism; apply dependency_to_span first")
    pred = structure.predicate
    if pred.sentence_ref != sentence.sentence_id:
        raise ContractError(
            f"structure references sentence {pred.sentence_ref!r}, got {sentence.sentence_id!r}"
        )
    if pred.end >= len(sentence) or any(a.end >= len(sentence) for a in structure.arguments):
        raise ContractError("structure does not fit the sentence")
    if pred.sense_label is None:
        raise DefinitionLookupError(f"predicate {pred.lemma!r} has no sense label to encode")
    entry = inv.entry(pred.lemma, pred.sense_label)
    if entry is None:
        raise DefinitionLookupError(
            f"sense {pred.sense_label!r} of lemma {pred.lemma!r} is not in the inventory"
        )
    role_defs = {}
    for arg in structure.arguments:
        definition = inv.role_definition(entry, arg.role_label)
        if definition is None:
            raise DefinitionLookupError(
                f"role {arg.role_label!r} of sense {pred.sense_label!r} has no definition"
            )
        role_defs[arg] = definition

    by_start = {a.start: a for a in structure.arguments}
    by_end = {a.end: a for a in structure.arguments}
    parts: list[str] = []
    for i, token in enumerate(sentence.tokens):
        piece = escape(token)
        if i in by_start:
            piece = "[" + piece
        if i in by_end:
            arg = by_end[i]
            definition = escape(role_defs[arg])
            if arg.link is LinkFlag.REFERENCE_TO:
                group = "{ " + tk.REFERENCE_TO + " " + definition + "}"
            elif arg.link is LinkFlag.CONTINUATION_OF:
                group = "{ " + tk.CONTINUATION_OF + " " + definition + "}"
            else:
                group = "{" + definition + "}"
            piece = piece + "]" + group
        parts.append(piece)
    body = " ".join(parts)
    header = escape(pred.lemma) + ": " + escape(entry.definition) + ". "
    surface = header + body
    if prefix is not None:
        surface = prefix.render() + " " + surface
    return DescriptionSequence(surface=surface, prefix=prefix)


def strip_prefix(surface: str) -> tuple[StylePrefix | None, str]:
    """Recognize the four prefix tokens in either order at the start.

    A complete prefix is one inventory token plus one formalism token; on a
    match the tokens and separating whitespace are consumed, otherwise the
    surface is returned unchanged.
    """
    rest = surface
    seen: list[str] = []
    for step in range(2):
        candidate = rest.lstrip() if step else rest
        matched = None
        for token in (tk.PROPBANK, tk.FRAMENET, tk.SPAN_SRL, tk.DEP_SRL):
            if candidate.startswith(token):
                matched = token
                break
        if matched is None:
            break
        seen.append(matched)
        rest = candidate[len(matched):]
    styles = [t for t in seen if t in _TOKEN_STYLE]
    formalisms = [t for t in seen if t in _TOKEN_FORMALISM]
    if len(styles) == 1 and len(formalisms) == 1:
        prefix = StylePrefix(
            inventory=_TOKEN_STYLE[styles[0]], formalism=_TOKEN_FORMALISM[formalisms[0]]
        )
        return prefix, rest.lstrip()
    return None, surface


def _find_unescaped(text: str, target: str, start: int) -> int:
    """Index of the next unescaped occurrence of ``target``, or -1."""
    i = start
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text) and text[i + 1] in _ESCAPABLE:
            i += 2
            continue
        if ch == target:
            return i
        i += 1
    return -1


class _IssueLog:
    def __init__(self, surface_len: int) -> None:
        self.issues: list[DecodeIssue] = []
        self._max = max(0, surface_len - 1)
        self._truncated = False

    def add(self, kind: DecodeIssueKind, position: int, note: str = "") -> None:
        if kind is DecodeIssueKind.TRUNCATED:
            if self._truncated:
                return
            self._truncated = True
        self.issues.append(
            DecodeIssue(kind=kind, position=min(max(position, 0), self._max), note=note)
        )


def _split_link(definition: str) -> tuple[str, LinkFlag]:
    if definition.startswith(tk.REFERENCE_TO):
        return definition[len(tk.REFERENCE_TO):].strip(), LinkFlag.REFERENCE_TO
    if definition.startswith(tk.CONTINUATION_OF):
        return definition[len(tk.CONTINUATION_OF):].strip(), LinkFlag.CONTINUATION_OF
    return definition, LinkFlag.NONE


def decode_description(
    seq: DescriptionSequence | str,
    sentence: Sentence | None = None,
) -> tuple[ParsedStructure, list[DecodeIssue]]:
    """Parse a (possibly malformed) description back into a structure.

    A single left-to-right pass extracts the sense header, then bracket/brace
    argument pairs; every problem becomes a ``DecodeIssue`` and the scanner
    resumes after the offending character. The function never raises on any
    input. When ``sentence`` is given, argument texts are aligned to token
    ranges by exact contiguous-token match, leftmost unused occurrence first.
    """
    surface = seq.surface if isinstance(seq, DescriptionSequence) else seq
    log = _IssueLog(len(surface))
    _, rest = strip_prefix(surface)
    base = len(surface) - len(rest)

    predicate_surface = ""
    sense_definition = ""
    body = rest
    body_base = base

    colon = rest.find(": ")
    period = rest.find(". ")
    if colon == -1 or (period != -1 and period < colon):
        log.add(DecodeIssueKind.MISSING_SENSE_HEADER, base, "no 'lemma: definition.' header")
    else:
        header_end = rest.find(". ", colon + 2)
        if header_end != -1:
            header = rest[:header_end]
            body = rest[header_end + 2:]
            body_base = base + header_end + 2
        elif rest.endswith("."):
            header = rest[:-1]
            body = ""
            body_base = base + len(rest)
        else:
            header = rest
            body = ""
            body_base = base + len(rest)
            log.add(DecodeIssueKind.TRUNCATED, len(surface) - 1, "header never terminated")
        predicate_surface = unescape(header[:colon]).strip()
        sense_definition = unescape(header[colon + 2:]).strip()

    arguments: list[ParsedArgument] = []
    arg_positions: list[int] = []
    i = 0
    n = len(body)

    def scan_special(pos: int) -> str | None:
        for token in tk.RESERVED_MARKERS:
            if body.startswith(token, pos):
                return token
        return None

    while i < n:
        ch = body[i]
        if ch == "\\" and i + 1 < n and body[i + 1] in _ESCAPABLE:
            i += 2
            continue
        if ch == "[":
            close = _find_unescaped(body, "]", i + 1)
            if close == -1:
                log.add(
                    DecodeIssueKind.UNBALANCED_BRACKET, body_base + i, "argument never closed"
                )
                log.add(DecodeIssueKind.TRUNCATED, len(surface) - 1, "input ends inside argument")
                i += 1
                continue
            nested = _find_unescaped(body, "[", i + 1)
            if nested != -1 and nested < close:
                log.add(DecodeIssueKind.STRAY_MARKER, body_base + nested, "nested bracket")
            k = close + 1
            while k < n and body[k] == " ":
                k += 1
            if k >= n or body[k] != "{":
                log.add(
                    DecodeIssueKind.UNBALANCED_BRACKET,
                    body_base + i,
                    "argument has no role definition",
                )
                i = close + 1
                continue
            brace_close = _find_unescaped(body, "}", k + 1)
            if brace_close == -1:
                log.add(
                    DecodeIssueKind.UNBALANCED_BRACKET,
                    body_base + k,
                    "role definition never closed",
                )
                log.add(
                    DecodeIssueKind.TRUNCATED, len(surface) - 1, "input ends inside definition"
                )
                i = k + 1
                continue
            nested_brace = _find_unescaped(body, "{", k + 1)
            if nested_brace != -1 and nested_brace < brace_close:
                log.add(DecodeIssueKind.STRAY_MARKER, body_base + nested_brace, "nested brace")
            text = unescape(body[i + 1:close]).strip()
            definition, link = _split_link(body[k + 1:brace_close].strip())
            arguments.append(
                ParsedArgument(text=text, role_definition=unescape(definition).strip(), link=link)
            )
            arg_positions.append(body_base + i)
            i = brace_close + 1
            continue
        if ch == "{":
            close = _find_unescaped(body, "}", i + 1)
            if close == -1:
                log.add(
                    DecodeIssueKind.UNBALANCED_BRACKET,
                    body_base + i,
                    "role definition never closed",
                )
                log.add(
                    DecodeIssueKind.TRUNCATED, len(surface) - 1, "input ends inside definition"
                )
                i += 1
            else:
                log.add(
                    DecodeIssueKind.UNBALANCED_BRACKET,
                    body_base + i,
                    "role definition without an argument",
                )
                i = close + 1
            continue
        if ch in "]}":
            log.add(DecodeIssueKind.STRAY_MARKER, body_base + i, f"unmatched {ch!r}")
            i += 1
            continue
        if ch == "<":
            token = scan_special(i)
            if token is not None:
                log.add(
                    DecodeIssueKind.STRAY_MARKER,
                    body_base + i,
                    f"marker {token!r} outside its position",
                )
                i += len(token)
                continue
        i += 1

    alignment: tuple[tuple[int, int] | None, ...] | None = None
    if sentence is not None:
        used = [False] * len(sentence)
        slots: list[tuple[int, int] | None] = []
        for arg, pos in zip(arguments, arg_positions):
            arg_tokens = arg.text.split(" ") if arg.text else []
            span = _leftmost_unused_match(sentence.tokens, arg_tokens, used)
            if span is None:
                log.add(
                    DecodeIssueKind.UNALIGNABLE_ARGUMENT,
                    pos,
                    f"no contiguous token match for {arg.text!r}",
                )
                slots.append(None)
            else:
                for j in range(span[0], span[1] + 1):
                    used[j] = True
                slots.append(span)
        alignment = tuple(slots)

    parsed = ParsedStructure(
        predicate_surface=predicate_surface,
        sense_definition=sense_definition,
        arguments=tuple(arguments),
        alignment=alignment,
    )
    return parsed, log.issues


def align_parsed(parsed: ParsedStructure, sentence: Sentence) -> ParsedStructure:
    """Recompute argument alignment against a sentence (leftmost unused
    exact contiguous-token match), leaving everything else untouched."""
    used = [False] * len(sentence)
    slots: list[tuple[int, int] | None] = []
    for arg in parsed.arguments:
        arg_tokens = arg.text.split(" ") if arg.text else []
        span = _leftmost_unused_match(sentence.tokens, arg_tokens, used)
        if span is not None:
            for j in range(span[0], span[1] + 1):
                used[j] = True
        slots.append(span)
    return ParsedStructure(
        predicate_surface=parsed.predicate_surface,
        sense_definition=parsed.sense_definition,
        arguments=parsed.arguments,
        alignment=tuple(slots),
    )


def parsed_to_dict(parsed: ParsedStructure) -> dict:
    return {
        "predicate_surface": parsed.predicate_surface,
        "sense_definition": parsed.sense_definition,
        "arguments": [
            {"text": a.text, "definition": a.role_definition, "link": a.link.value}
            for a in parsed.arguments
        ],
        "alignment": None
        if parsed.alignment is None
        else [None if span is None else [span[0], span[1]] for span in parsed.alignment],
    }


def parsed_from_dict(obj: dict) -> ParsedStructure:
    alignment = obj.get("alignment")
    return ParsedStructure(
        predicate_surface=obj.get("predicate_surface", ""),
        sense_definition=obj.get("sense_definition", ""),
        arguments=tuple(
            ParsedArgument(
                text=a["text"],
                role_definition=a["definition"],
                link=LinkFlag(a.get("link", "none")),
            )
            for a in obj.get("arguments", ())
        ),
        alignment=None
        if alignment is None
        else tuple(None if span is None else (span[0], span[1]) for span in alignment),
    )


def _leftmost_unused_match(
    tokens: tuple[str, ...], arg_tokens: list[str], used: list[bool]
) -> tuple[int, int] | None:
    k = len(arg_tokens)
    if k == 0 or k > len(tokens):
        return None
    for start in range(len(tokens) - k + 1):
        if any(used[start:start + k]):
            continue
        if list(tokens[start:start + k]) == arg_tokens:
            return (start, start + k - 1)
    return None
