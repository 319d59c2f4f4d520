"""Predicate-sense and role definitions from a linguistic inventory.

An inventory maps (lemma, sense_id) to a sense definition and sense-specific
role definitions, plus a global table of argument-modifier definitions for
adjunct roles (AM-TMP, ARGM-LOC, ...) that rolesets do not define themselves.
Immutable after load; all lookups are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from dsrl.corpus import Style
from dsrl.errors import FormatError, ValidationError

# Bundled modifier-definition tables, keyed by the label sets used in the
# CoNLL-2009 and CoNLL-2012 releases of PropBank.
CONLL2009_MODIFIERS = {
    "AM-ADV": "adverbial modifier",
    "AM-CAU": "cause or reason",
    "AM-DIR": "direction or source",
    "AM-DIS": "discourse connective",
    "AM-EXT": "amount or extent",
    "AM-LOC": "location or position",
    "AM-MNR": "instrument or manner",
    "AM-MOD": "modal auxiliary",
    "AM-NEG": "negation marker",
    "AM-PNC": "purpose, not cause",
    "AM-PRD": "secondary predication",
    "AM-TMP": "time or duration",
}

CONLL2012_MODIFIERS = {
    "ARGM-ADJ": "adjectival modifier",
    "ARGM-ADV": "adverbial modifier",
    "ARGM-CAU": "cause or reason",
    "ARGM-COM": "comitative",
    "ARGM-DIR": "direction or source",
    "ARGM-DIS": "discourse connective",
    "ARGM-EXT": "amount or extent",
    "ARGM-GOL": "goal or destination",
    "ARGM-LOC": "location or position",
    "ARGM-LVB": "light verb",
    "ARGM-MNR": "instrument or manner",
    "ARGM-MOD": "modal auxiliary",
    "ARGM-NEG": "negation marker",
    "ARGM-PNC": "purpose, not cause",
    "ARGM-PRD": "secondary predication",
    "ARGM-PRP": "purpose or motivation",
    "ARGM-TMP": "time or duration",
}

MODIFIER_SETS = {
    "conll2009": CONLL2009_MODIFIERS,
    "conll2012": CONLL2012_MODIFIERS,
}


def _clean_definition(text: str, what: str) -> str:
    cleaned = text.strip()
    if not cleaned:
        raise ValidationError(f"{what} has an empty definition")
    if "\n" in cleaned or "\r" in cleaned:
        raise ValidationError(f"{what} definition contains a newline")
    return cleaned


@dataclass(frozen=True)
class SenseEntry:
    """One sense of one lemma: its definition plus role→definition map."""

    lemma: str
    sense_id: str
    definition: str
    roles: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.lemma:
            raise ValidationError("sense entry lemma is empty")
        if not self.sense_id:
            raise ValidationError(f"sense entry for {self.lemma!r} has an empty sense id")
        object.__setattr__(
            self, "definition", _clean_definition(self.definition, f"sense {self.sense_id!r}")
        )
        cleaned_roles = {}
        for role, definition in self.roles.items():
            if not role:
                raise ValidationError(f"sense {self.sense_id!r} has an empty role label")
            cleaned_roles[role] = _clean_definition(
                definition, f"role {role!r} of sense {self.sense_id!r}"
            )
        object.__setattr__(self, "roles", cleaned_roles)

    def __hash__(self) -> int:
        return hash((self.lemma, self.sense_id))


@dataclass(frozen=True)
class Inventory:
    """All sense entries of one linguistic resource plus modifier definitions.

    Entries are keyed by (case-folded lemma, sense id); modifier labels must
    be disjoint from the core role labels of every entry.
    """

    style: Style
    entries: dict[tuple[str, str], SenseEntry]
    modifiers: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (lemma_key, sense_id), entry in self.entries.items():
            if lemma_key != entry.lemma.lower() or sense_id != entry.sense_id:
                raise ValidationError(
                    f"entry key ({lemma_key!r}, {sense_id!r}) does not match entry "
                    f"({entry.lemma!r}, {entry.sense_id!r})"
                )
            clash = set(entry.roles) & set(self.modifiers)
            if clash:
                raise ValidationError(
                    f"sense {entry.sense_id!r} defines modifier labels {sorted(clash)} as core roles"
                )
        for label, definition in self.modifiers.items():
            _clean_definition(definition, f"modifier {label!r}")

    def candidate_senses(self, lemma: str) -> list[SenseEntry]:
        """All entries for a lemma (case-insensitive exact match), sorted by
        sense id. An empty list signals an out-of-inventory predicate."""
        key = lemma.lower()
        found = [e for (lem, _), e in self.entries.items() if lem == key]
        return sorted(found, key=lambda e: e.sense_id)

    def entry(self, lemma: str, sense_id: str) -> SenseEntry | None:
        return self.entries.get((lemma.lower(), sense_id))

    def role_definition(self, entry: SenseEntry, role_label: str) -> str | None:
        """Entry-specific definition if present, else the modifier-table
        definition, else None. Never returns an empty string."""
        definition = entry.roles.get(role_label)
        if definition is not None:
            return definition
        return self.modifiers.get(role_label)


def candidate_senses(inv: Inventory, lemma: str) -> list[SenseEntry]:
    return inv.candidate_senses(lemma)


def role_definition(inv: Inventory, entry: SenseEntry, role_label: str) -> str | None:
    return inv.role_definition(entry, role_label)


def load_inventory(text: str) -> Inventory:
    """Load an inventory document (one JSON object per line).

    An optional header record may declare ``style`` and ``modifier_set``;
    declaring ``"modifier_set": "conll2009"`` or ``"conll2012"`` merges the
    corresponding bundled modifier table.
    """
    style = Style.PROPBANK
    modifiers: dict[str, str] = {}
    entries: dict[tuple[str, str], SenseEntry] = {}
    for recno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"record {recno}: invalid JSON ({exc})") from exc
        if not isinstance(obj, dict):
            raise FormatError(f"record {recno}: expected an object")
        if "lemma" not in obj:
            # Header record.
            if "style" in obj:
                try:
                    style = Style(obj["style"])
                except ValueError as exc:
                    raise FormatError(f"record {recno}: unknown style {obj['style']!r}") from exc
            modifier_set = obj.get("modifier_set")
            if modifier_set is not None:
                table = MODIFIER_SETS.get(modifier_set)
                if table is None:
                    raise FormatError(
                        f"record {recno}: unknown modifier_set {modifier_set!r} "
                        f"(expected one of {sorted(MODIFIER_SETS)})"
                    )
                modifiers.update(table)
            for label, definition in obj.get("modifiers", {}).items():
                modifiers[label] = definition
            continue
        try:
            entry = SenseEntry(
                lemma=obj["lemma"],
                sense_id=obj["sense_id"],
                definition=obj["definition"],
                roles=dict(obj.get("roles", {})),
            )
        except ValidationError as exc:
            raise ValidationError(f"record {recno}: {exc}") from exc
        except (KeyError, TypeError) as exc:
            raise FormatError(f"record {recno}: malformed entry ({exc})") from exc
        key = (entry.lemma.lower(), entry.sense_id)
        if key in entries:
            raise FormatError(
                f"record {recno}: duplicate sense ({entry.lemma!r}, {entry.sense_id!r})"
            )
        entries[key] = entry
    try:
        return Inventory(style=style, entries=entries, modifiers=modifiers)
    except ValidationError as exc:
        raise ValidationError(f"inventory document: {exc}") from exc
