import json

import pytest

from dsrl.corpus import Style
from dsrl.errors import FormatError, ValidationError
from dsrl.inventory import (
    CONLL2009_MODIFIERS,
    CONLL2012_MODIFIERS,
    Inventory,
    SenseEntry,
    load_inventory,
)


def write_inventory(inv: Inventory) -> str:
    """Companion writer used only in tests (inverse of load_inventory)."""
    lines = [json.dumps({"style": inv.style.value, "modifiers": inv.modifiers})]
    for (_, _), entry in sorted(inv.entries.items()):
        lines.append(
            json.dumps(
                {
                    "lemma": entry.lemma,
                    "sense_id": entry.sense_id,
                    "definition": entry.definition,
                    "roles": entry.roles,
                }
            )
        )
    return "\n".join(lines) + "\n"


def test_give_entry_is_retrievable(pb_inventory):
    entry = pb_inventory.entry("give", "give.01")
    assert entry is not None
    assert entry.definition == "transfer"
    assert entry.roles == {"A0": "giver", "A1": "thing given", "A2": "entity given to"}


def test_conll2009_modifier_table_is_merged(pb_inventory):
    assert pb_inventory.modifiers["AM-TMP"] == "time or duration"
    assert set(CONLL2009_MODIFIERS) <= set(pb_inventory.modifiers)


def test_conll2012_modifier_table():
    inv = load_inventory('{"modifier_set": "conll2012"}\n')
    assert inv.modifiers == CONLL2012_MODIFIERS
    assert inv.modifiers["ARGM-GOL"] == "goal or destination"


def test_duplicate_sense_is_rejected():
    doc = "\n".join(
        [
            '{"lemma": "give", "sense_id": "give.01", "definition": "a", "roles": {}}',
            '{"lemma": "Give", "sense_id": "give.01", "definition": "b", "roles": {}}',
        ]
    )
    with pytest.raises(FormatError):
        load_inventory(doc)


def test_empty_definition_is_rejected():
    with pytest.raises(ValidationError):
        load_inventory('{"lemma": "x", "sense_id": "x.01", "definition": "  ", "roles": {}}')


def test_unknown_modifier_set_is_rejected():
    with pytest.raises(FormatError):
        load_inventory('{"modifier_set": "conll2042"}')


def test_modifier_core_role_clash_is_rejected():
    doc = "\n".join(
        [
            '{"modifier_set": "conll2009"}',
            '{"lemma": "x", "sense_id": "x.01", "definition": "d", "roles": {"AM-TMP": "t"}}',
        ]
    )
    with pytest.raises(ValidationError):
        load_inventory(doc)


class TestCandidateSenses:
    def test_lemma_lookup(self, pb_inventory):
        senses = [e.sense_id for e in pb_inventory.candidate_senses("give")]
        assert senses == ["give.01", "give.02"]

    def test_out_of_inventory_lemma_is_empty(self, pb_inventory):
        assert pb_inventory.candidate_senses("google") == []

    def test_lookup_is_case_insensitive(self, pb_inventory):
        assert pb_inventory.candidate_senses("GIVE") == pb_inventory.candidate_senses("give")

    def test_ordering_is_deterministic(self, pb_inventory):
        first = pb_inventory.candidate_senses("give")
        assert first == pb_inventory.candidate_senses("give")
        assert first == sorted(first, key=lambda e: e.sense_id)


class TestRoleDefinition:
    def test_core_role(self, pb_inventory):
        entry = pb_inventory.entry("give", "give.01")
        assert pb_inventory.role_definition(entry, "A1") == "thing given"

    def test_modifier_fallback(self, pb_inventory):
        entry = pb_inventory.entry("give", "give.01")
        assert pb_inventory.role_definition(entry, "AM-TMP") == "time or duration"

    def test_unknown_role_is_absent(self, pb_inventory):
        entry = pb_inventory.entry("give", "give.01")
        assert pb_inventory.role_definition(entry, "A9") is None

    def test_never_returns_empty_string(self, pb_inventory):
        labels = set(CONLL2009_MODIFIERS) | {"A0", "A1", "A2", "A9", "nope"}
        for entry in pb_inventory.entries.values():
            for label in labels | set(entry.roles):
                definition = pb_inventory.role_definition(entry, label)
                assert definition != ""


def test_load_write_round_trip(pb_inventory, fn_inventory):
    for inv in (pb_inventory, fn_inventory):
        again = load_inventory(write_inventory(inv))
        assert again == inv


def test_definitions_are_stripped():
    inv = load_inventory(
        '{"lemma": "x", "sense_id": "x.01", "definition": "  padded  ", "roles": {"A0": " r "}}'
    )
    entry = inv.entry("x", "x.01")
    assert entry.definition == "padded"
    assert entry.roles["A0"] == "r"


def test_framenet_entries_use_frames_as_senses(fn_inventory):
    assert fn_inventory.style is Style.FRAMENET
    frames = [e.sense_id for e in fn_inventory.candidate_senses("hand")]
    assert frames == ["Body_parts", "Giving"]
    entry = fn_inventory.entry("hand", "Giving")
    assert isinstance(entry, SenseEntry)
    assert "Theme" in entry.roles
