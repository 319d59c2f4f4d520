"""Shared test machinery: independent oracles and fuzz generators.

The oracles here are deliberately written from scratch against the
documented behavior (not by calling the code under test) so that the main
implementations are checked against a second, independent route.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction

from dsrl.corpus import (
    AnnotatedStructure,
    Argument,
    Corpus,
    Formalism,
    LinkFlag,
    PredicateInstance,
    Sentence,
    Style,
)
from dsrl.inventory import CONLL2009_MODIFIERS, Inventory, SenseEntry

# --- independent trigram-embedding reference ---------------------------------


def reference_fnv1a32(data: bytes) -> int:
    h = 2166136261
    for b in data:
        h ^= b
        h = (h * 16777619) & 0xFFFFFFFF
    return h


def reference_embed(text: str, dim: int = 4096) -> list[float]:
    """Ten-line reference hasher for the built-in embedder."""
    norm_text = re.sub(r"\s+", " ", text.lower()).strip()
    if not norm_text:
        return [0.0] * dim
    padded = "^" + norm_text + "$"
    vec = [0.0] * dim
    for i in range(len(padded) - 2):
        vec[reference_fnv1a32(padded[i:i + 3].encode("utf-8")) % dim] += 1.0
    norm = math.sqrt(sum(v * v for v in vec))
    return [v / norm for v in vec]


def reference_cosine(u: list[float], v: list[float]) -> float:
    nu = math.sqrt(sum(x * x for x in u))
    nv = math.sqrt(sum(x * x for x in v))
    if nu == 0 or nv == 0:
        return 0.0
    return sum(a * b for a, b in zip(u, v)) / (nu * nv)


# --- brute-force scorer oracle ------------------------------------------------


def oracle_items(corpus: Corpus, kind: str) -> tuple[set, set]:
    """Materialize sense and argument item sets with independent code."""
    senses = set()
    args = set()
    for st in corpus.structures:
        sid = st.predicate.sentence_ref
        pr = (st.predicate.start, st.predicate.end)
        if st.predicate.sense_label is not None:
            senses.add((sid, pr, st.predicate.sense_label))
        for a in st.arguments:
            if a.link is LinkFlag.REFERENCE_TO:
                role = "R-" + a.role_label
            elif a.link is LinkFlag.CONTINUATION_OF:
                role = "C-" + a.role_label
            else:
                role = a.role_label
            if kind == "dep":
                args.add((sid, pr, a.start, role))
            elif kind == "span":
                args.add((sid, pr, a.start, a.end, role))
            elif kind == "framenet":
                args.add((sid, pr, a.start, a.end, role, st.predicate.sense_label))
            else:
                raise ValueError(kind)
    return senses, args


def oracle_prf(correct: int, predicted: int, gold: int):
    p = Fraction(correct, predicted) if predicted else Fraction(1)
    r = Fraction(correct, gold) if gold else Fraction(1)
    f1 = 2 * p * r / (p + r) if p + r else Fraction(0)
    return p, r, f1


def oracle_report(gold: Corpus, pred: Corpus, kind: str):
    """Set-intersection scorer: returns ((P, R, F1), totals, per-category)."""
    gs, ga = oracle_items(gold, kind)
    ps, pa = oracle_items(pred, kind)
    c = len(gs & ps) + len(ga & pa)
    predicted = len(ps) + len(pa)
    total_gold = len(gs) + len(ga)
    return (
        oracle_prf(c, predicted, total_gold),
        (c, predicted, total_gold),
        {
            "sense": (len(gs & ps), len(ps), len(gs)),
            "argument": (len(ga & pa), len(pa), len(ga)),
        },
    )


# --- independent CoNLL-2009 fixture emitter -----------------------------------


def emit_conll2009(sentences: list[dict]) -> str:
    """Write CoNLL-2009 columns from a plain description of the content.

    Each sentence dict has ``tokens`` and ``preds``; each pred is
    ``(token_index, lemma, sense_or_None, {token_index: surface_role})``.
    """
    out = []
    for sent in sentences:
        tokens = sent["tokens"]
        preds = sent["preds"]
        for i, tok in enumerate(tokens):
            cols = [str(i + 1), tok, "_", "_", "_", "_", "_", "_", "_", "_", "_", "_", "_", "_"]
            for (pidx, lemma, sense, _) in preds:
                if pidx == i:
                    cols[3] = lemma
                    cols[12] = "Y"
                    cols[13] = sense if sense is not None else "_"
            for (_, _, _, roles) in preds:
                cols.append(roles.get(i, "_"))
            out.append("\t".join(cols))
        out.append("")
    return "".join(line + "\n" for line in out)


# --- fuzz generators ----------------------------------------------------------

_BASE_WORDS = [
    "river", "stone", "light", "meadow", "harbor", "signal", "copper", "forest",
    "window", "garden", "anchor", "basket", "candle", "donkey", "engine", "fabric",
    "glacier", "hammer", "island", "jacket", "kettle", "ladder", "magnet", "needle",
    "orchard", "pillow", "quarry", "ribbon", "saddle", "timber", "urchin", "valley",
    "walnut", "xylem", "yonder", "zephyr", "breeze", "cliff", "drum", "ember",
]

_DEF_WORDS = [
    "entity", "moving", "quickly", "slowly", "thing", "acting", "cause", "effect",
    "place", "manner", "holder", "target", "source", "agent", "patient", "item",
    "changed", "created", "removed", "observed", "carried", "spoken", "heard",
]

BRACKET_DECORATIONS = ["[", "]", "{", "}", "[]", "{}", "\\"]


def make_vocab() -> list[str]:
    return [f"{w}{i}" for i in range(12) for w in _BASE_WORDS]


def fuzz_inventory(rng: random.Random, style: Style, lemmas: int = 8) -> Inventory:
    """A random inventory with globally distinct definitions so verbatim
    retrieval is unambiguous."""
    entries: dict[tuple[str, str], SenseEntry] = {}
    used_defs: set[str] = set()

    def fresh_definition(tag: str) -> str:
        while True:
            words = rng.sample(_DEF_WORDS, rng.randint(2, 4))
            candidate = " ".join(words) + f" {tag}"
            if candidate not in used_defs:
                used_defs.add(candidate)
                return candidate

    modifiers = dict(CONLL2009_MODIFIERS) if style is Style.PROPBANK else {}
    used_defs.update(modifiers.values())
    for li in range(lemmas):
        lemma = f"lemma{li}"
        for si in range(rng.randint(1, 3)):
            sense_id = f"{lemma}.{si + 1:02d}" if style is Style.PROPBANK else f"Frame_{li}_{si}"
            role_labels = (
                [f"A{k}" for k in range(rng.randint(1, 4))]
                if style is Style.PROPBANK
                else [f"Role{li}{si}{k}" for k in range(rng.randint(1, 4))]
            )
            entries[(lemma, sense_id)] = SenseEntry(
                lemma=lemma,
                sense_id=sense_id,
                definition=fresh_definition(f"s{li}{si}"),
                roles={r: fresh_definition(f"r{li}{si}{r}") for r in role_labels},
            )
    return Inventory(style=style, entries=entries, modifiers=modifiers)


def random_sentence(
    rng: random.Random,
    sid: str,
    vocab: list[str],
    min_tokens: int = 5,
    max_tokens: int = 14,
    decorate: bool = True,
    doc_id: str | None = None,
) -> Sentence:
    n = rng.randint(min_tokens, max_tokens)
    words = rng.sample(vocab, n)
    if decorate and rng.random() < 0.3:
        i = rng.randrange(n)
        words[i] = words[i] + rng.choice(BRACKET_DECORATIONS)
    return Sentence(tokens=tuple(words), sentence_id=sid, doc_id=doc_id)


def random_structure(
    rng: random.Random,
    sent: Sentence,
    inv: Inventory,
    formalism: Formalism,
    with_links: bool = True,
) -> AnnotatedStructure:
    n = len(sent)
    keys = sorted(inv.entries)
    lemma, sense_id = keys[rng.randrange(len(keys))]
    entry = inv.entries[(lemma, sense_id)]
    pred_width = 1 if n < 4 else rng.choice((1, 1, 1, 2))
    pred_start = rng.randrange(n - pred_width + 1)
    pred_end = pred_start + pred_width - 1
    shown_lemma = lemma.capitalize() if rng.random() < 0.15 else lemma
    predicate = PredicateInstance(
        sentence_ref=sent.sentence_id,
        start=pred_start,
        end=pred_end,
        lemma=shown_lemma,
        sense_label=sense_id,
        style=inv.style,
    )
    free = [i for i in range(n) if not (pred_start <= i <= pred_end)]
    rng.shuffle(free)
    role_pool = list(entry.roles) + list(inv.modifiers)
    used = set()
    spans = []
    for start in free:
        if len(spans) >= 4 or rng.random() < 0.35:
            continue
        max_width = 1 if formalism is Formalism.DEPENDENCY else rng.randint(1, 3)
        end = start
        while (
            end - start + 1 < max_width
            and end + 1 < n
            and end + 1 not in used
            and not (pred_start <= end + 1 <= pred_end)
        ):
            end += 1
        if any(i in used for i in range(start, end + 1)):
            continue
        used.update(range(start, end + 1))
        link = LinkFlag.NONE
        if with_links and rng.random() < 0.12:
            link = rng.choice((LinkFlag.REFERENCE_TO, LinkFlag.CONTINUATION_OF))
        spans.append(
            Argument(
                start=start,
                end=end,
                role_label=role_pool[rng.randrange(len(role_pool))],
                link=link,
            )
        )
    spans.sort(key=lambda a: a.start)
    return AnnotatedStructure(predicate=predicate, arguments=tuple(spans), formalism=formalism)


def random_corpus(
    rng: random.Random,
    inv: Inventory,
    formalism: Formalism,
    n_sentences: int = 3,
    vocab: list[str] | None = None,
    with_docs: bool = False,
    decorate: bool = True,
) -> Corpus:
    vocab = vocab or make_vocab()
    sentences = []
    structures = []
    for i in range(n_sentences):
        doc = f"d{i % 2}" if with_docs and rng.random() < 0.7 else None
        sent = random_sentence(rng, f"s{i}", vocab, decorate=decorate, doc_id=doc)
        sentences.append(sent)
        for _ in range(rng.randint(0, 3)):
            structures.append(random_structure(rng, sent, inv, formalism))
    return Corpus(tuple(sentences), tuple(structures), provenance="fuzz")


def mutate_predictions(rng: random.Random, gold: Corpus, inv: Inventory) -> Corpus:
    """A predicted corpus: same sentences and predicate anchors, senses and
    arguments perturbed."""
    structures = []
    for st in gold.structures:
        if rng.random() < 0.15:
            continue  # predicate missed entirely
        sense = st.predicate.sense_label
        roll = rng.random()
        if roll < 0.15:
            sense = None
        elif roll < 0.35:
            others = sorted(
                s for (lem, s) in inv.entries if lem == st.predicate.lemma.lower()
            )
            sense = rng.choice(others) if others else sense
        predicate = PredicateInstance(
            sentence_ref=st.predicate.sentence_ref,
            start=st.predicate.start,
            end=st.predicate.end,
            lemma=st.predicate.lemma,
            sense_label=sense,
            style=st.predicate.style,
        )
        sent = gold.sentence(st.predicate.sentence_ref)
        args = []
        used = set()
        for a in st.arguments:
            roll = rng.random()
            if roll < 0.2:
                continue  # dropped argument
            start, end = a.start, a.end
            if roll < 0.4 and st.formalism is Formalism.SPAN and end + 1 < len(sent):
                end += 1  # boundary error
            role = a.role_label
            if roll < 0.55:
                role = "A9"  # label error
            if any(i in used for i in range(start, end + 1)):
                continue
            if start <= predicate.end and predicate.start <= end:
                continue
            used.update(range(start, end + 1))
            args.append(Argument(start=start, end=end, role_label=role, link=a.link))
        args.sort(key=lambda a: a.start)
        structures.append(
            AnnotatedStructure(predicate=predicate, arguments=tuple(args), formalism=st.formalism)
        )
    return Corpus(gold.sentences, tuple(structures), provenance="mutated")
