"""Special-token surface forms used by the sequence codec (bit-exact)."""

PREDICATE_START = "<p>"
PREDICATE_END = "</p>"
REFERENCE_TO = "<reference-to>"
CONTINUATION_OF = "<continuation-of>"
PROPBANK = "<propbank>"
FRAMENET = "<framenet>"
SPAN_SRL = "<span-srl>"
DEP_SRL = "<dep-srl>"

RESERVED_MARKERS = (
    PREDICATE_START,
    PREDICATE_END,
    REFERENCE_TO,
    CONTINUATION_OF,
    PROPBANK,
    FRAMENET,
    SPAN_SRL,
    DEP_SRL,
)
