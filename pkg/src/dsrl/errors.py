"""Exception hierarchy shared by all toolkit modules.

Every error carries a stable ``category`` string so the CLI and the service
can report failures in a machine-parsable way.
"""

from __future__ import annotations


class DsrlError(Exception):
    """Base class for all toolkit errors."""

    category = "error"


class FormatError(DsrlError):
    """Input document does not match the expected file format."""

    category = "format-error"


class ValidationError(DsrlError):
    """A domain invariant would be violated by the constructed value."""

    category = "invariant-error"


class AlignmentError(DsrlError):
    """Gold and predicted corpora cannot be aligned for scoring."""

    category = "alignment-error"


class DefinitionLookupError(DsrlError):
    """A sense or role label has no definition in the inventory."""

    category = "lookup-error"


class BackendError(DsrlError):
    """A remote embedding or generation backend failed at transport level."""

    category = "backend-error"


class ProtocolError(DsrlError):
    """A remote backend answered with a malformed or inconsistent response."""

    category = "protocol-error"


class ContractError(DsrlError):
    """A caller violated an API precondition."""

    category = "contract-error"
