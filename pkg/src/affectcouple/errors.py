"""Exception hierarchy shared by all affectcouple modules.

Every error carries a stable machine-readable ``code`` so the CLI can emit
``error[CODE]:`` prefixes and the HTTP service can map errors to ApiError
payloads without string matching.
"""

from __future__ import annotations


class AffectCoupleError(Exception):
    """Base class for all domain errors."""

    code = "ERROR"


class ValidationError(AffectCoupleError):
    """A value violates a domain invariant."""

    code = "VALIDATION"


class RangeError(ValidationError):
    """A numeric field is outside its allowed range."""

    code = "RANGE"

    def __init__(self, field: str, value: object, bounds: str = "[1,9]"):
        self.field = field
        self.value = value
        super().__init__(f"{field} out of {bounds}: {value!r}")


class FormatError(AffectCoupleError):
    """A file or payload does not match its documented grammar."""

    code = "FORMAT"

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class VersionError(FormatError):
    """An on-disk corpus file declares an unsupported format version."""

    code = "VERSION"


class DuplicateIdError(AffectCoupleError):
    """Two documents claim the same identifier."""

    code = "DUPLICATE"

    def __init__(self, doc_id: str, first_line: int | None = None, second_line: int | None = None):
        self.doc_id = doc_id
        self.first_line = first_line
        self.second_line = second_line
        where = ""
        if first_line is not None and second_line is not None:
            where = f" (lines {first_line} and {second_line})"
        super().__init__(f"duplicate document id {doc_id!r}{where}")


class UnknownTermError(AffectCoupleError):
    """A descriptor does not resolve to any taxonomy node."""

    code = "UNKNOWN_TERM"

    def __init__(self, term: str, line: int | None = None):
        self.term = term
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown taxonomy term {term!r}{where}")


class UnknownIdError(AffectCoupleError):
    """A document or session id is not known."""

    code = "UNKNOWN_ID"

    def __init__(self, kind: str, value: str):
        self.kind = kind
        self.value = value
        super().__init__(f"unknown {kind} {value!r}")


class UnannotatedDocumentError(AffectCoupleError):
    """An operation that needs a rating was given an unannotated document."""

    code = "UNANNOTATED"

    def __init__(self, doc_id: str):
        self.doc_id = doc_id
        super().__init__(f"unannotated document {doc_id!r}")


class NoReferenceAnnotationsError(AffectCoupleError):
    """The corpus holds no annotated documents to estimate from."""

    code = "NO_REFERENCE"

    def __init__(self) -> None:
        super().__init__("no reference annotations in corpus")


class SessionClosedError(AffectCoupleError):
    """Feedback was applied to a session in a terminal state."""

    code = "SESSION_CLOSED"

    def __init__(self, session_id: str, state: str):
        self.session_id = session_id
        self.state = state
        super().__init__(f"session closed: {session_id} is {state}")


class ConflictError(AffectCoupleError):
    """A commit races another writer on the same document."""

    code = "CONFLICT"
