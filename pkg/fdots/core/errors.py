"""
Error Hierarchy

Every library failure raises an ``FdoError`` subclass carrying a stable ``kind``
string. The CLI maps kinds to exit codes; library code never exits.
"""

from typing import Any, Iterable, List, Optional


class FdoError(Exception):
    """Base class for all fdots errors."""

    kind = "fdo-error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def __repr__(self) -> str:
        return f"<{type(self).__name__} kind={self.kind} message={str(self)!r}>"


class InvalidPrefixError(FdoError, ValueError):
    kind = "invalid-prefix"


class InvalidPidError(FdoError, ValueError):
    kind = "invalid-pid"


class NotFoundError(FdoError):
    """A PID does not resolve."""

    kind = "not-found"

    def __init__(self, pid: Any, where: Optional[str] = None):
        location = f" in {where}" if where else ""
        super().__init__(f"PID '{pid}' not found{location}", pid=pid, where=where)
        self.pid = pid


class DuplicatePidError(FdoError):
    kind = "duplicate-pid"

    def __init__(self, pid: Any):
        super().__init__(f"PID '{pid}' is already bound", pid=pid)
        self.pid = pid


class ValidationFailedError(FdoError):
    """Raised when a component fails record validation on registration."""

    kind = "validation-failed"

    def __init__(self, pid: Any, violations: Iterable[Any]):
        self.violations: List[Any] = list(violations)
        summary = ", ".join(str(v) for v in self.violations)
        super().__init__(f"Component '{pid}' failed validation: {summary}", pid=pid)
        self.pid = pid


class UnresolvedProfileError(FdoError):
    kind = "unresolved-profile"


class UnknownPidError(FdoError):
    kind = "unknown-pid"

    def __init__(self, pid: Any):
        super().__init__(f"PID '{pid}' is not part of the ecosystem", pid=pid)
        self.pid = pid


class KindMismatchError(FdoError):
    kind = "kind-mismatch"

    def __init__(self, pid: Any, expected: str, actual: str):
        super().__init__(
            f"PID '{pid}' is a {actual}, expected a {expected}",
            pid=pid,
            expected=expected,
            actual=actual,
        )
        self.pid = pid


class UnexpressibleTargetSetError(FdoError):
    """The profile model cannot express the requested FDO set."""

    kind = "unexpressible-target-set"

    def __init__(self, uncovered: Iterable[Any]):
        self.uncovered = sorted(uncovered)
        super().__init__(
            "Target set is not a union of existing profile classes; "
            f"uncovered FDOs: {', '.join(str(p) for p in self.uncovered)}"
        )


class ModelMismatchError(FdoError):
    """Requested operation set differs from the set the model implies."""

    kind = "model-mismatch"

    def __init__(self, requested: Iterable[Any], implied: Iterable[Any]):
        self.requested = sorted(requested)
        self.implied = sorted(implied)
        super().__init__(
            f"Requested operations {[str(p) for p in self.requested]} differ from "
            f"model-implied set {[str(p) for p in self.implied]}"
        )


class DanglingReferenceError(FdoError):
    kind = "dangling-reference"

    def __init__(self, pid: Any, referenced_by: Any = None):
        origin = f" (referenced by '{referenced_by}')" if referenced_by else ""
        super().__init__(f"Reference to unknown PID '{pid}'{origin}", pid=pid)
        self.pid = pid


class EmptySampleError(FdoError):
    kind = "empty-sample"


class ModelUnsetError(FdoError):
    kind = "model-unset"


class CodecError(FdoError):
    kind = "codec-error"


class ConfigurationError(FdoError):
    kind = "configuration-error"
