"""
Persistent Identifier Module

Handle-style ``prefix/suffix`` identifiers and a deterministic minter.
"""

import logging
from dataclasses import dataclass
from threading import Lock
from typing import Dict, Iterable, Optional, Set, Union

from fdots.core.errors import InvalidPidError, InvalidPrefixError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Pid:
    """
    Persistent identifier of any ecosystem component.

    Attributes:
        value: Full identifier string ``<prefix>/<suffix>``
    """

    value: str

    def __post_init__(self):
        if not isinstance(self.value, str) or not self.value:
            raise InvalidPidError(f"PID must be a non-empty string, got {self.value!r}")
        prefix, sep, suffix = self.value.partition("/")
        if not sep or not prefix or not suffix:
            raise InvalidPidError(f"PID '{self.value}' is not of the form <prefix>/<suffix>")
        if any(ch in self.value for ch in "\t\n\r"):
            raise InvalidPidError(f"PID '{self.value}' contains control characters")

    @property
    def prefix(self) -> str:
        return self.value.partition("/")[0]

    @property
    def suffix(self) -> str:
        return self.value.partition("/")[2]

    @classmethod
    def parse(cls, value: Union[str, "Pid"]) -> "Pid":
        """Coerce a string (or an existing Pid) into a Pid."""
        if isinstance(value, Pid):
            return value
        return cls(value)

    def __str__(self) -> str:
        return self.value


def validate_prefix(prefix: str) -> str:
    """
    Check a PID prefix.

    Raises:
        InvalidPrefixError: If prefix is empty or contains '/'
    """
    if not isinstance(prefix, str) or not prefix:
        raise InvalidPrefixError("PID prefix cannot be empty")
    if "/" in prefix:
        raise InvalidPrefixError(f"PID prefix '{prefix}' must not contain '/'")
    if any(ch.isspace() for ch in prefix):
        raise InvalidPrefixError(f"PID prefix '{prefix}' must not contain whitespace")
    return prefix


class PidMinter:
    """
    Thread-safe deterministic PID minter.

    Each prefix has its own monotone counter; suffixes are zero-padded to four
    digits. PIDs already in use are skipped, so minting never collides with
    components loaded from a store.

    Example:
        >>> minter = PidMinter()
        >>> str(minter.mint("21.T"))
        '21.T/0001'
    """

    def __init__(self, used: Optional[Iterable[Pid]] = None, start: int = 1):
        """
        Initialize minter.

        Args:
            used: PIDs that are already bound
            start: First counter value for every prefix
        """
        self._used: Set[Pid] = set(used or ())
        self._counters: Dict[str, int] = {}
        self._start = start
        self._lock = Lock()

    def mint(self, prefix: str) -> Pid:
        """
        Mint a fresh PID under ``prefix``.

        Raises:
            InvalidPrefixError: If the prefix is malformed
        """
        validate_prefix(prefix)
        with self._lock:
            counter = self._counters.get(prefix, self._start)
            while True:
                candidate = Pid(f"{prefix}/{counter:04d}")
                counter += 1
                if candidate not in self._used:
                    break
            self._counters[prefix] = counter
            self._used.add(candidate)
        logger.debug(f"Minted PID {candidate}")
        return candidate

    def reserve(self, pid: Pid) -> None:
        """Mark an externally chosen PID as used."""
        with self._lock:
            self._used.add(pid)

    def is_used(self, pid: Pid) -> bool:
        with self._lock:
            return pid in self._used

    def __len__(self) -> int:
        with self._lock:
            return len(self._used)

    def __repr__(self) -> str:
        return f"<PidMinter used={len(self)} prefixes={sorted(self._counters)}>"


def mint_pid(prefix: str, minter: Optional[PidMinter] = None) -> Pid:
    """
    Mint a PID, using a throwaway minter when none is given.

    Example:
        >>> str(mint_pid("21.T"))
        '21.T/0001'
    """
    return (minter or PidMinter()).mint(prefix)
