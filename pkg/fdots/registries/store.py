"""
Registry Store

Local stand-in for the handle, profile, operation and attribute-type registries.
Each namespace is one line-delimited file under the store root; every
successful write appends one line to ``writes.log``.
"""

import logging
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from threading import Lock
from typing import Dict, Iterable, List, Optional, Union

from fdots.core.errors import (
    ConfigurationError,
    DuplicatePidError,
    KindMismatchError,
    ModelUnsetError,
    NotFoundError,
    UnresolvedProfileError,
    ValidationFailedError,
)
from fdots.core.model import (
    AssociationModel,
    AttributeDefinition,
    Component,
    Ecosystem,
    InformationRecord,
    Profile,
    PROFILE_REF_KEY,
    RecordKind,
)
from fdots.core.pid import Pid, PidMinter
from fdots.core.validation import Violation, ViolationKind, validate_component
from fdots.registries.codec import DEFINITION_KIND, Namespace, decode_line, encode_component
from fdots.utils.config_loader import ConfigLoader

logger = logging.getLogger(__name__)

MANIFEST_NAME = "store.yaml"
WRITE_LOG_NAME = "writes.log"
STORE_FORMAT_VERSION = 1
MANIFEST_SCHEMA = {"required": ["format_version"], "optional": ["model"]}

_KIND_BY_NAMESPACE = {
    Namespace.HANDLES: RecordKind.DATA_FDO.value,
    Namespace.PROFILES: RecordKind.PROFILE.value,
    Namespace.OPERATIONS: RecordKind.OPERATION_FDO.value,
    Namespace.ATTRIBUTE_DEFS: DEFINITION_KIND,
}


@dataclass(frozen=True)
class WriteLogEntry:
    """One line of ``writes.log``."""

    timestamp: str
    namespace: str
    pid: str
    action: str

    def to_line(self) -> str:
        return f"{self.timestamp}\t{self.namespace}\t{self.pid}\t{self.action}"

    @classmethod
    def parse(cls, line: str) -> "WriteLogEntry":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 4:
            raise ValueError(f"Malformed write-log line: {line!r}")
        return cls(*parts)


class RegistryStore:
    """
    Thread-safe registry store rooted at a directory.

    Resolves are served from memory; writes are serialized by a lock and
    reach disk before they return. Registration appends a line to the
    namespace file, update rewrites the file atomically.

    Example:
        >>> store = RegistryStore("/tmp/fdo-store", model="record")
        >>> pid = store.register(definition)
        >>> store.resolve(pid) == definition
        True
    """

    def __init__(
        self,
        root_path: Union[str, Path],
        model: Optional[Union[str, AssociationModel]] = None,
    ):
        """
        Open (or create) a store.

        Args:
            root_path: Store directory, created when missing
            model: Association model; required when the manifest has none

        Raises:
            ConfigurationError: If ``model`` disagrees with the stored manifest
        """
        self.root_path = Path(root_path)
        self.root_path.mkdir(parents=True, exist_ok=True)
        self._lock = Lock()
        self._components: Dict[Pid, Component] = {}
        self._namespace_of: Dict[Pid, Namespace] = {}
        self._lines: Dict[Namespace, Dict[Pid, str]] = {ns: {} for ns in Namespace}
        self._defs_by_key: Dict[str, AttributeDefinition] = {}

        self.model: Optional[AssociationModel] = self._read_manifest()
        if model is not None:
            requested = AssociationModel.parse(model)
            if self.model is not None and self.model is not requested:
                raise ConfigurationError(
                    f"Store at {self.root_path} uses the {self.model.value} model, "
                    f"not {requested.value}"
                )
            if self.model is None:
                self.set_model(requested)

        self._load()
        self._write_count = len(self._read_log_lines())
        logger.info(f"Opened store {self.root_path} ({len(self)} components)")

    # Paths and manifest

    @property
    def manifest_path(self) -> Path:
        return self.root_path / MANIFEST_NAME

    @property
    def log_path(self) -> Path:
        return self.root_path / WRITE_LOG_NAME

    def namespace_path(self, namespace: Namespace) -> Path:
        return self.root_path / namespace.filename

    def _read_manifest(self) -> Optional[AssociationModel]:
        if not self.manifest_path.exists():
            return None
        loader = ConfigLoader(base_path=self.root_path)
        manifest = loader.load(MANIFEST_NAME)
        loader.validate(manifest, MANIFEST_SCHEMA)
        model = manifest.get("model")
        return AssociationModel.parse(model) if model else None

    def set_model(self, model: Union[str, AssociationModel]) -> None:
        """Record the association model in the store manifest."""
        self.model = AssociationModel.parse(model)
        manifest = {"format_version": STORE_FORMAT_VERSION, "model": self.model.value}
        ConfigLoader(base_path=self.root_path).save(manifest, MANIFEST_NAME)
        logger.info(f"Store {self.root_path} set to {self.model.value} model")

    def _load(self) -> None:
        for namespace in Namespace:
            path = self.namespace_path(namespace)
            if not path.exists():
                continue
            with open(path, "r", encoding="utf-8", newline="\n") as f:
                for line in f:
                    line = line.rstrip("\n")
                    if not line:
                        continue
                    component = decode_line(line)
                    self._index(component, namespace, line)

    def _index(self, component: Component, namespace: Namespace, line: str) -> None:
        self._components[component.pid] = component
        self._namespace_of[component.pid] = namespace
        self._lines[namespace][component.pid] = line
        if isinstance(component, AttributeDefinition):
            self._defs_by_key[component.key] = component

    # Read access

    def resolve(self, pid: Union[str, Pid]) -> Component:
        """
        Resolve a PID to its stored component.

        Raises:
            NotFoundError: If the PID is not registered
        """
        pid = Pid.parse(pid)
        component = self._components.get(pid)
        if component is None:
            raise NotFoundError(pid, where=str(self.root_path))
        return component

    def resolve_raw(self, pid: Union[str, Pid]) -> str:
        """Stored line for ``pid``, byte-identical to the last write."""
        pid = Pid.parse(pid)
        namespace = self._namespace_of.get(pid)
        if namespace is None:
            raise NotFoundError(pid, where=str(self.root_path))
        return self._lines[namespace][pid]

    def definition_for_key(self, key: str) -> Optional[AttributeDefinition]:
        return self._defs_by_key.get(key)

    def profile(self, pid: Pid) -> Optional[Profile]:
        component = self._components.get(pid)
        return component if isinstance(component, Profile) else None

    def kind_of(self, pid: Pid) -> Optional[str]:
        namespace = self._namespace_of.get(pid)
        return _KIND_BY_NAMESPACE[namespace] if namespace else None

    def namespace_of(self, pid: Pid) -> Optional[Namespace]:
        return self._namespace_of.get(pid)

    def pids(self, namespace: Optional[Namespace] = None) -> List[Pid]:
        if namespace is None:
            return sorted(self._components)
        return sorted(self._lines[namespace])

    def find_by_suffix(self, suffix: str) -> List[Pid]:
        """PIDs whose suffix equals ``suffix``."""
        return sorted(pid for pid in self._components if pid.suffix == suffix)

    def __contains__(self, pid) -> bool:
        try:
            return Pid.parse(pid) in self._components
        except ValueError:
            return False

    def __len__(self) -> int:
        return len(self._components)

    # Writes

    def register(
        self,
        component: Component,
        namespace: Optional[Union[str, Namespace]] = None,
        validate: bool = True,
    ) -> Pid:
        """
        Register a new component.

        Args:
            component: Record, profile, operation, or attribute definition
            namespace: Target namespace; derived from the component type when omitted
            validate: Run record validation before writing

        Returns:
            Pid: The registered PID

        Raises:
            DuplicatePidError: If the PID is already bound
            KindMismatchError: If ``namespace`` does not fit the component type
            ValidationFailedError: If the component fails validation
        """
        namespace = self._check_namespace(component, namespace)
        with self._lock:
            if component.pid in self._components:
                raise DuplicatePidError(component.pid)
            if validate:
                self._validate(component)
            line = encode_component(component)
            with open(self.namespace_path(namespace), "a", encoding="utf-8", newline="\n") as f:
                f.write(line + "\n")
            self._index(component, namespace, line)
            self._log(namespace, component.pid, "register")
        logger.debug(f"Registered {component.pid} in {namespace.value}")
        return component.pid

    def update(self, pid: Union[str, Pid], component: Component, validate: bool = True) -> None:
        """
        Replace the stored content of ``pid`` (last write wins).

        Raises:
            NotFoundError: If ``pid`` is not registered
            KindMismatchError: If the component belongs to another namespace
            ValidationFailedError: If the new content fails validation
        """
        pid = Pid.parse(pid)
        if component.pid != pid:
            raise ValueError(f"Component PID {component.pid} does not match {pid}")
        with self._lock:
            namespace = self._namespace_of.get(pid)
            if namespace is None:
                raise NotFoundError(pid, where=str(self.root_path))
            self._check_namespace(component, namespace)
            if validate:
                self._validate(component)
            line = encode_component(component)
            lines = dict(self._lines[namespace])
            lines[pid] = line
            self._rewrite(namespace, lines.values())
            self._index(component, namespace, line)
            self._log(namespace, pid, "update")
        logger.debug(f"Updated {pid} in {namespace.value}")

    def apply_update(self, report) -> int:
        """
        Persist an engine update report: registrations first, then updates.

        Returns:
            int: Number of update writes performed
        """
        for component in report.registrations:
            self.register(component)
        for component in report.updates:
            self.update(component.pid, component)
        return len(report.updates)

    def _check_namespace(
        self, component: Component, namespace: Optional[Union[str, Namespace]]
    ) -> Namespace:
        if isinstance(component, InformationRecord) and component.kind is not RecordKind.DATA_FDO:
            raise KindMismatchError(component.pid, RecordKind.DATA_FDO.value, component.kind.value)
        expected = Namespace.for_component(component)
        if namespace is None:
            return expected
        namespace = Namespace(namespace) if isinstance(namespace, str) else namespace
        if namespace is not expected:
            raise KindMismatchError(component.pid, expected.value, namespace.value)
        return namespace

    def _validate(self, component: Component) -> None:
        try:
            violations = validate_component(component, self)
        except UnresolvedProfileError as e:
            violations = [
                Violation(ViolationKind.DANGLING_REFERENCE.value, str(component.pid), PROFILE_REF_KEY, str(e))
            ]
        if violations:
            raise ValidationFailedError(component.pid, violations)

    def _rewrite(self, namespace: Namespace, lines: Iterable[str]) -> None:
        path = self.namespace_path(namespace)
        fd, tmp = tempfile.mkstemp(dir=self.root_path, prefix=f".{namespace.value}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
                for line in lines:
                    f.write(line + "\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _log(self, namespace: Namespace, pid: Pid, action: str) -> None:
        entry = WriteLogEntry(
            datetime.now(timezone.utc).isoformat(), namespace.value, str(pid), action
        )
        with open(self.log_path, "a", encoding="utf-8", newline="\n") as f:
            f.write(entry.to_line() + "\n")
        self._write_count += 1

    # Write log

    def _read_log_lines(self) -> List[str]:
        if not self.log_path.exists():
            return []
        with open(self.log_path, "r", encoding="utf-8") as f:
            return [line for line in f if line.strip()]

    @property
    def write_log(self) -> List[WriteLogEntry]:
        entries = []
        for line in self._read_log_lines():
            try:
                entries.append(WriteLogEntry.parse(line))
            except ValueError:
                logger.warning(f"Skipping malformed write-log line in {self.log_path}: {line!r}")
        return entries

    @property
    def write_count(self) -> int:
        return self._write_count

    def count_actions(self, action: str) -> int:
        return sum(1 for entry in self.write_log if entry.action == action)

    # Snapshots

    def snapshot(self) -> Ecosystem:
        """
        Build an Ecosystem from the current store content.

        Raises:
            ModelUnsetError: If the store has no association model
        """
        if self.model is None:
            raise ModelUnsetError(f"Store at {self.root_path} has no association model")
        return Ecosystem.from_components(self.model, self._components.values())

    def minter(self) -> PidMinter:
        """A PID minter that skips every PID bound in this store."""
        return PidMinter(used=self._components)

    def get_stats(self) -> Dict[str, object]:
        stats: Dict[str, object] = {ns.value: len(self._lines[ns]) for ns in Namespace}
        stats["model"] = self.model.value if self.model else None
        stats["writes"] = self._write_count
        return stats

    def __repr__(self) -> str:
        model = self.model.value if self.model else "unset"
        return f"<RegistryStore root={self.root_path} model={model} components={len(self)}>"

