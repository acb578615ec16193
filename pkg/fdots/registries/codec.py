"""
Line Codec

One component per line::

    <pid> TAB <kind> TAB <field>=<value>;<field>=<value>;...

Record attributes are fields named ``@<key>`` and keep their order; duplicate
keys are allowed. Backslash, tab, newline, ``;`` and ``=`` are escaped inside
pids, field names and values. List values join their items with ``|``; inside
an item backslash and ``|`` are backslash-escaped and an empty item is ``\e``.
"""

from enum import Enum
from typing import List, Tuple

from fdots.core.errors import CodecError
from fdots.core.model import (
    AttributeDefinition,
    Component,
    InformationRecord,
    LIST_SEPARATOR,
    OPERATION_LIST_KEY,
    OperationSpec,
    Profile,
    RecordKind,
    REQUIRED_INPUT_KEY,
    RequiredInput,
    RestrictionKind,
    ValueRestriction,
)
from fdots.core.pid import Pid

DEFINITION_KIND = "attribute-definition"
ATTRIBUTE_PREFIX = "@"

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", ";": "\\;", "=": "\\="}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", ";": ";", "=": "="}


class Namespace(Enum):
    """Registry namespaces, one file each."""
    HANDLES = "handles"
    PROFILES = "profiles"
    OPERATIONS = "operations"
    ATTRIBUTE_DEFS = "attribute_defs"

    @property
    def filename(self) -> str:
        return f"{self.value}.ndrec"

    @classmethod
    def for_component(cls, component: Component) -> "Namespace":
        if isinstance(component, InformationRecord):
            return cls.HANDLES
        if isinstance(component, Profile):
            return cls.PROFILES
        if isinstance(component, OperationSpec):
            return cls.OPERATIONS
        if isinstance(component, AttributeDefinition):
            return cls.ATTRIBUTE_DEFS
        raise TypeError(f"Unsupported component type: {type(component).__name__}")


def escape(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def unescape(text: str) -> str:
    out = []
    chars = iter(text)
    for ch in chars:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(chars, None)
        if nxt not in _UNESCAPES:
            raise CodecError(f"Invalid escape sequence '\\{nxt or ''}' in {text!r}")
        out.append(_UNESCAPES[nxt])
    return "".join(out)


def _split_unescaped(text: str, separator: str, maxsplit: int = -1) -> List[str]:
    """Split at separators not preceded by an escaping backslash; segments stay escaped."""
    parts, current = [], []
    escaped = False
    for ch in text:
        if escaped:
            current.append(ch)
            escaped = False
        elif ch == "\\":
            current.append(ch)
            escaped = True
        elif ch == separator and maxsplit != 0:
            parts.append("".join(current))
            current = []
            maxsplit -= 1
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


_LIST_ESCAPES = {"\\": "\\\\", LIST_SEPARATOR: "\\" + LIST_SEPARATOR}
_EMPTY_ITEM = "\\e"


def _escape_item(item: str) -> str:
    if not item:
        return _EMPTY_ITEM
    return "".join(_LIST_ESCAPES.get(ch, ch) for ch in item)


def _unescape_item(item: str) -> str:
    if item == _EMPTY_ITEM:
        return ""
    out = []
    chars = iter(item)
    for ch in chars:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(chars, None)
        if nxt not in ("\\", LIST_SEPARATOR):
            raise CodecError(f"Invalid list escape '\\{nxt or ''}' in {item!r}")
        out.append(nxt)
    return "".join(out)


def _join_list(items: List[str]) -> str:
    return LIST_SEPARATOR.join(_escape_item(item) for item in items)


def _split_list(value: str) -> List[str]:
    if not value:
        return []
    return [_unescape_item(item) for item in _split_unescaped(value, LIST_SEPARATOR)]


def _fields_of(component: Component) -> Tuple[str, List[Tuple[str, str]]]:
    if isinstance(component, InformationRecord):
        fields = [(ATTRIBUTE_PREFIX + a.key, a.value) for a in component.attributes]
        if component.payload_ref is not None:
            fields.append(("payload", component.payload_ref))
        return component.kind.value, fields

    if isinstance(component, Profile):
        fields = [
            ("mandatory", _join_list(sorted(component.mandatory_keys))),
            ("optional", _join_list(sorted(component.optional_keys))),
        ]
        if component.operation_list:
            ops = _join_list([str(p) for p in component.operation_list])
            fields.append((ATTRIBUTE_PREFIX + OPERATION_LIST_KEY, ops))
        return RecordKind.PROFILE.value, fields

    if isinstance(component, OperationSpec):
        fields = [(ATTRIBUTE_PREFIX + REQUIRED_INPUT_KEY, r.encode()) for r in component.required_inputs]
        if component.executor_ref:
            fields.append(("executor", component.executor_ref))
        return RecordKind.OPERATION_FDO.value, fields

    if isinstance(component, AttributeDefinition):
        restriction = component.restriction
        fields = [("key", component.key), ("restriction", restriction.kind.value)]
        if restriction.kind is RestrictionKind.ENUM:
            fields.append(("values", _join_list(sorted(restriction.allowed))))
        if restriction.target is not None:
            fields.append(("target", restriction.target.value))
        return DEFINITION_KIND, fields

    raise CodecError(f"Cannot encode {type(component).__name__}")


def encode_component(component: Component) -> str:
    """Serialize a component to one line (without the trailing newline)."""
    kind, fields = _fields_of(component)
    body = ";".join(f"{escape(name)}={escape(value)}" for name, value in fields)
    return f"{escape(str(component.pid))}\t{kind}\t{body}"


def decode_line(line: str) -> Component:
    """
    Parse one stored line back into a component.

    Raises:
        CodecError: If the line is malformed
    """
    line = line.rstrip("\n")
    parts = _split_unescaped(line, "\t")
    if len(parts) != 3:
        raise CodecError(f"Expected 3 tab-separated columns, got {len(parts)}: {line!r}")
    raw_pid, kind, body = parts

    fields: List[Tuple[str, str]] = []
    if body:
        for raw_field in _split_unescaped(body, ";"):
            name_value = _split_unescaped(raw_field, "=", maxsplit=1)
            if len(name_value) != 2:
                raise CodecError(f"Field without '=' in line {line!r}")
            fields.append((unescape(name_value[0]), unescape(name_value[1])))

    try:
        pid = Pid(unescape(raw_pid))
        return _build(pid, kind, fields)
    except (ValueError, KeyError) as e:
        raise CodecError(f"Cannot decode line {line!r}: {e}") from e


def _build(pid: Pid, kind: str, fields: List[Tuple[str, str]]) -> Component:
    attributes = [(n[len(ATTRIBUTE_PREFIX):], v) for n, v in fields if n.startswith(ATTRIBUTE_PREFIX)]
    plain = {n: v for n, v in fields if not n.startswith(ATTRIBUTE_PREFIX)}

    if kind == RecordKind.DATA_FDO.value:
        return InformationRecord.build(pid, RecordKind.DATA_FDO, attributes, plain.get("payload"))

    if kind == RecordKind.PROFILE.value:
        ops = [Pid(p) for k, v in attributes if k == OPERATION_LIST_KEY for p in _split_list(v)]
        return Profile(
            pid,
            mandatory_keys=_split_list(plain.get("mandatory", "")),
            optional_keys=_split_list(plain.get("optional", "")),
            operation_list=ops,
        )

    if kind == RecordKind.OPERATION_FDO.value:
        inputs = [RequiredInput.parse(v) for k, v in attributes if k == REQUIRED_INPUT_KEY]
        return OperationSpec(pid, tuple(inputs), plain.get("executor", ""))

    if kind == DEFINITION_KIND:
        restriction = ValueRestriction(
            kind=RestrictionKind(plain["restriction"]),
            allowed=frozenset(_split_list(plain.get("values", ""))),
            target=RecordKind(plain["target"]) if "target" in plain else None,
        )
        return AttributeDefinition(pid, plain["key"], restriction)

    raise CodecError(f"Unknown component kind '{kind}' for {pid}")
