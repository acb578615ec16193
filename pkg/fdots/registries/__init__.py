"""Registry store emulating the handle, profile, operation and type registries."""

from fdots.registries.codec import Namespace, decode_line, encode_component
from fdots.registries.io import dump_ecosystem, load_ecosystem
from fdots.registries.store import RegistryStore, WriteLogEntry

__all__ = [
    "Namespace",
    "RegistryStore",
    "WriteLogEntry",
    "decode_line",
    "dump_ecosystem",
    "encode_component",
    "load_ecosystem",
]
