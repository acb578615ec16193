"""
Interoperability between association models.
"""

from fdots.interop.consistency import ConsistencyReport, Disagreement, check_consistency
from fdots.interop.convert import (
    MARKER_PREFIX,
    MARKER_VALUE,
    ModelMapping,
    convert,
    convert_all,
    is_marker_key,
    marker_key,
)

__all__ = [
    "ConsistencyReport",
    "Disagreement",
    "MARKER_PREFIX",
    "MARKER_VALUE",
    "ModelMapping",
    "check_consistency",
    "convert",
    "convert_all",
    "is_marker_key",
    "marker_key",
]
