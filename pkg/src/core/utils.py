"""
Small helpers shared across modules.
"""

import hashlib
import json
import re
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple, Union

from src.core.exceptions import Location


@dataclass(frozen=True)
class Diagnostic:
    """A problem report returned (not raised) by validators and typecheckers."""
    code: str
    message: str
    subject: Optional[str] = None
    location: Optional[Location] = None

    def __str__(self) -> str:
        prefix = f"{self.location}: " if self.location else ""
        return f"{prefix}{self.message}"


_DIGITS = re.compile(r"(\d+)")


def natural_key(text: str) -> Tuple[Union[int, str], ...]:
    """Sort key that orders v2 before v10 and A5 before A10."""
    return tuple(int(part) if part.isdigit() else part for part in _DIGITS.split(text))


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def sha256_digest(payload: Any) -> str:
    """Digest of the canonical JSON form of a payload."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def numbered(prefix: str, count: int, start: int = 1) -> List[str]:
    """['T1', 'T2', ...] style names for generated bound variables."""
    return [f"{prefix}{index}" for index in range(start, start + count)]
