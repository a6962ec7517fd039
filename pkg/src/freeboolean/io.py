"""Canonical JSON reading and writing.

Output is UTF-8 with sorted keys, two-space indentation and a trailing
newline, so equal objects serialize to identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

__all__ = ["dumps", "dump", "load", "load_arg"]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def load_arg(value: str) -> Any:
    """Inline JSON (starting with ``{`` or ``[``) or the path of a JSON file."""
    text = value.lstrip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    return load(value)
