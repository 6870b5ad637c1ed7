"""Shared file-format helpers: float rendering, metadata headers, CSV reading.

Every file the pipeline writes starts with a metadata comment block holding
the tool version and the run configuration as a single JSON object, so any
output can be traced back to the exact invocation that produced it.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Iterator, List, Optional, Tuple

VERSION = "0.1.0"

VERSION_KEY = "ripsbars-version"
CONFIG_KEY = "ripsbars-config"


class ParseError(ValueError):
    """Malformed input file; carries path and line number context."""

    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line
        self.message = message


def fmt(x: float) -> str:
    """Render a float with 17 significant digits (round-trips exactly)."""
    return format(float(x), ".17g")


def metadata_lines(config: Optional[Dict[str, Any]], comment: str = "#") -> List[str]:
    """Build the metadata comment block placed at the top of output files."""
    lines = [f"{comment} {VERSION_KEY} {VERSION}"]
    if config is not None:
        blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
        lines.append(f"{comment} {CONFIG_KEY} {blob}")
    return lines


def parse_metadata(lines: List[str], comment: str = "#") -> Dict[str, Any]:
    """Extract version/config keys from leading comment lines.

    Returns a dict with optional keys ``version`` (str) and ``config``
    (the decoded JSON object).  Unknown comment lines are ignored.
    """
    meta: Dict[str, Any] = {}
    for raw in lines:
        text = raw.strip()
        if not text.startswith(comment):
            break
        body = text[len(comment):].strip()
        if body.startswith(VERSION_KEY):
            meta["version"] = body[len(VERSION_KEY):].strip()
        elif body.startswith(CONFIG_KEY):
            blob = body[len(CONFIG_KEY):].strip()
            try:
                meta["config"] = json.loads(blob)
            except json.JSONDecodeError:
                pass
    return meta


def read_lines(path: str) -> List[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


def data_lines(lines: List[str]) -> Iterator[Tuple[int, str]]:
    """Yield (1-based line number, text) for non-comment, non-blank lines."""
    for i, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        yield i, text


def parse_float(path: str, line: int, token: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(path, line, f"not a number: {token!r}") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ParseError(path, line, f"non-finite value: {token!r}")
    return value


def write_text(path: str, lines: List[str]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
