"""Deterministic machine-readable outputs: CSV payloads and JSON manifests.

Same configuration and seed must reproduce byte-identical files, so floats
are written with shortest round-trip repr, rows in fixed order, '\n' line
endings, and nothing volatile (wall time goes to stderr, never into files).
Each CSV is referenced from its sidecar manifest (same stem + .manifest.json)
together with a content hash, which is what makes a run auditable.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field, is_dataclass
from pathlib import Path

from . import __version__


def fmt_value(v) -> str:
    if isinstance(v, float):
        if v != v:
            return "nan"
        if v == float("inf"):
            return "inf"
        if v == float("-inf"):
            return "-inf"
        return repr(v)
    return str(v)


def write_csv(path, header, rows) -> str:
    """Write rows deterministically; returns the sha256 of the payload."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_value(v) for v in row))
    payload = "\n".join(lines) + "\n"
    Path(path).write_text(payload, encoding="ascii", newline="\n")
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def _jsonable(obj):
    if is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "value") and obj.__class__.__name__ == "Scenario":
        return obj.value
    return obj


@dataclass
class RunManifest:
    """Everything needed to rerun a command bit-identically."""

    command: str
    config: dict
    settings: dict
    seeds: dict = field(default_factory=dict)
    method_flags: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    tool: str = "udwharvest"
    version: str = __version__

    def register_output(self, path, sha256: str):
        self.outputs[str(Path(path).name)] = {"sha256": sha256}

    def to_json(self) -> str:
        payload = {
            "tool": self.tool,
            "version": self.version,
            "command": self.command,
            "config": _jsonable(self.config),
            "settings": _jsonable(self.settings),
            "seeds": _jsonable(self.seeds),
            "method_flags": _jsonable(self.method_flags),
            "outputs": _jsonable(self.outputs),
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def write(self, path):
        Path(path).write_text(self.to_json(), encoding="ascii", newline="\n")


def manifest_path_for(out_path) -> Path:
    p = Path(out_path)
    return p.with_name(p.stem + ".manifest.json")


class WallClock:
    """Report elapsed time on stderr only (outputs stay deterministic)."""

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        dt = time.monotonic() - self.t0
        print(f"[udwharvest] wall time: {dt:.2f} s", file=sys.stderr)
        return False
