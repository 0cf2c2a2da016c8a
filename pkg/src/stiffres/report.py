"""Report envelopes and their deterministic serialization."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__

SCHEMA = "stiffres-report/1"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class ReportEnvelope:
    command: str
    input_digest: str
    seeds: list
    result: dict
    status: int = EXIT_OK
    wall_time: float = 0.0
    version: str = __version__
    errors: list = field(default_factory=list)

    def payload(self) -> dict:
        """Everything except timing; identical inputs give identical payloads."""
        return {"schema": SCHEMA, "version": self.version, "command": self.command,
                "input_digest": self.input_digest, "seeds": list(self.seeds),
                "status": self.status, "result": self.result, "errors": list(self.errors)}

    def to_dict(self, timing: bool = True) -> dict:
        out = self.payload()
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return canonical_json(self.to_dict(timing))


def _cell(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_cell(x)}" for k, x in v.items()) + "}"
    return str(v)


def to_table(env: ReportEnvelope) -> str:
    """A plain two-column rendering of the top level of the result."""
    lines = [f"command   {env.command}", f"status    {env.status}",
             f"seeds     {_cell(env.seeds)}", f"digest    {env.input_digest[:16]}"]
    res = env.result if isinstance(env.result, dict) else {"result": env.result}
    width = max((len(k) for k in res), default=0)
    for k, v in res.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            for item in v:
                lines.append("  " + _cell(item))
        else:
            lines.append(f"{k.ljust(width)}  {_cell(v)}")
    for e in env.errors:
        lines.append(f"error: {e}")
    return "\n".join(lines) + "\n"
