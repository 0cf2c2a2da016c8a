"""Job files: a ring, named objects over it, a command and its parameters.

The format is JSON::

    {
      "ring": {"field": "Q", "vars": ["x", "y"], "ideal": ["x*y"]},
      "objects": {
        "d": {"type": "complex", "maps": [[["x", "y"]]]},
        "b": {"type": "ideal", "gens": ["x"]}
      },
      "command": "stiffness",
      "params": {"complex": "d", "trials": 100}
    }

Object types: ``ideal`` (gens), ``matrix`` (rows, optional target_degrees),
``complex`` (maps as row-major matrices, optional ranks and f0_degrees),
``koszul`` (elements), ``sequence`` (elements), ``module`` (presentation
rows with optional ngens/degrees, or ``ideal`` naming an ideal for ``A/b``),
``resolution`` (module, max_len).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .parser import ParseError
from .quotient import QuotientRing

OBJECT_TYPES = ("ideal", "matrix", "complex", "koszul", "sequence", "module", "resolution")
REF_PARAMS = ("complex", "ideal", "matrix", "module", "sop", "sequence")


class JobSpecError(ValueError):
    """Invalid job input (syntax, undefined reference, bad ring)."""


@dataclass
class JobSpec:
    ring: dict
    objects: dict = field(default_factory=dict)
    command: str = ""
    params: dict = field(default_factory=dict)

    def to_dict(self):
        return {"ring": self.ring, "objects": self.objects, "command": self.command,
                "params": self.params}

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def __eq__(self, other):
        return isinstance(other, JobSpec) and self.to_dict() == other.to_dict()


def _poly_str(S, text, where):
    try:
        return str(S(str(text)))
    except ParseError as e:
        raise JobSpecError(f"{where}: {e}") from e


def _rows(S, rows, where):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise JobSpecError(f"{where}: matrix must be a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise JobSpecError(f"{where}: ragged matrix")
    return [[_poly_str(S, x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]


def _ints(v, where):
    if not isinstance(v, list) or not all(isinstance(a, int) for a in v):
        raise JobSpecError(f"{where}: expected a list of integers")
    return list(v)


def build_ring(desc) -> QuotientRing:
    try:
        return QuotientRing.build(desc["field"], desc["vars"], desc.get("ideal", []),
                                  desc.get("order", "degrevlex"))
    except ParseError as e:
        raise JobSpecError(f"ring ideal: {e}") from e
    except (KeyError, TypeError) as e:
        raise JobSpecError(f"ring descriptor incomplete: {e}") from e
    except ValueError as e:
        raise JobSpecError(f"ring: {e}") from e


def _normalize_ring(desc):
    if not isinstance(desc, dict):
        raise JobSpecError("ring must be an object")
    A = build_ring(desc)
    return A, {"field": A.field.to_json(), "vars": list(A.S.vars),
               "ideal": [_poly_str(A.S, g, "ring ideal") for g in desc.get("ideal", [])],
               "order": A.S.order}


def _normalize_object(S, name, obj, names):
    if not isinstance(obj, dict) or obj.get("type") not in OBJECT_TYPES:
        raise JobSpecError(f"object {name!r}: type must be one of {', '.join(OBJECT_TYPES)}")
    t = obj["type"]
    out = {"type": t}
    w = f"object {name!r}"
    if t in ("ideal",):
        out["gens"] = [_poly_str(S, g, w) for g in obj.get("gens", [])]
    elif t in ("koszul", "sequence"):
        out["elements"] = [_poly_str(S, g, w) for g in obj.get("elements", [])]
    elif t == "matrix":
        out["rows"] = _rows(S, obj.get("rows", []), w)
        if "target_degrees" in obj:
            out["target_degrees"] = _ints(obj["target_degrees"], w)
    elif t == "complex":
        out["maps"] = [_rows(S, m, f"{w} map {i + 1}") for i, m in enumerate(obj.get("maps", []))]
        if "ranks" in obj:
            out["ranks"] = _ints(obj["ranks"], w)
        if "f0_degrees" in obj:
            out["f0_degrees"] = _ints(obj["f0_degrees"], w)
    elif t == "module":
        if "ideal" in obj:
            ref = obj["ideal"]
            if ref not in names:
                raise JobSpecError(f"{w}: undefined reference {ref!r}")
            out["ideal"] = ref
        else:
            out["presentation"] = _rows(S, obj.get("presentation", []), w)
            if "ngens" in obj:
                out["ngens"] = int(obj["ngens"])
            if "degrees" in obj:
                out["degrees"] = _ints(obj["degrees"], w)
    elif t == "resolution":
        ref = obj.get("module")
        if ref not in names:
            raise JobSpecError(f"{w}: undefined reference {ref!r}")
        out["module"] = ref
        out["max_len"] = int(obj.get("max_len", 4))
    return out


def validate(data) -> JobSpec:
    if not isinstance(data, dict):
        raise JobSpecError("job must be a JSON object")
    unknown = set(data) - {"ring", "objects", "command", "params"}
    if unknown:
        raise JobSpecError(f"unknown top-level keys: {sorted(unknown)}")
    if "ring" not in data:
        raise JobSpecError("missing ring")
    A, ring = _normalize_ring(data["ring"])
    objs = data.get("objects", {}) or {}
    if not isinstance(objs, dict):
        raise JobSpecError("objects must be a mapping")
    names = set(objs)
    objects = {name: _normalize_object(A.S, name, o, names) for name, o in sorted(objs.items())}
    params = dict(data.get("params", {}) or {})
    for key in REF_PARAMS:
        if key in params and params[key] not in names:
            raise JobSpecError(f"param {key!r}: undefined reference {params[key]!r}")
    command = data.get("command", "")
    if not isinstance(command, str):
        raise JobSpecError("command must be a string")
    return JobSpec(ring, objects, command, params)


def parse_jobspec(text: str) -> JobSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise JobSpecError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from e
    return validate(data)


# -- materialization -------------------------------------------------------------

class Workspace:
    """Builds ring-level objects from a validated job, memoized by name."""

    def __init__(self, job: JobSpec):
        self.job = job
        self.ring = build_ring(job.ring)
        self._built = {}

    def get(self, name):
        if name not in self.job.objects:
            raise JobSpecError(f"undefined reference {name!r}")
        if name not in self._built:
            self._built[name] = self._build(self.job.objects[name])
        return self._built[name]

    def _build(self, obj):
        from .complexes import FreeComplex
        from .koszul import koszul
        from .modules import ModMatrix, PresentedModule, minimal_resolution
        A = self.ring
        t = obj["type"]
        try:
            if t == "ideal":
                return A.ideal(obj["gens"])
            if t == "sequence":
                return [A(g) for g in obj["elements"]]
            if t == "koszul":
                return koszul([A(g) for g in obj["elements"]])
            if t == "matrix":
                rows = obj["rows"]
                return ModMatrix(A, rows, len(rows), len(rows[0]) if rows else 0,
                                 obj.get("target_degrees"))
            if t == "complex":
                if "ranks" in obj:
                    return FreeComplex.from_ranks_and_rows(A, obj["ranks"], obj["maps"])
                return FreeComplex.from_rows(A, obj["maps"], f0_degrees=obj.get("f0_degrees"))
            if t == "module":
                if "ideal" in obj:
                    return PresentedModule.cyclic(self.get(obj["ideal"]))
                rows = obj["presentation"]
                n = obj.get("ngens", len(rows))
                if not rows:
                    return PresentedModule.free(A, n, obj.get("degrees"))
                return PresentedModule.from_rows(A, rows, n, obj.get("degrees"))
            if t == "resolution":
                return minimal_resolution(self.get(obj["module"]), obj["max_len"])
        except ValueError as e:
            raise JobSpecError(str(e)) from e
        raise JobSpecError(f"unknown object type {t!r}")
