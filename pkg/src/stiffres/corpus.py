"""The bundled example corpus.

Seven graded rings, each over Q and GF(101):

* ``k[x,y]`` and ``k[x,y,z]`` (regular),
* ``k[x,y]/(xy)`` and ``k[x,y,z]/(xy)`` (hypersurfaces),
* ``k[x,y]/(x^2)`` (non-reduced hypersurface),
* ``k[x,y,z]/(xz,yz)`` (plane plus line: dim 2, depth 1, not CM),
* ``k[x,y]/(x^2,y^2)`` (zero-dimensional Gorenstein).

Each ring lists ideals ``J`` with ``pd A/J`` finite (built from regular
sequences so the minimal resolution is finite), systems of parameters, and
candidate annihilator ideals for the Gorenstein audit (including some that
must be rejected).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import FreeComplex
from .koszul import koszul
from .modules import ModMatrix, PresentedModule, minimal_resolution
from .quotient import QuotientRing

FIELDS = ("Q", "GF(101)")
MAX_LEN = 4

BASE = [
    {"name": "poly2", "vars": "xy", "ideal": [],
     "modules": [["x"], ["x", "y"], ["x^2", "x*y"], ["x^2", "y^2"], ["x^2", "x*y", "y^2"],
                 ["x^3", "x*y", "y^2"]],
     "sops": [["x", "y"], ["x+y", "x-y"], ["x^2", "y^2"], ["x^2+y^2", "x*y"]],
     "th9": [["x"]]},
    {"name": "poly3", "vars": "xyz", "ideal": [],
     "modules": [["x", "y", "z"], ["x", "y"], ["x*y", "x*z", "y*z"], ["x^2", "y^2", "z^2"],
                 ["x^2", "x*y", "x*z"]],
     "sops": [["x", "y", "z"], ["x+y", "y+z", "z"], ["x^2", "y", "z"]],
     "th9": []},
    {"name": "xy", "vars": "xy", "ideal": ["x*y"],
     "modules": [["x+y"], ["x^2+y^2"], ["x+2*y"]],
     "sops": [["x+y"], ["x^2+y^2"], ["x-2*y"]],
     "th9": [["x"], ["y"], ["x+y"], []]},
    {"name": "xy3", "vars": "xyz", "ideal": ["x*y"],
     "modules": [["z"], ["x+y", "z"], ["z^2", "x*z+y*z"], ["x^2+2*x*y+y^2", "z^2"]],
     "sops": [["x+y", "z"], ["x+y", "z^2"]],
     "th9": [["x"], ["y"]]},
    {"name": "x2", "vars": "xy", "ideal": ["x^2"],
     "modules": [["y"], ["y^2"], ["x+y"]],
     "sops": [["y"], ["x+y"], ["y^2"]],
     "th9": [["x"]]},
    {"name": "plane_line", "vars": "xyz", "ideal": ["x*z", "y*z"],
     "modules": [["x+z"], ["x^2+2*x*z+z^2"], ["x+y+z"]],
     "sops": [["x+z", "y+z"], ["x", "y+z"]],
     "th9": [["z"]]},
    {"name": "artinian_gor", "vars": "xy", "ideal": ["x^2", "y^2"],
     "modules": [],
     "sops": [[]],
     "th9": [["x"], ["y"], ["x*y"], ["x", "y"]]},
]


@dataclass
class CorpusRing:
    name: str
    ring: QuotientRing
    modules: list = field(default_factory=list)     # ideal generators J for A/J
    sops: list = field(default_factory=list)
    th9: list = field(default_factory=list)
    _res: dict = field(default_factory=dict, repr=False)

    def ideal(self, gens):
        return self.ring.ideal([self.ring.S(g) for g in gens])

    def module(self, gens) -> PresentedModule:
        return PresentedModule.cyclic(self.ideal(gens))

    def sop(self, gens):
        return [self.ring(self.ring.S(g)) for g in gens]


_CACHE = {}


def corpus_rings(fields=FIELDS):
    """The corpus rings (cached, so Groebner and resolution caches are shared)."""
    out = []
    for base in BASE:
        for f in fields:
            key = (base["name"], f)
            if key not in _CACHE:
                A = QuotientRing.build(f, base["vars"], base["ideal"])
                label = f"{base['name']}/{f}"
                _CACHE[key] = CorpusRing(label, A, [list(m) for m in base["modules"]],
                                         [list(s) for s in base["sops"]],
                                         [list(b) for b in base["th9"]])
            out.append(_CACHE[key])
    return out


def ring_resolutions(cr: CorpusRing, max_len=MAX_LEN):
    """``(label, FreeComplex)`` for the finite minimal resolutions of the
    modules ``A/J`` listed for one ring."""
    out = []
    for gens in cr.modules:
        key = (tuple(gens), max_len)
        res = cr._res.get(key)
        if res is None:
            res = cr._res[key] = minimal_resolution(cr.module(gens), max_len)
        if not res.complete:
            raise ArithmeticError(f"{cr.name}: resolution of A/({', '.join(gens)}) is not finite")
        out.append((f"{cr.name}: A/({', '.join(gens)})", FreeComplex.from_resolution(res)))
    return out


def corpus_resolutions(fields=FIELDS, max_len=MAX_LEN):
    return [item for cr in corpus_rings(fields) for item in ring_resolutions(cr, max_len)]


def _scaled(F: FreeComplex, i: int, a):
    """``F`` with ``d_i`` multiplied by ``a`` (still a complex, degrees shift)."""
    A = F.ring
    maps = list(F.maps)
    d = maps[i - 1]
    e = a.poly.degree()
    rows = [[A(x) * a for x in row] for row in d.rows]
    maps[i - 1] = ModMatrix(A, rows, d.nrows, d.ncols, d.target.degrees,
                            tuple(s + e for s in d.source.degrees))
    # the maps above must follow the new source degrees
    for j in range(i, len(maps)):
        m = maps[j]
        maps[j] = ModMatrix(A, m.rows, m.nrows, m.ncols, maps[j - 1].source.degrees,
                            tuple(s + e for s in m.source.degrees))
    return FreeComplex(A, maps, F.ranks[0], check=True)


def corpus_complexes(fields=FIELDS):
    """``(label, FreeComplex, kind)`` covering Koszul complexes on regular and
    non-regular sequences, resolutions and deliberately broken complexes."""
    out = []
    for label, F in corpus_resolutions(fields):
        out.append((label, F, "resolution"))
        if F.length >= 2:
            out.append((label + " minus last map", FreeComplex(F.ring, F.maps[:-1], F.ranks[0]),
                        "broken"))
            # y*im d_2 is strictly inside ker d_1, so H_1 appears
            x = F.ring.gens()[-1]
            out.append((label + f" with d_2 times {x}", _scaled(F, 2, x), "broken"))
    for cr in corpus_rings(fields):
        A = cr.ring
        for s in cr.sops:
            if s:
                out.append((f"{cr.name}: K({', '.join(s)})", koszul(cr.sop(s)), "koszul"))
        gens = A.gens()
        out.append((f"{cr.name}: K(variables)", koszul(gens), "koszul"))
        out.append((f"{cr.name}: K({gens[0]})", koszul([gens[0]]), "koszul"))
        out.append((f"{cr.name}: row of variables", FreeComplex(A, [ModMatrix(A, [gens], 1, len(gens), (0,))], 1),
                    "broken"))
    return out
