"""Command line driver.

    stiffres COMMAND JOB.json [--seed N] [--trials N] [--max-len N]
                              [--degree-cap N] [--json | --table] [--no-timing]
    stiffres corpus-run [--seed N] [--trials N] [--json | --table] [--no-timing]

Exit status: 0 ran, 1 negative verdict, 2 input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import sys
import time

from .complexes import (buchsbaum_eisenbud_check, eilenberg_split, homology_dim, homology_piece,
                        matrix_rank, minor_ideal, split_part, _grade_json)
from .delta import NotGorensteinError, delta, is_cohen_macaulay, is_gorenstein, theorem9_audit
from .jobspec import JobSpec, JobSpecError, Workspace, parse_jobspec
from .koszul import cec_probe, is_sop, koszul_grade
from .modules import minimal_resolution, depth_module, PresentedModule, TruncationNeeded
from .parser import ParseError
from .quotient import INF, check_regular_sequence, find_regular_sequence, grade
from .report import (EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, ReportEnvelope,
                     canonical_json, digest, to_table)
from .stiffness import (CERTIFIED, NotMinimalError, VIOLATED, first_syzygy_ann_check,
                        order_ideal_grade, stiffness_certificate, stiffness_probe_random,
                        thm11_generator_bound, thm14_table)

COMMANDS = ("resolve", "grade", "stiffness", "be-check", "minors", "split", "thm14",
            "order-ideal", "cec-probe", "delta", "th9-audit")

DEFAULTS = {"seed": 0, "trials": 100, "max_len": 4, "degree_cap": 12}


def _complex(ws, p):
    from .modules import Resolution
    from .complexes import FreeComplex
    obj = ws.get(_need(p, "complex"))
    if isinstance(obj, Resolution):
        return FreeComplex.from_resolution(obj)
    if not isinstance(obj, FreeComplex):
        raise JobSpecError(f"object {p['complex']!r} is not a complex")
    return obj


def _need(params, key):
    if key not in params:
        raise JobSpecError(f"missing parameter {key!r}")
    return params[key]


def _seeds(params):
    if "seeds" in params:
        return [int(s) for s in params["seeds"]]
    s = int(params["seed"])
    return [s, s + 1, s + 2]


# -- command handlers: (workspace, params) -> (result, status) ----------------------

def cmd_resolve(ws, p):
    M = ws.get(_need(p, "module"))
    res = minimal_resolution(M, int(p["max_len"]))
    out = {"ranks": res.ranks, "complete": res.complete,
           "degrees": [list(res.degrees(i)) for i in range(res.length + 1)] if res.maps else [],
           "maps": [d.to_strings() for d in res.maps],
           "projective_dimension": res.length if res.complete else f"> {res.length}"}
    return out, EXIT_OK


def cmd_grade(ws, p):
    I = ws.get(_need(p, "ideal"))
    g = grade(I)
    out = {"ideal": [str(a) for a in I.gens], "grade": _grade_json(g)}
    status = EXIT_OK
    if g != INF and g > 0:
        seq = find_regular_sequence(I, g, seed=int(p["seed"]))
        if seq is None:
            out["certificate"] = None
            status = EXIT_INCONCLUSIVE
        else:
            out["certificate"] = [str(a) for a in seq]
            out["certificate_valid"] = check_regular_sequence(seq)
    return out, status


def _recheck_violation(F, rep):
    """Independent confirmation of a stiffness violation via Koszul homology."""
    w = rep.witness
    c = rep.columns[0] if len(rep.columns) == 1 else next(
        x for x in rep.columns if x.i == w["i"] and x.column == w["column"])
    from .quotient import IdealA
    g = koszul_grade(IdealA(F.ring, c.gens))
    return g < w["i"]


def cmd_stiffness(ws, p):
    F = _complex(ws, p)
    seed, trials = int(p["seed"]), int(p["trials"])
    probe = stiffness_probe_random(F, trials, seed)
    out = {"probe": probe.to_json()}
    if probe.verdict == VIOLATED:
        confirmed = _recheck_violation(F, probe)
        out["verdict"] = VIOLATED
        out["witness_confirmed"] = confirmed
        out["first_syzygy_annihilators"] = [a.to_json() for a in first_syzygy_ann_check(F)]
        return out, EXIT_NEGATIVE
    cert = stiffness_certificate(F, seed, int(p.get("certificate_trials", 64)))
    out["certificate"] = cert.to_json()
    out["first_syzygy_annihilators"] = [a.to_json() for a in first_syzygy_ann_check(F)]
    if cert.verdict == CERTIFIED:
        out["verdict"] = CERTIFIED
        return out, EXIT_OK
    out["verdict"] = probe.verdict
    return out, EXIT_INCONCLUSIVE


def _homology_json(F, cap):
    out = []
    for i in range(F.length + 1):
        h = homology_dim(F, i, cap)
        out.append({"i": i, "dim": h.dim, "truncated": h.truncated,
                    "witness": None if h.witness is None else _vec_str(F, i, h.witness)})
    return out


def _vec_str(F, i, v):
    from .poly import Polynomial
    S = F.ring.S
    parts = {}
    for (r, e), c in v.items():
        parts.setdefault(r, {})[e] = c
    return [str(Polynomial(S, parts.get(r, {}))) for r in range(F.ranks[i])]


def _confirm_cycle(F, i):
    """Recheck a homology witness by direct evaluation and an elimination
    solve, bypassing the submodule machinery that found it."""
    from .syzygy import Elimination
    from .modules import reduce_vec
    A = F.ring
    S = A.S
    w = homology_piece(F, i).nonzero_witness()
    if w is None:
        return False
    z = _vec_str(F, i, w)
    if i >= 1 and any(not a.is_zero() for a in F.d(i).apply([A(S(t)) for t in z])):
        return False
    if i == F.length:
        return True
    d = F.d(i + 1)
    elim = Elimination(d.col_vecs(), d.nrows, A.I.basis_terms(), S.nvars, S.order, S.p,
                       row_shifts=d.target.degrees, col_shifts=d.source.degrees)
    return elim.solve(reduce_vec(A, w)) is None


def cmd_be_check(ws, p):
    F = _complex(ws, p)
    rep = buchsbaum_eisenbud_check(F)
    out = rep.to_json()
    out["homology"] = _homology_json(F, int(p["degree_cap"]))
    exact = all(h["dim"] == 0 for h in out["homology"][1:])
    out["homology_agrees"] = exact == rep.acyclic
    if not rep.acyclic:
        wit = next((h for h in out["homology"][1:] if h["dim"]), None)
        if wit is not None:
            out["witness"] = wit
            out["witness_confirmed"] = _confirm_cycle(F, wit["i"])
    return out, EXIT_OK if rep.acyclic else EXIT_NEGATIVE


def cmd_minors(ws, p):
    M = ws.get(_need(p, "matrix"))
    u = int(_need(p, "size"))
    I = minor_ideal(M, u)
    return {"size": u, "minors": [str(a) for a in I.gens], "rank": matrix_rank(M),
            "grade": _grade_json(grade(I))}, EXIT_OK


def cmd_split(ws, p):
    G = _complex(ws, p)
    F, pairs = eilenberg_split(G)
    H = split_part(G.ring, pairs, G.length)
    cap = int(p["degree_cap"])
    hg = [homology_dim(G, i, cap).dim for i in range(G.length + 1)]
    hf = [homology_dim(F, i, cap).dim for i in range(F.length + 1)]
    return {"minimal": F.to_json(), "minimal_is_minimal": F.is_minimal(),
            "split_pairs": [{"i": q.i, "degree": q.degree} for q in pairs],
            "split_part": H.to_json(), "homology_input": hg, "homology_minimal": hf,
            "homology_preserved": hg == hf}, EXIT_OK


def cmd_thm14(ws, p):
    F = _complex(ws, p)
    table = thm14_table(F, int(p["seed"]))
    out = table.to_json()
    out["generator_bounds"] = [thm11_generator_bound(F, i).to_json() for i in range(1, F.length)]
    ok = table.ok and all(b["ok"] for b in out["generator_bounds"])
    return out, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_order_ideal(ws, p):
    F = _complex(ws, p)
    A = F.ring
    if "i" in p:
        spots = [int(p["i"])]
    else:
        spots = list(range(1, F.length + 1))
    rows = []
    for i in spots:
        if "element" in p:
            elems = [[A(A.S(str(a))) for a in p["element"]]]
        else:
            n = F.ranks[i]
            elems = [[A.one() if r == j else A.zero() for r in range(n)] for j in range(n)]
        for z in elems:
            rows.append(order_ideal_grade(F, i, z).to_json())
    ok = all(r["ok"] for r in rows)
    return {"order_ideals": rows, "ok": ok}, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_cec_probe(ws, p):
    x = ws.get(_need(p, "sop"))
    A = ws.ring
    if not is_sop(x, A):
        raise JobSpecError("the given sequence is not a system of parameters")
    rep = cec_probe(A, x, _seeds(p))
    return rep.to_json(), EXIT_OK if rep.nonvanishing else EXIT_NEGATIVE


def cmd_delta(ws, p):
    M = ws.get(_need(p, "module"))
    try:
        rep = delta(M, int(p.get("extra", 2)), int(p["seed"]), label=p["module"])
    except NotGorensteinError as e:
        raise JobSpecError(str(e)) from e
    out = rep.to_json()
    return out, EXIT_OK if rep.consistent else EXIT_NEGATIVE


def cmd_th9(ws, p):
    b = ws.get(_need(p, "ideal"))
    rep = theorem9_audit(ws.ring, b, int(p.get("extra", 2)), int(p["seed"]))
    out = rep.to_json()
    if rep.instance and not rep.ok:
        out["engine_error"] = "nonzero delta on an equal-characteristic instance"
        return out, EXIT_NEGATIVE
    return out, EXIT_OK


HANDLERS = {"resolve": cmd_resolve, "grade": cmd_grade, "stiffness": cmd_stiffness,
            "be-check": cmd_be_check, "minors": cmd_minors, "split": cmd_split,
            "thm14": cmd_thm14, "order-ideal": cmd_order_ideal, "cec-probe": cmd_cec_probe,
            "delta": cmd_delta, "th9-audit": cmd_th9}


def effective_params(job: JobSpec, overrides: dict) -> dict:
    p = dict(DEFAULTS)
    p.update(job.params)
    p.update({k: v for k, v in overrides.items() if v is not None})
    return p


def run(job: JobSpec, command: str | None = None, overrides: dict | None = None) -> ReportEnvelope:
    command = command or job.command
    params = effective_params(job, overrides or {})
    seeds = _seeds(params) if command == "cec-probe" else [int(params["seed"])]
    dig = digest(job.serialize() + canonical_json(params))
    t0 = time.perf_counter()
    env = ReportEnvelope(command, dig, seeds, {})
    if command not in HANDLERS:
        env.status = EXIT_INPUT
        env.errors.append(f"unknown command {command!r}")
        return env
    try:
        ws = Workspace(job)
        env.result, env.status = HANDLERS[command](ws, params)
    except (JobSpecError, ParseError, NotMinimalError) as e:
        env.status = EXIT_INPUT
        env.errors.append(str(e))
    except TruncationNeeded as e:
        env.status = EXIT_INCONCLUSIVE
        env.errors.append(str(e))
    env.wall_time = time.perf_counter() - t0
    return env


# -- corpus run ----------------------------------------------------------------------------

def corpus_run(seed: int = 0, trials: int = 20) -> ReportEnvelope:
    """Audit every bundled ring: resolutions with stiffness and B-E checks,
    CEC probes and Gorenstein audits.  Deterministic for a fixed seed."""
    from .corpus import BASE, corpus_rings, ring_resolutions
    t0 = time.perf_counter()
    dig = digest(canonical_json({"corpus": BASE, "seed": seed, "trials": trials}))
    rings = []
    negative = False
    for cr in corpus_rings():
        A = cr.ring
        entry = {"name": cr.name, "ring": str(A), "dim": A.dim,
                 "depth": depth_module(PresentedModule.free(A, 1)),
                 "cohen_macaulay": is_cohen_macaulay(A), "gorenstein": is_gorenstein(A),
                 "resolutions": [], "cec": [], "th9": []}
        for label, F in ring_resolutions(cr):
            probe = stiffness_probe_random(F, trials, seed)
            cert = stiffness_certificate(F, seed)
            be = buchsbaum_eisenbud_check(F)
            negative |= probe.violated or not be.acyclic
            entry["resolutions"].append({
                "module": label.split(": ", 1)[1], "ranks": F.ranks,
                "maps": [d.to_strings() for d in F.maps],
                "stiffness": probe.verdict, "certificate": cert.verdict,
                "column_grades": [_grade_json(c.grade) for c in probe.columns],
                "acyclic": be.acyclic})
        for s in cr.sops:
            rep = cec_probe(A, cr.sop(s), [seed, seed + 1, seed + 2])
            negative |= not rep.nonvanishing
            entry["cec"].append(rep.to_json())
        for b in cr.th9:
            rep = theorem9_audit(A, cr.ideal(b), 2, seed)
            negative |= rep.instance and not rep.ok
            entry["th9"].append(rep.to_json())
        rings.append(entry)
    env = ReportEnvelope("corpus-run", dig, [seed], {"rings": rings},
                         EXIT_NEGATIVE if negative else EXIT_OK)
    env.wall_time = time.perf_counter() - t0
    return env


# -- argument handling -------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="stiffres", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int)
        sp.add_argument("--trials", type=int)
        sp.add_argument("--max-len", type=int, dest="max_len")
        sp.add_argument("--degree-cap", type=int, dest="degree_cap")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_const", const="json", dest="format")
        fmt.add_argument("--table", action="store_const", const="table", dest="format")
        sp.add_argument("--no-timing", action="store_true",
                        help="omit wall time so output is byte-comparable")
        sp.add_argument("-o", "--output", help="write the report here instead of stdout")

    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("job", help="job file (JSON), or - for stdin")
        common(sp)
    sp = sub.add_parser("run", help="run the command named in the job file")
    sp.add_argument("job")
    common(sp)
    common(sub.add_parser("corpus-run"))
    return ap


def _emit(env, args):
    text = to_table(env) if args.format == "table" else env.to_json(timing=not args.no_timing)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {"seed": args.seed, "trials": args.trials, "max_len": args.max_len,
                 "degree_cap": args.degree_cap}
    if args.command == "corpus-run":
        env = corpus_run(args.seed or 0, args.trials if args.trials is not None else 20)
        _emit(env, args)
        return env.status
    try:
        if args.job == "-":
            text = sys.stdin.read()
        else:
            with open(args.job, encoding="utf-8") as fh:
                text = fh.read()
        job = parse_jobspec(text)
    except (OSError, JobSpecError) as e:
        sys.stderr.write(f"stiffres: {e}\n")
        return EXIT_INPUT
    command = job.command if args.command == "run" else args.command
    env = run(job, command, overrides)
    _emit(env, args)
    for e in env.errors:
        sys.stderr.write(f"stiffres: {e}\n")
    return env.status


if __name__ == "__main__":
    sys.exit(main())
