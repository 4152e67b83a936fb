"""Command-line front end.

Every command prints a plain table, or with ``--json`` one object
``{"command", "inputs", "results", "flags"}``.  Rationals are written as
``"p/q"`` strings.  Exit codes: 0 success, 2 bad input, 3 unsupported input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import errors
from .expr import format_fraction, parse_presentation

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise errors.UsageError(message)


def bundled_files() -> list[str]:
    return sorted(p.name for p in resources.files("rhtkit.data").iterdir() if not p.name.startswith("_"))


def read_input(path: str) -> str:
    """Read ``path``; a bare name of a bundled corpus file also works."""
    p = Path(path)
    if p.exists():
        return p.read_text(encoding="utf-8")
    bundled = resources.files("rhtkit.data").joinpath(path)
    if "/" not in path and bundled.is_file():
        return bundled.read_text(encoding="utf-8")
    raise errors.UsageError(f"no such file: {path}")


def _load_presentation(path):
    return parse_presentation(read_input(path))


def _q(x):
    if isinstance(x, Fraction):
        return format_fraction(x)
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return _q(obj)


class Report:
    def __init__(self, command, inputs, results, flags=None, text=""):
        self.command = command
        self.inputs = inputs
        self.results = results
        self.flags = flags or {}
        self.text = text

    def to_json(self) -> str:
        obj = {
            "command": self.command,
            "inputs": _jsonable(self.inputs),
            "results": _jsonable(self.results),
            "flags": _jsonable(self.flags),
        }
        return json.dumps(obj, indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# commands


def cmd_cohomology(a) -> Report:
    from .cdga import cohomology

    p = _load_presentation(a.file)
    h = cohomology(p, a.up_to)
    rows = [{"degree": k, "dimension": d} for k, d in h.dims.items()]
    text = "degree  dim\n" + "\n".join(f"{r['degree']:>6}  {r['dimension']}" for r in rows)
    return Report("cohomology", {"file": a.file, "up_to": a.up_to}, {"cohomology": rows}, {}, text)


def _minimal(a):
    from .sullivan import minimal_model

    p = _load_presentation(a.file)
    if p.truncation < a.up_to + 2:
        p = p.replace(truncation=a.up_to + 2)
    return p, minimal_model(p, a.up_to)


def cmd_minimal_model(a) -> Report:
    from .expr import format_element

    p, r = _minimal(a)
    m = r.model.underlying
    gens = []
    for g in m.generators:
        gens.append(
            {
                "name": g.name,
                "degree": g.degree,
                "d": format_element(m.d_of(g.name)),
                "image": format_element(r.quasi_iso.images[g.name]),
            }
        )
    counts = {k: v for k, v in r.model.generator_counts().items()}
    lines = ["generator  degree  d  ->  image"]
    lines += [f"{g['name']}  {g['degree']}  {g['d']}  ->  {g['image']}" for g in gens]
    lines.append("counts: " + ", ".join(f"{k}:{v}" for k, v in counts.items()))
    results = {"generators": gens, "counts": counts}
    flags = {"quasi_isomorphism_verified_through": r.verified_degree}
    return Report("minimal-model", {"file": a.file, "up_to": a.up_to}, results, flags, "\n".join(lines))


def cmd_homotopy_ranks(a) -> Report:
    from .sullivan import homotopy_ranks

    _, r = _minimal(a)
    ranks = homotopy_ranks(r)
    rows = [{"degree": k, "rank": v} for k, v in ranks.items()]
    text = "degree  rank\n" + "\n".join(f"{k:>6}  {v}" for k, v in ranks.items())
    text += f"\n(ranks of the dual rational homotopy groups through degree {a.up_to}; omitted degrees are 0)"
    return Report("homotopy-ranks", {"file": a.file, "up_to": a.up_to}, {"ranks": rows}, {}, text)


def cmd_formality(a) -> Report:
    from .sullivan import formal_up_to

    p = _load_presentation(a.file)
    if p.truncation < a.up_to + 2:
        p = p.replace(truncation=a.up_to + 2)
    ev = formal_up_to(p, a.up_to)
    results = {
        "agrees": ev.agrees,
        "model_counts": ev.counts,
        "cohomology_model_counts": ev.cohomology_counts,
        "matching": ev.matching,
    }
    text = f"{ev.label}\nagrees: {ev.agrees}\nmodel counts: {ev.counts}\ncohomology model counts: {ev.cohomology_counts}"
    return Report("formality", {"file": a.file, "up_to": a.up_to}, results, {"label": ev.label}, text)


def _hh_report(command, inputs, res, space=None) -> Report:
    rows = [
        {"degree": k, "dimension": d, "flag": res.flag(k), "complete": res.complete.get(k, False)}
        for k, d, _ in res.rows()
    ]
    head = res.convention if space is None else f"free loop space of {space}; {res.convention}"
    text = head + "\ndegree  dim  flag\n" + "\n".join(
        f"{r['degree']:>6}  {r['dimension']:>3}  {r['flag']}" + ("" if not r["complete"] else " (complete)")
        for r in rows
    )
    return Report(command, inputs, {"homology": rows}, {"convention": res.convention}, text)


def cmd_hochschild(a) -> Report:
    from .hochschild import hochschild_homology

    p = _load_presentation(a.file)
    res = hochschild_homology(p, a.max_degree, a.max_length)
    return _hh_report("hochschild", {"file": a.file, "max_degree": a.max_degree, "max_length": a.max_length}, res)


def cmd_loop_space(a) -> Report:
    from .hochschild import loop_space_table
    from .sullivan import minimal_model

    p = _load_presentation(a.file)
    up_to = a.max_degree + 2
    if p.truncation < up_to + 2:
        p = p.replace(truncation=up_to + 2)
    r = minimal_model(p, up_to)
    table = loop_space_table(r, a.max_degree, a.max_length, space=p.name or a.file)
    return _hh_report(
        "loop-space",
        {"file": a.file, "max_degree": a.max_degree, "max_length": a.max_length},
        table.result,
        space=table.space,
    )


def cmd_apl_verify(a) -> Report:
    from .apl import verify_simplicial_identities

    rep = verify_simplicial_identities(a.n, a.bound)
    counts = rep.counts()
    failures = [
        {"identity": c.identity, "n": c.n, "i": c.i, "j": c.j} for c in rep.failures
    ]
    text = "\n".join(f"{name}: {cnt} checks" for name, cnt in counts.items())
    text += f"\nall identities hold: {rep.passed}"
    results = {"passed": rep.passed, "checks": counts, "failures": failures}
    return Report("apl-verify", {"n": a.n, "bound": a.bound}, results, {}, text)


def cmd_apl_sections(a) -> Report:
    from .apl import parse_simplicial_set, sections_cohomology

    X = parse_simplicial_set(read_input(a.file))
    dims = sections_cohomology(X, a.up_to, a.bound)
    rows = [{"degree": k, "dimension": d} for k, d in dims.items()]
    text = "degree  dim\n" + "\n".join(f"{k:>6}  {d}" for k, d in dims.items())
    return Report("apl-sections", {"file": a.file, "up_to": a.up_to, "bound": a.bound}, {"cohomology": rows}, {}, text)


def cmd_stokes(a) -> Report:
    from .apl import PolyForm, random_form, stokes_check

    if a.form:
        r = stokes_check(PolyForm.parse(a.n, a.form))
        results = {"lhs": r.lhs, "rhs": r.rhs, "equal": r.equal}
        text = f"integral of d(form): {_q(r.lhs)}\nsigned boundary sum: {_q(r.rhs)}\nequal: {r.equal}"
        return Report("stokes", {"n": a.n, "form": a.form}, results, {}, text)
    rng = random.Random(a.seed)
    failures = 0
    for _ in range(a.count):
        if not stokes_check(random_form(a.n, a.n - 1, a.max_degree, rng)).equal:
            failures += 1
    results = {"checked": a.count, "failures": failures}
    text = f"{a.count} random forms on the {a.n}-simplex, {failures} failures"
    inputs = {"n": a.n, "count": a.count, "max_degree": a.max_degree, "seed": a.seed}
    return Report("stokes", inputs, results, {}, text)


def cmd_jets(a) -> Report:
    from .whitney import multi_indices, seminorm_flat, seminorm_whitney, whitney_rate_check
    from .whitney.io import parse_jet_table

    F = parse_jet_table(read_input(a.file))
    k = F.m if a.k is None else a.k
    beta = tuple(int(b) for b in a.beta.split(",")) if a.beta else (0,) * F.n
    if len(beta) != F.n:
        raise errors.UsageError(f"beta needs {F.n} entries")
    flat = seminorm_flat(F, F.points, k)
    whit = seminorm_whitney(F, F.points, k)
    rate = whitney_rate_check(F, F.m, beta, F.points)
    buckets = [{"scale": b.scale, "pairs": b.pairs, "max_ratio": b.max_ratio} for b in rate.buckets]
    results = {
        "points": len(F.points),
        "alpha_order": ["".join(map(str, al)) for al in multi_indices(F.m, F.n)],
        "seminorm_flat": flat,
        "seminorm_whitney": whit,
        "rate_check": {"beta": list(beta), "buckets": buckets, "slopes": rate.slopes, "verdict": rate.verdict},
    }
    lines = [
        f"|F|_(K,{k}) = {_q(flat)}",
        f"||F||_(K,{k}) = {_q(whit)}",
        f"rate check for beta={beta}: {rate.verdict} ({rate.note})",
        "scale  pairs  max ratio",
    ]
    lines += [f"2^{b.scale:<4} {b.pairs:>5}  {_q(b.max_ratio)}" for b in rate.buckets]
    flags = {"diagnostic": rate.note, "distance": "max norm"}
    return Report("jets", {"file": a.file, "k": k, "beta": list(beta)}, results, flags, "\n".join(lines))


def cmd_quadrant_poincare(a) -> Report:
    from .whitney import QuadrantSpec, quadrant_poincare_report

    center = [Fraction(c) for c in a.center.split(",")] if a.center else None
    spec = QuadrantSpec.parse(a.spec, center)
    rep = quadrant_poincare_report(spec, a.up_to, a.bound)
    rows = [{"degree": k, "dimension": d} for k, d in rep.dims.items()]
    results = {
        "cohomology": rows,
        "homotopy_identity": rep.homotopy_identity,
        "ideal_preserved": rep.ideal_preserved,
        "contractible": rep.contractible,
    }
    text = f"quadrant union {rep.spec}, total degree <= {rep.bound}\ndegree  dim\n"
    text += "\n".join(f"{k:>6}  {d}" for k, d in rep.dims.items())
    text += f"\nK d + d K = id - ev0 on all basis forms: {rep.homotopy_identity}"
    inputs = {"spec": a.spec, "up_to": a.up_to, "bound": a.bound, "center": a.center}
    return Report("quadrant-poincare", inputs, results, {}, text)


COMMANDS = {
    "cohomology": cmd_cohomology,
    "minimal-model": cmd_minimal_model,
    "homotopy-ranks": cmd_homotopy_ranks,
    "formality": cmd_formality,
    "hochschild": cmd_hochschild,
    "loop-space": cmd_loop_space,
    "apl-verify": cmd_apl_verify,
    "apl-sections": cmd_apl_sections,
    "stokes": cmd_stokes,
    "jets": cmd_jets,
    "quadrant-poincare": cmd_quadrant_poincare,
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rhtkit", description="Exact rational homotopy computations.")
    ap.add_argument("--json", action="store_true", help="structured output")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")
        return sp

    for name, help_ in [
        ("cohomology", "cohomology dimensions of a presentation"),
        ("minimal-model", "minimal Sullivan model with its quasi-isomorphism"),
        ("homotopy-ranks", "generator counts of the minimal model"),
        ("formality", "compare the minimal models of A and of H(A)"),
    ]:
        sp = add(name, help_)
        sp.add_argument("file")
        sp.add_argument("--up-to", type=int, default=6)
    for name, help_ in [
        ("hochschild", "truncated Hochschild homology"),
        ("loop-space", "free loop space ranks from the minimal model"),
    ]:
        sp = add(name, help_)
        sp.add_argument("file")
        sp.add_argument("--max-degree", type=int, default=6)
        sp.add_argument("--max-length", type=int, default=4)
    sp = add("apl-verify", "simplicial identities of A_PL")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--bound", type=int, default=1)
    sp = add("apl-sections", "cohomology of A_PL sections over a finite simplicial set")
    sp.add_argument("file")
    sp.add_argument("--up-to", type=int, default=2)
    sp.add_argument("--bound", type=int, default=2)
    sp = add("stokes", "Stokes theorem on the standard simplex")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--form", help="expression in t0..tn, y0..yn; random forms otherwise")
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--max-degree", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("jets", "seminorms and Whitney rate diagnostics of a jet table")
    sp.add_argument("file")
    sp.add_argument("--k", type=int)
    sp.add_argument("--beta", help="comma separated multi-index")
    sp = add("quadrant-poincare", "cohomology of polynomial forms on a quadrant union")
    sp.add_argument("spec", help="sign strings joined by '|', e.g. '++|--'")
    sp.add_argument("--up-to", type=int, default=2)
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--center", help="comma separated rational coordinates")
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        report = COMMANDS[args.command](args)
    except (errors.UnsupportedInputError, errors.FinitenessError) as exc:
        print(f"unsupported input: {exc}", file=err)
        return EXIT_UNSUPPORTED
    except (errors.RhtError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    print(report.to_json() if args.json else report.text, file=out)
    return EXIT_OK


def main():  # pragma: no cover
    sys.exit(run())
