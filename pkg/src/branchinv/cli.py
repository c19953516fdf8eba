"""Command-line front end.

Subcommands::

    branchinv analyze <file> [--json] [--truncation N] [--max-truncation M]
                             [--no-verify] [--ideal <file>]
    branchinv semigroup <a1> <a2> ... [--json]

Branch files hold one generator expression per line; blank lines and lines
starting with '#' are ignored, and an optional ``name: <label>`` header names
the branch.  Ideal files use the same layout plus an optional ``shift: k``
header: every generator is multiplied by t^(-k), which is how elements with
negative valuation are written.

Exit codes: 0 for any completed analysis (whatever the verdict), 2 for input
errors, 3 when no certified truncation below the cap exists.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .berger import RULES, Verdict, verdict
from .branch import BranchSpec, RingData, analyze
from .differentials import DifferentialData, compute
from .errors import BranchInvError, GcdNotOne, ParseError, TruncationExhausted
from .ideals import (
    from_generators,
    h_invariant,
    inverse,
    realizes_itself,
    trace,
)
from .semigroup import sieve
from .series import TruncatedSeries, parse_poly


# ---------------------------------------------------------------------------
# input files
# ---------------------------------------------------------------------------


def _read_lines(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


def read_branch_file(path: str) -> BranchSpec:
    name = None
    exprs = []
    for lineno, raw in enumerate(_read_lines(path), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("name:"):
            name = line.split(":", 1)[1].strip()
            continue
        try:
            exprs.append(parse_poly(line))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}", exc.position) from None
    if not exprs:
        raise BranchInvError(f"{path}: no generator lines found")
    return BranchSpec(tuple(exprs), name=name)


def read_ideal_file(path: str) -> tuple[int, list, str | None]:
    name = None
    shift = 0
    exprs = []
    for lineno, raw in enumerate(_read_lines(path), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        low = line.lower()
        if low.startswith("name:"):
            name = line.split(":", 1)[1].strip()
            continue
        if low.startswith("shift:"):
            try:
                shift = int(line.split(":", 1)[1].strip())
            except ValueError:
                raise BranchInvError(f"{path}:{lineno}: shift header needs an integer") from None
            continue
        try:
            exprs.append(parse_poly(line))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}", exc.position) from None
    if not exprs:
        raise BranchInvError(f"{path}: no generator lines found")
    return shift, exprs, name


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


def _rat(x) -> dict | None:
    if x is None:
        return None
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def _series_json(f: TruncatedSeries) -> dict:
    return {
        "offset": f.offset,
        "coeffs": [{"num": c.numerator, "den": c.denominator} for c in f.coeffs],
    }


def _bounds_json(bounds: dict) -> dict:
    out = {}
    for key, val in bounds.items():
        if isinstance(val, Fraction):
            out[key] = _rat(val)
        else:
            out[key] = val
    return out


def build_report(ring: RingData, diff: DifferentialData, vd: Verdict,
                 ideal_section: dict | None = None) -> dict:
    report = {
        "name": ring.name,
        "generators": [str(g) for g in ring.spec.generators],
        "truncation": diff.ring.truncation,
        "stable": diff.ring.stable,
        "n": ring.embdim_n,
        "s": ring.order_s,
        "delta": ring.delta,
        "conductor": ring.conductor_c,
        "gaps": list(ring.gaps),
        "gorenstein": ring.gorenstein,
        "vD": diff.v_D,
        "lambda_D": diff.lambda_D,
        "v_Dinv": diff.v_Dinv,
        "alpha": _series_json(diff.alpha),
        "h": diff.h_omega,
        "maximal_torsion": diff.maximal_torsion,
        "in_ms": diff.in_ms,
        "mu_Jmin": diff.mu_Jmin,
        "mu_msJ": diff.mu_msJ,
        "verdict": {
            "status": vd.status,
            "rule": vd.rule,
            "bounds": _bounds_json(vd.bounds),
        },
        "version": __version__,
    }
    if ideal_section is not None:
        report["ideal"] = ideal_section
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2)


def _fmt_bound(x) -> str:
    if x is None:
        return "-"
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def render_text(report: dict) -> str:
    lines = []
    name = report["name"] or "(unnamed branch)"
    lines.append(f"branch: {name}")
    lines.append("generators:")
    for g in report["generators"]:
        lines.append(f"    {g}")
    stab = "verified by doubling" if report["stable"] else "not verified (--no-verify)"
    lines.append(f"truncation: t^{report['truncation']} ({stab})")
    lines.append(f"embedding dimension n = {report['n']}, order s = {report['s']}")
    lines.append(f"value semigroup gaps: {report['gaps']}  (delta = {report['delta']})")
    lines.append(f"conductor exponent c = {report['conductor']}")
    lines.append(f"gorenstein: {report['gorenstein']} (via semigroup symmetry)")
    lines.append(
        f"derivative module: v(D) = {report['vD']}, lambda(R_bar/D) = {report['lambda_D']}, "
        f"v(D^-1) = {report['v_Dinv']}"
    )
    alpha = report["alpha"]
    terms = {
        alpha["offset"] + j: Fraction(c["num"], c["den"])
        for j, c in enumerate(alpha["coeffs"])
    }
    lines.append(f"realizer alpha = {TruncatedSeries.from_terms(terms)}")
    lines.append(f"h = {report['h']}   (maximal torsion: {report['maximal_torsion']})")
    in_ms = "-" if report["in_ms"] is None else report["in_ms"]
    mu_msj = "-" if report["mu_msJ"] is None else report["mu_msJ"]
    lines.append(
        f"realized copy: mu = {report['mu_Jmin']}, inside m^s: {in_ms}, "
        f"mu(m^s/J) = {mu_msj}"
    )
    vd = report["verdict"]
    lines.append(f"verdict: {vd['status']}" + (f" via {vd['rule']}" if vd["rule"] else ""))
    if vd["rule"]:
        desc, src = RULES[vd["rule"]]
        lines.append(f"    {desc} [{src}]")
    b = vd["bounds"]

    def unrat(x):
        return Fraction(x["num"], x["den"]) if isinstance(x, dict) else x

    lines.append(
        f"    bounds: h = {_fmt_bound(unrat(b['h']))}, "
        f"binomial bound = {_fmt_bound(unrat(b['main_bound']))}, "
        f"refined bound = {_fmt_bound(unrat(b['refined_bound']))}"
    )
    if "ideal" in report:
        sec = report["ideal"]
        lines.append(f"ideal ({sec['path']}):")
        lines.append(f"    vmin = {sec['vmin']}, h = {sec['h']}, v(I^-1) = {sec['v_inverse']}")
        lines.append(f"    trace value-set gaps: {sec['trace_gaps']} (from {sec['trace_vmin']})")
        lines.append(f"    realizes itself: {sec['realizes_itself']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _ideal_section(ring: RingData, path: str) -> dict:
    shift, exprs, _name = read_ideal_file(path)
    gens = [e.to_series().shift(-shift) for e in exprs]
    ideal = from_generators(ring, tuple(gens))
    inv = inverse(ideal)
    tr = trace(ideal)
    integral = ideal.vmin >= 0 and all(
        ring.ring_basis.member(g, ring.conductor_c) for g in ideal.generators
    )
    return {
        "path": path,
        "shift": shift,
        "vmin": ideal.vmin,
        "h": h_invariant(ideal),
        "v_inverse": inv.v_inverse,
        "trace_vmin": tr.vmin,
        "trace_gaps": list(tr.value_set.gaps_below(tr.membership_bound, tr.vmin)),
        "realizes_itself": realizes_itself(ideal) if integral else None,
    }


def cmd_analyze(args) -> int:
    try:
        spec = read_branch_file(args.path)
        ring = analyze(
            spec,
            initial_truncation=args.truncation,
            verify_stability=not args.no_verify,
            max_truncation=args.max_truncation,
        )
        diff = compute(ring)
        vd = verdict(diff)
        ideal_section = _ideal_section(diff.ring, args.ideal) if args.ideal else None
    except TruncationExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (BranchInvError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = build_report(ring, diff, vd, ideal_section)
    print(render_json(report) if args.json else render_text(report))
    return 0


def cmd_semigroup(args) -> int:
    try:
        data = sieve(args.generators)
    except GcdNotOne as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({
            "generators": list(data.generators),
            "gaps": list(data.gaps),
            "frobenius": data.frobenius,
            "conductor": data.conductor,
            "delta": data.delta,
            "symmetric": data.symmetric,
        }, indent=2))
    else:
        print(f"semigroup <{', '.join(map(str, data.generators))}>")
        print(f"gaps: {list(data.gaps)}")
        print(f"frobenius: {data.frobenius}")
        print(f"conductor: {data.conductor}")
        print(f"delta: {data.delta}")
        print(f"symmetric: {data.symmetric}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchinv",
        description="Exact invariants and torsion verdicts for parametrized curve branches",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze a branch file")
    pa.add_argument("path")
    pa.add_argument("--json", action="store_true", help="machine-readable report")
    pa.add_argument("--truncation", type=int, default=None, metavar="N")
    pa.add_argument("--max-truncation", type=int, default=4096, metavar="M")
    pa.add_argument("--no-verify", action="store_true", help="skip the doubling check")
    pa.add_argument("--ideal", default=None, metavar="PATH",
                    help="also analyze a user-supplied fractional ideal")
    pa.set_defaults(func=cmd_analyze)

    ps = sub.add_parser("semigroup", help="numerical semigroup of positive integers")
    ps.add_argument("generators", type=int, nargs="+")
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_semigroup)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
