"""Command line interface: ``skeinlab <command> ...``.

Exit status 0 on success, 1 when a checked property fails, 2 on bad input.
Set ``SKEINLAB_CACHE`` to a file path to cache a-invariant results as JSON lines.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from typing import List, Optional, Sequence

from . import __version__
from .annulus import h, meridian_eigencheck, q_lambda_mu
from .diagram import (
    CENSUS_NAMES,
    BraidWord,
    FramedTangleKnot,
    Partition,
    add_curls,
    census,
    knot_from_braid,
    knot_from_pd,
)
from .hecke import build_e_lambda
from .invariants import a_invariant, check_symmetries, specialize, suite_pairs
from .kauffman import rudolph_check
from .ring import poly_from_json, poly_to_json, render_table
from .skein import default_engine, homfly_z, lemma1_audit

CACHE_ENV = "SKEINLAB_CACHE"
SUITES = ("integrality", "routes", "symmetries", "lemma1", "idempotents", "meridian")


class UsageError(Exception):
    """Bad user input; reported with exit status 2."""


# ---------------------------------------------------------------------------
# argument parsing


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from None


def _add_knot_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--knot", help=f"census knot: {', '.join(CENSUS_NAMES)}")
    src.add_argument("--braid", help='braid word closed on all but the first string, e.g. "1 -2 1 -2"')
    src.add_argument("--pd", metavar="FILE", help="JSON list of PD records [a, b, c, d, sign]")
    p.add_argument("--framing", type=int, default=0, help="insert this many curls (negative for left curls)")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "json"), default="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skeinlab", description="Homfly skein computations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homfly", help="framed Homfly polynomial of a knot (unknot = 1)")
    _add_knot_args(p)
    _add_format(p)

    p = sub.add_parser("a-invariant", help="the (1,1)-tangle invariant a_K(lambda, mu)")
    _add_knot_args(p)
    p.add_argument("--lambda", dest="lam", type=_partition, default=Partition(), help='e.g. "2,1"')
    p.add_argument("--mu", type=_partition, default=Partition())
    p.add_argument("--N", dest="N", type=int, nargs="*", default=[], help="also substitute v = s^N")
    p.add_argument("--route-b", action="store_true", help="cross-check with the eigenvalue sum")
    _add_format(p)

    p = sub.add_parser("q-element", help="expand Q_{lambda, mu} in h_k, h*_k")
    p.add_argument("--lambda", dest="lam", type=_partition, default=Partition())
    p.add_argument("--mu", type=_partition, default=Partition())
    _add_format(p)

    p = sub.add_parser("rudolph", help="mod 2 comparison with the Kauffman polynomial")
    _add_knot_args(p)
    _add_format(p)

    p = sub.add_parser("verify", help="run a property suite over the census knots")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-weight", type=int, default=2, help="bound on |lambda| + |mu|")
    p.add_argument("--knots", nargs="*", default=list(CENSUS_NAMES))
    return parser


def load_knot(args) -> FramedTangleKnot:
    if args.knot:
        try:
            knot = census(args.knot)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    elif args.braid:
        try:
            knot = knot_from_braid(BraidWord.parse(args.braid), name=f"braid[{args.braid}]")
        except ValueError as exc:
            raise UsageError(f"bad braid word: {exc}") from None
    else:
        try:
            with open(args.pd) as fh:
                records = json.load(fh)
            knot = knot_from_pd(records, name=os.path.basename(args.pd))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read PD file {args.pd}: {exc}") from None
    return add_curls(knot, args.framing) if args.framing else knot


# ---------------------------------------------------------------------------
# cache


def _cache_key(knot: FramedTangleKnot, lam: Partition, mu: Partition) -> str:
    digest = hashlib.sha256(knot.diagram.to_json().encode()).hexdigest()[:16]
    return json.dumps([knot.name, digest, knot.framing, list(lam), list(mu), __version__])


def _cache_get(key: str) -> Optional[dict]:
    path = os.environ.get(CACHE_ENV)
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        for line in fh:
            try:
                rec = json.loads(line)
            except ValueError:
                continue
            if rec.get("key") == key:
                return rec["report"]
    return None


def _cache_put(key: str, report: dict) -> None:
    path = os.environ.get(CACHE_ENV)
    if not path:
        return
    with open(path, "a") as fh:
        fh.write(json.dumps({"key": key, "report": report}, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_homfly(args, out) -> int:
    knot = load_knot(args)
    val = homfly_z(knot.closure())
    if args.format == "json":
        out.write(json.dumps({"knot": knot.name, "framing": knot.framing, "homfly": poly_to_json(val)}, sort_keys=True))
        out.write("\n")
    else:
        out.write(f"{knot.name} (framing {knot.framing})\n{render_table(val)}\n")
    return 0


def _table(data: dict) -> str:
    if data["zform"] is not None:
        return render_table(poly_from_json(data["zform"]))
    return str(poly_from_json(data["a"]))


def cmd_a_invariant(args, out) -> int:
    knot = load_knot(args)
    plain = not (args.N or args.route_b)
    key = _cache_key(knot, args.lam, args.mu)
    data = _cache_get(key) if plain else None
    if data is None:
        report = a_invariant(knot, args.lam, args.mu, route_b=args.route_b)
        for n in args.N:
            specialize(report, n)
        data = report.to_dict()
        if plain:
            _cache_put(key, data)
    if args.format == "json":
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        out.write(f"a_{knot.name}({args.lam}, {args.mu})  framing {knot.framing}\n{_table(data)}\n")
        for n, val in sorted(data.get("specializations", {}).items(), key=lambda t: int(t[0])):
            out.write(f"v = s^{n}: {poly_from_json(val)}\n")
        if args.route_b:
            out.write(f"routes agree: {data['checks']['routes_agree']}\n")
    if args.route_b and not data["checks"]["routes_agree"]:
        sys.stderr.write("skeinlab: check failed: routes\n")
        return 1
    return 0


def cmd_q_element(args, out) -> int:
    q = q_lambda_mu(args.lam, args.mu)
    if args.format == "json":
        out.write(q.to_json() + "\n")
    else:
        out.write(f"{q}\n")
    return 0


def cmd_rudolph(args, out) -> int:
    knot = load_knot(args)
    rep = rudolph_check(knot)
    if args.format == "json":
        out.write(json.dumps(rep.to_dict(), sort_keys=True) + "\n")
    else:
        out.write(f"{knot.name}: {rep.verdict()}\n")
        out.write(f"homfly side mod 2:\n{render_table(rep.homfly_side)}\n")
        out.write(f"kauffman side mod 2:\n{render_table(rep.kauffman_side)}\n")
    return 0 if rep.equal else 1


def _label(lam, mu) -> str:
    return f"(({','.join(map(str, lam))}),({','.join(map(str, mu))}))"


def run_suite(name: str, knots: Sequence[str], max_weight: int) -> List[tuple]:
    """Run one property suite; returns sorted ``(item, passed, detail)`` rows."""
    rows = []
    ks = [census(k) for k in knots]
    pairs = suite_pairs(max_weight)
    if name in ("integrality", "routes", "lemma1", "symmetries"):
        for k in ks:
            for lam, mu in pairs:
                item = f"{k.name} {_label(lam, mu)}"
                try:
                    rep = a_invariant(k, lam, mu, route_b=(name == "routes"))
                except ArithmeticError as exc:
                    rows.append((item, False, str(exc)))
                    continue
                if name == "integrality":
                    rows.append((item, rep.integral, ""))
                elif name == "routes":
                    rows.append((item, bool(rep.routes_agree), ""))
                elif name == "lemma1":
                    rows.append((item, rep.lemma1, ""))
                else:
                    sym = check_symmetries(k, lam, mu)
                    rows.append((item, bool(sym), f"swap={sym.swap} conjugate={sym.conjugate}"))
        if name == "lemma1":
            for k in ks:
                _, trace = default_engine().resolve(k.closure()) if k.crossing_count else (None, None)
                if trace is not None:
                    rows.append((f"{k.name} closure", bool(lemma1_audit(trace)), ""))
    elif name == "idempotents":
        for n in range(1, max_weight + 1):
            for lam in Partition.all_of(n):
                item = f"e_{lam}"
                try:
                    rec = build_e_lambda(lam)
                except ArithmeticError as exc:
                    rows.append((item, False, str(exc)))
                    continue
                rows.append((item, rec.element * rec.element == rec.element, ""))
        if max_weight >= 2:
            e2 = build_e_lambda(Partition((2,))).element
            e11 = build_e_lambda(Partition((1, 1))).element
            rows.append(("e_(2) e_(1,1) = 0", (e2 * e11).is_zero(), ""))
    elif name == "meridian":
        for lam, mu in pairs:
            rep = meridian_eigencheck(q_lambda_mu(lam, mu), ks)
            rows.append((f"Q{_label(lam, mu)}", rep.consistent, ""))
        if len(ks) > 1:
            rep = meridian_eigencheck(h(1) + h(2), ks)
            rows.append(("h1+h2 (not an eigenvector)", not rep.consistent, "ratios differ" if not rep.consistent else "ratios agree"))
    return sorted(rows)


def cmd_verify(args, out) -> int:
    for k in args.knots:
        if k not in CENSUS_NAMES:
            raise UsageError(f"unknown census knot {k!r}")
    if args.max_weight < 1:
        raise UsageError("--max-weight must be at least 1")
    rows = run_suite(args.suite, args.knots, args.max_weight)
    failed = 0
    for item, ok, detail in rows:
        failed += not ok
        out.write(f"{'PASS' if ok else 'FAIL'}  {args.suite}  {item}{'  ' + detail if detail else ''}\n")
    out.write(f"{args.suite}: {len(rows) - failed}/{len(rows)} passed\n")
    if failed:
        out.write(f"FAILED invariant: {args.suite}\n")
    return 1 if failed else 0


COMMANDS = {
    "homfly": cmd_homfly,
    "a-invariant": cmd_a_invariant,
    "q-element": cmd_q_element,
    "rudolph": cmd_rudolph,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        sys.stderr.write(f"skeinlab: error: {exc}\n")
        return 2
    except ArithmeticError as exc:
        sys.stderr.write(f"skeinlab: check failed: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
