"""Command-line front end: ``centstab specht | stabilize | verify``."""
from __future__ import annotations

import argparse
import json
import sys
import time

from .combinatorics import ShapeError, as_partition, format_partition, parse_partition
from .linalg import Field, SemisimplicityViolation
from .specht import specht_module
from .stability import central_stabilization_sequence, dimension_polynomial_check, specht_stability_certificate
from .suites import SEMISIMPLE, SUITES, Bounds, build_seed, cases, run_case
from .symrep import RepresentationError

SCHEMA = "centstab/1"

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_FAILED = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(doc: dict, fmt: str, text: str, out):
    if fmt == "json":
        doc = {"schema": SCHEMA, **doc}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _matrix_text(M) -> str:
    rows = M.to_lists()
    cells = [[M.field.to_str(x) for x in r] for r in rows]
    w = max((len(c) for r in cells for c in r), default=1)
    return "\n".join("  [" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def cmd_specht(args, out) -> int:
    F = _field(args.field)
    try:
        mu = as_partition(parse_partition(args.partition))
    except (ShapeError, ValueError) as exc:
        raise UsageError(f"bad partition {args.partition!r}: {exc}") from exc
    S = specht_module(mu, F)
    rep = S.rep
    lines = [f"S^({format_partition(mu)}) over {F.spec}: dim {rep.dim}", "basis (standard tableaux):"]
    for t in rep.labels:
        lines.append("  " + " | ".join(",".join(map(str, r)) for r in t.rows))
    for i, g in enumerate(rep.gens, start=1):
        lines.append(f"s_{i} = ({i} {i + 1}):")
        lines.append(_matrix_text(g))
    doc = {"command": "specht", "partition": format_partition(mu), "rep": rep.to_json()}
    _emit(doc, args.format, "\n".join(lines), out)
    return EXIT_OK


def cmd_stabilize(args, out) -> int:
    F = _field(args.field)
    spec = args.seed_spec or args.seed
    if not spec:
        raise UsageError("a seed is required: trivial, perm or specht:<partition>")
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    try:
        phi = build_seed(spec, F)
    except (ShapeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    seq = central_stabilization_sequence(phi, args.steps)
    semisimple = F.p == 0 or F.p > seq.end
    if args.decompose and not semisimple:
        F.check_semisimple(seq.end)
    terms = [{"n": V.n, "dim": V.dim} for V in seq.reps]
    lines = [f"seed {spec} over {F.spec}, {args.steps} step(s)"]
    doc = {"command": "stabilize", "seed": spec, "field": F.spec, "steps": args.steps, "terms": terms}
    if semisimple:
        cert = specht_stability_certificate(seq)
        poly = dimension_polynomial_check(seq, cert)
        for t, c in zip(terms, cert.terms):
            t["constituents"] = c.to_json()["width_graded"]
            t["matched_next"] = c.matched_next
        doc["stable_from"] = cert.stable_from
        doc["dimension_polynomial"] = poly.to_json()
    for t in terms:
        line = f"  n={t['n']}: dim {t['dim']}"
        if "constituents" in t:
            parts = [f"{m}x({p})" if m > 1 else f"({p})" for items in t["constituents"].values() for p, m in items]
            line += "  " + " + ".join(parts) if parts else "  0"
        lines.append(line)
    if semisimple:
        coeffs = doc["dimension_polynomial"]["polynomial"]
        lines.append(f"dimension polynomial in n (low degree first): {coeffs}")
    _emit(doc, args.format, "\n".join(lines), out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    F = _field(args.field)
    for name, v in (("--max-n", args.max_n), ("--max-k", args.max_k), ("--max-m", args.max_m)):
        if v < 0:
            raise UsageError(f"{name} must be nonnegative")
    names = SUITES if args.suite == "all" else (args.suite,)
    if F.p and any(s in SEMISIMPLE for s in names):
        # refuse up front rather than fail case by case
        F.check_semisimple(max(args.max_n + args.max_k, args.max_n))
    bounds = Bounds(args.max_n, args.max_k, args.max_m)
    selected = cases(args.suite, F, bounds, args.filter)
    results = []
    for c in selected:
        t0 = time.perf_counter()
        r = run_case(c)
        results.append(r)
        if args.verbose:
            sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'} {c.id} ({time.perf_counter() - t0:.2f}s)\n")
    results.sort(key=lambda r: r.id)
    failed = [r for r in results if not r.passed]
    doc = {
        "command": "verify",
        "suite": args.suite,
        "field": F.spec,
        "bounds": {"max_n": args.max_n, "max_k": args.max_k, "max_m": args.max_m},
        "filter": args.filter,
        "cases": [r.to_json() for r in results],
        "total": len(results),
        "failed": len(failed),
        "pass": not failed,
    }
    lines = []
    for r in results:
        extra = f" homology={r.homology}" if r.homology is not None else ""
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.id:<44} {r.paper_statement:<28} dims={r.dims}{extra}"
                     + (f"  {r.detail}" if r.detail and not r.passed else ""))
    lines.append(f"{len(results) - len(failed)}/{len(results)} cases passed")
    _emit(doc, args.format, "\n".join(lines), out)
    return EXIT_OK if not failed else EXIT_FAILED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help='"Q" or "Fp:<prime>" (default Q)')
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = _Parser(prog="centstab", description="Specht modules, central stabilization and central stability complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("specht", parents=[common], help="print a Specht module in its standard basis")
    sp.add_argument("partition", help='comma-separated parts, e.g. "2,1"')
    sp.set_defaults(func=cmd_specht)

    st = sub.add_parser("stabilize", parents=[common], help="iterate central stabilization from a seed map")
    st.add_argument("seed", nargs="?", help="trivial | perm | specht:<partition>")
    st.add_argument("--seed-spec", help="same as the positional seed")
    st.add_argument("--steps", type=int, default=3, help="number of maps in the sequence (default 3)")
    st.add_argument("--decompose", action="store_true", help="require constituents (fails outside the semisimple range)")
    st.set_defaults(func=cmd_stabilize)

    vp = sub.add_parser("verify", parents=[common], help="run verification suites")
    vp.add_argument("suite", choices=SUITES + ("all",))
    vp.add_argument("--max-n", type=int, default=5)
    vp.add_argument("--max-k", type=int, default=3)
    vp.add_argument("--max-m", type=int, default=9)
    vp.add_argument("--filter", default=None, help="glob on case ids, e.g. 'resolution/exact/*'")
    vp.add_argument("-v", "--verbose", action="store_true", help="log each case to stderr")
    vp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"centstab: error: {exc}\n")
        return EXIT_USAGE
    except (SemisimplicityViolation, RepresentationError) as exc:
        sys.stderr.write(f"centstab: precondition violated: {exc}\n")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
