"""Command-line front end: ``cosys <command> ...``.

Exit codes: 0 success, 2 input error, 3 undefined invariant, 4 invalid weights.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import catalog, cosystole, graphs, matroid, verify
from .exactnum import format_rational
from .matroid import BinaryMatroid, NoCocircuits, UnknownElement

EXIT_INPUT, EXIT_UNDEFINED, EXIT_WEIGHTS = 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


# -- helpers ------------------------------------------------------------------------


def load_source(name: str | None = None, path: str | None = None) -> BinaryMatroid:
    if (name is None) == (path is None):
        raise CliError("give exactly one of --name and --file")
    if name is not None:
        return catalog.get(name).matroid
    return matroid.loads(Path(path).read_text(), name=Path(path).stem)


def load_spec(spec: str) -> BinaryMatroid:
    """A catalog name, or a path to a matroid file if no such name exists."""
    if spec in catalog.NAMES:
        return catalog.get(spec).matroid
    if Path(spec).is_file():
        return load_source(path=spec)
    raise catalog.UnknownName(spec)


def apply_minor(m: BinaryMatroid, deletions=(), contractions=()) -> BinaryMatroid:
    if deletions:
        m = matroid.delete(m, *deletions)
    if contractions:
        m = matroid.contract(m, *contractions)
    return m


def load_weights(path: str, m: BinaryMatroid) -> cosystole.WeightVector:
    text = Path(path).read_text()
    try:
        mu = cosystole.loads_weights(text)
    except ValueError as exc:
        # negative weights parse but are invalid; everything else is malformed input
        code = EXIT_WEIGHTS if "negative" in str(exc) else EXIT_INPUT
        raise CliError(f"weights: {exc}", code) from exc
    try:
        mu.on(m)
    except cosystole.GroundSetMismatch as exc:
        raise CliError(f"weights: {exc}", EXIT_WEIGHTS) from exc
    if mu.total == 0:
        raise cosystole.ZeroTotalWeight("weight function is identically zero")
    return mu


def invariant_report(m: BinaryMatroid, kind: str, res: cosystole.InvariantResult, elapsed_ms: int) -> dict:
    """The JSON report; rationals are "p/q" strings so nothing is rounded."""
    cocs = m.cocircuits()
    dual = []
    for key in sorted(res.dual_multipliers):
        idx = key.indices if isinstance(key, cosystole.AdmissibleTriple) else (key,)
        dual.append({
            "cocircuits": [sorted(m.labels_of(cocs[i])) for i in idx],
            "multiplier": format_rational(res.dual_multipliers[key]),
        })
    return {
        "matroid": m.name or "",
        "invariant": f"{kind}_star",
        "value": format_rational(res.value),
        "weights": {lab: format_rational(w) for lab, w in res.optimal_weights.items()},
        "dual": dual,
        "elapsed_ms": elapsed_ms,
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict:
    return json.loads(text)


# -- commands -----------------------------------------------------------------------


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        for name in catalog.NAMES:
            e = catalog.get(name)
            sys3 = format_rational(e.expected_sys3) if e.expected_sys3 is not None else "-"
            cog = str(e.expected_cogirth) if e.expected_cogirth is not None else "-"
            print(f"{name:12} rank {e.matroid.rank:2}  |E| {e.matroid.size:3}  sys3* {sys3:6} cogirth {cog}", file=out)
        return 0
    if not args.name:
        raise CliError("catalog export needs a name")
    text = matroid.dumps(catalog.get(args.name).matroid)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return 0


def cmd_invariant(args, out) -> int:
    m = apply_minor(load_source(args.name, args.file), args.delete, args.contract)
    if args.weights:
        mu = load_weights(args.weights, m)
        t0 = time.perf_counter()
        value = (cosystole.sys3_weighted if args.kind == "sys3" else cosystole.sys_weighted)(m, mu)
        elapsed = int((time.perf_counter() - t0) * 1000)
        if args.json:
            report = {
                "matroid": m.name or "",
                "invariant": f"{args.kind}_weighted",
                "value": format_rational(value),
                "weights": {lab: format_rational(w) for lab, w in mu.items()},
                "dual": [],
                "elapsed_ms": elapsed,
            }
            out.write(dumps_report(report))
        else:
            print(f"value {format_rational(value)}", file=out)
        return 0
    t0 = time.perf_counter()
    res = cosystole.sys3_star(m) if args.kind == "sys3" else cosystole.sys_star(m)
    elapsed = int((time.perf_counter() - t0) * 1000)
    if args.json:
        out.write(dumps_report(invariant_report(m, args.kind, res, elapsed)))
    elif args.kind == "sys3":
        out.write(cosystole.dumps_certificate(m, res))
    else:
        lines = [f"value {format_rational(res.value)}", "weights"]
        lines += [f"  {lab} {format_rational(w)}" for lab, w in res.optimal_weights.items()]
        lines.append("dual")
        cocs = m.cocircuits()
        lines += [f"  cocircuit {m.format_set(cocs[k])} {format_rational(lam)}"
                  for k, lam in sorted(res.dual_multipliers.items())]
        out.write("\n".join(lines) + "\n")
    return 0


def cmd_cocircuits(args, out) -> int:
    m = apply_minor(load_source(args.name, args.file), args.delete, args.contract)
    for c in m.cocircuits():
        print(m.format_set(c), file=out)
    return 0


def cmd_minor(args, out) -> int:
    m = apply_minor(load_source(args.name, args.file), args.delete, args.contract)
    out.write(matroid.dumps(m))
    return 0


def cmd_iso(args, out) -> int:
    a = apply_minor(load_spec(args.a), args.delete + args.a_delete, args.a_contract)
    b = apply_minor(load_spec(args.b), args.b_delete, args.b_contract)
    phi = matroid.isomorphic(a, b)
    if phi is None:
        print("not isomorphic", file=out)
        return 0
    for k in a.labels:
        print(f"{k} -> {phi[k]}", file=out)
    return 0


def cmd_census(args, out) -> int:
    gs = graphs.census_msr_cographic(args.vertices)
    out.write("\n".join(graphs.dumps(g) for g in gs))
    return 0


def cmd_verify(args, out) -> int:
    report = verify.run_suite(args.suite)
    print(report.render(), file=out)
    return 0 if report.overall else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cosys", description="Cosystoles of binary matroids.")
    sub = p.add_subparsers(dest="command", required=True)

    def source(sp):
        sp.add_argument("--name", help="catalog entry")
        sp.add_argument("--file", help="matroid text file")
        sp.add_argument("--delete", nargs="+", default=[], metavar="E")
        sp.add_argument("--contract", nargs="+", default=[], metavar="E")

    sp = sub.add_parser("catalog", help="list or export catalog entries")
    sp.add_argument("action", choices=["list", "export"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("invariant", help="sys* or sys3*, with certificates")
    sp.add_argument("kind", choices=["sys", "sys3"])
    source(sp)
    sp.add_argument("--weights", help="weight file; evaluate at these weights instead of maximising")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("cocircuits", help="print all cocircuits")
    source(sp)
    sp.set_defaults(func=cmd_cocircuits)

    sp = sub.add_parser("minor", help="print a minor in the matroid text format")
    source(sp)
    sp.set_defaults(func=cmd_minor)

    sp = sub.add_parser("iso", help="search for an isomorphism")
    sp.add_argument("--a", required=True, help="catalog name or matroid file")
    sp.add_argument("--b", required=True, help="catalog name or matroid file")
    sp.add_argument("--delete", nargs="+", default=[], metavar="E", help="same as --a-delete")
    for side in ("a", "b"):
        sp.add_argument(f"--{side}-delete", nargs="+", default=[], metavar="E")
        sp.add_argument(f"--{side}-contract", nargs="+", default=[], metavar="E")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("census", help="3-edge-connected non-planar cubic graphs")
    sp.add_argument("--vertices", type=int, required=True)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("verify", help="reproduce the catalogue results")
    sp.add_argument("suite", choices=verify.SUITES)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (cosystole.NoAdmissibleTriple, NoCocircuits) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (cosystole.ZeroTotalWeight, cosystole.GroundSetMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WEIGHTS
    except (catalog.UnknownName, UnknownElement, graphs.OutOfRange, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
