"""Command-line interface.

Exit codes: 0 success, 2 usage or group-spec parse error, 3 build error or
unsupported case, 4 a computed result contradicts N[q]-positivity or
cyclic sieving, 5 a verification mismatch (table3 --verify, selftest).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import catalan as cat
from .cyclo import CycloNum
from .groups import GroupBuildError, build
from .invariants import InvariantError, degrees, exponents
from .specs import SpecParseError, UnsupportedGroup, parse_spec
from .suites import BATTERIES, run_battery

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUILD = 3
EXIT_CONTRADICTION = 4
EXIT_MISMATCH = 5

TABLE3_DEFAULT = ("G7", "G11", "G12", "G13", "G15", "G19", "G22")
TABLE3_LARGE = ("G31",)


@dataclass
class OutputRecord:
    command: str
    group: str | None
    payload: dict
    verdicts: dict = field(default_factory=dict)
    timing: dict | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        return cls(**json.loads(text))

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


class CliError(Exception):
    def __init__(self, code: int, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.code = code
        self.certificate = certificate


def cyclo_json(z: CycloNum) -> dict:
    return {"conductor": z.conductor, "coeffs": [[k, str(c)] for k, c in enumerate(z.coeffs) if c]}


def cyclo_text(z: CycloNum) -> str:
    return str(z.to_rational()) if z.is_rational() else str(z)


def _build(text: str, allow_large: bool = False):
    try:
        spec = parse_spec(text)
    except SpecParseError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    except UnsupportedGroup as exc:
        raise CliError(EXIT_BUILD, str(exc)) from exc
    try:
        return build(spec, allow_large=allow_large)
    except (GroupBuildError, UnsupportedGroup, InvariantError) as exc:
        raise CliError(EXIT_BUILD, str(exc)) from exc


# -- commands ---------------------------------------------------------------


def cmd_info(args) -> OutputRecord:
    G = _build(args.spec, args.allow_large)
    prof = degrees(G)
    payload = {
        "order": G.order,
        "rank": G.n,
        "conductor": G.conductor,
        "N": G.N,
        "N_star": G.N_star,
        "h": G.h,
        "degrees": prof.degrees,
        "exponents_V": exponents(G, "V"),
        "coexponents": prof.coexponents,
        "hyperplane_orbits": G.orbit_structure(),
        "well_generated": G.well_generated,
        "regular_numbers": cat.regular_numbers(G),
    }
    verdicts = {
        "nh=N+N*": G.n * G.h == G.N + G.N_star,
        "prod d_i=|W|": _prod(prof.degrees) == G.order,
        "sum d_i=N*+n": sum(prof.degrees) == G.N_star + G.n,
    }
    if G.well_generated:
        verdicts["h=d_n"] = G.h == prof.degrees[-1]
    return OutputRecord("info", str(G.spec), payload, verdicts)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def _report_payload(r: cat.CatalanReport, regular: list[int]) -> dict:
    return {
        "kind": r.kind,
        "parameter": r.parameter,
        "galois_exponent": r.galois_exponent,
        "numerators": r.numerators,
        "denominators": r.denominators,
        "coefficients": r.polynomial.int_coeffs(),
        "pretty": r.polynomial.pretty(),
        "value_at_1": r.value_at_1,
        "positive": r.positivity,
        "csp": [
            {
                "d": e.d,
                "t": e.t,
                "value": cyclo_json(e.value),
                "text": cyclo_text(e.value),
                "integral": e.integral,
                "ok": e.ok,
                "regular": e.d in regular,
            }
            for e in r.csp
        ],
    }


def cmd_catalan(args) -> OutputRecord:
    G = _build(args.spec, args.allow_large)
    roots = args.at_root or []
    if any(d < 1 for d in roots):
        raise CliError(EXIT_PARSE, "--at-root needs positive integers")
    try:
        if args.twisted is not None:
            r = cat.twisted_catalan(G, args.twisted, roots=roots)
        else:
            if args.m is None:
                raise CliError(EXIT_PARSE, "catalan needs --m (or --twisted p)")
            if args.positive:
                r = cat.positive_fuss_catalan(G, args.m, roots=roots)
            else:
                r = cat.fuss_catalan(G, args.m, roots=roots)
    except cat.CatalanContradiction as exc:
        raise CliError(EXIT_CONTRADICTION, str(exc), exc.certificate) from exc
    except cat.UnsupportedCase as exc:
        raise CliError(EXIT_BUILD, str(exc)) from exc
    except ValueError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    regular = cat.regular_numbers(G)
    payload = _report_payload(r, regular)
    verdicts = {"N[q]": r.positivity}
    for d in sorted(set(roots)):
        if d in regular:
            verdicts[f"csp d={d}"] = all(e.ok for e in r.csp if e.d == d)
            if r.kind == "fuss":
                verdicts[f"congruence d={d}"] = cat.congruence_permutation_check(G, r.parameter, d)
    return OutputRecord("catalan", str(G.spec), payload, verdicts)


def _table_rows() -> list[dict]:
    table = cat.psi_table()
    rows = []
    for rec in table.records.values():
        rows.append(
            {
                "group": rec.spec,
                "h": rec.h,
                "psi_order": rec.psi_order,
                "rows": [list(r) for r in rec.rows] if rec.rows else rec.formula,
            }
        )
    return rows


def cmd_table3(args) -> OutputRecord:
    try:
        rows = _table_rows()
    except cat.PsiTableError as exc:
        raise CliError(EXIT_BUILD, str(exc)) from exc
    verdicts: dict[str, bool] = {}
    details = []
    if args.verify:
        groups = TABLE3_DEFAULT + (TABLE3_LARGE if args.include_large else ())
        table = cat.psi_table()
        for name in groups:
            G = _build(name, allow_large=name in TABLE3_LARGE)
            rec = table.record(name)
            ds = degrees(G).degrees
            ev = exponents(G, "V")
            cells = {
                f"{name}.order=prod d_i": _prod(ds) == G.order,
                f"{name}.h": str(G.h) == rec.h,
                f"{name}.m=0": list(rec.rows[0]) == ev,
            }
            for m, row in enumerate(rec.rows):
                cells[f"{name}.m={m} sum=N*"] = sum(row) == G.N_star
            verdicts.update(cells)
            details.append(
                {"group": name, "order": G.order, "h": G.h, "N_star": G.N_star, "degrees": ds, "exponents_V": ev}
            )
    payload = {"rows": rows, "verified": details}
    return OutputRecord("table3", None, payload, verdicts)


def cmd_selftest(args) -> OutputRecord:
    checks, timing = run_battery(args.battery, seed=args.seed, kernel_cases=args.cases)
    matrix: dict[str, dict[str, list[int]]] = {}
    failures = []
    for c in checks:
        cell = matrix.setdefault(c.group, {}).setdefault(c.suite, [0, 0])
        cell[0 if c.ok else 1] += 1
        if not c.ok:
            failures.append({"group": c.group, "suite": c.suite, "check": c.name, "detail": c.detail})
    verdicts = {f"{g}/{s}": v[1] == 0 for g, row in matrix.items() for s, v in row.items()}
    payload = {"battery": args.battery, "groups": BATTERIES[args.battery], "matrix": matrix, "failures": failures}
    return OutputRecord("selftest", None, payload, verdicts, {"groups": timing})


# -- output -----------------------------------------------------------------


def _human(rec: OutputRecord) -> str:
    p = rec.payload
    out = []
    kind = rec.command.split()[0]
    if kind == "info":
        out.append(f"group           {rec.group}")
        for key in ("order", "rank", "conductor", "N", "N_star", "h", "degrees", "exponents_V", "coexponents"):
            out.append(f"{key:<16}{_fmt(p[key])}")
        orbits = ", ".join(f"{o['size']} x e_H={o['e_H']}" for o in p["hyperplane_orbits"])
        out.append(f"{'hyperplanes':<16}{orbits}")
        out.append(f"{'well_generated':<16}{str(p['well_generated']).lower()}")
        out.append(f"{'regular':<16}{_fmt(p['regular_numbers'])}")
    elif kind == "catalan":
        label = {"fuss": "m", "twisted": "p", "positive": "m"}[p["kind"]]
        head = f"{rec.group} {p['kind']} {label}={p['parameter']}"
        if p["galois_exponent"] is not None:
            head += f" (galois exponent {p['galois_exponent']})"
        out.append(head)
        out.append(f"polynomial      {p['pretty']}")
        out.append(f"coefficients    {_fmt(p['coefficients'])}")
        out.append(f"value_at_1      {p['value_at_1']}")
        out.append(f"positive        {str(p['positive']).lower()}")
        by_d: dict[int, list[str]] = {}
        for e in p["csp"]:
            by_d.setdefault(e["d"], []).append(e["text"])
        for d, vals in by_d.items():
            out.append(f"at zeta_{d}^t     {', '.join(vals)}")
    elif kind == "table3":
        out.append("group      | h          | psi order | exponents of Psi^m(V*)*")
        for r in p["rows"]:
            rows = r["rows"] if isinstance(r["rows"], str) else " ; ".join(_fmt(x) for x in r["rows"])
            out.append(f"{r['group']:<10} | {r['h']:<10} | {r['psi_order']:<9} | {rows}")
    elif kind == "selftest":
        suites = sorted({s for row in p["matrix"].values() for s in row})
        out.append("group      " + "".join(f"{s:<12}" for s in suites))
        for g, row in p["matrix"].items():
            cells = []
            for s in suites:
                if s not in row:
                    cells.append(f"{'-':<12}")
                else:
                    ok, bad = row[s]
                    cells.append(f"{('pass ' if not bad else 'FAIL ') + str(ok + bad):<12}")
            out.append(f"{g:<11}" + "".join(cells))
        for f in p["failures"]:
            out.append(f"FAIL {f['group']} {f['suite']}: {f['check']} {f['detail']}")
    if rec.verdicts:
        bad = [k for k, v in rec.verdicts.items() if not v]
        status = "all verified" if not bad else "FAILED: " + ", ".join(bad)
        out.append(f"verdicts        {len(rec.verdicts)} checked, {status}")
    if rec.timing:
        out.append(f"time            {rec.timing['total']:.3f}s")
    return "\n".join(out)


def _fmt(v) -> str:
    if isinstance(v, list):
        return ", ".join(str(x) for x in v)
    return str(v)


def _tsv(rec: OutputRecord) -> str:
    lines = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k, x in v.items():
                walk(f"{prefix}.{k}" if prefix else str(k), x)
        elif isinstance(v, list) and v and isinstance(v[0], (dict, list)):
            for i, x in enumerate(v):
                walk(f"{prefix}.{i}", x)
        elif isinstance(v, list):
            lines.append(f"{prefix}\t{','.join(str(x) for x in v)}")
        else:
            lines.append(f"{prefix}\t{json.dumps(v) if isinstance(v, bool) or v is None else v}")

    walk("", {"command": rec.command, "group": rec.group, "payload": rec.payload, "verdicts": rec.verdicts})
    if rec.timing:
        walk("timing", rec.timing)
    return "\n".join(lines)


def render(rec: OutputRecord, fmt: str) -> str:
    if fmt == "json":
        return rec.to_json()
    if fmt == "tsv":
        return _tsv(rec)
    return _human(rec)


# -- entry point ------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output")
    fmt.add_argument("--tsv", dest="format", action="store_const", const="tsv", help="tab-separated output")
    common.add_argument("--deterministic", action="store_true", help="omit timing")

    ap = argparse.ArgumentParser(prog="reflcat", description="Complex reflection groups and q-Fuss-Catalan data.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="group invariants")
    p.add_argument("spec")
    p.add_argument("--allow-large", action="store_true", help="lift the order cap")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("catalan", parents=[common], help="q-Fuss-Catalan polynomials")
    p.add_argument("spec")
    p.add_argument("--m", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--positive", action="store_true", help="positive variant (well-generated groups)")
    mode.add_argument("--twisted", type=int, metavar="P", help="Galois-twisted Catalan at p")
    p.add_argument("--at-root", type=int, action="append", metavar="D", help="evaluate at d-th roots of unity")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_catalan)

    p = sub.add_parser("table3", parents=[common], help="stored Psi-exponent table")
    p.add_argument("--verify", action="store_true", help="recompute h, degrees and m=0 rows")
    p.add_argument("--include-large", action="store_true", help="also verify G31")
    p.set_defaults(func=cmd_table3)

    p = sub.add_parser("selftest", parents=[common], help="run the property suites")
    p.add_argument("--battery", choices=sorted(BATTERIES), default="small")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=1000, help="randomized kernel cases")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = make_parser().parse_args(argv)
    fmt = args.format or "human"
    t0 = time.perf_counter()
    try:
        rec = args.func(args)
    except CliError as exc:
        print(f"reflcat: error: {exc}", file=sys.stderr)
        if exc.certificate is not None:
            print(f"reflcat: certificate: {json.dumps(exc.certificate)}", file=sys.stderr)
        if fmt == "json":
            err = OutputRecord(
                args.command,
                getattr(args, "spec", None),
                {"error": str(exc), "exit_code": exc.code, "certificate": exc.certificate},
                {},
            )
            print(err.to_json())
        return exc.code
    rec.command = " ".join([args.command] + [a for a in argv[1:] if a not in ("--json", "--tsv", "--deterministic")])
    if args.deterministic:
        rec.timing = None
    else:
        rec.timing = dict(rec.timing or {})
        rec.timing["total"] = round(time.perf_counter() - t0, 6)
    print(render(rec, fmt))
    if rec.ok:
        return EXIT_OK
    if args.command == "catalan":
        return EXIT_CONTRADICTION
    return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
