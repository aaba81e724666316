"""q-Fuss-Catalan polynomials, their twisted and positive variants, and
cyclic-sieving checks at regular numbers.

The exponents of Psi^m(V*)* are stored data (``data/psi_table.txt``); for
well-generated groups they are the exponents of V for every m.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .cyclo import CycloNum
from .groups import ReflectionGroup, data_dir, exceptional_table
from .invariants import character, degrees, exponents
from .qseries import NotAPolynomial, QPolynomial, eval_at_root, ratio_product

__all__ = [
    "PSI_FILE",
    "CatalanContradiction",
    "UnsupportedCase",
    "PsiTableError",
    "PsiRecord",
    "PsiExponentTable",
    "CSPEntry",
    "CatalanReport",
    "psi_table",
    "psi_exponents",
    "fuss_catalan",
    "twisted_catalan",
    "galois_lift",
    "positive_fuss_catalan",
    "regular_numbers",
    "csp_check",
    "congruence_permutation_check",
]

PSI_FILE = "psi_table.txt"
IMPRIMITIVE_TAG = "formula:imprimitive"


class CatalanContradiction(ArithmeticError):
    """A computed Catalan polynomial is not in N[q].

    ``certificate`` holds the evidence: the division remainder, or the
    index and value of a negative or fractional coefficient.
    """

    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = certificate


class UnsupportedCase(ValueError):
    pass


class PsiTableError(RuntimeError):
    pass


# -- the stored table -------------------------------------------------------


@dataclass(frozen=True)
class PsiRecord:
    spec: str
    h: str
    psi_order: str
    rows: tuple[tuple[int, ...], ...] = ()
    formula: str = ""


def _digest(lines: list[str]) -> str:
    return "sha256:" + hashlib.sha256("\n".join(lines).encode()).hexdigest()


class PsiExponentTable:
    def __init__(self, records: dict[str, PsiRecord]):
        self.records = records

    @classmethod
    def parse(cls, text: str, check: bool = True) -> "PsiExponentTable":
        body, stated = [], None
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("checksum:"):
                stated = line.split(":", 1)[1].strip()
                continue
            body.append(line)
        if check and stated != _digest(body):
            raise PsiTableError("psi table checksum mismatch")
        records = {}
        for line in body:
            parts = [p.strip() for p in line.split("|")]
            if len(parts) != 4:
                raise PsiTableError(f"malformed psi table line: {line!r}")
            spec, h, order, rows = parts
            if rows.startswith("formula:"):
                records[spec] = PsiRecord(spec, h, order, formula=rows)
                continue
            parsed = tuple(tuple(sorted(int(x) for x in r.split(","))) for r in rows.split(";"))
            if len(parsed) != int(order):
                raise PsiTableError(f"{spec}: {len(parsed)} rows for psi order {order}")
            records[spec] = PsiRecord(spec, h, order, rows=parsed)
        return cls(records)

    @classmethod
    def load(cls, directory: Path | None = None) -> "PsiExponentTable":
        path = (directory or data_dir()) / PSI_FILE
        table = cls.parse(path.read_text())
        table.cross_check(exceptional_table(directory))
        return table

    def cross_check(self, generator_records: dict) -> None:
        """The Psi rows are also carried by the generator data; they must agree."""
        for spec, rec in self.records.items():
            if rec.formula or spec not in generator_records:
                continue
            other = generator_records[spec]
            stored = tuple(tuple(sorted(r)) for r in other["psi_rows"])
            if stored != rec.rows or int(other["psi_order"]) != int(rec.psi_order):
                raise PsiTableError(f"{spec}: psi rows differ between data files")

    def record(self, spec: str) -> PsiRecord:
        try:
            return self.records[spec]
        except KeyError:
            raise UnsupportedCase(f"{spec} has no psi-exponent record") from None

    def render(self) -> str:
        lines = []
        for rec in self.records.values():
            rows = rec.formula or " ; ".join(",".join(map(str, r)) for r in rec.rows)
            lines.append(f"{rec.spec} | {rec.h} | {rec.psi_order} | {rows}")
        return "\n".join(lines)


@lru_cache(maxsize=4)
def _cached_table(directory: str) -> PsiExponentTable:
    return PsiExponentTable.load(Path(directory))


def psi_table(directory: Path | None = None) -> PsiExponentTable:
    return _cached_table(str(directory or data_dir()))


def imprimitive_row(d: int, e: int, n: int, m: int) -> list[int]:
    mb = m % e
    return sorted([d * (k * e - mb) - 1 for k in range(1, n)] + [d * (mb * (n - 1) + n) - 1])


def psi_order(G: ReflectionGroup) -> int:
    if G.well_generated:
        return 1
    if G.spec.kind == "imprimitive":
        return G.spec.params[1]
    return int(psi_table().record(G.spec.text).psi_order)


def psi_exponents(G: ReflectionGroup, m: int) -> list[int]:
    """Exponents of Psi^m(V*)*, sorted."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if G.well_generated:
        row = [d - 1 for d in degrees(G).degrees]
    elif G.spec.kind == "imprimitive":
        mm, p, n = G.spec.params
        row = imprimitive_row(mm // p, p, n, m)
    else:
        rec = psi_table().record(G.spec.text)
        row = list(rec.rows[m % len(rec.rows)])
    if sum(row) != G.N_star:
        raise PsiTableError(f"{G.spec}: psi row {row} does not sum to N* = {G.N_star}")
    return row


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class CSPEntry:
    d: int
    t: int
    value: CycloNum

    @property
    def integral(self) -> bool:
        return self.value.is_integer()

    @property
    def ok(self) -> bool:
        return self.integral and self.value.to_rational() > 0


@dataclass
class CatalanReport:
    spec: str
    kind: str
    parameter: int
    numerators: list[int]
    denominators: list[int]
    polynomial: QPolynomial
    galois_exponent: int | None = None
    csp: list[CSPEntry] = field(default_factory=list)

    @property
    def value_at_1(self) -> int:
        return int(self.polynomial.value_at_1())

    @property
    def positivity(self) -> bool:
        return self.polynomial.is_nonneg_integral()


def _assemble(G, kind, parameter, nums, dens, roots, galois_exponent=None) -> CatalanReport:
    try:
        poly = ratio_product(nums, dens)
    except NotAPolynomial as exc:
        raise CatalanContradiction(
            f"{G.spec} {kind}({parameter}): {exc}",
            {"remainder": [str(c) for c in exc.remainder.coeffs], "numerators": nums, "denominators": dens},
        ) from exc
    for k, c in enumerate(poly.coeffs):
        if c < 0 or c.denominator != 1:
            raise CatalanContradiction(
                f"{G.spec} {kind}({parameter}): coefficient of q^{k} is {c}",
                {"index": k, "coefficient": str(c), "numerators": nums, "denominators": dens},
            )
    report = CatalanReport(str(G.spec), kind, parameter, nums, dens, poly, galois_exponent)
    for d in roots:
        report.csp.extend(_evaluate(poly, d))
    return report


def _evaluate(poly: QPolynomial, d: int) -> list[CSPEntry]:
    return [CSPEntry(d, t, eval_at_root(poly, d, t)) for t in range(d)]


def fuss_catalan(G: ReflectionGroup, m: int, roots=()) -> CatalanReport:
    """prod [mh + 1 + e_i]_q / [d_i]_q with e_i the exponents of Psi^m(V*)*."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    nums = [m * G.h + 1 + e for e in psi_exponents(G, m)]
    return _assemble(G, "fuss", m, nums, degrees(G).degrees, roots)


def galois_lift(G: ReflectionGroup, p: int) -> int:
    """Smallest a = p mod h, a > 0, coprime to the conductor."""
    h, ell = G.h, G.conductor
    a = p % h
    for _ in range(max(ell, 1)):
        if a > 0 and math.gcd(a, ell) == 1:
            return a
        a += h
    raise UnsupportedCase(f"{G.spec}: no Galois lift of {p} mod {h} coprime to {ell}")


def twisted_catalan(G: ReflectionGroup, p: int, lift: int | None = None, roots=(), kind="twisted") -> CatalanReport:
    """prod [p + e_i(gV)]_q / [d_i]_q for g acting on zeta_h as zeta_h^p."""
    if not G.well_generated:
        raise UnsupportedCase(f"{G.spec} is not well-generated")
    if p <= 0:
        raise ValueError("p must be positive")
    if math.gcd(p, G.h) != 1:
        raise ValueError(f"p={p} is not coprime to h={G.h}")
    if lift is None:
        a = galois_lift(G, p)
    else:
        a = lift
        if (a - p) % G.h or math.gcd(a, G.conductor) != 1:
            raise ValueError(f"{a} is not a valid lift of {p} mod {G.h}")
    ex = exponents(G, character(G, f"galois_twist(V,{a})"))
    nums = [p + e for e in ex]
    return _assemble(G, kind, p, nums, degrees(G).degrees, roots, galois_exponent=a)


def positive_fuss_catalan(G: ReflectionGroup, m: int, roots=()) -> CatalanReport:
    if not G.well_generated:
        raise UnsupportedCase(
            f"{G.spec}: positive Fuss-Catalan needs exponents of Psi^m(V)*, which are not stored"
        )
    if m < 1:
        raise ValueError("m must be positive")
    return twisted_catalan(G, m * G.h - 1, roots=roots, kind="positive")


# -- cyclic sieving ---------------------------------------------------------


def regular_numbers(G: ReflectionGroup) -> list[int]:
    """d <= h dividing as many degrees as codegrees."""
    prof = degrees(G)
    degs = prof.degrees
    codegs = prof.codegrees
    return [
        d
        for d in range(1, G.h + 1)
        if sum(x % d == 0 for x in degs) == sum(x % d == 0 for x in codegs)
    ]


def csp_check(G: ReflectionGroup, m: int, d: int) -> list[tuple[int, CycloNum, bool]]:
    if d not in regular_numbers(G):
        raise ValueError(f"{d} is not a regular number for {G.spec}")
    poly = fuss_catalan(G, m).polynomial
    return [(e.t, e.value, e.ok) for e in _evaluate(poly, d)]


def congruence_permutation_check(G: ReflectionGroup, m: int, d: int) -> bool:
    nums = Counter((m * G.h + 1 + e) % d for e in psi_exponents(G, m))
    return nums == Counter(x % d for x in degrees(G).degrees)
