"""Property suites shared by ``reflcat selftest`` and the test-suite.

Each suite returns a list of ``Check`` records rather than raising, so a
battery run reports every failure at once.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import catalan as cat
from . import cyclo
from .cyclo import CycloNum, make_rational, root_of_unity
from .groups import ReflectionGroup, build
from .invariants import c_value, character, degrees, exponents, fake_degree, local_data
from .qseries import QPolynomial, eval_at_root, geom_inverse, q_binomial, q_int, ratio_product

SMALL_BATTERY = (
    [f"Cyc({d})" for d in range(2, 7)]
    + [f"Sym({n})" for n in range(2, 5)]
    + [f"Dih({e})" for e in range(3, 7)]
    + ["G(4,2,2)", "G12"]
)
FULL_BATTERY = SMALL_BATTERY + [
    "G7", "G11", "G13", "G15", "G19", "G22", "G(6,2,2)", "G(6,3,2)", "Sym(5)",
]
BATTERIES = {"small": SMALL_BATTERY, "full": FULL_BATTERY}

KERNEL_CONDUCTORS = (1, 3, 4, 5, 8, 12, 20)


@dataclass(frozen=True)
class Check:
    group: str
    suite: str
    name: str
    ok: bool
    detail: str = ""


class _Recorder:
    def __init__(self, group: str, suite: str):
        self.group, self.suite = group, suite
        self.checks: list[Check] = []

    def __call__(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(self.group, self.suite, name, bool(ok), "" if ok else detail))
        return ok

    def run(self, name: str, fn) -> None:
        """Record fn() as a check; exceptions count as failures."""
        try:
            ok = fn()
        except Exception as exc:  # report, don't stop the battery
            self(name, False, f"{type(exc).__name__}: {exc}")
            return
        if isinstance(ok, tuple):
            self(name, *ok)
        else:
            self(name, ok)


def _labels(G: ReflectionGroup) -> list[str]:
    out = ["triv", "V", "V_dual", "det"]
    if G.n >= 2:
        out.insert(3, "ext_dual(2)")
    return out


def _exponent_sum_identity(G: ReflectionGroup, label: str):
    chi = character(G, label)
    lhs = sum(exponents(G, chi))
    rhs = 0
    for t, H in enumerate(G.hyperplanes):
        loc = local_data(G, t, chi)
        rhs += sum(j * loc[j] for j in range(1, H.e_H))
    return lhs == rhs, f"sum e_i = {lhs}, local sum = {rhs}"


def structural_checks(G: ReflectionGroup) -> list[Check]:
    rec = _Recorder(str(G.spec), "structure")
    prof = degrees(G)
    ds = prof.degrees
    rec("h=(N+N*)/n", G.h * G.n == G.N + G.N_star, f"h={G.h}, N={G.N}, N*={G.N_star}")
    rec.run("h=c_V", lambda: (c_value(G, "V") == G.h, f"c_V={c_value(G, 'V')}"))
    rec("sum d_i=N*+n", sum(ds) == G.N_star + G.n, f"degrees {ds}")
    rec("prod d_i=|W|", math.prod(ds) == G.order, f"degrees {ds}, |W|={G.order}")
    rec("nh=sum e_H", sum(H.e_H for H in G.hyperplanes) == G.n * G.h)
    if G.n >= 2:
        rec("h>e_H", all(G.h > H.e_H for H in G.hyperplanes))
    if G.well_generated:
        rec("h=d_n", G.h == ds[-1], f"h={G.h}, degrees {ds}")
        ev, ed = exponents(G, "V"), prof.coexponents
        n = G.n
        rec("e_i(V)+e_(n+1-i)(V*)=h", all(ev[i] + ed[n - 1 - i] == G.h for i in range(n)), f"{ev} / {ed}")
    for label in _labels(G):
        rec.run(f"exponent-sum {label}", lambda label=label: _exponent_sum_identity(G, label))
    return rec.checks


def character_checks(G: ReflectionGroup, rng: random.Random, samples: int = 20) -> list[Check]:
    rec = _Recorder(str(G.spec), "characters")
    V = character(G, "V")
    rec("f_triv=1", fake_degree(G, "triv") == QPolynomial([1]))
    for j in range(1, 4):
        f = fake_degree(G, f"det^{j}")
        rec(f"f_det^{j} monomial", sum(1 for c in f.coeffs if c) == 1, f.pretty())
    rec("V* = conj V", V.dual().values == V.conj().values)
    ok = True
    for _ in range(samples):
        g, w = rng.randrange(G.order), rng.randrange(G.order)
        ok &= V(G.conjugate(g, w)) == V(w)
    rec("class function", ok)
    G0 = [local_data(G, t, V)[0] for t in range(len(G.hyperplanes))]
    cV = c_value(G, V)
    for a in range(2, min(G.conductor, 13)):
        if math.gcd(a, G.conductor) != 1:
            continue
        tw = character(G, f"galois_twist(V,{a})")
        rec.run(
            f"twist {a}: n_H0 and c stable",
            lambda tw=tw: [local_data(G, t, tw)[0] for t in range(len(G.hyperplanes))] == G0
            and c_value(G, tw) == cV,
        )
    return rec.checks


def _field_of_V_inside(G: ReflectionGroup, ell: int) -> bool:
    sub = math.gcd(ell, G.conductor)
    return all(v.lies_in(sub) for v in character(G, "V").values)


def _sym_closed_form(n: int, p: int) -> QPolynomial:
    quot, rem = q_binomial(n + p, n).divmod(q_int(n + p))
    if not rem.is_zero():
        raise ArithmeticError("q-binomial not divisible by [n+p]")
    return quot


def catalan_checks(G: ReflectionGroup) -> list[Check]:
    rec = _Recorder(str(G.spec), "catalan")
    order = cat.psi_order(G)
    ds = degrees(G).degrees
    for m in range(0, 2 * order + 1):
        rec.run(f"psi row m={m} sums to N*", lambda m=m: sum(cat.psi_exponents(G, m)) == G.N_star)
        rec.run(f"N[q] m={m}", lambda m=m: cat.fuss_catalan(G, m).positivity)
    rec.run("psi row m=0 = e(V)", lambda: cat.psi_exponents(G, 0) == exponents(G, "V"))
    rec.run("C^(0) = 1", lambda: cat.fuss_catalan(G, 0).polynomial == QPolynomial([1]))
    if G.well_generated:
        for m in (1, 2):
            rec.run(
                f"well-generated form m={m}",
                lambda m=m: cat.fuss_catalan(G, m).polynomial
                == ratio_product([m * G.h + d for d in ds], ds),
            )
            rec.run(f"positive m={m}", lambda m=m: cat.positive_fuss_catalan(G, m).positivity)
        if _field_of_V_inside(G, G.h):
            for m in (1, 2):
                rec.run(
                    f"twisted(mh+1) = fuss m={m}",
                    lambda m=m: cat.twisted_catalan(G, m * G.h + 1).polynomial
                    == cat.fuss_catalan(G, m).polynomial,
                )
        for p in range(1, 2 * G.h + 2):
            if math.gcd(p, G.h) != 1:
                continue
            rec.run(f"twisted p={p} in N[q]", lambda p=p: cat.twisted_catalan(G, p).positivity)
            a0 = cat.galois_lift(G, p)
            alt = next(
                (a for a in range(a0 + G.h, a0 + G.h * (G.conductor + 2), G.h) if math.gcd(a, G.conductor) == 1),
                None,
            )
            if alt is not None:
                rec.run(
                    f"twisted p={p} lift-independent",
                    lambda p=p, alt=alt: cat.twisted_catalan(G, p).polynomial
                    == cat.twisted_catalan(G, p, lift=alt).polynomial,
                )
        if G.spec.kind == "symmetric":
            n = G.spec.params[0]
            for p in range(1, 2 * n + 2):
                if math.gcd(p, n) == 1:
                    rec.run(
                        f"Sym closed form p={p}",
                        lambda p=p: cat.twisted_catalan(G, p).polynomial == _sym_closed_form(n, p),
                    )
    return rec.checks


def csp_checks(G: ReflectionGroup, ms=(0, 1, 2)) -> list[Check]:
    rec = _Recorder(str(G.spec), "csp")
    regular = cat.regular_numbers(G)
    rec("1 regular", 1 in regular)
    for m in ms:
        for d in regular:
            rec.run(f"csp m={m} d={d}", lambda m=m, d=d: all(ok for _, _, ok in cat.csp_check(G, m, d)))
            rec.run(f"congruence m={m} d={d}", lambda m=m, d=d: cat.congruence_permutation_check(G, m, d))
    return rec.checks


def group_checks(spec: str, seed: int = 0, allow_large: bool = False) -> list[Check]:
    try:
        G = build(spec, allow_large=allow_large)
    except Exception as exc:
        return [Check(spec, "build", "build", False, f"{type(exc).__name__}: {exc}")]
    rng = random.Random(seed)
    out = []
    for suite in (structural_checks, lambda G: character_checks(G, rng), catalan_checks, csp_checks):
        try:
            out.extend(suite(G))
        except Exception as exc:
            out.append(Check(spec, "suite", "suite raised", False, f"{type(exc).__name__}: {exc}"))
    return out


# -- kernels ----------------------------------------------------------------


def random_cyclo(rng: random.Random, ell: int, bound: int = 5, den: int = 4) -> CycloNum:
    phi = cyclo.euler_phi(ell)
    return CycloNum(ell, [Fraction(rng.randint(-bound, bound), rng.randint(1, den)) for _ in range(phi)])


def random_poly(rng: random.Random, deg: int, bound: int = 4) -> QPolynomial:
    return QPolynomial([Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(deg + 1)])


def cyclo_case(rng: random.Random) -> list[str]:
    """One randomized round of field-axiom checks; returns failed property names."""
    bad = []
    ell = rng.choice(KERNEL_CONDUCTORS)
    a, b, c = (random_cyclo(rng, ell) for _ in range(3))
    one = make_rational(1, ell)
    if (a * b) * c != a * (b * c):
        bad.append("mul associative")
    if (a + b) + c != a + (b + c):
        bad.append("add associative")
    if a * (b + c) != a * b + a * c:
        bad.append("distributive")
    if a * b != b * a or a + b != b + a:
        bad.append("commutative")
    if not a.is_zero() and a * a.inverse() != one:
        bad.append("inverse")
    if a + (-a) != make_rational(0, ell):
        bad.append("negation")
    units = [t for t in range(1, max(ell, 2)) if math.gcd(t, ell) == 1] or [1]
    s, t = rng.choice(units), rng.choice(units)
    if (a * b).galois(t) != a.galois(t) * b.galois(t) or (a + b).galois(t) != a.galois(t) + b.galois(t):
        bad.append("galois homomorphism")
    if a.galois(s).galois(t) != a.galois((s * t) % max(ell, 1) or 1):
        bad.append("galois composition")
    if a.conj().conj() != a or a.conj() != a.galois(-1 % max(ell, 1) or 1):
        bad.append("conjugation")
    if CycloNum(ell, a.coeffs) != a:
        bad.append("canonical idempotence")
    # mixed conductors promote to the lcm
    ell2 = rng.choice(KERNEL_CONDUCTORS)
    d = random_cyclo(rng, ell2)
    L = ell * ell2 // math.gcd(ell, ell2)
    if (a + d).conductor != L or (a * d) != a.promote(L) * d.promote(L):
        bad.append("promotion")
    return bad


def qseries_case(rng: random.Random) -> list[str]:
    bad = []
    A = [rng.randint(1, 12) for _ in range(rng.randint(1, 3))]
    B = [rng.randint(1, 12) for _ in range(rng.randint(1, 3))]
    top = math.prod((q_int(a) for a in A), start=QPolynomial([1]))
    bottom = math.prod((q_int(b) for b in B), start=QPolynomial([1]))
    quot, rem = top.divmod(bottom)
    if quot * bottom + rem != top:
        bad.append("division identity")
    if rem.is_zero() and ratio_product(A, B) * bottom != top:
        bad.append("ratio_product round trip")
    a, b = rng.randint(1, 12), rng.randint(1, 12)
    if ratio_product([a * b], [a]) * q_int(a) != q_int(a * b):
        bad.append("[ab]/[a] exact")
    p = random_poly(rng, rng.randint(0, 12))
    ell = rng.choice(KERNEL_CONDUCTORS)
    t = rng.randint(-ell, 2 * ell)
    if eval_at_root(p, ell, t) != p(root_of_unity(ell, t)):
        bad.append("evaluation paths")
    d, D = rng.randint(1, 6), rng.randint(0, 20)
    series = geom_inverse(d, D)
    prod = series * (QPolynomial([1]) - QPolynomial.monomial(d))
    if any(not c.is_zero() for c in prod.coeffs[1:]) or prod.coeffs[0] != 1:
        bad.append("geometric inverse")
    return bad


def kernel_checks(cases: int = 1000, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for name, fn in (("cyclo", cyclo_case), ("qseries", qseries_case)):
        failures: dict[str, int] = {}
        for _ in range(cases):
            for prop in fn(rng):
                failures[prop] = failures.get(prop, 0) + 1
        out.append(
            Check("-", "kernel", f"{name} x{cases}", not failures, ", ".join(f"{k}: {v}" for k, v in failures.items()))
        )
    for ell in KERNEL_CONDUCTORS:
        if ell > 1:
            total = sum((root_of_unity(ell, k) for k in range(ell)), make_rational(0, ell))
            out.append(Check("-", "kernel", f"roots of unity sum, l={ell}", total.is_zero()))
    return out


def run_battery(name: str = "small", seed: int = 0, kernel_cases: int = 1000) -> tuple[list[Check], dict]:
    """All suites on a named battery; returns checks and per-group seconds."""
    if name not in BATTERIES:
        raise ValueError(f"unknown battery {name!r}")
    checks = kernel_checks(kernel_cases, seed)
    timing = {}
    for spec in BATTERIES[name]:
        t0 = time.perf_counter()
        checks.extend(group_checks(spec, seed))
        timing[spec] = round(time.perf_counter() - t0, 3)
    return checks, timing
