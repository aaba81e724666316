"""Molien series, degrees, fake degrees, c-values and local data.

Every graded multiplicity here is a Molien average over the group.  The
sums are grouped by the characteristic polynomial det(I - qM), since the
series 1/det(I - qM) only depends on it; this is a reordering of the same
commutative reduction over all elements.

Conventions: P is the ring of polynomial functions on V, so the linear
forms are V*.  The graded multiplicity of U in P is

    (1/|W|) sum_w conj(chi_U(w)) / det(I - q w|V*)
  = (1/|W|) sum_w chi_U(w) / det(I - q M_w)

after reindexing w -> w^-1 (w acts on V* by the inverse transpose).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycloNum, make_rational
from .groups import ReflectionGroup
from .qseries import QPolynomial, QSeries, series_inverse_of_poly

__all__ = [
    "CharacterFn",
    "InvariantProfile",
    "InvariantError",
    "character",
    "hilbert_invariants",
    "degrees",
    "fake_degree",
    "exponents",
    "c_value",
    "local_data",
]


class InvariantError(ArithmeticError):
    """A Molien computation produced an impossible value."""


@dataclass(frozen=True, eq=False)
class CharacterFn:
    group: ReflectionGroup
    values: tuple[CycloNum, ...]
    label: str

    @property
    def dim(self) -> int:
        v = self.values[0]
        if not v.is_integer() or v.to_rational() <= 0:
            raise InvariantError(f"{self.label}: value at identity is {v}")
        return int(v.to_rational())

    def __call__(self, i: int) -> CycloNum:
        return self.values[i]

    def dual(self) -> "CharacterFn":
        inv = self.group.inverses
        return CharacterFn(self.group, tuple(self.values[inv[i]] for i in range(len(inv))), f"({self.label})*")

    def galois(self, a: int) -> "CharacterFn":
        return CharacterFn(self.group, tuple(v.galois(a) for v in self.values), f"twist({self.label},{a})")

    def conj(self) -> "CharacterFn":
        return CharacterFn(self.group, tuple(v.conj() for v in self.values), f"conj({self.label})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharacterFn):
            return NotImplemented
        return self.group is other.group and self.values == other.values


@dataclass(frozen=True)
class InvariantProfile:
    degrees: list[int]
    coexponents: list[int]
    hilbert_PW: QSeries

    @property
    def codegrees(self) -> list[int]:
        return [e - 1 for e in self.coexponents]


# -- characters -------------------------------------------------------------


def _elementary(G: ReflectionGroup, i: int, k: int) -> CycloNum:
    """k-th elementary symmetric function of the eigenvalues of element i."""
    c = G.charpolys[i][k]
    return c if k % 2 == 0 else -c


_LABEL = re.compile(r"^(\w+)(?:\^(-?\d+))?(?:\(([^)]*)\))?$")


def character(G: ReflectionGroup, label: str) -> CharacterFn:
    """Class function built from the reflection representation.

    Labels: ``triv``, ``det``, ``det^j``, ``V``, ``V_dual`` (or ``V*``),
    ``ext(k)``, ``ext_dual(k)``, ``galois_twist(V,a)`` (or ``twist(a)``).
    """
    s = "".join(label.split())
    if s == "V*":
        s = "V_dual"
    m = _LABEL.match(s)
    if not m:
        raise ValueError(f"invalid character label {label!r}")
    name, power, arg = m.groups()
    n = G.n
    size = G.order
    inv = G.inverses
    one = make_rational(1, G.conductor)
    if name == "triv" and power is None and arg is None:
        vals = [one] * size
    elif name == "det" and arg is None:
        j = int(power) if power is not None else 1
        vals = [_elementary(G, i, n) ** j for i in range(size)]
    elif name == "V" and power is None and arg is None:
        vals = [_elementary(G, i, 1) for i in range(size)]
    elif name == "V_dual" and power is None and arg is None:
        vals = [_elementary(G, inv[i], 1) for i in range(size)]
    elif name in ("ext", "ext_dual") and arg is not None and power is None:
        k = int(arg)
        if not 0 <= k <= n:
            raise ValueError(f"exterior power {k} out of range 0..{n}")
        src = range(size) if name == "ext" else inv
        vals = [_elementary(G, i, k) if k else one for i in src]
    elif name in ("galois_twist", "twist") and arg is not None and power is None:
        parts = arg.split(",")
        if name == "galois_twist":
            if len(parts) != 2 or parts[0] != "V":
                raise ValueError(f"invalid character label {label!r}")
            a = int(parts[1])
        else:
            a = int(parts[0])
        if math.gcd(a, G.conductor) != 1:
            from .cyclo import InvalidAutomorphism

            raise InvalidAutomorphism(f"twist by {a} is not coprime to conductor {G.conductor}")
        vals = [_elementary(G, i, 1).galois(a) for i in range(size)]
        s = f"galois_twist(V,{a})"
    else:
        raise ValueError(f"invalid character label {label!r}")
    return CharacterFn(G, tuple(vals), s)


def _as_character(G: ReflectionGroup, chi) -> CharacterFn:
    return character(G, chi) if isinstance(chi, str) else chi


# -- Molien -----------------------------------------------------------------


def truncation_order(G: ReflectionGroup) -> int:
    return G.N_star + 1


def _class_series(G: ReflectionGroup) -> dict[tuple, QSeries]:
    cache = G._cache.setdefault("class_series", {})
    if not cache:
        D = truncation_order(G)
        for key, idx in G.charpoly_classes().items():
            cache[key] = series_inverse_of_poly(G.charpolys[idx[0]], D)
    return cache


def molien_average(G: ReflectionGroup, chi: CharacterFn | None = None) -> list[Fraction]:
    """(1/|W|) sum_w chi(w)/det(I - q M_w), as rational coefficients up to q^D."""
    D = truncation_order(G)
    series = _class_series(G)
    total = [make_rational(0, G.conductor)] * (D + 1)
    for key, idx in G.charpoly_classes().items():
        if chi is None:
            weight = make_rational(len(idx), G.conductor)
        else:
            weight = chi.values[idx[0]]
            for i in idx[1:]:
                weight = weight + chi.values[i]
        if weight.is_zero():
            continue
        s = series[key].coeffs
        total = [t + weight * c if not c.is_zero() else t for t, c in zip(total, s)]
    out = []
    for k, t in enumerate(total):
        if not t.is_rational():
            raise InvariantError(f"Molien coefficient of q^{k} is irrational: {t}")
        out.append(t.to_rational() / G.order)
    return out


def hilbert_invariants(G: ReflectionGroup) -> QSeries:
    """Hilbert series of P^W truncated at q^(N*+1)."""
    if "hilbert" not in G._cache:
        coeffs = molien_average(G)
        for k, c in enumerate(coeffs):
            if c.denominator != 1 or c < 0:
                raise InvariantError(f"Hilbert series coefficient of q^{k} is {c}")
        D = truncation_order(G)
        G._cache["hilbert"] = QSeries([make_rational(c, 1) for c in coeffs], D)
    return G._cache["hilbert"]


def _times_one_minus(coeffs: list[Fraction], d: int) -> list[Fraction]:
    return [c - (coeffs[k - d] if k >= d else 0) for k, c in enumerate(coeffs)]


def _peel_degrees(G: ReflectionGroup) -> list[int]:
    cur = [c.to_rational() for c in hilbert_invariants(G).coeffs]
    found = []
    for _ in range(G.n):
        d = next((k for k in range(1, len(cur)) if cur[k] != 0), None)
        if d is None or cur[d] < 0:
            raise InvariantError(f"{G.spec}: Hilbert series is not a product of 1/(1-q^d)")
        found.append(d)
        cur = _times_one_minus(cur, d)
    if cur[0] != 1 or any(cur[1:]):
        raise InvariantError(f"{G.spec}: residual series after peeling degrees {found}")
    return sorted(found)


def _degrees_only(G: ReflectionGroup) -> list[int]:
    if "degrees" not in G._cache:
        ds = _peel_degrees(G)
        if math.prod(ds) != G.order:
            raise InvariantError(f"{G.spec}: product of degrees {ds} differs from |W|={G.order}")
        if sum(ds) != G.N_star + G.n:
            raise InvariantError(f"{G.spec}: sum of degrees {ds} differs from N*+n")
        G._cache["degrees"] = ds
    return G._cache["degrees"]


def degrees(G: ReflectionGroup) -> InvariantProfile:
    if "profile" not in G._cache:
        ds = _degrees_only(G)
        co = exponents(G, character(G, "V_dual"))
        G._cache["profile"] = InvariantProfile(ds, co, hilbert_invariants(G))
    return G._cache["profile"]


def fake_degree(G: ReflectionGroup, chi) -> QPolynomial:
    """Graded multiplicities of chi in the coinvariant algebra."""
    chi = _as_character(G, chi)
    key = ("fake", tuple(v.key for v in chi.values))
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    coeffs = molien_average(G, chi)
    for d in _degrees_only(G):
        coeffs = _times_one_minus(coeffs, d)
    D = truncation_order(G)
    if coeffs[D] != 0:
        raise InvariantError(f"{chi.label}: coinvariant multiplicity in degree {D} > N*")
    for k, c in enumerate(coeffs):
        if c.denominator != 1 or c < 0:
            raise InvariantError(f"{chi.label}: fake degree coefficient of q^{k} is {c}")
    f = QPolynomial(coeffs)
    if f.value_at_1() != chi.dim:
        raise InvariantError(f"{chi.label}: fake degree sums to {f.value_at_1()}, dim is {chi.dim}")
    G._cache[key] = f
    return f


def exponents(G: ReflectionGroup, chi) -> list[int]:
    f = fake_degree(G, chi)
    out = []
    for k, c in enumerate(f.coeffs):
        out.extend([k] * int(c))
    return out


def local_data(G: ReflectionGroup, H: int, chi) -> list[int]:
    """Multiplicities n_{H,j} of det^-j in the restriction of chi to W_H."""
    chi = _as_character(G, chi)
    hyper = G.hyperplanes[H]
    e = hyper.e_H
    members = G.reflection_subgroup(H)
    n = G.n
    out = []
    for j in range(e):
        acc = make_rational(0, G.conductor)
        for w in members:
            acc = acc + chi.values[w] * _elementary(G, w, n) ** j
        val = acc / e
        if not val.is_integer() or val.to_rational() < 0:
            raise InvariantError(f"{chi.label}: local multiplicity n_(H{H},{j}) = {val}")
        out.append(int(val.to_rational()))
    if sum(out) != chi.dim:
        raise InvariantError(f"{chi.label}: local data {out} does not sum to dim")
    return out


def c_value(G: ReflectionGroup, chi) -> int:
    """Scalar of z = sum_r (1 - r) on chi, cross-checked against local data."""
    chi = _as_character(G, chi)
    dim = chi.dim
    acc = make_rational(0, G.conductor)
    for r in G.reflections:
        acc = acc + (1 - chi.values[r.element] / dim)
    if not acc.is_integer():
        raise InvariantError(f"character {chi.label} not z-homogeneous: c = {acc}")
    c = int(acc.to_rational())
    via_local = Fraction(G.N + G.N_star) - Fraction(
        sum(H.e_H * local_data(G, t, chi)[0] for t, H in enumerate(G.hyperplanes)), dim
    )
    if via_local != c:
        raise InvariantError(f"{chi.label}: c = {c} but local-data formula gives {via_local}")
    return c
