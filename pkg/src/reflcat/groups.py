"""Complex reflection groups as enumerated matrix groups over Q(zeta_l)."""

from __future__ import annotations

import hashlib
import json
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from . import matrices as mx
from .cyclo import CycloNum, make_rational, root_of_unity
from .matrices import Matrix
from .specs import GroupSpec, UnsupportedGroup, parse_spec

DEFAULT_ORDER_CAP = 10_000
DATA_ENV = "REFLCAT_DATA"
GENERATOR_FILE = "generators.json"


class GroupBuildError(RuntimeError):
    pass


class OrderCapExceeded(GroupBuildError):
    pass


class InvariantViolation(GroupBuildError):
    """A structural identity failed; points at bad generator data."""


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).with_name("data")


def _checksum(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


@lru_cache(maxsize=8)
def _load_generator_table(path: str) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("checksum") != _checksum(doc["groups"]):
        raise GroupBuildError(f"checksum mismatch in {path}")
    return doc


def exceptional_table(directory: Path | None = None) -> dict:
    """The versioned exceptional-group records, keyed by ``"G<k>"``."""
    path = (directory or data_dir()) / GENERATOR_FILE
    return _load_generator_table(str(path))["groups"]


def decode_matrix(rows: Sequence[Sequence[Sequence[str]]], ell: int) -> Matrix:
    return tuple(tuple(CycloNum(ell, [Fraction(c) for c in entry]) for entry in row) for row in rows)


def encode_matrix(m: Matrix) -> list:
    return [[[str(c) for c in x.coeffs] for x in row] for row in m]


# -- generators -------------------------------------------------------------


def _perm_matrix(perm: Sequence[int], ell: int) -> Matrix:
    n = len(perm)
    one, zero = make_rational(1, ell), make_rational(0, ell)
    # column j is e_{perm[j]}
    return tuple(tuple(one if perm[j] == i else zero for j in range(n)) for i in range(n))


def _symmetric_generators(n: int) -> list[Matrix]:
    # basis f_i = e_i - e_{i+1} of the sum-zero hyperplane in Q^n
    r = n - 1

    def coords(a: int, b: int) -> list[int]:
        v = [0] * r
        lo, hi, sign = (a, b, 1) if a < b else (b, a, -1)
        for t in range(lo, hi):
            v[t] = sign
        return v

    gens = []
    for k in range(r):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        cols = [coords(perm[i], perm[i + 1]) for i in range(r)]
        gens.append(mx.as_matrix([[cols[j][i] for j in range(r)] for i in range(r)], 1))
    return gens


def _imprimitive_generators(m: int, p: int, n: int) -> list[Matrix]:
    ell = m
    d = m // p
    if n == 1:
        return [((root_of_unity(ell, p),),)]
    gens = []
    for k in range(n - 1):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        gens.append(_perm_matrix(perm, ell))
    zero, one = make_rational(0, ell), make_rational(1, ell)
    if p > 1:
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        rows[0][0] = rows[1][1] = zero
        rows[0][1] = root_of_unity(ell, -1)
        rows[1][0] = root_of_unity(ell, 1)
        gens.append(tuple(tuple(r) for r in rows))
    if d > 1:
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        rows[0][0] = root_of_unity(ell, p)
        gens.append(tuple(tuple(r) for r in rows))
    return gens


def generator_matrices(spec: GroupSpec | str, directory: Path | None = None) -> list[Matrix]:
    """Reflection generators of the group over its construction field."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.kind == "symmetric":
        return _symmetric_generators(spec.params[0])
    if spec.kind == "imprimitive":
        return _imprimitive_generators(*spec.params)
    rec = _exceptional_record(spec, directory)
    return [decode_matrix(g, rec["conductor"]) for g in rec["generators"]]


def _exceptional_record(spec: GroupSpec, directory: Path | None = None) -> dict:
    table = exceptional_table(directory)
    rec = table.get(spec.text)
    if rec is None:
        raise UnsupportedGroup(f"{spec.text} is not in the generator table")
    return rec


def is_well_generated(spec: GroupSpec, directory: Path | None = None) -> bool:
    """Stored classification (generated by rank-many reflections)."""
    if spec.kind == "symmetric":
        return True
    if spec.kind == "imprimitive":
        m, p, n = spec.params
        return n == 1 or p == 1 or p == m
    return bool(_exceptional_record(spec, directory)["well_generated"])


def expected_order(spec: GroupSpec, directory: Path | None = None) -> int:
    est = spec.estimated_order()
    if est is not None:
        return est
    return int(_exceptional_record(spec, directory)["order"])


def expected_degrees(spec: GroupSpec, directory: Path | None = None) -> list[int]:
    if spec.kind == "symmetric":
        return list(range(2, spec.params[0] + 1))
    if spec.kind == "imprimitive":
        m, p, n = spec.params
        d = m // p
        return sorted([m * i for i in range(1, n)] + [n * d])
    return sorted(_exceptional_record(spec, directory)["degrees"])


# -- the group --------------------------------------------------------------


@dataclass(frozen=True)
class Reflection:
    element: int
    hyperplane: int
    determinant: CycloNum


@dataclass(frozen=True)
class Hyperplane:
    functional: tuple[CycloNum, ...]
    e_H: int
    reflections: tuple[int, ...]
    orbit: int


@dataclass(eq=False)
class ReflectionGroup:
    spec: GroupSpec
    n: int
    conductor: int
    generators: list[Matrix]
    elements: list[Matrix]
    inverses: list[int]
    charpolys: list[tuple[CycloNum, ...]]
    reflections: list[Reflection]
    hyperplanes: list[Hyperplane]
    well_generated: bool
    _index: dict = field(repr=False, default_factory=dict)
    _cache: dict = field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def N(self) -> int:
        return len(self.hyperplanes)

    @property
    def N_star(self) -> int:
        return len(self.reflections)

    @property
    def h(self) -> int:
        return (self.N + self.N_star) // self.n

    def index_of(self, m: Matrix) -> int:
        return self._index[mx.mat_key(m)]

    def mul(self, i: int, j: int) -> int:
        return self.index_of(mx.mat_mul(self.elements[i], self.elements[j]))

    def conjugate(self, g: int, w: int) -> int:
        """Index of g w g^-1."""
        return self.mul(self.mul(g, w), self.inverses[g])

    def charpoly_classes(self) -> dict[tuple, list[int]]:
        """Element indices grouped by det(I - qM)."""
        if "cp_classes" not in self._cache:
            classes: dict[tuple, list[int]] = {}
            for i, cp in enumerate(self.charpolys):
                classes.setdefault(tuple(c.key for c in cp), []).append(i)
            self._cache["cp_classes"] = classes
        return self._cache["cp_classes"]

    def reflection_subgroup(self, hyperplane: int) -> list[int]:
        """W_H: identity plus the reflections fixing H."""
        return [0] + list(self.hyperplanes[hyperplane].reflections)

    def orbit_structure(self) -> list[dict]:
        orbits: dict[int, list[Hyperplane]] = {}
        for H in self.hyperplanes:
            orbits.setdefault(H.orbit, []).append(H)
        return [
            {"orbit": k, "size": len(v), "e_H": v[0].e_H} for k, v in sorted(orbits.items())
        ]


def _intern_matrix(m: Matrix, pool: dict) -> Matrix:
    out = []
    for row in m:
        new = []
        for x in row:
            k = x.key
            y = pool.get(k)
            if y is None:
                pool[k] = y = x
            new.append(y)
        out.append(tuple(new))
    return tuple(out)


def enumerate_group(gens: Sequence[Matrix], cap: int) -> tuple[list[Matrix], dict]:
    """Breadth-first closure; identity first.  Raises past ``cap`` elements."""
    n = len(gens[0])
    ell = gens[0][0][0].conductor
    pool: dict = {}
    ident = _intern_matrix(mx.identity(n, ell), pool)
    gens = [_intern_matrix(g, pool) for g in gens]
    elements = [ident]
    index = {mx.mat_key(ident): 0}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = mx.mat_mul(g, s)
            key = mx.mat_key(h)
            if key not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(f"closure exceeded {cap} elements")
                h = _intern_matrix(h, pool)
                index[key] = len(elements)
                elements.append(h)
                queue.append(h)
    return elements, index


def _matrix_inverse(m: Matrix) -> Matrix:
    n = len(m)
    if n == 1:
        return ((m[0][0].inverse(),),)
    if n == 2:
        a, b = m[0]
        c, d = m[1]
        inv = (a * d - b * c).inverse()
        return ((d * inv, -b * inv), (-c * inv, a * inv))
    return mx.inverse(m)


def _one_minus_q_power_divides(cp: Sequence[CycloNum], k: int) -> bool:
    """True if (1 - q)^k divides sum cp[j] q^j."""
    coeffs = list(cp)
    for _ in range(k):
        total = coeffs[0]
        for c in coeffs[1:]:
            total = total + c
        if not total.is_zero():
            return False
        # divide by (1 - q): b_j = sum_{i<=j} a_i
        out = []
        acc = coeffs[0] * 0
        for c in coeffs[:-1]:
            acc = acc + c
            out.append(acc)
        coeffs = out
    return True


def _normalize_functional(row: Sequence[CycloNum]) -> tuple[CycloNum, ...]:
    pivot = next(x for x in row if not x.is_zero())
    inv = pivot.inverse()
    return tuple(x * inv for x in row)


def _root_order(z: CycloNum) -> int:
    ell = z.conductor
    for k in range(1, 2 * ell + 1):
        if (2 * ell) % k == 0 and z**k == 1:
            return k
    raise InvariantViolation(f"{z!r} is not a root of unity")


def from_generators(
    spec: GroupSpec,
    gens: Sequence[Matrix],
    well_generated: bool,
    cap: int = DEFAULT_ORDER_CAP,
) -> ReflectionGroup:
    """Enumerate the group generated by ``gens`` and extract its geometry."""
    n = len(gens[0])
    ell = gens[0][0][0].conductor
    elements, index = enumerate_group(gens, cap)
    ident = elements[0]

    cp_pool: dict = {}
    charpolys = []
    for m in elements:
        cp = mx.det_one_minus_qm(m)
        charpolys.append(tuple(cp_pool.setdefault(c.key, c) for c in cp))

    inverses = []
    for m in elements:
        j = index.get(mx.mat_key(_matrix_inverse(m)))
        if j is None:
            raise InvariantViolation("element set is not closed under inverses")
        inverses.append(j)

    # pseudo-reflections: eigenvalue 1 of multiplicity n-1 and rank(M - I) = 1
    by_functional: dict[tuple, list[int]] = {}
    functionals: dict[tuple, tuple[CycloNum, ...]] = {}
    dets = {}
    for i, m in enumerate(elements):
        if i == 0 or not _one_minus_q_power_divides(charpolys[i], n - 1):
            continue
        diff = mx.mat_sub(m, ident)
        if mx.rank(diff) != 1:
            continue
        row = next(r for r in diff if any(not x.is_zero() for x in r))
        f = _normalize_functional(row)
        fk = tuple(x.key for x in f)
        by_functional.setdefault(fk, []).append(i)
        functionals[fk] = f
        dets[i] = mx.determinant(m)

    # W-orbits on hyperplanes: g(ker a) = ker(a g^-1)
    hkeys = sorted(by_functional, key=lambda k: min(by_functional[k]))
    hpos = {k: t for t, k in enumerate(hkeys)}
    gen_inverses = [_matrix_inverse(g) for g in gens]
    orbit_of = [-1] * len(hkeys)
    n_orbits = 0
    for start in range(len(hkeys)):
        if orbit_of[start] >= 0:
            continue
        orbit_of[start] = n_orbits
        stack = [start]
        while stack:
            t = stack.pop()
            a = functionals[hkeys[t]]
            for gi in gen_inverses:
                img = tuple(
                    sum((a[k] * gi[k][j] for k in range(n)), make_rational(0, ell)) for j in range(n)
                )
                ik = tuple(x.key for x in _normalize_functional(img))
                u = hpos.get(ik)
                if u is None:
                    raise InvariantViolation("reflecting hyperplanes not permuted by W")
                if orbit_of[u] < 0:
                    orbit_of[u] = n_orbits
                    stack.append(u)
        n_orbits += 1

    hyperplanes = []
    reflections = []
    for t, k in enumerate(hkeys):
        members = tuple(sorted(by_functional[k]))
        hyperplanes.append(Hyperplane(functionals[k], len(members) + 1, members, orbit_of[t]))
    refl_hyper = {i: t for t, H in enumerate(hyperplanes) for i in H.reflections}
    for i in sorted(refl_hyper):
        reflections.append(Reflection(i, refl_hyper[i], dets[i]))

    G = ReflectionGroup(
        spec=spec,
        n=n,
        conductor=ell,
        generators=list(gens),
        elements=elements,
        inverses=inverses,
        charpolys=charpolys,
        reflections=reflections,
        hyperplanes=hyperplanes,
        well_generated=well_generated,
        _index=index,
    )
    verify_geometry(G)
    return G


def verify_geometry(G: ReflectionGroup) -> None:
    """Eager structural checks; raises InvariantViolation."""
    if not G.reflections:
        raise InvariantViolation(f"{G.spec}: no pseudo-reflections")
    if (G.N + G.N_star) % G.n:
        raise InvariantViolation(f"{G.spec}: n does not divide N + N*")
    h = G.h
    if sum(H.e_H for H in G.hyperplanes) != G.n * h:
        raise InvariantViolation(f"{G.spec}: sum of e_H differs from n*h")
    if G.n >= 2 and any(H.e_H >= h for H in G.hyperplanes):
        raise InvariantViolation(f"{G.spec}: some e_H >= h in rank >= 2")
    for r in G.reflections:
        if r.determinant == 1:
            raise InvariantViolation(f"{G.spec}: reflection with determinant 1")
        e_H = G.hyperplanes[r.hyperplane].e_H
        if e_H % _root_order(r.determinant):
            raise InvariantViolation(f"{G.spec}: det order does not divide e_H")
    det_orders: dict[int, int] = {}
    for r in G.reflections:
        k = _root_order(r.determinant)
        det_orders[r.hyperplane] = max(det_orders.get(r.hyperplane, 1), k)
    for t, H in enumerate(G.hyperplanes):
        if det_orders[t] != H.e_H:
            raise InvariantViolation(f"{G.spec}: W_H is not cyclic of order e_H")


@lru_cache(maxsize=64)
def _build_cached(spec: GroupSpec, order_cap: int, allow_large: bool, directory: str) -> ReflectionGroup:
    ddir = Path(directory)
    target = expected_order(spec, ddir)
    if target > order_cap and not allow_large:
        raise OrderCapExceeded(
            f"{spec} has order {target} above the cap {order_cap}; pass allow_large to override"
        )
    gens = generator_matrices(spec, ddir)
    cap = max(order_cap, target) if allow_large else order_cap
    G = from_generators(spec, gens, is_well_generated(spec, ddir), cap=cap + 1)
    if G.order != target:
        raise InvariantViolation(f"{spec}: enumerated {G.order} elements, expected {target}")
    return G


def build(
    spec: GroupSpec | str,
    order_cap: int = DEFAULT_ORDER_CAP,
    allow_large: bool = False,
    directory: Path | None = None,
    check_degrees: bool = True,
) -> ReflectionGroup:
    """Construct and fully verify a supported reflection group.

    With ``check_degrees`` the Molien degrees are compared with the values
    implied by the family formula or the stored table.
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    directory = Path(directory) if directory else data_dir()
    G = _build_cached(spec, order_cap, allow_large, str(directory))
    if check_degrees and not G._cache.get("degrees_checked"):
        from .invariants import degrees

        got = degrees(G).degrees
        want = expected_degrees(spec, directory)
        if got != want:
            raise InvariantViolation(f"{spec}: Molien degrees {got}, expected {want}")
        G._cache["degrees_checked"] = True
    return G


def classify_reflections(G: ReflectionGroup) -> tuple[list[Reflection], list[Hyperplane]]:
    return G.reflections, G.hyperplanes


def supported_exceptional(directory: Path | None = None) -> list[str]:
    return sorted(exceptional_table(directory), key=lambda s: int(s[1:]))
