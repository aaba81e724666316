"""Exact arithmetic in cyclotomic fields Q(zeta_l).

Elements are stored in the power basis 1, z, ..., z^(phi(l)-1) after
reduction modulo the l-th cyclotomic polynomial.  Internally the
coefficients are an integer vector over a single positive denominator,
which keeps the hot multiplication loop in integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "CycloNum",
    "InvalidAutomorphism",
    "NotRationalError",
    "cyclotomic_poly",
    "euler_phi",
    "make_rational",
    "root_of_unity",
    "add",
    "mul",
    "neg",
    "inverse",
    "galois",
    "conj",
    "is_rational",
    "to_rational",
    "is_integer",
]

# Above this degree multiplication goes through Kronecker substitution.
_KRONECKER_MIN_PHI = 6


class InvalidAutomorphism(ValueError):
    """Raised when sigma_t is requested with gcd(t, l) != 1."""


class NotRationalError(ValueError):
    """Raised when an irrational element is coerced to a rational."""


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


def _moebius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    """Quotient of integer polynomials (low degree first); den is monic."""
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dn]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("inexact cyclotomic division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(ell: int) -> tuple[int, ...]:
    """Coefficients of Phi_l, lowest degree first."""
    if ell < 1:
        raise ValueError(f"conductor must be positive, got {ell}")
    poly = [-1] + [0] * (ell - 1) + [1]
    for d in range(1, ell):
        if ell % d == 0:
            poly = _poly_exact_div(poly, cyclotomic_poly(d))
    return tuple(poly)


class _Field:
    """Per-conductor tables: Phi_l, reduced powers of zeta, traces."""

    __slots__ = ("ell", "phi", "powers", "sparse_powers", "trace_weights", "units")

    def __init__(self, ell: int):
        self.ell = ell
        cp = cyclotomic_poly(ell)
        phi = len(cp) - 1
        self.phi = phi
        powers = []
        cur = [1] + [0] * (phi - 1) if phi > 0 else []
        for _ in range(ell):
            powers.append(tuple(cur))
            # multiply by zeta: shift and fold the top coefficient back
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * cp[j]
        self.powers = tuple(powers)
        self.sparse_powers = tuple(
            tuple((j, v) for j, v in enumerate(p) if v) for p in powers
        )
        # normalized trace Tr(z^k)/phi(l) = mu(l/g)/phi(l/g), g = gcd(k, l)
        weights = []
        for k in range(phi):
            m = ell // math.gcd(k, ell)
            weights.append(Fraction(_moebius(m), euler_phi(m)))
        self.trace_weights = tuple(weights)
        self.units = tuple(t for t in range(1, ell + 1) if math.gcd(t, ell) == 1)


@lru_cache(maxsize=None)
def _field(ell: int) -> _Field:
    if ell < 1:
        raise ValueError(f"conductor must be positive, got {ell}")
    return _Field(ell)


def _reduce(vec: Sequence[int], F: _Field) -> list[int]:
    """Fold an arbitrary-length exponent vector into the power basis."""
    phi = F.phi
    if len(vec) <= phi:
        out = list(vec) + [0] * (phi - len(vec))
        return out
    out = list(vec[:phi])
    ell = F.ell
    sp = F.sparse_powers
    for k in range(phi, len(vec)):
        c = vec[k]
        if c:
            for j, v in sp[k % ell]:
                out[j] += c * v
    return out


def _conv_naive(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _conv_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # pack both vectors into big integers, multiply once, unpack signed digits
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if not ma or not mb:
        return [0] * (len(a) + len(b) - 1)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    pa = 0
    for x in reversed(a):
        pa = (pa << bits) + x
    pb = 0
    for x in reversed(b):
        pb = (pb << bits) + x
    prod = pa * pb
    n = len(a) + len(b) - 1
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = [0] * n
    for i in range(n):
        c = prod & mask
        prod >>= bits
        if c >= half:
            c -= 1 << bits
            prod += 1
        out[i] = c
    return out


def _as_fraction(r) -> Fraction:
    if isinstance(r, Fraction):
        return r
    if isinstance(r, (int, Rational, str)):
        return Fraction(r)
    raise TypeError(f"expected an exact rational, got {type(r).__name__}")


class CycloNum:
    """An element of Q(zeta_l) in canonical reduced form.

    ``CycloNum(l, coeffs)`` accepts coefficients of any length; they are
    read as a polynomial in zeta_l and reduced.  Instances are immutable.
    """

    __slots__ = ("_ell", "_num", "_den", "_hash")

    def __init__(self, ell: int, coeffs: Iterable = ()):
        F = _field(ell)
        fr = [_as_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [c.numerator * (den // c.denominator) for c in fr]
        self._set(ell, _reduce(ints, F), den)

    def _set(self, ell: int, num: list[int], den: int) -> None:
        g = math.gcd(den, *num) if num else den
        if g != 1:
            num = [x // g for x in num]
            den //= g
        if not any(num):
            den = 1
        self._ell = ell
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, ell: int, num: list[int], den: int) -> "CycloNum":
        obj = cls.__new__(cls)
        obj._set(ell, num, den)
        return obj

    # -- accessors ---------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._ell

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def num(self) -> tuple[int, ...]:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @property
    def key(self) -> tuple:
        """Hashable canonical form, valid for comparisons at a fixed conductor."""
        return (self._num, self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRationalError(f"{self!r} is not rational")
        return Fraction(self._num[0] if self._num else 0, self._den)

    def is_integer(self) -> bool:
        return self.is_rational() and self._den == 1

    # -- conductor changes -------------------------------------------------

    def promote(self, ell: int) -> "CycloNum":
        """Embed into Q(zeta_ell); requires conductor | ell."""
        if ell == self._ell:
            return self
        if ell % self._ell:
            raise ValueError(f"cannot promote conductor {self._ell} to {ell}")
        step = ell // self._ell
        vec = [0] * (step * (len(self._num) - 1) + 1) if self._num else []
        for k, c in enumerate(self._num):
            vec[k * step] = c
        return CycloNum._raw(ell, _reduce(vec, _field(ell)), self._den)

    def lies_in(self, ell: int) -> bool:
        """True if the element belongs to the subfield Q(zeta_ell)."""
        if self._ell % ell:
            return False
        return all(
            self.galois(t) == self for t in _field(self._ell).units if (t - 1) % ell == 0
        )

    def restrict(self, ell: int) -> "CycloNum":
        """Rewrite the element over the subfield Q(zeta_ell)."""
        if not self.lies_in(ell):
            raise ValueError(f"{self!r} does not lie in Q(zeta_{ell})")
        if ell == self._ell:
            return self
        phi = euler_phi(ell)
        basis = [root_of_unity(ell, j).promote(self._ell).coeffs for j in range(phi)]
        target = list(self.coeffs)
        sol = _solve_columns(basis, target)
        return CycloNum(ell, sol)

    def minimal_conductor(self) -> int:
        for d in sorted(d for d in range(1, self._ell + 1) if self._ell % d == 0):
            if self.lies_in(d):
                return d
        return self._ell

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CycloNum | None":
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return make_rational(other, self._ell)
        return None

    def _align(self, other: "CycloNum") -> tuple["CycloNum", "CycloNum"]:
        if other._ell == self._ell:
            return self, other
        L = self._ell * other._ell // math.gcd(self._ell, other._ell)
        return self.promote(L), other.promote(L)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        da, db = a._den, b._den
        if da == db:
            num = [x + y for x, y in zip(a._num, b._num)]
            return CycloNum._raw(a._ell, num, da)
        num = [x * db + y * da for x, y in zip(a._num, b._num)]
        return CycloNum._raw(a._ell, num, da * db)

    __radd__ = __add__

    def __neg__(self) -> "CycloNum":
        return CycloNum._raw(self._ell, [-x for x in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        an, bn = a._num, b._num
        if not any(an[1:]):
            c = an[0] if an else 0
            return CycloNum._raw(a._ell, [c * x for x in bn], a._den * b._den)
        if not any(bn[1:]):
            c = bn[0] if bn else 0
            return CycloNum._raw(a._ell, [c * x for x in an], a._den * b._den)
        F = _field(a._ell)
        if F.phi >= _KRONECKER_MIN_PHI:
            prod = _conv_kronecker(an, bn)
        else:
            prod = _conv_naive(an, bn)
        return CycloNum._raw(a._ell, _reduce(prod, F), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the product of the other conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return make_rational(1 / self.to_rational(), self._ell)
        others = make_rational(1, self._ell)
        for t in _field(self._ell).units:
            if t != 1:
                others = others * self.galois(t)
        norm = (self * others).to_rational()
        return others * (1 / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "CycloNum":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        acc = make_rational(1, self._ell)
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- automorphisms -----------------------------------------------------

    def galois(self, t: int) -> "CycloNum":
        ell = self._ell
        if math.gcd(t, ell) != 1:
            raise InvalidAutomorphism(f"sigma_{t} is not an automorphism of Q(zeta_{ell})")
        t %= ell
        if t == 1 % ell or self.is_rational():
            return self
        F = _field(ell)
        out = [0] * F.phi
        sp = F.sparse_powers
        for k, c in enumerate(self._num):
            if c:
                for j, v in sp[(k * t) % ell]:
                    out[j] += c * v
        return CycloNum._raw(ell, out, self._den)

    def conj(self) -> "CycloNum":
        return self.galois(-1)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, CycloNum) else other
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        return a._num == b._num and a._den == b._den

    def __hash__(self) -> int:
        # normalized trace is conductor independent, so equal values hash equal
        if self._hash is None:
            w = _field(self._ell).trace_weights
            tr = sum((c * wk for c, wk in zip(self._num, w)), Fraction(0)) / self._den
            self._hash = hash(tr)
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_complex(self) -> complex:
        """Floating-point embedding zeta -> exp(2 pi i / l); debugging only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self._ell)
        return sum(c * z**k for k, c in enumerate(self._num)) / self._den

    def __repr__(self) -> str:
        return f"CycloNum({self._ell}, {self})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.to_rational())
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else (f"z{self._ell}" if k == 1 else f"z{self._ell}^{k}")
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _solve_columns(columns: list[tuple[Fraction, ...]], target: list[Fraction]) -> list[Fraction]:
    """Solve sum_j x_j * columns[j] = target exactly (consistent systems only)."""
    m = len(target)
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][n] for i in range(r, m)):
        raise ValueError("inconsistent linear system")
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = rows[i][n]
    return sol


def make_rational(r, ell: int) -> CycloNum:
    F = _field(ell)
    r = _as_fraction(r)
    num = [0] * F.phi
    if F.phi:
        num[0] = r.numerator
    return CycloNum._raw(ell, num, r.denominator)


def root_of_unity(ell: int, k: int) -> CycloNum:
    F = _field(ell)
    return CycloNum._raw(ell, list(F.powers[k % ell]), 1)


def add(a: CycloNum, b: CycloNum) -> CycloNum:
    return a + b


def mul(a: CycloNum, b: CycloNum) -> CycloNum:
    return a * b


def neg(a: CycloNum) -> CycloNum:
    return -a


def inverse(a: CycloNum) -> CycloNum:
    return a.inverse()


def galois(a: CycloNum, t: int) -> CycloNum:
    return a.galois(t)


def conj(a: CycloNum) -> CycloNum:
    return a.conj()


def is_rational(a: CycloNum) -> bool:
    return a.is_rational()


def to_rational(a: CycloNum) -> Fraction:
    return a.to_rational()


def is_integer(a: CycloNum) -> bool:
    return a.is_integer()
