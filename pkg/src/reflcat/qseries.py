"""Polynomials and truncated power series in q.

``QPolynomial`` has exact rational coefficients; ``QSeries`` has CycloNum
coefficients and a fixed truncation order D (arithmetic is mod q^(D+1)).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .cyclo import CycloNum, make_rational, root_of_unity
from .matrices import Matrix, det_one_minus_qm

__all__ = [
    "DEGREE_ZERO",
    "NotAPolynomial",
    "QPolynomial",
    "QSeries",
    "q_int",
    "ratio_product",
    "q_binomial",
    "eval_at_root",
    "geom_inverse",
    "series_mul",
    "series_scale",
    "series_inverse_of_poly",
    "series_of_char_poly_inverse",
]

#: degree reported for the zero polynomial
DEGREE_ZERO = -1


class NotAPolynomial(ArithmeticError):
    """A ratio of q-integer products did not divide exactly."""

    def __init__(self, message: str, quotient: "QPolynomial", remainder: "QPolynomial"):
        super().__init__(message)
        self.quotient = quotient
        self.remainder = remainder


class QPolynomial:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [x if isinstance(x, Fraction) else Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def monomial(cls, k: int, c=1) -> "QPolynomial":
        return cls([0] * k + [c])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1 if self._c else DEGREE_ZERO

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            other = QPolynomial([other])
        n = max(len(self._c), len(other._c))
        return QPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(-x for x in self._c)

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            other = QPolynomial([other])
        return self + (-other)

    def __mul__(self, other) -> "QPolynomial":
        if not isinstance(other, QPolynomial):
            f = Fraction(other)
            return QPolynomial(f * x for x in self._c)
        a, b = self._c, other._c
        if not a or not b:
            return QPolynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPolynomial":
        acc = QPolynomial([1])
        for _ in range(k):
            acc = acc * self
        return acc

    def divmod(self, other: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        d = other._c
        lead = d[-1]
        dq = len(rem) - len(d) + 1
        if dq <= 0:
            return QPolynomial(), QPolynomial(rem)
        quot = [Fraction(0)] * dq
        for i in range(dq - 1, -1, -1):
            c = rem[i + len(d) - 1] / lead
            quot[i] = c
            if c:
                for j, y in enumerate(d):
                    rem[i + j] -= c * y
        return QPolynomial(quot), QPolynomial(rem[: len(d) - 1])

    def __floordiv__(self, other: "QPolynomial") -> "QPolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "QPolynomial") -> "QPolynomial":
        return self.divmod(other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, QPolynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == QPolynomial([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __call__(self, x):
        """Horner evaluation at an exact rational or a CycloNum."""
        acc = x * 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def reversed(self, shift: int) -> "QPolynomial":
        """q^shift * p(1/q); requires shift >= degree."""
        if self.degree > shift:
            raise ValueError("shift smaller than degree")
        return QPolynomial(self.coeff(shift - k) for k in range(shift + 1))

    def value_at_1(self) -> Fraction:
        return sum(self._c, Fraction(0))

    def is_nonneg_integral(self) -> bool:
        return all(c >= 0 and c.denominator == 1 for c in self._c)

    def int_coeffs(self) -> list[int]:
        if any(c.denominator != 1 for c in self._c):
            raise ValueError("polynomial has non-integral coefficients")
        return [int(c) for c in self._c]

    def pretty(self, var: str = "q") -> str:
        if not self._c:
            return "0"
        terms = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = var
            else:
                mono = f"{var}^{k}"
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"QPolynomial({self.pretty()})"


def q_int(i: int) -> QPolynomial:
    """[i]_q = 1 + q + ... + q^(i-1)."""
    if i <= 0:
        raise ValueError(f"q-integer needs a positive argument, got {i}")
    return QPolynomial([1] * i)


def _product(factors: Sequence[QPolynomial]) -> QPolynomial:
    acc = QPolynomial([1])
    for f in factors:
        acc = acc * f
    return acc


def ratio_product(nums: Sequence[int], dens: Sequence[int]) -> QPolynomial:
    """prod [a]_q / prod [b]_q, raising NotAPolynomial if inexact."""
    if not nums or not dens:
        raise ValueError("ratio_product needs nonempty numerator and denominator lists")
    top = _product([q_int(a) for a in nums])
    bottom = _product([q_int(b) for b in dens])
    quot, rem = top.divmod(bottom)
    if not rem.is_zero():
        raise NotAPolynomial(
            f"prod[{list(nums)}]_q / prod[{list(dens)}]_q is not a polynomial", quot, rem
        )
    return quot


def q_binomial(a: int, b: int) -> QPolynomial:
    """Gaussian binomial [a choose b]_q."""
    if b < 0 or b > a:
        return QPolynomial()
    if b == 0 or b == a:
        return QPolynomial([1])
    return ratio_product(range(a - b + 1, a + 1), range(1, b + 1))


def eval_at_root(p: QPolynomial, ell: int, t: int) -> CycloNum:
    """p(zeta_ell^t) by substituting each monomial."""
    acc = make_rational(0, ell)
    for k, c in enumerate(p.coeffs):
        if c:
            acc = acc + root_of_unity(ell, k * t) * c
    return acc


class QSeries:
    """Truncated series sum_{k<=D} c_k q^k with CycloNum coefficients."""

    __slots__ = ("coeffs", "trunc_order")

    def __init__(self, coeffs: Sequence[CycloNum], trunc_order: int):
        if len(coeffs) < trunc_order + 1:
            raise ValueError("series needs trunc_order + 1 coefficients")
        self.coeffs = tuple(coeffs[: trunc_order + 1])
        self.trunc_order = trunc_order

    @classmethod
    def zero(cls, D: int, ell: int = 1) -> "QSeries":
        z = make_rational(0, ell)
        return cls([z] * (D + 1), D)

    @classmethod
    def from_polynomial(cls, p: QPolynomial, D: int, ell: int = 1) -> "QSeries":
        return cls([make_rational(p.coeff(k), ell) for k in range(D + 1)], D)

    @property
    def conductor(self) -> int:
        return self.coeffs[0].conductor

    def __add__(self, other: "QSeries") -> "QSeries":
        D = min(self.trunc_order, other.trunc_order)
        return QSeries([self.coeffs[k] + other.coeffs[k] for k in range(D + 1)], D)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return series_mul(self, other)
        if isinstance(other, QPolynomial):
            return series_mul(self, QSeries.from_polynomial(other, self.trunc_order, self.conductor))
        return series_scale(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        D = min(self.trunc_order, other.trunc_order)
        return all(self.coeffs[k] == other.coeffs[k] for k in range(D + 1))

    __hash__ = None

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def to_polynomial(self) -> QPolynomial:
        """The truncation as a rational polynomial (coefficients must be rational)."""
        return QPolynomial(c.to_rational() for c in self.coeffs)

    def __repr__(self) -> str:
        return f"QSeries({self.coeffs!r}, D={self.trunc_order})"


def geom_inverse(d: int, D: int, ell: int = 1) -> QSeries:
    """Truncation of 1/(1 - q^d)."""
    if d <= 0:
        raise ValueError("geometric series needs d >= 1")
    one = make_rational(1, ell)
    zero = make_rational(0, ell)
    return QSeries([one if k % d == 0 else zero for k in range(D + 1)], D)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    D = min(a.trunc_order, b.trunc_order)
    out = []
    for k in range(D + 1):
        acc = None
        for i in range(k + 1):
            x, y = a.coeffs[i], b.coeffs[k - i]
            if x.is_zero() or y.is_zero():
                continue
            p = x * y
            acc = p if acc is None else acc + p
        out.append(acc if acc is not None else a.coeffs[0] * 0)
    return QSeries(out, D)


def series_scale(a: QSeries, c) -> QSeries:
    return QSeries([x * c for x in a.coeffs], a.trunc_order)


def series_inverse_of_poly(poly: Sequence[CycloNum], D: int) -> QSeries:
    """1/p(q) mod q^(D+1) for p with constant term 1."""
    if poly[0] != 1:
        raise ValueError("series inversion needs constant term 1")
    n = len(poly) - 1
    out = [poly[0]]
    for k in range(1, D + 1):
        acc = None
        for j in range(1, min(k, n) + 1):
            cj = poly[j]
            if cj.is_zero():
                continue
            term = cj * out[k - j]
            acc = term if acc is None else acc + term
        out.append(-acc if acc is not None else poly[0] * 0)
    return QSeries(out, D)


def series_of_char_poly_inverse(M: Matrix, D: int) -> QSeries:
    """Truncation of 1/det(I - qM)."""
    return series_inverse_of_poly(det_one_minus_qm(M), D)
