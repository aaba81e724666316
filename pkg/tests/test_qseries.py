from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflcat.cyclo import make_rational, root_of_unity
from reflcat.matrices import as_matrix
from reflcat.qseries import (
    DEGREE_ZERO,
    NotAPolynomial,
    QPolynomial,
    QSeries,
    eval_at_root,
    geom_inverse,
    q_binomial,
    q_int,
    ratio_product,
    series_mul,
    series_of_char_poly_inverse,
    series_scale,
)


def P(*c):
    return QPolynomial(c)


def test_canonical_trimming_and_degree():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert P(0, 0).is_zero() and P().degree == DEGREE_ZERO
    assert P(0, 0, 3).degree == 2


def test_q_int():
    assert q_int(1) == P(1)
    assert q_int(4) == P(1, 1, 1, 1)
    assert q_int(6) == q_int(2) * P(1, 0, 1, 0, 1)
    for bad in (0, -3):
        with pytest.raises(ValueError):
            q_int(bad)


def test_ratio_product_examples():
    g12 = ratio_product([14, 24], [6, 8])
    # oracle: evaluate both products at q = 1 with plain fractions and at q = 2
    assert g12.value_at_1() == Fraction(14 * 24, 6 * 8) == 7
    two = Fraction(2)
    num = (two**14 - 1) * (two**24 - 1)
    den = (two**6 - 1) * (two**8 - 1)
    assert g12(two) == num / den
    assert g12.is_nonneg_integral()
    assert ratio_product([8, 12], [4, 4]) == P(1, 0, 0, 0, 1) * P(1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert ratio_product([5], [5]) == P(1)


def test_ratio_product_failure_carries_remainder():
    with pytest.raises(NotAPolynomial) as info:
        ratio_product([5], [3])
    exc = info.value
    assert not exc.remainder.is_zero()
    assert exc.quotient * q_int(3) + exc.remainder == q_int(5)
    with pytest.raises(ValueError):
        ratio_product([], [2])


def test_eval_at_root_examples():
    cat3 = P(1, 0, 1, 1, 1, 0, 1)
    # brute force: q = w with w^3 = 1 reduces exponents mod 3: 1 + w^2 + 1 + w + 1
    assert eval_at_root(cat3, 3, 1) == 2
    p = P(3, -1, Fraction(1, 2))
    assert eval_at_root(p, 7, 0) == p.value_at_1()
    assert eval_at_root(q_int(6), 6, 1) == 0


def test_series_examples():
    one = as_matrix([[1]], 1)
    s = series_of_char_poly_inverse(one, 3)
    assert [c.to_rational() for c in s.coeffs] == [1, 1, 1, 1]
    s = series_of_char_poly_inverse(as_matrix([[-1]], 1), 4)
    assert [c.to_rational() for c in s.coeffs] == [1, -1, 1, -1, 1]


def test_series_rotation_by_cube_root():
    w = root_of_unity(3, 1)
    zero = make_rational(0, 3)
    M = ((w, zero), (zero, w * w))
    s = series_of_char_poly_inverse(M, 5)
    # oracle: 1/((1 - wq)(1 - w^2 q)) = 1/(1 + q + q^2) = (1 - q)/(1 - q^3)
    assert [c.to_rational() for c in s.coeffs] == [1, -1, 0, 1, -1, 0]


def test_series_algebra():
    D = 8
    a = geom_inverse(2, D)
    b = geom_inverse(3, D)
    prod = series_mul(a, b)
    # number of ways to write k = 2i + 3j
    assert [c.to_rational() for c in prod.coeffs] == [
        sum(1 for i in range(k + 1) for j in range(k + 1) if 2 * i + 3 * j == k) for k in range(D + 1)
    ]
    scaled = series_scale(a, root_of_unity(4, 1))
    assert scaled.coeffs[2] == root_of_unity(4, 1)
    short = QSeries.zero(3)
    assert (a + short).trunc_order == 3
    assert (a * b).trunc_order == D


def test_geom_inverse_times_one_minus():
    for d in range(1, 7):
        s = geom_inverse(d, 15) * (P(1) - QPolynomial.monomial(d))
        assert s == QSeries.from_polynomial(P(1), 15)


def test_q_binomial_matches_pascal():
    # independent recurrence [n,k] = [n-1,k-1] + q^k [n-1,k]
    table = {(0, 0): P(1)}
    for n in range(1, 9):
        for k in range(0, n + 1):
            left = table.get((n - 1, k - 1), QPolynomial())
            right = table.get((n - 1, k), QPolynomial()) * QPolynomial.monomial(k)
            table[(n, k)] = left + right
    for (n, k), poly in table.items():
        assert q_binomial(n, k) == poly


def test_pretty_and_reversed():
    p = P(1, -2, 0, Fraction(1, 3))
    assert p.pretty() == "1 - 2*q + 1/3*q^3"
    assert p.reversed(4) == P(0, Fraction(1, 3), 0, -2, 1)
    assert p.reversed(5).degree == 5
    with pytest.raises(ValueError):
        p.reversed(2)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(1, 12), min_size=1, max_size=3),
    st.lists(st.integers(1, 12), min_size=1, max_size=3),
)
def test_ratio_product_round_trip(nums, dens):
    top = P(1)
    for a in nums:
        top = top * q_int(a)
    bottom = P(1)
    for b in dens:
        bottom = bottom * q_int(b)
    quot, rem = top.divmod(bottom)
    assert quot * bottom + rem == top
    if rem.is_zero():
        assert ratio_product(nums, dens) * bottom == top
    else:
        with pytest.raises(NotAPolynomial):
            ratio_product(nums, dens)


def test_cyclotomic_divisibility():
    for a in range(1, 13):
        for b in range(1, 13):
            assert ratio_product([a * b], [a]) * q_int(a) == q_int(a * b)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), max_size=14),
    st.sampled_from([1, 2, 3, 4, 5, 8, 12]),
    st.integers(-30, 30),
)
def test_two_evaluation_paths_agree(coeffs, ell, t):
    p = QPolynomial(coeffs)
    assert eval_at_root(p, ell, t) == p(root_of_unity(ell, t))
