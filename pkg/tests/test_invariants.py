import random

import pytest
from conftest import numeric_fake_degree, numeric_graded_multiplicity, trace_character

from reflcat.cyclo import InvalidAutomorphism, root_of_unity
from reflcat.groups import build
from reflcat.invariants import (
    InvariantError,
    c_value,
    character,
    degrees,
    exponents,
    fake_degree,
    hilbert_invariants,
    local_data,
)
from reflcat.qseries import QPolynomial


def coeff_list(series):
    return [c.to_rational() for c in series.coeffs]


def test_character_examples():
    G = build("Sym(3)")
    sign = character(G, "ext(2)")
    assert set(v.to_rational() for v in sign.values) == {1, -1}
    assert sign.values == character(G, "det").values
    assert character(G, "ext(0)").values == character(G, "triv").values
    C = build("Cyc(5)")
    V = character(C, "V")
    assert sorted(v.key for v in V.values) == sorted(root_of_unity(5, k).key for k in range(5))
    assert character(G, "V*").values == character(G, "V_dual").values


def test_character_label_errors():
    G = build("Dih(4)")
    for bad in ("W", "ext(3)", "galois_twist(U,3)", "det(2)"):
        with pytest.raises(ValueError):
            character(G, bad)
    with pytest.raises(InvalidAutomorphism):
        character(G, "galois_twist(V,2)")


def test_dual_is_inverse_trace_and_conjugate():
    for spec in ("G12", "G(6,2,2)", "Cyc(6)"):
        G = build(spec)
        V = character(G, "V")
        assert V.dual().values == V.conj().values == character(G, "V_dual").values


def test_class_function():
    rng = random.Random(1)
    G = build("G13")
    for label in ("V", "ext_dual(2)", "galois_twist(V,5)"):
        chi = character(G, label)
        for _ in range(30):
            g, w = rng.randrange(G.order), rng.randrange(G.order)
            assert chi(G.conjugate(g, w)) == chi(w)


def test_hilbert_series_examples():
    G = build("Cyc(3)")
    assert coeff_list(hilbert_invariants(G)) == [1, 0, 0, 1]
    G = build("Sym(3)")
    D = G.N_star + 1
    expect = [sum(1 for i in range(D + 1) for j in range(D + 1) if 2 * i + 3 * j == k) for k in range(D + 1)]
    assert coeff_list(hilbert_invariants(G)) == expect
    G = build("G(4,2,2)")
    D = G.N_star + 1
    expect = [k // 4 + 1 if k % 4 == 0 else 0 for k in range(D + 1)]
    assert coeff_list(hilbert_invariants(G)) == expect


@pytest.mark.parametrize("spec", ["Sym(3)", "Sym(4)", "Dih(5)", "G(4,2,2)", "G12", "Cyc(4)"])
def test_hilbert_matches_numeric_oracle(spec):
    G = build(spec)
    D = G.N_star + 1
    ones = [1] * G.order
    assert coeff_list(hilbert_invariants(G)) == numeric_graded_multiplicity(G, ones, D)


def test_degree_examples():
    assert degrees(build("Sym(4)")).degrees == [2, 3, 4]
    assert degrees(build("G12")).degrees == [6, 8]
    for d in range(2, 7):
        assert degrees(build(f"Cyc({d})")).degrees == [d]


def test_fake_degree_examples():
    G = build("Sym(3)")
    assert fake_degree(G, "triv") == QPolynomial([1])
    assert fake_degree(G, "ext(2)") == QPolynomial.monomial(3)
    assert fake_degree(G, "V") == QPolynomial([0, 1, 1])


@pytest.mark.parametrize("spec", ["Sym(3)", "Sym(4)", "Dih(6)", "G(4,2,2)", "G(6,3,2)", "G12", "G13"])
def test_fake_degree_of_V_matches_numeric_oracle(spec):
    G = build(spec)
    ds = degrees(G).degrees
    want = numeric_fake_degree(G, trace_character(G), ds)
    assert [int(c) for c in fake_degree(G, "V").coeffs] == want
    dual = [x.conjugate() for x in trace_character(G)]
    assert [int(c) for c in fake_degree(G, "V_dual").coeffs] == numeric_fake_degree(G, dual, ds)


def test_exponent_examples():
    assert exponents(build("Sym(3)"), "V") == [1, 2]
    assert exponents(build("G12"), "V") == [5, 7]
    for d in range(2, 7):
        assert exponents(build(f"Cyc({d})"), "V") == [d - 1]
    assert degrees(build("G12")).coexponents == [1, 11]


def test_c_value_examples():
    for spec in ("Sym(3)", "G12", "G(6,3,2)", "Cyc(5)"):
        G = build(spec)
        assert c_value(G, "triv") == 0
        assert c_value(G, "V") == G.h
    assert build("Sym(3)").h == 3 and build("G12").h == 12


def test_local_data_examples():
    G = build("Sym(3)")
    for t in range(G.N):
        assert local_data(G, t, "triv") == [1, 0]
        assert local_data(G, t, "V") == [1, 1]
    C = build("Cyc(4)")
    assert local_data(C, 0, "V") == [0, 0, 0, 1]


def test_duality_well_generated():
    for spec in ("Sym(4)", "Dih(5)", "G(3,1,2)", "G(4,4,3)", "G25"):
        G = build(spec)
        ev = exponents(G, "V")
        ed = degrees(G).coexponents
        n = G.n
        assert all(ev[i] + ed[n - 1 - i] == G.h for i in range(n))


def test_non_homogeneous_character_rejected():
    G = build("Sym(3)")
    V = character(G, "V")
    # V + 2 triv: each reflection contributes 1 - 2/4, total 3/2
    sums = type(V)(G, tuple(a + 2 for a in V.values), "V+2triv")
    with pytest.raises(InvariantError, match="z-homogeneous"):
        c_value(G, sums)
