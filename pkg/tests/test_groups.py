import json
import math
import random
import shutil

import pytest

from reflcat import groups as gr
from reflcat.cyclo import root_of_unity
from reflcat.groups import (
    GroupBuildError,
    OrderCapExceeded,
    build,
    classify_reflections,
    exceptional_table,
    from_generators,
    generator_matrices,
)
from reflcat.invariants import character, degrees
from reflcat.matrices import mat_mul, rank, mat_sub, identity
from reflcat.specs import UnsupportedGroup, parse_spec


def geometry(spec):
    G = build(spec)
    return G.order, G.n, G.N, G.N_star, G.h


def test_build_examples():
    assert geometry("Sym(3)") == (6, 2, 3, 3, 3)
    assert geometry("G(2,1,2)") == (8, 2, 4, 4, 4)
    G = build("G(4,2,2)")
    assert (G.order, G.h) == (16, 6)
    assert degrees(G).degrees == [4, 4]
    assert geometry("Cyc(3)") == (3, 1, 1, 2, 3)


def test_brute_force_symmetric_group():
    # S3 on the sum-zero plane: 3 transpositions, all reflections of order 2
    G = build("Sym(3)")
    refl, hyp = classify_reflections(G)
    assert len(refl) == 3 and len(hyp) == 3
    assert all(H.e_H == 2 for H in hyp)
    assert G.elements[0] == identity(2, G.conductor)


def test_cyclic_reflections():
    G = build("Cyc(4)")
    assert G.N_star == 3 and G.N == 1 and G.hyperplanes[0].e_H == 4


def test_imprimitive_hyperplanes():
    G = build("G(4,2,2)")
    assert sorted(H.e_H for H in G.hyperplanes) == [2] * 6
    assert sum(H.e_H for H in G.hyperplanes) == G.n * G.h == 12
    # coordinate hyperplanes x_i = 0 form one orbit, the 4 lines x_1 = c x_2 split into two
    sizes = sorted(o["size"] for o in G.orbit_structure())
    assert sizes == [2, 2, 2]


def test_generator_matrices():
    (g,) = generator_matrices("Cyc(5)")
    assert g == ((root_of_unity(5, 1),),)
    for e in (3, 4, 5, 6):
        gens = generator_matrices(f"Dih({e})")
        assert len(gens) == 2
        assert build(f"Dih({e})").order == 2 * e
    G = build("G12")
    assert G.order == 48 and G.conductor == 8
    assert degrees(G).degrees == [6, 8]


def test_closure_and_inverses():
    rng = random.Random(3)
    for spec in ("G(6,3,2)", "G12", "Sym(4)", "G25"):
        G = build(spec)
        for _ in range(50):
            a, b = rng.randrange(G.order), rng.randrange(G.order)
            G.mul(a, b)  # raises KeyError if not closed
            assert G.mul(a, G.inverses[a]) == 0


def test_reflections_fix_hyperplanes():
    for spec in ("G(4,2,3)", "G13", "Dih(5)"):
        G = build(spec)
        det = character(G, "det")
        for r in G.reflections:
            M = G.elements[r.element]
            assert rank(mat_sub(M, identity(G.n, G.conductor))) == 1
            assert r.determinant != 1
            assert G.hyperplanes[r.hyperplane].e_H % _order(r.determinant) == 0
            assert det(r.element) == r.determinant
        prod = math.prod((r.determinant for r in G.reflections), start=root_of_unity(G.conductor, 0))
        assert prod ** (2 * G.conductor) == 1


def _order(z):
    k = 1
    while z**k != 1:
        k += 1
    return k


def test_h_exceeds_e_H():
    for spec in ("Sym(4)", "G(6,2,2)", "G7", "G22"):
        G = build(spec)
        assert all(G.h > H.e_H for H in G.hyperplanes)


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        build("G(4,2,4)", order_cap=1000)
    with pytest.raises(OrderCapExceeded, match="allow_large"):
        build("G31")
    with pytest.raises(OrderCapExceeded):
        gr.enumerate_group(generator_matrices("Sym(5)"), 50)


def test_unsupported():
    with pytest.raises(UnsupportedGroup):
        build("G27")
    with pytest.raises(UnsupportedGroup):
        build("G(2,2,2)")


def test_generator_table_contents():
    table = exceptional_table()
    assert "G27" not in table and "G32" not in table
    assert {"G7", "G11", "G12", "G13", "G15", "G19", "G22", "G31"} <= set(table)
    for name, rec in table.items():
        assert math.prod(rec["degrees"]) == rec["order"], name
        assert len(rec["psi_rows"]) == rec["psi_order"]


EXCEPTIONAL = [f"G{k}" for k in list(range(4, 27)) + [28, 29]]


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_exceptional_builds_match_table(name):
    G = build(name)  # checks order and Molien degrees against the table
    rec = exceptional_table()[name]
    assert G.order == rec["order"]
    assert G.well_generated == rec["well_generated"]
    if G.well_generated:
        assert G.h == rec["degrees"][-1]


@pytest.mark.large
@pytest.mark.parametrize("name", ["G30", "G31"])
def test_large_exceptional(name):
    G = build(name, allow_large=True)
    assert G.order == exceptional_table()[name]["order"]
    assert G.h == 30


def test_bad_generators_fail_loudly(tmp_path, monkeypatch):
    src = gr.data_dir()
    for f in src.iterdir():
        shutil.copy(f, tmp_path / f.name)
    path = tmp_path / "generators.json"
    doc = json.loads(path.read_text())
    doc["groups"]["G12"]["order"] = 96
    path.write_text(json.dumps(doc))
    monkeypatch.setenv(gr.DATA_ENV, str(tmp_path))
    with pytest.raises(GroupBuildError, match="checksum"):
        build("G12")
    doc["checksum"] = gr._checksum(doc["groups"])
    path.write_text(json.dumps(doc))
    gr._load_generator_table.cache_clear()
    with pytest.raises(GroupBuildError, match="expected 96"):
        build(parse_spec("G12"), directory=tmp_path)


def test_data_dir_override(tmp_path, monkeypatch):
    monkeypatch.setenv(gr.DATA_ENV, str(tmp_path))
    assert gr.data_dir() == tmp_path
    with pytest.raises(FileNotFoundError):
        exceptional_table()


def test_from_generators_detects_non_reflections():
    G = from_generators(parse_spec("Sym(3)"), generator_matrices("Sym(3)"), True)
    assert G.order == 6
    rot = mat_mul(*generator_matrices("Sym(3)"))
    with pytest.raises(gr.InvariantViolation):
        from_generators(parse_spec("Sym(3)"), [rot], True)
