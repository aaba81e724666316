import random

import numpy as np
import pytest

from reflcat import matrices as mx
from reflcat.groups import build
from reflcat.suites import random_cyclo


def to_numpy(m):
    return np.array([[x.to_complex() for x in row] for row in m])


def random_matrix(rng, n, ell):
    return tuple(tuple(random_cyclo(rng, ell, bound=3) for _ in range(n)) for _ in range(n))


@pytest.mark.parametrize("n, ell", [(1, 5), (2, 8), (3, 12), (4, 3), (5, 4)])
def test_charpoly_against_numpy(n, ell):
    rng = random.Random(n * 100 + ell)
    for _ in range(5):
        M = random_matrix(rng, n, ell)
        cp = [c.to_complex() for c in mx.det_one_minus_qm(M)]
        assert np.allclose(cp, np.poly(to_numpy(M)), atol=1e-8)
        assert np.isclose(mx.determinant(M).to_complex(), np.linalg.det(to_numpy(M)))


def test_inverse_and_rank():
    rng = random.Random(7)
    for n in (2, 3, 4):
        M = random_matrix(rng, n, 12)
        if mx.determinant(M).is_zero():
            continue
        assert mx.mat_mul(M, mx.inverse(M)) == mx.identity(n, 12)
        assert mx.rank(M) == n
    sing = mx.as_matrix([[1, 2], [2, 4]], 1)
    assert mx.rank(sing) == 1
    with pytest.raises(ZeroDivisionError):
        mx.inverse(sing)


def test_group_charpolys_match_numpy():
    G = build("G(3,1,3)")
    for i in range(0, G.order, 7):
        cp = [c.to_complex() for c in G.charpolys[i]]
        assert np.allclose(cp, np.poly(to_numpy(G.elements[i])), atol=1e-8)


def test_keys_and_trace():
    G = build("Sym(3)")
    keys = {mx.mat_key(m) for m in G.elements}
    assert len(keys) == G.order
    assert mx.trace(G.elements[0]) == 2
