"""Regenerate src/reflcat/data/generators.json.

Rank 2: every primitive rank-2 group G4..G22 is a normal reflection
subgroup of one of mu_12.T, mu_24.O, mu_60.I (T, O, I binary polyhedral in
SU(2), quaternion model), so it is generated by a union of conjugacy
classes of reflections of that overgroup.  All unions are enumerated on
(scalar, polyhedral-element) pairs and each resulting group is matched to
its Shephard-Todd number by (order, degrees, h).

Rank >= 3: Coxeter groups from their geometric representation; the others
by adjoining one reflection to an imprimitive subgroup.

Usage: python tools/derive_exceptional.py [--only G24,G31] [--skip-large]
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from reflcat import matrices as mx  # noqa: E402
from reflcat.cyclo import CycloNum, make_rational, root_of_unity  # noqa: E402
from reflcat.groups import (  # noqa: E402
    OrderCapExceeded,
    _checksum,
    encode_matrix,
    enumerate_group,
    from_generators,
    generator_matrices,
)
from reflcat.invariants import degrees  # noqa: E402
from reflcat.specs import GroupSpec, Imprimitive  # noqa: E402

# order, degrees, well_generated; h for well-generated groups is d_n
ST_DATA = {
    4: (24, [4, 6], True),
    5: (72, [6, 12], True),
    6: (48, [4, 12], True),
    7: (144, [12, 12], False),
    8: (96, [8, 12], True),
    9: (192, [8, 24], True),
    10: (288, [12, 24], True),
    11: (576, [24, 24], False),
    12: (48, [6, 8], False),
    13: (96, [8, 12], False),
    14: (144, [6, 24], True),
    15: (288, [12, 24], False),
    16: (600, [20, 30], True),
    17: (1200, [20, 60], True),
    18: (1800, [30, 60], True),
    19: (3600, [60, 60], False),
    20: (360, [12, 30], True),
    21: (720, [12, 60], True),
    22: (240, [12, 20], False),
    23: (120, [2, 6, 10], True),
    24: (336, [4, 6, 14], True),
    25: (648, [6, 9, 12], True),
    26: (1296, [6, 12, 18], True),
    28: (1152, [2, 6, 8, 12], True),
    29: (7680, [4, 8, 12, 20], True),
    30: (14400, [2, 12, 20, 30], True),
    31: (46080, [8, 12, 20, 24], False),
}

# generalised Coxeter numbers of the non-well-generated groups
NWG_H = {7: 18, 11: 36, 12: 12, 13: 18, 15: 30, 19: 90, 22: 30, 31: 30}

PSI = {
    7: [[11, 11], [5, 17]],
    11: [[23, 23], [11, 35]],
    12: [[5, 7], [1, 11]],
    13: [[7, 11], [5, 13], [7, 11], [1, 17]],
    15: [[11, 23], [17, 17], [11, 23], [5, 29]],
    19: [[59, 59], [29, 89]],
    22: [[11, 19], [1, 29]],
    31: [[7, 11, 19, 23], [1, 13, 17, 29]],
}


def expected_h(k: int) -> int:
    return NWG_H.get(k, ST_DATA[k][1][-1])


def log(*a):
    print(*a, file=sys.stderr, flush=True)


# -- quaternion model ---------------------------------------------------------


def quaternion_units(L: int):
    z = make_rational(0, L)
    o = make_rational(1, L)
    i = root_of_unity(L, L // 4)
    qi = ((i, z), (z, -i))
    qj = ((z, o), (-o, z))
    qk = ((z, i), (i, z))
    one = ((o, z), (z, o))
    return one, qi, qj, qk


def quat(L, a, b, c, d):
    one, qi, qj, qk = quaternion_units(L)
    coeffs = [a, b, c, d]
    out = []
    for r in range(2):
        row = []
        for s in range(2):
            acc = make_rational(0, L)
            for x, m in zip(coeffs, (one, qi, qj, qk)):
                acc = acc + m[r][s] * x
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def binary_polyhedral(kind: str, L: int):
    half = Fraction(1, 2)
    one, qi, qj, qk = quaternion_units(L)
    gens = [qi, qj, quat(L, half, half, half, half)]
    if kind == "O":
        s2 = root_of_unity(L, L // 8) + root_of_unity(L, -L // 8)  # sqrt 2
        inv = s2 * half
        gens.append(quat(L, inv, inv, 0, 0))
    elif kind == "I":
        z5 = root_of_unity(L, L // 5)
        phi = 1 + z5 + z5.conj()
        phinv = phi - 1
        gens.append(quat(L, phi * half, phinv * half, half, 0))
    return gens


SETUP = {"T": (12, 12), "O": (24, 24), "I": (60, 60)}  # (conductor, scalar order)


def rank2_family(kind: str):
    L, k = SETUP[kind]
    B, bindex = enumerate_group(binary_polyhedral(kind, L), 200)
    nb = len(B)
    log(f"{kind}: |B| = {nb}")
    table = [[bindex[mx.mat_key(mx.mat_mul(a, b))] for b in B] for a in B]
    neg = [bindex[mx.mat_key(tuple(tuple(-x for x in row) for row in a))] for a in B]
    inv = [next(j for j in range(nb) if table[i][j] == 0) for i in range(nb)]
    traces = [mx.trace(b) for b in B]
    zeta = [root_of_unity(L, s * (L // k)) for s in range(k)]
    half_k = k // 2

    def canon(s, b):
        s %= k
        return (s - half_k, neg[b]) if s >= half_k else (s, b)

    def mul(x, y):
        return canon(x[0] + y[0], table[x[1]][y[1]])

    refl = []
    for s in range(half_k):
        for b in range(nb):
            z = zeta[s]
            if (z * z - z * traces[b] + 1).is_zero() and not (s == 0 and b == 0):
                refl.append((s, b))
    log(f"{kind}: {len(refl)} reflections in mu_{k}.{kind}")
    # conjugacy classes under B (scalars are central)
    seen = set()
    classes = []
    for r in refl:
        if r in seen:
            continue
        cls = {canon(r[0], table[table[g][r[1]]][inv[g]]) for g in range(nb)}
        seen |= cls
        classes.append(sorted(cls))
    log(f"{kind}: {len(classes)} reflection classes of sizes {[len(c) for c in classes]}")

    def closure(gens):
        start = (0, 0)
        elems = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return elems

    def matrix(x):
        s, b = x
        return tuple(tuple(zeta[s] * v for v in row) for row in B[b])

    found = {}
    for size in range(1, len(classes) + 1):
        for combo in itertools.combinations(range(len(classes)), size):
            gens = [r for c in combo for r in classes[c]]
            grp = closure(gens)
            # only keep unions that are exactly the reflections of the group
            if not all(r in grp for r in gens):
                continue
            contained = [c for c in range(len(classes)) if classes[c][0] in grp]
            if sorted(contained) != list(combo):
                continue
            found[frozenset(grp)] = gens
    log(f"{kind}: {len(found)} distinct reflection subgroups")
    out = []
    for grp, gens in found.items():
        # greedy minimal generating set
        chosen = []
        cur = {(0, 0)}
        for r in gens:
            if r not in cur:
                chosen.append(r)
                cur = closure(chosen)
                if len(cur) == len(grp):
                    break
        # drop redundant generators
        for r in list(chosen):
            trial = [x for x in chosen if x != r]
            if trial and len(closure(trial)) == len(grp):
                chosen = trial
        out.append((len(grp), [matrix(r) for r in chosen]))
    return out


# -- rank >= 3 ----------------------------------------------------------------


def coxeter_generators(mvals: dict, rank: int, L: int):
    """Geometric representation: s_i(a_j) = a_j + 2cos(pi/m_ij) a_i."""

    def two_cos(m):
        if m == 2:
            return make_rational(0, L)
        if m == 3:
            return make_rational(1, L)
        z = root_of_unity(L, L // (2 * m))
        return z + z.conj()

    gens = []
    for i in range(rank):
        rows = [[make_rational(1 if r == c else 0, L) for c in range(rank)] for r in range(rank)]
        for j in range(rank):
            if j == i:
                rows[i][i] = make_rational(-1, L)
            else:
                m = mvals.get((min(i, j), max(i, j)), 2)
                rows[i][j] = two_cos(m)
        gens.append(tuple(tuple(r) for r in rows))
    return gens


def crystallographic_generators(cartan, L: int):
    n = len(cartan)
    gens = []
    for i in range(n):
        rows = [[make_rational(1 if r == c else 0, L) for c in range(n)] for r in range(n)]
        for j in range(n):
            rows[i][j] = make_rational(-cartan[i][j] if j != i else -1, L)
        gens.append(tuple(tuple(r) for r in rows))
    return gens


def unitary_reflection(v, eigen):
    """I + (eigen - 1) v v^* / (v^* v)."""
    L = v[0].conductor
    norm = sum((x * x.conj() for x in v), make_rational(0, L))
    f = (eigen - 1) / norm
    n = len(v)
    return tuple(
        tuple(make_rational(1 if r == c else 0, L) + f * v[r] * v[c].conj() for c in range(n))
        for r in range(n)
    )


def promote_matrix(m, L):
    return tuple(tuple(x.promote(L) for x in row) for row in m)


def search_extension(base, candidates, eigen, order):
    """First candidate root whose reflection extends ``base`` to ``order``."""
    for v in candidates:
        r = unitary_reflection(v, eigen)
        try:
            elems, _ = enumerate_group(base + [r], order + 1)
        except OrderCapExceeded:
            continue
        if len(elems) == order:
            return r, v
    return None, None


def rank3_plus(k: int):
    if k == 23:
        return coxeter_generators({(0, 1): 5, (1, 2): 3}, 3, 10)
    if k == 30:
        return coxeter_generators({(0, 1): 5, (1, 2): 3, (2, 3): 3}, 4, 10)
    if k == 28:
        cartan = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
        return crystallographic_generators(cartan, 1)
    if k == 24:
        L = 14
        lam = root_of_unity(L, 2) + root_of_unity(L, 4) + root_of_unity(L, 8)
        base = [promote_matrix(g, L) for g in generator_matrices(Imprimitive(2, 1, 3))]
        vals = [make_rational(0, L), make_rational(1, L), make_rational(-1, L), lam, -lam, lam.conj(), -lam.conj()]
        cands = [tuple(v) for v in itertools.product(vals, repeat=3) if any(not x.is_zero() for x in v)]
        r, v = search_extension(base, cands, make_rational(-1, L), 336)
        log(f"G24 extra root {v}")
        return base + [r]
    if k in (25, 26):
        L = 3
        w = root_of_unity(3, 1)
        one, zero = make_rational(1, L), make_rational(0, L)
        base = [((w, zero, zero), (zero, one, zero), (zero, zero, one))]
        cands = [(one, w**a, w**b) for a in range(3) for b in range(3)]
        # order-3 reflections with eigenvalue w
        gens = base + [unitary_reflection(v, w) for v in cands]
        if k == 26:
            gens.append(unitary_reflection((one, -one, zero), make_rational(-1, L)))
        return gens
    if k in (29, 31):
        base = generator_matrices(Imprimitive(4, 4 if k == 29 else 2, 4))
        L = 4
        one = make_rational(1, L)
        v = (one, one, one, one)
        return base + [unitary_reflection(v, -one)]
    raise KeyError(k)


def minimal_conductor(gens):
    L = gens[0][0][0].conductor
    best = 1
    for g in gens:
        for row in g:
            for x in row:
                c = x.minimal_conductor()
                best = best * c // __import__("math").gcd(best, c)
    if best == L:
        return gens, L
    return [tuple(tuple(x.restrict(best) for x in row) for row in g) for g in gens], best


def minimize_generators(gens, order, cap):
    """Drop generators while the generated order is unchanged."""
    gens = list(gens)
    i = 0
    while i < len(gens):
        trial = gens[:i] + gens[i + 1 :]
        if trial:
            try:
                elems, _ = enumerate_group(trial, cap)
                if len(elems) == order:
                    gens = trial
                    continue
            except OrderCapExceeded:
                pass
        i += 1
    return gens


def record_for(k, gens):
    order, degs, wg = ST_DATA[k]
    gens, ell = minimal_conductor(gens)
    spec = GroupSpec("exceptional", (k,))
    G = from_generators(spec, gens, wg, cap=order + 1)
    got = degrees(G).degrees
    assert G.order == order, (k, G.order)
    assert got == degs, (k, got, degs)
    assert G.h == expected_h(k), (k, G.h)
    rec = {
        "rank": G.n,
        "conductor": ell,
        "order": order,
        "degrees": degs,
        "well_generated": wg,
        "psi_order": len(PSI[k]) if k in PSI else 1,
        "psi_rows": PSI.get(k, [[d - 1 for d in degs]]),
        "generators": [encode_matrix(g) for g in gens],
    }
    return rec


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", default="")
    ap.add_argument("--skip-large", action="store_true")
    ap.add_argument("--out", default=str(ROOT / "src/reflcat/data/generators.json"))
    args = ap.parse_args(argv)
    only = {int(x.strip()[1:]) for x in args.only.split(",") if x.strip()}
    out_path = Path(args.out)
    groups = {}
    if out_path.exists():
        groups = json.loads(out_path.read_text())["groups"]

    want_rank2 = [k for k in range(4, 23) if not only or k in only]
    done = set()
    for kind in ("T", "O", "I"):
        if not want_rank2:
            break
        t0 = time.time()
        for order, gens in rank2_family(kind):
            spec = GroupSpec("exceptional", (0,))
            G = from_generators(spec, gens, False, cap=order + 1)
            prof = degrees(G).degrees
            match = [
                k
                for k in want_rank2
                if ST_DATA[k][0] == order and ST_DATA[k][1] == prof and expected_h(k) == G.h
            ]
            if not match:
                log(f"  order {order} degrees {prof} h {G.h}: not primitive/wanted")
                continue
            (k,) = match
            if k in done:
                continue
            done.add(k)
            groups[f"G{k}"] = record_for(k, gens)
            log(f"  G{k}: {len(gens)} generators, conductor {groups[f'G{k}']['conductor']}")
        log(f"{kind} done in {time.time() - t0:.1f}s")

    for k in (23, 24, 25, 26, 28, 29, 30, 31):
        if only and k not in only:
            continue
        if args.skip_large and ST_DATA[k][0] > 10_000:
            continue
        t0 = time.time()
        gens = rank3_plus(k)
        order = ST_DATA[k][0]
        if len(gens) > len(gens[0]) + 1 and order <= 10_000:
            gens = minimize_generators(gens, order, order + 1)
        groups[f"G{k}"] = record_for(k, gens)
        log(f"G{k}: {len(gens)} generators, {time.time() - t0:.1f}s")

    groups = dict(sorted(groups.items(), key=lambda kv: int(kv[0][1:])))
    doc = {"format": "reflcat-generators", "version": 1, "groups": groups, "checksum": _checksum(groups)}
    out_path.write_text(json.dumps(doc, indent=1) + "\n")
    log(f"wrote {len(groups)} groups to {out_path}")


if __name__ == "__main__":
    main()
