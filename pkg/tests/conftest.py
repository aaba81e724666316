import cmath

import numpy as np
import pytest


def pytest_addoption(parser):
    parser.addoption("--run-large", action="store_true", help="include G31 (order 46080)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-large"):
        return
    skip = pytest.mark.skip(reason="needs --run-large")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])


def numeric_matrices(G):
    return [np.array([[x.to_complex() for x in row] for row in m]) for m in G.elements]


def numeric_graded_multiplicity(G, chi, D):
    """Floating-point Molien average of chi(w)/det(I - qM_w) up to q^D, rounded.

    Independent of the exact kernels: eigenvalues come from numpy.
    """
    total = np.zeros(D + 1, dtype=complex)
    for M, c in zip(numeric_matrices(G), chi):
        poly = np.poly(M)  # det(xI - M) = x^n + ...; reversed gives det(I - qM)
        series = np.zeros(D + 1, dtype=complex)
        series[0] = 1
        for k in range(1, D + 1):
            series[k] = -sum(poly[j] * series[k - j] for j in range(1, min(k, len(poly) - 1) + 1))
        total += c * series
    total /= G.order
    out = [round(x.real) for x in total]
    assert np.allclose(total, out, atol=1e-6)
    return out


def numeric_fake_degree(G, chi, degrees):
    D = G.N_star + 1
    coeffs = numeric_graded_multiplicity(G, chi, D)
    for d in degrees:
        coeffs = [c - (coeffs[k - d] if k >= d else 0) for k, c in enumerate(coeffs)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def trace_character(G):
    return [sum(m[i][i].to_complex() for i in range(G.n)) for m in G.elements]


def zeta(d, t=1):
    return cmath.exp(2j * cmath.pi * t / d)
