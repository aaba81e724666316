"""Exact invariant theory of complex reflection groups and their q-Fuss-Catalan polynomials."""

from .catalan import (
    CatalanContradiction,
    CatalanReport,
    congruence_permutation_check,
    csp_check,
    fuss_catalan,
    positive_fuss_catalan,
    psi_exponents,
    regular_numbers,
    twisted_catalan,
)
from .cyclo import CycloNum, make_rational, root_of_unity
from .groups import ReflectionGroup, build, generator_matrices
from .invariants import c_value, character, degrees, exponents, fake_degree, hilbert_invariants, local_data
from .qseries import QPolynomial, QSeries, eval_at_root, q_int, ratio_product
from .specs import Cyc, Dih, Imprimitive, ShephardTodd, Sym, parse_spec

__version__ = "0.1.0"
