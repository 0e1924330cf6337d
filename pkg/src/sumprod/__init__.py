"""Sumset/product-set laboratory over prime fields.

Field substrate and set calculus, witness extraction for the classical
sumset inequalities, quadruple selection, a certification harness that
executes the full inequality chain on concrete sets, and a CLI for
experiments.
"""

from ._kernels import BACKEND
from .certify import (
    CertificateStep,
    PigeonholeResult,
    ProofTrace,
    aggregate_constants,
    exact_failures,
    exact_step_names,
    pigeonhole_decomposition,
    run_theorem,
)
from .errors import SumProdError
from .families import FamilySpec, generate
from .field import FpSet, PrimeField, build_dlog, make_field, set_from_elements
from .plunneke import (
    EXHAUSTIVE_LIMIT,
    PlunnekeWitness,
    RefinementResult,
    cor14_bound,
    cor16_bounds,
    find_plunneke_witness_exhaustive,
    find_plunneke_witness_greedy,
    refine_large_subset,
    ruzsa_triangle_check,
)
from .quadruples import (
    QuadrupleChoice,
    find_quadruple_full,
    find_quadruple_nonfull,
    verify_gk_lower_bound,
)
from .setops import (
    SignedDilate,
    additive_energy_cross,
    difference_set,
    dilate,
    dilate_intersection_size,
    multiplicative_energy,
    product_set,
    ratio_of_differences,
    ratio_representation_count,
    signed_combination,
    sumset,
)

__version__ = "0.1.0"
