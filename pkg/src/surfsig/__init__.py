"""Finite group actions on compact orientable surfaces.

Exact tools for PSL(2,p) and small permutation groups: class algebra,
maximal subgroups, signature arithmetic, surface-kernel epimorphism search,
genus spectra and Eichler traces.
"""

from __future__ import annotations

from .classes import (
    ClassVector,
    ConjugacyClassTable,
    conjugacy_classes,
    count_product_solutions,
    lambda_coefficient,
)
from .cyclotomic import Cyclotomic
from .eichler import FixedPointProfile, eichler_trace, fixed_point_profile, surface_character
from .epi import EpiWitness, SearchOutcome, exists_epimorphism, is_order_k_commutator, verify_witness
from .errors import (
    BadPeriod,
    ConventionViolation,
    HypothesisViolation,
    InputError,
    NoWitness,
    SurfsigError,
)
from .groups import (
    FiniteGroup,
    build_psl2,
    centralizer_order,
    commutator,
    element_order,
    generated_subgroup,
    generates,
    parse_permutation_group,
)
from .signature import (
    Classification,
    ExponentVector,
    Signature,
    classify,
    extend_signature,
    from_exponent_vector,
    monoid_combine,
    parse_signature,
    riemann_hurwitz_genus,
    to_exponent_vector,
)
from .spectrum import (
    SpectrumResult,
    reachable_genera,
    shift_witness,
    stable_upper_genus,
    witness_signature_for_genus,
)
from .subgroups import all_two_generated_subgroups, maximal_subgroups, subgroup_solution_bound

__version__ = "0.1.0"
