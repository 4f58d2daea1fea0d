"""Betti characters of finite groups acting on minimal free resolutions."""

from .action import (
    ConjugacyClass,
    GroupData,
    GroupElementAction,
    act_on_matrix,
    induced_psi0,
    inverse_action,
    trivial_psi0,
    validate_group_data,
)
from .betti import (
    BettiCharacterTable,
    betti_characters,
    betti_characters_from,
    graded_component_character,
    lift_chain_map,
)
from .chars import CharacterTable, NonIntegralDecomposition, decompose, inner_product, load_character_table
from .freemod import GradedFreeModule, GradedMatrix, compose, degrees_of_domain, graded_trace, identity, validate_graded
from .problem import ProblemFile, build_psi0, build_resolution, load_problem, parse_problem
from .resolution import FreeComplex, export_complex, import_complex, minimize, taylor_complex, verify_complex
from .ring import GradedRing, Polynomial, degree_of_monomial, is_homogeneous, linear_substitute, monomials_of_degree
from .solve import NoSolution, factor

__version__ = "0.1.0"
