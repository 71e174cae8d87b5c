from QuadraticEquations.wordcore import (
    Symbol,
    Letter,
    Word,
    CyclicWord,
    Substitution,
    IDENTITY,
    constant,
    variable,
    parse_word,
    format_word,
    cyclic_reduce,
    commutator,
    in_commutator_subgroup,
    in_square_subgroup,
)
from QuadraticEquations.datavalidation import (
    QuadraticEquationError,
    MalformedWordError,
    DomainError,
    NoSolutionError,
    HypothesisViolationError,
    SearchBudgetExceeded,
    TableUnavailableError,
)
from QuadraticEquations.quadraticsurface import classify_quadratic, surface_data, split_for_alignment
from QuadraticEquations.wicksenum import WicksForm, canonical_form, enumerate_wicks, form_table
from QuadraticEquations.matcher import Match, cancellation_free_matches, dedupe_matches
from QuadraticEquations.normalizer import (
    TrackedAutomorphism,
    standard_form,
    standard_form_automorphism,
    reduce_solution,
    three_squares,
)
from QuadraticEquations.subgroups import (
    FoldedGraph,
    folded_graph,
    contains,
    same_subgroup,
    is_nielsen_reduced_pair,
    verify_prefix_membership,
)
from QuadraticEquations.solver import (
    GenusResult,
    SolutionClassRep,
    genus_plus,
    genus_minus,
    solve_commutators,
    solve_squares,
    verify_class_distinctness,
)
from QuadraticEquations.verification import (
    VerificationReport,
    run_paper_suite,
    verify_bef,
    witness_u1,
    witness_u2,
)
from QuadraticEquations.settings import __version__, __author__, __description__, get_package_info

__all__ = [
    "Symbol",
    "Letter",
    "Word",
    "CyclicWord",
    "Substitution",
    "IDENTITY",
    "constant",
    "variable",
    "parse_word",
    "format_word",
    "cyclic_reduce",
    "commutator",
    "in_commutator_subgroup",
    "in_square_subgroup",
    "QuadraticEquationError",
    "MalformedWordError",
    "DomainError",
    "NoSolutionError",
    "HypothesisViolationError",
    "SearchBudgetExceeded",
    "TableUnavailableError",
    "classify_quadratic",
    "surface_data",
    "split_for_alignment",
    "WicksForm",
    "canonical_form",
    "enumerate_wicks",
    "form_table",
    "Match",
    "cancellation_free_matches",
    "dedupe_matches",
    "TrackedAutomorphism",
    "standard_form",
    "standard_form_automorphism",
    "reduce_solution",
    "three_squares",
    "FoldedGraph",
    "folded_graph",
    "contains",
    "same_subgroup",
    "is_nielsen_reduced_pair",
    "verify_prefix_membership",
    "GenusResult",
    "SolutionClassRep",
    "genus_plus",
    "genus_minus",
    "solve_commutators",
    "solve_squares",
    "verify_class_distinctness",
    "VerificationReport",
    "run_paper_suite",
    "verify_bef",
    "witness_u1",
    "witness_u2",
    "get_package_info",
]
