"""
Default limits, seeds and locations used across the package.

Everything here is a plain module-level dictionary. Public operations take
keyword overrides, so nothing in this module is mutated at run time.
"""

# Standard library imports
import os
from pathlib import Path

__version__ = "1.0.0"
__author__ = "QuadraticEquations developers"
__description__ = "Solution classes of commutator and square equations in free groups"
__license__ = "GPL-3.0"

# Bumping this invalidates every cached form table.
GENERATOR_VERSION = "wicks-backtrack-1"

TABLE_DIR_ENV = "QUADRATIC_EQUATIONS_TABLE_DIR"
DEFAULT_TABLE_DIR = Path.home() / ".cache" / "quadratic-equations"

DEFAULT_SEARCH_LIMITS = {
    "enumeration_node_budget": 50_000_000,
    "max_cached_genus": 6,
}

DEFAULT_RANDOM_SEEDS = {
    "three_squares_identity": 20231,
    "bef_bounds_random": 20232,
    "reduction_procedure": 20233,
    "genus_inequality": 20234,
    "commutator_never_square": 20235,
    "matcher_brute_force_oracle": 20239,
}

DEFAULT_SUITE_SIZES = {
    "identity_samples": 100,
    "bef_samples": 200,
    "reduction_samples": 200,
    "inequality_samples": 500,
    "inequality_max_length": 12,
    "commutator_samples": 200,
    "brute_force_length": 8,
    "brute_force_length_fast": 6,
    "wicks_oracle_length": 8,
    "match_oracle_length": 8,
    "match_oracle_length_fast": 6,
    "match_oracle_samples": 100,
}


def default_table_dir():
    """
    Directory holding the persisted Wicks form tables.

    Returns
    -------
    pathlib.Path
        ``$QUADRATIC_EQUATIONS_TABLE_DIR`` when set, else ``~/.cache/quadratic-equations``.
    """
    env = os.environ.get(TABLE_DIR_ENV)
    if env:
        return Path(env)
    return DEFAULT_TABLE_DIR


def get_package_info():
    """
    Get information about the package and its defaults.

    Returns
    -------
    dict
        Version, generator version, default limits, seeds and table location.
    """
    return {
        "version": __version__,
        "generator_version": GENERATOR_VERSION,
        "search_limits": dict(DEFAULT_SEARCH_LIMITS),
        "random_seeds": dict(DEFAULT_RANDOM_SEEDS),
        "suite_sizes": dict(DEFAULT_SUITE_SIZES),
        "table_dir": str(default_table_dir()),
        "package_info": {
            "author": __author__,
            "license": __license__,
            "description": __description__,
        },
    }


def validate_search_limits(limits):
    """
    Validate a search-limit dictionary against sane ranges.

    Parameters
    ----------
    limits : dict
        Keys as in ``DEFAULT_SEARCH_LIMITS``; missing keys take the default.

    Returns
    -------
    dict
        ``{"valid": bool, "errors": list, "warnings": list}``
    """
    errors = []
    warnings = []
    merged = {**DEFAULT_SEARCH_LIMITS, **(limits or {})}

    for key in merged:
        if key not in DEFAULT_SEARCH_LIMITS:
            warnings.append(f"Unknown search limit '{key}' is ignored")

    budget = merged["enumeration_node_budget"]
    if not isinstance(budget, int) or budget < 1:
        errors.append(f"enumeration_node_budget should be a positive integer, not {budget!r}")
    elif budget < 10_000:
        warnings.append(f"enumeration_node_budget {budget} is too small for genus-two tables")

    genus = merged["max_cached_genus"]
    if not isinstance(genus, int) or genus < 0:
        errors.append(f"max_cached_genus should be a non-negative integer, not {genus!r}")
    elif genus > 8:
        warnings.append(f"max_cached_genus {genus} makes on-demand enumeration very slow")

    return {"valid": len(errors) == 0, "errors": errors, "warnings": warnings}
