"""Module to aid with data validation of inputs, and the package exceptions"""

import re

_IDENTIFIER = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class QuadraticEquationError(Exception):
    """Base class for every error raised by the package."""


class MalformedWordError(QuadraticEquationError, ValueError):
    """A word, token or letter could not be understood."""


class DomainError(QuadraticEquationError, ValueError):
    """An input lies outside the domain of the requested operation."""


class NoSolutionError(DomainError):
    """The right-hand side is not in the subgroup the equation can reach."""


class HypothesisViolationError(QuadraticEquationError, RuntimeError):
    """A reduction move lowered the genus of the current quadratic word."""

    def __init__(self, message, move_kind=None):
        super().__init__(message)
        self.move_kind = move_kind


class SearchBudgetExceeded(QuadraticEquationError, RuntimeError):
    """A bounded search ran out of nodes. Carries what was found so far."""

    def __init__(self, message, partial=None, nodes=0):
        super().__init__(message)
        self.partial = list(partial or [])
        self.nodes = nodes


class TableUnavailableError(QuadraticEquationError, RuntimeError):
    """A Wicks form table is outside the configured range or budget."""


def assert_identifier(name, label):
    """Assert that a symbol name is a valid identifier."""
    if not isinstance(name, str) or not _IDENTIFIER.match(name):
        raise MalformedWordError(
            f"The value for '{label}' should match [A-Za-z][A-Za-z0-9_]*, not {name!r}."
        )


def assert_sign(sign, label):
    """Assert that a letter exponent is +1 or -1."""
    if sign not in (1, -1) or isinstance(sign, bool):
        raise MalformedWordError(f"The value for '{label}' should be 1 or -1, not {sign!r}.")


def assert_positive_integer(n, name):
    """Assert that an input is an integer >= 1."""
    if type(n) is not int:
        raise DomainError(f"The value for '{name}' should be an integer, not a {type(n)}.")
    if n < 1:
        raise DomainError(f"The value for '{name}' should be >= 1, not {n}")


def assert_non_negative_integer(n, name):
    """Assert that an input is an integer >= 0."""
    if type(n) is not int:
        raise DomainError(f"The value for '{name}' should be an integer, not a {type(n)}.")
    if n < 0:
        raise DomainError(f"The value for '{name}' should be >= 0, not {n}")


def assert_contents(var, content, name):
    """Assert that a variable is within a specific subset of available values"""
    if var not in content:
        raise DomainError(
            f"The variable '{name}', must only have a"
            + f" value that is specified in {content} not '{var}'."
        )


def assert_constant_word(w, name):
    """Assert that a word is spelled with constants only."""
    bad = sorted({s.name for s in w.symbols() if s.is_variable})
    if bad:
        raise DomainError(f"The word '{name}' should contain constants only, found variables {bad}.")


def assert_variable_word(w, name):
    """Assert that a word is spelled with variables only."""
    bad = sorted({s.name for s in w.symbols() if not s.is_variable})
    if bad:
        raise DomainError(f"The word '{name}' should contain variables only, found constants {bad}.")


def assert_nontrivial(w, name):
    """Assert that a word is not the empty word."""
    if len(w) == 0:
        raise DomainError(f"The word '{name}' should be nontrivial.")
