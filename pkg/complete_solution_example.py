"""
Complete Solution Example
=========================

This script works through the equation [x, y] = [a^2, b^3]:

- compute both genera of the right-hand side
- list one representative per solution class
- check each against the closed-form family of solutions
- reduce a solution with a cancelling junction
"""

import sys
import os

# Add the QuadraticEquations package to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "."))

from QuadraticEquations import (
    genus_minus,
    genus_plus,
    parse_word,
    reduce_solution,
    same_subgroup,
    solve_commutators,
)
from QuadraticEquations.verification import X1, Y1, powers_family
from QuadraticEquations.wordcore import Substitution, VARIABLE, variable


def main():
    print("=" * 80)
    print("SOLUTION CLASSES OF [x, y] = [a^2, b^3]")
    print("=" * 80)

    u, family = powers_family(2, 3)
    print(f"\nRight-hand side: {u}")

    # Step 1: genus
    print(f"  genus+ = {genus_plus(u).value}")
    print(f"  genus- = {genus_minus(u).value}")

    # Step 2: classes
    reps = solve_commutators(u)
    print(f"\nSolution classes: {len(reps)}")
    for i, rep in enumerate(reps, 1):
        print(f"  [{i}] {rep.rep}")
        print(f"      lengths={rep.lengths} fingerprint={rep.fingerprint_id} {rep.distinctness}")

    # Step 3: compare with the closed-form family
    print("\nClosed-form solutions:")
    for s in family:
        images = [s[X1], s[Y1]]
        found = any(same_subgroup(rep.images(), images) for rep in reps)
        print(f"  x = {images[0]}, y = {images[1]}: {'found' if found else 'MISSING'}")

    # Step 4: reduction
    w = parse_word("x^-1 y^-1 x y", kind=VARIABLE)
    psi = Substitution({variable("x"): parse_word("a b"), variable("y"): parse_word("b^-1 c")})
    result = reduce_solution(w, psi, psi.apply(w))
    print("\nReduction of x = a b, y = b^-1 c:")
    print(f"  W' = {result.word}")
    print(f"  psi' = {result.solution}")
    print(f"  moves: {result.trace.kinds()}")


if __name__ == "__main__":
    main()
