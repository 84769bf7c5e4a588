"""Walk through the solution layer on three small examples.

Run from the repository root:

    python3 demos/solution_tour.py
"""

from ybe.corpus import dihedral_quandle
from ybe.solutions import (affine_prime_solution, classify_lyubashenko,
                           congruence_closure, derived_solution, diagonal_map,
                           is_simple_bruteforce, profile, quotient_solution,
                           retraction, sigma_table)


def show(name, s) -> None:
    p = profile(s)
    flags = [f for f in ("involutive", "derived_form", "twisted_rack",
                         "lyubashenko", "quandle", "indecomposable",
                         "irretractable") if getattr(p, f)]
    part, _ = retraction(s)
    print(f"{name}: {s.n} points, {flags}")
    print(f"  retraction classes: {len(part.classes())}, "
          f"simple: {is_simple_bruteforce(s)}")


def main() -> None:
    d9 = dihedral_quandle(9)
    show("dihedral quandle on 9 points", d9)

    # congruences give proper quotients; gluing 0 and 3 folds Z9 onto Z3
    part = congruence_closure(d9, 0, 3)
    print(f"  congruence generated by (0,3): {part.classes()}")
    q = quotient_solution(d9, part)
    print(f"  quotient equals the dihedral quandle on 3 points: "
          f"{q == dihedral_quandle(3)}")

    aff = affine_prime_solution(5, 1, a=2, b=2, c=1)
    show("affine solution x + 2y + 1 over F_5", aff)
    print(f"  diagonal map: {diagonal_map(aff)}")
    print(f"  sigma rows equal rho rows: "
          f"{(sigma_table(aff) == aff.rho).all()}")
    der = derived_solution(aff)
    print(f"  derived solution is a quandle: {profile(der).quandle}")

    shift = affine_prime_solution(5, 3, c1=1, c2=0)
    show("translation solution (y+1, x) over F_5", shift)
    rep = classify_lyubashenko(shift)
    print(f"  permutation-solution classification: simple={rep.is_simple} "
          f"(prime {rep.prime})")


if __name__ == "__main__":
    main()
