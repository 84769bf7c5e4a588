"""Build skew braces from tables and inspect their ideal structure.

Run from the repository root:

    python3 demos/brace_tour.py
"""

import numpy as np

from ybe.braces import (associated_solution, brace_invariants, ideal_closure,
                        permutation_brace, quotient_brace,
                        simplicity_by_generators, smallest_nonzero_ideal,
                        trivial_brace, validate_brace)
from ybe.corpus import dihedral_quandle
from ybe.groups import symmetric_group
from ybe.solutions import is_simple_bruteforce


def main() -> None:
    # the nontrivial brace on Z4: a o b = a + b + 2ab
    add = np.array([[(a + b) % 4 for b in range(4)] for a in range(4)])
    mul = np.array([[(a + b + 2 * a * b) % 4 for b in range(4)]
                    for a in range(4)])
    b = validate_brace(add, mul)
    inv = brace_invariants(b)
    print(f"Z4 brace: socle {inv.socle.elements}, B2 {inv.b2.elements}, "
          f"B3 {inv.b3.elements}")
    print(f"  ideal closure of {{2}}: {ideal_closure(b, [2]).elements}, "
          f"of {{1}}: {ideal_closure(b, [1]).elements}")
    q, proj = quotient_brace(b, smallest_nonzero_ideal(b))
    print(f"  quotient by the minimal ideal: order {q.n}, "
          f"trivial {q.is_trivial()}, projection {proj.tolist()}")
    s = associated_solution(b)
    print(f"  associated solution involutive r(1,2) = {s.r(1, 2)}, "
          f"simple: {is_simple_bruteforce(s)}")

    # the permutation brace of the three-point dihedral quandle is the
    # trivial brace on Sym(3)
    pb = permutation_brace(dihedral_quandle(3))
    print(f"dihedral(3) permutation brace: order {pb.brace.n}, "
          f"trivial {pb.brace.is_trivial()}")
    print(f"  x maps to elements {pb.x_to_element.tolist()}")
    rep = simplicity_by_generators(
        pb.brace, sorted(set(int(v) for v in pb.x_to_element)))
    print(f"  generating-subset criterion: generates={rep.generates}, "
          f"V minimal={rep.v_is_min}, transitive={rep.v_transitive}, "
          f"verdict={rep.verdict}")

    s3, _ = symmetric_group(3)
    t = trivial_brace(s3)
    print(f"trivial brace on Sym(3): socle "
          f"{brace_invariants(t).socle.elements} (the additive center)")


if __name__ == "__main__":
    main()
