"""Construct the families of simple solutions and check both oracles.

Run from the repository root:

    python3 demos/simple_families.py
"""

from ybe.braces import simplicity_by_min_ideal
from ybe.constructions import (abelian_v_build, abelian_v_data, byott_build,
                               lyubashenko_build, signed_rotation_build,
                               symmetric_type_build)
from ybe.errors import ConstructionRejected
from ybe.solutions import classify_lyubashenko, is_simple_bruteforce


def verdicts(s) -> str:
    rep = simplicity_by_min_ideal(s)
    return f"brute={is_simple_bruteforce(s)}, criterion={rep.verdict}"


def main() -> None:
    # smallest member of the abelian family: V = F_3, k = 2, negation twice
    d = abelian_v_data(3, 1, 2, [[-1]], [[-1]], [0])
    b = abelian_v_build(d)
    print(f"abelian build p=3, k=2: brace order {b.brace.n}, "
          f"|X| = {len(b.x_set)}")
    for check in b.checks:
        print(f"  {check}")
    print(f"  {verdicts(b.solution)}")

    # the signed rotation gate: accepted iff the plane has no invariant line
    for p in (3, 5):
        try:
            sr = signed_rotation_build(p, 2)
            print(f"signed rotation p={p}: accepted, brace order {sr.brace.n}")
        except ConstructionRejected as e:
            print(f"signed rotation p={p}: rejected ({e})")

    bb = byott_build(2, 3)
    print(f"byott (2,3): brace order {bb.brace.n}, |X| = {len(bb.x_set)}, "
          f"{verdicts(bb.solution)}")

    sym = symmetric_type_build(5)
    print(f"symmetric type n=5: brace order {sym.brace.n}, "
          f"|X| = {len(sym.x_set)}, {verdicts(sym.solution)}")

    # permutation solutions: simple iff a single cycle of prime length
    for n, a in ((5, 1), (4, 1)):
        s = lyubashenko_build(n, a, 0)
        rep = classify_lyubashenko(s)
        print(f"cyclic shift on {n} points: simple={rep.is_simple}, "
              f"brute agrees: {rep.is_simple == is_simple_bruteforce(s)}")


if __name__ == "__main__":
    main()
