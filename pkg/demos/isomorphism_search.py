"""Compare construction data up to brace isomorphism, two ways.

The data-level criterion decides isomorphism of the braces without building
tables; the table-level searches confirm it on small cases.  Isomorphic
braces can still restrict to non-isomorphic solutions, because the brace
isomorphism is free to move the distinguished class to another coset.

Run from the repository root:

    python3 demos/isomorphism_search.py
"""

from ybe.braces import brace_isomorphic
from ybe.constructions import abelian_v_build, abelian_v_data, iso_criterion
from ybe.solutions import are_isomorphic


def main() -> None:
    # same V and k, different matrices: 2 and 3 generate the same subgroup
    # of F_5*, so re-choosing the cyclic generator identifies the data
    d1 = abelian_v_data(5, 1, 4, [[2]], [[2]], [0])
    d2 = abelian_v_data(5, 1, 4, [[3]], [[3]], [0])
    rep = iso_criterion(d1, d2)
    print(f"A=2 vs A=3 over F_5: isomorphic={rep.isomorphic}")
    print(f"  reason: {rep.reason}")

    b1, b2 = abelian_v_build(d1), abelian_v_build(d2)
    print(f"  brace tables agree: "
          f"{brace_isomorphic(b1.brace, b2.brace) is not None}")
    # the isomorphism sends the class of d1 to a different coset, so the
    # five-point solutions themselves are not isomorphic
    print(f"  restricted solutions isomorphic: "
          f"{are_isomorphic(b1.solution, b2.solution) is not None}")

    # the trivial twist is genuinely different from the negation twist
    d3 = abelian_v_data(3, 1, 2, [[-1]], [[-1]], [0])
    d4 = abelian_v_data(3, 1, 2, [[-1]], [[1]], [0])
    rep2 = iso_criterion(d3, d4)
    print(f"negation vs reflection over F_3: isomorphic={rep2.isomorphic}")
    b3, b4 = abelian_v_build(d3), abelian_v_build(d4)
    print(f"  brace tables agree: "
          f"{brace_isomorphic(b3.brace, b4.brace) is not None}")


if __name__ == "__main__":
    main()
