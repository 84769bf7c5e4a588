"""A deterministic corpus of small validated solutions.

Used by the test suite to cross-check the two simplicity oracles and by
the command line to export reference files.  Every entry has at most 12
points and carries a short provenance note; the mix covers permutation
solutions, quandles, brace restrictions, derived solutions, and quotients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constructions import (abelian_v_build, abelian_v_data, byott_build,
                            conjugation_quandle, dihedral_reflection_build,
                            lyubashenko_build, permutation_solution,
                            primitive_field_build, signed_rotation_build,
                            symmetric_type_build, _named_group)
from .solutions import (FinSolution, affine_prime_solution, congruence_closure,
                        derived_solution, quotient_solution, validate_solution)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    solution: FinSolution
    kind: str
    note: str = ""


def dihedral_quandle(n: int) -> FinSolution:
    """r(x, y) = (y, 2y - x) on Z_n."""
    xs = np.arange(n, dtype=np.int32)
    lam = np.tile(xs, (n, 1))
    rho = ((2 * xs[:, None] - xs[None, :]) % n).astype(np.int32)
    return validate_solution(lam, rho)


def _class_rep(g, order: int, size: int) -> int:
    orders = g.element_orders()
    for i in range(1, g.n):
        if orders[i] == order and len(g.conjugacy_class(i)) == size:
            return i
    raise LookupError(f"no class of order-{order} elements with size {size}")


@lru_cache(maxsize=1)
def standard_corpus() -> tuple[CorpusEntry, ...]:
    entries: list[CorpusEntry] = []

    def add(name: str, solution: FinSolution, kind: str, note: str = "") -> None:
        entries.append(CorpusEntry(name, solution, kind, note))

    # permutation solutions (constant lambda and rho rows)
    add("flip-2", lyubashenko_build(2, 0, 0), "permutation", "r(x,y) = (y,x)")
    add("flip-3", lyubashenko_build(3, 0, 0), "permutation")
    add("cycle-2-1-1", lyubashenko_build(2, 1, 1), "permutation")
    add("cycle-3-1-0", lyubashenko_build(3, 1, 0), "permutation")
    add("cycle-4-1-1", lyubashenko_build(4, 1, 1), "permutation",
        "not simple: 4 is not prime")
    add("cycle-5-1-2", lyubashenko_build(5, 1, 2), "permutation")
    add("cycle-6-1-1", lyubashenko_build(6, 1, 1), "permutation")
    add("cycle-7-2-3", lyubashenko_build(7, 2, 3), "permutation")
    add("perm-5-disjoint",
        permutation_solution((1, 2, 0, 3, 4), (2, 0, 1, 3, 4)),
        "permutation", "inverse 3-cycles fixing two points; decomposable")

    # quandles from conjugation classes
    s3 = _named_group("s3")
    s4 = _named_group("s4")
    a4 = _named_group("a4")
    a5 = _named_group("a5")
    add("conj-s3-transpositions",
        conjugation_quandle(s3, _class_rep(s3, 2, 3))[0], "quandle")
    add("conj-s3-3cycles",
        conjugation_quandle(s3, _class_rep(s3, 3, 2))[0], "quandle")
    add("conj-s4-transpositions",
        conjugation_quandle(s4, _class_rep(s4, 2, 6))[0], "quandle")
    add("conj-s4-double-transpositions",
        conjugation_quandle(s4, _class_rep(s4, 2, 3))[0], "quandle")
    add("conj-s4-4cycles",
        conjugation_quandle(s4, _class_rep(s4, 4, 6))[0], "quandle")
    add("conj-a4-3cycles",
        conjugation_quandle(a4, _class_rep(a4, 3, 4))[0], "quandle")
    add("conj-a5-5cycles",
        conjugation_quandle(a5, _class_rep(a5, 5, 12))[0], "quandle")

    # dihedral quandles: via the brace builder for odd primes, directly
    # for composite sizes
    for p in (3, 5, 7, 11):
        add(f"dihedral-{p}", dihedral_reflection_build(p).solution, "quandle",
            "reflections of the dihedral group")
    add("dihedral-4", dihedral_quandle(4), "quandle", "not simple: 2 | 4")
    add("dihedral-9", dihedral_quandle(9), "quandle", "not simple: 3 | 9")

    # brace restrictions from the abelian family
    negation3 = abelian_v_build(
        abelian_v_data(3, 1, 2, [[-1]], [[-1]], [0])).solution
    add("negation-3", negation3, "brace-restriction",
        "A = A2 = -1 on F_3, k = 2")
    add("negation-5", abelian_v_build(
        abelian_v_data(5, 1, 2, [[-1]], [[-1]], [0])).solution,
        "brace-restriction")
    add("mult2-5", abelian_v_build(
        abelian_v_data(5, 1, 4, [[2]], [[2]], [0])).solution,
        "brace-restriction", "A = A2 = 2 of order 4 on F_5")
    add("mult2-7", abelian_v_build(
        abelian_v_data(7, 1, 3, [[2]], [[2]], [0])).solution,
        "brace-restriction", "A = A2 = 2 of order 3 on F_7")
    add("shift-case-3", abelian_v_build(
        abelian_v_data(3, 1, 6, [[-1]], [[1]], [1])).solution,
        "brace-restriction", "A2 = 1 with u0 - A(u0) != 0, k = o(A) * p")
    add("field-4", primitive_field_build(2, 2).solution, "brace-restriction",
        "multiplicative group of F_4 acting on its additive group")
    add("field-9", primitive_field_build(3, 2).solution, "brace-restriction")
    add("rotation-9", signed_rotation_build(3, 2).solution,
        "brace-restriction", "signed rotation on F_3^2, k = 4")

    # larger structured restrictions that still fit 12 points
    add("byott-8", byott_build(2, 3).solution, "brace-restriction",
        "the order-12 simple brace")
    add("transpositions-10", symmetric_type_build(5).solution,
        "brace-restriction", "transpositions inside Sym(5)")

    # derived solutions and congruence quotients
    add("negation-3-derived", derived_solution(negation3), "derived",
        "first component flattened to the identity")
    big = dihedral_quandle(9)
    add("dihedral-9-quotient",
        quotient_solution(big, congruence_closure(big, 0, 3)), "quotient",
        "collapses dihedral-9 onto dihedral-3")

    # affine solutions over small primes
    add("affine1-5", affine_prime_solution(5, 1, a=2, b=2, c=1), "affine")
    add("affine2-7", affine_prime_solution(7, 2, a=3, b=2, c=2), "affine")
    add("affine3-3", affine_prime_solution(3, 3, c1=1, c2=2), "affine",
        "coincides with a translation solution")
    add("affine1-7", affine_prime_solution(7, 1, a=2, b=2, c=0), "affine")

    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise RuntimeError("duplicate corpus entry names")
    if any(e.solution.n > 12 for e in entries):
        raise RuntimeError("corpus entry exceeds 12 points")
    if len(entries) < 30:
        raise RuntimeError(f"corpus has only {len(entries)} entries")
    return tuple(entries)
