import numpy as np
import pytest

from ybe.braces import (Ideal, almost_trivial_brace, associated_solution,
                        brace_invariants, brace_isomorphic, ideal_closure,
                        permutation_brace, quotient_brace, restricted_solution,
                        simplicity_by_generators, simplicity_by_min_ideal,
                        smallest_nonzero_ideal, trivial_brace, validate_brace,
                        validate_ideal)
from ybe.errors import ValidationError
from ybe.groups import cyclic_group, cycle_type, direct_power, symmetric_group
from ybe.solutions import are_isomorphic, profile, sigma_table, validate_solution


def dihedral(n: int):
    lam = np.tile(np.arange(n, dtype=np.int32), (n, 1))
    rho = np.array([[(2 * y - x) % n for x in range(n)] for y in range(n)],
                   dtype=np.int32)
    return validate_solution(lam, rho)


def z4_brace():
    # a o b = a + b + 2ab on the integers mod 4
    add = np.array([[(a + b) % 4 for b in range(4)] for a in range(4)],
                   dtype=np.int32)
    mul = np.array([[(a + b + 2 * a * b) % 4 for b in range(4)] for a in range(4)],
                   dtype=np.int32)
    return validate_brace(add, mul)


def test_validate_brace():
    b = z4_brace()
    assert b.n == 4
    assert not b.is_trivial()
    assert b.lam[1].tolist() == [0, 3, 2, 1]
    assert b.star[1].tolist() == [0, 2, 0, 2]
    assert bool((b.sig == np.arange(4)).all())
    assert b.neg.tolist() == [0, 3, 2, 1]
    assert trivial_brace(cyclic_group(3)).is_trivial()


def test_validate_brace_rejects():
    add = np.array([[(a + b) % 4 for b in range(4)] for a in range(4)],
                   dtype=np.int32)
    # relabeling moves the multiplicative identity to 1
    g = np.array([1, 0, 2, 3], dtype=np.int32)
    shifted = g[add[np.ix_(g, g)]]
    with pytest.raises(ValidationError):
        validate_brace(add, shifted)
    with pytest.raises(ValidationError):
        validate_brace(add, np.array([[(a + 3 * b) % 4 for b in range(4)]
                                      for a in range(4)], dtype=np.int32))
    with pytest.raises(ValidationError):
        validate_brace(add, cyclic_group(3).table)


def test_ideals():
    b = z4_brace()
    ideal = validate_ideal(b, [0, 2])
    assert ideal.size == 2
    assert 2 in ideal and 1 not in ideal
    with pytest.raises(ValidationError):
        validate_ideal(b, [0, 1])
    assert ideal_closure(b, [2]).elements == (0, 2)
    assert ideal_closure(b, [1]).elements == (0, 1, 2, 3)
    assert smallest_nonzero_ideal(b).elements == (0, 2)
    # a subgroup that is not normal is not an ideal
    s3, elems = symmetric_group(3)
    t = next(i for i, e in enumerate(elems) if cycle_type(e) == (1, 2))
    triv = trivial_brace(s3)
    with pytest.raises(ValidationError):
        validate_ideal(triv, [0, t])
    assert smallest_nonzero_ideal(triv).size == 3
    assert smallest_nonzero_ideal(trivial_brace(cyclic_group(3))).size == 3
    # the Klein group has three incomparable minimal ideals
    assert smallest_nonzero_ideal(trivial_brace(direct_power(cyclic_group(2), 2))) is None


def test_brace_invariants():
    inv = brace_invariants(z4_brace())
    assert inv.socle.elements == (0, 2)
    assert inv.b2.elements == (0, 2)
    assert inv.b3.is_zero()
    assert inv.add_center == (0, 1, 2, 3)
    assert not inv.is_trivial
    assert inv.is_cyclic_type
    s3, _ = symmetric_group(3)
    tinv = brace_invariants(trivial_brace(s3))
    assert tinv.socle.elements == (0,)
    assert tinv.b2.is_zero()
    assert tinv.is_trivial
    assert not tinv.is_cyclic_type


def test_quotient_brace():
    b = z4_brace()
    q, proj = quotient_brace(b, validate_ideal(b, [0, 2]))
    assert q.n == 2
    assert q.is_trivial()
    assert proj.tolist() == [0, 1, 0, 1]
    with pytest.raises(ValidationError):
        quotient_brace(b, Ideal((0, 1)))


def test_associated_solution():
    s = associated_solution(z4_brace())
    assert s.n == 4
    p = profile(s)
    assert p.involutive
    assert not p.derived_form
    t = associated_solution(trivial_brace(cyclic_group(3)))
    assert profile(t).derived_form
    assert t.rho.tolist() == [[0, 1, 2]] * 3


def test_restricted_solution():
    s3, elems = symmetric_group(3)
    transpositions = [i for i, e in enumerate(elems) if cycle_type(e) == (1, 2)]
    sol, xs = restricted_solution(trivial_brace(s3), transpositions)
    assert sol.n == 3
    assert xs == tuple(sorted(transpositions))
    assert are_isomorphic(sol, dihedral(3)) is not None
    with pytest.raises(ValidationError):
        restricted_solution(trivial_brace(s3), [0, transpositions[0]])
    with pytest.raises(ValidationError):
        restricted_solution(trivial_brace(s3), [])


def test_permutation_brace():
    s = dihedral(3)
    pb = permutation_brace(s)
    assert pb.brace.n == 6
    assert pb.brace.is_trivial()
    s3, _ = symmetric_group(3)
    assert brace_isomorphic(pb.brace, trivial_brace(s3)) is not None
    sig = sigma_table(s)
    for x in range(3):
        e = int(pb.x_to_element[x])
        assert pb.lambda_perm(e) == tuple(int(v) for v in s.lam[x])
        assert pb.sigma_perm(e) == tuple(int(v) for v in sig[x])


def test_simplicity_by_min_ideal():
    rep = simplicity_by_min_ideal(dihedral(3))
    assert rep.applies
    assert rep.irretractable
    assert rep.d_is_min_ideal
    assert rep.dd_transitive
    assert rep.verdict is True
    assert rep.d_ideal.size == 3
    rep = simplicity_by_min_ideal(dihedral(4))
    assert rep.applies
    assert rep.verdict is False
    assert not rep.irretractable
    shift = validate_solution(np.tile(np.array([1, 2, 0], dtype=np.int32), (3, 1)),
                              np.tile(np.arange(3, dtype=np.int32), (3, 1)))
    rep = simplicity_by_min_ideal(shift)
    assert not rep.applies
    assert rep.verdict is None


def test_simplicity_by_generators():
    pb = permutation_brace(dihedral(3))
    xs = sorted(set(int(v) for v in pb.x_to_element))
    rep = simplicity_by_generators(pb.brace, xs)
    assert rep.generates
    assert rep.v_is_min
    assert rep.v_transitive
    assert rep.verdict is True
    assert rep.v_ideal.size == 3
    assert rep.x_set == tuple(xs)
    assert are_isomorphic(rep.solution, dihedral(3)) is not None
    with pytest.raises(ValidationError):
        simplicity_by_generators(pb.brace, [0])


def test_brace_isomorphic():
    c4 = cyclic_group(4)
    assert brace_isomorphic(trivial_brace(c4), trivial_brace(c4)) is not None
    assert brace_isomorphic(trivial_brace(c4), z4_brace()) is None
    s3, _ = symmetric_group(3)
    assert brace_isomorphic(trivial_brace(s3), almost_trivial_brace(s3)) is None
    assert brace_isomorphic(trivial_brace(c4), trivial_brace(cyclic_group(3))) is None
