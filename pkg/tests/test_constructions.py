import numpy as np
import pytest

from ybe.braces import brace_invariants, brace_isomorphic
from ybe.constructions import (EXAMPLES, StructuredBrace, abelian_v_build,
                               abelian_v_data, build_example, byott_build,
                               check_abelian_v, conjugation_quandle,
                               dihedral_reflection_build, iso_criterion,
                               lyubashenko_build, nonabelian_v_build,
                               nonabelian_v_data, permutation_solution,
                               power_rotation_build, primitive_field_build,
                               signed_rotation_build, symmetric_type_build,
                               twisted_rotation_build, conj_automorphism)
from ybe.errors import ConstructionRejected, Undecided, ValidationError
from ybe.groups import alternating_group, symmetric_group
from ybe.solutions import (are_isomorphic, is_simple_bruteforce, profile,
                           validate_solution)
from ybe.braces import simplicity_by_min_ideal


def dihedral(n: int):
    lam = np.tile(np.arange(n, dtype=np.int32), (n, 1))
    rho = np.array([[(2 * y - x) % n for x in range(n)] for y in range(n)],
                   dtype=np.int32)
    return validate_solution(lam, rho)


def negation_data(p: int):
    return abelian_v_data(p, 1, 2, [[-1]], [[-1]], [0])


def test_abelian_v_checks():
    assert all(c.ok for c in check_abelian_v(negation_data(3)))
    # k must match the case split: A2 = 1 and v1 = 0 forces k = o(A)
    bad = abelian_v_data(3, 1, 4, [[2]], [[1]], [0])
    failed = [c for c in check_abelian_v(bad) if not c.ok]
    assert [c.name for c in failed] == ["k = o(A) (A2=1, v1=0)"]
    with pytest.raises(ConstructionRejected):
        abelian_v_build(bad)
    singular = abelian_v_data(3, 1, 2, [[0]], [[1]], [0])
    assert "A invertible" in [c.name for c in check_abelian_v(singular) if not c.ok]
    ident = abelian_v_data(3, 1, 2, [[1]], [[1]], [0])
    assert "A != 1" in [c.name for c in check_abelian_v(ident) if not c.ok]
    with pytest.raises(ValidationError):
        abelian_v_data(3, 2, 2, [[1]], [[1]], [0])


def test_abelian_v_build_negation():
    build = abelian_v_build(negation_data(3))
    assert build.brace.n == 6
    assert build.x_set == (1, 3, 5)
    assert build.v_ideal == (0, 2, 4)
    assert build.solution == build.formula_solution
    assert build.solution.lam.tolist() == [[0, 2, 1]] * 3
    assert build.solution.rho.tolist() == [[(x + 2 * y) % 3 for x in range(3)]
                                           for y in range(3)]
    assert is_simple_bruteforce(build.solution)
    assert simplicity_by_min_ideal(build.solution).verdict is True
    inv = brace_invariants(build.brace)
    assert inv.socle.is_zero()
    assert inv.b2.elements == (0, 2, 4)
    assert inv.b3.is_zero()


def test_dihedral_reflection_build():
    build = dihedral_reflection_build(3)
    assert build.solution == dihedral(3)
    assert build.x_set == (1, 3, 5)
    assert not build.brace.add.is_abelian()


def test_signed_rotation_gate():
    build = signed_rotation_build(3, 2)
    assert build.data.k == 4
    assert build.solution.n == 9
    assert is_simple_bruteforce(build.solution)
    with pytest.raises(ConstructionRejected) as exc:
        signed_rotation_build(5, 2)
    assert "simple module" in str(exc.value)


def test_primitive_field_build():
    build = primitive_field_build(2, 2)
    assert build.data.k == 3
    assert build.data.a.tolist() == [[0, 1], [1, 1]]
    assert build.brace.n == 12
    assert len(build.x_set) == 4
    assert is_simple_bruteforce(build.solution)


def test_byott_build():
    build = byott_build(2, 3)
    assert build.brace.n == 12
    assert len(build.x_set) == 8
    assert build.m_matrix.tolist() == [[0, 1], [1, 1]]
    assert all(c.ok for c in build.checks)
    assert build.brace.add.center() == (0,)
    with pytest.raises(ConstructionRejected) as exc:
        byott_build(2, 5)
    assert "q divides" in str(exc.value)
    with pytest.raises(ConstructionRejected):
        byott_build(3, 3)


def test_symmetric_type_build():
    build = symmetric_type_build(5)
    assert build.solution.n == 10
    assert build.k == 2
    assert not build.structured
    assert build.brace.n == 120
    assert all(c.ok for c in build.checks)


def test_nonabelian_rejections():
    v, elements = alternating_group(5)
    conj = conj_automorphism(elements, (1, 0, 2, 3, 4))
    bare = nonabelian_v_data(v, 2, conj, conj, 0)
    with pytest.raises(ConstructionRejected) as exc:
        nonabelian_v_build(bare)
    assert "characteristically simple" in str(exc.value)
    declared = nonabelian_v_data(v, 2, conj, conj, 0, assume_char_simple=True)
    assert nonabelian_v_build(declared).solution.n == 10
    with pytest.raises(ConstructionRejected) as exc:
        twisted_rotation_build(4, 1)
    assert "n > 1" in str(exc.value)


def test_power_rotation_build():
    build = power_rotation_build(2)
    assert build.structured
    assert isinstance(build.brace, StructuredBrace)
    assert build.k == 2
    assert build.solution.n == 60
    assert build.brace.n == 7200
    assert all(c.ok for c in build.checks)


def test_iso_criterion_same_and_different():
    d1 = negation_data(3)
    assert iso_criterion(d1, d1).isomorphic
    # the dihedral data differ only in A2, and the braces are not isomorphic
    d2 = abelian_v_data(3, 1, 2, [[-1]], [[1]], [0])
    assert not iso_criterion(d1, d2).isomorphic
    assert brace_isomorphic(abelian_v_build(d1).brace,
                            abelian_v_build(d2).brace) is None
    assert not iso_criterion(d1, negation_data(5)).isomorphic


def test_iso_criterion_presentation_change():
    # A = 2 and A = 3 = 2^3 give the same brace through the cube generator
    d1 = abelian_v_data(5, 1, 4, [[2]], [[2]], [0])
    d2 = abelian_v_data(5, 1, 4, [[3]], [[3]], [0])
    rep = iso_criterion(d1, d2)
    assert rep.isomorphic
    assert brace_isomorphic(abelian_v_build(d1).brace,
                            abelian_v_build(d2).brace) is not None
    v, elements = alternating_group(5)
    conj = conj_automorphism(elements, (1, 0, 2, 3, 4))
    dn = nonabelian_v_data(v, 2, conj, conj, 0, assume_char_simple=True)
    assert iso_criterion(dn, dn).isomorphic
    with pytest.raises(Undecided):
        iso_criterion(d1, dn)


def test_permutation_and_lyubashenko():
    s = lyubashenko_build(4, 1, 0)
    assert s.n == 4
    assert profile(s).lyubashenko
    with pytest.raises(ValidationError):
        permutation_solution((1, 0, 2), (0, 2, 1))
    with pytest.raises(ValidationError):
        lyubashenko_build(0, 1, 1)


def test_conjugation_quandle():
    s3, elems = symmetric_group(3)
    sol, xs = conjugation_quandle(s3, 1)
    assert sol.n == len(xs)
    with pytest.raises(ValidationError):
        conjugation_quandle(s3, 0)


def test_build_example():
    assert build_example("lyubashenko", n=4, a=1, b=0).n == 4
    assert build_example("conj_quandle").n == 3
    assert build_example("dihedral", p=3).solution == dihedral(3)
    assert sorted(EXAMPLES) == ["an_pr", "conj_quandle", "dihedral", "ex1",
                                "ex_ab", "field_example", "lyubashenko",
                                "sym_n"]
    with pytest.raises(ValidationError):
        build_example("nonsense")
