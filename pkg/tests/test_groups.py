import numpy as np
import pytest

from ybe.errors import CapExceeded, Undecided, ValidationError
from ybe.groups import (GenGroup, Partition, TableGroup, alternating_group,
                        closure, compose, cycle_type, cyclic_group,
                        direct_power, group_isomorphism, identity_perm,
                        inverse, is_perm, is_primitive, orbits, perm_from_cycles,
                        perm_order, perm_power, quotient_group,
                        semidirect_product, symmetric_group)


def test_perm_basics():
    a = (1, 2, 0)
    b = (1, 0, 2)
    assert compose(a, b) == (2, 1, 0)
    assert compose(b, a) == (0, 2, 1)
    assert inverse(a) == (2, 0, 1)
    assert perm_power(a, 3) == identity_perm(3)
    assert perm_order(a) == 3
    assert perm_order(identity_perm(4)) == 1
    assert is_perm([2, 0, 1], 3)
    assert not is_perm([0, 0, 1], 3)


def test_cycle_machinery():
    p = perm_from_cycles(5, (0, 1, 2), (3, 4))
    assert p == (1, 2, 0, 4, 3)
    assert cycle_type(p) == (2, 3)
    assert cycle_type(identity_perm(3)) == (1, 1, 1)
    with pytest.raises(ValueError):
        perm_from_cycles(4, (0, 1), (1, 2))


def test_partition():
    part = Partition.from_labels(["a", "b", "a", "b"])
    assert part.rep == (0, 1, 0, 1)
    assert part.num_classes == 2
    assert not part.is_single_class()
    assert part.classes() == [[0, 2], [1, 3]]


def test_closure_and_orbits():
    grp = closure([perm_from_cycles(3, (0, 1)), perm_from_cycles(3, (0, 1, 2))], 3)
    assert grp.order == 6
    part = orbits([perm_from_cycles(5, (0, 1, 2))], 5)
    assert part.classes() == [[0, 1, 2], [3], [4]]


def test_primitivity():
    s4 = closure([perm_from_cycles(4, (0, 1)), perm_from_cycles(4, (0, 1, 2, 3))], 4)
    assert is_primitive(s4)
    # the dihedral action on the square has the diagonal block system
    d4 = closure([perm_from_cycles(4, (0, 1, 2, 3)), perm_from_cycles(4, (1, 3))], 4)
    assert not is_primitive(d4)
    intransitive = closure([perm_from_cycles(4, (0, 1))], 4)
    assert not is_primitive(intransitive)


def test_table_group_validation():
    assert cyclic_group(1).n == 1
    z3 = cyclic_group(3)
    assert z3.inv.tolist() == [0, 2, 1]
    assert z3.is_abelian()
    assert z3.is_cyclic()
    bad = np.array([[0, 1], [0, 1]], dtype=np.int32)
    with pytest.raises(ValidationError):
        TableGroup(bad)
    # broken associativity: a Latin square that is not a group table
    latin = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0]], dtype=np.int32)
    with pytest.raises(ValidationError):
        TableGroup(latin)


def test_table_group_structure():
    s3, _ = symmetric_group(3)
    assert s3.n == 6
    assert sorted(s3.element_orders().tolist()) == [1, 2, 2, 2, 3, 3]
    assert s3.center() == (0,)
    assert not s3.is_abelian()
    assert len(s3.conjugacy_class(s3.element_orders().tolist().index(2))) == 3
    assert sorted(s3.commutator_subgroup()) == \
        sorted(i for i in range(6) if s3.element_orders()[i] in (1, 3))


def test_subgroup_closure():
    s4, _ = symmetric_group(4)
    orders = s4.element_orders()
    a = int(np.flatnonzero(orders == 3)[0])
    sub = s4.subgroup_closure({a})
    assert len(sub) == 3


def test_semidirect_product():
    d5 = semidirect_product(cyclic_group(5), 2, (-np.arange(5)) % 5)
    assert d5.n == 10
    assert sorted(d5.element_orders().tolist()).count(2) == 5
    assert d5.center() == (0,)
    with pytest.raises(ValidationError):
        # inversion has order 2, not 3
        semidirect_product(cyclic_group(5), 3, (-np.arange(5)) % 5)


def test_direct_power():
    z2z2 = direct_power(cyclic_group(2), 2)
    assert z2z2.n == 4
    assert z2z2.element_orders().tolist() == [1, 2, 2, 2]
    # first factor is the most significant digit
    assert z2z2.table[2, 1] == 3


def test_quotient_group():
    z6 = cyclic_group(6)
    q, proj = quotient_group(z6, (0, 3))
    assert q.n == 3
    assert proj[3] == proj[0]
    assert q.is_cyclic()
    s3, _ = symmetric_group(3)
    a3 = tuple(int(i) for i in np.flatnonzero(s3.element_orders() != 2))
    q2, _ = quotient_group(s3, a3)
    assert q2.n == 2


def test_group_isomorphism():
    z6 = cyclic_group(6)
    s3, _ = symmetric_group(3)
    assert group_isomorphism(z6, s3) is None
    d3 = semidirect_product(cyclic_group(3), 2, (-np.arange(3)) % 3)
    phi = group_isomorphism(d3, s3)
    assert phi is not None
    for a in range(6):
        for b in range(6):
            assert phi[d3.table[a, b]] == s3.table[phi[a], phi[b]]
    z4 = cyclic_group(4)
    k4 = direct_power(cyclic_group(2), 2)
    assert group_isomorphism(z4, k4) is None


def test_named_groups():
    a4, _ = alternating_group(4)
    assert a4.n == 12
    assert a4.center() == (0,)
    a5, _ = alternating_group(5)
    assert a5.n == 60
    assert sorted(set(a5.element_orders().tolist())) == [1, 2, 3, 5]
    with pytest.raises(CapExceeded):
        symmetric_group(7)


def test_gen_group_to_table():
    grp = closure([perm_from_cycles(4, (0, 1, 2, 3))], 4)
    table, elements = grp.to_table()
    assert table.n == 4
    assert table.is_cyclic()
    assert elements[0] == (0, 1, 2, 3)
