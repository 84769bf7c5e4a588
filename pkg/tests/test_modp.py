import numpy as np
import pytest

from ybe import modp
from ybe.errors import ValidationError


def test_is_prime():
    assert [n for n in range(2, 30) if modp.is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not modp.is_prime(1)
    assert not modp.is_prime(0)


def test_rref_and_rank():
    m = modp.mat(5, [[1, 2], [2, 4]])
    assert modp.rank(5, m) == 1
    r, pivots = modp.rref(5, m)
    assert pivots == [0]
    assert r[0].tolist() == [1, 2]
    assert modp.rank(5, modp.identity(3)) == 3
    assert modp.rank(2, modp.mat(2, [[0, 0], [0, 0]])) == 0


def test_mat_inv():
    m = modp.mat(3, [[1, 1], [0, 1]])
    inv = modp.mat_inv(3, m)
    assert (m @ inv % 3 == modp.identity(2)).all()
    with pytest.raises(ValidationError):
        modp.mat_inv(5, modp.mat(5, [[1, 2], [2, 4]]))


def test_mat_order():
    assert modp.mat_order(3, modp.mat(3, [[-1]])) == 2
    assert modp.mat_order(5, modp.mat(5, [[2]])) == 4
    assert modp.mat_order(7, modp.mat(7, [[2]])) == 3
    # rotation by 90 degrees
    assert modp.mat_order(3, modp.mat(3, [[0, -1], [1, 0]])) == 4
    assert modp.mat_order(2, modp.mat(2, [[0, 1], [1, 1]])) == 3


def test_mat_pow():
    m = modp.mat(2, [[0, 1], [1, 1]])
    assert (modp.mat_pow(2, m, 3) == modp.identity(2)).all()
    assert (modp.mat_pow(2, m, 0) == modp.identity(2)).all()


def test_nullspace_and_solve():
    m = modp.mat(5, [[1, 2], [2, 4]])
    basis = modp.nullspace_basis(5, m)
    assert basis.shape == (1, 2)
    assert (m @ basis[0] % 5 == 0).all()
    x = modp.solve(5, modp.mat(5, [[1, 1], [0, 1]]), np.array([2, 3]))
    assert (modp.mat(5, [[1, 1], [0, 1]]) @ x % 5 == np.array([2, 3])).all()


def test_vector_indexing_round_trip():
    vecs = modp.all_vectors(3, 2)
    assert vecs.shape == (9, 2)
    for i in range(9):
        assert modp.vec_to_index(3, vecs[i]) == i
        assert (modp.index_to_vec(3, 2, i) == vecs[i]).all()
    # first coordinate is the least significant digit
    assert vecs[1].tolist() == [1, 0]


def test_invariant_subspace_witness():
    # single eigenline of a diagonal matrix
    w = modp.invariant_subspace_witness(5, [modp.mat(5, [[2, 0], [0, 3]])])
    assert w is not None
    row = w[0]
    m = modp.mat(5, [[2, 0], [0, 3]])
    image = m @ row % 5
    assert modp.rank(5, np.vstack([w, image])) == w.shape[0]
    # an irreducible rotation has none
    assert modp.invariant_subspace_witness(3, [modp.mat(3, [[0, 2], [1, 0]])]) is None
    # reducible alone, irreducible as a pair: t^2 - 2 has no root mod 5
    a = modp.mat(5, [[4, 0], [0, 4]])
    b = modp.mat(5, [[0, 2], [1, 0]])
    assert modp.invariant_subspace_witness(5, [a]) is not None
    assert modp.invariant_subspace_witness(5, [a, b]) is None


def test_span_is_field():
    rot = modp.mat(3, [[0, 2], [1, 0]])  # t^2 + 1 over F_3
    assert modp.span_is_field(3, rot)
    assert modp.span_is_field(2, modp.mat(2, [[0, 1], [1, 1]]))
    # the span of a split diagonal matrix has zero divisors
    assert not modp.span_is_field(5, modp.mat(5, [[2, 0], [0, 1]]))


def test_irreducibility():
    # t^2 + 1: irreducible mod 3, splits mod 5
    assert modp.is_irreducible(3, [1, 0, 1])
    assert not modp.is_irreducible(5, [1, 0, 1])
    assert modp.is_irreducible(2, [1, 1, 1])
    assert not modp.is_irreducible(2, [1, 0, 1])  # (t+1)^2
    polys = list(modp.monic_irreducibles(2, 2))
    assert polys == [[1, 1, 1]]


def test_first_irreducible_and_companion():
    f = modp.first_irreducible(2, 3)
    assert len(f) == 4 and f[-1] == 1
    assert modp.is_irreducible(2, f)
    c = modp.companion_matrix(2, f)
    assert c.shape == (3, 3)
    # Cayley-Hamilton: f(C) = 0
    acc = np.zeros((3, 3), dtype=np.int64)
    power = modp.identity(3)
    for coeff in f:
        acc = (acc + coeff * power) % 2
        power = power @ c % 2
    assert not acc.any()


def test_companion_matrix_of_primitive_poly_has_full_order():
    for p, n in [(2, 2), (3, 2), (2, 3)]:
        found = any(
            modp.mat_order(p, modp.companion_matrix(p, f)) == p ** n - 1
            for f in modp.monic_irreducibles(p, n))
        assert found
