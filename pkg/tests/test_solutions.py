import numpy as np
import pytest

from ybe.errors import ValidationError
from ybe.groups import Partition
from ybe.solutions import (affine_prime_solution, are_isomorphic,
                           classify_lyubashenko, congruence_closure,
                           derived_solution, diagonal_map,
                           is_simple_bruteforce, profile, quotient_solution,
                           retraction, sigma_table, validate_solution)


def dihedral(n: int):
    lam = np.tile(np.arange(n, dtype=np.int32), (n, 1))
    rho = np.array([[(2 * y - x) % n for x in range(n)] for y in range(n)],
                   dtype=np.int32)
    return validate_solution(lam, rho)


def permutation(n: int, lam_p, rho_p):
    lam = np.tile(np.array(lam_p, dtype=np.int32), (n, 1))
    rho = np.tile(np.array(rho_p, dtype=np.int32), (n, 1))
    return validate_solution(lam, rho)


def test_validate_and_r():
    s = dihedral(3)
    assert s.n == 3
    assert s.r(0, 1) == (1, 2)
    assert s.r(2, 2) == (2, 2)
    assert s.lam_rows() == [[0, 1, 2]] * 3
    assert s.rho_rows() == [[0, 2, 1], [2, 1, 0], [1, 0, 2]]


def test_validate_rejects():
    ident = np.tile(np.arange(3, dtype=np.int32), (3, 1))
    with pytest.raises(ValidationError):
        validate_solution(ident, np.array([[0, 0, 0]] * 3, dtype=np.int32))
    with pytest.raises(ValidationError):
        validate_solution(ident, np.array([[0, 1]] * 3, dtype=np.int32))
    # rho rows id, id, (1 2): fails self-distributivity at y=1, z=2
    bad = np.array([[0, 1, 2], [0, 1, 2], [0, 2, 1]], dtype=np.int32)
    with pytest.raises(ValidationError):
        validate_solution(ident, bad)


def test_sigma_and_derived():
    s = dihedral(5)
    assert np.array_equal(sigma_table(s), s.rho)
    assert derived_solution(s) == s
    # family 1 with a = b = 2, c = 0 over F_5: sig_y(x) = 4x + 2y
    t = affine_prime_solution(5, 1, a=2, b=2)
    sig = sigma_table(t)
    for y in range(5):
        for x in range(5):
            assert sig[y, x] == (4 * x + 2 * y) % 5
    d = derived_solution(t)
    assert profile(d).derived_form
    assert np.array_equal(d.rho, sig)


def test_diagonal_map():
    assert diagonal_map(dihedral(3)) == (0, 1, 2)
    t = affine_prime_solution(5, 1, a=2, b=2, c=1)
    assert diagonal_map(t) == (2, 4, 1, 3, 0)


def test_profile_quandle():
    p = profile(dihedral(3))
    assert not p.involutive
    assert p.derived_form
    assert p.twisted_rack
    assert not p.lyubashenko
    assert p.quandle
    assert p.indecomposable
    assert p.irretractable


def test_profile_permutation():
    shift = permutation(4, (1, 2, 3, 0), (0, 1, 2, 3))
    p = profile(shift)
    assert not p.involutive
    assert not p.derived_form
    assert p.twisted_rack
    assert p.lyubashenko
    assert not p.quandle
    assert p.indecomposable
    assert not p.irretractable
    trivial = permutation(2, (0, 1), (0, 1))
    q = profile(trivial)
    assert q.involutive
    assert q.lyubashenko
    assert q.quandle
    assert not q.indecomposable


def test_classify_lyubashenko():
    rep = classify_lyubashenko(permutation(5, (1, 2, 3, 4, 0), (0, 1, 2, 3, 4)))
    assert rep.is_lyubashenko
    assert rep.is_simple
    assert rep.prime == 5
    rep = classify_lyubashenko(permutation(4, (1, 2, 3, 0), (0, 1, 2, 3)))
    assert rep.is_lyubashenko
    assert rep.is_simple is False
    # Klein four group is not cyclic, so prime size is necessary
    rep = classify_lyubashenko(permutation(4, (1, 0, 3, 2), (2, 3, 0, 1)))
    assert rep.is_lyubashenko
    assert rep.is_simple is False
    rep = classify_lyubashenko(permutation(2, (1, 0), (1, 0)))
    assert rep.is_simple
    assert rep.prime == 2
    rep = classify_lyubashenko(dihedral(3))
    assert not rep.is_lyubashenko
    assert rep.is_simple is None


def test_retraction():
    shift = permutation(4, (1, 2, 3, 0), (0, 1, 2, 3))
    part, quot = retraction(shift)
    assert part.num_classes == 1
    assert quot.n == 1
    part, quot = retraction(dihedral(3))
    assert part.num_classes == 3
    assert quot == dihedral(3)


def test_congruence_and_quotient():
    big = dihedral(9)
    part = congruence_closure(big, 0, 3)
    assert part.classes() == [[0, 3, 6], [1, 4, 7], [2, 5, 8]]
    assert quotient_solution(big, part) == dihedral(3)
    assert congruence_closure(dihedral(3), 0, 1).num_classes == 1
    with pytest.raises(ValidationError):
        quotient_solution(dihedral(3), Partition([0, 0, 2]))
    with pytest.raises(ValidationError):
        quotient_solution(dihedral(3), Partition([0, 0]))


def test_is_simple_bruteforce():
    assert is_simple_bruteforce(dihedral(3))
    assert not is_simple_bruteforce(dihedral(4))
    assert is_simple_bruteforce(permutation(5, (1, 2, 3, 4, 0), (0, 1, 2, 3, 4)))
    assert not is_simple_bruteforce(permutation(1, (0,), (0,)))
    assert is_simple_bruteforce(permutation(2, (0, 1), (0, 1)))


def test_are_isomorphic():
    s = dihedral(5)
    g = np.array([2, 0, 1, 4, 3], dtype=np.int32)
    ginv = np.argsort(g)
    lam = g[s.lam[np.ix_(ginv, ginv)]]
    rho = g[s.rho[np.ix_(ginv, ginv)]]
    t = validate_solution(lam, rho)
    h = are_isomorphic(s, t)
    assert h is not None
    hm = np.array(h, dtype=np.int32)
    assert np.array_equal(t.lam[np.ix_(hm, hm)], hm[s.lam])
    assert np.array_equal(t.rho[np.ix_(hm, hm)], hm[s.rho])
    assert are_isomorphic(dihedral(3), permutation(3, (1, 2, 0), (0, 1, 2))) is None
    assert are_isomorphic(dihedral(3), dihedral(5)) is None


def test_affine_families():
    s = affine_prime_solution(5, 1, a=2, b=2, c=1)
    assert s.r(1, 2) == (2, 4)
    t = affine_prime_solution(7, 2, a=3, b=2, c=2)
    assert t.r(1, 2) == (1, 2)
    u = affine_prime_solution(3, 3, c1=1, c2=2)
    assert u.r(0, 0) == (1, 2)
    assert profile(u).lyubashenko


def test_affine_rejects():
    with pytest.raises(ValidationError):
        affine_prime_solution(5, 1, a=2, b=3)  # a*b = 1 mod 5
    with pytest.raises(ValidationError):
        affine_prime_solution(5, 2, a=0, b=2)
    with pytest.raises(ValidationError):
        affine_prime_solution(5, 3)
    with pytest.raises(ValidationError):
        affine_prime_solution(4, 1, a=1, b=2)
    with pytest.raises(ValidationError):
        affine_prime_solution(5, 9, a=2, b=2)
