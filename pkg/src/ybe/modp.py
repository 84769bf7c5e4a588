"""Dense linear algebra over prime fields, sized for small moduli.

Matrices and vectors are numpy int64 arrays with entries reduced mod p.
Everything here is exact integer arithmetic; no floating point.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ValidationError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def mat(p: int, rows: Sequence[Sequence[int]]) -> np.ndarray:
    return np.array(rows, dtype=np.int64) % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(p: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a @ b) % p


def mat_vec(p: int, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (a @ v) % p


def mat_pow(p: int, a: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        return mat_pow(p, mat_inv(p, a), -k)
    result = identity(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        k >>= 1
    return result


def rref(p: int, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = (a % p).astype(np.int64).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), p - 2, p)) % p
        other = np.flatnonzero(m[:, c])
        other = other[other != r]
        m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(p: int, a: np.ndarray) -> int:
    return len(rref(p, a)[1])


def mat_inv(p: int, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a % p, identity(n)], axis=1)
    red, pivots = rref(p, aug)
    if pivots[:n] != list(range(n)):
        raise ValidationError("matrix is singular mod %d" % p)
    return red[:, n:]


def mat_order(p: int, a: np.ndarray, cap: int = 10 ** 6) -> int:
    """Multiplicative order; raises on singular input."""
    mat_inv(p, a)
    n = a.shape[0]
    ident = identity(n)
    power = a % p
    k = 1
    while not np.array_equal(power, ident):
        power = (power @ a) % p
        k += 1
        if k > cap:
            raise ValidationError("order exceeds cap %d" % cap)
    return k


def nullspace_basis(p: int, a: np.ndarray) -> np.ndarray:
    """Rows form a basis of the right nullspace."""
    red, pivots = rref(p, a)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-red[r, fc]) % p
    return basis


def solve(p: int, a: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution of a x = b, or None."""
    aug = np.concatenate([a % p, (b % p).reshape(-1, 1)], axis=1)
    red, pivots = rref(p, aug)
    if a.shape[1] in pivots:
        return None
    x = np.zeros(a.shape[1], dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = red[r, a.shape[1]]
    return x


def vec_to_index(p: int, v: np.ndarray) -> int:
    """Base-p digits, v[0] least significant."""
    total = 0
    for d in reversed(np.asarray(v, dtype=np.int64) % p):
        total = total * p + int(d)
    return total


def index_to_vec(p: int, n: int, idx: int) -> np.ndarray:
    v = np.empty(n, dtype=np.int64)
    for i in range(n):
        v[i] = idx % p
        idx //= p
    return v


def all_vectors(p: int, n: int) -> np.ndarray:
    """All p**n vectors, row i encoding index i."""
    count = p ** n
    idx = np.arange(count)
    out = np.empty((count, n), dtype=np.int64)
    for i in range(n):
        out[:, i] = idx % p
        idx = idx // p
    return out


def invariant_subspace_witness(p: int, mats: Sequence[np.ndarray]) -> Optional[np.ndarray]:
    """Basis (rows) of a proper nonzero subspace invariant under every
    matrix, or None if the joint action is irreducible.  Tries the closed
    span of each nonzero vector."""
    if not mats:
        raise ValidationError("need at least one matrix")
    n = mats[0].shape[0]
    for seed in all_vectors(p, n)[1:]:
        rows = [seed.copy()]
        basis, _ = rref(p, np.array(rows))
        queue = [seed]
        while queue:
            v = queue.pop()
            for m in mats:
                w = (m @ v) % p
                cand = np.vstack([basis, w])
                red, piv = rref(p, cand)
                if len(piv) > basis.shape[0]:
                    basis = red[:len(piv)]
                    queue.append(w)
        if 0 < basis.shape[0] < n:
            return basis
    return None


def span_is_field(p: int, mats, cap: int = 81) -> bool:
    """Whether the unital subring generated by the given matrix (or
    matrices) is a field, by checking invertibility of each nonzero
    element.  The subring size p**d must not exceed the cap.  Every word
    in the generators is reached by right-multiplying spanning words, so
    the final span is multiplicatively closed."""
    if isinstance(mats, np.ndarray) and mats.ndim == 2:
        mats = [mats]
    gens = [np.asarray(m, dtype=np.int64) % p for m in mats]
    n = gens[0].shape[0]
    basis, _ = rref(p, identity(n).reshape(1, -1))
    queue = [identity(n)]
    while queue:
        cur = queue.pop()
        for g in gens:
            w = (cur @ g) % p
            cand = np.vstack([basis, w.reshape(-1)])
            red, piv = rref(p, cand)
            if len(piv) > basis.shape[0]:
                basis = red[:len(piv)]
                queue.append(w)
    d = basis.shape[0]
    if p ** d > cap:
        raise ValidationError(f"subring has {p ** d} elements, over the cap {cap}")
    basis_mats = [row.reshape(n, n) for row in basis]
    for coeffs in all_vectors(p, d)[1:]:
        elem = np.zeros((n, n), dtype=np.int64)
        for c, mat_i in zip(coeffs, basis_mats):
            elem = (elem + int(c) * mat_i) % p
        if rank(p, elem) < n:
            return False
    return True


# --- polynomial helpers used to build field companion matrices


def poly_mul(p: int, f: Sequence[int], g: Sequence[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        for j, gj in enumerate(g):
            out[i + j] = (out[i + j] + fi * gj) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_mod(p: int, f: Sequence[int], g: Sequence[int]) -> list[int]:
    f = [c % p for c in f]
    g = [c % p for c in g]
    while len(f) >= len(g) and any(f):
        if f[-1] == 0:
            f.pop()
            continue
        shift = len(f) - len(g)
        factor = f[-1] * pow(g[-1], p - 2, p) % p
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - factor * c) % p
        while len(f) > 1 and f[-1] == 0:
            f.pop()
    return f


def _monic_polys(p: int, deg: int):
    for idx in range(p ** deg):
        coeffs = []
        rest = idx
        for _ in range(deg):
            coeffs.append(rest % p)
            rest //= p
        yield coeffs + [1]


def is_irreducible(p: int, f: Sequence[int]) -> bool:
    deg = len(f) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            r = poly_mod(p, list(f), g)
            if len(r) == 1 and r[0] == 0:
                return False
    return True


def monic_irreducibles(p: int, deg: int):
    """Monic irreducibles of the given degree in lex order (low
    coefficients vary fastest); yields full coefficient lists."""
    for f in _monic_polys(p, deg):
        if is_irreducible(p, f):
            yield f


def first_irreducible(p: int, deg: int) -> list[int]:
    """Lex-first monic irreducible of the given degree (low coefficients
    vary fastest)."""
    for f in _monic_polys(p, deg):
        if is_irreducible(p, f):
            return f
    raise ValidationError(f"no irreducible of degree {deg} mod {p}")  # pragma: no cover


def companion_matrix(p: int, f: Sequence[int]) -> np.ndarray:
    """Companion matrix of a monic polynomial; multiplication by t on the
    basis 1, t, ..., t^(deg-1)."""
    deg = len(f) - 1
    if f[-1] != 1:
        raise ValidationError("polynomial must be monic")
    m = np.zeros((deg, deg), dtype=np.int64)
    for i in range(1, deg):
        m[i, i - 1] = 1
    m[:, deg - 1] = [(-c) % p for c in f[:deg]]
    return m
