"""Finite non-degenerate set-theoretic solutions as a pair of lookup tables.

A solution on X = {0..n-1} is r(x, y) = (lam[x][y], rho[y][x]) where every
row lam[x] and rho[y] is a permutation and r satisfies the braid equation
on triples.  Tables are small enough here that everything is checked in
full, vectorized over the first coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import Undecided, ValidationError
from .groups import Partition, Perm, closure, cycle_type, orbits

SOLUTION_ISO_CAP = 32


def _rows_are_perms(table: np.ndarray, name: str) -> None:
    n = table.shape[0]
    expected = np.arange(n, dtype=np.int32)
    sorted_rows = np.sort(table, axis=1)
    bad = np.flatnonzero((sorted_rows != expected[None, :]).any(axis=1))
    if bad.size:
        x = int(bad[0])
        raise ValidationError(f"{name}_{x} is not a permutation of 0..{n - 1}",
                              witness=(name, x))


def _row_inverses(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    inv = np.empty_like(table)
    rows = np.arange(n, dtype=np.int32)[:, None]
    inv[rows, table] = np.arange(n, dtype=np.int32)[None, :]
    return inv


class FinSolution:
    """Validated solution; construct through :func:`validate_solution`."""

    __slots__ = ("n", "lam", "rho", "laminv", "rhoinv", "_lam_list", "_rho_list")

    def __init__(self, lam: np.ndarray, rho: np.ndarray, _checked: bool = False):
        if not _checked:
            raise ValidationError("use validate_solution to build a FinSolution")
        self.n = lam.shape[0]
        lam.setflags(write=False)
        rho.setflags(write=False)
        self.lam = lam
        self.rho = rho
        self.laminv = _row_inverses(lam)
        self.rhoinv = _row_inverses(rho)
        self.laminv.setflags(write=False)
        self.rhoinv.setflags(write=False)
        self._lam_list = None
        self._rho_list = None

    def r(self, x: int, y: int) -> tuple[int, int]:
        return int(self.lam[x, y]), int(self.rho[y, x])

    def lam_rows(self) -> list[list[int]]:
        if self._lam_list is None:
            self._lam_list = self.lam.tolist()
        return self._lam_list

    def rho_rows(self) -> list[list[int]]:
        if self._rho_list is None:
            self._rho_list = self.rho.tolist()
        return self._rho_list

    def __eq__(self, other) -> bool:
        return (isinstance(other, FinSolution) and self.n == other.n
                and np.array_equal(self.lam, other.lam)
                and np.array_equal(self.rho, other.rho))

    def __hash__(self):
        return hash((self.n, self.lam.tobytes(), self.rho.tobytes()))

    def __repr__(self) -> str:
        return f"FinSolution(n={self.n})"


def validate_solution(lam, rho) -> FinSolution:
    """Check non-degeneracy and the braid equation; raise with a witness
    triple on the first failure."""
    lam = np.asarray(lam, dtype=np.int32)
    rho = np.asarray(rho, dtype=np.int32)
    if lam.ndim != 2 or lam.shape[0] != lam.shape[1]:
        raise ValidationError(f"lambda table must be square, got {lam.shape}")
    if rho.shape != lam.shape:
        raise ValidationError(f"table shapes differ: {lam.shape} vs {rho.shape}")
    n = lam.shape[0]
    if n == 0:
        raise ValidationError("empty carrier")
    for name, t in (("lambda", lam), ("rho", rho)):
        if t.min() < 0 or t.max() >= n:
            raise ValidationError(f"{name} entry out of range 0..{n - 1}")
    _rows_are_perms(lam, "lambda")
    _rows_are_perms(rho, "rho")

    # Componentwise braid equation on (x, y, z), one x at a time:
    #   (1) lam_{lam_x(y)} lam_{rho_y(x)} (z)      = lam_x lam_y (z)
    #   (2) rho_{lam_{rho_y(x)}(z)} (lam_x(y))     = lam_{rho_{lam_y(z)}(x)} (rho_z(y))
    #   (3) rho_z rho_y (x)                        = rho_{rho_z(y)} rho_{lam_y(z)} (x)
    for x in range(n):
        u = lam[x]                      # u[y] = lam_x(y)
        w = rho[:, x]                   # w[y] = rho_y(x)
        inner = lam[w]                  # inner[y,z] = lam_{rho_y(x)}(z)
        lhs1 = lam[u[:, None], inner]
        rhs1 = lam[x][lam]
        if not np.array_equal(lhs1, rhs1):
            y, z = _first_bad(lhs1, rhs1)
            raise ValidationError(
                f"braid equation fails in the first coordinate at (x,y,z)=({x},{y},{z})",
                witness=(x, y, z))
        tx = rho[lam, x]                # tx[y,z] = rho_{lam_y(z)}(x)
        lhs2 = rho[inner, u[:, None]]
        rhs2 = lam[tx, rho.T]
        if not np.array_equal(lhs2, rhs2):
            y, z = _first_bad(lhs2, rhs2)
            raise ValidationError(
                f"braid equation fails in the middle coordinate at (x,y,z)=({x},{y},{z})",
                witness=(x, y, z))
        lhs3 = rho[:, w].T              # lhs3[y,z] = rho_z(rho_y(x))
        rhs3 = rho[rho.T, tx]           # rhs3[y,z] = rho_{rho_z(y)}(tx[y,z])
        if not np.array_equal(lhs3, rhs3):
            y, z = _first_bad(lhs3, rhs3)
            raise ValidationError(
                f"braid equation fails in the last coordinate at (x,y,z)=({x},{y},{z})",
                witness=(x, y, z))
    return FinSolution(lam, rho, _checked=True)


def _first_bad(a: np.ndarray, b: np.ndarray) -> tuple[int, int]:
    where = np.argwhere(a != b)
    return int(where[0][0]), int(where[0][1])


def sigma_table(s: FinSolution) -> np.ndarray:
    """sig[y][x] = lam_y(rho_{lam_x^{-1}(y)}(x)), the conjugation-like maps
    of the derived solution."""
    n = s.n
    inner = s.rho[s.laminv, np.arange(n, dtype=np.int32)[:, None]]  # [x,y]
    return s.lam[np.arange(n, dtype=np.int32)[:, None], inner.T]


def derived_solution(s: FinSolution) -> FinSolution:
    """The rack-like solution (x, y) -> (y, sig_y(x)) on the same carrier."""
    n = s.n
    lam = np.tile(np.arange(n, dtype=np.int32), (n, 1))
    return validate_solution(lam, sigma_table(s))


def diagonal_map(s: FinSolution) -> Perm:
    """x -> lam_x^{-1}(x); a bijection for finite non-degenerate solutions."""
    q = tuple(int(s.laminv[x, x]) for x in range(s.n))
    if sorted(q) != list(range(s.n)):
        raise ValidationError("diagonal map is not bijective", witness=q)
    return q


@dataclass(frozen=True)
class SolutionProfile:
    involutive: bool
    derived_form: bool
    twisted_rack: bool
    lyubashenko: bool
    quandle: bool
    indecomposable: bool
    irretractable: bool
    injective_hint: bool


def profile(s: FinSolution) -> SolutionProfile:
    n = s.n
    lam, rho = s.lam, s.rho
    u = lam
    v = rho.T
    involutive = bool((lam[u, v] == np.arange(n)[:, None]).all()
                      and (rho[v, u] == np.arange(n)[None, :]).all())
    derived_form = bool((lam == np.arange(n)[None, :]).all())
    twisted = bool((lam == lam[0]).all())
    lyu = twisted and bool((rho == rho[0]).all())
    quandle = derived_form and bool((np.diagonal(rho) == np.arange(n)).all())
    gens = [tuple(int(t) for t in row) for row in lam] + \
           [tuple(int(t) for t in row) for row in rho]
    indecomposable = orbits(gens, n).is_single_class()
    rows = {(r1.tobytes(), r2.tobytes()) for r1, r2 in zip(lam, rho)}
    irretractable = len(rows) == n
    return SolutionProfile(involutive=involutive, derived_form=derived_form,
                           twisted_rack=twisted, lyubashenko=lyu, quandle=quandle,
                           indecomposable=indecomposable, irretractable=irretractable,
                           injective_hint=irretractable)


def retraction(s: FinSolution) -> tuple[Partition, FinSolution]:
    """Identify points with identical lambda and rho rows; one step only."""
    labels = [(s.lam[x].tobytes(), s.rho[x].tobytes()) for x in range(s.n)]
    part = Partition.from_labels(labels)
    return part, quotient_solution(s, part)


def congruence_closure(s: FinSolution, x: int, y: int) -> Partition:
    """Smallest congruence identifying x and y.

    Saturates a union-find by the worklist rule: whenever u and u' merge,
    lam_u(v) ~ lam_{u'}(v), lam_v(u) ~ lam_v(u'), and the same for rho,
    for every v.  Transitivity covers mixed pairs.
    """
    n = s.n
    if not (0 <= x < n and 0 <= y < n):
        raise ValidationError(f"points ({x},{y}) out of range 0..{n - 1}")
    lam = s.lam_rows()
    rho = s.rho_rows()
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    queue = [(x, y)]
    while queue:
        a, b = queue.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if ra > rb:
            ra, rb = rb, ra
        parent[rb] = ra
        la, lb = lam[a], lam[b]
        pa, pb = rho[a], rho[b]
        for v in range(n):
            lv = lam[v]
            pv = rho[v]
            queue.append((la[v], lb[v]))
            queue.append((lv[a], lv[b]))
            queue.append((pa[v], pb[v]))
            queue.append((pv[a], pv[b]))
    rep_min: dict[int, int] = {}
    rep = [0] * n
    for i in range(n):
        root = find(i)
        if root not in rep_min:
            rep_min[root] = i
        rep[i] = rep_min[root]
    return Partition(rep)


def is_simple_bruteforce(s: FinSolution) -> bool:
    """No epimorphism onto a smaller nontrivial solution: every pair
    collapse forces the full congruence.  Size 1 is not simple by
    convention; any non-degenerate solution of size 2 is."""
    n = s.n
    if n == 1:
        return False
    if n == 2:
        return True
    for x in range(n):
        for y in range(x + 1, n):
            if congruence_closure(s, x, y).num_classes != 1:
                return False
    return True


def quotient_solution(s: FinSolution, part: Partition) -> FinSolution:
    """Induced solution on the classes of a congruence; raises with a
    witness pair when the partition is not a congruence."""
    if part.n != s.n:
        raise ValidationError(f"partition is over {part.n} points, solution over {s.n}")
    rep = np.array(part.rep, dtype=np.int32)
    lam, rho = s.lam, s.rho
    for cls in part.classes():
        pivot = cls[0]
        for u in cls[1:]:
            if not (np.array_equal(rep[lam[u]], rep[lam[pivot]])
                    and np.array_equal(rep[lam[:, u]], rep[lam[:, pivot]])
                    and np.array_equal(rep[rho[u]], rep[rho[pivot]])
                    and np.array_equal(rep[rho[:, u]], rep[rho[:, pivot]])):
                raise ValidationError(
                    f"partition is not a congruence: classes of {pivot} and {u} "
                    "act differently", witness=(pivot, u))
    index = part.index_map()
    reps = np.array(sorted(index), dtype=np.int32)
    dense = np.full(s.n, -1, dtype=np.int32)
    dense[reps] = np.arange(len(reps), dtype=np.int32)
    qlam = dense[rep[lam[np.ix_(reps, reps)]]]
    qrho = dense[rep[rho[np.ix_(reps, reps)]]]
    return validate_solution(qlam, qrho)


def _point_invariant(s: FinSolution, x: int) -> tuple:
    return (cycle_type(tuple(int(v) for v in s.lam[x])),
            cycle_type(tuple(int(v) for v in s.rho[x])),
            bool(s.lam[x, x] == x), bool(s.rho[x, x] == x))


def are_isomorphic(s: FinSolution, t: FinSolution,
                   cap: int = SOLUTION_ISO_CAP) -> Optional[Perm]:
    """Search for a relabeling phi with phi(lam[x][y]) = lam'[phi x][phi y]
    and the same for rho.  None when there is none; Undecided above cap."""
    if s.n != t.n:
        return None
    n = s.n
    if n > cap:
        raise Undecided(f"solution isomorphism capped at size {cap}, got {n}")
    inv_s = [_point_invariant(s, x) for x in range(n)]
    inv_t = [_point_invariant(t, x) for x in range(n)]
    if sorted(inv_s) != sorted(inv_t):
        return None
    slam, srho = s.lam_rows(), s.rho_rows()
    tlam, trho = t.lam_rows(), t.rho_rows()
    phi = [-1] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        px = phi[x]
        for u in range(n):
            pu = phi[u]
            if pu < 0:
                continue
            for a, b, pa, pb in ((x, u, px, pu), (u, x, pu, px)):
                img = phi[slam[a][b]]
                if img >= 0 and img != tlam[pa][pb]:
                    return False
                img = phi[srho[a][b]]
                if img >= 0 and img != trho[pa][pb]:
                    return False
        return True

    def dfs(x: int) -> bool:
        if x == n:
            return True
        for cand in range(n):
            if used[cand] or inv_t[cand] != inv_s[x]:
                continue
            phi[x] = cand
            used[cand] = True
            if consistent(x) and dfs(x + 1):
                return True
            phi[x] = -1
            used[cand] = False
        return False

    if dfs(0):
        result = tuple(phi)
        # full double-check of both tables
        arr = np.array(result, dtype=np.int32)
        assert np.array_equal(arr[s.lam], t.lam[np.ix_(arr, arr)])
        assert np.array_equal(arr[s.rho], t.rho[np.ix_(arr, arr)])
        return result
    return None


@dataclass(frozen=True)
class LyubashenkoReport:
    is_lyubashenko: bool
    is_simple: Optional[bool]
    prime: Optional[int]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def classify_lyubashenko(s: FinSolution) -> LyubashenkoReport:
    """Decide simplicity of a permutation solution (constant lambda and rho
    rows) directly: size 2 is simple, size 1 is not, and otherwise the two
    row permutations must generate a cyclic group of prime order n."""
    lam_const = bool((s.lam == s.lam[0]).all())
    rho_const = bool((s.rho == s.rho[0]).all())
    if not (lam_const and rho_const):
        return LyubashenkoReport(is_lyubashenko=False, is_simple=None, prime=None)
    n = s.n
    if n == 1:
        return LyubashenkoReport(True, False, None)
    if n == 2:
        return LyubashenkoReport(True, True, 2)
    if not _is_prime(n):
        return LyubashenkoReport(True, False, None)
    lam_p = tuple(int(v) for v in s.lam[0])
    rho_p = tuple(int(v) for v in s.rho[0])
    grp = closure([lam_p, rho_p], n)
    simple = grp.order == n and grp.is_cyclic()
    return LyubashenkoReport(True, simple, n if simple else None)


def affine_prime_solution(p: int, family: int, a: int = 0, b: int = 0, c: int = 0,
                          c1: int = 0, c2: int = 0) -> FinSolution:
    """Affine solutions over the integers mod a prime p.

    family 1: r(x,y) = (a y + (1-a b) x + c,  b x - a^{-1} c)
    family 2: r(x,y) = (a y + c,              b x + (1-a b) y - b c)
    family 3: r(x,y) = (y + c1,               x + c2)

    Families 1 and 2 need a, b nonzero and a b != 1 mod p; family 3 needs
    (c1, c2) != (0, 0).
    """
    if not _is_prime(p):
        raise ValidationError(f"{p} is not prime")
    xs = np.arange(p, dtype=np.int64)
    if family in (1, 2):
        a %= p
        b %= p
        c %= p
        if a == 0 or b == 0:
            raise ValidationError("parameters a and b must be nonzero mod p")
        if (a * b) % p == 1:
            raise ValidationError("a*b = 1 mod p is degenerate for this family")
        if family == 1:
            a_inv = pow(a, p - 2, p)
            lam = (a * xs[None, :] + (1 - a * b) * xs[:, None] + c) % p
            rho = np.tile((b * xs - a_inv * c) % p, (p, 1))
        else:
            lam = np.tile((a * xs + c) % p, (p, 1))
            rho = (b * xs[None, :] + (1 - a * b) * xs[:, None] - b * c) % p
    elif family == 3:
        c1 %= p
        c2 %= p
        if c1 == 0 and c2 == 0:
            raise ValidationError("family 3 needs (c1, c2) != (0, 0)")
        lam = np.tile((xs + c1) % p, (p, 1))
        rho = np.tile((xs + c2) % p, (p, 1))
    else:
        raise ValidationError(f"unknown affine family {family}")
    return validate_solution(lam.astype(np.int32), rho.astype(np.int32))
