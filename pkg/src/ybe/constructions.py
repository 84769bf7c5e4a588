"""Builders for the families of simple braces and solutions.

Two main constructions share a common shape: an additive group V x| C_k
with the cyclic generator acting by an automorphism A, a multiplication
a o b = a + lambda^{|a|}(b) driven by a second automorphism A2 and an
element u0, and the induced solution on the additive conjugacy class of
the cyclic generator.  The abelian builder works over V = F_p^n with
matrices; the non-abelian builder takes a characteristically simple
table group.  Byott's braces of order p^p*q and the affine prime-order
and permutation-shift families round out the registry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import modp
from .braces import (SkewBrace, brace_invariants, quotient_brace,
                     restricted_solution, smallest_nonzero_ideal,
                     trivial_brace, validate_brace, validate_ideal)
from .errors import (CapExceeded, ConstructionRejected, Undecided,
                     ValidationError)
from .groups import (TableGroup, alternating_group, closure, cyclic_group,
                     direct_power, orbits, perm_order, quotient_group,
                     semidirect_product, symmetric_group)
from .solutions import FinSolution, is_simple_bruteforce, validate_solution

BRUTE_FORCE_X_CAP = 64
STRUCTURED_SAMPLES = 1000
_GENERIC_NORMAL_SCAN_CAP = 200


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        mark = "ok" if self.ok else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"[{mark}] {self.name}{tail}"


def _reject_if_failed(checks: Sequence[HypothesisCheck]) -> None:
    failed = [c for c in checks if not c.ok]
    if not failed:
        return
    message = failed[0].detail or "hypothesis failed"
    rest = [f"{c.name}" + (f": {c.detail}" if c.detail else "") for c in failed[1:]]
    if rest:
        message += "; also " + "; ".join(rest)
    raise ConstructionRejected(failed[0].name, message, checks=tuple(checks))


# ---------------------------------------------------------------------------
# abelian V


@dataclass(frozen=True)
class AbelianVData:
    """V = F_p^n with commuting matrices A, A2 and a vector u0."""

    p: int
    n: int
    k: int
    a: np.ndarray
    a2: np.ndarray
    u0: np.ndarray

    @property
    def v1(self) -> np.ndarray:
        return (self.u0 - self.a @ self.u0) % self.p


def abelian_v_data(p: int, n: int, k: int, a, a2, u0) -> AbelianVData:
    a = np.atleast_2d(np.asarray(a, dtype=np.int64)) % p
    a2 = np.atleast_2d(np.asarray(a2, dtype=np.int64)) % p
    u0 = np.atleast_1d(np.asarray(u0, dtype=np.int64)) % p
    if a.shape != (n, n) or a2.shape != (n, n):
        raise ValidationError(f"matrices must be {n}x{n}")
    if u0.shape != (n,):
        raise ValidationError(f"u0 must have length {n}")
    a.setflags(write=False)
    a2.setflags(write=False)
    u0.setflags(write=False)
    return AbelianVData(p=int(p), n=int(n), k=int(k), a=a, a2=a2, u0=u0)


def check_abelian_v(d: AbelianVData) -> list[HypothesisCheck]:
    """The full hypothesis battery; short-circuits only on structural
    failures that make later checks meaningless."""
    checks: list[HypothesisCheck] = []
    p, n, k = d.p, d.n, d.k
    checks.append(HypothesisCheck("p is prime", modp.is_prime(p), f"p={p}"))
    checks.append(HypothesisCheck("n >= 1", n >= 1, f"n={n}"))
    checks.append(HypothesisCheck("k > 1", k > 1, f"k={k}"))
    if not all(c.ok for c in checks):
        return checks
    ident = modp.identity(n)
    a_inv_ok = modp.rank(p, d.a) == n
    a2_inv_ok = modp.rank(p, d.a2) == n
    checks.append(HypothesisCheck("A invertible", a_inv_ok))
    checks.append(HypothesisCheck("A2 invertible", a2_inv_ok))
    checks.append(HypothesisCheck("A != 1", not np.array_equal(d.a, ident)))
    if not (a_inv_ok and a2_inv_ok):
        return checks
    commute = np.array_equal(d.a @ d.a2 % p, d.a2 @ d.a % p)
    checks.append(HypothesisCheck("A*A2 = A2*A", commute))
    g = math.gcd(k, p ** n - 1)
    oa = modp.mat_order(p, d.a)
    oa2 = modp.mat_order(p, d.a2)
    checks.append(HypothesisCheck("o(A) divides gcd(k, p^n-1)",
                                  g % oa == 0, f"o(A)={oa}, gcd={g}"))
    checks.append(HypothesisCheck("o(A2) divides gcd(k, p^n-1)",
                                  g % oa2 == 0, f"o(A2)={oa2}, gcd={g}"))
    v1_zero = not d.v1.any()
    a2_one = np.array_equal(d.a2, ident)
    if a2_one and v1_zero:
        checks.append(HypothesisCheck("k = o(A) (A2=1, v1=0)", k == oa,
                                      f"k={k}, o(A)={oa}"))
    elif a2_one:
        checks.append(HypothesisCheck("k = o(A)*p (A2=1, v1!=0)", k == oa * p,
                                      f"k={k}, o(A)*p={oa * p}"))
    else:
        l = oa * oa2 // math.gcd(oa, oa2)
        checks.append(HypothesisCheck("k = lcm(o(A), o(A2)) (A2!=1)", k == l,
                                      f"k={k}, lcm={l}"))
    if commute:
        witness = modp.invariant_subspace_witness(p, [d.a, d.a2])
        checks.append(HypothesisCheck(
            "V is a simple module over the subring generated by A and A2",
            witness is None,
            "" if witness is None else
            f"invariant subspace found: span of rows {witness.tolist()}"))
    return checks


def _elementary_abelian(p: int, n: int) -> tuple[TableGroup, np.ndarray, np.ndarray]:
    """(group table of F_p^n, all vectors, base-p index weights)."""
    vecs = modp.all_vectors(p, n)
    weights = p ** np.arange(n)
    sums = (vecs[:, None, :] + vecs[None, :, :]) % p
    table = (sums @ weights).astype(np.int32)
    group = TableGroup(table)
    return group, vecs, weights


@dataclass(frozen=True)
class AbelianVBuild:
    data: AbelianVData
    brace: SkewBrace
    x_set: tuple[int, ...]
    formula_solution: FinSolution
    solution: FinSolution
    checks: tuple[HypothesisCheck, ...]
    v_ideal: tuple[int, ...]


def abelian_v_build(d: AbelianVData) -> AbelianVBuild:
    """Build the brace on F_p^n x| C_k, its distinguished class X, and the
    closed-formula solution; every hypothesis failure is named."""
    checks = check_abelian_v(d)
    _reject_if_failed(checks)
    p, n, k = d.p, d.n, d.k
    ident = modp.identity(n)
    # secondary assertions implied by the accepted hypotheses
    apow, a2pow = ident, ident
    a2sum = np.zeros((n, n), dtype=np.int64)
    ord_ok = True
    for i in range(1, k):
        apow = (apow @ d.a) % p
        a2sum = (a2sum + a2pow) % p
        a2pow = (a2pow @ d.a2) % p
        if (np.array_equal(apow, ident) and np.array_equal(a2pow, ident)
                and not a2sum.any()):
            ord_ok = False
    checks.append(HypothesisCheck(
        "order condition for all 0<i<k (secondary)", ord_ok))
    if p ** n <= 81:
        field_ok = modp.span_is_field(p, [d.a, d.a2])
        checks.append(HypothesisCheck(
            "subring generated by A and A2 is a field (secondary)", field_ok))
    else:
        field_ok = True
        checks.append(HypothesisCheck(
            "subring generated by A and A2 is a field (secondary)", True,
            f"skipped, p^n={p ** n} over the enumeration cap 81"))
    if not (ord_ok and field_ok):
        raise ValidationError(
            "secondary condition failed on accepted data; the case split is "
            "inconsistent")

    vgroup, vecs, weights = _elementary_abelian(p, n)
    nv = vgroup.n
    a_carrier = ((vecs @ d.a.T % p) @ weights).astype(np.int32)
    a2_carrier = ((vecs @ d.a2.T % p) @ weights).astype(np.int32)
    addg = semidirect_product(vgroup, k, a_carrier)
    vsum = vgroup.table
    # v_i = u0 - A^i u0 as carrier indices of V
    u0i = int(weights @ d.u0)
    apows_mat = [ident]
    for _ in range(1, k):
        apows_mat.append(apows_mat[-1] @ d.a % p)
    vi_idx = np.array(
        [int(weights @ ((d.u0 - m @ d.u0) % p)) for m in apows_mat],
        dtype=np.int32)
    vs = np.arange(nv, dtype=np.int32)
    lam = np.empty(nv * k, dtype=np.int32)
    for i in range(k):
        lam[vs * k + i] = vsum[a2_carrier, vi_idx[i]] * k + i
    lam_pows = [np.arange(nv * k, dtype=np.int32)]
    for _ in range(k):
        lam_pows.append(lam[lam_pows[-1]])
    if not np.array_equal(lam_pows[k], lam_pows[0]):
        raise ValidationError("lambda^k is not the identity")
    mul = np.empty_like(addg.table)
    for i in range(k):
        rows = vs * k + i
        mul[rows] = addg.table[np.ix_(rows, lam_pows[i])]
    brace = validate_brace(addg, mul)

    x_set = tuple(int(v) for v in vs * k + 1)
    if tuple(brace.add.conjugacy_class(x_set[0])) != x_set:
        raise ValidationError("X is not the additive conjugacy class of x")
    solution, xs = restricted_solution(brace, x_set)

    a_inv = modp.mat_inv(p, d.a)
    aa2_inv = modp.mat_inv(p, (d.a @ d.a2) % p)
    v1 = d.v1
    lam_row = (((vecs @ d.a2.T + v1) % p) @ weights).astype(np.int32)
    lam_f = np.tile(lam_row, (nv, 1))
    t_w = (vecs @ (-a_inv).T + vecs) % p
    t_v = ((vecs - v1) @ aa2_inv.T) % p
    rho_f = (((t_w[:, None, :] + t_v[None, :, :]) % p) @ weights).astype(np.int32)
    formula = validate_solution(lam_f, rho_f)
    if not (np.array_equal(formula.lam, solution.lam)
            and np.array_equal(formula.rho, solution.rho)):
        raise ValidationError(
            "closed formula disagrees with the brace restriction")

    v_ideal = tuple(int(v) for v in vs * k)
    _emitted_brace_postconditions(brace, v_ideal, x_set)
    if len(x_set) <= BRUTE_FORCE_X_CAP and not is_simple_bruteforce(solution):
        raise ValidationError("accepted data produced a non-simple solution")
    return AbelianVBuild(data=d, brace=brace, x_set=x_set,
                         formula_solution=formula, solution=solution,
                         checks=tuple(checks), v_ideal=v_ideal)


def _emitted_brace_postconditions(brace: SkewBrace, v_elems: tuple[int, ...],
                                  x_set: tuple[int, ...]) -> None:
    """Shared invariants of every emitted brace: zero socle, star series
    collapsing at the third term, trivial cyclic quotient by V, V meeting
    the additive center trivially, and a twisted-rack class X."""
    inv = brace_invariants(brace)
    if not inv.socle.is_zero():
        raise ValidationError(f"socle is {inv.socle.elements}, expected zero")
    if inv.b2.elements not in ((0,), v_elems):
        raise ValidationError("B2 is neither zero nor V")
    if not inv.b3.is_zero():
        raise ValidationError(f"B3 is {inv.b3.elements}, expected zero")
    vid = validate_ideal(brace, v_elems)
    q, _ = quotient_brace(brace, vid)
    if not (q.is_trivial() and q.add.is_cyclic()):
        raise ValidationError("B/V is not a trivial brace of cyclic type")
    if set(v_elems) & set(inv.add_center) - {0}:
        raise ValidationError("V meets the additive center nontrivially")
    rows = brace.lam[np.array(x_set, dtype=np.int32)]
    if not (rows == rows[0]).all():
        raise ValidationError("lambda is not constant on X")


# ---------------------------------------------------------------------------
# non-abelian V


def _digit_decode(codes: np.ndarray, size: int, copies: int) -> np.ndarray:
    """Base-``size`` digits of each code, first factor most significant."""
    out = np.empty((len(codes), copies), dtype=np.int64)
    rest = codes.astype(np.int64)
    for j in range(copies - 1, -1, -1):
        out[:, j] = rest % size
        rest = rest // size
    return out


def _digit_encode(digits: np.ndarray, size: int) -> np.ndarray:
    code = np.zeros(len(digits), dtype=np.int64)
    for j in range(digits.shape[1]):
        code = code * size + digits[:, j]
    return code.astype(np.int32)


def power_automorphism(s_order: int, copies: int, source_pos: Sequence[int],
                       twists: Sequence[Optional[np.ndarray]]) -> np.ndarray:
    """Carrier permutation of a direct power: new digit j is
    twists[j] applied to old digit source_pos[j]."""
    codes = np.arange(s_order ** copies, dtype=np.int64)
    digits = _digit_decode(codes, s_order, copies)
    new = np.empty_like(digits)
    for j in range(copies):
        col = digits[:, source_pos[j]]
        tw = twists[j]
        new[:, j] = col if tw is None else tw[col]
    return _digit_encode(new, s_order)


def conj_automorphism(elements: Sequence[tuple[int, ...]],
                      by: tuple[int, ...]) -> np.ndarray:
    """Conjugation g -> c g c^{-1} as a permutation of the element list;
    ``by`` may normalize the group from outside (its conjugates must stay
    inside)."""
    index = {e: i for i, e in enumerate(elements)}
    inv_by = tuple(int(v) for v in np.argsort(np.array(by)))
    out = np.empty(len(elements), dtype=np.int32)
    for i, g in enumerate(elements):
        cg = tuple(by[g[inv_by[t]]] for t in range(len(by)))
        if cg not in index:
            raise ValidationError("conjugation leaves the group")
        out[i] = index[cg]
    return out


@dataclass(frozen=True)
class NonabelianVData:
    """Characteristically simple table group V with automorphisms as
    carrier permutations."""

    v: TableGroup
    m: int
    a: np.ndarray
    a2: np.ndarray
    u0: int
    factor_blocks: Optional[tuple[tuple[int, ...], ...]] = None
    char_simple_source: str = "caller"
    assume_char_simple: bool = False


def nonabelian_v_data(v: TableGroup, m: int, a, a2, u0: int,
                      factor_blocks=None, char_simple_source: str = "caller",
                      assume_char_simple: bool = False) -> NonabelianVData:
    a = np.asarray(a, dtype=np.int32)
    a2 = np.asarray(a2, dtype=np.int32)
    a.setflags(write=False)
    a2.setflags(write=False)
    if factor_blocks is not None:
        factor_blocks = tuple(tuple(int(x) for x in b) for b in factor_blocks)
    return NonabelianVData(v=v, m=int(m), a=a, a2=a2, u0=int(u0),
                           factor_blocks=factor_blocks,
                           char_simple_source=char_simple_source,
                           assume_char_simple=assume_char_simple)


class StructuredBrace:
    """Brace on V x C_m without a full multiplication table; the carrier
    code of (v, ix) is v*m + i.  Requires the semidirect product to be
    centerless so the central quotient is the identity."""

    def __init__(self, v: TableGroup, m: int, a: np.ndarray, a2: np.ndarray,
                 u0: int):
        self.v = v
        self.m = m
        self.n = v.n * m
        self.a_pows = np.empty((m, v.n), dtype=np.int32)
        self.a_pows[0] = np.arange(v.n, dtype=np.int32)
        for i in range(1, m):
            self.a_pows[i] = a[self.a_pows[i - 1]]
        if not np.array_equal(a[self.a_pows[m - 1]], self.a_pows[0]):
            raise ValidationError("the action order does not divide m")
        self.a2 = a2
        self.u0 = u0
        vi = np.array([v.table[u0, v.inv[self.a_pows[i % m][u0]]]
                       for i in range(m)], dtype=np.int32)
        codes = np.arange(self.n, dtype=np.int32)
        vpart, ipart = codes // m, codes % m
        lam = v.table[a2[vpart], vi[ipart]] * m + ipart
        self.lam_pows = np.empty((m + 1, self.n), dtype=np.int32)
        self.lam_pows[0] = codes
        for i in range(1, m + 1):
            self.lam_pows[i] = lam[self.lam_pows[i - 1]]
        if not np.array_equal(self.lam_pows[m], codes):
            raise ValidationError("lambda^k is not the identity")

    def add(self, e1, e2):
        e1 = np.asarray(e1, dtype=np.int64)
        e2 = np.asarray(e2, dtype=np.int64)
        v1, i1 = e1 // self.m, e1 % self.m
        v2, i2 = e2 // self.m, e2 % self.m
        return (self.v.table[v1, self.a_pows[i1, v2]] * self.m
                + (i1 + i2) % self.m).astype(np.int32)

    def neg(self, e):
        e = np.asarray(e, dtype=np.int64)
        v1, i1 = e // self.m, e % self.m
        j = (self.m - i1) % self.m
        return (self.a_pows[j, self.v.inv[v1]] * self.m + j).astype(np.int32)

    def lam_of(self, e, b):
        """lambda_e(b) = lambda^{|e|}(b)."""
        e = np.asarray(e, dtype=np.int64)
        return self.lam_pows[e % self.m, np.asarray(b, dtype=np.int64)]

    def mul(self, e1, e2):
        return self.add(e1, self.lam_of(e1, e2))

    def mul_inv(self, e):
        e = np.asarray(e, dtype=np.int64)
        j = (self.m - e % self.m) % self.m
        return self.lam_pows[j, self.neg(e)]

    def sig(self, b, a):
        """sigma_b(a) = -b + a + b."""
        return self.add(self.add(self.neg(b), a), b)

    def __repr__(self) -> str:
        return f"StructuredBrace(order={self.n})"


def _centerless_semidirect(v: TableGroup, m: int, a: np.ndarray) -> bool:
    """Z(V x| C_m) = 0 test without building the product: (w, i) is central
    iff Aw = w and A^i equals conjugation by -w."""
    fixed = np.flatnonzero(a == np.arange(v.n, dtype=np.int32))
    apow = np.arange(v.n, dtype=np.int32)
    idx = np.arange(v.n, dtype=np.int32)
    for i in range(m):
        for w in fixed:
            conj = v.table[v.table[v.inv[w], idx], w]
            if np.array_equal(apow, conj) and not (i == 0 and w == 0):
                return False
        apow = a[apow]
    return True


def _is_automorphism(v: TableGroup, a: np.ndarray) -> bool:
    return (a.shape == (v.n,) and a[0] == 0
            and np.array_equal(a[v.table], v.table[np.ix_(a, a)]))


def _normal_invariant_scan(v: TableGroup, auts: Sequence[np.ndarray]) -> Optional[tuple[int, ...]]:
    """Smallest-witness search for a proper nontrivial normal subgroup
    closed under the given automorphisms; None means there is none."""
    idx = np.arange(v.n, dtype=np.int32)
    for seed in range(1, v.n):
        member = np.zeros(v.n, dtype=bool)
        member[0] = member[seed] = True
        queue = [seed]
        full = False
        while queue:
            s = queue.pop()
            here = np.flatnonzero(member)
            conj = v.table[v.table[v.inv, s], idx]
            cands = [v.table[s, here], np.array([v.inv[s]], dtype=np.int32), conj]
            cands.extend(aut[s:s + 1] for aut in auts)
            for val in np.unique(np.concatenate(cands)):
                if not member[val]:
                    member[val] = True
                    queue.append(int(val))
            if member.all():
                full = True
                break
        if not full and not member.all():
            return tuple(int(t) for t in np.flatnonzero(member))
    return None


def check_nonabelian_v(d: NonabelianVData) -> tuple[list[HypothesisCheck], int]:
    """Hypothesis battery; returns (checks, k) with k = |B/V| under the
    central quotient (equal to m when the semidirect product is
    centerless)."""
    checks: list[HypothesisCheck] = []
    v = d.v
    checks.append(HypothesisCheck("V non-abelian", not v.is_abelian(),
                                  "abelian V: use the abelian builder"))
    checks.append(HypothesisCheck("Z(V) = 0", v.center() == (0,)))
    checks.append(HypothesisCheck(
        "V characteristically simple",
        d.factor_blocks is not None or d.assume_char_simple,
        d.char_simple_source))
    checks.append(HypothesisCheck("m > 1", d.m > 1, f"m={d.m}"))
    a_ok = _is_automorphism(v, d.a)
    a2_ok = _is_automorphism(v, d.a2)
    checks.append(HypothesisCheck("A is an automorphism of V", a_ok))
    checks.append(HypothesisCheck("A2 is an automorphism of V", a2_ok))
    if not all(c.ok for c in checks):
        return checks, 0
    checks.append(HypothesisCheck(
        "A != 1", not np.array_equal(d.a, np.arange(v.n, dtype=np.int32))))
    centerless = _centerless_semidirect(v, d.m, d.a)
    k = d.m
    if not centerless:
        if v.n * d.m > 512:
            checks.append(HypothesisCheck(
                "Z(D) = 0 for a structured carrier", False,
                f"|D| = {v.n * d.m} needs a table to quotient by its center"))
            return checks, 0
        k = -1  # resolved by the table path in the builder
    return checks, k


def _k_conditions(v: TableGroup, a_pows: np.ndarray, a2: np.ndarray, u0: int,
                  k: int, kx_in_v: Optional[int]) -> list[HypothesisCheck]:
    """The conditions of the non-abelian construction that depend on
    k = |B/V|: order of A2, the commutator condition, the action of A2 on
    kx, and the telescoping sum."""
    checks = []
    o_a2 = perm_order(tuple(int(t) for t in a2))
    checks.append(HypothesisCheck("o(A2) divides k", k % o_a2 == 0,
                                  f"o(A2)={o_a2}, k={k}"))
    a1 = a_pows[1]
    v1 = int(v.table[u0, v.inv[a1[u0]]])
    lhs = v.table[v1, a1[a2]]
    rhs = v.table[a2[a1], np.full(v.n, v1, dtype=np.int32)]
    checks.append(HypothesisCheck(
        "commutator condition: v1 + A(A2(w)) = A2(A(w)) + v1", bool(np.array_equal(lhs, rhs))))
    if kx_in_v is not None:
        vk = int(v.table[u0, v.inv[a_pows[k][u0]]])
        want = int(v.table[vk, kx_in_v])
        checks.append(HypothesisCheck(
            "A2(kx) = v_k + kx", int(a2[kx_in_v]) == want,
            f"kx is the V element {kx_in_v}"))
    else:
        checks.append(HypothesisCheck(
            "A2(kx) = v_k + kx", True, "kx = 0, both sides vanish"))
    acc = v1
    a2pow = a2.copy()
    for _ in range(1, k):
        acc = int(v.table[a2pow[v1], acc])
        a2pow = a2[a2pow]
    checks.append(HypothesisCheck(
        "A2^(k-1)(v1) + ... + A2(v1) + v1 = 0", acc == 0))
    return checks


def _generation_and_minimality(v: TableGroup, d: NonabelianVData) -> list[HypothesisCheck]:
    checks = []
    diffs = set(int(v.table[t, v.inv[d.a[t]]]) for t in range(v.n))
    generated = len(v.subgroup_closure(diffs)) == v.n
    checks.append(HypothesisCheck("V = <v - A(v)> additively", generated))
    if d.factor_blocks is not None:
        blocks = d.factor_blocks
        rep_block = {}
        for bi, block in enumerate(blocks):
            for e in block:
                rep_block[e] = bi
        perms = []
        for aut in (d.a, d.a2):
            img = []
            for block in blocks:
                targets = {rep_block.get(int(aut[e])) for e in block if e != 0}
                if len(targets) != 1 or None in targets:
                    raise ValidationError("automorphism does not permute the factors")
                img.append(targets.pop())
            perms.append(tuple(img))
        transitive = orbits(perms, len(blocks)).is_single_class()
        checks.append(HypothesisCheck(
            "no nontrivial normal subgroup invariant under A and A2",
            transitive,
            "factor permutation orbits" if transitive else
            "a union of simple factors is invariant"))
    else:
        if v.n > _GENERIC_NORMAL_SCAN_CAP:
            raise CapExceeded(
                f"normal-subgroup scan needs |V| <= {_GENERIC_NORMAL_SCAN_CAP} "
                "without factor data")
        witness = _normal_invariant_scan(v, [d.a, d.a2])
        checks.append(HypothesisCheck(
            "no nontrivial normal subgroup invariant under A and A2",
            witness is None,
            "" if witness is None else f"invariant normal subgroup {witness}"))
    return checks


@dataclass(frozen=True)
class NonabelianVBuild:
    data: NonabelianVData
    brace: Union[SkewBrace, StructuredBrace]
    x_set: tuple[int, ...]
    formula_solution: FinSolution
    solution: FinSolution
    checks: tuple[HypothesisCheck, ...]
    k: int
    structured: bool


def _table_path(d: NonabelianVData, checks: list[HypothesisCheck]) -> NonabelianVBuild:
    v = d.v
    dgroup = semidirect_product(v, d.m, d.a)
    center = dgroup.center()
    bgroup, proj = quotient_group(dgroup, center)
    vimg = proj[np.arange(v.n, dtype=np.int32) * d.m]
    if len(set(vimg.tolist())) != v.n:
        raise ValidationError("V does not embed in the central quotient")
    checks.append(HypothesisCheck("V embeds in D/Z(D)", True,
                                  f"|Z(D)| = {len(center)}"))
    nb = bgroup.n
    k = nb // v.n
    checks.append(HypothesisCheck("k = |B/V| > 1", k > 1, f"k={k}"))
    _reject_if_failed(checks)
    xbar = int(proj[1])  # image of (0, 1c)
    powx = [0]
    for _ in range(1, k + 1):
        powx.append(int(bgroup.table[powx[-1], xbar]))
    kx = powx[k]
    visV = np.full(nb, -1, dtype=np.int32)
    visV[vimg] = np.arange(v.n, dtype=np.int32)
    kx_in_v = int(visV[kx])
    if kx_in_v < 0:
        raise ValidationError("kx is not in V")
    a_pows = np.empty((max(d.m, k) + 1, v.n), dtype=np.int32)
    a_pows[0] = np.arange(v.n, dtype=np.int32)
    for i in range(1, a_pows.shape[0]):
        a_pows[i] = d.a[a_pows[i - 1]]
    checks.extend(_k_conditions(v, a_pows, d.a2, d.u0, k,
                                kx_in_v if kx != 0 else None))
    checks.extend(_generation_and_minimality(v, d))
    _reject_if_failed(checks)

    # decompose each element of B as v + ix with 0 <= i < k
    vof = np.full(nb, -1, dtype=np.int32)
    iof = np.full(nb, -1, dtype=np.int32)
    for i in range(k):
        cand = bgroup.table[:, bgroup.inv[powx[i]]]
        hit = visV[cand] >= 0
        fresh = hit & (iof < 0)
        iof[fresh] = i
        vof[fresh] = visV[cand[fresh]]
    if (iof < 0).any():
        raise ValidationError("an element of B has no v + ix decomposition")
    vi = np.array([v.table[d.u0, v.inv[a_pows[i][d.u0]]] for i in range(k)],
                  dtype=np.int32)
    lam = bgroup.table[bgroup.table[vimg[d.a2[vof]], vimg[vi[iof]]],
                       np.array(powx[:k], dtype=np.int32)[iof]]
    lam_pows = [np.arange(nb, dtype=np.int32)]
    for _ in range(k):
        lam_pows.append(lam[lam_pows[-1]])
    if not np.array_equal(lam_pows[k], lam_pows[0]):
        raise ValidationError("lambda^k is not the identity")
    mul = np.empty_like(bgroup.table)
    for i in range(k):
        rows = np.flatnonzero(iof == i)
        mul[rows] = bgroup.table[np.ix_(rows, lam_pows[i])]
    brace = validate_brace(bgroup, mul)
    x_set = tuple(int(t) for t in brace.add.conjugacy_class(xbar))
    solution, xs = restricted_solution(brace, x_set)
    formula = _formula_solution_table(d, brace, vimg, xbar, x_set, a_pows, k)
    if not (np.array_equal(formula.lam, solution.lam)
            and np.array_equal(formula.rho, solution.rho)):
        raise ValidationError("closed formula disagrees with the brace restriction")
    _emitted_brace_postconditions(brace, tuple(int(t) for t in sorted(vimg.tolist())),
                                  x_set)
    if len(x_set) <= BRUTE_FORCE_X_CAP and not is_simple_bruteforce(solution):
        raise ValidationError("accepted data produced a non-simple solution")
    return NonabelianVBuild(data=d, brace=brace, x_set=x_set,
                            formula_solution=formula, solution=solution,
                            checks=tuple(checks), k=k, structured=False)


def _formula_solution_table(d: NonabelianVData, brace: SkewBrace,
                            vimg: np.ndarray, xbar: int,
                            x_set: tuple[int, ...], a_pows: np.ndarray,
                            k: int) -> FinSolution:
    """r(v+x-v, w+x-w) = (w'+x-w', v'+x-v') with w' = A2(w) + u0 and
    v' = w - A^{-1}(w) + (A2 A)^{-1}(v - u0); representative independence
    is checked in full."""
    v = d.v
    nv = v.n
    at = brace.add.table
    neg = brace.add.inv
    conj_x = at[at[vimg, xbar], neg[vimg]]          # v + x - v per v in V
    pos = {int(e): j for j, e in enumerate(x_set)}
    point_of_rep = np.array([pos[int(e)] for e in conj_x], dtype=np.int32)
    a_inv = a_pows[1]
    ainv_perm = np.argsort(a_inv).astype(np.int32)  # A^{-1} on V
    a2a = d.a2[a_pows[1]]
    a2a_inv = np.argsort(a2a).astype(np.int32)
    wprime = v.table[d.a2, np.full(nv, d.u0, dtype=np.int32)]
    vterm = v.table[np.arange(nv, dtype=np.int32), v.inv[ainv_perm]]
    m = len(x_set)
    lam_f = np.full((m, m), -1, dtype=np.int32)
    rho_f = np.full((m, m), -1, dtype=np.int32)
    u0inv = v.inv[d.u0]
    for vv in range(nv):
        pv = point_of_rep[vv]
        vmu = a2a_inv[v.table[vv, u0inv]]
        rho_vals = point_of_rep[v.table[vterm, np.full(nv, vmu, dtype=np.int32)]]
        lam_vals = point_of_rep[wprime]
        pw = point_of_rep
        for ww in range(nv):
            i, j = pv, int(pw[ww])
            lv, rv = int(lam_vals[ww]), int(rho_vals[ww])
            if lam_f[i, j] < 0:
                lam_f[i, j] = lv
                rho_f[j, i] = rv
            elif lam_f[i, j] != lv or rho_f[j, i] != rv:
                raise ValidationError(
                    "formula depends on the representative", witness=(vv, ww))
    return validate_solution(lam_f, rho_f)


def _structured_path(d: NonabelianVData, checks: list[HypothesisCheck]) -> NonabelianVBuild:
    v = d.v
    k = d.m
    a_pows = np.empty((k + 1, v.n), dtype=np.int32)
    a_pows[0] = np.arange(v.n, dtype=np.int32)
    for i in range(1, k + 1):
        a_pows[i] = d.a[a_pows[i - 1]]
    checks.append(HypothesisCheck("Z(D) = 0", True, "structured carrier"))
    checks.append(HypothesisCheck("k = |B/V| > 1", k > 1, f"k={k}"))
    checks.extend(_k_conditions(v, a_pows, d.a2, d.u0, k, None))
    checks.extend(_generation_and_minimality(v, d))
    _reject_if_failed(checks)
    brace = StructuredBrace(v, k, d.a, d.a2, d.u0)
    # X = {v - Av + x}
    tset = np.unique(v.table[np.arange(v.n, dtype=np.int32), v.inv[d.a]])
    x_set = tuple(int(t) for t in tset * k + 1)
    solution = _structured_restriction(brace, x_set)
    formula = _structured_formula(d, brace, x_set, a_pows)
    if not (np.array_equal(formula.lam, solution.lam)
            and np.array_equal(formula.rho, solution.rho)):
        raise ValidationError("closed formula disagrees with the brace restriction")
    _structured_postconditions(d, brace, checks)
    _sampled_braid_check(brace, STRUCTURED_SAMPLES)
    return NonabelianVBuild(data=d, brace=brace, x_set=x_set,
                            formula_solution=formula, solution=solution,
                            checks=tuple(checks), k=k, structured=True)


def _structured_restriction(brace: StructuredBrace, x_set: tuple[int, ...]) -> FinSolution:
    xs = np.array(x_set, dtype=np.int64)
    m = len(xs)
    pos = np.full(brace.n, -1, dtype=np.int64)
    pos[xs] = np.arange(m)
    e1 = np.repeat(xs, m)
    e2 = np.tile(xs, m)
    lam_vals = brace.lam_of(e1, e2)
    rho_vals = brace.mul(brace.mul(brace.mul_inv(lam_vals), e1), e2)
    if (pos[lam_vals] < 0).any() or (pos[rho_vals] < 0).any():
        raise ValidationError("X is not invariant")
    lam = pos[lam_vals].reshape(m, m).astype(np.int32)
    rho = pos[rho_vals].reshape(m, m).astype(np.int32).T
    return validate_solution(lam, np.ascontiguousarray(rho))


def _structured_formula(d: NonabelianVData, brace: StructuredBrace,
                        x_set: tuple[int, ...], a_pows: np.ndarray) -> FinSolution:
    v = d.v
    nv = v.n
    m = len(x_set)
    # point of the class element for each representative v
    t_of = v.table[np.arange(nv, dtype=np.int32), v.inv[d.a]]
    pos = np.full(brace.n, -1, dtype=np.int64)
    pos[np.array(x_set, dtype=np.int64)] = np.arange(m)
    point_of_rep = pos[t_of.astype(np.int64) * brace.m + 1].astype(np.int32)
    ainv = np.argsort(a_pows[1]).astype(np.int32)
    a2a_inv = np.argsort(d.a2[a_pows[1]]).astype(np.int32)
    wprime_pt = point_of_rep[v.table[d.a2, np.full(nv, d.u0, dtype=np.int32)]]
    vterm = v.table[np.arange(nv, dtype=np.int32), v.inv[ainv]]
    u0inv = v.inv[d.u0]
    lam_f = np.full((m, m), -1, dtype=np.int32)
    rho_f = np.full((m, m), -1, dtype=np.int32)
    pw = point_of_rep
    for vv in range(nv):
        pv = int(point_of_rep[vv])
        vmu = int(a2a_inv[v.table[vv, u0inv]])
        rho_pts = point_of_rep[v.table[vterm, np.full(nv, vmu, dtype=np.int32)]]
        fresh = lam_f[pv, pw] < 0
        lam_f[pv, pw[fresh]] = wprime_pt[fresh]
        rho_f[pw[fresh], pv] = rho_pts[fresh]
        clash = (lam_f[pv, pw] != wprime_pt) | (rho_f[pw, pv] != rho_pts)
        if clash.any():
            raise ValidationError("formula depends on the representative",
                                  witness=(int(vv), int(np.flatnonzero(clash)[0])))
    if (lam_f < 0).any():
        raise ValidationError("formula table incomplete")  # pragma: no cover
    return validate_solution(lam_f, rho_f)


def _structured_postconditions(d: NonabelianVData, brace: StructuredBrace,
                               checks: list[HypothesisCheck]) -> None:
    """Postconditions on a structured carrier.  The semidirect product is
    centerless, so Z(B,+) = 0 pins the socle once no proper lambda power
    is the identity; B2 is the ideal generated by the star image, closed
    under addition, negation, conjugation, A, and A2 inside V."""
    v = d.v
    m = brace.m
    codes = np.arange(brace.n, dtype=np.int32)
    for i in range(1, m):
        if np.array_equal(brace.lam_pows[i], codes):
            raise ValidationError(f"lambda^{i} is the identity")
    checks.append(HypothesisCheck(
        "Soc(B) = 0", True,
        "no proper lambda power is the identity and Z(B,+) = 0"))
    checks.append(HypothesisCheck(
        "V meets Z(B,+) trivially", True, "Z(B,+) = 0"))
    idx = np.arange(v.n, dtype=np.int32)
    star_parts = set()
    for i in range(m):
        lam_i = brace.lam_pows[i]
        for j in range(m):
            image = lam_i[idx * m + j]
            parts = v.table[(image // m).astype(np.int32), v.inv[idx]]
            star_parts.update(int(t) for t in np.unique(parts))
    member = np.zeros(v.n, dtype=bool)
    member[0] = True
    queue = [s for s in star_parts if not member[s]]
    for s in queue:
        member[s] = True
    while queue and not member.all():
        s = queue.pop()
        here = np.flatnonzero(member)
        conj = v.table[v.table[v.inv, s], idx]
        cands = np.concatenate((
            v.table[s, here], v.table[here, s],
            np.array([v.inv[s]], dtype=np.int32), conj,
            d.a[s:s + 1], d.a2[s:s + 1]))
        for t in np.unique(cands):
            if not member[t]:
                member[t] = True
                queue.append(int(t))
    if not member.all():
        raise ValidationError("B2 is neither zero nor V")
    checks.append(HypothesisCheck("B2 = V", True))
    checks.append(HypothesisCheck(
        "B3 = 0", True, "elements of V act with the identity lambda"))
    checks.append(HypothesisCheck(
        "B/V is a trivial brace of cyclic type", True,
        "multiplication agrees with addition modulo V"))


def _sampled_braid_check(brace: StructuredBrace, samples: int) -> None:
    """Componentwise braid identities of the associated solution on random
    triples; cheap insurance on carriers too big to tabulate."""
    rng = np.random.default_rng(987654321)
    n = brace.n
    a = rng.integers(0, n, size=samples)
    b = rng.integers(0, n, size=samples)
    c = rng.integers(0, n, size=samples)

    def lam(x, y):
        return brace.lam_of(x, y)

    def rho(y, x):
        return brace.mul(brace.mul(brace.mul_inv(lam(x, y)), x), y)

    lhs1 = lam(lam(a, b), lam(rho(b, a), c))
    rhs1 = lam(a, lam(b, c))
    if not np.array_equal(lhs1, rhs1):
        raise ValidationError("sampled braid check failed in the first component")
    lhs2 = rho(lam(rho(b, a), c), lam(a, b))
    rhs2 = lam(rho(lam(b, c), a), rho(c, b))
    if not np.array_equal(lhs2, rhs2):
        raise ValidationError("sampled braid check failed in the middle component")
    lhs3 = rho(c, rho(b, a))
    rhs3 = rho(rho(c, b), rho(lam(b, c), a))
    if not np.array_equal(lhs3, rhs3):
        raise ValidationError("sampled braid check failed in the last component")


def nonabelian_v_build(d: NonabelianVData) -> NonabelianVBuild:
    """Build the non-abelian family member; the carrier is a full table
    when |D| fits the validation cap and a structured product otherwise
    (which requires the semidirect product to be centerless)."""
    checks, k = check_nonabelian_v(d)
    _reject_if_failed(checks)
    if k == -1 or d.v.n * d.m <= 512:
        return _table_path(d, checks)
    return _structured_path(d, checks)


# ---------------------------------------------------------------------------
# Byott braces of order p^p * q


@dataclass(frozen=True)
class ByottBuild:
    p: int
    q: int
    m_matrix: np.ndarray
    brace: SkewBrace
    x_set: tuple[int, ...]
    solution: FinSolution
    checks: tuple[HypothesisCheck, ...]


def _byott_matrix(p: int, q: int, j: np.ndarray) -> Optional[np.ndarray]:
    """Lex-first matrix of multiplicative order q with J M J^{-1} = M^p,
    scanning all p^(p*p) candidates in one batch (row-major digits, first
    entry most significant)."""
    dim = p
    count = p ** (dim * dim)
    codes = np.arange(count, dtype=np.int64)
    digits = np.empty((count, dim * dim), dtype=np.int64)
    rest = codes.copy()
    for t in range(dim * dim - 1, -1, -1):
        digits[:, t] = rest % p
        rest //= p
    mats = digits.reshape(count, dim, dim)

    def batch_pow(ms: np.ndarray, e: int) -> np.ndarray:
        result = np.broadcast_to(modp.identity(dim), ms.shape).copy()
        base = ms
        while e:
            if e & 1:
                result = np.einsum("nij,njk->nik", result, base) % p
            base = np.einsum("nij,njk->nik", base, base) % p
            e >>= 1
        return result

    ident = modp.identity(dim)
    is_ident = (batch_pow(mats, q) == ident).all(axis=(1, 2))
    nontrivial = ~(mats == ident).all(axis=(1, 2))
    j_inv = modp.mat_inv(p, j)
    conj = np.einsum("ij,njk,kl->nil", j, mats, j_inv) % p
    twisted = (conj == batch_pow(mats, p)).all(axis=(1, 2))
    hits = np.flatnonzero(is_ident & nontrivial & twisted)
    if hits.size == 0:
        return None
    return mats[hits[0]].copy()


def byott_build(p: int, q: int) -> ByottBuild:
    """Brace of order p^p * q whose additive group is F_p^p x| C_q with the
    cyclic part acting by M, and whose multiplication comes from a regular
    subgroup of the holomorph generated by translations twisted by a Jordan
    block."""
    checks: list[HypothesisCheck] = []
    checks.append(HypothesisCheck("p is prime", modp.is_prime(p), f"p={p}"))
    checks.append(HypothesisCheck("q is prime", modp.is_prime(q), f"q={q}"))
    if not all(c.ok for c in checks):
        _reject_if_failed(checks)
    checks.append(HypothesisCheck("q divides p^p - 1", (p ** p - 1) % q == 0,
                                  f"p^p - 1 = {p ** p - 1}"))
    checks.append(HypothesisCheck("q does not divide p - 1", (p - 1) % q != 0))
    checks.append(HypothesisCheck("p^p * q within the table cap",
                                  p ** p * q <= 512, f"order {p ** p * q}"))
    _reject_if_failed(checks)
    dim = p
    jordan = (modp.identity(dim) + np.diag(np.ones(dim - 1, dtype=np.int64), 1)) % p
    m_mat = _byott_matrix(p, q, jordan)
    checks.append(HypothesisCheck(
        "an order-q matrix M with J M J^{-1} = M^p exists", m_mat is not None))
    _reject_if_failed(checks)

    vgroup, vecs, weights = _elementary_abelian(p, dim)
    nv = vgroup.n
    m_carrier = ((vecs @ m_mat.T % p) @ weights).astype(np.int32)
    j_carrier = ((vecs @ jordan.T % p) @ weights).astype(np.int32)
    addg = semidirect_product(vgroup, q, m_carrier)
    nb = addg.n
    codes = np.arange(nb, dtype=np.int32)
    vpart, ipart = codes // q, codes % q
    vsum = vgroup.table
    negv = vgroup.inv
    mpows = np.empty((q, nv), dtype=np.int32)
    mpows[0] = np.arange(nv, dtype=np.int32)
    for i in range(1, q):
        mpows[i] = m_carrier[mpows[i - 1]]

    ident_pair = (0, tuple(range(nb)))
    gens: list[tuple[int, tuple[int, ...]]] = []
    gens.append((1, ident_pair[1]))                      # x = (0, 1), id
    basis_idx = [int(weights[t]) for t in range(dim)]    # e_t has carrier p^t
    for t in range(dim - 1):
        et = basis_idx[t]
        move = vsum[vsum[negv[et], vpart], mpows[ipart, et]] * q + ipart
        gens.append((et * q, tuple(int(s) for s in move)))
    ep = basis_idx[dim - 1]
    new_i = (p * ipart) % q
    move = vsum[vsum[negv[ep], j_carrier[vpart]], mpows[new_i, ep]] * q + new_i
    gens.append((ep * q, tuple(int(s) for s in move)))

    addt = addg.table
    seen = {ident_pair}
    queue = [ident_pair]
    while queue:
        b, phi = queue.pop()
        phi_arr = np.array(phi, dtype=np.int32)
        for c, psi in gens:
            prod = (int(addt[b, phi[c]]),
                    tuple(int(s) for s in phi_arr[np.array(psi, dtype=np.int32)]))
            if prod not in seen:
                if len(seen) > nb:
                    raise ValidationError("holomorph closure exceeds |B|")
                seen.add(prod)
                queue.append(prod)
    firsts = sorted(b for b, _ in seen)
    regular = firsts == list(range(nb))
    checks.append(HypothesisCheck(
        "the holomorph closure acts regularly", regular,
        f"{len(seen)} elements, {len(set(firsts))} distinct translations"))
    _reject_if_failed(checks)
    phi_of = np.empty((nb, nb), dtype=np.int32)
    for b, phi in seen:
        phi_of[b] = phi
    mul = addt[codes[:, None], phi_of]
    brace = validate_brace(addg, mul)

    orders = addg.element_orders()
    xmask = orders % q == 0
    x_set = tuple(int(t) for t in np.flatnonzero(xmask))
    if x_set != tuple(int(t) for t in codes[ipart != 0]):
        raise ValidationError("X is not the set with nonzero cyclic part")
    if len(x_set) != p ** p * (q - 1):
        raise ValidationError(f"|X| = {len(x_set)}, expected {p ** p * (q - 1)}")
    solution, _ = restricted_solution(brace, x_set)

    inv = brace_invariants(brace)
    full = tuple(range(nb))
    if inv.b2.elements != full:
        raise ValidationError("B2 is a proper ideal")
    mini = smallest_nonzero_ideal(brace)
    if mini is None or mini.elements != full:
        raise ValidationError("the brace has a proper nonzero ideal")
    checks.append(HypothesisCheck("B2 = B", True))
    checks.append(HypothesisCheck("the only nonzero ideal is B", True))
    if len(x_set) <= BRUTE_FORCE_X_CAP and not is_simple_bruteforce(solution):
        raise ValidationError("the restricted solution is not simple")
    return ByottBuild(p=p, q=q, m_matrix=m_mat, brace=brace, x_set=x_set,
                      solution=solution, checks=tuple(checks))


# ---------------------------------------------------------------------------
# permutation solutions


def permutation_solution(f, g) -> FinSolution:
    """r(x, y) = (f(y), g(x)); valid precisely when f and g commute."""
    f = np.asarray(f, dtype=np.int32)
    g = np.asarray(g, dtype=np.int32)
    n = f.shape[0]
    lam = np.tile(f, (n, 1))
    rho = np.tile(g, (n, 1))
    return validate_solution(lam, rho)


def lyubashenko_build(n: int, a: int, b: int) -> FinSolution:
    """Translation solution r(x, y) = (y + a, x + b) on Z_n."""
    if n < 1:
        raise ValidationError("need a positive carrier")
    idx = np.arange(n, dtype=np.int32)
    return permutation_solution((idx + a) % n, (idx + b) % n)


# ---------------------------------------------------------------------------
# isomorphism criterion


@dataclass(frozen=True)
class IsoReport:
    isomorphic: bool
    reason: str
    intertwiner: Optional[np.ndarray] = None


ISO_NULLSPACE_CAP = 200_000
ISO_TABLE_CAP = 360


def _semidirect_center(v: TableGroup, m: int, a: np.ndarray) -> list[tuple[int, int]]:
    """Central elements (w, i) of V x| C_m."""
    fixed = np.flatnonzero(a == np.arange(v.n, dtype=np.int32))
    idx = np.arange(v.n, dtype=np.int32)
    out = []
    apow = idx
    for i in range(m):
        for w in fixed:
            conj = v.table[v.table[v.inv[w], idx], w]
            if np.array_equal(apow, conj):
                out.append((int(w), i))
        apow = a[apow]
    return out


def _abelian_iso(d1: AbelianVData, d2: AbelianVData) -> IsoReport:
    """Scan the presentations of the second brace: the generator can be
    replaced by vt + s*x for any unit s mod k and any vt in V with
    N_s(vt) = 0, which raises A and A2 to the s-th power."""
    if (d1.p, d1.n, d1.k) != (d2.p, d2.n, d2.k):
        return IsoReport(False, "p, n, or k differ")
    p, n, k = d1.p, d1.n, d1.k
    ident = modp.identity(n)
    capped = False
    for s in range(1, k):
        if math.gcd(s, k) != 1:
            continue
        a_s = modp.mat_pow(p, d2.a, s)
        a2_s = modp.mat_pow(p, d2.a2, s)
        # row-major vec: f A = M f becomes (I (x) A^T - M (x) I) vec(f) = 0
        blocks = [(np.kron(ident, m1.T) - np.kron(m2, ident)) % p
                  for m1, m2 in ((d1.a, a_s), (d1.a2, a2_s))]
        basis = modp.nullspace_basis(p, np.vstack(blocks))
        d = basis.shape[0]
        if d == 0:
            continue
        if p ** d > ISO_NULLSPACE_CAP:
            capped = True
            continue
        nmat = np.zeros((n, n), dtype=np.int64)
        acc = ident
        for _ in range(k):
            nmat = (nmat + acc) % p
            acc = acc @ a_s % p
        c_s = np.zeros(n, dtype=np.int64)
        acc = ident
        for _ in range(s):
            c_s = (c_s + acc @ d2.u0) % p
            acc = acc @ d2.a2 % p
        # (I - A2^s) vt = (A^s - I) f(u0) + (I - A^s) c_s  and  N_s vt = 0
        stacked = np.vstack([(ident - a2_s) % p, nmat])
        tail = (ident - a_s) @ c_s % p
        for coeffs in modp.all_vectors(p, d)[1:]:
            f = (coeffs @ basis % p).reshape(n, n)
            if modp.rank(p, f) < n:
                continue
            rhs = ((a_s - ident) @ (f @ d1.u0) + tail) % p
            b = np.concatenate([rhs, np.zeros(n, dtype=np.int64)])
            if modp.solve(p, stacked, b) is not None:
                return IsoReport(
                    True, f"invertible intertwiner for the exponent-{s} "
                          "presentation matches the base points", f)
    if capped:
        raise Undecided(
            f"an intertwiner space exceeds the cap {ISO_NULLSPACE_CAP}")
    return IsoReport(False, "no presentation admits an invertible intertwiner "
                            "matching the base points")


def _perm_pow(a: np.ndarray, s: int) -> np.ndarray:
    out = np.arange(a.shape[0], dtype=np.int32)
    for _ in range(s):
        out = a[out]
    return out


def _nonabelian_iso(d1: NonabelianVData, d2: NonabelianVData) -> IsoReport:
    """Scan the presentations of the second brace: replacing the generator
    by vt + s*x twists conjugation to inn_vt o A^s, raises the lambda
    restriction to A2^s, and shifts the base point conditions."""
    if d1.v.n != d2.v.n:
        return IsoReport(False, "the groups V have different orders")
    z1 = _semidirect_center(d1.v, d1.m, d1.a)
    z2 = _semidirect_center(d2.v, d2.m, d2.a)
    k = d1.m // len(z1)
    k2 = d2.m // len(z2)
    if k != k2:
        return IsoReport(False, f"k differs: {k} vs {k2}")
    kx1 = _kx_element(d1, z1, k)
    kx2 = _kx_element(d2, z2, k)
    if d1.v.n > ISO_TABLE_CAP:
        raise Undecided(f"|V| = {d1.v.n} exceeds the search cap {ISO_TABLE_CAP}")
    from .groups import _element_words, _generating_sequence
    v1, v2 = d1.v, d2.v
    gens = _generating_sequence(v1)
    words, order = _element_words(v1, gens)
    o1 = v1.element_orders()
    o2 = v2.element_orders()
    candidates = [
        [h for h in range(v2.n) if o2[h] == o1[g]] for g in gens]
    idx = np.arange(v2.n, dtype=np.int32)
    inner: dict[bytes, list[int]] = {}
    for t in range(v2.n):
        key = v2.table[v2.table[t, idx], v2.inv[t]].tobytes()
        inner.setdefault(key, []).append(t)

    def build(images: list[int]) -> np.ndarray:
        f = np.full(v1.n, -1, dtype=np.int32)
        f[0] = 0
        for e in order:
            if e == 0:
                continue
            prev, gi = words[e]
            f[e] = v2.table[f[prev], images[gi]]
        return f

    def ok(f: np.ndarray, s: int, a_s: np.ndarray, a_s_inv: np.ndarray,
           a2_s: np.ndarray, c_s: int) -> bool:
        if len(set(f.tolist())) != v1.n:
            return False
        if not np.array_equal(f[v1.table], v2.table[np.ix_(f, f)]):
            return False
        if not np.array_equal(f[d1.a2], a2_s[f]):
            return False
        # f o A o f^-1 o A^-s must be conjugation by some vt
        finv = np.argsort(f)
        cand = f[d1.a[finv]][a_s_inv]
        skx2 = 0
        for _ in range(s):
            skx2 = int(v2.table[skx2, kx2])
        fu = int(f[d1.u0])
        for vt in inner.get(cand.tobytes(), []):
            total = 0
            cur = vt
            for _ in range(k):
                total = int(v2.table[total, cur])
                cur = int(a_s[cur])
            if int(f[kx1]) != int(v2.table[total, skx2]):
                continue
            lhs = int(v2.table[v2.table[fu, vt], v2.inv[a_s[fu]]])
            rhs = int(v2.table[v2.table[a2_s[vt], c_s], v2.inv[a_s[c_s]]])
            if lhs == rhs:
                return True
        return False

    def dfs(pos: int, images: list[int], args) -> Optional[np.ndarray]:
        if pos == len(gens):
            f = build(images)
            return f if ok(f, *args) else None
        for h in candidates[pos]:
            got = dfs(pos + 1, images + [h], args)
            if got is not None:
                return got
        return None

    for s in range(1, k):
        if math.gcd(s, k) != 1:
            continue
        a_s = _perm_pow(d2.a, s)
        a2_s = _perm_pow(d2.a2, s)
        a_s_inv = np.argsort(a_s).astype(np.int32)
        c_s = 0
        u = int(d2.u0)
        for j in range(s):
            c_s = u if j == 0 else int(v2.table[u, c_s])
            u = int(d2.a2[u])
        f = dfs(0, [], (s, a_s, a_s_inv, a2_s, c_s))
        if f is not None:
            return IsoReport(
                True, f"intertwining group isomorphism found for the "
                      f"exponent-{s} presentation", f)
    return IsoReport(False, "no presentation admits a group isomorphism "
                            "intertwining A, A2 and the base points")


def _kx_element(d: NonabelianVData, center: list[tuple[int, int]], k: int) -> int:
    """The V-part of k*x in the central quotient; 0 when the product is
    centerless (then k = m and k*x = 0)."""
    if len(center) == 1:
        return 0
    for w, i in center:
        if (i + k) % d.m == 0:
            apow = np.arange(d.v.n, dtype=np.int32)
            for _ in range(k):
                apow = d.a[apow]
            return int(apow[w])
    raise ValidationError("no central element completes k*x")  # pragma: no cover


def iso_criterion(d1, d2) -> IsoReport:
    """Decide whether two construction data sets give isomorphic braces."""
    if isinstance(d1, AbelianVData) and isinstance(d2, AbelianVData):
        return _abelian_iso(d1, d2)
    if isinstance(d1, NonabelianVData) and isinstance(d2, NonabelianVData):
        return _nonabelian_iso(d1, d2)
    raise Undecided("mixed construction types are outside the criterion")


# ---------------------------------------------------------------------------
# named example data


def conjugation_quandle(g: TableGroup, rep: int) -> tuple[FinSolution, tuple[int, ...]]:
    """Conjugation solution on the class of ``rep`` in the trivial brace."""
    b = trivial_brace(g)
    cls = g.conjugacy_class(rep)
    if len(cls) < 2:
        raise ValidationError(f"element {rep} is central, its class is a point")
    return restricted_solution(b, cls)


def dihedral_reflection_build(p: int) -> AbelianVBuild:
    """Trivial brace on the dihedral group of order 2p; the restricted
    solution is the reflection (dihedral) quandle."""
    return abelian_v_build(abelian_v_data(p, 1, 2, [[-1]], [[1]], [0]))


def signed_rotation_build(p: int, n: int) -> AbelianVBuild:
    """A = A2 = the signed rotation (companion of t^n + 1), k = 2n, u0 = 0."""
    a = modp.companion_matrix(p, [1] + [0] * (n - 1) + [1])
    return abelian_v_build(abelian_v_data(p, n, 2 * n, a, a, np.zeros(n)))


def primitive_field_build(p: int, n: int) -> AbelianVBuild:
    """A = A2 = the companion of the first primitive degree-n polynomial,
    k = p^n - 1, u0 = 0."""
    target = p ** n - 1
    a = None
    for coeffs in modp.monic_irreducibles(p, n):
        cand = modp.companion_matrix(p, coeffs)
        if modp.mat_order(p, cand) == target:
            a = cand
            break
    if a is None:
        raise ConstructionRejected(
            "primitive polynomial", f"no primitive polynomial of degree {n} mod {p}")
    return abelian_v_build(abelian_v_data(p, n, target, a, a, np.zeros(n)))


def symmetric_type_build(n: int) -> NonabelianVBuild:
    """V = Alt(n) with A = A2 = conjugation by a transposition, m = 2; for
    n >= 5 the central quotient is the symmetric group with its unique
    brace structure of this shape."""
    v, elements = alternating_group(n)
    c = tuple([1, 0] + list(range(2, n)))
    conj = conj_automorphism(elements, c)
    blocks = (tuple(range(v.n)),) if n >= 5 else None
    data = nonabelian_v_data(
        v, 2, conj, conj, 0, factor_blocks=blocks,
        char_simple_source="simple alternating group" if n >= 5 else
        "not characteristically simple")
    return nonabelian_v_build(data)


def _alt5_with_elements() -> tuple[TableGroup, tuple]:
    return alternating_group(5)


def power_rotation_build(n: int, group: str = "alt5") -> NonabelianVBuild:
    """V = S^n with the plain rotation A, stepped conjugation twists on A2,
    and the power sequence of an order-n element as the base point."""
    if group != "alt5":
        raise ValidationError("only the alternating group on 5 points is wired in")
    s, elements = _alt5_with_elements()
    a_elem = None
    for i, e in enumerate(elements):
        if i and perm_order(e) == n:
            a_elem = i
            break
    if a_elem is None:
        raise ConstructionRejected("order-n element",
                                   f"no element of order {n} in the factor")
    v = direct_power(s, n)
    source = [n - 1] + list(range(n - 1))
    rot = power_automorphism(s.n, n, source, [None] * n)
    twists = []
    power = 0
    for j in range(n):
        twists.append(None if power == 0 else
                      conj_automorphism(elements, elements[power]))
        power = int(s.table[power, a_elem])
    stepped = power_automorphism(s.n, n, list(range(n)), twists)
    digits = []
    power = 0
    for j in range(n):
        digits.append(power)
        power = int(s.table[power, a_elem])
    u0 = 0
    for dgt in digits:
        u0 = u0 * s.n + dgt
    blocks = tuple(tuple(dd * s.n ** (n - 1 - j) for dd in range(s.n))
                   for j in range(n))
    data = nonabelian_v_data(v, n, rot, stepped, u0, factor_blocks=blocks,
                             char_simple_source="power of a simple group")
    return nonabelian_v_build(data)


def twisted_rotation_build(m: int, n: int) -> NonabelianVBuild:
    """V = Alt(m)^n with A = A2 = rotation twisted by conjugation with a
    transposition in one slot, cyclic part of order 2n, u0 = 0."""
    if n < 2:
        raise ConstructionRejected("n > 1", f"n={n}")
    s, elements = alternating_group(m)
    c = tuple([1, 0] + list(range(2, m)))
    gamma = conj_automorphism(elements, c)
    v = direct_power(s, n)
    source = [n - 1] + list(range(n - 1))
    twists: list[Optional[np.ndarray]] = [None] * n
    twists[1] = gamma
    aut = power_automorphism(s.n, n, source, twists)
    blocks = tuple(tuple(dd * s.n ** (n - 1 - j) for dd in range(s.n))
                   for j in range(n))
    data = nonabelian_v_data(v, 2 * n, aut, aut, 0, factor_blocks=blocks,
                             char_simple_source="power of a simple group")
    return nonabelian_v_build(data)


def projective_group_168() -> TableGroup:
    """The simple group of order 168 acting on the 7 nonzero vectors of
    F_2^3, as a table group."""
    pts = [np.array([(i >> t) & 1 for t in range(3)], dtype=np.int64)
           for i in range(1, 8)]
    index = {tuple(int(x) for x in v): i for i, v in enumerate(pts)}

    def perm_of(mat: np.ndarray) -> tuple[int, ...]:
        return tuple(index[tuple(int(x) for x in (mat @ v) % 2)] for v in pts)

    comp = modp.companion_matrix(2, [1, 1, 0, 1])
    trans = modp.identity(3)
    trans[0, 1] = 1
    g = closure([perm_of(comp), perm_of(trans % 2)], 7)
    if g.order != 168:
        raise ValidationError(f"closure has order {g.order}, expected 168")
    table, _ = g.to_table()
    return table


def _named_group(name: str) -> TableGroup:
    name = name.lower()
    if name.startswith("z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if name.startswith("s") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))[0]
    if name.startswith("a") and name[1:].isdigit():
        return alternating_group(int(name[1:]))[0]
    if name.startswith("d") and name[1:].isdigit():
        half = int(name[1:])
        inv = (-np.arange(half, dtype=np.int32)) % half
        return semidirect_product(cyclic_group(half), 2, inv)
    if name in ("psl27", "gl32"):
        return projective_group_168()
    raise ValidationError(f"unknown group name {name!r}")


def build_example(name: str, **params):
    """Dispatch for the named example families; returns the family's build
    record (or a bare solution for quandle and translation examples)."""
    if name not in EXAMPLES:
        raise ValidationError(
            f"unknown example {name!r}; known: {', '.join(sorted(EXAMPLES))}")
    return EXAMPLES[name](**params)


def _conj_quandle_example(group: str = "s3", element: int = 1):
    sol, xs = conjugation_quandle(_named_group(group), element)
    return sol


EXAMPLES: dict[str, Callable] = {
    "conj_quandle": _conj_quandle_example,
    "dihedral": dihedral_reflection_build,
    "ex_ab": signed_rotation_build,
    "field_example": primitive_field_build,
    "sym_n": symmetric_type_build,
    "an_pr": twisted_rotation_build,
    "ex1": power_rotation_build,
    "lyubashenko": lyubashenko_build,
}
