"""Finite skew left braces as a pair of group tables on one carrier.

A brace here is (B, +, o) with both operations given as full tables over
0..n-1, sharing the identity 0, and a o (b + c) = a o b - a + a o c.  The
lambda, sigma and star tables are derived and cached.  Ideals, quotients,
the solution attached to a brace, and the permutation brace of a solution
all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapExceeded, Undecided, ValidationError
from .groups import (ISO_ORDER_CAP, TABLE_VALIDATION_CAP, Partition, Perm,
                     TableGroup, _element_words, _generating_sequence,
                     compose, element_cap, identity_perm, inverse, orbits,
                     quotient_group)
from .solutions import FinSolution, profile, sigma_table, validate_solution


class SkewBrace:
    """Validated skew left brace; construct through :func:`validate_brace`."""

    __slots__ = ("n", "add", "mul", "lam", "sig", "star")

    def __init__(self, add: TableGroup, mul: TableGroup, lam, sig, star,
                 _checked: bool = False):
        if not _checked:
            raise ValidationError("use validate_brace to build a SkewBrace")
        self.n = add.n
        self.add = add
        self.mul = mul
        for t in (lam, sig, star):
            t.setflags(write=False)
        self.lam = lam
        self.sig = sig
        self.star = star

    @property
    def neg(self) -> np.ndarray:
        return self.add.inv

    def is_trivial(self) -> bool:
        return bool(np.array_equal(self.add.table, self.mul.table))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SkewBrace) and self.n == other.n
                and np.array_equal(self.add.table, other.add.table)
                and np.array_equal(self.mul.table, other.mul.table))

    def __hash__(self):
        return hash((self.n, self.add.table.tobytes(), self.mul.table.tobytes()))

    def __repr__(self) -> str:
        return f"SkewBrace(order={self.n})"


def _derived_tables(add: TableGroup, mul: TableGroup):
    n = add.n
    idx = np.arange(n, dtype=np.int32)
    lam = add.table[add.inv[:, None], mul.table]          # lam[a,b] = -a + a o b
    t1 = add.table[add.inv]                               # t1[b,a] = -b + a
    sig = add.table[t1, idx[:, None]]                     # sig[b,a] = -b + a + b
    star = add.table[lam, add.inv[None, :]]               # star[a,b] = lam_a(b) - b
    return lam, sig, star


def validate_brace(add_table, mul_table, *, trusted: bool = False) -> SkewBrace:
    """Check both group axioms, the shared identity, and compatibility
    a o (b + c) = a o b - a + a o c; derive lambda, sigma, star."""
    add = add_table if isinstance(add_table, TableGroup) else TableGroup(
        add_table, trusted=trusted)
    mul = mul_table if isinstance(mul_table, TableGroup) else TableGroup(
        mul_table, trusted=trusted)
    if add.n != mul.n:
        raise ValidationError(f"carriers differ: {add.n} vs {mul.n}")
    n = add.n
    lam, sig, star = _derived_tables(add, mul)
    if not trusted:
        at, mt = add.table, mul.table
        idx = np.arange(n, dtype=np.int32)
        for a in range(n):
            lhs = mt[a][at]                                   # a o (b + c)
            u = at[mt[a], add.inv[a]]                         # u[b] = a o b - a
            rhs = at[u[:, None], mt[a][None, :]]
            if not np.array_equal(lhs, rhs):
                where = np.argwhere(lhs != rhs)[0]
                b, c = int(where[0]), int(where[1])
                raise ValidationError(
                    f"brace compatibility fails at (a,b,c)=({a},{b},{c}): "
                    f"a o (b+c) = {lhs[b, c]} but a o b - a + a o c = {rhs[b, c]}",
                    witness=(a, b, c))
        # lambda_a is an automorphism of (B, +); sigma is an anti-action.
        sorted_rows = np.sort(lam, axis=1)
        bad = np.flatnonzero((sorted_rows != idx[None, :]).any(axis=1))
        if bad.size:
            raise ValidationError(f"lambda_{int(bad[0])} is not bijective",
                                  witness=int(bad[0]))
        for a in range(n):
            la = lam[a]
            if not np.array_equal(la[at], at[np.ix_(la, la)]):
                where = np.argwhere(la[at] != at[np.ix_(la, la)])[0]
                raise ValidationError(
                    f"lambda_{a} is not additive at ({int(where[0])},{int(where[1])})",
                    witness=(a, int(where[0]), int(where[1])))
        for a in range(n):
            lhs = sig[:, sig[a]]                              # sig_b(sig_a(x))
            rhs = sig[at[a]]                                  # sig_{a+b}(x)
            if not np.array_equal(lhs, rhs):
                where = np.argwhere(lhs != rhs)[0]
                raise ValidationError(
                    f"sigma anti-action fails at a={a}, b={int(where[0])}",
                    witness=(a, int(where[0])))
    return SkewBrace(add, mul, lam, sig, star, _checked=True)


def trivial_brace(g: TableGroup) -> SkewBrace:
    """add = mul = g; the attached solution is conjugation."""
    return validate_brace(g, g)


def almost_trivial_brace(g: TableGroup) -> SkewBrace:
    """add = opposite of mul; the attached solution acts by left conjugation
    in the first coordinate."""
    opposite = TableGroup(np.ascontiguousarray(g.table.T),
                          trusted=g.n > TABLE_VALIDATION_CAP)
    return validate_brace(opposite, g)


@dataclass(frozen=True)
class Ideal:
    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    def is_zero(self) -> bool:
        return self.elements == (0,)

    def __contains__(self, a: int) -> bool:
        return a in set(self.elements)


def validate_ideal(b: SkewBrace, subset: Iterable[int]) -> Ideal:
    """Check the subset is a lambda-invariant normal additive subgroup that
    absorbs star on the right; raise with a witness otherwise."""
    elems = sorted(set(int(x) for x in subset))
    arr = np.array(elems, dtype=np.int32)
    mask = np.zeros(b.n, dtype=bool)
    mask[arr] = True
    if not b.add.is_subgroup(elems):
        raise ValidationError(f"{elems} is not an additive subgroup", witness=tuple(elems))
    if not b.add.is_normal(elems):
        raise ValidationError(f"{elems} is not normal in (B,+)", witness=tuple(elems))
    lam_hits = b.lam[:, arr]
    if not mask[lam_hits].all():
        a, j = np.argwhere(~mask[lam_hits])[0]
        raise ValidationError(
            f"not lambda-invariant: lambda_{int(a)}({elems[int(j)]}) leaves the subset",
            witness=(int(a), elems[int(j)]))
    star_hits = b.star[arr, :]
    if not mask[star_hits].all():
        i, t = np.argwhere(~mask[star_hits])[0]
        raise ValidationError(
            f"not star-absorbing: {elems[int(i)]} * {int(t)} leaves the subset",
            witness=(elems[int(i)], int(t)))
    return Ideal(tuple(elems))


def ideal_closure(b: SkewBrace, seed: Iterable[int]) -> Ideal:
    """Smallest ideal containing the seed, by worklist saturation."""
    member = np.zeros(b.n, dtype=bool)
    member[0] = True
    queue = [int(s) for s in set(seed) if not member[s]]
    for s in queue:
        member[s] = True
    at = b.add.table
    neg = b.add.inv
    idx = np.arange(b.n, dtype=np.int32)
    while queue and not member.all():
        s = queue.pop()
        here = np.flatnonzero(member)
        conj = at[at[neg, s], idx]          # -t + s + t over all t
        cands = np.concatenate((
            at[s, here], at[here, s], np.array([neg[s]], dtype=np.int32),
            conj, b.lam[:, s], b.star[s, :]))
        for v in np.unique(cands):
            if not member[v]:
                member[v] = True
                queue.append(int(v))
    return Ideal(tuple(int(v) for v in np.flatnonzero(member)))


def smallest_nonzero_ideal(b: SkewBrace) -> Optional[Ideal]:
    """The minimum nonzero ideal if one exists, else None.  Every nonzero
    ideal contains the closure of any of its nonzero elements, so it is
    enough to compare single-element closures."""
    if b.n == 1:
        return None
    closures: dict[tuple[int, ...], Ideal] = {}
    for a in range(1, b.n):
        ideal = ideal_closure(b, {a})
        closures[ideal.elements] = ideal
    best = min(closures.values(), key=lambda i: i.size)
    best_set = set(best.elements)
    for other in closures.values():
        if not best_set.issubset(other.elements):
            return None
    return best


@dataclass(frozen=True)
class BraceInvariants:
    socle: Ideal
    b2: Ideal
    b3: Ideal
    add_center: tuple[int, ...]
    is_trivial: bool
    is_cyclic_type: bool


def brace_invariants(b: SkewBrace) -> BraceInvariants:
    """Socle, the star-generated ideals B2 and B3, and additive facts."""
    idx = np.arange(b.n, dtype=np.int32)
    socle_mask = ((b.lam == idx[None, :]).all(axis=1)
                  & (b.sig == idx[None, :]).all(axis=1))
    socle = validate_ideal(b, [int(v) for v in np.flatnonzero(socle_mask)])
    b2_elems = b.add.subgroup_closure(set(int(v) for v in np.unique(b.star)))
    b2 = validate_ideal(b, b2_elems)
    b2_arr = np.array(b2.elements, dtype=np.int32)
    b3_seed = set(int(v) for v in np.unique(b.star[b2_arr, :]))
    b3 = validate_ideal(b, b.add.subgroup_closure(b3_seed))
    if not set(b3.elements).issubset(b2.elements):
        raise ValidationError("B3 escaped B2")  # pragma: no cover
    return BraceInvariants(socle=socle, b2=b2, b3=b3,
                           add_center=b.add.center(),
                           is_trivial=b.is_trivial(),
                           is_cyclic_type=b.add.is_cyclic())


def quotient_brace(b: SkewBrace, ideal: Ideal) -> tuple[SkewBrace, np.ndarray]:
    """Quotient by an ideal; returns (brace, projection).  Cosets are
    indexed by ascending least member, and multiplicative well-definedness
    is verified on the full tables."""
    ideal = validate_ideal(b, ideal.elements)
    addq, proj = quotient_group(b.add, ideal.elements)
    reps = np.unique(proj, return_index=True)[1].astype(np.int32)
    mulq = proj[b.mul.table[np.ix_(reps, reps)]]
    full = proj[b.mul.table]
    lifted = mulq[proj[:, None], proj[None, :]]
    if not np.array_equal(full, lifted):
        where = np.argwhere(full != lifted)[0]
        raise ValidationError(
            f"multiplication does not descend at ({int(where[0])},{int(where[1])})",
            witness=(int(where[0]), int(where[1])))
    return validate_brace(addq.table, mulq), proj


def associated_solution(b: SkewBrace) -> FinSolution:
    """The solution on the whole carrier: r(a,b) = (lam_a(b), rho_b(a)) with
    rho_b(a) = (lam_a(b))^{-1} o a o b, inverses in (B, o)."""
    n = b.n
    idx = np.arange(n, dtype=np.int32)
    s1 = b.mul.inv[b.lam]
    s2 = b.mul.table[s1, idx[:, None]]
    s3 = b.mul.table[s2, idx[None, :]]
    return validate_solution(b.lam.copy(), np.ascontiguousarray(s3.T))


def restricted_solution(b: SkewBrace, subset: Iterable[int]) -> tuple[FinSolution, tuple[int, ...]]:
    """Solution induced on an invariant subset (invariance under every
    lambda_a and sigma_a is checked)."""
    xs = sorted(set(int(x) for x in subset))
    if not xs:
        raise ValidationError("empty subset")
    arr = np.array(xs, dtype=np.int32)
    mask = np.zeros(b.n, dtype=bool)
    mask[arr] = True
    lam_hits = b.lam[:, arr]
    if not mask[lam_hits].all():
        a, j = np.argwhere(~mask[lam_hits])[0]
        raise ValidationError(
            f"subset not invariant: lambda_{int(a)}({xs[int(j)]}) leaves it",
            witness=(int(a), xs[int(j)]))
    sig_hits = b.sig[:, arr]
    if not mask[sig_hits].all():
        a, j = np.argwhere(~mask[sig_hits])[0]
        raise ValidationError(
            f"subset not invariant: sigma_{int(a)}({xs[int(j)]}) leaves it",
            witness=(int(a), xs[int(j)]))
    pos = np.full(b.n, -1, dtype=np.int32)
    pos[arr] = np.arange(len(xs), dtype=np.int32)
    lam_x = pos[b.lam[np.ix_(arr, arr)]]
    s1 = b.mul.inv[b.lam[np.ix_(arr, arr)]]
    s2 = b.mul.table[s1, arr[:, None]]
    s3 = b.mul.table[s2, arr[None, :]]
    rho_x = pos[np.ascontiguousarray(s3.T)]
    return validate_solution(lam_x, rho_x), tuple(xs)


# ---------------------------------------------------------------------------
# permutation brace of a solution


@dataclass(frozen=True)
class PermutationBrace:
    """The brace generated by the pairs (sigma_x^{-1}, lambda_x)."""

    brace: SkewBrace
    x_to_element: np.ndarray
    pairs: tuple[tuple[Perm, Perm], ...]

    def sigma_perm(self, element: int) -> Perm:
        """sigma of a brace element, as a permutation of the solution."""
        return inverse(self.pairs[element][0])

    def lambda_perm(self, element: int) -> Perm:
        return self.pairs[element][1]


def _pair_mul(a: tuple[Perm, Perm], b: tuple[Perm, Perm]) -> tuple[Perm, Perm]:
    s, l = a
    s2, l2 = b
    return compose(s, compose(l, compose(s2, inverse(l)))), compose(l, l2)


def permutation_brace(s: FinSolution) -> PermutationBrace:
    """Close the defining pairs multiplicatively, recover addition from
    g + h_x = g o h_{lambda_g^{-1}(x)}, and validate the result.

    Word-independence of the recovered addition is asserted: appending a
    generator commutes with every left translate."""
    n_pts = s.n
    sig = sigma_table(s)
    gens: list[tuple[Perm, Perm]] = []
    for x in range(n_pts):
        sx = tuple(int(v) for v in sig[x])
        lx = tuple(int(v) for v in s.lam[x])
        gens.append((inverse(sx), lx))
    distinct = sorted(set(gens))
    cap = element_cap()
    elements = set(distinct)
    frontier = list(distinct)
    while frontier:
        if len(elements) > cap:
            raise CapExceeded(f"permutation brace closure exceeded cap {cap}")
        new = []
        for g in distinct:
            for h in frontier:
                prod = _pair_mul(g, h)
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
        frontier = new
    ident = (identity_perm(n_pts), identity_perm(n_pts))
    if ident not in elements:
        raise ValidationError("closure of a finite set of pairs missed the identity")
    ordered = [ident] + sorted(p for p in elements if p != ident)
    index = {p: i for i, p in enumerate(ordered)}
    n = len(ordered)
    mul = np.empty((n, n), dtype=np.int32)
    for i, g in enumerate(ordered):
        for j, h in enumerate(ordered):
            mul[i, j] = index[_pair_mul(g, h)]
    hidx = np.array([index[g] for g in gens], dtype=np.int32)
    linv = np.empty((n, n_pts), dtype=np.int32)
    for i, (_, l) in enumerate(ordered):
        linv[i] = inverse(l)
    # g + h_x = g o h_{lambda_g^{-1}(x)}
    step = mul[np.arange(n)[:, None], hidx[linv]]
    parent = np.full(n, -1, dtype=np.int32)
    lastgen = np.full(n, -1, dtype=np.int32)
    bfs = [0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    head = 0
    while head < len(bfs):
        u = bfs[head]
        head += 1
        for x in range(n_pts):
            v = int(step[u, x])
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                lastgen[v] = x
                bfs.append(v)
    if not seen.all():
        raise ValidationError("additive words in the generators do not reach "
                              "every multiplicative element")
    add = np.empty((n, n), dtype=np.int32)
    add[:, 0] = np.arange(n, dtype=np.int32)
    for v in bfs[1:]:
        add[:, v] = step[add[:, parent[v]], lastgen[v]]
    # word-independence: extending by a generator commutes with translation
    for x in range(n_pts):
        if not np.array_equal(add[:, step[:, x]], step[add, x]):
            raise ValidationError(
                "recovered addition is word-dependent; the input tables do "
                "not form a solution", witness=x)
    brace = validate_brace(add, mul, trusted=n > TABLE_VALIDATION_CAP)
    return PermutationBrace(brace=brace, x_to_element=hidx,
                            pairs=tuple(ordered))


# ---------------------------------------------------------------------------
# simplicity criteria


@dataclass(frozen=True)
class MinIdealReport:
    """Simplicity test for a solution through its permutation brace."""

    applies: bool
    irretractable: Optional[bool]
    d_is_min_ideal: Optional[bool]
    dd_transitive: Optional[bool]
    verdict: Optional[bool]
    permbrace: Optional[PermutationBrace]
    d_ideal: Optional[Ideal]


def simplicity_by_min_ideal(s: FinSolution) -> MinIdealReport:
    """Decide simplicity of a non-permutation solution: it must be
    irretractable, the difference ideal of its permutation brace must be
    the smallest nonzero ideal, and the difference ideal paired with its
    sigma image must act transitively."""
    lam_const = bool((s.lam == s.lam[0]).all())
    rho_const = bool((s.rho == s.rho[0]).all())
    if lam_const and rho_const:
        return MinIdealReport(applies=False, irretractable=None, d_is_min_ideal=None,
                              dd_transitive=None, verdict=None, permbrace=None,
                              d_ideal=None)
    pb = permutation_brace(s)
    b = pb.brace
    irretractable = profile(s).irretractable
    hs = np.unique(pb.x_to_element)
    diffs = np.unique(b.add.table[np.ix_(hs, b.add.inv[hs])])
    d_elems = b.add.subgroup_closure(set(int(v) for v in diffs))
    d_ideal = validate_ideal(b, d_elems)
    minimal = smallest_nonzero_ideal(b)
    d_is_min = (minimal is not None and not d_ideal.is_zero()
                and minimal.elements == d_ideal.elements)
    gen_perms = set()
    for d in d_ideal.elements:
        sig_d = pb.sigma_perm(d)
        for d2 in d_ideal.elements:
            gen_perms.add(compose(sig_d, pb.lambda_perm(d2)))
    transitive = orbits(sorted(gen_perms), s.n).is_single_class()
    verdict = bool(irretractable and d_is_min and transitive)
    return MinIdealReport(applies=True, irretractable=irretractable,
                          d_is_min_ideal=d_is_min, dd_transitive=transitive,
                          verdict=verdict, permbrace=pb, d_ideal=d_ideal)


@dataclass(frozen=True)
class GeneratingSubsetReport:
    """Simplicity test for the solution a brace induces on a subset."""

    generates: bool
    v_is_min: bool
    v_transitive: bool
    verdict: bool
    v_ideal: Ideal
    solution: FinSolution
    x_set: tuple[int, ...]


def simplicity_by_generators(b: SkewBrace, subset: Iterable[int]) -> GeneratingSubsetReport:
    """For an invariant subset X of at least two elements: X must generate
    (B, +), the difference ideal V must sit inside every single-element
    ideal closure, and V must move X transitively."""
    solution, xs = restricted_solution(b, subset)
    if len(xs) < 2:
        raise ValidationError("the subset needs at least two elements")
    arr = np.array(xs, dtype=np.int32)
    generates = len(b.add.subgroup_closure(xs)) == b.n
    diffs = np.unique(b.add.table[np.ix_(arr, b.add.inv[arr])])
    v_ideal = ideal_closure(b, set(int(v) for v in diffs))
    v_set = set(v_ideal.elements)
    v_is_min = not v_ideal.is_zero()
    if v_is_min:
        for a in range(1, b.n):
            if not v_set.issubset(ideal_closure(b, {a}).elements):
                v_is_min = False
                break
    pos = np.full(b.n, -1, dtype=np.int32)
    pos[arr] = np.arange(len(xs), dtype=np.int32)
    gen_perms = set()
    for v in v_ideal.elements:
        moved = b.sig[v]
        for w in v_ideal.elements:
            gen_perms.add(tuple(int(t) for t in pos[moved[b.lam[w, arr]]]))
    transitive = orbits(sorted(gen_perms), len(xs)).is_single_class()
    verdict = bool(generates and v_is_min and transitive)
    return GeneratingSubsetReport(generates=generates, v_is_min=v_is_min,
                                  v_transitive=transitive, verdict=verdict,
                                  v_ideal=v_ideal, solution=solution, x_set=xs)


def brace_isomorphic(b1: SkewBrace, b2: SkewBrace,
                     cap: int = ISO_ORDER_CAP) -> Optional[np.ndarray]:
    """Carrier bijection preserving both tables, or None; Undecided above
    the order cap.  Backtracks over images of an additive generating
    sequence, pruned by (additive order, multiplicative order) profiles."""
    if b1.n != b2.n:
        return None
    if b1.n > cap:
        raise Undecided(f"brace isomorphism capped at order {cap}, got {b1.n}")
    p1 = list(zip(b1.add.element_orders().tolist(), b1.mul.element_orders().tolist()))
    p2 = list(zip(b2.add.element_orders().tolist(), b2.mul.element_orders().tolist()))
    if sorted(p1) != sorted(p2):
        return None
    gens = _generating_sequence(b1.add)
    words, bfs_order = _element_words(b1.add, gens)
    candidates = [[x for x in range(b2.n) if p2[x] == p1[a]] for a in gens]

    def build(images: list[int]) -> Optional[np.ndarray]:
        phi = np.full(b1.n, -1, dtype=np.int32)
        phi[0] = 0
        for a in bfs_order:
            if a == 0:
                continue
            parent, gi = words[a]
            phi[a] = b2.add.table[phi[parent], images[gi]]
        if len(set(phi.tolist())) != b1.n:
            return None
        if (np.array_equal(phi[b1.add.table], b2.add.table[np.ix_(phi, phi)])
                and np.array_equal(phi[b1.mul.table], b2.mul.table[np.ix_(phi, phi)])):
            return phi
        return None

    def dfs(pos: int, images: list[int]) -> Optional[np.ndarray]:
        if pos == len(gens):
            return build(images)
        for cand in candidates[pos]:
            images.append(cand)
            found = dfs(pos + 1, images)
            if found is not None:
                return found
            images.pop()
        return None

    return dfs(0, [])
