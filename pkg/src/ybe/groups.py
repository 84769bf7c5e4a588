"""Permutations, generated permutation groups, and finite groups as tables.

Permutations are tuples of images on 0..n-1.  Groups come in two flavours:
``GenGroup`` (a closed set of permutations) and ``TableGroup`` (an explicit
multiplication table with the identity normalized to index 0).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapExceeded, Undecided, ValidationError

Perm = tuple[int, ...]

DEFAULT_ELEMENT_CAP = 10**6

# Full associativity checking is O(n^3); above this order callers must opt in
# with trusted=True.
TABLE_VALIDATION_CAP = 512

ISO_ORDER_CAP = 400


def element_cap() -> int:
    """Closure size cap, overridable through YBE_ELEMENT_CAP."""
    raw = os.environ.get("YBE_ELEMENT_CAP")
    return int(raw) if raw else DEFAULT_ELEMENT_CAP


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def is_perm(seq: Sequence[int], n: int) -> bool:
    return len(seq) == n and sorted(seq) == list(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q: (p*q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, image in enumerate(p):
        inv[image] = i
    return tuple(inv)


def perm_power(p: Perm, e: int) -> Perm:
    n = len(p)
    if e < 0:
        return perm_power(inverse(p), -e)
    result = identity_perm(n)
    base = p
    while e:
        if e & 1:
            result = compose(base, result)
        base = compose(base, base)
        e >>= 1
    return result


def perm_order(p: Perm) -> int:
    n = len(p)
    q = p
    k = 1
    while q != identity_perm(n):
        q = compose(p, q)
        k += 1
    return k


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Sorted cycle lengths, fixed points included."""
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def perm_from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """Build a permutation of 0..n-1 from disjoint cycles."""
    img = list(range(n))
    for cycle in cycles:
        for i, a in enumerate(cycle):
            img[a] = cycle[(i + 1) % len(cycle)]
    if not is_perm(img, n):
        raise ValueError(f"cycles {cycles} are not disjoint on 0..{n - 1}")
    return tuple(img)


class _UnionFind:
    """Array union-find with path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.classes = n

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.classes -= 1
        return True


class Partition:
    """Partition of 0..n-1 in canonical form: rep[i] is the least member
    of the class of i."""

    __slots__ = ("n", "rep")

    def __init__(self, rep: Sequence[int]):
        self.n = len(rep)
        self.rep = tuple(rep)

    @classmethod
    def from_union_find(cls, uf: _UnionFind) -> "Partition":
        n = len(uf.parent)
        least: dict[int, int] = {}
        rep = [0] * n
        for i in range(n):
            root = uf.find(i)
            if root not in least:
                least[root] = i
            rep[i] = least[root]
        return cls(rep)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        least: dict = {}
        rep = [0] * len(labels)
        for i, lab in enumerate(labels):
            if lab not in least:
                least[lab] = i
            rep[i] = least[lab]
        return cls(rep)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(range(n))

    def classes(self) -> list[list[int]]:
        by_rep: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            by_rep.setdefault(r, []).append(i)
        return [by_rep[r] for r in sorted(by_rep)]

    @property
    def num_classes(self) -> int:
        return len(set(self.rep))

    def is_discrete(self) -> bool:
        return all(r == i for i, r in enumerate(self.rep))

    def is_single_class(self) -> bool:
        return self.num_classes == 1

    def index_map(self) -> dict[int, int]:
        """Class representative -> dense index, ordered by representative."""
        return {r: j for j, r in enumerate(sorted(set(self.rep)))}

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.rep == other.rep

    def __hash__(self) -> int:
        return hash(self.rep)

    def __repr__(self) -> str:
        return f"Partition({self.classes()})"


class GenGroup:
    """A permutation group stored as its full sorted element list."""

    def __init__(self, degree: int, gens: tuple[Perm, ...], elements: tuple[Perm, ...]):
        self.degree = degree
        self.gens = gens
        self.elements = elements
        self._index = {p: i for i, p in enumerate(elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self._index

    def index(self, p: Perm) -> int:
        return self._index[p]

    def is_transitive(self) -> bool:
        return orbits(self.gens, self.degree).is_single_class()

    def is_cyclic(self) -> bool:
        return any(perm_order(p) == self.order for p in self.elements)

    def to_table(self) -> tuple["TableGroup", tuple[Perm, ...]]:
        """Multiplication table over the element list, identity first.

        Elements are ordered with the identity at index 0 and the rest
        sorted, so the table meets the identity-at-0 convention.
        """
        ident = identity_perm(self.degree)
        ordered = (ident,) + tuple(sorted(p for p in self.elements if p != ident))
        pos = {p: i for i, p in enumerate(ordered)}
        m = len(ordered)
        table = np.empty((m, m), dtype=np.int32)
        for i, p in enumerate(ordered):
            for j, q in enumerate(ordered):
                table[i, j] = pos[compose(p, q)]
        return TableGroup(table), ordered


def closure(gens: Iterable[Perm], degree: int, cap: Optional[int] = None) -> GenGroup:
    """Close a generator set under composition (hence under inversion)."""
    cap = element_cap() if cap is None else cap
    gens = tuple(tuple(g) for g in gens)
    for g in gens:
        if not is_perm(g, degree):
            raise ValidationError(f"generator {g} is not a permutation of 0..{degree - 1}",
                                  witness=g)
    ident = identity_perm(degree)
    elements = {ident}
    frontier = [g for g in gens if g != ident]
    elements.update(frontier)
    while frontier:
        if len(elements) > cap:
            raise CapExceeded(f"closure exceeded cap {cap} at degree {degree}")
        new = []
        for g in gens:
            for h in frontier:
                prod = compose(g, h)
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
        frontier = new
    if len(elements) > cap:
        raise CapExceeded(f"closure exceeded cap {cap} at degree {degree}")
    return GenGroup(degree, gens, tuple(sorted(elements)))


def orbits(gens: Iterable[Perm], degree: int) -> Partition:
    """Orbit partition of the generated group, by union-find; no closure."""
    uf = _UnionFind(degree)
    for g in gens:
        for i in range(degree):
            uf.union(i, g[i])
    return Partition.from_union_find(uf)


def is_primitive(group: GenGroup) -> bool:
    """True when the action is transitive and admits no nontrivial block
    system.  Intransitive input yields False."""
    n = group.degree
    if not group.is_transitive():
        return False
    if n <= 2:
        return True
    gens = group.gens
    for beta in range(1, n):
        # finest block system whose block contains {0, beta}
        uf = _UnionFind(n)
        uf.union(0, beta)
        queue = [(0, beta)]
        while queue:
            a, b = queue.pop()
            for g in gens:
                if uf.union(g[a], g[b]):
                    queue.append((g[a], g[b]))
        if uf.classes > 1:
            return False
    return True


def _first_mismatch(a: np.ndarray, b: np.ndarray) -> tuple[int, ...]:
    where = np.argwhere(a != b)
    return tuple(int(v) for v in where[0])


class TableGroup:
    """Finite group given by its full multiplication table.

    The identity must sit at index 0.  Associativity is checked in full for
    orders up to TABLE_VALIDATION_CAP; larger tables require trusted=True.
    """

    __slots__ = ("n", "table", "inv", "_orders")

    def __init__(self, table, *, trusted: bool = False):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValidationError(f"multiplication table must be square, got {table.shape}")
        n = table.shape[0]
        if n == 0:
            raise ValidationError("empty carrier")
        if table.min() < 0 or table.max() >= n:
            bad = _first_mismatch(np.clip(table, 0, n - 1), table)
            raise ValidationError(f"table entry out of range at {bad}", witness=bad)
        self.n = n
        idx = np.arange(n, dtype=np.int32)
        if not np.array_equal(table[0], idx):
            j = _first_mismatch(table[0], idx)[0]
            raise ValidationError(f"0 is not a left identity: 0*{j} = {table[0, j]}",
                                  witness=(0, j))
        if not np.array_equal(table[:, 0], idx):
            i = _first_mismatch(table[:, 0], idx)[0]
            raise ValidationError(f"0 is not a right identity: {i}*0 = {table[i, 0]}",
                                  witness=(i, 0))
        inv = np.full(n, -1, dtype=np.int32)
        for a in range(n):
            hits = np.flatnonzero(table[a] == 0)
            if hits.size == 0:
                raise ValidationError(f"element {a} has no right inverse", witness=a)
            b = int(hits[0])
            if table[b, a] != 0:
                raise ValidationError(f"inverse of {a} is one-sided", witness=(a, b))
            inv[a] = b
        if not trusted:
            if n > TABLE_VALIDATION_CAP:
                raise CapExceeded(
                    f"order {n} exceeds full-validation cap {TABLE_VALIDATION_CAP}; "
                    "pass trusted=True for tables produced by verified builders")
            for a in range(n):
                left = table[table[a], :]
                right = table[a][table]
                if not np.array_equal(left, right):
                    b, c = _first_mismatch(left, right)
                    raise ValidationError(
                        f"associativity fails at ({a},{b},{c}): "
                        f"({a}*{b})*{c} = {left[b, c]} but {a}*({b}*{c}) = {right[b, c]}",
                        witness=(a, b, c))
        table.setflags(write=False)
        inv.setflags(write=False)
        self.table = table
        self.inv = inv
        self._orders = None

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse_of(self, a: int) -> int:
        return int(self.inv[a])

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.n
            orders = np.ones(n, dtype=np.int32)
            power = np.arange(n, dtype=np.int32)
            alive = power != 0
            k = 1
            while alive.any():
                power = self.table[power, np.arange(n)]
                k += 1
                done = alive & (power == 0)
                orders[done] = k
                alive &= power != 0
            self._orders = orders
        return self._orders

    def order_of(self, a: int) -> int:
        return int(self.element_orders()[a])

    def center(self) -> tuple[int, ...]:
        mask = (self.table == self.table.T).all(axis=1)
        return tuple(int(i) for i in np.flatnonzero(mask))

    def commutator_subgroup(self) -> tuple[int, ...]:
        t = self.table
        inv = self.inv
        comms = t[t[np.ix_(inv, inv)], t]
        return self.subgroup_closure(set(int(v) for v in np.unique(comms)))

    def conjugacy_class(self, a: int) -> tuple[int, ...]:
        t = self.table
        left = t[self.inv, a]
        cls = t[left, np.arange(self.n)]
        return tuple(int(v) for v in sorted(set(cls.tolist())))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_cyclic(self) -> bool:
        return bool((self.element_orders() == self.n).any())

    def subgroup_closure(self, seed: Iterable[int]) -> tuple[int, ...]:
        """Smallest subgroup containing the seed elements."""
        t = self.table
        member = np.zeros(self.n, dtype=bool)
        member[0] = True
        frontier = [int(s) for s in set(seed) if not member[s]]
        for s in frontier:
            member[s] = True
        while frontier:
            here = np.flatnonzero(member)
            new: set[int] = set()
            for s in frontier:
                for v in t[s, here]:
                    if not member[v]:
                        member[v] = True
                        new.add(int(v))
                for v in t[here, s]:
                    if not member[v]:
                        member[v] = True
                        new.add(int(v))
                iv = int(self.inv[s])
                if not member[iv]:
                    member[iv] = True
                    new.add(iv)
            frontier = sorted(new)
        return tuple(int(v) for v in np.flatnonzero(member))

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        subset = sorted(set(int(s) for s in subset))
        if not subset or subset[0] != 0:
            return False
        mask = np.zeros(self.n, dtype=bool)
        mask[subset] = True
        sub = np.array(subset, dtype=np.int32)
        if not mask[self.table[np.ix_(sub, sub)]].all():
            return False
        return bool(mask[self.inv[sub]].all())

    def is_normal(self, subset: Iterable[int]) -> bool:
        subset = sorted(set(int(s) for s in subset))
        if not self.is_subgroup(subset):
            return False
        mask = np.zeros(self.n, dtype=bool)
        mask[subset] = True
        t = self.table
        for a in subset:
            conj = t[t[self.inv, a], np.arange(self.n)]
            if not mask[conj].all():
                return False
        return True

    def __repr__(self) -> str:
        return f"TableGroup(order={self.n})"


@dataclass(frozen=True)
class GroupInvariants:
    center: tuple[int, ...]
    commutator: tuple[int, ...]
    is_abelian: bool
    is_cyclic: bool


def group_invariants(g: TableGroup) -> GroupInvariants:
    return GroupInvariants(center=g.center(),
                           commutator=g.commutator_subgroup(),
                           is_abelian=g.is_abelian(),
                           is_cyclic=g.is_cyclic())


def perm_action_power(act: np.ndarray, e: int) -> np.ndarray:
    """e-fold composite of a carrier permutation given as an image array."""
    n = act.shape[0]
    result = np.arange(n, dtype=np.int32)
    for _ in range(e):
        result = act[result]
    return result


def semidirect_product(v: TableGroup, k: int, action) -> TableGroup:
    """V x| C_k for a cyclic group acting through the automorphism ``action``.

    Elements are encoded as v*k + i with identity (0,0) at index 0.  The
    action array must be an automorphism of V with action^k = identity,
    otherwise the product is not a group.
    """
    if k < 1:
        raise ValidationError(f"cyclic factor must have positive order, got {k}")
    act = np.asarray(action, dtype=np.int32)
    if act.shape != (v.n,):
        raise ValidationError(f"action must be a permutation of 0..{v.n - 1}")
    if not is_perm(act.tolist(), v.n):
        raise ValidationError("action is not a bijection", witness=tuple(act.tolist()))
    if not np.array_equal(act[v.table], v.table[np.ix_(act, act)]):
        a, b = _first_mismatch(act[v.table], v.table[np.ix_(act, act)])
        raise ValidationError(f"action is not an automorphism: A({a}*{b}) != A({a})*A({b})",
                              witness=(a, b))
    pow_k = perm_action_power(act, k)
    if not np.array_equal(pow_k, np.arange(v.n)):
        raise ValidationError(f"action^{k} is not the identity, the cyclic factor "
                              "cannot act with that order")
    m = v.n * k
    pows = [np.arange(v.n, dtype=np.int32)]
    for _ in range(1, k):
        pows.append(act[pows[-1]])
    table = np.empty((m, m), dtype=np.int32)
    vs = np.arange(v.n, dtype=np.int32)
    for i in range(k):
        rows = vs * k + i
        for j in range(k):
            cols = vs * k + j
            block = v.table[:, pows[i]] * k + (i + j) % k
            table[np.ix_(rows, cols)] = block
    return TableGroup(table, trusted=m > TABLE_VALIDATION_CAP)


def direct_power(g: TableGroup, copies: int, cap: int = 4000) -> TableGroup:
    """Direct product of ``copies`` copies of g; element index is base-|g|,
    first factor most significant."""
    if copies < 1:
        raise ValidationError("need at least one copy")
    if g.n**copies > cap:
        raise CapExceeded(f"direct power order {g.n ** copies} exceeds cap {cap}")
    table = g.table
    for _ in range(copies - 1):
        m = table.shape[0]
        table = (table[:, None, :, None] * g.n +
                 g.table[None, :, None, :]).reshape(m * g.n, m * g.n)
    return TableGroup(table, trusted=table.shape[0] > TABLE_VALIDATION_CAP)


def quotient_group(g: TableGroup, normal: Iterable[int]) -> tuple[TableGroup, np.ndarray]:
    """Quotient by a normal subgroup; returns (quotient, projection array).

    Cosets are indexed by ascending least member, so the coset of 0 is 0.
    """
    nset = sorted(set(int(x) for x in normal))
    if not g.is_subgroup(nset):
        raise ValidationError(f"{nset} is not a subgroup", witness=tuple(nset))
    if not g.is_normal(nset):
        raise ValidationError(f"{nset} is not normal", witness=tuple(nset))
    narr = np.array(nset, dtype=np.int32)
    proj = np.full(g.n, -1, dtype=np.int32)
    reps = []
    for a in range(g.n):
        if proj[a] >= 0:
            continue
        coset = g.table[a, narr]
        proj[coset] = len(reps)
        reps.append(a)
    reps_arr = np.array(reps, dtype=np.int32)
    qtable = proj[g.table[np.ix_(reps_arr, reps_arr)]]
    return TableGroup(qtable), proj


def _generating_sequence(g: TableGroup) -> list[int]:
    gens: list[int] = []
    have = {0}
    while len(have) < g.n:
        a = min(set(range(g.n)) - have)
        gens.append(a)
        have = set(g.subgroup_closure(have | {a}))
    return gens


def _element_words(g: TableGroup, gens: list[int]) -> tuple[list[tuple[int, int]], list[int]]:
    """(parent, generator position) per element plus the BFS discovery order."""
    words: list = [None] * g.n
    words[0] = (-1, -1)
    seen = [0]
    frontier = [0]
    while frontier:
        new = []
        for a in frontier:
            for gi, gen in enumerate(gens):
                b = int(g.table[a, gen])
                if words[b] is None:
                    words[b] = (a, gi)
                    new.append(b)
        seen.extend(new)
        frontier = new
    if any(w is None for w in words):
        raise ValidationError("generating sequence does not generate")  # pragma: no cover
    return words, seen


def group_isomorphism(g: TableGroup, h: TableGroup,
                      cap: int = ISO_ORDER_CAP) -> Optional[np.ndarray]:
    """Search for an isomorphism g -> h; None if there is none.

    Raises Undecided above the order cap.  Backtracks over generator images,
    pruned by element orders and conjugacy class sizes.
    """
    if g.n != h.n:
        return None
    if g.n > cap:
        raise Undecided(f"group isomorphism capped at order {cap}, got {g.n}")
    go, ho = g.element_orders(), h.element_orders()
    if sorted(go.tolist()) != sorted(ho.tolist()):
        return None

    def profile(grp: TableGroup, orders) -> list[tuple[int, int]]:
        return [(int(orders[a]), len(grp.conjugacy_class(a))) for a in range(grp.n)]

    gp, hp = profile(g, go), profile(h, ho)
    if sorted(gp) != sorted(hp):
        return None
    gens = _generating_sequence(g)
    words, bfs_order = _element_words(g, gens)
    # candidates per generator, matched on (order, class size)
    candidates = [[b for b in range(h.n) if hp[b] == gp[a]] for a in gens]

    def build(images: list[int]) -> Optional[np.ndarray]:
        phi = np.full(g.n, -1, dtype=np.int32)
        phi[0] = 0
        for a in bfs_order:
            if a == 0:
                continue
            parent, gi = words[a]
            phi[a] = h.table[phi[parent], images[gi]]
        if len(set(phi.tolist())) != g.n:
            return None
        if np.array_equal(phi[g.table], h.table[np.ix_(phi, phi)]):
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


def cyclic_group(n: int) -> TableGroup:
    idx = np.arange(n, dtype=np.int32)
    return TableGroup((idx[:, None] + idx[None, :]) % n)


def symmetric_group(n: int) -> tuple[TableGroup, tuple[Perm, ...]]:
    """(table, element list) for Sym(n) acting on 0..n-1; n <= 6."""
    if n > 6:
        raise CapExceeded("symmetric group tables stop at degree 6")
    if n == 1:
        return cyclic_group(1), (identity_perm(1),)
    gens = [perm_from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(perm_from_cycles(n, tuple(range(n))))
    grp = closure(gens, n)
    assert grp.order == factorial(n)
    return grp.to_table()


def alternating_group(n: int) -> tuple[TableGroup, tuple[Perm, ...]]:
    """(table, element list) for Alt(n); n <= 6."""
    if n > 6:
        raise CapExceeded("alternating group tables stop at degree 6")
    if n <= 2:
        return cyclic_group(1), (identity_perm(n),)
    gens = [perm_from_cycles(n, (i, i + 1, i + 2)) for i in range(n - 2)]
    grp = closure(gens, n)
    assert grp.order == factorial(n) // 2
    return grp.to_table()
