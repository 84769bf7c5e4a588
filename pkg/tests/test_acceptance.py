"""End-to-end acceptance battery.

Each test below checks one headline property of the package as a whole and
prints a single PASS/FAIL line.  The batteries are exhaustive where the
search space is small enough (all hypothesis data up to a size bound, all
commuting permutation pairs, the full shipped corpus) and every claimed
equality is checked against an independently computed oracle.
"""

import itertools
import math
import time

import numpy as np

from ybe import modp
from ybe.braces import (brace_invariants, brace_isomorphic, permutation_brace,
                        quotient_brace, simplicity_by_min_ideal,
                        smallest_nonzero_ideal, trivial_brace, validate_ideal)
from ybe.cli import _lemma_identity_failures
from ybe.constructions import (abelian_v_build, abelian_v_data, build_example,
                               byott_build, check_abelian_v,
                               permutation_solution, signed_rotation_build,
                               symmetric_type_build)
from ybe.corpus import standard_corpus
from ybe.errors import ConstructionRejected
from ybe.groups import compose, symmetric_group
from ybe.solutions import (affine_prime_solution, classify_lyubashenko,
                           is_simple_bruteforce, profile, retraction,
                           validate_solution)


def _finish(idx: int, label: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"[{idx:2d}/10] {label}: {status}")
    assert not failures, f"{label}: {failures[:5]}"


def _invertible_matrices(p: int, n: int) -> list[np.ndarray]:
    out = []
    for entries in itertools.product(range(p), repeat=n * n):
        m = np.array(entries, dtype=np.int64).reshape(n, n)
        if modp.rank(p, m) == n:
            out.append(m)
    return out


def _abelian_data_sweep(cases, k_max=12):
    """All accepted hypothesis data over the given (p, n) grid.

    Only group orders k compatible with the order conditions can be accepted,
    so the loop enumerates exactly those instead of every k <= k_max.
    """
    for p, n in cases:
        mats = _invertible_matrices(p, n)
        orders = [modp.mat_order(p, m) for m in mats]
        ident = modp.identity(n)
        vecs = modp.all_vectors(p, n)
        for ia, a in enumerate(mats):
            if np.array_equal(a, ident):
                continue
            for ja, a2 in enumerate(mats):
                if not np.array_equal(a @ a2 % p, a2 @ a % p):
                    continue
                if np.array_equal(a2, ident):
                    ks = {orders[ia], orders[ia] * p}
                else:
                    ks = {math.lcm(orders[ia], orders[ja])}
                for k in sorted(ks):
                    if not 2 <= k <= k_max:
                        continue
                    for u0 in vecs:
                        d = abelian_v_data(p, n, k, a, a2, u0)
                        yield d, all(c.ok for c in check_abelian_v(d))


def test_01_byott_order_twelve():
    """(p, q) = (2, 3): simple brace of order 12 on a centerless additive
    group with a normal Klein subgroup, restricted solution on 8 points."""
    failures: list[str] = []
    t0 = time.monotonic()
    bb = byott_build(2, 3)
    if bb.brace.n != 12:
        failures.append(f"brace order {bb.brace.n} != 12")
    if len(bb.x_set) != 8:
        failures.append(f"|X| = {len(bb.x_set)} != 8")
    inv = brace_invariants(bb.brace)
    mi = smallest_nonzero_ideal(bb.brace)
    if mi is None or len(mi.elements) != 12:
        failures.append("a proper nonzero ideal exists")
    if len(inv.b2.elements) != 12:
        failures.append(f"B2 size {len(inv.b2.elements)} != 12")
    ag = bb.brace.add
    if ag.center() != (0,):
        failures.append(f"additive center {ag.center()} != (0,)")
    add_orders = ag.element_orders()
    if 6 in set(int(t) for t in add_orders):
        failures.append("additive group has an order-6 element")
    klein = [0] + [int(t) for t in np.flatnonzero(add_orders == 2)]
    if len(klein) != 4 or not ag.is_subgroup(klein) or not ag.is_normal(klein):
        failures.append("order-2 elements do not form a normal Klein subgroup")
    if not is_simple_bruteforce(bb.solution):
        failures.append("restricted solution not brute-force simple")
    elapsed = time.monotonic() - t0
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.1f}s >= 10s")
    _finish(1, "byott (2,3) simple brace", failures)


def test_02_abelian_family_sweep():
    """Every accepted datum with p^n <= 9, k <= 12 yields a validated,
    irretractable, brute-force-simple solution whose closed-formula table
    equals the brace restriction exactly."""
    failures: list[str] = []
    t0 = time.monotonic()
    grid = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]
    accepted = checked = 0
    for d, ok in _abelian_data_sweep(grid):
        checked += 1
        if not ok:
            continue
        accepted += 1
        b = abelian_v_build(d)
        s = validate_solution(b.solution.lam_rows(), b.solution.rho_rows())
        if not profile(s).irretractable:
            failures.append(f"retractable: {d}")
        elif not is_simple_bruteforce(s):
            failures.append(f"not simple: {d}")
        elif b.formula_solution != b.solution:
            failures.append(f"formula/table mismatch: {d}")
        if failures:
            break
    if accepted != 3976 or checked != 11291:
        failures.append(f"sweep size accepted={accepted} checked={checked}, "
                        "expected 3976/11291")
    # a k outside the order conditions is rejected up front
    bad = abelian_v_data(3, 1, 4, [[-1]], [[1]], [0])
    bad_checks = check_abelian_v(bad)
    if [c.name for c in bad_checks if not c.ok] != ["k = o(A) (A2=1, v1=0)"]:
        failures.append("k=4 datum not rejected by the order condition")
    elapsed = time.monotonic() - t0
    if elapsed >= 120.0:
        failures.append(f"runtime {elapsed:.1f}s >= 120s")
    _finish(2, f"abelian family sweep ({accepted} accepted)", failures)


def test_03_signed_rotation_gate():
    """n=2 rotation data is accepted exactly for p = 3 mod 4 and the n=3
    data never passes the hypothesis checks."""
    failures: list[str] = []
    for p in (3, 7, 11):
        try:
            b = signed_rotation_build(p, 2)
            if b.brace.n != p * p * 4:
                failures.append(f"p={p}: brace order {b.brace.n}")
        except ConstructionRejected as e:
            failures.append(f"p={p} rejected: {e}")
    for p in (5, 13):
        try:
            signed_rotation_build(p, 2)
            failures.append(f"p={p} accepted, expected rejection")
        except ConstructionRejected:
            pass
    for p in (3, 5):
        try:
            signed_rotation_build(p, 3)
            failures.append(f"p={p}, n=3 accepted, expected rejection")
        except ConstructionRejected:
            pass
    _finish(3, "signed rotation acceptance gate", failures)


def test_04_symmetric_five():
    """sym_n(5): ten-point solution, simple by brute force and by the
    minimal-ideal criterion."""
    failures: list[str] = []
    t0 = time.monotonic()
    b = build_example("sym_n", n=5)
    if len(b.x_set) != 10:
        failures.append(f"|X| = {len(b.x_set)} != 10")
    brute = is_simple_bruteforce(b.solution)
    rep = simplicity_by_min_ideal(b.solution)
    if not brute:
        failures.append("brute force says not simple")
    if not (rep.applies and rep.verdict is True):
        failures.append(f"minimal-ideal criterion: {rep}")
    if bool(rep.verdict) != brute:
        failures.append("oracles disagree")
    elapsed = time.monotonic() - t0
    if elapsed >= 5.0:
        failures.append(f"runtime {elapsed:.1f}s >= 5s")
    _finish(4, "sym_n(5) ten-point solution", failures)


def test_05_minimal_ideal_oracle_on_corpus():
    """On every non-permutation corpus entry the minimal-ideal criterion
    returns the same verdict as the brute-force simplicity oracle."""
    failures: list[str] = []
    t0 = time.monotonic()
    corpus = standard_corpus()
    if len(corpus) < 30:
        failures.append(f"corpus has {len(corpus)} entries, need >= 30")
    simple_seen = nonsimple_seen = 0
    retract_seen = irretract_seen = 0
    compared = 0
    for e in corpus:
        s = e.solution
        if s.n > 12:
            failures.append(f"{e.name}: size {s.n} > 12")
            continue
        brute = is_simple_bruteforce(s)
        simple_seen += brute
        nonsimple_seen += not brute
        part, _ = retraction(s)
        if len(part.classes()) == s.n:
            irretract_seen += 1
        else:
            retract_seen += 1
        if classify_lyubashenko(s).is_lyubashenko:
            continue
        rep = simplicity_by_min_ideal(s)
        if not rep.applies or bool(rep.verdict) != brute:
            failures.append(f"{e.name}: criterion {rep.verdict}, brute {brute}")
        compared += 1
    if min(simple_seen, nonsimple_seen, retract_seen, irretract_seen) == 0:
        failures.append("corpus does not mix simple/retractable behaviour")
    elapsed = time.monotonic() - t0
    if elapsed >= 60.0:
        failures.append(f"runtime {elapsed:.1f}s >= 60s")
    _finish(5, f"corpus oracle agreement ({compared} compared)", failures)


def test_06_permutation_classification_exhaustive():
    """classify_lyubashenko matches brute force on every solution induced
    by a commuting pair in Sym(n), n in {3, 4, 5}."""
    failures: list[str] = []
    t0 = time.monotonic()
    counts = {}
    for n in (3, 4, 5):
        _, elems = symmetric_group(n)
        pairs = 0
        for f in elems:
            for g in elems:
                if compose(f, g) != compose(g, f):
                    continue
                pairs += 1
                s = permutation_solution(f, g)
                rep = classify_lyubashenko(s)
                if not rep.is_lyubashenko:
                    failures.append(f"n={n} {f},{g}: not classified")
                elif bool(rep.is_simple) != is_simple_bruteforce(s):
                    failures.append(f"n={n} {f},{g}: verdict mismatch")
                if failures:
                    break
            if failures:
                break
        counts[n] = pairs
    if counts != {3: 18, 4: 120, 5: 840}:
        failures.append(f"commuting pair counts {counts}")
    elapsed = time.monotonic() - t0
    if elapsed >= 60.0:
        failures.append(f"runtime {elapsed:.1f}s >= 60s")
    _finish(6, "permutation solutions, 978 commuting pairs", failures)


def test_07_affine_prime_indecomposable_simple():
    """Every indecomposable affine solution over p in {3, 5, 7} is simple,
    across all valid parameters of the three families."""
    failures: list[str] = []
    counts = {1: 0, 2: 0, 3: 0}
    indecomposable = 0
    for p in (3, 5, 7):
        for fam in (1, 2):
            for a in range(1, p):
                for b in range(1, p):
                    if (a * b) % p == 1:
                        continue
                    for c in range(p):
                        s = affine_prime_solution(p, fam, a=a, b=b, c=c)
                        counts[fam] += 1
                        if profile(s).indecomposable:
                            indecomposable += 1
                            if not is_simple_bruteforce(s):
                                failures.append(f"p={p} fam{fam} {a},{b},{c}")
        for c1 in range(p):
            for c2 in range(p):
                if c1 == c2 == 0:
                    continue
                s = affine_prime_solution(p, 3, c1=c1, c2=c2)
                counts[3] += 1
                if profile(s).indecomposable:
                    indecomposable += 1
                    if not is_simple_bruteforce(s):
                        failures.append(f"p={p} fam3 {c1},{c2}")
    if any(counts[f] < 10 for f in (1, 2, 3)):
        failures.append(f"too few parameter choices: {counts}")
    if indecomposable != 632:
        failures.append(f"{indecomposable} indecomposable, expected 632")
    _finish(7, "affine prime-order families", failures)


def _battery_braces():
    """Braces from both table-backed constructors, with their V ideals."""
    for d, ok in _abelian_data_sweep([(2, 1), (3, 1), (5, 1), (2, 2)]):
        if ok:
            b = abelian_v_build(d)
            yield f"abelian {d.p},{d.n},{d.k}", b.brace, b.v_ideal
    b = signed_rotation_build(3, 2)
    yield "signed rotation (3,2)", b.brace, b.v_ideal
    nb = symmetric_type_build(5)
    mi = smallest_nonzero_ideal(nb.brace)
    assert mi is not None and len(mi.elements) == 60
    yield "symmetric type 5", nb.brace, mi.elements


def test_08_brace_invariant_battery():
    """Socle and third star ideal vanish, the second sits in {0, V},
    V meets the additive center trivially, and B/V is trivial cyclic."""
    failures: list[str] = []
    built = 0
    for label, brace, v_elems in _battery_braces():
        built += 1
        v = tuple(sorted(int(t) for t in v_elems))
        inv = brace_invariants(brace)
        if inv.socle.elements != (0,):
            failures.append(f"{label}: socle {inv.socle.elements}")
        if inv.b3.elements != (0,):
            failures.append(f"{label}: B3 {inv.b3.elements}")
        if inv.b2.elements not in ((0,), v):
            failures.append(f"{label}: B2 {inv.b2.elements}")
        if set(v) & set(inv.add_center) != {0}:
            failures.append(f"{label}: V meets the additive center")
        q, _ = quotient_brace(brace, validate_ideal(brace, v))
        if not q.is_trivial() or max(q.add.element_orders()) != q.n:
            failures.append(f"{label}: B/V not trivial cyclic")
        if len(failures) > 5:
            break
    if built < 80:
        failures.append(f"battery built only {built} braces")
    _finish(8, f"brace invariant battery ({built} braces)", failures)


def test_09_twist_identity_on_corpus():
    """sigma_b equals lam_b o q o rho_b o q^{-1} entrywise, q the diagonal
    permutation, for every corpus solution."""
    failures: list[str] = []
    for e in standard_corpus():
        bad = _lemma_identity_failures(e.solution)
        if bad is not None:
            failures.append(f"{e.name}: {bad}")
    _finish(9, "twist identity across the corpus", failures)


def test_10_permutation_brace_fidelity():
    """The permutation brace of a restricted solution recovers the source
    brace; a conjugation quandle yields the trivial brace on its group."""
    failures: list[str] = []
    b1 = abelian_v_build(abelian_v_data(3, 1, 2, [[-1]], [[-1]], [0]))
    pb = permutation_brace(b1.solution)
    if pb.brace.n != 6:
        failures.append(f"permutation brace order {pb.brace.n} != 6")
    if brace_isomorphic(pb.brace, b1.brace) is None:
        failures.append("permutation brace not isomorphic to the source")
    quandle = build_example("conj_quandle")
    if quandle.n != 3:
        failures.append(f"conjugation quandle size {quandle.n} != 3")
    pb2 = permutation_brace(quandle)
    s3, _ = symmetric_group(3)
    if pb2.brace.n != 6:
        failures.append(f"quandle brace order {pb2.brace.n} != 6")
    if brace_isomorphic(pb2.brace, trivial_brace(s3)) is None:
        failures.append("quandle brace not the trivial brace on Sym(3)")
    _finish(10, "permutation brace fidelity", failures)
