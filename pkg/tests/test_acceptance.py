"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import itertools
import math
import random
import time

import numpy as np
import pytest
from scipy.optimize import linprog

from hellydim import binary_forms as bf
from hellydim.abelian import (ArithmeticProgression, abelian_groups_of_order, brute_kappa,
                              intersect_progressions, kappa_abelian, min_generators,
                              witness_system)
from hellydim.binary_forms import X, Y, FactoredForm, Gl2Component, ProjectiveRoot
from hellydim.finite_groups import (brute_kappa_table, corpus, helly_dimension,
                                    helly_to_orbit_witness, min_separating_projection,
                                    minimal_empty_systems, same_orbit, CosetSpaceAction)
from hellydim.torus import WeightSystem, hard_instance, orbit_closed, orbit_dimension, select_factors


@pytest.fixture
def report(capsys):
    def _report(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
        assert ok, detail
    return _report


def _float_closed_dim(ws, rank):
    """Closedness by floating LP and orbit dimension by numpy, for cross-checking."""
    ws = list(dict.fromkeys(ws))
    if not ws:
        return True, 0
    k = len(ws)
    A_eq = [[0.0] + [1.0] * k] + [[0.0] + [float(w[a]) for w in ws] for a in range(rank)]
    A_ub = [[1.0] + [-float(i == j) for j in range(k)] for i in range(k)]
    res = linprog([-1.0] + [0.0] * k, A_ub=A_ub, b_ub=[0.0] * k, A_eq=A_eq,
                  b_eq=[1.0] + [0.0] * rank, bounds=[(None, None)] + [(0, None)] * k,
                  method="highs")
    closed = res.status == 0 and -res.fun > 1e-9
    return closed, int(np.linalg.matrix_rank(np.array(ws, dtype=float)))


def _p_rank_bound(factors):
    # minimal generator count = largest p-rank = most invariant factors divisible by one p
    best = 0
    order = math.prod(factors)
    for p in range(2, order + 1):
        if order % p == 0 and all(p % q for q in range(2, p)):
            best = max(best, sum(1 for n in factors if n % p == 0))
    return best


# 1 ---------------------------------------------------------------------------

def test_criterion_01_abelian_kappa_formula(report):
    start = time.time()
    groups = [A for n in range(2, 201) for A in abelian_groups_of_order(n)]
    bad = []
    for A in groups:
        d = _p_rank_bound(A.invariant_factors)
        if not (d == min_generators(A) and brute_kappa(A) == d + 1 == kappa_abelian(A)):
            bad.append(A.invariant_factors)
    report(1, "brute-force Helly dimension equals d+1 for abelian groups of order 2..200",
           not bad, f"{len(groups)} groups, {len(bad)} mismatches {bad[:3]}, "
                    f"{time.time() - start:.0f}s")


# 2 ---------------------------------------------------------------------------

def test_criterion_02_witness_systems(report):
    bad = []
    checked = 0
    for p in (2, 3, 5):
        for d in (1, 2, 3, 4):
            sets = [set(C.elements()) for C in witness_system(p, d)]
            if len(sets) != d + 1 or set.intersection(*sets):
                bad.append((p, d, "total"))
            for sub in itertools.combinations(sets, d):
                checked += 1
                if not set.intersection(*sub):
                    bad.append((p, d, "subset"))
    report(2, "witness systems: empty total, every d-subset meets (element enumeration)",
           not bad, f"12 systems, {checked} d-subsets, failures {bad[:3]}")


# 3 ---------------------------------------------------------------------------

def _random_family(rng):
    size = rng.randint(1, 8)
    moduli = [rng.randint(1, 1000) for _ in range(size)]
    mode = rng.randrange(3)
    if mode == 0:
        res = [rng.randrange(m) for m in moduli]
    else:
        x = rng.randrange(10 ** 6)
        res = [x % m for m in moduli]
        if mode == 2:
            # shift one member by a multiple of every pairwise gcd: still pairwise meeting
            k = rng.randrange(size)
            step = math.lcm(*[math.gcd(moduli[k], moduli[j]) for j in range(size) if j != k] or [1])
            res[k] = (res[k] + step * rng.randint(1, 50)) % moduli[k]
    return [ArithmeticProgression(a, m) for a, m in zip(res, moduli)]


def test_criterion_03_integers_helly_two(report):
    rng = random.Random(2024)
    pairwise_meeting = empty = 0
    bad = []
    for _ in range(10 ** 4):
        fam = _random_family(rng)
        meet = intersect_progressions(fam)
        pairs_ok = all((P.a - Q.a) % math.gcd(P.m, Q.m) == 0
                       for P, Q in itertools.combinations(fam, 2))
        if meet is not None:
            lcm = math.lcm(*[P.m for P in fam])
            if not (all(meet.a in P for P in fam) and meet.m == lcm):
                bad.append(("wrong intersection", fam))
        if pairs_ok:
            pairwise_meeting += 1
            if meet is None:
                bad.append(("pairwise but not global", fam))
        else:
            empty += 1
            if meet is not None:
                bad.append(("disjoint pair but global", fam))
    report(3, "pairwise-meeting progressions meet globally; empty families have a disjoint pair",
           not bad, f"10000 families ({pairwise_meeting} pairwise meeting, {empty} with a "
                    f"disjoint pair), {len(bad)} failures")


# 4 and 9 ---------------------------------------------------------------------

def _closed_weight_systems(count, seed=11):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        r = rng.randint(1, 3)
        W = WeightSystem(r, [[tuple(rng.randint(-3, 3) for _ in range(r))
                              for _ in range(rng.randint(1, 3))]
                             for _ in range(rng.randint(1, 6))])
        if orbit_closed(W)[0]:
            out.append(W)
    return out


def test_criterion_04_torus_selection(report):
    bad = []
    sizes = []
    for W in _closed_weight_systems(1000):
        rep = select_factors(W)
        sub = W.restrict(rep.indices)
        closed, dim = _float_closed_dim(sub.weights(), W.rank)
        _, full = _float_closed_dim(W.weights(), W.rank)
        sizes.append(len(rep.indices))
        exact_ok = orbit_closed(sub)[0] and orbit_dimension(sub) == orbit_dimension(W)
        if not (len(rep.indices) <= 2 * W.rank and closed and dim == full and exact_ok):
            bad.append(W)
    report(4, "torus selection has at most 2n factors, closed, same dimension",
           not bad, f"1000 closed systems, max |I| = {max(sizes)}, {len(bad)} failures")


# 5 ---------------------------------------------------------------------------

def test_criterion_05_torus_lower_bound(report):
    bad = []
    for n in (1, 2, 3):
        W = hard_instance(n)
        if not (orbit_closed(W)[0] and orbit_dimension(W) == n):
            bad.append((n, "full"))
        for k in range(2 * n):
            for I in itertools.combinations(range(2 * n), k):
                sub = W.restrict(I)
                closed, dim = _float_closed_dim(sub.weights(), n)
                if (closed and dim == n) or (orbit_closed(sub)[0] and orbit_dimension(sub) == n):
                    bad.append((n, I))
    report(5, "hard instance: every proper factor subset is non-closed or smaller",
           not bad, f"n = 1..3, failures {bad[:3]}")


# 6 ---------------------------------------------------------------------------

S = ProjectiveRoot(1, 1)


def _triangle():
    return [FactoredForm(1, [X, Y]), FactoredForm(1, [X, S]), FactoredForm(1, [Y, S])]


def _five():
    return [Gl2Component(FactoredForm(1, []), 1), Gl2Component(FactoredForm(1, []), -1)] + \
        [Gl2Component(f, 1) for f in _triangle()]


def test_criterion_06_sl2_three(report):
    T = _triangle()
    full = bf.sl2_orbit_closed(T) and bf.sl2_orbit_dimension(T) == 3 and \
        bf.birkes_richardson_oracle(T, "SL2")
    pairs = all(not (bf.sl2_orbit_closed(list(p)) and bf.sl2_orbit_dimension(list(p)) == 3)
                for p in itertools.combinations(T, 2))
    pairs_oracle = all(not bf.birkes_richardson_oracle(list(p), "SL2")
                       or bf.sl2_orbit_dimension(list(p)) < 3
                       for p in itertools.combinations(T, 2))
    sel = bf.sl2_select(T).indices
    report(6, "SL2 triangle closed of dimension 3, no pair suffices, selection is all three",
           full and pairs and pairs_oracle and sel == (0, 1, 2), f"selected {sel}")


# 7 ---------------------------------------------------------------------------

def test_criterion_07_gl2_five(report):
    V = _five()
    full = bf.gl2_orbit_closed(V) and bf.birkes_richardson_oracle(V, "GL2")
    dim = bf.gl2_orbit_dimension(V)
    fours = []
    for I in itertools.combinations(range(5), 4):
        sub = [V[i] for i in I]
        fours.append(not (bf.gl2_orbit_closed(sub) and bf.gl2_orbit_dimension(sub) == dim)
                     and not (bf.birkes_richardson_oracle(sub, "GL2")
                              and bf.gl2_orbit_dimension(sub) == dim))
    sel = bf.gl2_select(V).indices
    report(7, "GL2 five-tuple closed, every 4-subset fails, selection is all five",
           full and all(fours) and sel == (0, 1, 2, 3, 4), f"dim {dim}, selected {sel}")


# 8 ---------------------------------------------------------------------------

def test_criterion_08_oracle_equivalence(report):
    start = time.time()
    counts = {}
    for group, seed in (("SL2", 8), ("GL2", 88)):
        rng = random.Random(seed)
        bad = closed = 0
        for _ in range(10 ** 4):
            comps = bf.random_tuple(rng, group)
            fast = bf.sl2_orbit_closed(comps) if group == "SL2" else bf.gl2_orbit_closed(comps)
            bad += fast != bf.birkes_richardson_oracle(comps, group)
            closed += fast
        counts[group] = (bad, closed)
    ok = all(b == 0 for b, _ in counts.values())
    report(8, "structured closedness agrees with the one-parameter-subgroup oracle", ok,
           ", ".join(f"{g}: 10000 tuples, {c} closed, {b} discrepancies"
                     for g, (b, c) in counts.items()) + f", {time.time() - start:.0f}s")


# 9 ---------------------------------------------------------------------------

def _supersets_ok(items, I, closed, dim):
    full = dim(items)
    rest = [i for i in range(len(items)) if i not in I]
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            J = sorted(tuple(I) + extra)
            sub = [items[j] for j in J]
            if not (closed(sub) and dim(sub) == full):
                return False
    return True


def test_criterion_09_monotonicity(report):
    torus_ok = all(_supersets_ok(list(range(len(W.factors))), select_factors(W).indices,
                                 lambda J, W=W: orbit_closed(W.restrict(J))[0],
                                 lambda J, W=W: orbit_dimension(W.restrict(J)))
                   for W in _closed_weight_systems(1000) + [hard_instance(n) for n in (1, 2, 3)])
    T, V = _triangle(), _five()
    sl2_ok = _supersets_ok(T, bf.sl2_select(T).indices, bf.sl2_orbit_closed, bf.sl2_orbit_dimension)
    gl2_ok = _supersets_ok(V, bf.gl2_select(V).indices, bf.gl2_orbit_closed, bf.gl2_orbit_dimension)
    report(9, "every superset of a selected subset stays closed with equal dimension",
           torus_ok and sl2_ok and gl2_ok,
           f"torus {torus_ok} (1003 systems), SL2 {sl2_ok}, GL2 {gl2_ok}")


# 10 --------------------------------------------------------------------------

def test_criterion_10_orbit_separation(report):
    start = time.time()
    groups = [G for G in corpus(16) if G.order > 1]
    bad = []
    systems = 0
    direct = 0
    for G in groups:
        k = brute_kappa_table(G)
        for system in minimal_empty_systems(G, 4):
            systems += 1
            action, x, y = helly_to_orbit_witness(G, system)
            sep = min_separating_projection(action, x, y)
            if not (len(sep) == len(system) <= k):
                bad.append((G.name, len(sep), k))
        # direct enumeration of products for the smaller groups
        if G.order <= 8:
            subs = G.subgroups()
            for m in range(1, 4):
                for stabs in itertools.combinations_with_replacement(subs, m):
                    act = CosetSpaceAction(G, stabs)
                    x = act.point([0] * m)
                    for y in itertools.product(*(range(len(p)) for p in act.points)):
                        if not same_orbit(act, x, y):
                            direct += 1
                            if len(min_separating_projection(act, x, act.point(y))) > k:
                                bad.append((G.name, stabs, y))
    report(10, "separating projections never exceed the Helly dimension; witnesses attain it",
           not bad, f"{len(groups)} groups of order <= 16, {systems} minimal systems, "
                    f"{direct} direct pairs, {len(bad)} failures, {time.time() - start:.0f}s")


# 11 --------------------------------------------------------------------------

def test_criterion_11_extension_bound(report):
    bad = []
    checks = 0
    for G in corpus(24):
        k = helly_dimension(G)
        for N in G.normal_subgroups():
            kh = helly_dimension(G.subgroup_table(N))
            kq = helly_dimension(G.quotient_table(N))
            checks += 1
            # the trivial group has Helly dimension 0; it contributes a factor 1
            if not k <= max(kh, 1) * max(kq, 1):
                bad.append((G.name, kh, kq, k))
    report(11, "Helly dimension of G at most that of N times that of G/N",
           not bad, f"{checks} normal subgroups across corpus groups of order <= 24, "
                    f"failures {bad[:3]}")
