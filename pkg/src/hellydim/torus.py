"""Torus orbits in products of linear representations.

A point of ``V_1 x ... x V_m`` is encoded only by the characters at which
each component is non-zero (coefficients are taken generic). Its orbit is
closed exactly when the origin is a strictly positive convex combination
of all occurring weights, and its dimension is the rank of their span.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import InputError, PreconditionError
from .exact import integer_rank, lp_maximize, strict_zero_combination
from .selection import SelectionReport

Weight = tuple[int, ...]

DEFAULT_SEARCH_BUDGET = 2000


@dataclass(frozen=True)
class WeightSystem:
    rank: int
    factors: tuple[tuple[Weight, ...], ...]

    def __init__(self, rank: int, factors: Sequence[Sequence[Sequence[int]]]):
        if rank < 0:
            raise InputError("torus rank must be non-negative")
        fs = tuple(tuple(tuple(int(c) for c in w) for w in f) for f in factors)
        for f in fs:
            for w in f:
                if len(w) != rank:
                    raise InputError(f"weight {w} does not have length {rank}")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "factors", fs)

    def weights(self) -> list[Weight]:
        """Distinct weights in order of first appearance."""
        return list(dict.fromkeys(w for f in self.factors for w in f))

    def restrict(self, indices: Sequence[int]) -> "WeightSystem":
        return WeightSystem(self.rank, [self.factors[i] for i in indices])

    def to_json(self) -> dict:
        return {"rank": self.rank, "factors": [[list(w) for w in f] for f in self.factors]}


@dataclass(frozen=True)
class SteinitzCertificate:
    selected_weights: tuple[int, ...]
    combination: tuple[Fraction, ...]


def orbit_closed(W: WeightSystem) -> tuple[bool, Optional[list[Fraction]]]:
    """Closedness with a certificate over ``W.weights()`` when closed."""
    ws = W.weights()
    if not ws:
        return True, []
    comb = strict_zero_combination(ws)
    return comb is not None, comb


def destabilizing_direction(W: WeightSystem) -> Optional[tuple[int, ...]]:
    """Integer cocharacter ``l`` with ``<l, w> >= 0`` on all weights and ``> 0``
    on some, or ``None`` when the orbit is closed.

    Along ``t -> t^l`` the limit exists and drops the components of positive
    pairing, so it leaves the orbit.
    """
    ws = W.weights()
    r, m = W.rank, len(ws)
    if not ws or r == 0:
        return None
    # variables: l+ (r), l- (r), slack s_w (m), all >= 0
    A = []
    for i, w in enumerate(ws):
        A.append(list(w) + [-c for c in w] + [-int(j == i) for j in range(m)])
    A.append([0] * (2 * r) + [1] * m)
    sol = lp_maximize([0] * (2 * r + m), A, [0] * m + [1])
    if sol is None:
        return None
    x = sol[1]
    lam = [x[i] - x[r + i] for i in range(r)]
    den = lcm(*(v.denominator for v in lam))
    ints = [int(v * den) for v in lam]
    g = gcd(*ints)
    return tuple(v // g for v in ints)


def orbit_dimension(W: WeightSystem) -> int:
    return integer_rank(W.weights())


def _balanced(points) -> Optional[list[Fraction]]:
    return strict_zero_combination(points) if points else None


def steinitz_subset(weights: Sequence[Sequence[int]],
                    search_budget: int = DEFAULT_SEARCH_BUDGET) -> SteinitzCertificate:
    """At most ``2 * rank`` weights keeping the origin in the relative interior
    and spanning the same subspace.

    A greedy removal pass yields an inclusion-minimal such subset, which is
    already within the bound. Smaller subsets are then searched in increasing
    size, lexicographically, as long as the number of candidates stays within
    ``search_budget``.
    """
    weights = [tuple(w) for w in weights]
    if not weights:
        raise InputError("no weights given")
    if _balanced(weights) is None:
        raise PreconditionError("origin is not in the relative interior of the weights")
    first = {}
    for i, w in enumerate(weights):
        first.setdefault(w, i)
    pool = sorted(first.values())
    r = integer_rank([weights[i] for i in pool])

    def works(idx):
        pts = [weights[i] for i in idx]
        if integer_rank(pts) != r:
            return None
        return _balanced(pts)

    current = list(pool)
    for i in reversed(pool):
        trial = [j for j in current if j != i]
        if trial and works(trial) is not None:
            current = trial
    best = current
    lower = r + 1 if r else 1
    for size in range(lower, len(best)):
        n_cand = 1
        for k in range(size):
            n_cand = n_cand * (len(pool) - k) // (k + 1)
        if n_cand > search_budget:
            break
        hit = next((list(c) for c in itertools.combinations(pool, size)
                    if works(c) is not None), None)
        if hit is not None:
            best = hit
            break
    comb = works(best)
    assert comb is not None and len(best) <= max(2 * r, 1)
    return SteinitzCertificate(tuple(best), tuple(comb))


def select_factors(W: WeightSystem, search_budget: int = DEFAULT_SEARCH_BUDGET) -> SelectionReport:
    """At most ``2 * rank`` factors whose projection is closed of full dimension."""
    closed, _ = orbit_closed(W)
    if not closed:
        raise PreconditionError("orbit is not closed")
    dim_full = orbit_dimension(W)
    flat, owner = [], []
    for i, f in enumerate(W.factors):
        for w in f:
            flat.append(w)
            owner.append(i)
    if not flat:
        # the zero point: any single factor (or none) will do
        chosen: tuple[int, ...] = (0,) if W.factors else ()
    else:
        cert = steinitz_subset(flat, search_budget)
        chosen = tuple(sorted({owner[flat.index(flat[j])] for j in cert.selected_weights}))
    sub = W.restrict(chosen)
    ok, _ = orbit_closed(sub)
    dim_sel = orbit_dimension(sub)
    assert ok and dim_sel == dim_full and len(chosen) <= max(2 * dim_full, 1)
    return SelectionReport(chosen, ok, dim_full, dim_sel)


def hard_instance(n: int) -> WeightSystem:
    """``2n`` one-dimensional factors with weights ``e_i`` and ``-e_i``."""
    if n < 1:
        raise InputError("n must be at least 1")
    factors = []
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        factors.append([e])
        factors.append([tuple(-c for c in e)])
    return WeightSystem(n, factors)
