"""Small finite groups given by multiplication tables.

Covers the definitional (brute force) Helly dimension of a table group,
subgroup and normal-subgroup enumeration, quotient tables, and products of
coset spaces ``G/H_1 x ... x G/H_m`` on which orbit separation is decided
through coset intersections.

Subsets of a group are bit masks over element indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .errors import InputError, PreconditionError, ResourceError

DEFAULT_MAX_TABLE_ORDER = 48


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _omega(n: int) -> int:
    """Number of prime factors of ``n`` counted with multiplicity."""
    count, p = 0, 2
    while p * p <= n:
        while n % p == 0:
            n //= p
            count += 1
        p += 1
    return count + (n > 1)


class FiniteGroupTable:
    """A finite group as an ``n x n`` table of element indices."""

    def __init__(self, table: Sequence[Sequence[int]], identity: int = 0,
                 name: str = "", check: bool = True):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.order = len(self.table)
        self.identity = identity
        self.name = name
        n = self.order
        if n == 0:
            raise InputError("a group has at least one element")
        if check:
            self._validate()
        self.inverse = tuple(next(h for h in range(n) if self.table[g][h] == identity)
                             for g in range(n))
        self._gen_cache: dict = {}
        self._coset_cache: dict = {}
        self._gens_cache: dict = {}

    def _validate(self):
        n, T, e = self.order, self.table, self.identity
        if any(len(row) != n for row in T):
            raise InputError("multiplication table must be square")
        if not 0 <= e < n:
            raise InputError("identity index out of range")
        for row in T:
            if sorted(row) != list(range(n)):
                raise InputError("table rows must be permutations (Latin square)")
        if any(T[e][g] != g or T[g][e] != g for g in range(n)):
            raise InputError("identity index does not act as identity")
        for a in range(n):
            Ta = T[a]
            for b in range(n):
                ab = Ta[b]
                Tab = T[ab]
                Tb = T[b]
                for c in range(n):
                    if Tab[c] != Ta[Tb[c]]:
                        raise InputError("table is not associative")

    def __repr__(self):
        return f"FiniteGroupTable({self.name or self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def is_abelian(self) -> bool:
        T = self.table
        return all(T[a][b] == T[b][a] for a in range(self.order) for b in range(a))

    # -- subgroups ---------------------------------------------------------

    def join(self, H: int, g: int) -> int:
        """Mask of the subgroup generated by subgroup mask ``H`` and ``g``."""
        if H >> g & 1:
            return H
        key = (H, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        T = self.table
        queue = list(_bits(H)) + [g]
        seen = H | (1 << g)
        # closing under right multiplication by generators yields the subgroup
        gens = self._gens_of(H) + [g]
        i = 0
        while i < len(queue):
            a = queue[i]
            i += 1
            Ta = T[a]
            for s in gens:
                c = Ta[s]
                if not seen >> c & 1:
                    seen |= 1 << c
                    queue.append(c)
        self._gen_cache[key] = seen
        return seen

    def _gens_of(self, H: int) -> list[int]:
        hit = self._gens_cache.get(H)
        if hit is not None:
            return hit
        gens: list[int] = []
        cur = 1 << self.identity
        for h in _bits(H):
            if not cur >> h & 1:
                gens.append(h)
                cur = self.join(cur, h)
                if cur == H:
                    break
        self._gens_cache[H] = gens
        return gens

    def generate(self, elements: Iterable[int]) -> int:
        return reduce(self.join, elements, 1 << self.identity)

    def left_coset(self, x: int, H: int) -> int:
        key = (x, H)
        hit = self._coset_cache.get(key)
        if hit is None:
            Tx = self.table[x]
            hit = 0
            for h in _bits(H):
                hit |= 1 << Tx[h]
            self._coset_cache[key] = hit
        return hit

    def hull(self, points: Sequence[int]) -> int:
        """Smallest left coset containing ``points`` (non-empty)."""
        x0 = points[0]
        inv = self.inverse[x0]
        H = self.generate(self.table[inv][p] for p in points[1:])
        return self.left_coset(x0, H)

    def subgroups(self) -> list[int]:
        """All subgroup masks, sorted by (size, mask)."""
        if not hasattr(self, "_subgroups"):
            found = {1 << self.identity}
            frontier = list(found)
            while frontier:
                nxt = []
                for H in frontier:
                    for g in range(self.order):
                        K = self.join(H, g)
                        if K not in found:
                            found.add(K)
                            nxt.append(K)
                frontier = nxt
            self._subgroups = sorted(found, key=lambda m: (m.bit_count(), m))
        return list(self._subgroups)

    def cosets(self) -> list[int]:
        """Every left coset of every subgroup, as distinct masks."""
        out = set()
        for H in self.subgroups():
            for x in range(self.order):
                out.add(self.left_coset(x, H))
        return sorted(out, key=lambda m: (m.bit_count(), m))

    def is_normal(self, H: int) -> bool:
        T, inv = self.table, self.inverse
        for g in range(self.order):
            Tg = T[g]
            for h in _bits(H):
                if not H >> T[Tg[h]][inv[g]] & 1:
                    return False
        return True

    def normal_subgroups(self) -> list[int]:
        return [H for H in self.subgroups() if self.is_normal(H)]

    def subgroup_table(self, H: int) -> "FiniteGroupTable":
        elems = list(_bits(H))
        index = {g: i for i, g in enumerate(elems)}
        table = [[index[self.table[a][b]] for b in elems] for a in elems]
        return FiniteGroupTable(table, index[self.identity], f"sub({self.name})", check=False)

    def quotient_table(self, N: int) -> "FiniteGroupTable":
        if not self.is_normal(N):
            raise PreconditionError("quotient by a non-normal subgroup")
        classes: list[int] = []
        label = {}
        for g in range(self.order):
            if g not in label:
                c = self.left_coset(g, N)
                for h in _bits(c):
                    label[h] = len(classes)
                classes.append(c)
        reps = [next(_bits(c)) for c in classes]
        table = [[label[self.table[a][b]] for b in reps] for a in reps]
        return FiniteGroupTable(table, label[self.identity], f"{self.name}/N", check=False)


# -- Helly dimension by exhaustive search ----------------------------------

def _minimal_empty_exists(G: FiniteGroupTable, k: int,
                          seeds: Optional[Sequence[tuple[int, Sequence[int]]]] = None
                          ) -> Optional[list[int]]:
    """Find ``k`` points whose leave-one-out coset hulls have empty intersection.

    Such point sets exist exactly when there is a system of ``k`` cosets whose
    total intersection is empty while every ``k-1`` of them meet: given the
    cosets, pick a point of each leave-one-out intersection; given the
    points, take the leave-one-out hulls. This property is inherited by
    subsets (each hull of a subset lies in the matching hull of the full set
    and in the hull of the subset itself), so every prefix of the search is
    checked. After translating one point to the identity the generated
    subgroups grow strictly at every step, and the prime-factor count of the
    remaining index bounds the depth.

    ``seeds`` lists pairs ``(s1, pool)``: the first non-identity point and
    the increasing list of candidates for the remaining ones. By default
    every element seeds, followed by the elements after it.
    """
    n = G.order
    e = G.identity
    T, inv = G.table, G.inverse
    if k < 2:
        return None
    if seeds is None:
        others = [g for g in range(n) if g != e]
        seeds = [(g, others[i + 1:]) for i, g in enumerate(others)]

    # State for S = [e, s1, ...]: ``span`` = <S>; ``drops[t]`` = <S minus {e, t}>
    # for each non-identity t; ``K`` = <s1^-1 s : s in S, s != e, s1>. The
    # leave-one-out hulls are then the subgroups drops[t] and s1 K.
    def dfs(pool, S, span, drops, K, start):
        if len(S) == k:
            return list(S)
        s1 = S[1]
        for idx in range(start, len(pool)):
            g = pool[idx]
            if span >> g & 1:
                continue
            new_span = G.join(span, g)
            if len(S) + 1 + _omega(n // new_span.bit_count()) < k:
                continue
            acc = span
            for H in drops:
                acc &= G.join(H, g)
                if not acc:
                    break
            new_K = G.join(K, T[inv[s1]][g])
            if acc and acc & G.left_coset(s1, new_K):
                continue
            new_drops = [G.join(H, g) for H in drops] + [span]
            found = dfs(pool, S + [g], new_span, new_drops, new_K, idx + 1)
            if found is not None:
                return found
        return None

    for s1, pool in seeds:
        span = G.join(1 << e, s1)
        if 2 + _omega(n // span.bit_count()) < k:
            continue
        found = dfs(list(pool), [e, s1], span, [1 << e], 1 << e, 0)
        if found is not None:
            return found
    return None


def helly_dimension(G: FiniteGroupTable) -> int:
    """Definitional Helly dimension of a finite group.

    The largest size of a coset system with empty intersection all of whose
    proper subsystems intersect. Sizes of such systems are downward closed
    from 2 (merge two members), so the search stops at the first failure.
    The trivial group has no empty systems and gets 0.
    """
    if G.order == 1:
        return 0
    k = 2
    while _minimal_empty_exists(G, k + 1) is not None:
        k += 1
    return k


def brute_kappa_table(G: FiniteGroupTable, max_order: int = DEFAULT_MAX_TABLE_ORDER) -> int:
    if G.order > max_order:
        raise ResourceError(f"group order {G.order} exceeds bound {max_order}")
    return helly_dimension(G)


# -- constructors and the built-in corpus ---------------------------------

def group_from_closure(generators: Sequence[Hashable], mul: Callable, identity: Hashable,
                       name: str = "") -> FiniteGroupTable:
    """Close ``generators`` under ``mul`` and tabulate the result."""
    elems = [identity]
    index = {identity: 0}
    i = 0
    while i < len(elems):
        a = elems[i]
        i += 1
        for g in generators:
            c = mul(a, g)
            if c not in index:
                index[c] = len(elems)
                elems.append(c)
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    return FiniteGroupTable(table, 0, name, check=False)


def cyclic(n: int) -> FiniteGroupTable:
    return FiniteGroupTable([[(a + b) % n for b in range(n)] for a in range(n)], 0, f"C{n}",
                            check=False)


def abelian_table(factors: Sequence[int], name: str = "") -> FiniteGroupTable:
    """Table of ``Z/n_1 x ... x Z/n_k`` with elements in mixed-radix order."""
    elems = list(itertools.product(*(range(n) for n in factors)))
    index = {v: i for i, v in enumerate(elems)}
    table = [[index[tuple((x + y) % n for x, y, n in zip(a, b, factors))] for b in elems]
             for a in elems]
    label = name or "x".join(f"C{n}" for n in factors) or "C1"
    return FiniteGroupTable(table, index[tuple(0 for _ in factors)], label, check=False)


def direct_product(G: FiniteGroupTable, H: FiniteGroupTable, name: str = "") -> FiniteGroupTable:
    n, m = G.order, H.order
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n * m)]
             for a in range(n * m)]
    return FiniteGroupTable(table, G.identity * m + H.identity, name or f"{G.name}x{H.name}",
                            check=False)


def metacyclic(m: int, n: int, r: int, name: str = "") -> FiniteGroupTable:
    """Semidirect product ``Z/m x| Z/n`` where the generator of ``Z/n`` acts by ``a -> r a``."""
    if pow(r, n, m) != 1 % m:
        raise InputError("r^n must be 1 mod m")

    def mul(u, v):
        return ((u[0] + pow(r, u[1], m) * v[0]) % m, (u[1] + v[1]) % n)

    return group_from_closure([(1 % m, 0), (0, 1 % n)], mul, (0, 0), name)


def dihedral(n: int) -> FiniteGroupTable:
    """Dihedral group of order ``2n``."""
    return metacyclic(n, 2, n - 1, f"D{2 * n}")


def dicyclic(n: int) -> FiniteGroupTable:
    """Dicyclic group of order ``4n`` (``n = 2`` gives the quaternion group)."""
    def mul(u, v):
        k, e = u
        l, f = v
        k2 = (k + (l if e == 0 else -l) + (n if e and f else 0)) % (2 * n)
        return (k2, e ^ f)

    return group_from_closure([(1, 0), (0, 1)], mul, (0, 0), "Q8" if n == 2 else f"Dic{4 * n}")


def symmetric(n: int) -> FiniteGroupTable:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])] if n > 1 else []
    return group_from_closure(gens, lambda p, q: tuple(p[i] for i in q), tuple(range(n)),
                              f"S{n}")


def alternating(n: int) -> FiniteGroupTable:
    gens = [tuple([1, 2, 0] + list(range(3, n)))]
    gens += [tuple([0] + list(range(2, n)) + [1]) if n % 2 == 0 else tuple(list(range(1, n)) + [0])]
    if n % 2 == 0:
        gens[1] = tuple([0, 2, 3] + list(range(4, n)) + [1])
    return group_from_closure(gens, lambda p, q: tuple(p[i] for i in q), tuple(range(n)),
                              f"A{n}")


def sl2(p: int) -> FiniteGroupTable:
    def mul(A, B):
        a, b, c, d = A
        e, f, g, h = B
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    return group_from_closure([(1, 1, 0, 1), (0, p - 1, 1, 0)], mul, (1, 0, 0, 1), f"SL(2,{p})")


def _pauli() -> FiniteGroupTable:
    """Central product C4 o D8, realised as signed 2x2 monomial matrices times i^k."""
    def norm(M, k):
        first = next(v for v in M if v)
        return (M, k % 4) if first > 0 else (tuple(-v for v in M), (k + 2) % 4)

    def mul(u, v):
        A, B = u[0], v[0]
        M = tuple(sum(A[2 * i + t] * B[2 * t + j] for t in range(2))
                  for i in range(2) for j in range(2))
        return norm(M, u[1] + v[1])

    return group_from_closure([((0, 1, 1, 0), 0), ((1, 0, 0, -1), 0), ((1, 0, 0, 1), 1)],
                              mul, ((1, 0, 0, 1), 0), "C4oD8")



def _klein_by_c4() -> FiniteGroupTable:
    """``(Z/2)^2 x| Z/4`` with the generator swapping the two coordinates."""
    def mul(u, v):
        a, b, k = u
        c, d, l = v
        if k % 2:
            c, d = d, c
        return ((a + c) % 2, (b + d) % 2, (k + l) % 4)

    return group_from_closure([(1, 0, 0), (0, 0, 1)], mul, (0, 0, 0), "C2^2:C4")


def _generalized_dihedral_c3c3() -> FiniteGroupTable:
    def mul(u, v):
        a, b, s = u
        c, d, t = v
        sign = -1 if s else 1
        return ((a + sign * c) % 3, (b + sign * d) % 3, s ^ t)

    return group_from_closure([(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul, (0, 0, 0), "C3^2:C2")


def _c3_by_d8() -> FiniteGroupTable:
    """``Z/3 x| D8`` where rotations of odd order-4 power invert ``Z/3``."""
    def mul(u, v):
        c, k, e = u
        d, l, f = v
        sign = -1 if k % 2 else 1
        return ((c + sign * d) % 3, (k + (-l if e else l)) % 4, e ^ f)

    return group_from_closure([(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul, (0, 0, 0), "C3:D8")


def _abelian_types(n: int) -> list[tuple[int, ...]]:
    from .abelian import abelian_groups_of_order
    return [A.invariant_factors for A in abelian_groups_of_order(n)]


def corpus(max_order: int = 24) -> list[FiniteGroupTable]:
    """Built-in groups up to ``max_order``: one table per isomorphism type for
    orders up to 24 (abelian types generated, non-abelian ones listed)."""
    out = [FiniteGroupTable([[0]], 0, "C1", check=False)]
    for n in range(2, max_order + 1):
        for fac in _abelian_types(n):
            out.append(abelian_table(fac))
    nonabelian = [
        dihedral(3), dihedral(4), dicyclic(2), dihedral(5), alternating(4), dihedral(6),
        dicyclic(3), dihedral(7), dihedral(8), dicyclic(4),
        metacyclic(8, 2, 3, "SD16"), metacyclic(8, 2, 5, "M16"), metacyclic(4, 4, 3, "C4:C4"),
        direct_product(cyclic(2), dihedral(4)), direct_product(cyclic(2), dicyclic(2)),
        _pauli(), _klein_by_c4(),
        dihedral(9), _generalized_dihedral_c3c3(), direct_product(cyclic(3), dihedral(3)),
        dihedral(10), dicyclic(5), metacyclic(5, 4, 2, "F20"), metacyclic(7, 3, 2, "C7:C3"),
        dihedral(11), dihedral(12), dicyclic(6), symmetric(4), sl2(3),
        direct_product(cyclic(2), alternating(4)), direct_product(cyclic(4), dihedral(3)),
        direct_product(cyclic(2), dicyclic(3)), direct_product(cyclic(3), dicyclic(2)),
        direct_product(cyclic(3), dihedral(4)), metacyclic(3, 8, 2, "C3:C8"),
        direct_product(cyclic(2), direct_product(cyclic(2), dihedral(3))), _c3_by_d8(),
    ]
    seen = set()
    for G in nonabelian:
        if G.order <= max_order and G.name not in seen:
            seen.add(G.name)
            out.append(G)
    return out


# -- products of coset spaces ----------------------------------------------

@dataclass(frozen=True)
class ProductPoint:
    """One coset index per factor of a ``CosetSpaceAction``."""

    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int]):
        object.__setattr__(self, "indices", tuple(int(i) for i in indices))


class CosetSpaceAction:
    """``G`` acting by left multiplication on ``G/H_1 x ... x G/H_m``.

    Points of factor ``i`` are the left cosets of ``H_i``, numbered by their
    smallest element; index 0 is ``H_i`` itself.
    """

    def __init__(self, group: FiniteGroupTable, point_stabilizers: Sequence[Iterable[int]]):
        self.group = group
        self.stabilizers: list[int] = []
        self.points: list[list[int]] = []
        for H in point_stabilizers:
            mask = H if isinstance(H, int) else sum(1 << int(h) for h in set(H))
            if group.generate(_bits(mask)) != mask:
                raise InputError(f"{sorted(_bits(mask))} is not a subgroup")
            cosets = {group.left_coset(g, mask) for g in range(group.order)}
            self.stabilizers.append(mask)
            self.points.append(sorted(cosets, key=lambda c: (c & -c)))

    @property
    def factors(self) -> int:
        return len(self.stabilizers)

    def point(self, indices: Iterable[int]) -> ProductPoint:
        p = ProductPoint(indices)
        if len(p.indices) != self.factors:
            raise InputError(f"point has {len(p.indices)} coordinates, expected {self.factors}")
        for i, c in enumerate(p.indices):
            if not 0 <= c < len(self.points[i]):
                raise InputError(f"coset index {c} out of range in factor {i}")
        return p

    def transporter(self, i: int, a: int, b: int) -> int:
        """Mask of ``{g : g . point_a = point_b}`` in factor ``i``; a left coset of a conjugate of ``H_i``."""
        G = self.group
        src, dst = self.points[i][a], self.points[i][b]
        s = next(_bits(src))
        T, inv_s = G.table, G.inverse[s]
        out = 0
        for t in _bits(dst):
            out |= 1 << T[t][inv_s]
        return out

    def transporters(self, x, y) -> list[int]:
        x, y = self.point(_coords(x)), self.point(_coords(y))
        return [self.transporter(i, a, b) for i, (a, b) in enumerate(zip(x.indices, y.indices))]


def _coords(p) -> tuple[int, ...]:
    return p.indices if isinstance(p, ProductPoint) else tuple(p)


def transporting_element(action: CosetSpaceAction, x, y) -> Optional[int]:
    """Least group element mapping ``x`` to ``y`` in every factor, if any."""
    acc = action.group.full_mask
    for C in action.transporters(x, y):
        acc &= C
    return next(_bits(acc), None)


def same_orbit(action: CosetSpaceAction, x, y) -> bool:
    return transporting_element(action, x, y) is not None


def min_separating_projection(action: CosetSpaceAction, x, y) -> list[int]:
    """Smallest (then lexicographically first) factor subset whose projections
    of ``x`` and ``y`` lie in different orbits."""
    Cs = action.transporters(x, y)
    for size in range(1, len(Cs) + 1):
        for idx in itertools.combinations(range(len(Cs)), size):
            acc = action.group.full_mask
            for i in idx:
                acc &= Cs[i]
            if not acc:
                return list(idx)
    raise PreconditionError("x and y lie in the same orbit")


def helly_to_orbit_witness(G: FiniteGroupTable, cosets: Sequence[int]):
    """Turn a coset system that is empty while all proper subsystems meet
    into an action and two points separated only by the full projection.

    Factor ``i`` is ``G/H_i`` for the subgroup ``H_i`` under coset ``i``;
    ``x`` is the base point of every factor and ``y_i`` the coset itself, so
    the elements carrying ``x_i`` to ``y_i`` form exactly coset ``i``.
    """
    cosets = list(cosets)
    if not cosets:
        raise PreconditionError("empty coset system")
    acc = G.full_mask
    for C in cosets:
        acc &= C
    if acc:
        raise PreconditionError("the coset system has non-empty intersection")
    for i in range(len(cosets)):
        acc = G.full_mask
        for j, C in enumerate(cosets):
            if j != i:
                acc &= C
        if not acc and len(cosets) > 1:
            raise PreconditionError(f"dropping coset {i} still leaves an empty intersection")
    stabs = []
    for C in cosets:
        g = next(_bits(C))
        H = G.left_coset(G.inverse[g], C)
        if G.generate(_bits(H)) != H:
            raise InputError("not a left coset")
        stabs.append(H)
    action = CosetSpaceAction(G, stabs)
    x = ProductPoint([0] * len(cosets))
    y = ProductPoint([action.points[i].index(C) for i, C in enumerate(cosets)])
    return action, x, y


def minimal_empty_systems(G: FiniteGroupTable, max_size: int):
    """Yield every coset system of at most ``max_size`` members, up to left
    translation, whose intersection is empty while each proper subsystem meets.

    The translate is fixed by making the first member a subgroup; the
    remaining members come in increasing order from the list of all cosets.
    """
    cosets = G.cosets()
    full = G.full_mask

    def extend(system, inters, start):
        # inters[j] = intersection of system without member j; inters[-1] = all
        for idx in range(start, len(cosets)):
            C = cosets[idx]
            if C in system:
                continue
            total = inters[-1] & C
            if any(not (s & C) for s in inters[:-1]):
                continue
            if not inters[-1]:
                continue
            if not total:
                yield system + [C]
                continue
            if len(system) + 1 < max_size:
                new = [s & C for s in inters[:-1]] + [inters[-1], total]
                yield from extend(system + [C], new, idx + 1)

    for H in G.subgroups():
        if max_size >= 1:
            yield from extend([H], [full, H], 0)
