"""Finite abelian groups, their subgroups and cosets, and Helly numbers.

Elements of ``Z/n_1 x ... x Z/n_k`` are integer tuples reduced coordinate-wise.
A subgroup is stored as the Hermite normal form of the lattice spanned by
its generators together with the relations ``n_i e_i``; that basis is
square, upper triangular and canonical, which makes membership a reduction
and equality a comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Optional, Sequence

from .errors import DomainError, InputError, PreconditionError, ResourceError
from .exact import hermite_normal_form, invariant_diagonal, solve_integer_linear
from .finite_groups import _minimal_empty_exists, abelian_table

DEFAULT_MAX_ORDER = 512


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/n_1 x ... x Z/n_k`` with ``n_1 | n_2 | ... | n_k``; ones are dropped."""

    invariant_factors: tuple[int, ...]

    def __init__(self, invariant_factors: Iterable[int] = ()):
        facs = tuple(int(n) for n in invariant_factors)
        if any(n < 1 for n in facs):
            raise InputError("invariant factors must be positive")
        facs = tuple(n for n in facs if n != 1)
        if any(b % a for a, b in zip(facs, facs[1:])):
            raise InputError(f"{facs} is not a divisibility chain")
        object.__setattr__(self, "invariant_factors", facs)

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "FiniteAbelianGroup":
        """Normalise an arbitrary product of cyclic groups, e.g. (2, 3) -> (6,)."""
        orders = [int(n) for n in orders]
        if not orders:
            return cls(())
        diag = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        return cls(sorted(invariant_diagonal(diag)))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.rank:
            raise InputError(f"element {tuple(x)} has length {len(x)}, expected {self.rank}")
        return tuple(int(a) % n for a, n in zip(x, self.invariant_factors))

    def elements(self):
        return itertools.product(*(range(n) for n in self.invariant_factors))

    def relations(self) -> list[list[int]]:
        k = self.rank
        return [[n if i == j else 0 for j in range(k)]
                for i, n in enumerate(self.invariant_factors)]

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def subgroup(self, generators: Iterable[Sequence[int]] = ()) -> "Subgroup":
        return Subgroup(self, generators)

    def coset(self, rep: Sequence[int], generators: Iterable[Sequence[int]] = ()) -> "Coset":
        return Coset(rep, self.subgroup(generators))


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """Every isomorphism type of abelian group of order ``n``."""
    if n < 1:
        raise InputError("order must be positive")

    def partitions(k, largest=None):
        largest = largest or k
        if k == 0:
            yield ()
            return
        for part in range(min(k, largest), 0, -1):
            for rest in partitions(k - part, part):
                yield (part,) + rest

    primes = []
    m, p = n, 2
    while m > 1:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            primes.append((p, e))
        p += 1
    groups = []
    for choice in itertools.product(*(list(partitions(e)) for _, e in primes)):
        depth = max((len(c) for c in choice), default=0)
        facs = [1] * depth
        for (p, _), parts in zip(primes, choice):
            for i, part in enumerate(parts):
                facs[depth - 1 - i] *= p ** part
        groups.append(FiniteAbelianGroup(facs))
    return sorted(groups, key=lambda A: (len(A.invariant_factors), A.invariant_factors))


class Subgroup:
    """Subgroup generated by ``generators`` inside ``ambient``."""

    def __init__(self, ambient: FiniteAbelianGroup, generators: Iterable[Sequence[int]] = ()):
        self.ambient = ambient
        gens = [ambient.reduce(g) for g in generators]
        self.basis = tuple(tuple(r) for r in
                           hermite_normal_form(gens + ambient.relations(), ambient.rank))

    @classmethod
    def _from_lattice(cls, ambient, rows):
        H = cls.__new__(cls)
        H.ambient = ambient
        H.basis = tuple(tuple(r) for r in
                        hermite_normal_form(list(rows) + ambient.relations(), ambient.rank))
        return H

    @property
    def index(self) -> int:
        return prod(self.basis[i][i] for i in range(self.ambient.rank))

    @property
    def order(self) -> int:
        return self.ambient.order // self.index

    @property
    def generators(self) -> list[tuple[int, ...]]:
        """Reduced non-zero lattice basis vectors (a canonical generating set)."""
        gens = [self.ambient.reduce(r) for r in self.basis]
        return [g for g in gens if any(g)]

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``x`` modulo the subgroup."""
        x = list(x)
        for i, row in enumerate(self.basis):
            q = x[i] // row[i]
            if q:
                x = [a - q * b for a, b in zip(x, row)]
        return tuple(x)

    def __contains__(self, x) -> bool:
        return not any(self.reduce(self.ambient.reduce(x)))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and (self.ambient, self.basis) == (other.ambient, other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subgroup({list(self.generators)} in {self.ambient.invariant_factors})"

    def elements(self):
        return (x for x in self.ambient.elements() if x in self)


class Coset:
    """``representative + subgroup``; the representative is canonicalised."""

    def __init__(self, representative: Sequence[int], subgroup: Subgroup):
        self.subgroup = subgroup
        self.representative = subgroup.reduce(subgroup.ambient.reduce(representative))

    @property
    def ambient(self) -> FiniteAbelianGroup:
        return self.subgroup.ambient

    def __contains__(self, x) -> bool:
        x = self.ambient.reduce(x)
        return (tuple(a - b for a, b in zip(x, self.representative))) in self.subgroup

    def __eq__(self, other):
        return (isinstance(other, Coset) and self.subgroup == other.subgroup
                and self.representative == other.representative)

    def __hash__(self):
        return hash((self.subgroup, self.representative))

    def __repr__(self):
        return f"Coset({self.representative} + <{self.subgroup.generators}>)"

    def elements(self):
        return (x for x in self.ambient.elements() if x in self)


def min_generators(A: FiniteAbelianGroup) -> int:
    return len(A.invariant_factors)


def kappa_abelian(A: FiniteAbelianGroup) -> int:
    """Helly dimension from the minimal number of generators: ``d + 1``."""
    if A.order == 1:
        raise DomainError("the trivial group has Helly dimension 0 by definition; "
                          "the generator formula does not apply")
    return min_generators(A) + 1


def _intersect_two(C: Coset, D: Coset) -> Optional[Coset]:
    A = C.ambient
    k = A.rank
    B1, B2 = C.subgroup.basis, D.subgroup.basis
    # r1 + B1^T a = r2 + B2^T c  <=>  [B1^T | -B2^T] (a, c) = r2 - r1
    M = [[B1[j][i] for j in range(len(B1))] + [-B2[j][i] for j in range(len(B2))]
         for i in range(k)]
    rhs = [b - a for a, b in zip(C.representative, D.representative)]
    sol = solve_integer_linear(M, rhs, cols=len(B1) + len(B2))
    if sol is None:
        return None
    x, kernel = sol
    na = len(B1)

    def image(coeffs):
        return [sum(coeffs[j] * B1[j][i] for j in range(na)) for i in range(k)]

    point = [r + v for r, v in zip(C.representative, image(x[:na]))]
    H = Subgroup._from_lattice(A, [image(v[:na]) for v in kernel])
    return Coset(point, H)


def intersect_cosets(cosets: Sequence[Coset]) -> Optional[Coset]:
    """Exact intersection of cosets sharing one ambient group, or ``None``."""
    if not cosets:
        raise InputError("need at least one coset")
    ambient = cosets[0].ambient
    if any(C.ambient != ambient for C in cosets):
        raise InputError("cosets live in different groups")
    acc = cosets[0]
    for C in cosets[1:]:
        acc = _intersect_two(acc, C)
        if acc is None:
            return None
    return acc


def helly_certificate(cosets: Sequence[Coset]) -> list[int]:
    """Smallest (then lexicographically first) index subset with empty intersection."""
    if intersect_cosets(cosets) is not None:
        raise PreconditionError("the coset system has non-empty intersection")
    for size in range(1, len(cosets) + 1):
        for idx in itertools.combinations(range(len(cosets)), size):
            if intersect_cosets([cosets[i] for i in idx]) is None:
                return list(idx)
    raise AssertionError("unreachable")


def _element_orders(factors: tuple[int, ...], elems) -> list[int]:
    out = []
    for x in elems:
        o = 1
        for a, n in zip(x, factors):
            m = n // gcd(a, n)
            o = o * m // gcd(o, m)
        out.append(o)
    return out


def _automorphism_orbits(factors: tuple[int, ...], elems) -> list[int]:
    """Orbit representative (least index) of each element under the group
    generated by unit scalings ``e_i -> u e_i`` and transvections
    ``e_i -> e_i + c e_j`` (``c`` a multiple of ``n_j / gcd(n_i, n_j)``)."""
    index = {x: i for i, x in enumerate(elems)}
    parent = list(range(len(elems)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def merge(image):
        for i, x in enumerate(elems):
            a, b = find(i), find(index[image(x)])
            if a != b:
                parent[max(a, b)] = min(a, b)

    r = len(factors)
    for i, n in enumerate(factors):
        for u in range(2, n):
            if gcd(u, n) == 1:
                merge(lambda x, i=i, u=u, n=n: x[:i] + ((u * x[i]) % n,) + x[i + 1:])
        for j in range(r):
            c = factors[j] // gcd(n, factors[j])
            if j != i and c < factors[j]:
                merge(lambda x, i=i, j=j, c=c: x[:j] + ((x[j] + c * x[i]) % factors[j],) + x[j + 1:])
    return [find(i) for i in range(len(elems))]


def brute_kappa(A: FiniteAbelianGroup, max_order: int = DEFAULT_MAX_ORDER) -> int:
    """Helly dimension of ``A`` by exhaustive search over point sets.

    Searches for ``k`` points whose leave-one-out coset hulls do not meet,
    for ``k = 2, 3, ...`` until none exist. Automorphisms preserve this
    property, so the first point after the identity is taken to be of
    largest order in the set and, among those, an orbit representative
    under a group of explicit automorphisms.
    """
    if A.order > max_order:
        raise ResourceError(f"group order {A.order} exceeds bound {max_order}")
    if A.order == 1:
        return 0
    factors = A.invariant_factors
    G = abelian_table(factors)
    elems = list(itertools.product(*(range(n) for n in factors)))
    orders = _element_orders(factors, elems)
    rep = _automorphism_orbits(factors, elems)
    zero = elems.index(A.zero())
    seeds = [(g, [h for h in range(len(elems)) if h not in (zero, g) and orders[h] <= orders[g]])
             for g in sorted(set(rep)) if g != zero]
    k = 2
    while _minimal_empty_exists(G, k + 1, seeds) is not None:
        k += 1
    return k


def witness_system(p: int, d: int) -> list[Coset]:
    """``d + 1`` cosets in ``(Z/p)^d`` meeting in every ``d`` but not all together.

    The coordinate hyperplanes ``x_i = 0`` and the affine hyperplane
    ``x_1 + ... + x_d = 1``.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if d < 1:
        raise InputError("d must be at least 1")
    A = FiniteAbelianGroup([p] * d)
    unit = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    system = [A.coset(unit[0], [tuple(u - v for u, v in zip(unit[j], unit[0]))
                                for j in range(1, d)])]
    system += [A.coset(A.zero(), [unit[j] for j in range(d) if j != i]) for i in range(d)]
    if intersect_cosets(system) is not None:
        raise AssertionError("witness system intersects")
    for sub in itertools.combinations(system, d):
        if intersect_cosets(list(sub)) is None:
            raise AssertionError("witness system has an empty d-subsystem")
    return system


# -- integers --------------------------------------------------------------

@dataclass(frozen=True)
class ArithmeticProgression:
    """``a + mZ``; ``m = 0`` is the singleton ``{a}``, ``m = 1`` all of Z."""

    a: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise InputError("modulus must be non-negative")
        if self.m:
            object.__setattr__(self, "a", self.a % self.m)

    def __contains__(self, x: int) -> bool:
        return x == self.a if self.m == 0 else (x - self.a) % self.m == 0


def _crt(P: ArithmeticProgression, Q: ArithmeticProgression) -> Optional[ArithmeticProgression]:
    if P.m == 0:
        return P if P.a in Q else None
    if Q.m == 0:
        return Q if Q.a in P else None
    g = gcd(P.m, Q.m)
    if (Q.a - P.a) % g:
        return None
    m1, m2 = P.m // g, Q.m // g
    t = ((Q.a - P.a) // g * pow(m1, -1, m2)) % m2 if m2 > 1 else 0
    return ArithmeticProgression(P.a + P.m * t, P.m * m2)


def intersect_progressions(progs: Sequence[ArithmeticProgression]) -> Optional[ArithmeticProgression]:
    if not progs:
        raise InputError("need at least one progression")
    acc: Optional[ArithmeticProgression] = progs[0]
    for P in progs[1:]:
        acc = _crt(acc, P)
        if acc is None:
            return None
    return acc
