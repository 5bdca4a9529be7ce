"""Binary forms under SL2 and GL2.

Forms are kept factored over the rationals: a non-zero coefficient and a
multiset of linear factors ``p*x + q*y``. Every closedness and stabilizer
criterion used here depends only on that root configuration, together with
the determinant twist ``e`` of a GL2 component ``Pol_d (x) det^e``.

One-parameter subgroups are described by a positive eigenline ``L`` and a
slope ``q = r/n``; on the monomial ``L^i L'^(d-i)`` of a twisted component
the weight is ``r(2e - d) + n(2i - d)``.

Component indices in results are 0-based.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .errors import DomainError, InputError, PreconditionError
from .exact import integer_rank, solve_integer_linear
from .selection import SelectionReport


@dataclass(frozen=True, order=True)
class ProjectiveRoot:
    """The linear form ``p*x + q*y`` up to scalars (gcd 1, first non-zero entry positive)."""

    p: int
    q: int

    def __init__(self, p: int, q: int):
        p, q = int(p), int(q)
        if p == 0 and q == 0:
            raise InputError("(0, 0) is not a linear form")
        g = gcd(p, q)
        p, q = p // g, q // g
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __repr__(self):
        terms = []
        for c, v in ((self.p, "x"), (self.q, "y")):
            if c:
                terms.append(v if c == 1 else "-" + v if c == -1 else f"{c}{v}")
        return "+".join(terms).replace("+-", "-")


X = ProjectiveRoot(1, 0)
Y = ProjectiveRoot(0, 1)
RANDOM_ROOTS = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (1, -2))


def _det(a: ProjectiveRoot, b: ProjectiveRoot) -> int:
    return a.p * b.q - a.q * b.p


def fresh_lines(avoid: Iterable[ProjectiveRoot], count: int) -> list[ProjectiveRoot]:
    """``count`` distinct lines ``x + k y`` (k = 2, 3, ...) outside ``avoid``."""
    avoid = set(avoid)
    out, k = [], 2
    while len(out) < count:
        L = ProjectiveRoot(1, k)
        if L not in avoid:
            out.append(L)
        k += 1
    return out


class FactoredForm:
    """``coeff * prod(L ** mult)``, a non-zero binary form of degree ``sum(mult)``."""

    __slots__ = ("coeff", "roots")

    def __init__(self, coeff=1, roots: Union[dict, Iterable] = ()):
        coeff = Fraction(coeff)
        if coeff == 0:
            raise InputError("coefficient must be non-zero (zero components are passed as None)")
        counts: Counter = Counter()
        items = roots.items() if isinstance(roots, dict) else roots
        for item in items:
            if isinstance(item, ProjectiveRoot):
                counts[item] += 1
                continue
            L, mult = item
            if not isinstance(L, ProjectiveRoot):
                L = ProjectiveRoot(*L)
            if int(mult) < 1:
                raise InputError("root multiplicities must be positive")
            counts[L] += int(mult)
        self.coeff = coeff
        self.roots = tuple(sorted(counts.items()))

    @classmethod
    def from_factors(cls, *factors: tuple[int, int], coeff=1) -> "FactoredForm":
        """``FactoredForm.from_factors((1, 0), (1, 1))`` is ``x (x + y)``."""
        return cls(coeff, [ProjectiveRoot(*f) for f in factors])

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def distinct_roots(self) -> set[ProjectiveRoot]:
        return {L for L, _ in self.roots}

    def multiplicity(self, L: ProjectiveRoot) -> int:
        return dict(self.roots).get(L, 0)

    def __eq__(self, other):
        return isinstance(other, FactoredForm) and (self.coeff, self.roots) == (other.coeff, other.roots)

    def __hash__(self):
        return hash((self.coeff, self.roots))

    def __repr__(self):
        body = " ".join(f"({L})" + (f"^{m}" if m > 1 else "") for L, m in self.roots) or "1"
        return body if self.coeff == 1 else f"{self.coeff}*{body}"


@dataclass(frozen=True)
class Gl2Component:
    """A vector in ``Pol_d (x) det^e``."""

    form: FactoredForm
    det_twist: int

    def __post_init__(self):
        if self.form.degree == 0 and self.det_twist == 0:
            raise InputError("the trivial module Pol_0 (x) det^0 is not allowed")

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def weight(self) -> int:
        """``2e - d``, the scalar-matrix weight; its sign gives M+, M0 or M-."""
        return 2 * self.det_twist - self.form.degree


def multiplicity(f: FactoredForm, L: ProjectiveRoot) -> int:
    return f.multiplicity(L)


def high_mult_roots(f: FactoredForm) -> set[ProjectiveRoot]:
    """Linear factors of multiplicity at least ``d/2`` (at most two)."""
    if f.degree == 0:
        raise DomainError("every line is a high-multiplicity root of a constant")
    return {L for L, m in f.roots if 2 * m >= f.degree}


def common_high_root(forms: Sequence[FactoredForm]) -> set[ProjectiveRoot]:
    if not forms:
        raise InputError("need at least one form")
    out = None
    for f in forms:
        h = high_mult_roots(f)
        out = h if out is None else out & h
    return out


def _check_sl2(forms: Sequence[FactoredForm]):
    for f in forms:
        if f is None:
            raise InputError("zero component; strip zero components first")
        if f.degree == 0:
            raise InputError("degree-0 component is a trivial SL2-module; strip it first")


def _two_line_power(f: FactoredForm) -> Optional[frozenset]:
    if len(f.roots) == 2 and f.roots[0][1] == f.roots[1][1]:
        return frozenset(L for L, _ in f.roots)
    return None


def sl2_orbit_closed(forms: Sequence[FactoredForm]) -> bool:
    """SL2-orbit closedness of a tuple of non-zero forms of positive degree."""
    _check_sl2(forms)
    if not forms or not common_high_root(forms):
        return True
    pairs = {_two_line_power(f) for f in forms}
    return len(pairs) == 1 and None not in pairs


def _root_set(forms: Iterable[FactoredForm]) -> set[ProjectiveRoot]:
    out: set = set()
    for f in forms:
        out |= f.distinct_roots()
    return out


def sl2_stabilizer_dimension(forms: Sequence[FactoredForm]) -> int:
    _check_sl2(forms)
    R = sorted(_root_set(forms))
    if not R:
        return 3
    if len(R) == 1:
        return 1
    if len(R) == 2:
        L1, L2 = R
        return int(all(f.multiplicity(L1) == f.multiplicity(L2) for f in forms))
    return 0


def sl2_orbit_dimension(forms: Sequence[FactoredForm]) -> int:
    return 3 - sl2_stabilizer_dimension(forms)


def strip_zero(components: Sequence) -> tuple[list[int], list[int]]:
    """Split indices into kept and stripped (``None`` = zero component)."""
    kept = [i for i, c in enumerate(components) if c is not None]
    return kept, [i for i, c in enumerate(components) if c is None]


def _bounded_select(items, closed, dim, bound) -> SelectionReport:
    kept, stripped = strip_zero(items)
    vals = [items[i] for i in kept]
    if not closed(vals):
        raise PreconditionError("orbit is not closed")
    full = dim(vals)
    for size in range(0 if not vals else 1, bound + 1):
        for idx in itertools.combinations(range(len(vals)), size):
            sub = [vals[i] for i in idx]
            if closed(sub) and dim(sub) == full:
                return SelectionReport(tuple(kept[i] for i in idx), True, full, full,
                                       tuple(stripped))
    raise AssertionError(f"no closed full-dimensional projection with at most {bound} factors")


def sl2_select(forms: Sequence[Optional[FactoredForm]]) -> SelectionReport:
    """Smallest factor subset (at most 3) keeping a closed orbit of full dimension."""
    return _bounded_select(forms, sl2_orbit_closed, sl2_orbit_dimension, 3)


# -- GL2 -------------------------------------------------------------------

def _check_gl2(components):
    for c in components:
        if c is None:
            raise InputError("zero component; strip zero components first")
        if not isinstance(c, Gl2Component):
            raise InputError(f"expected Gl2Component, got {type(c).__name__}")


def gl2_classify(components: Sequence[Gl2Component]) -> tuple[list[int], list[int], list[int]]:
    """Indices with ``2e - d`` positive, zero, negative."""
    plus = [i for i, c in enumerate(components) if c.weight > 0]
    zero = [i for i, c in enumerate(components) if c.weight == 0]
    minus = [i for i, c in enumerate(components) if c.weight < 0]
    return plus, zero, minus


def mu(c: Gl2Component, L: ProjectiveRoot) -> Fraction:
    """Critical slope ``(d - 2 m_L) / (2e - d)`` of a component outside M0."""
    if c.weight == 0:
        raise DomainError("mu is undefined on components with 2e = d")
    return Fraction(c.degree - 2 * c.form.multiplicity(L), c.weight)


@dataclass(frozen=True)
class SlopeInterval:
    """Closed interval of slopes; ``None`` marks an unbounded side."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def __contains__(self, q) -> bool:
        return (self.lo is None or q >= self.lo) and (self.hi is None or q <= self.hi)


def gl2_feasible_slopes(components: Sequence[Gl2Component], L: ProjectiveRoot) -> Optional[SlopeInterval]:
    """Slopes of 1-PS with positive eigenline ``L`` along which the limit exists."""
    _check_gl2(components)
    plus, zero, minus = gl2_classify(components)
    if any(2 * components[j].form.multiplicity(L) < components[j].degree for j in zero):
        return None
    lo = max((mu(components[j], L) for j in plus), default=None)
    hi = min((mu(components[j], L) for j in minus), default=None)
    if lo is not None and hi is not None and lo > hi:
        return None
    return SlopeInterval(lo, hi)


def gl2_rules_out(components: Sequence[Gl2Component], J: Iterable[int], L: ProjectiveRoot) -> bool:
    """Whether the sub-tuple indexed by ``J`` admits no limit with eigenline ``L``
    (for 1-PS with non-zero ``n``)."""
    _check_gl2(components)
    J = list(J)
    sub = [components[j] for j in J]
    if any(c.weight == 0 and 2 * c.form.multiplicity(L) < c.degree for c in sub):
        return True
    top = max((mu(c, L) for c in sub if c.weight > 0), default=None)
    bottom = min((mu(c, L) for c in sub if c.weight < 0), default=None)
    return top is not None and bottom is not None and top > bottom


def _fixed_by_torus(components: Sequence[Gl2Component]) -> bool:
    """Is the tuple fixed by a 1-PS with ``n > 0``, i.e. a monomial tuple in two
    lines ``L1, L2`` with constant ``mu_L1`` off M0 and ``m_L1 = d/2`` on M0."""
    R = _root_set(c.form for c in components)
    if len(R) > 2:
        return False
    lines = sorted(R) + fresh_lines(R, 2)
    for L1, L2 in itertools.permutations(lines, 2):
        if not R <= {L1, L2}:
            continue
        slopes = {mu(c, L1) for c in components if c.weight}
        if len(slopes) <= 1 and all(2 * c.form.multiplicity(L1) == c.degree
                                    for c in components if c.weight == 0):
            return True
    return False


def gl2_orbit_closed(components: Sequence[Gl2Component]) -> bool:
    """GL2-orbit closedness of a tuple of non-zero, non-trivial components."""
    _check_gl2(components)
    plus, zero, minus = gl2_classify(components)
    zero_forms = [components[j].form for j in zero]
    if not plus and not minus:
        return sl2_orbit_closed(zero_forms)
    if not plus or not minus:
        # the scalar 1-PS contracts the non-M0 part to 0
        return False
    if all(components[j].degree == 0 for j in plus + minus):
        return sl2_orbit_closed(zero_forms)
    pool: set = set()
    for c in components:
        if c.degree:
            pool |= high_mult_roots(c.form)
    if all(gl2_feasible_slopes(components, L) is None for L in sorted(pool)):
        return True
    # some limit exists: closed iff the point is fixed by a non-trivial 1-PS
    return _fixed_by_torus(components)


def gl2_stabilizer_dimension(components: Sequence[Gl2Component]) -> int:
    _check_gl2(components)
    R = sorted(_root_set(c.form for c in components))
    if not R:
        return 3
    if len(R) == 1:
        L = R[0]
        rows = [[c.det_twist - c.form.multiplicity(L), c.det_twist] for c in components]
        return 1 + 2 - integer_rank(rows)
    if len(R) == 2:
        L1, L2 = R
        rows = [[c.det_twist - c.form.multiplicity(L1), c.det_twist - c.form.multiplicity(L2)]
                for c in components]
        return 2 - integer_rank(rows)
    return int(all(c.weight == 0 for c in components))


def gl2_orbit_dimension(components: Sequence[Gl2Component]) -> int:
    return 4 - gl2_stabilizer_dimension(components)


def gl2_select(components: Sequence[Optional[Gl2Component]]) -> SelectionReport:
    """Smallest factor subset (at most 5) keeping a closed orbit of full dimension."""
    return _bounded_select(components, gl2_orbit_closed, gl2_orbit_dimension, 5)


# -- independent closedness oracle ----------------------------------------

@dataclass(frozen=True)
class OneParameterSubgroup:
    """Eigenline ``L`` with slope ``q = r/n`` (``n > 0``), or the scalar
    subgroup ``z -> z^sign`` when ``L`` is ``None``."""

    L: Optional[ProjectiveRoot]
    q: Fraction


def _torus_system_solvable(rows: list[tuple[int, int]], targets: list[Fraction]) -> bool:
    """Do ``alpha, beta`` in C* exist with ``alpha^u beta^w = t`` for every row?"""
    if not rows:
        return True
    MT = [[r[0] for r in rows], [r[1] for r in rows]]
    _, kernel = solve_integer_linear(MT, [0, 0], cols=len(rows))
    for k in kernel:
        val = Fraction(1)
        for kj, t in zip(k, targets):
            val *= t ** kj
        if val != 1:
            return False
    return True


def _monomial_tuple_in_orbit(items, L, Lp, exps, coeffs, special: bool) -> bool:
    """Is ``(c_j L^a_j L'^b_j)_j`` in the orbit of the factored tuple ``items``?"""
    R = _root_set(f for f, _ in items)
    if len(R) > 2:
        return False
    lines = sorted(R) + fresh_lines(R | {L, Lp}, 2)
    for P1, P2 in itertools.permutations(lines, 2):
        ok = True
        for (f, _), (a, b) in zip(items, exps):
            if f.multiplicity(P1) != a or f.multiplicity(P2) != b or a + b != f.degree:
                ok = False
                break
        if not ok:
            continue
        D = Fraction(_det(P1, P2), _det(L, Lp))
        rows, targets = [], []
        for (f, e), (a, b), c in zip(items, exps, coeffs):
            if special:
                rows.append((a, b))
                targets.append(f.coeff / c)
            else:
                rows.append((a - e, b - e))
                targets.append(f.coeff * D ** e / c)
        if special:
            rows.append((1, 1))
            targets.append(1 / D)
        if _torus_system_solvable(rows, targets):
            return True
    return False


def _candidate_subgroups(items, special: bool):
    R = sorted(_root_set(f for f, _ in items))
    pool = R + fresh_lines(R, 1)
    if not special:
        yield OneParameterSubgroup(None, Fraction(1))
        yield OneParameterSubgroup(None, Fraction(-1))
    for L in pool:
        if special:
            yield OneParameterSubgroup(L, Fraction(0))
            continue
        # breakpoints where some component's leading weight vanishes
        breaks = sorted({Fraction(f.degree - 2 * f.multiplicity(L), 2 * e - f.degree)
                         for f, e in items if 2 * e != f.degree})
        samples = list(breaks)
        if breaks:
            samples.append(breaks[0] - 1)
            samples.append(breaks[-1] + 1)
            samples += [(a + b) / 2 for a, b in zip(breaks, breaks[1:])]
        else:
            samples.append(Fraction(0))
        for q in sorted(set(samples)):
            yield OneParameterSubgroup(L, q)


def _oracle_items(components: Sequence, special: bool) -> list:
    items = []
    for c in components:
        if c is None:
            raise InputError("zero component; strip zero components first")
        if special:
            f = c.form if isinstance(c, Gl2Component) else c
            if f.degree == 0:
                raise InputError("degree-0 component is a trivial SL2-module")
            items.append((f, None))
        else:
            if not isinstance(c, Gl2Component):
                raise InputError("GL2 oracle needs Gl2Component inputs")
            items.append((c.form, c.det_twist))
    return items


def _group_flag(group: str) -> bool:
    group = group.upper()
    if group not in ("SL2", "GL2"):
        raise InputError("group must be SL2 or GL2")
    return group == "SL2"


def _limit_verdict(items, rho: OneParameterSubgroup, special: bool) -> Optional[bool]:
    """``None`` if the limit along ``rho`` does not exist, else whether it lies
    in the orbit. Weights on ``L^i L'^(d-i) (x) det^e`` follow
    ``r(2e - d) + n(2i - d)`` with ``q = r/n``."""
    if rho.L is None:
        ws = [rho.q * (2 * e - f.degree) for f, e in items]
        if min(ws, default=0) < 0:
            return None
        return not any(w > 0 for w in ws)
    L = rho.L
    Lp = next(M for M in (X, Y, ProjectiveRoot(1, 1)) if M != L)
    exps, coeffs, vanishes = [], [], False
    for f, e in items:
        m = f.multiplicity(L)
        w = (rho.q * (2 * e - f.degree) if e is not None else 0) + (2 * m - f.degree)
        if w < 0:
            return None
        if w > 0:
            vanishes = True
            continue
        c = f.coeff
        for R, mult in f.roots:
            if R != L:
                # R = lambda L' + mu L; only the L' part survives in the limit
                c *= Fraction(_det(L, R), _det(L, Lp)) ** mult
        exps.append((m, f.degree - m))
        coeffs.append(c)
    if vanishes:
        return False
    return _monomial_tuple_in_orbit(items, L, Lp, exps, coeffs, special)


def limit_leaves_orbit(components: Sequence, rho: OneParameterSubgroup, group: str = "GL2") -> bool:
    """Does the limit along ``rho`` exist and lie outside the orbit?"""
    special = _group_flag(group)
    if special and rho.L is None:
        raise InputError("SL2 has no scalar one-parameter subgroups")
    return _limit_verdict(_oracle_items(components, special), rho, special) is False


def birkes_richardson_oracle(components: Sequence, group: str = "GL2") -> bool:
    """Closedness by enumerating every combinatorial type of 1-PS limit.

    The orbit is closed iff each existing limit lies in the orbit. Eigenlines
    range over all roots plus one generic line; slopes over the critical
    values and one sample per open interval between them. Limits are
    monomial tuples, and orbit membership reduces to matching the two lines
    and solving a character system on a 2-dimensional torus.
    """
    special = _group_flag(group)
    items = _oracle_items(components, special)
    return all(_limit_verdict(items, rho, special) is not False
               for rho in _candidate_subgroups(items, special))


def destabilizing_subgroup(components: Sequence, group: str = "GL2") -> Optional[OneParameterSubgroup]:
    """A 1-PS whose limit exists and leaves the orbit, or ``None`` if closed."""
    if _group_flag(group):
        forms = [c.form if isinstance(c, Gl2Component) else c for c in components]
        if sl2_orbit_closed(forms):
            return None
        return OneParameterSubgroup(min(common_high_root(forms)), Fraction(0))
    if gl2_orbit_closed(components):
        return None
    plus, zero, minus = gl2_classify(components)
    if bool(plus) != bool(minus):
        return OneParameterSubgroup(None, Fraction(1 if plus else -1))
    if not plus or all(components[j].degree == 0 for j in plus + minus):
        forms = [components[j].form for j in zero]
        return OneParameterSubgroup(min(common_high_root(forms)), Fraction(0))
    pool: set = set()
    for c in components:
        if c.degree:
            pool |= high_mult_roots(c.form)
    for L in sorted(pool):
        I = gl2_feasible_slopes(components, L)
        if I is not None:
            q = I.lo if I.lo is not None else I.hi if I.hi is not None else Fraction(0)
            return OneParameterSubgroup(L, q)
    raise AssertionError("non-closed orbit without a feasible eigenline")


def random_tuple(rng, group: str = "GL2", max_components: int = 5, max_degree: int = 4,
                 max_twist: int = 2, roots: Sequence[tuple[int, int]] = RANDOM_ROOTS) -> list:
    """Random non-zero, non-trivial tuple with roots from ``roots``."""
    special = _group_flag(group)
    out: list = []
    size = rng.randint(1, max_components)
    while len(out) < size:
        d = rng.randint(1 if special else 0, max_degree)
        f = FactoredForm(rng.choice((1, 2, -3, Fraction(1, 2))),
                         [ProjectiveRoot(*rng.choice(roots)) for _ in range(d)])
        if special:
            out.append(f)
            continue
        e = rng.randint(-max_twist, max_twist)
        if d or e:
            out.append(Gl2Component(f, e))
    return out
