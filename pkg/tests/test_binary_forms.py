import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hellydim import binary_forms as bf
from hellydim.binary_forms import (X, Y, FactoredForm, Gl2Component, OneParameterSubgroup,
                                   ProjectiveRoot, birkes_richardson_oracle, common_high_root,
                                   destabilizing_subgroup, gl2_classify, gl2_feasible_slopes,
                                   gl2_orbit_closed, gl2_orbit_dimension, gl2_rules_out,
                                   gl2_select, gl2_stabilizer_dimension, high_mult_roots,
                                   limit_leaves_orbit, mu, multiplicity, random_tuple,
                                   sl2_orbit_closed, sl2_orbit_dimension, sl2_select,
                                   sl2_stabilizer_dimension)
from hellydim.errors import DomainError, InputError, PreconditionError

S = ProjectiveRoot(1, 1)    # x + y
D = ProjectiveRoot(1, -1)   # x - y


def F(*roots, coeff=1):
    return FactoredForm(coeff, list(roots))


def C(e, *roots):
    return Gl2Component(F(*roots), e)


TRIANGLE = [F(X, Y), F(X, S), F(Y, S)]
FIVE = [C(1), C(-1), C(1, X, Y), C(1, X, S), C(1, Y, S)]

seeds = st.integers(0, 2 ** 32 - 1)


# -- roots and forms -----------------------------------------------------------

def test_projective_root_normalization():
    assert ProjectiveRoot(-2, 4) == ProjectiveRoot(1, -2)
    assert ProjectiveRoot(0, -3) == Y
    with pytest.raises(InputError):
        ProjectiveRoot(0, 0)


def test_form_construction():
    f = FactoredForm.from_factors((1, 0), (1, 0), (0, 1), coeff=Fraction(3, 2))
    assert f.degree == 3 and f.multiplicity(X) == 2 and f.coeff == Fraction(3, 2)
    assert FactoredForm(1, {X: 2}) == FactoredForm(1, [(X, 2)]) == F(X, X)
    with pytest.raises(InputError):
        FactoredForm(0, [X])


def test_multiplicity_examples():
    assert multiplicity(F(X, X, Y), X) == 2
    assert multiplicity(F(X, X, Y), S) == 0
    assert multiplicity(F(X, S), S) == 1


def test_high_mult_roots_examples():
    assert high_mult_roots(F(X, Y)) == {X, Y}
    assert high_mult_roots(F(X, X, Y)) == {X}
    assert high_mult_roots(F(X, S, D)) == set()
    with pytest.raises(DomainError):
        high_mult_roots(F())


def test_common_high_root_examples():
    assert common_high_root(TRIANGLE) == set()
    assert common_high_root([F(X, Y), F(X, X, Y, Y)]) == {X, Y}
    assert common_high_root([F(X, X), F(X, X, X)]) == {X}


# -- SL2 -----------------------------------------------------------------------

def test_sl2_closed_examples():
    assert sl2_orbit_closed(TRIANGLE)
    assert not sl2_orbit_closed([F(X, X)])
    assert sl2_orbit_closed([F(X, Y), F(X, X, Y, Y)])
    with pytest.raises(InputError):
        sl2_orbit_closed([F()])


def test_sl2_stabilizer_examples():
    assert sl2_stabilizer_dimension([F(X, Y)]) == 1
    assert sl2_stabilizer_dimension(TRIANGLE) == 0
    assert sl2_orbit_dimension(TRIANGLE) == 3
    assert sl2_stabilizer_dimension([F(X, X, X)]) == 1


def test_sl2_select_examples():
    assert sl2_select(TRIANGLE).indices == (0, 1, 2)
    assert sl2_select([F(X, X, Y, Y)]).indices == (0,)
    rep = sl2_select([F(X, S, D), F(X, Y)])
    assert len(rep.indices) <= 2 and 0 in rep.indices
    assert sl2_select([None, F(X, Y)]).stripped == (0,)
    with pytest.raises(PreconditionError):
        sl2_select([F(X, X)])


def test_sl2_triangle_pairs_fail():
    for pair in itertools.combinations(TRIANGLE, 2):
        assert not sl2_orbit_closed(list(pair)) or sl2_orbit_dimension(list(pair)) < 3


# -- GL2 -----------------------------------------------------------------------

def test_component_rejects_trivial_module():
    with pytest.raises(InputError):
        Gl2Component(F(), 0)
    assert Gl2Component(F(X, Y), 1).weight == 0


def test_classify_and_mu():
    assert gl2_classify([C(1), C(1, X, Y), C(0, X, Y)]) == ([0], [1], [2])
    assert mu(C(1), X) == 0
    assert mu(C(0, X, X), X) == 1
    assert mu(C(2, X, X), Y) == 1
    with pytest.raises(DomainError):
        mu(C(1, X, Y), X)


def test_feasible_slopes_examples():
    I = gl2_feasible_slopes([C(1), C(-1)], X)
    assert (I.lo, I.hi) == (0, 0)
    I = gl2_feasible_slopes([C(2, X, X), C(0, X, X)], X)
    assert (I.lo, I.hi) == (-1, 1)
    I = gl2_feasible_slopes([C(2, X, X), C(0, Y, Y)], X)
    assert (I.lo, I.hi) == (-1, -1)
    # an M0 component without a high root at L closes the gate
    assert gl2_feasible_slopes([C(1), C(-1), C(1, S, D)], X) is None


def test_rules_out_examples():
    assert gl2_rules_out(FIVE, [0, 1, 2], X) is False
    assert gl2_rules_out(FIVE, [0, 1, 3], Y) is True
    assert gl2_rules_out([C(1), C(2, X)], [0, 1], X) is False
    assert gl2_rules_out([C(1), C(-1)], [0, 1], X) is False


def test_gl2_closed_examples():
    assert gl2_orbit_closed(FIVE)
    assert not gl2_orbit_closed([C(2, X, X), C(0, X, X)])
    assert gl2_orbit_closed([C(1, X), C(0, Y)])
    assert not gl2_orbit_closed([C(1), C(1, X, Y)])


def test_gl2_stabilizer_examples():
    assert gl2_stabilizer_dimension([C(1, X, X)]) == 2
    assert gl2_stabilizer_dimension([C(0, X, Y)]) == 1
    assert gl2_stabilizer_dimension(FIVE) == 0
    assert gl2_orbit_dimension(FIVE) == 4
    assert gl2_stabilizer_dimension([C(1)]) == 3
    assert gl2_stabilizer_dimension([C(1, X, Y), C(1, X, S), C(1, Y, S)]) == 1


def test_gl2_select_examples():
    assert gl2_select(FIVE).indices == (0, 1, 2, 3, 4)
    # xy with no twist is pushed to 0 by scalars; the balanced twist is closed
    assert gl2_select([C(1, X, Y)]).indices == (0,)
    with pytest.raises(PreconditionError):
        gl2_select([C(0, X, Y)])
    # det balances xy on scalars, so det^-1 is not needed
    T = [C(1), C(-1), C(0, X, Y)]
    assert gl2_select(T).indices == (0, 2)
    assert birkes_richardson_oracle([T[0], T[2]]) and gl2_orbit_dimension([T[0], T[2]]) == 3
    for sub in itertools.combinations(range(5), 4):
        comps = [FIVE[i] for i in sub]
        assert not gl2_orbit_closed(comps) or gl2_orbit_dimension(comps) < 4


def test_oracle_examples():
    assert birkes_richardson_oracle(TRIANGLE, "SL2")
    assert not birkes_richardson_oracle([F(X, X)], "SL2")
    assert birkes_richardson_oracle(FIVE, "GL2")
    assert not birkes_richardson_oracle([C(2, X, X), C(0, X, X)], "GL2")
    assert birkes_richardson_oracle([C(1, X), C(0, Y)], "GL2")


def test_destabilizing_examples():
    assert destabilizing_subgroup(TRIANGLE, "SL2") is None
    assert destabilizing_subgroup([F(X, X)], "SL2") == OneParameterSubgroup(X, Fraction(0))
    assert destabilizing_subgroup([C(1), C(1, X, Y)], "GL2") == OneParameterSubgroup(None, Fraction(1))
    with pytest.raises(InputError):
        limit_leaves_orbit([F(X, X)], OneParameterSubgroup(None, Fraction(1)), "SL2")


# -- properties over random tuples ---------------------------------------------

def _closed(group, comps):
    return sl2_orbit_closed(comps) if group == "SL2" else gl2_orbit_closed(comps)


def _dim(group, comps):
    return sl2_orbit_dimension(comps) if group == "SL2" else gl2_orbit_dimension(comps)


def _select(group, comps):
    return sl2_select(comps) if group == "SL2" else gl2_select(comps)


@pytest.mark.parametrize("group", ["SL2", "GL2"])
@settings(max_examples=300, deadline=None)
@given(seed=seeds)
def test_structured_matches_oracle(group, seed):
    comps = random_tuple(random.Random(seed), group)
    assert _closed(group, comps) == birkes_richardson_oracle(comps, group)


@pytest.mark.parametrize("group", ["SL2", "GL2"])
@settings(max_examples=200, deadline=None)
@given(seed=seeds)
def test_destabilizing_certificate(group, seed):
    comps = random_tuple(random.Random(seed), group)
    rho = destabilizing_subgroup(comps, group)
    assert (rho is None) == _closed(group, comps)
    if rho is not None:
        assert limit_leaves_orbit(comps, rho, group)


@pytest.mark.parametrize("group, bound", [("SL2", 3), ("GL2", 5)])
@settings(max_examples=150, deadline=None)
@given(seed=seeds)
def test_selection_bound_and_monotone(group, bound, seed):
    comps = random_tuple(random.Random(seed), group)
    if not _closed(group, comps):
        return
    rep = _select(group, comps)
    full = _dim(group, comps)
    assert len(rep.indices) <= bound and rep.dim_selected == rep.dim_full == full
    rest = [i for i in range(len(comps)) if i not in rep.indices]
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            sub = [comps[i] for i in sorted(rep.indices + extra)]
            assert _closed(group, sub) and _dim(group, sub) == full


@pytest.mark.parametrize("group, top", [("SL2", 3), ("GL2", 4)])
@settings(max_examples=200, deadline=None)
@given(seed=seeds)
def test_adding_component_never_grows_stabilizer(group, top, seed):
    rng = random.Random(seed)
    comps = random_tuple(rng, group)
    stab = (sl2_stabilizer_dimension if group == "SL2" else gl2_stabilizer_dimension)
    dims = [stab(comps[:k]) for k in range(1, len(comps) + 1)]
    assert all(a >= b for a, b in zip(dims, dims[1:]))
    assert all(_dim(group, comps[:k]) == top - dims[k - 1] for k in range(1, len(comps) + 1))


@settings(max_examples=300, deadline=None)
@given(seed=seeds)
def test_sl2_limit_exists_iff_common_high_root(seed):
    forms = random_tuple(random.Random(seed), "SL2")
    items = bf._oracle_items(forms, True)
    exists = any(bf._limit_verdict(items, rho, True) is not None
                 for rho in bf._candidate_subgroups(items, True))
    assert exists == bool(common_high_root(forms))
