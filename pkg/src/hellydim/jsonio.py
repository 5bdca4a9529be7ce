"""JSON encodings of the library's inputs and results.

Rationals travel as ``"p/q"`` strings. Parsers raise ``InputError`` on any
shape problem so the command line can map them to a single exit code.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from .abelian import ArithmeticProgression, Coset, FiniteAbelianGroup
from .binary_forms import FactoredForm, Gl2Component, OneParameterSubgroup, ProjectiveRoot
from .errors import InputError
from .finite_groups import FiniteGroupTable
from .torus import WeightSystem


def rational_to_json(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_from_json(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"expected an integer or a 'p/q' string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {v!r}") from exc


def _field(obj: Any, key: str, kind=None, default=...):
    if not isinstance(obj, dict):
        raise InputError(f"expected an object with key {key!r}")
    if key not in obj:
        if default is ...:
            raise InputError(f"missing key {key!r}")
        return default
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"key {key!r} has the wrong type")
    return val


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"expected an integer, got {v!r}")
    return v


def _int_list(v) -> list[int]:
    if not isinstance(v, list):
        raise InputError(f"expected a list of integers, got {v!r}")
    return [_int(a) for a in v]


# -- abelian groups ----------------------------------------------------------

def group_from_json(obj) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(_int_list(_field(obj, "invariant_factors")))


def coset_system_from_json(obj) -> tuple[FiniteAbelianGroup, list[Coset]]:
    A = group_from_json(obj)
    cosets = []
    for c in _field(obj, "cosets", list):
        rep = _int_list(_field(c, "rep"))
        gens = [_int_list(g) for g in _field(c, "gens", list, [])]
        for v in [rep] + gens:
            if len(v) != A.rank:
                raise InputError(f"vector {v} does not have length {A.rank}")
        cosets.append(A.coset(rep, gens))
    if not cosets:
        raise InputError("need at least one coset")
    return A, cosets


def coset_to_json(C: Coset) -> dict:
    return {"rep": list(C.representative), "gens": [list(g) for g in C.subgroup.generators]}


def coset_system_to_json(A: FiniteAbelianGroup, cosets) -> dict:
    return {"invariant_factors": list(A.invariant_factors),
            "cosets": [coset_to_json(C) for C in cosets]}


def progressions_from_json(obj) -> list[ArithmeticProgression]:
    progs = [ArithmeticProgression(_int(_field(p, "a")), _int(_field(p, "m")))
             for p in _field(obj, "progressions", list)]
    if not progs:
        raise InputError("need at least one progression")
    return progs


# -- torus ---------------------------------------------------------------------

def weight_system_from_json(obj) -> WeightSystem:
    rank = _int(_field(obj, "rank"))
    factors = [[_int_list(w) for w in f] for f in _field(obj, "factors", list)]
    return WeightSystem(rank, factors)


# -- binary forms ----------------------------------------------------------------

def root_to_json(L: ProjectiveRoot) -> dict:
    return {"p": L.p, "q": L.q}


def component_from_json(obj, twisted: bool) -> Optional[Any]:
    """A component, or ``None`` for the zero form or a trivial module
    (degree 0 for SL2, degree 0 with no twist for GL2)."""
    if obj is None:
        return None
    coeff = rational_from_json(_field(obj, "coeff", default=1))
    if coeff == 0:
        return None
    roots = [(ProjectiveRoot(_int(_field(r, "p")), _int(_field(r, "q"))),
              _int(_field(r, "mult", default=1)))
             for r in _field(obj, "roots", list, [])]
    form = FactoredForm(coeff, roots)
    if not twisted:
        return form if form.degree else None
    e = _int(_field(obj, "det_twist", default=0))
    if form.degree == 0 and e == 0:
        return None
    return Gl2Component(form, e)


def component_to_json(c) -> Optional[dict]:
    if c is None:
        return None
    form = c.form if isinstance(c, Gl2Component) else c
    out = {"coeff": rational_to_json(form.coeff),
           "roots": [{"p": L.p, "q": L.q, "mult": m} for L, m in form.roots]}
    if isinstance(c, Gl2Component):
        out["det_twist"] = c.det_twist
    return out


def components_from_json(obj, twisted: bool) -> list:
    comps = _field(obj, "components", list)
    return [component_from_json(c, twisted) for c in comps]


def subgroup_to_json(rho: Optional[OneParameterSubgroup]) -> Optional[dict]:
    if rho is None:
        return None
    if rho.L is None:
        return {"scalar": int(rho.q)}
    return {"eigenline": root_to_json(rho.L), "slope": rational_to_json(rho.q)}


# -- table groups --------------------------------------------------------------------

def table_from_json(obj) -> FiniteGroupTable:
    table = _field(obj, "table", list)
    rows = [_int_list(r) for r in table]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows) or any(not 0 <= v < n for r in rows for v in r):
        raise InputError("table must be a square array of element indices")
    return FiniteGroupTable(rows, _int(_field(obj, "identity", default=0)))
