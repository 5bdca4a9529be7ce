"""Helly dimension of groups and the number of factors needed to keep
orbits closed: exact algorithms, brute-force oracles and a JSON CLI."""

from .abelian import (ArithmeticProgression, Coset, FiniteAbelianGroup, Subgroup,
                      brute_kappa, helly_certificate, intersect_cosets,
                      intersect_progressions, kappa_abelian, min_generators, witness_system)
from .binary_forms import (FactoredForm, Gl2Component, OneParameterSubgroup, ProjectiveRoot,
                           birkes_richardson_oracle, gl2_orbit_closed, gl2_select,
                           sl2_orbit_closed, sl2_select)
from .errors import DomainError, HellyError, InputError, PreconditionError, ResourceError
from .finite_groups import (CosetSpaceAction, FiniteGroupTable, ProductPoint,
                            brute_kappa_table, helly_to_orbit_witness,
                            min_separating_projection, same_orbit)
from .selection import SelectionReport
from .torus import WeightSystem, orbit_closed, select_factors, steinitz_subset

__all__ = ["ArithmeticProgression", "Coset", "CosetSpaceAction", "DomainError", "FactoredForm",
           "FiniteAbelianGroup", "FiniteGroupTable", "Gl2Component", "HellyError",
           "InputError", "OneParameterSubgroup", "PreconditionError", "ProductPoint",
           "ProjectiveRoot", "ResourceError", "SelectionReport", "Subgroup", "WeightSystem",
           "birkes_richardson_oracle", "brute_kappa", "brute_kappa_table", "gl2_orbit_closed",
           "gl2_select", "helly_certificate", "helly_to_orbit_witness", "intersect_cosets",
           "intersect_progressions", "kappa_abelian", "min_generators",
           "min_separating_projection", "orbit_closed", "same_orbit", "select_factors",
           "sl2_orbit_closed", "sl2_select", "steinitz_subset", "witness_system"]
