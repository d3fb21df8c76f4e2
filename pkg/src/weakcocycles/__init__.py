"""Subadditive functions on finite groups, the weak 2-cocycles built from
them, and the coset posets they induce."""

from .groups import (FiniteGroup, Subgroup, build_group, cyclic, dihedral, symmetric,
                     subgroup_closure, quotient_group, left_cosets, verify_group_axioms)
from .slg import (SubadditiveFn, validate_r, m_subgroup, defect_table, r_from_generators,
                  n1_set, bump, halve, evenize, inflate_r, enumerate_slg, add_r)
from .cocycle import (IdempotentCocycle, ValuedCocycle, Monomial, CoboundarySeed,
                      idempotent_from_r, br_from_r, epsilon_table, verify_cocycle,
                      inertial_group, coboundary_from_seed, decompose, hereditary_criterion,
                      rf_from_f, partner_h, restrict, inflate_idempotent, deflate_idempotent)
from .units import UnitWord, unit_word_normalize
from .order import CosetPoset, poset_from_r, poset_from_idempotent, verify_poset, hasse, to_dot

__version__ = "0.1.0"
