"""Exact Rees algebras of modules, torsionless quotients and total blow-ups."""

from .polycore import (
    DEGREVLEX, GF, LEX, QQ, AffineRing, MonomialOrder, Polynomial, PolyRing, RingMap,
    block_order,
)
from .groebner import (
    Ideal, buchberger, eliminate, ideal_quotient, intersect, normal_form, ring_map_kernel,
    saturate,
)
from .modsyz import Submodule, kernel_of_free_map, syzygies
from .fpmod import (
    FPModule, ModuleMap, annihilator, ass_membership, base_change, coker, direct_sum, dual,
    exterior_power, free, hom_module, present, torsionless_quotient, torsionless_via_flat,
)
from .rees import (
    GradedAlgebra, VersalMap, compare_base_change, graded_piece, rees_presentation,
    sym_presentation, versal_map,
)
from .projgeo import (
    ProjChart, assofrees_check, closure_of_preimage, is_proj_empty, nash_transform,
    proj_charts, schematically_dense,
)
from .dsl import parse

__version__ = "0.1.0"
