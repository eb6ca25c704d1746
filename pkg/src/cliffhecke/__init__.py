"""Exact Clifford algebras of multivectors with non-symmetric bilinear forms,
and symbolic checks of Hecke / Temperley-Lieb relations among bivectors."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalars import Scalar, parse_scalar, substitute
from .exterior import (
    AlgebraContext,
    Multivector,
    contract,
    contract_generator,
    grade_involution,
    wedge,
    wedge_blades,
)
from .clifford import (
    BilinearForm,
    antisymmetric_part,
    clifford_mul,
    clifford_product,
    gamma,
    grade_project,
    quadratic_form,
    symmetric_part,
)
from .hecke import (
    HeckeFormSpec,
    build_hecke_form,
    check_relations,
    count_report,
    default_form,
    derive_constraints,
    hecke_generator,
    square_closed_form,
)
from .tl import check_tl, tl_generator_cleared
from .kernel import BACKEND
