"""Exact computations for rank-2 bundles on P^n and the maps they induce to
Grassmannians of lines."""

from .bundles import (
    CATALOG,
    BundleSpec,
    Coker,
    CokerOf,
    DirectSum,
    LineSum,
    NamedCase,
    OmegaTwist,
    Sym2OmegaTwist,
    build_case,
    chern_of,
    expand_to_presentation,
    is_globally_generated,
    is_stable_c1_3,
    parse_spec,
    resolution_type_M36,
)
from .chow import ChernData, ChowClass, euler_char_p2, euler_char_p3
from .cohomology import cohomology_table, h0_basis, restrict_to_line
from .forms import Form, parse_form
from .grassmann import (
    PluckerMap,
    check_embedding,
    join_map,
    plucker_interpolated,
    plucker_symbolic_det,
    quotient_line_at,
    verify_plucker_relations,
)
from .points import ProjPoint
from .presentation import FreePresentation

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "BundleSpec",
    "Coker",
    "CokerOf",
    "DirectSum",
    "LineSum",
    "NamedCase",
    "OmegaTwist",
    "Sym2OmegaTwist",
    "build_case",
    "chern_of",
    "expand_to_presentation",
    "is_globally_generated",
    "is_stable_c1_3",
    "parse_spec",
    "resolution_type_M36",
    "PluckerMap",
    "check_embedding",
    "join_map",
    "plucker_interpolated",
    "plucker_symbolic_det",
    "quotient_line_at",
    "verify_plucker_relations",
    "ChernData",
    "ChowClass",
    "euler_char_p2",
    "euler_char_p3",
    "cohomology_table",
    "h0_basis",
    "restrict_to_line",
    "Form",
    "parse_form",
    "ProjPoint",
    "FreePresentation",
]
