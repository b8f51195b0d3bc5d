"""Adams spectral sequence E2 pages over finite sub-Hopf algebras of the
mod 2 Steenrod algebra, with a catalog of twisted spin bordism spectra."""

from .adams import (HomotopyReport, abp_e2, anderson_groups, assemble_groups,
                    certify_collapse, parse_group)
from .chargen import CATALOG_LABELS, catalog, thom_module
from .f2la import F2Matrix, F2Vector, kernel_basis, rank, rref, solve
from .fpmodule import ModulePresentation, parse_cell_diagram, validate
from .resolve import ExtChart, chart, ext_chart, minimal_resolution
from .steenrod import Sq, SteenrodElement, adem_reduce, subalgebra

__all__ = [
    "CATALOG_LABELS", "ExtChart", "F2Matrix", "F2Vector", "HomotopyReport", "ModulePresentation",
    "Sq", "SteenrodElement", "abp_e2", "adem_reduce", "anderson_groups", "assemble_groups",
    "catalog", "certify_collapse", "chart", "ext_chart", "kernel_basis", "minimal_resolution",
    "parse_cell_diagram", "parse_group", "rank", "rref", "solve", "subalgebra", "thom_module",
    "validate",
]
