"""Brute-force simplicial checks on lens spaces."""

from .cochains import (
    Cochain, bockstein, class_of, classify_order, coboundary, cup_AW, generator,
    is_cocycle, postnikov_square,
)
from .cohomology import Cohomology, CohomologyGroup, ReducedComplex
from .simplicial import OrderedSimplicialComplex, build_lens_complex, rp2
from .verify import expected_table, lens_cohomology, verify_lens_proposition

__all__ = [
    "Cochain", "Cohomology", "CohomologyGroup", "OrderedSimplicialComplex",
    "ReducedComplex", "bockstein", "build_lens_complex", "class_of", "classify_order",
    "coboundary", "cup_AW", "expected_table", "generator", "is_cocycle",
    "lens_cohomology", "postnikov_square", "rp2", "verify_lens_proposition",
]
