"""Exact tiling counts of reduced Aztec diamonds and hexagons via Padé-type approximants."""
from .approximants import (
    HermitePadeSolution,
    MultiGapSolution,
    PadeSolution,
    aztec_count,
    aztec_multigap_ratio,
    aztec_pade,
    aztec_special_count,
    hexagon_hermite_pade,
    hexagon_multigap_ratio,
    hexagon_reduced_count,
    kappa_closed_form,
    macmahon,
)
from .exact import (
    BigRational,
    LaurentSeries,
    LinearSystem,
    Poly,
    binomial,
    det_exact,
    laurent_expand,
    rational_str,
    solve_linear_exact,
    to_rational,
)
from .gaps import GapSet, parse_gapset

__version__ = "0.1.0"

__all__ = [
    "BigRational",
    "GapSet",
    "HermitePadeSolution",
    "LaurentSeries",
    "LinearSystem",
    "MultiGapSolution",
    "PadeSolution",
    "Poly",
    "aztec_count",
    "aztec_multigap_ratio",
    "aztec_pade",
    "aztec_special_count",
    "binomial",
    "det_exact",
    "hexagon_hermite_pade",
    "hexagon_multigap_ratio",
    "hexagon_reduced_count",
    "kappa_closed_form",
    "laurent_expand",
    "macmahon",
    "parse_gapset",
    "rational_str",
    "solve_linear_exact",
    "to_rational",
]
