"""Exact root counting and root finding for polynomials over Q_p and F_q((t)).

The pipeline: build the Newton polygon of a polynomial with exact rational
arithmetic, test regularity edge by edge, count roots in K* through the
closed form for each edge's two-term polynomial, and independently verify by
exhaustive residue scans plus Hensel lifting.
"""

from .errors import (
    BadFieldElement,
    BudgetExceeded,
    Error,
    HenselHypothesisFailed,
    NonIntegerExponent,
    NotIntegral,
    NotRegular,
    ParseError,
    PolySyntaxError,
    PrecisionError,
    VanishingDiscriminant,
    ZeroElement,
    ZeroInverse,
    ZeroPolynomial,
)
from .fields import (
    ExtendedRational,
    FieldContext,
    KElement,
    LaurentK,
    RationalK,
    ResidueElement,
    ResidueField,
    ResidueRing,
    ResidueRingElement,
    TruncatedK,
    first_digit,
    is_nth_power,
    reduce_mod,
    residue_inv,
    residue_pow,
    valuation,
)
from .hensel import ApproxRoot, RootSearchResult, find_roots, hensel_lift
from .newton import (
    LowerEdge,
    NewtonPolygon,
    edge_root_data,
    lower_edges,
    lower_hull,
    newton_polygon,
    newton_polygon_from_points,
)
from .oracle import (
    DEFAULT_BUDGET,
    BoundCheckReport,
    ClassPartition,
    Relation,
    ResidueRootSet,
    check_bounds,
    count_roots_oracle,
    equivalence_agreement,
    partition_roots,
    roots_mod,
)
from .parsing import parse_coefficient, parse_poly
from .polynomials import Poly
from .regularity import (
    LowerBinomial,
    RegularityReport,
    RootCount,
    count_binomial_roots,
    count_roots,
    is_regular,
    lower_binomials,
    sharp_family,
)
from .resultants import (
    DiscriminantInfo,
    binomial_discriminant,
    discriminant_valuation,
    resultant,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxRoot",
    "BadFieldElement",
    "BoundCheckReport",
    "BudgetExceeded",
    "ClassPartition",
    "DEFAULT_BUDGET",
    "DiscriminantInfo",
    "Error",
    "ExtendedRational",
    "FieldContext",
    "HenselHypothesisFailed",
    "KElement",
    "LaurentK",
    "LowerBinomial",
    "LowerEdge",
    "NewtonPolygon",
    "NonIntegerExponent",
    "NotIntegral",
    "NotRegular",
    "ParseError",
    "Poly",
    "PolySyntaxError",
    "PrecisionError",
    "RationalK",
    "RegularityReport",
    "Relation",
    "ResidueElement",
    "ResidueField",
    "ResidueRing",
    "ResidueRingElement",
    "ResidueRootSet",
    "RootCount",
    "RootSearchResult",
    "TruncatedK",
    "VanishingDiscriminant",
    "ZeroElement",
    "ZeroInverse",
    "ZeroPolynomial",
    "binomial_discriminant",
    "check_bounds",
    "count_binomial_roots",
    "count_roots",
    "count_roots_oracle",
    "discriminant_valuation",
    "edge_root_data",
    "equivalence_agreement",
    "find_roots",
    "first_digit",
    "hensel_lift",
    "is_nth_power",
    "is_regular",
    "lower_binomials",
    "lower_edges",
    "lower_hull",
    "newton_polygon",
    "newton_polygon_from_points",
    "parse_coefficient",
    "parse_poly",
    "partition_roots",
    "reduce_mod",
    "residue_inv",
    "residue_pow",
    "roots_mod",
    "sharp_family",
    "valuation",
]
