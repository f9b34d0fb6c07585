"""Exact-arithmetic gap statistics of Farey fractions with odd denominators.

The package streams Farey sequences and their odd-denominator subsequences,
measures the joint distribution of consecutive gaps, and reproduces the
limiting gap densities through exact convex geometry on the Farey triangle:
walk-family enumeration, rational polygon clipping, certified series
enclosures, and parity-restricted primitive lattice counts that tie the two
sides together by exact integer identities.
"""

from .density import Enclosure, gap_density, rho_odd, rho_table
from .dynamics import TrianglePoint, kappa, next_pair, orbit_kappas, prev_pair
from .farey import (
    UnitInterval,
    count_delta_tuples,
    delta,
    empirical_rho,
    farey_count,
    farey_fractions,
    farey_index,
    gap_histogram,
    odd_farey_count,
    odd_farey_fractions,
)
from .geometry import ConvexRegion, cylinder, farey_triangle, stabilized_quadrangle, unimodular_image
from .lattice import (
    CountReport,
    PairParity,
    asymptotic_report,
    count_lattice,
    count_lattice_interval,
    verify_interval_identity,
    verify_parity_swap,
    verify_tuple_identity,
)
from .paths import PathFamily, families, instantiate

__version__ = "0.1.0"

__all__ = [
    "Enclosure",
    "gap_density",
    "rho_odd",
    "rho_table",
    "TrianglePoint",
    "kappa",
    "next_pair",
    "prev_pair",
    "orbit_kappas",
    "UnitInterval",
    "count_delta_tuples",
    "delta",
    "empirical_rho",
    "farey_count",
    "farey_fractions",
    "farey_index",
    "gap_histogram",
    "odd_farey_count",
    "odd_farey_fractions",
    "ConvexRegion",
    "cylinder",
    "farey_triangle",
    "stabilized_quadrangle",
    "unimodular_image",
    "CountReport",
    "PairParity",
    "asymptotic_report",
    "count_lattice",
    "count_lattice_interval",
    "verify_interval_identity",
    "verify_parity_swap",
    "verify_tuple_identity",
    "PathFamily",
    "families",
    "instantiate",
    "__version__",
]
