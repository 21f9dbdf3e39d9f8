"""Heat-trace and heat-content asymptotics.

Closed-form expansion coefficients for Laplace-type operators on the
bundled model geometries (smooth boundaries with Dirichlet or Robin
conditions, transmittal interfaces, nonlocal spectral conditions,
time-dependent coefficients, heat content), together with independent
spectral oracles and fitting tools that verify the closed forms against
numerically computed traces.
"""

from .geometry import (
    BOUNDARY_KINDS,
    CATALOG_NAMES,
    DIRICHLET,
    DN_JUNCTION,
    ROBIN,
    SPECTRAL,
    TRANSMITTAL,
    BoundaryComponentData,
    GeometryInvariants,
    Region,
    SmearingJets,
    SpectralBCData,
    TransmittalData,
    catalog_geometry,
    tangential_gammas,
    with_potential,
)
from .reports import COEFF_CSV_HEADER, CoefficientReport, Part, make_report
from .trace_coeffs import (
    NotLocallyComputable,
    TimePerturbation,
    UnsupportedOrder,
    boundary_coefficient,
    c_of_m,
    dn_coefficient,
    interior_coefficient,
    spectral_coefficient,
    time_dependent_boundary,
    time_dependent_interior,
    transmittal_coefficient,
)
from .content_coeffs import (
    BoundaryPairings,
    HeatContentData,
    InteriorPairings,
    Profile,
    heat_content_coefficient,
    rod_content_data,
)
from .fit import (
    FitResult,
    fit_content,
    fit_powers,
    fit_trace,
    sequential_leading_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BOUNDARY_KINDS",
    "CATALOG_NAMES",
    "DIRICHLET",
    "ROBIN",
    "TRANSMITTAL",
    "SPECTRAL",
    "DN_JUNCTION",
    "Region",
    "GeometryInvariants",
    "BoundaryComponentData",
    "SmearingJets",
    "TransmittalData",
    "SpectralBCData",
    "catalog_geometry",
    "with_potential",
    "tangential_gammas",
    "Part",
    "CoefficientReport",
    "COEFF_CSV_HEADER",
    "make_report",
    "UnsupportedOrder",
    "NotLocallyComputable",
    "TimePerturbation",
    "c_of_m",
    "interior_coefficient",
    "boundary_coefficient",
    "transmittal_coefficient",
    "spectral_coefficient",
    "time_dependent_interior",
    "time_dependent_boundary",
    "dn_coefficient",
    "InteriorPairings",
    "BoundaryPairings",
    "HeatContentData",
    "Profile",
    "heat_content_coefficient",
    "rod_content_data",
    "FitResult",
    "fit_powers",
    "fit_trace",
    "fit_content",
    "sequential_leading_coefficients",
]
