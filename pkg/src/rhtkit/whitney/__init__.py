"""Jets on finite point sets, quadrant unions and the radial Poincaré homotopy."""

from .forms import (
    EuclideanPolyForm,
    QuadrantReport,
    homotopy_defect,
    poincare_homotopy,
    polynomial_de_rham,
    quadrant_poincare_report,
    radial_homotopy_data,
    random_euclidean_form,
)
from .jets import (
    CLASSICAL,
    DERIVATIVE,
    DIVIDED,
    MIRRORED,
    Jet,
    PointSet,
    RateReport,
    jet_of,
    jet_product,
    multi_indices,
    project,
    remainder,
    seminorm_flat,
    seminorm_whitney,
    taylor_poly,
    to_derivative,
    to_divided,
    whitney_rate_check,
    zero_jet,
)
from .polynomial import Polynomial, random_polynomial
from .quadrants import Quadrant, QuadrantSpec, quadrant_membership
