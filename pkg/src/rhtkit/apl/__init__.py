"""Polynomial forms on simplices and on finite simplicial sets."""

from .forms import (
    IDENTITY_FAMILIES,
    IdentityReport,
    PolyForm,
    StokesResult,
    apl_algebra,
    component_cohomology,
    degeneracy,
    face,
    integrate,
    random_form,
    stokes_check,
    t,
    total_degree_component,
    verify_simplicial_identities,
    y,
)
from .simplicial import (
    AplSection,
    FiniteSimplicialSet,
    Simplex,
    boundary_of_simplex,
    parse_simplicial_set,
    section_complex,
    sections,
    sections_cohomology,
    standard_simplex,
)
