"""Relativistic and nonrelativistic hydrogenic densities and their
information-theoretic complexity measures (Shannon, disequilibrium, Fisher,
LMC, Fisher-Shannon), in atomic units."""

from .errors import DivergentIntegral, DomainError, ToleranceNotMet
from .hydrogenic import (
    FINE_STRUCTURE_ALPHA,
    AngularDensity,
    PhysicalContext,
    QuantumState,
    RadialDensity,
    angular_density,
    dirac_energy,
    dirac_radial_components,
    dirac_radial_density,
    schrodinger_energy,
    schrodinger_radial_density,
)
from .measures import (
    MeasureSet,
    ProfilePoint,
    RatioSet,
    component_split,
    disequilibrium,
    entropic_power,
    fisher_information,
    measure_set,
    radial_profile,
    ratio_set,
    shannon_entropy,
)
from .quadrature import QuadratureConfig, QuadratureResult, integrate_polar, integrate_radial
from .specfun import PolynomialCoefficients, cg_half, kummer_truncated, laguerre, ln_gamma, sph_harm_sq

__version__ = "0.1.0"

__all__ = [
    "FINE_STRUCTURE_ALPHA",
    "AngularDensity",
    "DivergentIntegral",
    "DomainError",
    "MeasureSet",
    "PhysicalContext",
    "PolynomialCoefficients",
    "ProfilePoint",
    "QuadratureConfig",
    "QuadratureResult",
    "QuantumState",
    "RadialDensity",
    "RatioSet",
    "ToleranceNotMet",
    "angular_density",
    "cg_half",
    "component_split",
    "dirac_energy",
    "dirac_radial_components",
    "dirac_radial_density",
    "disequilibrium",
    "entropic_power",
    "fisher_information",
    "integrate_polar",
    "integrate_radial",
    "kummer_truncated",
    "laguerre",
    "ln_gamma",
    "measure_set",
    "radial_profile",
    "ratio_set",
    "schrodinger_energy",
    "schrodinger_radial_density",
    "shannon_entropy",
    "sph_harm_sq",
    "__version__",
]
