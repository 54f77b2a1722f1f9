"""Information-theoretic functionals of hydrogenic densities.

The position-space density factorizes as rho(r, theta) = rho_rad(r) *
rho_ang(theta) with both factors normalized, so every measure splits into
one-dimensional integrals:

    S = S_rad + S_ang
    D = D_rad * D_ang
    I = I_rad + <r^-2> * I_ang

with the Fisher radial integrand evaluated from the analytic derivative of
the closed-form density (never finite differences). The composites
C_LMC = D * exp(S) and C_FS = I * J are assembled from the already-converged
parts, so those identities hold exactly by construction.

A Dirac state with |kappa| = 1 has gamma <= 1/2 once Z exceeds ~118.68; both
<r^-2> and the radial Fisher integral then diverge at the origin. That is
reported as a typed outcome (fields become None, the set is flagged), not a
crash, so sweeps can record it and continue.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .errors import DivergentIntegral
from .hydrogenic import (
    AngularDensity,
    PhysicalContext,
    QuantumState,
    RadialDensity,
    angular_density,
    dirac_energy,
    dirac_radial_density,
    schrodinger_energy,
    schrodinger_radial_density,
)
from .quadrature import QuadratureConfig, integrate_polar, integrate_radial

__all__ = [
    "DEFAULT_CONFIG",
    "Framework",
    "MeasureSet",
    "RatioSet",
    "ProfilePoint",
    "RadialMeasures",
    "AngularMeasures",
    "radial_measures",
    "angular_measures",
    "shannon_entropy",
    "disequilibrium",
    "fisher_information",
    "entropic_power",
    "measure_set",
    "ratio_set",
    "radial_profile",
    "component_split",
    "build_radial_density",
]

Framework = Literal["dirac", "schrodinger"]

DEFAULT_CONFIG = QuadratureConfig()

_LN_4PI = math.log(4.0 * math.pi)


@dataclass(frozen=True)
class RadialMeasures:
    s: float
    d: Optional[float]
    fisher: Optional[float]
    r_minus2: Optional[float]
    norm: float
    errors: dict
    fisher_divergent: bool
    diseq_divergent: bool


@dataclass(frozen=True)
class AngularMeasures:
    s: float
    d: float
    fisher: float
    errors: dict


@dataclass(frozen=True)
class MeasureSet:
    """All measures of one state in one framework, plus provenance."""

    framework: str
    z: float
    state: QuantumState
    energy: float
    binding: float
    s: float
    d: Optional[float]
    i: Optional[float]
    j: Optional[float]
    c_lmc: Optional[float]
    c_fs: Optional[float]
    fisher_divergent: bool
    quad_errors: dict = field(compare=False)


@dataclass(frozen=True)
class RatioSet:
    zeta_lmc: Optional[float]
    zeta_fs: Optional[float]


@dataclass(frozen=True)
class ProfilePoint:
    r: float
    d_of_r: float
    i_kernel: float


def _entropy_integrand(rho):
    def f(r):
        v = rho(r)
        return np.where(v > 0.0, -v * np.log(np.where(v > 0.0, v, 1.0)), 0.0) * r * r
    return f


def radial_measures(rad: RadialDensity, cfg: QuadratureConfig = DEFAULT_CONFIG) -> RadialMeasures:
    """Entropy, disequilibrium, Fisher integral, <r^-2> and norm of a radial density."""
    a = rad.origin_exponent
    kx = rad.decay_rate
    nodes = rad.breakpoint_radii()
    errors: dict = {}

    norm = integrate_radial(lambda r: rad.rho(r) * r * r,
                            cfg.with_exponents(a + 2.0, kx), nodes)
    errors["norm"] = norm.error

    s_res = integrate_radial(_entropy_integrand(rad.rho),
                             cfg.with_exponents(a + 2.0, kx), nodes)
    errors["s"] = s_res.error

    d_val = None
    diseq_divergent = False
    try:
        d_res = integrate_radial(lambda r: rad.rho(r) ** 2 * r * r,
                                 cfg.with_exponents(2.0 * a + 2.0, 2.0 * kx), nodes)
        d_val, errors["d"] = d_res.value, d_res.error
    except DivergentIntegral:
        diseq_divergent = True

    fisher_val = None
    r_minus2 = None
    fisher_divergent = a <= -1.0
    if not fisher_divergent:
        i_res = integrate_radial(rad.fisher_kernel,
                                 cfg.with_exponents(a, kx), nodes,
                                 origin_regular=rad.fisher_kernel_regular)
        rm2_res = integrate_radial(rad.rho,
                                   cfg.with_exponents(a, kx), nodes,
                                   origin_regular=rad.rho_regular)
        fisher_val, errors["i"] = i_res.value, i_res.error
        r_minus2, errors["r_minus2"] = rm2_res.value, rm2_res.error

    return RadialMeasures(s=s_res.value, d=d_val, fisher=fisher_val,
                          r_minus2=r_minus2, norm=norm.value, errors=errors,
                          fisher_divergent=fisher_divergent,
                          diseq_divergent=diseq_divergent)


def angular_measures(ang: AngularDensity, cfg: QuadratureConfig = DEFAULT_CONFIG) -> AngularMeasures:
    """Entropy, disequilibrium and Fisher integral of the polar density."""
    if ang.is_isotropic:
        # rho = 1/(4 pi) exactly: closed forms, and zero gradient content
        return AngularMeasures(s=_LN_4PI, d=1.0 / (4.0 * math.pi), fisher=0.0,
                               errors={"s": 0.0, "d": 0.0, "i": 0.0})
    two_pi = 2.0 * math.pi

    def ent(theta):
        v = ang.rho(theta)
        return np.where(v > 0.0, -v * np.log(np.where(v > 0.0, v, 1.0)), 0.0) * np.sin(theta)

    def sq(theta):
        return ang.rho(theta) ** 2 * np.sin(theta)

    def fis(theta):
        v = ang.rho(theta)
        dv = ang.drho(theta)
        safe = np.where(v > 0.0, v, 1.0)
        return np.where(v > 0.0, dv * dv / safe, 0.0) * np.sin(theta)

    s_res = integrate_polar(ent, cfg)
    d_res = integrate_polar(sq, cfg)
    i_res = integrate_polar(fis, cfg)
    return AngularMeasures(s=two_pi * s_res.value, d=two_pi * d_res.value,
                           fisher=two_pi * i_res.value,
                           errors={"s": two_pi * s_res.error,
                                   "d": two_pi * d_res.error,
                                   "i": two_pi * i_res.error})


def shannon_entropy(rad: RadialDensity, ang: AngularDensity,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """S = -integral rho ln rho over R^3, in nats."""
    return radial_measures(rad, cfg).s + angular_measures(ang, cfg).s


def disequilibrium(rad: RadialDensity, ang: AngularDensity,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """D = integral rho^2, in bohr^-3."""
    rm = radial_measures(rad, cfg)
    if rm.d is None:
        raise DivergentIntegral("disequilibrium integrand is not integrable at the origin")
    return rm.d * angular_measures(ang, cfg).d


def fisher_information(rad: RadialDensity, ang: AngularDensity,
                       r_minus2: Optional[float] = None,
                       cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """I = I_radial + <r^-2> * I_angular, in bohr^-2.

    Raises DivergentIntegral when the radial origin exponent is <= -1
    (gamma <= 1/2 for Dirac |kappa| = 1 states, i.e. Z above ~118.68).
    """
    if rad.origin_exponent <= -1.0:
        raise DivergentIntegral(
            f"Fisher integrand ~ r^{rad.origin_exponent:g} at the origin diverges "
            "(gamma <= 1/2)")
    rm = radial_measures(rad, cfg)
    am = angular_measures(ang, cfg)
    if am.fisher == 0.0:
        return rm.fisher
    if r_minus2 is None:
        r_minus2 = rm.r_minus2
    return rm.fisher + r_minus2 * am.fisher


def entropic_power(s: float) -> float:
    """J = exp(2 S / 3) / (2 pi e), in bohr^2."""
    return math.exp(2.0 * s / 3.0) / (2.0 * math.pi * math.e)


def build_radial_density(ctx: PhysicalContext, state: QuantumState,
                         framework: Framework) -> RadialDensity:
    if framework == "dirac":
        return dirac_radial_density(ctx, state)
    if framework == "schrodinger":
        return schrodinger_radial_density(ctx.z, state.n, state.l)
    raise ValueError(f"unknown framework {framework!r}")


def compose_measures(framework: Framework, z: float, state: QuantumState,
                     energy: float, binding: float,
                     rm: RadialMeasures, am: AngularMeasures) -> MeasureSet:
    """Assemble a MeasureSet from converged radial and angular parts."""
    s = rm.s + am.s
    errors = {
        "S": rm.errors["s"] + am.errors["s"],
        "norm": rm.errors["norm"],
    }
    if rm.d is not None:
        d = rm.d * am.d
        c_lmc = d * math.exp(s)
        errors["D"] = am.d * rm.errors["d"] + rm.d * am.errors["d"]
    else:
        d = c_lmc = None
    if rm.fisher_divergent or rm.fisher is None:
        i_val = j_val = c_fs = None
    else:
        i_val = rm.fisher + rm.r_minus2 * am.fisher
        j_val = entropic_power(s)
        c_fs = i_val * j_val
        errors["I"] = (rm.errors["i"] + rm.r_minus2 * am.errors["i"]
                       + am.fisher * rm.errors["r_minus2"])
    return MeasureSet(framework=framework, z=z, state=state,
                      energy=energy, binding=binding,
                      s=s, d=d, i=i_val, j=j_val, c_lmc=c_lmc, c_fs=c_fs,
                      fisher_divergent=rm.fisher_divergent, quad_errors=errors)


def measure_set(ctx: PhysicalContext, state: QuantumState, framework: Framework,
                cfg: QuadratureConfig = DEFAULT_CONFIG) -> MeasureSet:
    """All measures of one state in one framework."""
    rad = build_radial_density(ctx, state, framework)
    rm = radial_measures(rad, cfg)
    am = angular_measures(angular_density(state), cfg)
    if framework == "dirac":
        energy, binding = ctx.energy, ctx.binding
    else:
        energy = schrodinger_energy(ctx.z, state.n)
        binding = -energy
    return compose_measures(framework, ctx.z, state, energy, binding, rm, am)


def ratio_set(ctx: PhysicalContext, state: QuantumState,
              cfg: QuadratureConfig = DEFAULT_CONFIG) -> RatioSet:
    """Relative Dirac/Schrodinger ratios 1 - C^S/C^D for both complexities."""
    m_d = measure_set(ctx, state, "dirac", cfg)
    m_s = measure_set(ctx, state, "schrodinger", cfg)
    return ratios_from_sets(m_d, m_s)


def ratios_from_sets(m_d: MeasureSet, m_s: MeasureSet) -> RatioSet:
    if m_d.c_lmc is not None and m_s.c_lmc is not None:
        zeta_lmc = 1.0 - m_s.c_lmc / m_d.c_lmc
    else:
        zeta_lmc = None
    if m_d.c_fs is not None and m_s.c_fs is not None:
        zeta_fs = 1.0 - m_s.c_fs / m_d.c_fs
    else:
        zeta_fs = None
    return RatioSet(zeta_lmc=zeta_lmc, zeta_fs=zeta_fs)


def radial_profile(ctx: PhysicalContext, state: QuantumState, framework: Framework,
                   grid) -> list[ProfilePoint]:
    """Pointwise radial distribution D(r) = rho r^2 and Fisher kernel on a grid."""
    rad = build_radial_density(ctx, state, framework)
    r = np.asarray(grid, dtype=float)
    d_vals = rad.rho(r) * r * r
    k_vals = rad.fisher_kernel(r)
    return [ProfilePoint(float(ri), float(di), float(ki))
            for ri, di, ki in zip(r, d_vals, k_vals)]


def component_split(ctx: PhysicalContext, state: QuantumState, grid):
    """Large/small contributions (r^2 g^2, r^2 f^2) to the Dirac radial distribution."""
    rad = dirac_radial_density(ctx, state)
    r = np.asarray(grid, dtype=float)
    g, f = rad.amplitudes(r)
    return r * r * g * g, r * r * f * f
