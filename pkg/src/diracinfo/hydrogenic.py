"""Dirac and Schrodinger hydrogenic bound states.

Atomic units throughout: hbar = m0 = e = 4*pi*eps0 = 1 and c = 1/alpha, so
the electron rest energy is 1/alpha^2 hartree and lengths are in bohr.

Both radial densities share one analytic shape,

    rho(r) = sum_i [ N_i x^q exp(-x/2) P_i(x) ]^2,     x = x_scale * r,

with a single component (P = generalized Laguerre, q = l) in the Schrodinger
case and two components (large g and small f, q = gamma - 1) in the Dirac
case. Densities, derivatives and Fisher kernels are evaluated from this
closed form; nothing is differenced numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainError
from .specfun import PolynomialCoefficients, cg_half, kummer_truncated, laguerre, ln_gamma, sph_harm_sq, sph_harm_sq_dtheta

__all__ = [
    "FINE_STRUCTURE_ALPHA",
    "KLEIN_Z_LIMIT",
    "QuantumState",
    "PhysicalContext",
    "RadialDensity",
    "AngularDensity",
    "dirac_energy",
    "schrodinger_energy",
    "dirac_radial_components",
    "dirac_radial_density",
    "schrodinger_radial_density",
    "angular_density",
]

FINE_STRUCTURE_ALPHA = 7.2973525693e-3  # CODATA 2018
KLEIN_Z_LIMIT = 137.0

_SPECTRO_LETTERS = "spdfghik"


def _is_half_odd(v: float) -> bool:
    tv = 2.0 * v
    return abs(tv - round(tv)) < 1e-9 and round(tv) % 2 != 0


@dataclass(frozen=True)
class QuantumState:
    """Bound-state labels (n, kappa, m_j); kappa encodes both j and l."""

    n: int
    kappa: int
    m_j: float = 0.5

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"principal quantum number must be >= 1, got n={self.n}")
        if self.kappa == 0:
            raise DomainError("kappa = 0 is not a valid Dirac quantum number")
        if abs(self.kappa) > self.n:
            raise DomainError(f"|kappa| <= n required, got kappa={self.kappa}, n={self.n}")
        if self.kappa == self.n:
            raise DomainError(
                f"kappa = +n has no bound state (n'=0 requires kappa < 0); got kappa={self.kappa}")
        if not _is_half_odd(self.m_j):
            raise DomainError(f"m_j must be a half-odd integer, got m_j={self.m_j}")
        if abs(self.m_j) > self.j + 1e-9:
            raise DomainError(f"|m_j| <= j required, got m_j={self.m_j}, j={self.j}")

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5

    @property
    def l(self) -> int:
        return self.kappa if self.kappa > 0 else -self.kappa - 1

    @property
    def l_small(self) -> int:
        """Orbital quantum number of the small (lower) spinor component."""
        return self.l + 1 if self.kappa < 0 else self.l - 1

    @property
    def n_r(self) -> int:
        """Radial quantum number n - |kappa|."""
        return self.n - abs(self.kappa)

    @classmethod
    def from_nlj(cls, n: int, l: int, j: float, m_j: float | None = None) -> "QuantumState":
        if l < 0 or l > n - 1:
            raise DomainError(f"0 <= l <= n-1 required, got n={n}, l={l}")
        if abs(j - (l + 0.5)) < 1e-9:
            kappa = -(l + 1)
        elif abs(j - (l - 0.5)) < 1e-9 and l >= 1:
            kappa = l
        else:
            raise DomainError(f"j must equal l +/- 1/2, got l={l}, j={j}")
        if m_j is None:
            m_j = abs(kappa) - 0.5
        return cls(n=n, kappa=kappa, m_j=m_j)

    def label(self) -> str:
        letter = _SPECTRO_LETTERS[self.l] if self.l < len(_SPECTRO_LETTERS) else f"(l={self.l})"
        suffix = "-" if self.kappa > 0 else ""
        return f"{self.n}{letter}{suffix}"


def _dirac_energy_parts(z: float, n: int, kappa: int, alpha: float):
    """Return (energy, binding, gamma, lam) with the Klein gates applied."""
    if not z > 0.0:
        raise DomainError(f"Z must be positive, got Z={z}")
    if z >= KLEIN_Z_LIMIT:
        raise DomainError(f"Z >= 137 (Klein regime): no real point-nucleus eigenvalue for Z={z}")
    az = alpha * z
    if az >= abs(kappa):
        raise DomainError(
            f"alpha*Z = {az:.6f} >= |kappa| = {abs(kappa)}: gamma would be non-real")
    rest = 1.0 / alpha**2
    gamma = math.sqrt((kappa - az) * (kappa + az)) if kappa > 0 else \
        math.sqrt((-kappa - az) * (-kappa + az))
    n_r = n - abs(kappa)
    x = (az / (n_r + gamma)) ** 2
    energy = rest * math.exp(-0.5 * math.log1p(x))
    binding = rest * -math.expm1(-0.5 * math.log1p(x))
    lam = alpha * math.sqrt(binding * (rest + energy))
    return energy, binding, gamma, lam


@dataclass(frozen=True)
class PhysicalContext:
    """Nuclear charge plus the state-dependent relativistic scales."""

    z: float
    alpha: float
    rest_energy: float   # 1/alpha^2, hartree
    gamma: float         # sqrt(kappa^2 - (alpha Z)^2)
    lam: float           # sqrt(M^2 - E^2)/c, 1/bohr
    energy: float        # Dirac eigenvalue, hartree
    binding: float       # rest_energy - energy, hartree

    @classmethod
    def for_state(cls, z: float, state: QuantumState,
                  alpha: float = FINE_STRUCTURE_ALPHA) -> "PhysicalContext":
        energy, binding, gamma, lam = _dirac_energy_parts(z, state.n, state.kappa, alpha)
        return cls(z=float(z), alpha=alpha, rest_energy=1.0 / alpha**2,
                   gamma=gamma, lam=lam, energy=energy, binding=binding)


def dirac_energy(z: float, state: QuantumState,
                 alpha: float = FINE_STRUCTURE_ALPHA) -> float:
    """Dirac-Coulomb point-nucleus eigenvalue in hartree (0 < E < M).

    Depends on kappa only through |kappa|, so j-degenerate partners with
    opposite kappa sign are exactly degenerate.
    """
    energy, _, _, _ = _dirac_energy_parts(z, state.n, state.kappa, alpha)
    return energy


def schrodinger_energy(z: float, n: int) -> float:
    """Nonrelativistic hydrogenic energy -Z^2/(2 n^2) hartree."""
    if not z > 0.0:
        raise DomainError(f"Z must be positive, got Z={z}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got n={n}")
    return -z * z / (2.0 * n * n)


# --- polynomial helpers -----------------------------------------------------

def _pad(a: tuple[float, ...], size: int) -> np.ndarray:
    out = np.zeros(size)
    out[: len(a)] = a
    return out


def _poly_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)


def _poly_der(a: np.ndarray) -> np.ndarray:
    if len(a) == 1:
        return np.zeros(1)
    return a[1:] * np.arange(1, len(a))


def _poly_eval(a: np.ndarray, x: np.ndarray):
    acc = np.full_like(x, a[-1])
    for c in a[-2::-1]:
        acc = acc * x + c
    return acc


def _real_positive_roots(coeffs: np.ndarray) -> tuple[float, ...]:
    """Real roots in (0, inf) of a small polynomial, Newton-polished."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if len(c) <= 1:
        return ()
    roots = np.roots(c[::-1])
    der = _poly_der(c)
    out = []
    for rt in roots:
        if abs(rt.imag) > 1e-8 * (1.0 + abs(rt.real)) or rt.real <= 0.0:
            continue
        x = rt.real
        for _ in range(3):
            fx = float(_poly_eval(c, np.asarray(x)))
            dfx = float(_poly_eval(der, np.asarray(x)))
            if dfx != 0.0:
                x -= fx / dfx
        out.append(x)
    return tuple(sorted(out))


@dataclass(frozen=True)
class RadialDensity:
    """Radial probability density rho(r), normalized as integral rho r^2 dr = 1."""

    framework: str
    x_scale: float
    power: float
    components: tuple[tuple[float, PolynomialCoefficients], ...]
    origin_exponent: float
    decay_rate: float
    # derived polynomials for the Fisher kernel, set in __post_init__
    _q_poly: tuple[float, ...] = field(init=False, repr=False, compare=False, default=())
    _s_poly: tuple[float, ...] = field(init=False, repr=False, compare=False, default=())
    _t_scale: float = field(init=False, repr=False, compare=False, default=0.0)
    _t_poly: tuple[float, ...] = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        a = 2.0 * self.power
        size = max(len(p.coeffs) for _, p in self.components)
        q = np.zeros(2 * size - 1)
        for coef, poly in self.components:
            pc = _pad(poly.coeffs, size)
            q += coef * coef * _poly_mul(pc, pc)
        dq = _pad(tuple(_poly_der(q)), len(q))
        # S = a Q + x (Q' - Q); the x factor raises the degree by one
        s = np.zeros(len(q) + 1)
        s[: len(q)] += a * q
        s[1:] += dq - q
        object.__setattr__(self, "_q_poly", tuple(q))
        object.__setattr__(self, "_s_poly", tuple(s))
        if len(self.components) == 1:
            coef, poly = self.components[0]
            p = np.asarray(poly.coeffs)
            t = np.zeros(len(p) + 1)
            t[: len(p)] += a * p
            t[1:] += 2.0 * _pad(tuple(_poly_der(p)), len(p)) - p
            object.__setattr__(self, "_t_scale", coef * coef)
            object.__setattr__(self, "_t_poly", tuple(t))

    # -- evaluation ----------------------------------------------------------

    def _check_r(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0.0):
            raise DomainError("radial densities are defined for r > 0 only")
        return r

    def amplitudes(self, r):
        """Component amplitudes u_i(r) with rho = sum u_i^2."""
        r = self._check_r(r)
        x = self.x_scale * r
        pref = x**self.power * np.exp(-0.5 * x)
        return tuple(coef * pref * poly(x) for coef, poly in self.components)

    def amplitude_derivatives(self, r):
        r = self._check_r(r)
        x = self.x_scale * r
        pref = self.x_scale * x ** (self.power - 1.0) * np.exp(-0.5 * x)
        out = []
        for coef, poly in self.components:
            p = np.asarray(poly.coeffs)
            d = np.zeros(len(p) + 1)
            d[: len(p)] += self.power * p
            d[1:] += _pad(tuple(_poly_der(p)), len(p)) - 0.5 * p
            out.append(coef * pref * _poly_eval(d, x))
        return tuple(out)

    def rho(self, r):
        us = self.amplitudes(r)
        total = us[0] * us[0]
        for u in us[1:]:
            total = total + u * u
        return total

    __call__ = rho

    def drho(self, r):
        us = self.amplitudes(r)
        dus = self.amplitude_derivatives(r)
        total = 2.0 * us[0] * dus[0]
        for u, du in zip(us[1:], dus[1:]):
            total = total + 2.0 * u * du
        return total

    def fisher_kernel(self, r):
        """(rho')^2 / rho * r^2, evaluated through the amplitudes.

        Squaring the evaluated amplitudes avoids the cancellation that the
        expanded numerator polynomial suffers near deep density minima. At
        radii where a single-component density vanishes (Schrodinger nodes)
        the expression reduces to 4 u'(r)^2 r^2, which is the finite limit of
        (rho')^2/rho there, so node radii need no special casing.
        """
        r = self._check_r(r)
        us = self.amplitudes(r)
        dus = self.amplitude_derivatives(r)
        if len(us) == 1:
            return 4.0 * dus[0] * dus[0] * r * r
        num = us[0] * dus[0]
        den = us[0] * us[0]
        for u, du in zip(us[1:], dus[1:]):
            num = num + u * du
            den = den + u * u
        return 4.0 * num * num / den * r * r

    # -- regularized forms for quadrature near the origin ---------------------

    def rho_regular(self, r):
        """rho(r) / r^origin_exponent, finite down to r = 0."""
        r = np.asarray(r, dtype=float)
        x = self.x_scale * r
        q = _poly_eval(np.asarray(self._q_poly), x)
        return self.x_scale**self.origin_exponent * np.exp(-x) * q

    def fisher_kernel_regular(self, r):
        """fisher_kernel(r) / r^origin_exponent, finite down to r = 0."""
        r = np.asarray(r, dtype=float)
        x = self.x_scale * r
        scale = self.x_scale**self.origin_exponent * np.exp(-x)
        if self._t_poly:
            t = _poly_eval(np.asarray(self._t_poly), x)
            return scale * self._t_scale * t * t
        s = _poly_eval(np.asarray(self._s_poly), x)
        q = _poly_eval(np.asarray(self._q_poly), x)
        return scale * s * s / q

    # -- structure -----------------------------------------------------------

    def interior_nodes(self) -> tuple[float, ...]:
        """Radii of exact interior zeros (empty for multi-component densities)."""
        if len(self.components) != 1:
            return ()
        roots = _real_positive_roots(np.asarray(self.components[0][1].coeffs))
        return tuple(x / self.x_scale for x in roots)

    def breakpoint_radii(self) -> tuple[float, ...]:
        """Component-zero radii, used as quadrature panel boundaries.

        For a two-component density these bracket the sharp dips of the
        Fisher kernel (the density minima sit between the g and f zeros,
        within O(alpha Z) of each other), which adaptive panels resolve far
        faster when the dip is a panel edge.
        """
        out: list[float] = []
        for i in range(len(self.components)):
            out.extend(self.component_zeros(i))
        return tuple(sorted(out))

    def component_zeros(self, index: int) -> tuple[float, ...]:
        roots = _real_positive_roots(np.asarray(self.components[index][1].coeffs))
        return tuple(x / self.x_scale for x in roots)


def dirac_radial_density(ctx: PhysicalContext, state: QuantumState) -> RadialDensity:
    """Dirac radial density |g|^2 + |f|^2 from the closed-form components."""
    gamma, lam = ctx.gamma, ctx.lam
    rest, energy, binding = ctx.rest_energy, ctx.energy, ctx.binding
    n_r, kappa = state.n_r, state.kappa
    b = 2.0 * gamma + 1.0
    a_fac = (n_r + gamma) * rest / energy - kappa
    f1 = kummer_truncated(n_r, b)
    f2 = kummer_truncated(n_r - 1, b) if n_r >= 1 else PolynomialCoefficients((0.0,))
    size = len(f1.coeffs)
    c1 = _pad(f1.coeffs, size)
    c2 = _pad(f2.coeffs, size)
    pg = PolynomialCoefficients.from_sequence(a_fac * c1 - n_r * c2)
    pf = PolynomialCoefficients.from_sequence(a_fac * c1 + n_r * c2)
    # normalization assembled in log space: the Gamma-function ratio overflows
    # well before the density itself does
    ln_c0 = (1.5 * math.log(2.0 * lam)
             + 0.5 * (ln_gamma(b + n_r) - math.log(4.0 * rest)
                      - math.log((n_r + gamma) * rest / energy)
                      - math.log(a_fac) - ln_gamma(n_r + 1.0))
             - ln_gamma(b))
    n_g = math.exp(ln_c0 + 0.5 * math.log(rest + energy))
    n_f = -math.exp(ln_c0 + 0.5 * math.log(binding))
    return RadialDensity(
        framework="dirac",
        x_scale=2.0 * lam,
        power=gamma - 1.0,
        components=((n_g, pg), (n_f, pf)),
        origin_exponent=2.0 * gamma - 2.0,
        decay_rate=2.0 * lam,
    )


def dirac_radial_components(ctx: PhysicalContext, state: QuantumState, r):
    """Large and small radial components (g, f) at r > 0, in bohr^(-3/2)."""
    density = dirac_radial_density(ctx, state)
    g, f = density.amplitudes(r)
    return g, f


def schrodinger_radial_density(z: float, n: int, l: int) -> RadialDensity:
    """Nonrelativistic radial density R_nl^2 with exactly n-l-1 interior zeros."""
    if not z > 0.0:
        raise DomainError(f"Z must be positive, got Z={z}")
    if n < 1 or not 0 <= l <= n - 1:
        raise DomainError(f"0 <= l <= n-1 required, got n={n}, l={l}")
    kx = 2.0 * z / n
    ln_n2 = 3.0 * math.log(kx) + ln_gamma(n - l) - math.log(2.0 * n) - ln_gamma(n + l + 1.0)
    return RadialDensity(
        framework="schrodinger",
        x_scale=kx,
        power=float(l),
        components=((math.exp(0.5 * ln_n2), laguerre(n - l - 1, 2 * l + 1)),),
        origin_exponent=2.0 * l,
        decay_rate=kx,
    )


@dataclass(frozen=True)
class AngularDensity:
    """Polar density rho(theta), shared by both frameworks for a given state."""

    l: int
    j: float
    m_j: float
    terms: tuple[tuple[float, int], ...]  # (squared CG weight, orbital m)

    @property
    def is_isotropic(self) -> bool:
        return self.l == 0

    def rho(self, theta):
        theta = np.asarray(theta, dtype=float)
        total = np.zeros_like(theta)
        for weight, m in self.terms:
            total = total + weight * sph_harm_sq(self.l, m, theta)
        return total

    def drho(self, theta):
        theta = np.asarray(theta, dtype=float)
        total = np.zeros_like(theta)
        for weight, m in self.terms:
            total = total + weight * sph_harm_sq_dtheta(self.l, m, theta)
        return total


def angular_density(state: QuantumState) -> AngularDensity:
    """Spin-orbit coupled angular density; terms with m_j +/- 1/2 beyond l vanish."""
    l, j, m_j = state.l, state.j, state.m_j
    terms = []
    for spin_up, m in ((True, m_j - 0.5), (False, m_j + 0.5)):
        mi = round(m)
        if abs(mi) > l:
            continue
        c = cg_half(l, j, m_j, spin_up)
        if c != 0.0:
            terms.append((c * c, mi))
    return AngularDensity(l=l, j=j, m_j=m_j, terms=tuple(terms))
