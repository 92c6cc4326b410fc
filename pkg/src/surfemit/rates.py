"""Integrated emission rates from the closed-form spectral kernels.

Every rate is produced by one-dimensional adaptive quadrature of an
azimuthally pre-integrated kernel in the out-of-plane mode coordinate
xi.  The azimuthal integration is analytic: total rates depend on the
dipole polarization only through |u_x|^2, side differences through
Im(u_x* u_z), and the dielectric-output difference through
Re(u_x* u_z).  `oracle_integrate` deliberately avoids all of that and
performs the raw two-dimensional quadrature over the angular densities
of the density module; it exists solely to cross-check the closed
forms.

Conventions: rates in units of the free-space rate, distances in nm,
"plus"/"minus" refer to emission into the z > 0 / z < 0 half-spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .density import DipolePolarization, f_evan, f_rad
from .optics import InterfaceConfig, axis_coefficients, fresnel, transmittance
from .quadrature import (QuadratureSpec, integrate, integrate_evanescent,
                         integrate_radiation)

_ZETA_FLOOR = 1e-12

ORACLE_CHANNELS = ("evan", "rad", "mat", "vac")


@dataclass(frozen=True)
class MaterialVacuumSplit:
    """Radiation rates resolved by output side of the interface."""

    gamma_rad_mat: float
    gamma_rad_vac: float
    delta_rad_mat: float
    delta_rad_vac: float
    gamma_rad_mat_plus: float
    gamma_rad_mat_minus: float
    gamma_rad_vac_plus: float
    gamma_rad_vac_minus: float


@dataclass(frozen=True)
class RateReport:
    """Every integrated rate at one emitter height, in gamma0 units.

    Composition identities hold by construction: gamma_total is the sum
    of the evanescent and radiation rates, side rates are half-sum and
    half-difference of channel rate and channel delta, and the mat/vac
    pair sums back to the radiation channel.  zeta values are None when
    the corresponding denominator is below 1e-12.
    """

    gamma_evan: float
    gamma_rad: float
    gamma_total: float
    delta_evan: float
    delta_rad: float
    delta_total: float
    gamma_evan_plus: float
    gamma_evan_minus: float
    gamma_rad_plus: float
    gamma_rad_minus: float
    gamma_plus: float
    gamma_minus: float
    gamma_rad_mat: float
    gamma_rad_vac: float
    delta_rad_mat: float
    delta_rad_vac: float
    gamma_rad_mat_plus: float
    gamma_rad_mat_minus: float
    gamma_rad_vac_plus: float
    gamma_rad_vac_minus: float
    zeta_evan: float | None
    zeta_rad: float | None
    zeta_total: float | None

    COLUMNS = (
        "gamma_evan", "gamma_rad", "gamma_total",
        "delta_evan", "delta_rad", "delta_total",
        "gamma_evan_plus", "gamma_evan_minus",
        "gamma_rad_plus", "gamma_rad_minus",
        "gamma_plus", "gamma_minus",
        "gamma_rad_mat", "gamma_rad_vac",
        "delta_rad_mat", "delta_rad_vac",
        "gamma_rad_mat_plus", "gamma_rad_mat_minus",
        "gamma_rad_vac_plus", "gamma_rad_vac_minus",
        "zeta_evan", "zeta_rad", "zeta_total",
    )


def _ux2(dip: DipolePolarization) -> float:
    return float(np.abs(dip.u[0]) ** 2)


def _im_xz(dip: DipolePolarization) -> float:
    return float(np.imag(np.conj(dip.u[0]) * dip.u[2]))


def _re_xz(dip: DipolePolarization) -> float:
    return float(np.real(np.conj(dip.u[0]) * dip.u[2]))


def gamma_evan(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
               quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Rate of emission into evanescent modes, all directions.

    (3/4) * integral over xi in [0, sqrt(n1^2-1)] of
    {(1-|u_x|^2) T_s + [|u_x|^2 (2+xi^2) + xi^2] T_p} e^{-2 xi k0 x}.
    """
    if x_nm < 0.0:
        raise ValueError("x_nm must be nonnegative")
    ux2 = _ux2(dip)
    two_k0x = 2.0 * cfg.k0_nm * x_nm

    def kernel(xi):
        t_s, t_p = transmittance(cfg, xi)
        return np.exp(-two_k0x * xi) * (
            (1.0 - ux2) * t_s + (ux2 * (2.0 + xi ** 2) + xi ** 2) * t_p)

    return 0.75 * integrate_evanescent(cfg, kernel, x_nm, quad)


def _radiation_interference(cfg: InterfaceConfig, dip: DipolePolarization,
                            x_nm: float, quad: QuadratureSpec) -> float:
    """The oscillatory integral gamma_rad - 1 (emitted/reflected
    interference): (3/4) * integral over xi in [0, 1] of
    {(1-|u_x|^2) r_s + [|u_x|^2 (2-xi^2) - xi^2] r_p} cos(2 xi k0 x)."""
    ux2 = _ux2(dip)
    two_k0x = 2.0 * cfg.k0_nm * x_nm

    def kernel(xi):
        r_s, r_p = fresnel(cfg, xi)
        return np.cos(two_k0x * xi) * (
            (1.0 - ux2) * r_s + (ux2 * (2.0 - xi ** 2) - xi ** 2) * r_p)

    return 0.75 * integrate_radiation(cfg, kernel, x_nm, quad)


def gamma_rad(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
              quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Rate of emission into radiation modes, all directions."""
    if x_nm < 0.0:
        raise ValueError("x_nm must be nonnegative")
    return 1.0 + _radiation_interference(cfg, dip, x_nm, quad)


def gamma_total(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
                quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Total emission rate, evaluated directly from both xi kernels."""
    if x_nm < 0.0:
        raise ValueError("x_nm must be nonnegative")
    ux2 = _ux2(dip)
    two_k0x = 2.0 * cfg.k0_nm * x_nm

    def evan_kernel(xi):
        t_s, t_p = transmittance(cfg, xi)
        return np.exp(-two_k0x * xi) * (
            (1.0 - ux2) * t_s + (ux2 * (2.0 + xi ** 2) + xi ** 2) * t_p)

    def rad_kernel(xi):
        r_s, r_p = fresnel(cfg, xi)
        return np.cos(two_k0x * xi) * (
            (1.0 - ux2) * r_s + (ux2 * (2.0 - xi ** 2) - xi ** 2) * r_p)

    return (1.0 + 0.75 * integrate_evanescent(cfg, evan_kernel, x_nm, quad)
            + 0.75 * integrate_radiation(cfg, rad_kernel, x_nm, quad))


def _delta_evan_moment(cfg: InterfaceConfig, x_nm: float,
                       quad: QuadratureSpec) -> float:
    two_k0x = 2.0 * cfg.k0_nm * x_nm

    def kernel(xi):
        _, t_p = transmittance(cfg, xi)
        return xi * np.sqrt(1.0 + xi ** 2) * t_p * np.exp(-two_k0x * xi)

    return integrate_evanescent(cfg, kernel, x_nm, quad)


def _delta_rad_moment(cfg: InterfaceConfig, x_nm: float,
                      quad: QuadratureSpec) -> float:
    two_k0x = 2.0 * cfg.k0_nm * x_nm

    def kernel(xi):
        _, r_p = fresnel(cfg, xi)
        return xi * np.sqrt(np.maximum(1.0 - xi ** 2, 0.0)) * r_p * np.sin(
            two_k0x * xi)

    return integrate_radiation(cfg, kernel, x_nm, quad)


def delta_rates(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
                quad: QuadratureSpec = QuadratureSpec()):
    """Side differences (delta_evan, delta_rad, delta_total).

    Each is the z > 0 rate minus the z < 0 rate for its channel; all
    three are proportional to Im(u_x* u_z).
    """
    if x_nm < 0.0:
        raise ValueError("x_nm must be nonnegative")
    pref = (6.0 / np.pi) * _im_xz(dip)
    d_evan = pref * _delta_evan_moment(cfg, x_nm, quad)
    d_rad = pref * _delta_rad_moment(cfg, x_nm, quad)
    return d_evan, d_rad, d_evan + d_rad


def side_rates(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
               quad: QuadratureSpec = QuadratureSpec()):
    """Half-space resolved rates (evan+, evan-, rad+, rad-, total+, total-)."""
    g_evan = gamma_evan(cfg, dip, x_nm, quad)
    g_rad = gamma_rad(cfg, dip, x_nm, quad)
    d_evan, d_rad, d_tot = delta_rates(cfg, dip, x_nm, quad)
    g_tot = g_evan + g_rad
    return (0.5 * (g_evan + d_evan), 0.5 * (g_evan - d_evan),
            0.5 * (g_rad + d_rad), 0.5 * (g_rad - d_rad),
            0.5 * (g_tot + d_tot), 0.5 * (g_tot - d_tot))


@lru_cache(maxsize=64)
def _static_moments(cfg: InterfaceConfig, quad: QuadratureSpec):
    """Distance-independent reflection moments of the radiation branch.

    Returns (m_s, m_p2, m_px, j_p):
      m_s  = int r_s^2 dxi
      m_p2 = int (2 - 3 xi^2) r_p^2 dxi
      m_px = int xi^2 r_p^2 dxi
      j_p  = int xi sqrt(1 - xi^2) r_p^2 dxi
    """

    def sq_s(xi):
        r_s, _ = fresnel(cfg, xi)
        return r_s ** 2

    def sq_p2(xi):
        _, r_p = fresnel(cfg, xi)
        return (2.0 - 3.0 * xi ** 2) * r_p ** 2

    def sq_px(xi):
        _, r_p = fresnel(cfg, xi)
        return xi ** 2 * r_p ** 2

    def sq_j(xi):
        _, r_p = fresnel(cfg, xi)
        return xi * np.sqrt(np.maximum(1.0 - xi ** 2, 0.0)) * r_p ** 2

    edges = (0.0, 1.0)
    return (integrate(sq_s, edges, quad),
            integrate(sq_p2, edges, quad),
            integrate(sq_px, edges, quad),
            integrate_radiation(cfg, sq_j, 0.0, quad))


def gamma_mat_vac(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
                  quad: QuadratureSpec = QuadratureSpec()) -> MaterialVacuumSplit:
    """Radiation rates resolved by output side.

    The dielectric-output rate and its side difference are independent
    of the emitter height; the vacuum-output pair carries the whole
    interference oscillation and the whole spin-driven asymmetry.
    """
    if x_nm < 0.0:
        raise ValueError("x_nm must be nonnegative")
    ux2 = _ux2(dip)
    m_s, m_p2, m_px, j_p = _static_moments(cfg, quad)
    static = (1.0 - ux2) * m_s + ux2 * m_p2 + m_px
    g_mat = 0.5 - 0.375 * static
    g_vac = 0.5 + 0.375 * static + _radiation_interference(cfg, dip, x_nm, quad)
    d_mat = (1.0 / np.pi) * _re_xz(dip) * (1.0 - 3.0 * j_p)
    d_vac = -d_mat + (6.0 / np.pi) * _im_xz(dip) * _delta_rad_moment(
        cfg, x_nm, quad)
    return MaterialVacuumSplit(
        gamma_rad_mat=g_mat, gamma_rad_vac=g_vac,
        delta_rad_mat=d_mat, delta_rad_vac=d_vac,
        gamma_rad_mat_plus=0.5 * (g_mat + d_mat),
        gamma_rad_mat_minus=0.5 * (g_mat - d_mat),
        gamma_rad_vac_plus=0.5 * (g_vac + d_vac),
        gamma_rad_vac_minus=0.5 * (g_vac - d_vac))


def _zeta(delta: float, gamma: float) -> float | None:
    if abs(gamma) < _ZETA_FLOOR:
        return None
    return delta / gamma


def asymmetry(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
              quad: QuadratureSpec = QuadratureSpec()):
    """Asymmetry factors (zeta_evan, zeta_rad, zeta_total) = delta/gamma.

    A factor is None (undefined, as opposed to zero) when its
    denominator is smaller than 1e-12.
    """
    g_evan = gamma_evan(cfg, dip, x_nm, quad)
    g_rad = gamma_rad(cfg, dip, x_nm, quad)
    d_evan, d_rad, d_tot = delta_rates(cfg, dip, x_nm, quad)
    return (_zeta(d_evan, g_evan), _zeta(d_rad, g_rad),
            _zeta(d_tot, g_evan + g_rad))


def rate_report(cfg: InterfaceConfig, dip: DipolePolarization, x_nm: float,
                quad: QuadratureSpec = QuadratureSpec()) -> RateReport:
    """Assemble the full RateReport at one emitter height."""
    if x_nm < 0.0:
        raise ValueError("x_nm must be nonnegative")
    g_evan = gamma_evan(cfg, dip, x_nm, quad)
    osc = _radiation_interference(cfg, dip, x_nm, quad)
    g_rad = 1.0 + osc
    g_tot = g_evan + g_rad

    pref = 6.0 / np.pi
    im_xz = _im_xz(dip)
    d_evan = pref * im_xz * _delta_evan_moment(cfg, x_nm, quad)
    d_rad = pref * im_xz * _delta_rad_moment(cfg, x_nm, quad)
    d_tot = d_evan + d_rad

    ux2 = _ux2(dip)
    m_s, m_p2, m_px, j_p = _static_moments(cfg, quad)
    static = (1.0 - ux2) * m_s + ux2 * m_p2 + m_px
    g_mat = 0.5 - 0.375 * static
    g_vac = 0.5 + 0.375 * static + osc
    d_mat = (1.0 / np.pi) * _re_xz(dip) * (1.0 - 3.0 * j_p)
    d_vac = -d_mat + d_rad

    return RateReport(
        gamma_evan=g_evan, gamma_rad=g_rad, gamma_total=g_tot,
        delta_evan=d_evan, delta_rad=d_rad, delta_total=d_tot,
        gamma_evan_plus=0.5 * (g_evan + d_evan),
        gamma_evan_minus=0.5 * (g_evan - d_evan),
        gamma_rad_plus=0.5 * (g_rad + d_rad),
        gamma_rad_minus=0.5 * (g_rad - d_rad),
        gamma_plus=0.5 * (g_tot + d_tot),
        gamma_minus=0.5 * (g_tot - d_tot),
        gamma_rad_mat=g_mat, gamma_rad_vac=g_vac,
        delta_rad_mat=d_mat, delta_rad_vac=d_vac,
        gamma_rad_mat_plus=0.5 * (g_mat + d_mat),
        gamma_rad_mat_minus=0.5 * (g_mat - d_mat),
        gamma_rad_vac_plus=0.5 * (g_vac + d_vac),
        gamma_rad_vac_minus=0.5 * (g_vac - d_vac),
        zeta_evan=_zeta(d_evan, g_evan),
        zeta_rad=_zeta(d_rad, g_rad),
        zeta_total=_zeta(d_tot, g_tot))


def axis_rates(cfg: InterfaceConfig, x_nm: float,
               quad: QuadratureSpec = QuadratureSpec()):
    """Cross-formula route for the two axis-aligned special cases.

    Returns (gamma_evan_perp, gamma_evan_par, gamma_rad_perp,
    gamma_rad_par): the evanescent and radiation rates for a dipole
    normal to the interface and for one lying in the interface plane,
    computed from the dedicated single-coefficient kernels rather than
    the general |u_x|^2 decomposition.
    """
    two_k0x = 2.0 * cfg.k0_nm * x_nm

    def evan_perp(xi):
        c_perp, _ = axis_coefficients(cfg, xi, "evanescent")
        return c_perp * np.exp(-two_k0x * xi)

    def evan_par(xi):
        _, c_par = axis_coefficients(cfg, xi, "evanescent")
        return c_par * np.exp(-two_k0x * xi)

    def rad_perp(xi):
        c_perp, _ = axis_coefficients(cfg, xi, "radiation")
        return c_perp * np.cos(two_k0x * xi)

    def rad_par(xi):
        _, c_par = axis_coefficients(cfg, xi, "radiation")
        return c_par * np.cos(two_k0x * xi)

    return (1.5 * integrate_evanescent(cfg, evan_perp, x_nm, quad),
            0.75 * integrate_evanescent(cfg, evan_par, x_nm, quad),
            1.0 + 1.5 * integrate_radiation(cfg, rad_perp, x_nm, quad),
            1.0 + 0.75 * integrate_radiation(cfg, rad_par, x_nm, quad))


def oracle_integrate(cfg: InterfaceConfig, dip: DipolePolarization,
                     x_nm: float, channel: str,
                     phi_range=(0.0, 2.0 * np.pi),
                     quad: QuadratureSpec | None = None,
                     n_phi: int = 64) -> float:
    """Brute-force 2D quadrature of an angular density over a phi wedge.

    Integrates xi * f_channel(xi, phi) with a fixed n_phi-node
    Gauss-Legendre rule in phi nested inside the adaptive xi
    integrator.  This route never touches the closed-form kernels and
    serves as the independent oracle for every rate in this module.

    channel is one of 'evan', 'rad', 'mat', 'vac'.
    """
    if channel not in ORACLE_CHANNELS:
        raise ValueError(
            f"unknown channel {channel!r}; choose from {ORACLE_CHANNELS}")
    lo, hi = float(phi_range[0]), float(phi_range[1])
    if not hi > lo:
        raise ValueError("phi_range must be an increasing pair")
    if quad is None:
        quad = QuadratureSpec(rtol=1e-9, atol=1e-15, max_subdivisions=400)
    nodes, weights = np.polynomial.legendre.leggauss(n_phi)
    phi = 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes
    w_phi = 0.5 * (hi - lo) * weights

    if channel == "evan":
        def g(xi):
            f = f_evan(cfg, dip, xi[:, None], phi[None, :], x_nm)[2]
            return xi * (f @ w_phi)

        return integrate_evanescent(cfg, g, x_nm, quad)

    field = {"rad": "f_rad", "mat": "f_rad_mat", "vac": "f_rad_vac"}[channel]

    def g(xi):
        breakdown = f_rad(cfg, dip, xi[:, None], phi[None, :], x_nm)
        return xi * (getattr(breakdown, field) @ w_phi)

    return integrate_radiation(cfg, g, x_nm, quad)
