"""Quantitative acceptance targets, one test per criterion.

Run with -v to get one pass/fail line per criterion.  Each test states
its tolerance inline; shared sweeps are cached in module fixtures.
Criterion 5b documents a known miss: the evanescent channel decays
algebraically, not exponentially, so it cannot reach 1e-8 at 50
wavelengths (see the analysis note shipped outside the package).
"""

import numpy as np
import pytest

from helpers import random_dipole, random_real_dipole, rel_err
from surfemit import (DipolePolarization, InterfaceConfig, ResultTable,
                      decompose_coupling, delta_rates, f_evan,
                      f_evan_limit_kappa1, f_rad, gamma_evan, gamma_mat_vac,
                      gamma_rad, gamma_total, oracle_integrate, rate_report,
                      side_rates)
from surfemit.cli import run
from surfemit.density import delta_f, delta_f_equivalences
from surfemit.vectens import scalar_product


@pytest.fixture(scope="module")
def cfg():
    return InterfaceConfig(n1=1.45, lambda0_nm=852.0)


@pytest.fixture(scope="module")
def eps_reports(cfg):
    dip = DipolePolarization.from_preset("eps-xz")
    xs = np.arange(0.0, 800.1, 5.0)
    return xs, [rate_report(cfg, dip, float(x)) for x in xs]


def test_criterion_01_peak_enhancement(capsys):
    rc = run(["rates", "--n1", "1.45", "--wavelength-nm", "852",
              "--dipole", "x", "--x-nm", "0:800:2"])
    assert rc == 0
    table = ResultTable.from_csv(capsys.readouterr().out)
    g = table.column("gamma_total")
    assert int(np.argmax(g)) == 0, "total rate must peak at contact"
    assert g[0] == pytest.approx(2.18, abs=0.02)


def test_criterion_02_material_rate_value_and_constancy(cfg):
    # any dipole with |u_x|^2 = 1/2 gives the same dielectric-side rate
    dip = DipolePolarization.from_preset("theta-xz")
    vals = [gamma_mat_vac(cfg, dip, float(x)).gamma_rad_mat
            for x in np.arange(0.0, 800.1, 25.0)]
    assert vals[0] == pytest.approx(0.40, abs=0.01)
    assert max(vals) - min(vals) < 1e-10


def test_criterion_03_output_crossovers(cfg):
    dip = DipolePolarization.from_preset("theta-xz")
    xs = np.arange(0.0, 500.1, 1.0)
    splits = [gamma_mat_vac(cfg, dip, float(x)) for x in xs]
    vac = np.array([s.gamma_rad_vac for s in splits])
    mat = np.array([s.gamma_rad_mat for s in splits])
    flips = np.nonzero(np.diff(np.sign(vac - mat)))[0]
    assert len(flips) == 1, "exactly one vacuum/material crossover"
    assert 190.0 <= xs[flips[0]] <= 200.0
    above = np.nonzero(vac > 0.5)[0]
    assert len(above) > 0
    assert 392.0 <= xs[above[0]] <= 402.0


def test_criterion_04_oscillation_period(cfg):
    # an in-plane dipole keeps the interference fringes strong far out
    dip = DipolePolarization.from_preset("y")
    xs = np.arange(200.0, 3400.1, 2.0)
    g = np.array([gamma_rad(cfg, dip, float(x)) for x in xs])
    inner = np.nonzero((g[1:-1] > g[:-2]) & (g[1:-1] > g[2:]))[0] + 1
    assert len(inner) >= 6
    peaks = []
    for i in inner:
        denom = g[i - 1] - 2.0 * g[i] + g[i + 1]
        peaks.append(xs[i] + (xs[1] - xs[0]) * 0.5
                     * (g[i - 1] - g[i + 1]) / denom)
    spacings = np.diff(peaks)
    assert np.all(np.abs(spacings - 426.0) <= 15.0), spacings


def test_criterion_05a_total_rate_far_asymptote(cfg):
    dip = DipolePolarization.from_preset("x")
    x = 50.0 * cfg.lambda0_nm
    assert abs(gamma_total(cfg, dip, x) - 1.0) < 0.005


def test_criterion_05b_evanescent_rate_far_asymptote(cfg):
    # stated target: < 1e-8 at 50 wavelengths.  The channel decays as
    # (2 k0 x)^-2, so the true value there is ~1.5e-5; kept faithful
    # rather than loosened, so this line is expected to fail.
    dip = DipolePolarization.from_preset("x")
    x = 50.0 * cfg.lambda0_nm
    assert gamma_evan(cfg, dip, x) < 1e-8


def test_criterion_06_directionality(eps_reports):
    xs, reports = eps_reports
    plus = np.array([r.gamma_evan_plus for r in reports])
    minus = np.array([r.gamma_evan_minus for r in reports])
    assert np.all(plus > minus)
    assert abs(reports[0].zeta_rad) < 1e-9
    zeta_evan = np.array([r.zeta_evan for r in reports])
    assert np.all(np.diff(zeta_evan) < 0.0)


def close_enough(a: float, b: float, rtol: float) -> bool:
    return rel_err(a, b) < rtol or max(abs(a), abs(b)) < 1e-10


def test_criterion_07_oracle_equivalence(cfg):
    rng = np.random.default_rng(20260817)
    half_up = (0.0, np.pi)
    half_dn = (np.pi, 2.0 * np.pi)
    for _ in range(20):
        dip = random_dipole(rng)
        x = float(rng.uniform(0.0, 600.0))
        split = gamma_mat_vac(cfg, dip, x)
        pairs = [
            (gamma_evan(cfg, dip, x), oracle_integrate(cfg, dip, x, "evan")),
            (gamma_rad(cfg, dip, x), oracle_integrate(cfg, dip, x, "rad")),
            (split.gamma_rad_mat, oracle_integrate(cfg, dip, x, "mat")),
            (split.gamma_rad_vac, oracle_integrate(cfg, dip, x, "vac")),
        ]
        e_up = oracle_integrate(cfg, dip, x, "evan", half_up)
        e_dn = oracle_integrate(cfg, dip, x, "evan", half_dn)
        r_up = oracle_integrate(cfg, dip, x, "rad", half_up)
        r_dn = oracle_integrate(cfg, dip, x, "rad", half_dn)
        sides = side_rates(cfg, dip, x)
        d_evan, d_rad, _ = delta_rates(cfg, dip, x)
        pairs += [
            (sides[0], e_up), (sides[1], e_dn),
            (sides[2], r_up), (sides[3], r_dn),
            (d_evan, e_up - e_dn), (d_rad, r_up - r_dn),
        ]
        for closed, oracle in pairs:
            assert close_enough(closed, oracle, 1e-7), (closed, oracle)


def test_criterion_08_three_route_identity(cfg):
    rng = np.random.default_rng(7)
    for branch in ("evanescent", "radiation"):
        xi_top = cfg.xi_max if branch == "evanescent" else 1.0
        for _ in range(200):
            dip = random_dipole(rng)
            xi = float(rng.uniform(1e-3, xi_top - 1e-3))
            phi = float(rng.uniform(0.0, 2.0 * np.pi))
            x = float(rng.uniform(0.0, 500.0))
            closed, cross, spin = delta_f_equivalences(
                cfg, dip, xi, phi, x, branch)
            scale = max(abs(closed), abs(cross), abs(spin), 1e-3)
            assert abs(closed - cross) < 1e-11 * scale
            assert abs(closed - spin) < 1e-11 * scale


def test_criterion_09_tensor_identity():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        d = rng.normal(size=3) + 1j * rng.normal(size=3)
        e = rng.normal(size=3) + 1j * rng.normal(size=3)
        n = float(rng.uniform(0.1, 5.0))
        direct = n * abs(scalar_product(d, e)) ** 2
        parts = decompose_coupling(d, e, n)
        assert rel_err(parts.total, direct) < 1e-12
    for _ in range(200):
        d = rng.normal(size=3)
        e = rng.normal(size=3)
        parts = decompose_coupling(d, e, 1.0)
        assert abs(parts.vector_part) < 1e-14 * max(parts.total, 1.0)


def test_criterion_10_symmetry_suite(cfg):
    rng = np.random.default_rng(3)
    xi_e = rng.uniform(1e-3, cfg.xi_max - 1e-3, size=40)
    xi_r = rng.uniform(0.0, 1.0, size=40)
    phis = rng.uniform(0.0, 2.0 * np.pi, size=40)

    for _ in range(8):
        dip = random_real_dipole(rng)
        x = float(rng.uniform(0.0, 700.0))
        # all side differences vanish identically
        assert delta_rates(cfg, dip, x) == (0.0, 0.0, 0.0)
        assert np.all(delta_f(cfg, dip, xi_e, phis, x, "evan") == 0.0)
        assert np.all(delta_f(cfg, dip, xi_r, phis, x, "rad") == 0.0)
        # both densities are symmetric under phi -> phi + pi
        fe = f_evan(cfg, dip, xi_e, phis, x)[2]
        fe_flip = f_evan(cfg, dip, xi_e, phis + np.pi, x)[2]
        assert np.allclose(fe, fe_flip, rtol=1e-12, atol=1e-15)
        fr = f_rad(cfg, dip, xi_r, phis, x).f_rad
        fr_flip = f_rad(cfg, dip, xi_r, phis + np.pi, x).f_rad
        assert np.allclose(fr, fr_flip, rtol=1e-12, atol=1e-15)

    # at contact the radiation-side difference vanishes for any dipole
    for _ in range(8):
        dip = random_dipole(rng)
        assert np.all(delta_f(cfg, dip, xi_r, phis, 0.0, "rad") == 0.0)

    # both branch parametrizations meet the same kappa = 1 limit
    for _ in range(8):
        dip = random_dipole(rng)
        x = float(rng.uniform(0.0, 700.0))
        lim = f_evan_limit_kappa1(cfg, dip, phis)
        fe0 = f_evan(cfg, dip, np.zeros_like(phis), phis, x)[2]
        fr0 = f_rad(cfg, dip, np.zeros_like(phis), phis, x).f_rad
        assert np.allclose(fe0, lim, rtol=1e-13)
        assert np.allclose(fr0, lim, rtol=1e-13)
