import math

import numpy as np
import pytest

from whichway import interference as itf
from whichway import params

HBAR = params.CODATA_2018.reduced_planck
M_P = params.CODATA_2018.proton_mass
T_BACH = 16.5e-9


def rel_l2(a, b):
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


def local_maxima(x, y):
    idx = np.where((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:]))[0] + 1
    return x[idx]


def test_fringe_spacing_bach(bach):
    x = np.linspace(-70e-6, 70e-6, 14001)
    grid = itf.pattern_analytic(bach, T_BACH, x)
    peaks = local_maxima(x, grid.density)
    centre = peaks[np.argmin(np.abs(peaks))]
    assert abs(centre) < 1e-8
    right = peaks[peaks > centre][0]
    # the single-slit envelope pulls the first side peak inward by ~2%
    assert right - centre == pytest.approx(44.1e-6, rel=0.025)
    # the fringe period itself, from sign changes of the interference term
    cross = itf.cross_term(bach, T_BACH, x)
    zeros = x[:-1][np.sign(cross[:-1]) != np.sign(cross[1:])]
    spacing = 2 * np.diff(zeros[np.abs(zeros) < 60e-6])
    np.testing.assert_allclose(spacing, 44.1e-6, rtol=5e-3)
    exact = params.fringe_spacing(T_BACH, 272e-9, 20e-9, params.impulse(bach, asymptotic=True),
                                  params.CODATA_2018.electron_mass, HBAR)
    assert exact == pytest.approx(44.1e-6, rel=2e-3)


def test_unmonitored_limit_has_central_maximum(bach):
    fast = bach.replace(electron_velocity_v=1e12)
    grid = itf.pattern_analytic(fast, T_BACH, itf.default_x_grid())
    assert grid.meta.visibility_V == pytest.approx(1.0, abs=1e-9)
    centre = np.argmin(np.abs(grid.x_samples))
    assert grid.density[centre] == grid.density.max()


def test_density_nonnegative_and_normalized(bach):
    for alpha in (0.6, 1.2, 1.8):
        cfg = params.with_alpha(bach, alpha)
        for t in (1e-13, 3e-12, 1e-9, T_BACH):
            grid = itf.pattern_analytic(cfg, t, itf.covering_x_grid(cfg, t, 4001))
            assert np.all(grid.density >= 0)
            assert grid.integral() == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("alpha,delta,big_delta", [(0.6, 20e-9, 210e-9), (1.2, 35e-9, 100e-9),
                                                   (1.8, 60e-9, 150e-9)])
@pytest.mark.parametrize("t", [2e-13, 5e-12, T_BACH])
def test_analytic_matches_oracle(bach, alpha, delta, big_delta, t):
    cfg = params.with_alpha(bach.replace(electron_width_delta=delta, proton_width_Delta=big_delta), alpha)
    x = itf.covering_x_grid(cfg, t, 2001)
    analytic = itf.pattern_analytic(cfg, t, x)
    oracle = itf.pattern_numeric_oracle(cfg, t, x)
    assert rel_l2(analytic.density, oracle.density) < 1e-8
    assert oracle.integral() == pytest.approx(1.0, abs=1e-6)


def test_oracle_recovers_visibility_at_centre(bach):
    cfg = params.with_alpha(bach, 1.2)
    x = np.array([-1e-6, 0.0, 1e-6])
    oracle = itf.pattern_numeric_oracle(cfg, T_BACH, x)
    # split the closed form into incoherent envelope and V-free cross term at x = 0
    coherent = itf.pattern_analytic(cfg.replace(proton_width_Delta=1e-30), T_BACH, x)
    cross = itf.cross_term(cfg.replace(proton_width_Delta=1e-30), T_BACH, x)
    # N differs between the two configs; compare per unit N^2
    n2 = oracle.meta.normalization_N ** 2
    n2_coh = coherent.meta.normalization_N ** 2
    incoherent = (coherent.density[1] - cross[1]) / n2_coh
    v_est = (oracle.density[1] / n2 - incoherent) / (cross[1] / n2_coh)
    assert v_est == pytest.approx(0.424, abs=1e-3)
    assert v_est == pytest.approx(0.42, abs=0.01)


def test_pattern_is_even(bach):
    for alpha in (0.6, 1.8):
        cfg = params.with_alpha(bach, alpha)
        x = itf.default_x_grid(2001)
        dens = itf.pattern_analytic(cfg, T_BACH, x).density
        np.testing.assert_allclose(dens, dens[::-1], rtol=1e-12, atol=0)
        oracle = itf.pattern_numeric_oracle(cfg, T_BACH, x[::50]).density
        np.testing.assert_allclose(oracle, oracle[::-1], rtol=1e-9)


def test_cross_term_scales_with_visibility(bach):
    x = np.array([0.0])
    ratios = []
    for big_delta in (50e-9, 100e-9, 210e-9, 400e-9):
        cfg = bach.replace(proton_width_Delta=big_delta)
        derived = params.derive(cfg)
        c = itf.cross_term(cfg, T_BACH, x)[0] / derived.normalization_N ** 2
        ratios.append(c / derived.visibility_V)
    np.testing.assert_allclose(ratios, ratios[0], rtol=1e-10)


def test_approximate_fringe_spacing_within_one_percent(bach):
    d = params.derive(bach)
    m = params.CODATA_2018.electron_mass
    approx = params.fringe_spacing(T_BACH, 272e-9, 20e-9, d.impulse_P, m, HBAR, approximate=True)
    exact = params.fringe_spacing(T_BACH, 272e-9, 20e-9, d.impulse_P, m, HBAR)
    assert approx / (2 * math.pi) == pytest.approx(HBAR * T_BACH / (m * 272e-9), rel=1e-15)
    assert approx == pytest.approx(exact, rel=0.01)


def test_approximate_pattern_close_at_long_times(bach):
    x = itf.default_x_grid(2001)
    exact = itf.pattern_analytic(bach, T_BACH, x).density
    approx = itf.pattern_analytic(bach, T_BACH, x, approximate=True).density
    assert rel_l2(approx, exact) < 1e-3


@pytest.mark.parametrize("grid", [[0.0, 0.0], [1.0, 0.0], [], [[0.0, 1.0]]])
def test_bad_grids(bach, grid):
    with pytest.raises(ValueError):
        itf.pattern_analytic(bach, T_BACH, grid)


@pytest.mark.parametrize("t", [0.0, -1e-9, float("nan")])
def test_bad_time(bach, t):
    with pytest.raises(ValueError):
        itf.pattern_analytic(bach, t, [0.0])


def test_oracle_bad_tolerance(bach):
    with pytest.raises(ValueError):
        itf.pattern_numeric_oracle(bach, T_BACH, [0.0], quad_tolerance=0.0)


# --- joint distribution ---------------------------------------------------

def _joint(cfg, nx=801, nk=401, t=T_BACH):
    x = itf.covering_x_grid(cfg, t, nx)
    k = itf.default_k_grid(cfg, nk)
    return itf.joint_xk_distribution(cfg, t, x, k)


def test_joint_normalized_and_marginal_matches_pattern(bach):
    for alpha in (0.6, 1.8):
        cfg = params.with_alpha(bach, alpha)
        joint = _joint(cfg)
        assert np.all(joint.density >= 0)
        assert joint.integral() == pytest.approx(1.0, abs=1e-5)
        pattern = itf.pattern_analytic(cfg, T_BACH, joint.x_samples)
        assert rel_l2(joint.x_marginal(), pattern.density) < 1e-6


def test_joint_proton_velocity_spread_alpha_06(bach):
    cfg = params.with_alpha(bach, 0.6)
    joint = _joint(cfg)
    k = joint.k_samples
    marginal = joint.k_marginal()
    second = np.trapezoid(marginal * k ** 2, k) / np.trapezoid(marginal, k)
    big_delta = cfg.proton_width_Delta
    # <k^2> = (P/hbar)^2 + 1 / (2 Delta^2) for the two-lobe mixture
    lobe_k = math.sqrt(second - 1 / (2 * big_delta ** 2))
    assert HBAR * lobe_k / M_P == pytest.approx(0.139, abs=1e-3)
    assert HBAR * lobe_k / M_P == pytest.approx(0.14, abs=0.01)


def test_joint_lobes_alpha_18(bach):
    cfg = params.with_alpha(bach, 1.8)
    joint = _joint(cfg, nk=2001)
    velocity = HBAR * joint.k_samples / M_P
    peaks = local_maxima(velocity, joint.k_marginal())
    assert len(peaks) == 2
    np.testing.assert_allclose(peaks, [-0.42, 0.42], atol=0.01)
    assert params.derive(cfg).visibility_V == pytest.approx(0.145, abs=5e-4)


def test_joint_single_point(bach):
    grid = itf.joint_xk_distribution(bach, T_BACH, [0.0], [0.0])
    assert grid.density.shape == (1, 1)
    assert grid.density[0, 0] > 0


# --- impulsive-Coulomb refinement -----------------------------------------

def test_impulsive_small_delta_limit(bach):
    cfg = bach.replace(electron_width_delta=1e-15)
    res = itf.impulsive_visibility(cfg)
    assert res.visibility == pytest.approx(params.derive(cfg).visibility_V, rel=1e-12)


def test_impulsive_visibility_exceeds_simple(bach):
    assert itf.impulsive_visibility(bach).visibility > params.derive(bach).visibility_V


def test_impulsive_phase_coefficient(bach):
    res = itf.impulsive_visibility(bach)
    assert res.quadratic_phase_a * bach.slit_separation_d ** 2 == pytest.approx(params.interaction_alpha(bach),
                                                                               rel=1e-15)
    finite = itf.impulsive_visibility(bach, asymptotic=False)
    assert finite.quadratic_phase_a / res.quadratic_phase_a == pytest.approx(10 / math.sqrt(101), rel=1e-14)
    assert finite.visibility > res.visibility
