import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spindimer.errors import NonPositiveTemperature
from spindimer.model import Fields, ModelParams
from spindimer.oracle import fd_derivative, numeric_free_energy
from spindimer.thermo import (
    LN6,
    entropy,
    free_energy,
    gs_magnetization_qf,
    gs_polarization_qf,
    magnetization,
    partition_function,
    polarization,
    thermo_point,
)

P0 = ModelParams()
F0 = Fields()
Z1 = 2 * math.e + 4 * math.exp(-0.5)  # levels {-1 (x2), 0.5 (x4)} at T=1


def random_cases(n, seed=13):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        p = ModelParams(
            delta=rng.uniform(0, 2), d=rng.uniform(-2, 2),
            g1=rng.uniform(0.5, 4), g2=rng.uniform(0.5, 4),
        )
        f = Fields(b=rng.uniform(0, 4), e=rng.uniform(0, 4))
        t = rng.uniform(0.05, 5.0)
        yield p, f, t


def test_partition_function_values():
    assert_allclose(partition_function(P0, F0, 1e6), 6.0, atol=1e-4)
    assert_allclose(partition_function(P0, F0, 1.0), Z1, rtol=1e-14)


def test_partition_function_rejects_bad_temperature():
    with pytest.raises(NonPositiveTemperature):
        partition_function(P0, F0, -1.0)


def test_free_energy_values():
    assert_allclose(free_energy(P0, F0, 1.0), -math.log(Z1), rtol=1e-14)
    assert_allclose(free_energy(P0, F0, 1e-5), -1.0, atol=1e-4)


def test_free_energy_matches_oracle():
    for p, f, t in random_cases(100):
        assert abs(free_energy(p, f, t) - numeric_free_energy(p, f, t)) < 1e-10


def test_magnetization_saturation_and_zero_field():
    p = ModelParams(g1=2, g2=2)
    assert_allclose(magnetization(p, Fields(b=12.0), 0.01), 1.0, atol=1e-8)
    for t in (0.05, 0.5, 3.0):
        assert abs(magnetization(p, Fields(b=0.0), t)) < 1e-12


def test_one_third_plateau_isotropic():
    p = ModelParams(g1=2, g2=2)
    assert_allclose(magnetization(p, Fields(b=0.2), 0.01), 1 / 3, atol=1e-9)


def test_polarization_zero_without_electric_field():
    assert polarization(P0, Fields(b=1.3, e=0.0), 0.7) == 0.0


def test_polarization_qf_value():
    # ground-state polarization 2E / sqrt((J)^2 + 8(J^2+E^2)) at g1=g2, E=1
    val = polarization(ModelParams(), Fields(b=0.3, e=1.0), 0.01)
    assert_allclose(val, 2 / math.sqrt(17), atol=1e-8)


def test_thermo_consistency_with_finite_differences():
    for p, f, t in random_cases(100, seed=17):
        assert abs(magnetization(p, f, t) - fd_derivative(p, f, t, "b")) < 1e-6
        assert abs(polarization(p, f, t) / p.mu - fd_derivative(p, f, t, "e")) < 1e-6
        assert abs(entropy(p, f, t) - fd_derivative(p, f, t, "t")) < 1e-6


def test_entropy_limits():
    assert_allclose(entropy(P0, F0, 1e6), LN6, atol=1e-4)
    assert_allclose(entropy(P0, F0, 1e-5), math.log(2), atol=1e-10)
    expected_t1 = math.log(Z1) + (2 * math.e * (-1) + 4 * math.exp(-0.5) * 0.5) / Z1
    assert_allclose(entropy(P0, F0, 1.0), -(-expected_t1), rtol=1e-12)
    assert_allclose(entropy(P0, F0, 1.0), 1.52497, atol=1e-5)


def test_entropy_bounds_and_monotonicity():
    for p, f, _ in random_cases(30, seed=19):
        ts = np.geomspace(0.01, 50, 40)
        ss = [entropy(p, f, t) for t in ts]
        assert all(0.0 <= s <= LN6 + 1e-12 for s in ss)
        assert all(s2 >= s1 - 1e-10 for s1, s2 in zip(ss, ss[1:]))


def test_residual_entropy_counts_degeneracy():
    # doubly degenerate QF+- pair at zero field
    assert_allclose(entropy(P0, F0, 1e-7), math.log(2), atol=1e-12)
    # unique gapped ground state inside the QF+ region
    assert_allclose(entropy(ModelParams(g1=2, g2=2), Fields(b=0.3), 1e-7), 0.0, atol=1e-12)


def test_low_temperature_matches_gs_formulas():
    p = ModelParams(g1=2, g2=0.8, d=-0.2)
    f = Fields(b=0.25, e=0.6)
    assert_allclose(magnetization(p, f, 1e-4), gs_magnetization_qf(p, f, "+"), atol=1e-3)
    assert_allclose(polarization(p, f, 1e-4), gs_polarization_qf(p, f, "+"), atol=1e-3)


def test_gs_magnetization_branches():
    p = ModelParams(g1=2, g2=2)
    # equal g-factors: field-independent 1/3
    for b in (0.0, 0.4, 1.1):
        assert_allclose(gs_magnetization_qf(p, Fields(b=b, e=0.7), "+"), 1 / 3, atol=1e-14)
    # large electric field: radical term dies off
    p2 = ModelParams(g1=2, g2=0.8)
    big_e = Fields(b=0.5, e=1e5)
    assert_allclose(gs_magnetization_qf(p2, big_e, "+"), 0.8 / 3.6, atol=1e-4)
    assert_allclose(gs_magnetization_qf(p2, big_e, "-"), -0.8 / 3.6, atol=1e-4)


def test_gs_magnetization_zero_field_limit():
    # at b -> 0 both branches reduce to the +-(g2 -+ (g1-g2)(J-2D)/R) form
    p = ModelParams(g1=2, g2=0.8, d=-0.3)
    e = 0.9
    u = p.j - 2 * p.d
    r = math.sqrt(u * u + 8 * (p.j**2 + e**2))
    expect_plus = (p.g2 - (p.g1 - p.g2) * u / r) / (p.g1 + 2 * p.g2)
    assert_allclose(gs_magnetization_qf(p, Fields(b=0.0, e=e), "+"), expect_plus, atol=1e-14)


def test_gs_polarization_properties():
    p = ModelParams(g1=2, g2=2)
    assert gs_polarization_qf(p, Fields(b=0.5, e=0.0), "+") == 0.0
    # equal g-factors: both branches agree at any field
    for b in (0.0, 0.8, 2.0):
        f = Fields(b=b, e=1.2)
        assert_allclose(
            gs_polarization_qf(p, f, "+"), gs_polarization_qf(p, f, "-"), atol=1e-15
        )
    # large-e asymptote 1/sqrt(2)
    assert_allclose(
        gs_polarization_qf(p, Fields(b=0.3, e=1e7), "+"), 1 / math.sqrt(2), atol=1e-7
    )


def test_quasi_plateau_position_vs_g_ratio():
    # low-T quasi-plateau sits below 1/3 for g2/g1 < 1, above for g2/g1 > 1
    for g2, cmp in ((0.8, -1), (3.0, +1)):
        p = ModelParams(g1=2, g2=g2)
        for b in np.linspace(0.05, 0.4, 8):
            m = magnetization(p, Fields(b=b), 0.01)
            assert cmp * (m - 1 / 3) > 0


def test_thermo_point_bundle():
    tp = thermo_point(P0, Fields(b=0.4, e=0.3), 0.8)
    assert tp.z > 0
    assert 0 <= tp.s <= LN6
    assert -1 <= tp.m_over_ms <= 1
    assert tp.p >= 0
