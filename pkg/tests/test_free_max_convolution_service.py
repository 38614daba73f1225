import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freemax.objects.distributions.regime_tag import RegimeTag
from freemax.objects.factories.catalog_factory import CatalogFactory
from freemax.objects.free_powers.free_power import FreePower
from freemax.resolvers.distribution_name_resolver import DistributionNameResolver
from freemax.resolvers.regime_resolver import RegimeResolver
from freemax.services.free_max_convolution_service import FreeMaxConvolutionService
from freemax.services.norming_service import NormingService


def _free_power(name, n, params=None):
    if params is None:
        params = DistributionNameResolver.default_parameters(name)
    entry = CatalogFactory.create(name, params)
    return entry, FreePower(base=entry.spec, n=n, norming=NormingService.norming(entry, n))


def test_free_max_cdf_of_two_uniforms():
    uniform = CatalogFactory.create("uniform01").spec
    xs = np.linspace(-0.5, 1.5, 41)

    expected = np.maximum(2.0 * np.clip(xs, 0.0, 1.0) - 1.0, 0.0)

    np.testing.assert_allclose(FreeMaxConvolutionService.free_max_cdf(uniform, uniform, xs), expected, atol=1e-15)


@given(st.floats(min_value=-20.0, max_value=40.0, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_free_max_cdf_lies_below_both_factors(x):
    gumbel = CatalogFactory.create("gumbel").spec
    normal = CatalogFactory.create("std_normal").spec

    value = FreeMaxConvolutionService.free_max_cdf(gumbel, normal, x)

    assert 0.0 <= value <= min(float(gumbel.cdf(x)), float(normal.cdf(x))) + 1e-15


def test_free_power_with_one_factor_is_the_normalized_cdf():
    entry, free_power = _free_power("gumbel", 1)
    xs = np.linspace(-3.0, 5.0, 17)

    expected = entry.spec.cdf(free_power.norming.a * xs + free_power.norming.b)

    np.testing.assert_allclose(FreeMaxConvolutionService.free_power_cdf(free_power, xs), expected)


def test_free_power_of_uniform_is_linear_on_its_window():
    _, free_power = _free_power("uniform01", 10)
    a = free_power.norming.a
    xs = np.linspace(-1.0, 0.0, 11)

    np.testing.assert_allclose(FreeMaxConvolutionService.free_power_cdf(free_power, xs), np.clip(1.0 + 10 * a * xs, 0.0, 1.0), atol=1e-14)


def test_support_window_of_uniform():
    _, free_power = _free_power("uniform01", 100)
    a = free_power.norming.a

    window = FreeMaxConvolutionService.support_window(free_power)

    assert window.a_lower == pytest.approx(-1.0 / (100 * a), rel=1e-12)
    assert window.b_upper == pytest.approx(0.0, abs=1e-15)
    assert window.contains(-0.5)
    assert not window.contains(0.5)


def test_support_window_is_unbounded_above_for_unbounded_law():
    _, free_power = _free_power("frechet", 1000)

    window = FreeMaxConvolutionService.support_window(free_power)

    assert math.isinf(window.b_upper)
    assert 0.0 < window.a_lower < 1.0


def test_density_wn_rejects_points_outside_window():
    _, free_power = _free_power("uniform01", 100)

    with pytest.raises(ValueError):
        FreeMaxConvolutionService.density_wn(free_power, 0.5)
    with pytest.raises(ValueError):
        FreeMaxConvolutionService.density_wn(free_power, -5.0)


def test_density_wn_of_uniform_is_constant():
    _, free_power = _free_power("uniform01", 1000)

    values = FreeMaxConvolutionService.density_wn(free_power, np.linspace(-0.99, -0.01, 50))

    np.testing.assert_allclose(values, 1000 * (-math.expm1(-1e-3)), rtol=1e-11)


@pytest.mark.parametrize("name", DistributionNameResolver.canonical_names())
@pytest.mark.parametrize("n", [10, 1000])
def test_density_matches_finite_difference_of_cdf(name, n):
    entry, free_power = _free_power(name, n)
    window = FreeMaxConvolutionService.support_window(free_power)
    domain_lower, domain_upper = RegimeResolver.theorem_domain(entry.regime)
    lower = max(domain_lower, window.a_lower)
    upper = min(domain_upper, window.b_upper, lower + 10.0)
    xs = np.linspace(lower, upper, 1002)[1:-1]
    step = 1e-6 * np.maximum(1.0, np.abs(xs))

    cdf = lambda points: np.asarray(FreeMaxConvolutionService.free_power_cdf(free_power, points))
    difference = (cdf(xs + step) - cdf(xs - step)) / (2.0 * step)
    density = FreeMaxConvolutionService.density_wn(free_power, xs, window)

    np.testing.assert_allclose(difference, density, rtol=1e-5, atol=1e-9)


def test_free_power_requires_matching_norming():
    entry = CatalogFactory.create("gumbel")
    pair = NormingService.norming(entry, 10)

    with pytest.raises(ValueError):
        FreePower(base=entry.spec, n=11, norming=pair)


@pytest.mark.parametrize("name", DistributionNameResolver.canonical_names())
def test_two_factor_power_is_free_max_of_the_base_with_itself(name):
    entry, free_power = _free_power(name, 2)
    window = FreeMaxConvolutionService.support_window(free_power)
    lower = window.a_lower - 1.0
    upper = window.b_upper + 1.0 if math.isfinite(window.b_upper) else window.a_lower + 20.0
    xs = np.linspace(lower, upper, 301)
    points = free_power.norming.a * xs + free_power.norming.b

    np.testing.assert_array_equal(
        FreeMaxConvolutionService.free_power_cdf(free_power, xs),
        FreeMaxConvolutionService.free_max_cdf(entry.spec, entry.spec, points)
    )


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("n", [10, 100, 10**4, 10**6])
def test_frechet_window_matches_closed_form(alpha, n):
    _, free_power = _free_power("frechet", n, [alpha])

    window = FreeMaxConvolutionService.support_window(free_power)

    assert window.a_lower == pytest.approx((-n * math.log1p(-1.0 / n)) ** (-1.0 / alpha), rel=1e-9)


@pytest.mark.parametrize("name, params, limit", [
    ("frechet", [2.0], 1.0),
    ("log_logistic", [2.0], 1.0),
    ("cauchy", [], 1.0),
    ("weibull", [-2.0], -1.0),
    ("uniform01", [], -1.0),
    ("gumbel", [], 0.0),
    ("std_normal", [], 0.0),
])
def test_lower_window_edge_approaches_its_limit(name, params, limit):
    distances = []
    for n in [10**2, 10**3, 10**4, 10**5]:
        entry, free_power = _free_power(name, n, params)
        window = FreeMaxConvolutionService.support_window(free_power)
        distances.append(abs(window.a_lower - limit))
        if entry.regime.tag != RegimeTag.Weibull:
            assert math.isinf(window.b_upper)

    assert all(later < earlier for earlier, later in zip(distances, distances[1:]))
    assert distances[-1] < 1e-3
