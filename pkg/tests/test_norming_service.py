import math

import numpy as np
import pytest

from freemax.objects.distributions.regime_tag import RegimeTag
from freemax.objects.factories.catalog_factory import CatalogFactory
from freemax.resolvers.distribution_name_resolver import DistributionNameResolver
from freemax.services.distribution_service import DistributionService
from freemax.services.norming_service import NormingService
from freemax.services.von_mises_service import VonMisesService

N_VALUES = [10, 100, 1000, 10000]


@pytest.mark.parametrize("n", N_VALUES)
def test_frechet_norming(n):
    pair = NormingService.norming(CatalogFactory.create("frechet", [2.0]), n)

    assert pair.a == pytest.approx(math.sqrt(n), rel=1e-12)
    assert pair.b == 0.0
    assert pair.regime == RegimeTag.Frechet
    assert pair.unique


@pytest.mark.parametrize("n", N_VALUES)
def test_log_logistic_norming(n):
    pair = NormingService.norming(CatalogFactory.create("log_logistic", [3.0]), n)

    assert pair.a == pytest.approx(math.expm1(1.0 / n) ** (-1.0 / 3.0), rel=1e-10)


@pytest.mark.parametrize("n", N_VALUES)
def test_cauchy_norming(n):
    pair = NormingService.norming(CatalogFactory.create("cauchy"), n)

    assert pair.a == pytest.approx(math.tan(math.pi * math.exp(-1.0 / n) - math.pi / 2.0), rel=1e-9)


@pytest.mark.parametrize("n", N_VALUES)
def test_uniform_norming(n):
    pair = NormingService.norming(CatalogFactory.create("uniform01"), n)

    assert pair.a == pytest.approx(-math.expm1(-1.0 / n), rel=1e-9)
    assert pair.b == 1.0
    assert pair.regime == RegimeTag.Weibull


@pytest.mark.parametrize("n", N_VALUES)
def test_standard_weibull_norming(n):
    pair = NormingService.norming(CatalogFactory.create("weibull", [-2.0]), n)

    assert pair.a == pytest.approx(n ** -0.5, rel=1e-12)
    assert pair.b == 0.0


@pytest.mark.parametrize("n", N_VALUES)
def test_gumbel_norming(n):
    pair = NormingService.norming(CatalogFactory.create("gumbel"), n)

    assert pair.a == pytest.approx(1.0, rel=1e-10)
    assert pair.b == pytest.approx(math.log(n), abs=1e-10)
    assert pair.regime == RegimeTag.Gumbel


@pytest.mark.parametrize("n", N_VALUES)
def test_stretched_gumbel_norming(n):
    alpha = 2.0
    pair = NormingService.norming(CatalogFactory.create("stretched_gumbel", [alpha]), n)

    assert pair.b == pytest.approx(math.log(n) ** (1.0 / alpha), rel=1e-10)
    assert pair.a == pytest.approx(math.log(n) ** (-1.0 + 1.0 / alpha) / alpha, rel=1e-9)


@pytest.mark.parametrize("name", DistributionNameResolver.canonical_names())
@pytest.mark.parametrize("n", [10, 1000])
def test_norming_residual_is_tiny(name, n):
    entry = CatalogFactory.create(name, DistributionNameResolver.default_parameters(name))

    pair = NormingService.norming(entry, n)

    assert pair.residual <= 1e-12
    assert pair.a > 0
    assert pair.unique


def test_norming_accepts_numpy_integers():
    pair = NormingService.norming(CatalogFactory.create("frechet", [2.0]), np.int64(100))

    assert pair.n == 100
    assert isinstance(pair.n, int)


@pytest.mark.parametrize("n", [0, -3, True, 2.5, 10**10])
def test_norming_rejects_invalid_n(n):
    with pytest.raises(ValueError):
        NormingService.norming(CatalogFactory.create("gumbel"), n)


def test_frechet_norming_rejects_bounded_law():
    with pytest.raises(ValueError):
        NormingService.norming_frechet(CatalogFactory.create("uniform01").spec, 100)


def test_weibull_norming_rejects_unbounded_law():
    with pytest.raises(ValueError):
        NormingService.norming_weibull(CatalogFactory.create("gumbel").spec, 100)


def test_frechet_norming_rejects_non_positive_scale():
    # the Cauchy target is negative for n = 1
    with pytest.raises(ValueError):
        NormingService.norming_frechet(CatalogFactory.create("cauchy").spec, 1)


@pytest.mark.parametrize("k, alpha, omega", [(1.0, -2.0, 1.0), (2.0, -3.0, 0.5), (0.5, -1.5, 4.0)])
@pytest.mark.parametrize("n", N_VALUES)
def test_endpoint_power_norming(k, alpha, omega, n):
    pair = NormingService.norming(CatalogFactory.create("endpoint_power", [k, alpha, omega]), n)

    assert pair.a == pytest.approx(k ** (1.0 / alpha) * (-math.expm1(-1.0 / n)) ** (-1.0 / alpha), rel=1e-10)
    assert pair.b == omega


@pytest.mark.parametrize("n", [10**3, 10**4, 10**6])
def test_normal_shift_follows_its_asymptotic_formula(n):
    pair = NormingService.norming(CatalogFactory.create("std_normal"), n)
    root = math.sqrt(2.0 * math.log(n))

    asymptotic = root - (math.log(math.log(n)) + math.log(4.0 * math.pi)) / (2.0 * root)

    assert pair.b == pytest.approx(asymptotic, rel=0.05)
    assert pair.a == pytest.approx(float(VonMisesService.auxiliary_f(CatalogFactory.create("std_normal").spec, pair.b)), rel=1e-8)


@pytest.mark.parametrize("name", DistributionNameResolver.canonical_names())
@pytest.mark.parametrize("n", [10, 1000, 10**6])
def test_phi_at_the_target_is_log_n(name, n):
    entry = CatalogFactory.create(name, DistributionNameResolver.default_parameters(name))

    pair = NormingService.norming(entry, n)
    phi = -math.log(float(DistributionService.neg_log_cdf(entry.spec, pair.target)))

    assert abs(phi - math.log(n)) <= 1e-8
