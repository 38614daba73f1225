import math

import numpy as np
import pytest
from pydantic import ValidationError

from freemax.managers.convergence_manager import ConvergenceManager
from freemax.objects.configs.rate_reference import RateReference
from freemax.objects.factories.catalog_factory import CatalogFactory
from freemax.objects.factories.experiment_config_factory import ExperimentConfigFactory
from freemax.resolvers.distribution_name_resolver import DistributionNameResolver


@pytest.fixture
def manager():
    return ConvergenceManager(worker_count=2)


@pytest.mark.parametrize("n", [10, 100, 1000, 10000])
def test_uniform_sup_error_is_exact(manager, n):
    sup, _ = manager.sup_error(CatalogFactory.create("uniform01"), n)
    expected = abs(n * -math.expm1(-1.0 / n) - 1.0)

    assert sup == pytest.approx(expected, abs=1e-12)
    assert sup <= 1.0 / n


@pytest.mark.parametrize("alpha", [-2.0, -1.0, -0.5])
@pytest.mark.parametrize("n", [100, 1000, 10000])
def test_standard_weibull_sup_error_below_alpha_over_n(manager, alpha, n):
    sup, argmax = manager.sup_error(CatalogFactory.create("weibull", [alpha]), n)

    assert sup <= -alpha / n + 1e-12
    assert -1.0 < argmax < 0.0


def test_frechet_sup_error_respects_theorem_bound(manager):
    entry = CatalogFactory.create("frechet", [2.0])

    for n in [100, 1000]:
        bound = manager.theorem_bound(entry, n)
        sup, argmax = manager.sup_error(entry, n, grid_points=10**4)

        assert bound == pytest.approx(2.0 * -math.expm1(-1.0 / n))
        assert sup <= bound * (1.0 + 1e-9)
        assert argmax > 1.0


def test_theorem_bound_is_missing_for_shallow_weibull(manager):
    assert manager.theorem_bound(CatalogFactory.create("uniform01"), 100) is None
    assert manager.theorem_bound(CatalogFactory.create("weibull", [-2.0]), 100) == pytest.approx(2.0 * -math.expm1(-0.01))


def test_boundary_gap_of_frechet_stays_near_alpha(manager):
    gap = manager.boundary_gap(CatalogFactory.create("frechet", [2.0]), 10**5)

    assert 1.9 <= gap <= 2.0


def test_boundary_gap_rejects_other_regimes(manager):
    with pytest.raises(ValueError):
        manager.boundary_gap(CatalogFactory.create("gumbel"), 100)


@pytest.mark.parametrize("alpha", [-0.25, -0.4])
@pytest.mark.parametrize("n", [100, 10**4])
def test_nonconvergence_witness(manager, alpha, n):
    result = manager.nonconvergence_witness(alpha, n)

    assert result.error_at_witness >= 1.0 - 1e-9
    assert result.holds
    assert result.window_left < result.x_witness < 0.0


@pytest.mark.parametrize("alpha, n", [(-0.45, 100), (-0.4, 10**5), (-0.05, 10**6)])
def test_nonconvergence_witness_away_from_defaults(manager, alpha, n):
    result = manager.nonconvergence_witness(alpha, n)

    assert result.holds
    assert result.window_left < result.x_witness < 0.0


def test_nonconvergence_witness_reports_an_underflowing_window(manager):
    with pytest.raises(ValueError, match="no float lies inside it"):
        manager.nonconvergence_witness(-0.499, 2)


@pytest.mark.parametrize("alpha", [-0.5, -1.0, 0.25])
def test_nonconvergence_witness_rejects_alpha_outside_range(manager, alpha):
    with pytest.raises(ValueError):
        manager.nonconvergence_witness(alpha, 100)


@pytest.mark.parametrize("name", DistributionNameResolver.canonical_names())
def test_weak_convergence_distance_shrinks(manager, name):
    entry = CatalogFactory.create(name, DistributionNameResolver.default_parameters(name))
    xs = np.linspace(-5.0, 20.0, 5001)

    distances = [manager.weak_convergence_check(entry, n, xs) for n in [10**2, 10**3, 10**4, 10**5]]

    assert all(later <= earlier + 1e-12 for earlier, later in zip(distances, distances[1:]))


def test_run_experiment_on_uniform(manager):
    config = ExperimentConfigFactory.create({
        "distribution": "uniform01",
        "n_list": [10, 100, 1000, 10000],
        "grid_points": 1000,
        "domain_override": (-0.9, -0.1),
        "rate_reference": RateReference.NInv
    })

    report = manager.run_experiment(config)

    assert [row.n for row in report.per_n] == [10, 100, 1000, 10000]
    assert -1.05 <= report.fitted_slope <= -0.95
    assert report.constant == pytest.approx(0.5, abs=1e-3)
    assert report.bound_satisfied
    assert report.bound_holds_from == 10
    assert all(row.theorem_bound is None for row in report.per_n)


def test_g_at_norm_reference_with_vanishing_envelope(manager):
    config = ExperimentConfigFactory.create({
        "distribution": "frechet",
        "params": [2.0],
        "n_list": [10, 100, 1000, 10000],
        "grid_points": 1000,
        "rate_reference": "g_at_norm"
    })

    report = manager.run_experiment(config)

    assert math.isinf(report.constant)
    assert not report.bound_satisfied
    assert report.bound_holds_from is None


def test_experiment_config_requires_domain_for_shallow_weibull():
    with pytest.raises(ValidationError):
        ExperimentConfigFactory.create({"distribution": "weibull", "params": [-0.5], "n_list": [10, 100]})


@pytest.mark.parametrize("domain", [(-1.5, -0.5), (-0.5, -0.9), (-0.5, math.inf)])
def test_experiment_config_rejects_bad_domain(domain):
    with pytest.raises(ValidationError):
        ExperimentConfigFactory.create({"distribution": "uniform01", "n_list": [10, 100], "domain_override": domain})


@pytest.mark.parametrize("n_list", [[10], [100, 10], [1, 10], [10, 10**10]])
def test_experiment_config_rejects_bad_n_list(n_list):
    with pytest.raises(ValidationError):
        ExperimentConfigFactory.create({"distribution": "gumbel", "n_list": n_list})


def test_experiment_config_needs_a_distribution():
    with pytest.raises(ValueError):
        ExperimentConfigFactory.create({"n_list": [10, 100]})


def test_decade_grid():
    grid = ExperimentConfigFactory.decade_grid(100, 10**6, 4)

    assert len(grid) == 17
    assert grid[:4] == [100, 178, 316, 562]
    assert grid[-1] == 10**6


@pytest.mark.parametrize("bounds", [(1, 100), (100, 100), (1000, 100)])
def test_decade_grid_rejects_bad_range(bounds):
    with pytest.raises(ValueError):
        ExperimentConfigFactory.decade_grid(*bounds, 4)


@pytest.mark.slow
@pytest.mark.parametrize("name, params", [
    ("frechet", [2.0]),
    ("log_logistic", [2.0]),
    ("cauchy", []),
    ("gumbel", []),
])
def test_fitted_slope_is_one_over_n(name, params):
    config = ExperimentConfigFactory.create({
        "distribution": name,
        "params": params,
        "n_list": ExperimentConfigFactory.decade_grid(100, 10**6, 4),
        "rate_reference": RateReference.NInv
    })

    report = ConvergenceManager().run_experiment(config)

    assert -1.15 <= report.fitted_slope <= -0.85


def test_boundary_gap_of_frechet_with_unit_index(manager):
    gap = manager.boundary_gap(CatalogFactory.create("frechet", [1.0]), 10**5)

    assert gap == pytest.approx(1.0, rel=1e-3)


@pytest.mark.slow
@pytest.mark.parametrize("name, params, rate", [
    ("stretched_gumbel", [2.0], lambda n: 1.0 / math.log(n)),
    ("std_normal", [], lambda n: 1.0 / math.sqrt(math.log(n))),
])
def test_slow_rates_stay_in_a_factor_two_band(name, params, rate):
    manager = ConvergenceManager()
    entry = CatalogFactory.create(name, params)

    scaled = [manager.sup_error(entry, n)[0] / rate(n) for n in [10**3, 10**4, 10**5, 10**6]]

    assert min(scaled) > 0.0
    assert max(scaled) <= 2.0 * min(scaled)
