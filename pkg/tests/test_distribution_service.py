import math

import numpy as np
import pytest
from scipy import special

from freemax._vectorized import vectorized
from freemax.objects.distributions.distribution_spec import DistributionSpec
from freemax.objects.factories.catalog_factory import CatalogFactory
from freemax.resolvers.distribution_name_resolver import DistributionNameResolver
from freemax.services.distribution_service import DistributionService
from freemax.services.von_mises_service import VonMisesService


def _gumbel_without_derivatives() -> DistributionSpec:
    return DistributionSpec(
        name="gumbel-numeric",
        cdf=vectorized(lambda x: np.exp(-np.exp(-x))),
        sf=vectorized(lambda x: -np.expm1(-np.exp(-x)))
    )


@pytest.mark.parametrize("p", [1e-6, 0.1, 0.5, 0.9, 1 - 1e-6])
def test_quantile_of_normal_matches_ndtri(p):
    spec = CatalogFactory.create("std_normal").spec

    assert DistributionService.quantile_of(spec, p) == pytest.approx(float(special.ndtri(p)), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("q", [1e-3, 1e-8, 1e-12])
def test_upper_quantile_of_normal_keeps_tail_digits(q):
    spec = CatalogFactory.create("std_normal").spec

    x = DistributionService.upper_quantile_of(spec, q)

    assert x == pytest.approx(-float(special.ndtri(q)), rel=1e-9)
    assert float(spec.sf(x)) == pytest.approx(q, rel=1e-9)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.5, 2.0])
def test_quantile_of_rejects_probabilities_outside_unit_interval(p):
    spec = CatalogFactory.create("uniform01").spec

    with pytest.raises(ValueError):
        DistributionService.quantile_of(spec, p)
    with pytest.raises(ValueError):
        DistributionService.upper_quantile_of(spec, p)


def test_quantile_of_returns_left_edge_for_atom():
    spec = CatalogFactory.create("stretched_gumbel", [2.0]).spec
    # F has an atom e^-1 at 0
    assert DistributionService.quantile_of(spec, 0.2) == 0.0


def test_numeric_pdf_matches_analytic_gumbel_density():
    spec = _gumbel_without_derivatives()
    xs = np.linspace(-2.0, 8.0, 101)

    numeric = DistributionService.pdf_of(spec, xs)
    exact = np.exp(-xs - np.exp(-xs))

    np.testing.assert_allclose(numeric, exact, rtol=1e-7, atol=1e-12)


def test_numeric_second_derivative_matches_analytic_gumbel():
    spec = _gumbel_without_derivatives()
    xs = np.linspace(-1.0, 6.0, 71)

    numeric = DistributionService.pdf2_of(spec, xs)
    exact = np.exp(-2.0 * xs - np.exp(-xs)) - np.exp(-xs - np.exp(-xs))

    np.testing.assert_allclose(numeric, exact, atol=1e-6)


def test_pdf_of_rejects_points_outside_support():
    spec = CatalogFactory.create("uniform01").spec

    with pytest.raises(ValueError):
        DistributionService.pdf_of(spec, 1.5)
    with pytest.raises(ValueError):
        DistributionService.pdf_of(spec, [0.5, 0.0])


def test_survival_falls_back_to_one_minus_cdf():
    spec = DistributionSpec(name="uniform-cdf-only", cdf=vectorized(lambda x: np.clip(x, 0.0, 1.0)), omega=1.0, support_left=0.0)

    assert DistributionService.survival(spec, 0.25) == pytest.approx(0.75)


def test_neg_log_cdf_is_accurate_near_one():
    spec = CatalogFactory.create("frechet", [2.0]).spec
    x = 1e6

    # -log F(x) = x^-2 for the standard Frechet law
    assert DistributionService.neg_log_cdf(spec, x) == pytest.approx(1e-12, rel=1e-12)


def test_reflect_maps_standard_weibull_onto_frechet():
    weibull = CatalogFactory.create("weibull", [-2.0]).spec
    frechet = CatalogFactory.create("frechet", [2.0]).spec
    reflected = DistributionService.reflect(weibull)
    xs = np.geomspace(0.1, 100.0, 200)

    assert math.isinf(reflected.omega)
    np.testing.assert_allclose(reflected.cdf(xs), frechet.cdf(xs), atol=1e-12)
    np.testing.assert_allclose(reflected.pdf(xs), frechet.pdf(xs), rtol=1e-10, atol=1e-14)


def test_reflect_rejects_unbounded_distribution():
    with pytest.raises(ValueError):
        DistributionService.reflect(CatalogFactory.create("gumbel").spec)


def test_reflection_identity_of_von_mises_functional():
    entry = CatalogFactory.create("endpoint_power", [1.0, -2.0, 1.0])
    reflected = DistributionService.reflect(entry.spec)
    xs = np.linspace(0.05, 0.95, 1000)

    weibull_side = VonMisesService.h_weibull(entry.spec, -2.0, xs)
    frechet_side = VonMisesService.h_frechet(reflected, 2.0, 1.0 / (entry.spec.omega - xs))

    np.testing.assert_allclose(weibull_side, frechet_side, rtol=1e-10, atol=1e-10)


def test_is_strictly_increasing_at_detects_flat_region():
    spec = CatalogFactory.create("uniform01").spec

    assert DistributionService.is_strictly_increasing_at(spec, 0.5)
    assert not DistributionService.is_strictly_increasing_at(spec, 2.0)


@pytest.mark.parametrize("name, params, x, expected", [
    ("frechet", [1.0], 1.0, math.exp(-1.0)),
    ("uniform01", [], 0.5, 1.0),
    ("std_normal", [], 0.0, 1.0 / math.sqrt(2.0 * math.pi)),
])
def test_pdf_of_catalog_points(name, params, x, expected):
    spec = CatalogFactory.create(name, params).spec

    assert DistributionService.pdf_of(spec, x) == pytest.approx(expected, rel=1e-14)


def test_quantile_of_frechet_at_norming_level():
    spec = CatalogFactory.create("frechet", [2.0]).spec

    assert DistributionService.quantile_of(spec, math.exp(-1.0 / 100)) == pytest.approx(10.0, rel=1e-12)


@pytest.mark.parametrize("name", CatalogFactory.names())
def test_catalog_quantile_inverts_cdf(name):
    spec = CatalogFactory.create(name, DistributionNameResolver.default_parameters(name)).spec
    ps = np.linspace(0.4, 0.99, 60)

    xs = np.array([DistributionService.quantile_of(spec, p) for p in ps])

    np.testing.assert_allclose(spec.cdf(xs), ps, atol=1e-9)


@pytest.mark.parametrize("name", CatalogFactory.names())
def test_catalog_cdf_is_a_distribution_function(name):
    spec = CatalogFactory.create(name, DistributionNameResolver.default_parameters(name)).spec
    xs = np.linspace(-10.0, 10.0, 4001)

    values = np.asarray(spec.cdf(xs))

    assert np.all((values >= 0.0) & (values <= 1.0))
    assert np.all(np.diff(values) >= -1e-15)
    if spec.has_finite_endpoint:
        assert float(spec.cdf(spec.omega)) == 1.0


@pytest.mark.parametrize("name, params", [("frechet", [0.0]), ("weibull", [1.0]), ("endpoint_power", [1.0, -0.5, 0.0]), ("stretched_gumbel", [1.0]), ("cauchy", [1.0])])
def test_catalog_rejects_bad_parameters(name, params):
    with pytest.raises(ValueError):
        CatalogFactory.create(name, params)


def test_catalog_rejects_unknown_name():
    with pytest.raises(ValueError):
        CatalogFactory.create("pareto", [])


def test_catalog_resolves_aliases():
    assert CatalogFactory.create("Uniform").name == "uniform01"
    assert CatalogFactory.create("normal").regime.tag.value == "gumbel"
