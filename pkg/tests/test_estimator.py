import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from etorus.errors import InvalidTypeError
from etorus.estimator import DiscreteETransform


def test_fit_sets_grid_attributes():
    est = DiscreteETransform(family="C", rank=2, M=4).fit()
    assert est.n_points_ == 10
    assert est.grid_points_.shape == (10, 2)
    assert est.weight_labels_.shape == (10, 2)
    assert est.eps_.sum() == 32
    assert est.h_dual_.min() == 1


def test_transform_roundtrip():
    est = DiscreteETransform(family="B", rank=3, M=2).fit()
    rng = np.random.default_rng(0)
    X = rng.standard_normal((5, est.n_points_)) + 1j * rng.standard_normal((5, est.n_points_))
    back = est.inverse_transform(est.transform(X))
    assert np.abs(back - X).max() < 1e-9
    assert est.score(X) > -1e-9


def test_constant_row_coefficients():
    est = DiscreteETransform(family="C", rank=2, M=4).fit()
    coeffs = est.transform(np.ones((1, est.n_points_)))
    nonzero = np.flatnonzero(np.abs(coeffs[0]) > 1e-10)
    assert len(nonzero) == 1
    assert abs(coeffs[0, nonzero[0]] - 0.25) < 1e-12


def test_one_dimensional_input_promoted():
    est = DiscreteETransform(family="A", rank=1, M=3).fit()
    coeffs = est.transform(np.ones(est.n_points_))
    assert coeffs.shape == (1, est.n_points_)


def test_unfitted_raises():
    est = DiscreteETransform(family="C", rank=2, M=4)
    with pytest.raises(NotFittedError):
        est.transform(np.ones((1, 10)))


def test_bad_widths_and_values():
    est = DiscreteETransform(family="C", rank=2, M=4).fit()
    with pytest.raises(ValueError):
        est.transform(np.ones((1, 9)))
    with pytest.raises(ValueError):
        est.transform(np.full((1, 10), np.nan))
    with pytest.raises(ValueError):
        est.transform(np.ones((2, 2, 10)))


def test_invalid_type_surfaces_at_fit():
    with pytest.raises(InvalidTypeError):
        DiscreteETransform(family="D", rank=3, M=2).fit()


def test_get_params_round_trip_and_clone():
    est = DiscreteETransform(family="C", rank=2, M=4, j=2, threads=2)
    params = est.get_params()
    assert params == {"family": "C", "rank": 2, "M": 4, "j": 2, "threads": 2}
    dup = clone(est)
    assert dup.get_params() == params
    est.set_params(M=5).fit()
    assert est.context_.M == 5


def test_pipeline_compatibility():
    pipe = Pipeline([("etransform", DiscreteETransform(family="A", rank=2, M=3))])
    rng = np.random.default_rng(1)
    n = DiscreteETransform(family="A", rank=2, M=3).fit().n_points_
    X = rng.standard_normal((4, n))
    coeffs = pipe.fit_transform(X)
    assert coeffs.shape == (4, n)
    back = pipe.named_steps["etransform"].inverse_transform(coeffs)
    assert np.abs(back - X).max() < 1e-9


def test_fit_validates_given_samples():
    est = DiscreteETransform(family="C", rank=2, M=4)
    with pytest.raises(ValueError):
        est.fit(np.ones((2, 7)))
