"""Counted evaluation, validation failures, and finite-difference oracles."""

from __future__ import annotations

import numpy as np
import pytest

from optlab.core.evaluation import (
    evaluate,
    finite_diff_gradient,
    finite_diff_hessian,
    with_fd_fallback,
)
from optlab.core.types import (
    EvalCounters,
    EvalRequest,
    WANT_GRADIENT,
    WANT_HESSIAN,
    WANT_VALUE,
    WANT_VALUE_GRADIENT,
)
from optlab.errors import DimensionMismatch, NonFiniteResult, UnsupportedDerivative

from tests.conftest import CountingShim, make_objective, make_quadratic

WANT_ALL = EvalRequest(want_value=True, want_gradient=True, want_hessian=True)


class TestEvaluate:
    def test_returns_requested_objects_only(self, sphere2):
        c = EvalCounters()
        res = evaluate(sphere2, np.array([1.0, 2.0]), WANT_VALUE, c)
        assert res.value == 5.0
        assert res.gradient is None and res.hessian is None

    def test_value_and_gradient(self, sphere2):
        c = EvalCounters()
        res = evaluate(sphere2, np.array([1.0, 2.0]), WANT_VALUE_GRADIENT, c)
        assert res.value == 5.0
        np.testing.assert_allclose(res.gradient, [2.0, 4.0])

    def test_counter_increments_match_request(self, sphere2):
        c = EvalCounters()
        evaluate(sphere2, np.zeros(2), WANT_VALUE, c)
        assert (c.n_value, c.n_gradient, c.n_hessian) == (1, 0, 0)
        evaluate(sphere2, np.zeros(2), WANT_VALUE_GRADIENT, c)
        assert (c.n_value, c.n_gradient, c.n_hessian) == (2, 1, 0)
        evaluate(sphere2, np.zeros(2), WANT_HESSIAN, c)
        assert (c.n_value, c.n_gradient, c.n_hessian) == (2, 1, 1)

    def test_counts_agree_with_ground_truth_shim(self, sphere2, rng):
        shim = CountingShim(sphere2)
        c = EvalCounters()
        for _ in range(25):
            wants = (bool(rng.integers(2)), bool(rng.integers(2)), bool(rng.integers(2)))
            if not any(wants):
                continue
            req = EvalRequest(*wants)
            evaluate(shim.objective, rng.standard_normal(2), req, c)
        assert shim.totals() == (c.n_value, c.n_gradient, c.n_hessian)

    def test_wrong_dimension_rejected(self, sphere2):
        with pytest.raises(DimensionMismatch):
            evaluate(sphere2, np.zeros(3), WANT_VALUE, EvalCounters())

    def test_non_vector_rejected(self, sphere2):
        with pytest.raises(DimensionMismatch):
            evaluate(sphere2, np.zeros((2, 1)), WANT_VALUE, EvalCounters())

    def test_unsupported_derivative(self):
        f = make_objective("value-only", 2, lambda x: float(x @ x))
        with pytest.raises(UnsupportedDerivative):
            evaluate(f, np.zeros(2), WANT_GRADIENT, EvalCounters())

    def test_non_finite_input_point_rejected_before_call(self, sphere2):
        shim = CountingShim(sphere2)
        c = EvalCounters()
        with pytest.raises(NonFiniteResult):
            evaluate(shim.objective, np.array([np.nan, 0.0]), WANT_VALUE, c)
        # The underlying function was never called, so nothing is counted.
        assert shim.totals() == (0, 0, 0)
        assert c.total() == 0

    def test_non_finite_output_counted_then_raised(self):
        f = make_objective("bad", 1, lambda x: float("nan"))
        shim = CountingShim(f)
        c = EvalCounters()
        with pytest.raises(NonFiniteResult):
            evaluate(shim.objective, np.zeros(1), WANT_VALUE, c)
        # The call happened; the work is on the books even though it failed.
        assert shim.totals() == (1, 0, 0)
        assert c.n_value == 1

    def test_non_finite_gradient_counted_then_raised(self):
        f = make_objective(
            "badgrad", 2, lambda x: 0.0, grad_fn=lambda x: np.array([np.inf, 0.0])
        )
        c = EvalCounters()
        with pytest.raises(NonFiniteResult):
            evaluate(f, np.zeros(2), WANT_VALUE_GRADIENT, c)
        assert (c.n_value, c.n_gradient) == (1, 1)

    def test_asymmetric_hessian_rejected(self):
        f = make_objective(
            "skew",
            2,
            lambda x: 0.0,
            grad_fn=lambda x: np.zeros(2),
            hess_fn=lambda x: np.array([[1.0, 2.0], [0.0, 1.0]]),
        )
        with pytest.raises(NonFiniteResult):
            evaluate(f, np.zeros(2), WANT_ALL, EvalCounters())

    def test_gradient_shape_validated(self):
        f = make_objective("short", 2, lambda x: 0.0, grad_fn=lambda x: np.zeros(3))
        with pytest.raises(DimensionMismatch):
            evaluate(f, np.zeros(2), WANT_VALUE_GRADIENT, EvalCounters())


class TestFiniteDiffGradient:
    def test_parabola_hand_value(self):
        f = make_objective("p", 1, lambda x: float(x[0] ** 2))
        g = finite_diff_gradient(f, np.array([3.0]))
        assert abs(g[0] - 6.0) <= 1e-8

    def test_constant_function_zero(self):
        f = make_objective("const", 3, lambda x: 7.5)
        g = finite_diff_gradient(f, np.ones(3))
        np.testing.assert_allclose(g, np.zeros(3), atol=1e-12)

    def test_linear_function_exact_slope(self):
        b = np.array([2.0, -3.0, 0.5])
        f = make_objective("lin", 3, lambda x: float(b @ x))
        g = finite_diff_gradient(f, np.zeros(3))
        np.testing.assert_allclose(g, b, rtol=1e-7, atol=1e-9)

    def test_matches_analytic_on_random_quadratics(self, rng):
        from tests.conftest import random_spd

        for _ in range(5):
            A = random_spd(rng, 4)
            f = make_quadratic(A)
            x = rng.standard_normal(4)
            approx = finite_diff_gradient(f, x)
            exact = A @ x
            np.testing.assert_allclose(approx, exact, rtol=1e-5, atol=1e-6)

    def test_counts_value_evaluations(self):
        f = make_objective("p", 2, lambda x: float(x @ x))
        shim = CountingShim(f)
        c = EvalCounters()
        finite_diff_gradient(shim.objective, np.ones(2), counters=c)
        assert c.n_value == shim.n_value
        assert c.n_gradient == 0 and c.n_hessian == 0
        assert shim.n_value >= 3  # central differences need 2 per coordinate


class TestFiniteDiffHessian:
    def test_diagonal_quadratic_hand_value(self):
        A = np.array([[2.0, 0.0], [0.0, 4.0]])
        f = make_quadratic(A)
        H = finite_diff_hessian(f, np.array([0.3, -0.7]))
        np.testing.assert_allclose(H, A, atol=1e-4)

    def test_linear_function_zero(self):
        f = make_objective("lin", 2, lambda x: float(x[0] - 2.0 * x[1]))
        H = finite_diff_hessian(f, np.array([1.0, 1.0]))
        np.testing.assert_allclose(H, np.zeros((2, 2)), atol=1e-6)

    def test_result_is_symmetric(self, rng):
        f = make_objective("cubic", 3, lambda x: float(x[0] * x[1] * x[2] + x @ x))
        H = finite_diff_hessian(f, rng.standard_normal(3))
        np.testing.assert_allclose(H, H.T, atol=1e-12)

    def test_counts_value_evaluations(self):
        f = make_objective("p", 2, lambda x: float(x @ x))
        shim = CountingShim(f)
        c = EvalCounters()
        finite_diff_hessian(shim.objective, np.ones(2), counters=c)
        assert c.n_value == shim.n_value
        assert shim.n_value > 0


class TestWithFdFallback:
    def test_fills_missing_gradient_and_hessian(self):
        f = make_objective("value-only", 2, lambda x: float(x @ x))
        wrapped = with_fd_fallback(f)
        assert wrapped.supports == {"value", "gradient", "hessian"}
        c = EvalCounters()
        res = evaluate(wrapped, np.array([1.0, 2.0]), WANT_ALL, c)
        np.testing.assert_allclose(res.gradient, [2.0, 4.0], rtol=1e-6, atol=1e-8)
        np.testing.assert_allclose(res.hessian, 2.0 * np.eye(2), atol=1e-3)

    def test_analytic_derivatives_kept_when_present(self, sphere2):
        wrapped = with_fd_fallback(sphere2)
        res = evaluate(wrapped, np.array([1.0, 0.0]), WANT_GRADIENT, EvalCounters())
        np.testing.assert_allclose(res.gradient, [2.0, 0.0], rtol=0, atol=0)
