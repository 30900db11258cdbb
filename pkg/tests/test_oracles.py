"""The brute-force references themselves."""

import numpy as np
import pytest

from qnn.network import LayerSpec, NetworkSpec, backward, trainable_count
from qnn.neurons import ConventionalNeuron
from qnn.oracles import (
    GridSpec,
    bernstein_direct,
    expand_factored,
    finite_diff_grad,
    grid_l1,
    grid_sup,
    horner,
)
from qnn.polynomials import FactoredForm, Polynomial


class TestHorner:
    def test_quadratic(self):
        assert horner(Polynomial([-1.0, 0.0, 1.0]), 3.0) == 8.0

    def test_reference_quintic(self):
        g = expand_factored(FactoredForm(1.0, [1.0], [(0.0, 1.0), (1.7, 1.2)]))
        assert horner(g, -0.5) == pytest.approx(-1.125, rel=1e-14)

    def test_constant(self):
        assert horner(Polynomial([7.0]), 123.4) == 7.0

    def test_vectorized(self):
        p = Polynomial([1.0, 2.0, 3.0])
        xs = np.array([0.0, 1.0, -1.0])
        np.testing.assert_allclose(horner(p, xs), [1.0, 6.0, 2.0])


class TestExpandFactored:
    def test_two_real_roots(self):
        p = expand_factored(FactoredForm(1.0, [1.0, -1.0], []))
        np.testing.assert_allclose(p.coeffs, [-1.0, 0.0, 1.0])

    def test_scaled_quadratic(self):
        p = expand_factored(FactoredForm(2.0, [], [(0.0, 1.0)]))
        np.testing.assert_allclose(p.coeffs, [2.0, 0.0, 2.0])

    def test_reference_quintic_coefficients(self):
        p = expand_factored(FactoredForm(1.0, [1.0], [(0.0, 1.0), (1.7, 1.2)]))
        np.testing.assert_allclose(
            p.coeffs, [-1.2, -0.5, -0.5, 0.5, 0.7, 1.0], atol=1e-14
        )


class TestFiniteDiff:
    def test_linear_neuron_gradient_is_input(self):
        net = NetworkSpec(
            3, [LayerSpec([ConventionalNeuron(w=[0.1, 0.2, 0.3], b=0.0)], "identity")]
        )
        x = np.array([1.5, -2.0, 0.25])
        for step in (1e-3, 1e-5, 1e-7):
            g = finite_diff_grad(net, x, step=step)
            np.testing.assert_allclose(g[:3], x, rtol=1e-6, atol=1e-8)
            assert g[3] == pytest.approx(1.0)

    def test_constant_network_all_zeros(self):
        net = NetworkSpec(
            2, [LayerSpec([ConventionalNeuron(w=[0.0, 0.0], b=4.0)], "identity")]
        )
        net.masks[0][0][:2] = False  # freeze the weights, keep the bias
        g = finite_diff_grad(net, np.array([1.0, 2.0]))
        assert len(g) == 1
        assert g[0] == pytest.approx(1.0)

    def test_two_step_sizes_agree_with_backward(self, net_factory, kink_free_input):
        rng = np.random.default_rng(40)
        checked = 0
        while checked < 10:
            net = net_factory(rng)
            x = kink_free_input(net, rng)
            if x is None or trainable_count(net) == 0:
                continue
            upstream = rng.normal(size=net.output_dim)
            analytic = backward(net, x, upstream)
            for step in (1e-4, 1e-5):
                numeric = finite_diff_grad(net, x, step=step, upstream=upstream)
                rel = np.abs(analytic - numeric) / (
                    1.0 + np.maximum(np.abs(analytic), np.abs(numeric))
                )
                assert rel.max() < 1e-5
            checked += 1

    def test_step_must_be_positive(self):
        net = NetworkSpec(
            1, [LayerSpec([ConventionalNeuron(w=[1.0], b=0.0)], "identity")]
        )
        with pytest.raises(ValueError):
            finite_diff_grad(net, np.array([1.0]), step=0.0)


class TestGrids:
    def test_identical_functions_have_zero_error(self):
        grid = GridSpec(0.0, 1.0, 101)
        f = lambda t: np.sin(t)
        assert grid_l1(f, f, grid) == 0.0
        assert grid_sup(f, f, grid) == 0.0

    def test_unit_box_l1(self):
        grid = GridSpec(0.0, 1.0, 1001)
        one = lambda t: np.ones_like(t)
        zero = lambda t: np.zeros_like(t)
        assert grid_l1(one, zero, grid) == pytest.approx(1.0, abs=1e-9)

    def test_sup_of_identity_vs_zero(self):
        grid = GridSpec(0.0, 1.0, 101)
        assert grid_sup(lambda t: t, lambda t: np.zeros_like(t), grid) == 1.0

    def test_refinement_consistency(self):
        f = lambda t: np.sin(3 * t)
        g = lambda t: 0.2 * t
        coarse = grid_l1(f, g, GridSpec(0.0, 2.0, 2001))
        fine = grid_l1(f, g, GridSpec(0.0, 2.0, 4001))
        assert abs(coarse - fine) < 1e-6

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            GridSpec(1.0, 1.0, 10)
        with pytest.raises(ValueError):
            GridSpec(0.0, 1.0, 1)


class TestBernsteinDirect:
    def test_endpoint_interpolation(self):
        f = lambda x: x * x + 1.0
        vals = bernstein_direct(f, 7, np.array([0.0, 1.0]))
        np.testing.assert_allclose(vals, [f(0.0), f(1.0)], atol=1e-14)

    def test_partition_of_unity(self):
        vals = bernstein_direct(lambda x: 1.0, 20, np.linspace(0, 1, 23))
        np.testing.assert_allclose(vals, 1.0, atol=1e-12)

    def test_degree_must_be_positive(self):
        with pytest.raises(ValueError):
            bernstein_direct(lambda x: x, 0, np.array([0.5]))
