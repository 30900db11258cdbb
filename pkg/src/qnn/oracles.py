"""Independent brute-force references used by the test suite.

Everything here is deliberately simple and written against definitions, not
against the implementations it checks: Horner evaluation, factored-form
expansion by repeated convolution, central finite differences, direct
Bernstein basis summation, and trapezoidal / max-over-grid error measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .network import NetworkSpec, forward, set_trainable_values, trainable_values
from .polynomials import FactoredForm, Polynomial


@dataclass
class GridSpec:
    """Uniform evaluation grid on [lo, hi] with n >= 2 points."""

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        self.lo = float(self.lo)
        self.hi = float(self.hi)
        self.n = int(self.n)
        if self.lo >= self.hi:
            raise ValueError("grid requires lo < hi")
        if self.n < 2:
            raise ValueError("grid requires n >= 2")

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


def horner(p: Polynomial, x) -> float | np.ndarray:
    """Horner-scheme evaluation; accepts a scalar or an array of points."""
    x = np.asarray(x, dtype=np.float64)
    acc = np.zeros_like(x)
    for c in p.coeffs[::-1]:
        acc = acc * x + c
    return acc if acc.ndim else float(acc)

def expand_factored(ff: FactoredForm) -> Polynomial:
    """Multiply out scale * prod(x - x_i) * prod(x^2 + a x + b) by convolution."""
    coeffs = np.array([ff.scale])
    for r in ff.linear_roots:
        coeffs = np.convolve(coeffs, np.array([-r, 1.0]))
    for a, b in ff.quadratic_factors:
        coeffs = np.convolve(coeffs, np.array([b, a, 1.0]))
    return Polynomial(coeffs)


def finite_diff_grad(
    net: NetworkSpec, x, step: float = 1e-5, upstream=None
) -> np.ndarray:
    """Central differences (f(t+h) - f(t-h)) / 2h per trainable parameter.

    f(t) is upstream . forward(net, x) with the trainable parameter vector
    set to t; upstream defaults to all ones.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    x = np.asarray(x, dtype=np.float64)
    if upstream is None:
        upstream = np.ones(net.output_dim)
    upstream = np.asarray(upstream, dtype=np.float64)

    theta = trainable_values(net)
    grads = np.zeros_like(theta)
    for i in range(len(theta)):
        bumped = theta.copy()
        bumped[i] = theta[i] + step
        hi = upstream @ forward(set_trainable_values(net, bumped), x)
        bumped[i] = theta[i] - step
        lo = upstream @ forward(set_trainable_values(net, bumped), x)
        grads[i] = (hi - lo) / (2.0 * step)
    return grads


def grid_l1(f, g, grid: GridSpec) -> float:
    """Trapezoidal approximation of the integral of |f - g| over the grid."""
    t = grid.points()
    diff = np.abs(np.asarray(f(t), dtype=np.float64) - np.asarray(g(t), dtype=np.float64))
    return float(np.trapezoid(diff, t))


def grid_sup(f, g, grid: GridSpec) -> float:
    """Largest |f - g| over the grid points."""
    t = grid.points()
    diff = np.abs(np.asarray(f(t), dtype=np.float64) - np.asarray(g(t), dtype=np.float64))
    return float(np.max(diff))


def bernstein_direct(f, n: int, x) -> np.ndarray:
    """Direct basis summation sum_m f(m/n) C(n,m) x^m (1-x)^(n-m).

    Numerically stable on [0, 1] for any n since every basis term is
    non-negative there; serves as the reference for the expanded-coefficient
    path, which is ill-conditioned in the monomial basis at large n.
    """
    if n <= 0:
        raise ValueError("Bernstein degree must be >= 1")
    x = np.asarray(x, dtype=np.float64)
    total = np.zeros_like(x)
    for m in range(n + 1):
        total = total + float(f(m / n)) * comb(n, m) * x**m * (1.0 - x) ** (n - m)
    return total
