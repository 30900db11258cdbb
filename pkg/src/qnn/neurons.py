"""Neuron primitives: pre-activations, activations, analytic derivatives.

Three neuron kinds are supported.  A quadratic neuron computes

    h(x) = (w_r . x + b_r) * (w_g . x + b_g) + w_b . (x * x) + c

so a single unit can carve out a quadratic decision boundary (norm balls,
annuli, products of affine forms).  A conventional neuron is the usual
inner product plus bias, and a passthrough neuron copies one coordinate of
its input unchanged (used to carry channels through deep constructions).

All arithmetic is float64.  Functions accept either a single input vector
of shape (n,) or a batch of shape (B, n); scalars broadcast accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def relu(z):
    """max(0, z), elementwise."""
    return np.maximum(0.0, z)


def relu_prime(z):
    """Derivative of relu; the kink at 0 takes the value 0."""
    return np.where(z > 0.0, 1.0, 0.0)


def _as_weight(v) -> np.ndarray:
    w = np.asarray(v, dtype=np.float64)
    if w.ndim != 1 or w.size < 1:
        raise ValueError("weight vector must be 1-D with length >= 1")
    return w


@dataclass
class QuadraticNeuron:
    """Second-order unit with two affine factors plus a square term.

    The parameter vector, in canonical order, is
    (w_r, b_r, w_g, b_g, w_b, c): 3n + 3 entries for input length n.
    """

    w_r: np.ndarray
    b_r: float
    w_g: np.ndarray
    b_g: float
    w_b: np.ndarray
    c: float

    def __post_init__(self):
        self.w_r = _as_weight(self.w_r)
        self.w_g = _as_weight(self.w_g)
        self.w_b = _as_weight(self.w_b)
        if not (len(self.w_r) == len(self.w_g) == len(self.w_b)):
            raise ValueError("w_r, w_g, w_b must have identical length")
        self.b_r = float(self.b_r)
        self.b_g = float(self.b_g)
        self.c = float(self.c)

    @property
    def input_dim(self) -> int:
        return len(self.w_r)

    @property
    def param_count(self) -> int:
        return 3 * len(self.w_r) + 3

    def param_vector(self) -> np.ndarray:
        return np.concatenate(
            [self.w_r, [self.b_r], self.w_g, [self.b_g], self.w_b, [self.c]]
        )

    def with_params(self, vec: np.ndarray) -> "QuadraticNeuron":
        n = self.input_dim
        vec = np.asarray(vec, dtype=np.float64)
        if vec.shape != (3 * n + 3,):
            raise ValueError("parameter vector has wrong length")
        return QuadraticNeuron(
            w_r=vec[0:n].copy(),
            b_r=vec[n],
            w_g=vec[n + 1 : 2 * n + 1].copy(),
            b_g=vec[2 * n + 1],
            w_b=vec[2 * n + 2 : 3 * n + 2].copy(),
            c=vec[3 * n + 2],
        )


@dataclass
class ConventionalNeuron:
    """Inner-product unit: h(x) = w . x + b."""

    w: np.ndarray
    b: float

    def __post_init__(self):
        self.w = _as_weight(self.w)
        self.b = float(self.b)

    @property
    def input_dim(self) -> int:
        return len(self.w)

    @property
    def param_count(self) -> int:
        return len(self.w) + 1

    def param_vector(self) -> np.ndarray:
        return np.concatenate([self.w, [self.b]])

    def with_params(self, vec: np.ndarray) -> "ConventionalNeuron":
        n = self.input_dim
        vec = np.asarray(vec, dtype=np.float64)
        if vec.shape != (n + 1,):
            raise ValueError("parameter vector has wrong length")
        return ConventionalNeuron(w=vec[0:n].copy(), b=vec[n])


@dataclass
class PassthroughNeuron:
    """Copies input coordinate `index`; carries no parameters."""

    index: int

    def __post_init__(self):
        self.index = int(self.index)
        if self.index < 0:
            raise ValueError("passthrough index must be non-negative")

    @property
    def param_count(self) -> int:
        return 0

    def param_vector(self) -> np.ndarray:
        return np.zeros(0)

    def with_params(self, vec: np.ndarray) -> "PassthroughNeuron":
        if len(vec) != 0:
            raise ValueError("passthrough neuron takes no parameters")
        return PassthroughNeuron(self.index)


Neuron = QuadraticNeuron | ConventionalNeuron | PassthroughNeuron


def _check_input(n: int, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != n:
        raise ValueError(f"input has width {x.shape[-1]}, neuron expects {n}")
    return x


def quad_preactivation(neuron: QuadraticNeuron, x) -> float | np.ndarray:
    """(w_r.x + b_r)(w_g.x + b_g) + w_b.(x*x) + c for one vector or a batch."""
    x = _check_input(neuron.input_dim, x)
    p = x @ neuron.w_r + neuron.b_r
    q = x @ neuron.w_g + neuron.b_g
    s = (x * x) @ neuron.w_b
    return p * q + s + neuron.c


def conv_preactivation(neuron: ConventionalNeuron, x) -> float | np.ndarray:
    """w.x + b for one vector or a batch."""
    x = _check_input(neuron.input_dim, x)
    return x @ neuron.w + neuron.b


def preactivation(neuron: Neuron, x) -> float | np.ndarray:
    """Dispatch on neuron kind; passthrough copies its source coordinate."""
    if isinstance(neuron, QuadraticNeuron):
        return quad_preactivation(neuron, x)
    if isinstance(neuron, ConventionalNeuron):
        return conv_preactivation(neuron, x)
    x = np.asarray(x, dtype=np.float64)
    if neuron.index >= x.shape[-1]:
        raise ValueError(
            f"passthrough index {neuron.index} out of range for width {x.shape[-1]}"
        )
    return x[..., neuron.index]
