"""Shared fixtures: random network generation and acceptance reporting."""

import numpy as np
import pytest

from qnn.network import LayerSpec, NetworkSpec, Shortcut, _forward_cached
from qnn.neurons import ConventionalNeuron, PassthroughNeuron, QuadraticNeuron


def random_network(rng, max_layers=4, max_width=3, max_input=3,
                   allow_shortcuts=True, allow_frozen=True) -> NetworkSpec:
    """A small random network mixing neuron kinds, activations, and masks."""
    input_dim = int(rng.integers(1, max_input + 1))
    n_layers = int(rng.integers(1, max_layers + 1))
    layers = []
    prev = input_dim
    for _ in range(n_layers):
        width = int(rng.integers(1, max_width + 1))
        neurons = []
        for _ in range(width):
            kind = rng.choice(["quadratic", "conventional", "passthrough"])
            if kind == "quadratic":
                neurons.append(
                    QuadraticNeuron(
                        w_r=rng.normal(size=prev), b_r=rng.normal(),
                        w_g=rng.normal(size=prev), b_g=rng.normal(),
                        w_b=rng.normal(size=prev), c=rng.normal(),
                    )
                )
            elif kind == "conventional":
                neurons.append(
                    ConventionalNeuron(w=rng.normal(size=prev), b=rng.normal())
                )
            else:
                neurons.append(PassthroughNeuron(int(rng.integers(0, prev))))
        activation = str(rng.choice(["relu", "identity"]))
        layers.append(LayerSpec(neurons, activation))
        prev = width

    shortcuts = []
    if allow_shortcuts and n_layers >= 2 and rng.random() < 0.7:
        for _ in range(int(rng.integers(1, 4))):
            src_layer = int(rng.integers(0, n_layers - 1))
            dst_layer = int(rng.integers(src_layer + 1, n_layers))
            shortcuts.append(
                Shortcut(
                    src_layer=src_layer,
                    src_neuron=int(rng.integers(0, layers[src_layer].width)),
                    dst_layer=dst_layer,
                    dst_neuron=int(rng.integers(0, layers[dst_layer].width)),
                    weight=float(rng.normal()),
                    trainable=bool(rng.random() < 0.8),
                )
            )

    net = NetworkSpec(input_dim, layers, shortcuts)
    if allow_frozen:
        for layer_masks in net.masks:
            for mask in layer_masks:
                freeze = rng.random(size=mask.shape) < 0.2
                mask[freeze] = False
    return net


def input_away_from_kinks(net: NetworkSpec, rng, margin=1e-3, tries=200):
    """Draw an input whose ReLU pre-activations all clear the kink by margin.

    Central differences straddle the kink otherwise and stop matching the
    one-sided analytic derivative.
    """
    for _ in range(tries):
        x = rng.normal(size=net.input_dim)
        preacts, _ = _forward_cached(net, x[None, :])
        ok = True
        for layer, z in zip(net.layers, preacts):
            if layer.activation == "relu" and np.min(np.abs(z)) < margin:
                ok = False
                break
        if ok:
            return x
    return None


@pytest.fixture
def net_factory():
    return random_network


@pytest.fixture
def kink_free_input():
    return input_away_from_kinks


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else ("FAIL" if report.failed else "SKIP")
    print(f"\n[acceptance] {name}: {status}")
