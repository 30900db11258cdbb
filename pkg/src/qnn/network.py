"""Layered networks of quadratic / conventional / passthrough neurons.

A NetworkSpec is a plain value: an ordered list of layers, optional forward
shortcut edges, and per-parameter trainability masks.  forward/backward are
pure functions of the spec, so the same network can be evaluated from many
threads; only the trainer mutates anything, and it works on copies.

Canonical parameter ordering (used by gradients, masks, and JSON):
layer-major, neuron-minor, within a neuron (w_r, b_r, w_g, b_g, w_b, c) for
quadratic and (w, b) for conventional, with shortcut weights appended last.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

import numpy as np

from .neurons import (
    ConventionalNeuron,
    Neuron,
    PassthroughNeuron,
    QuadraticNeuron,
    preactivation,
    relu,
    relu_prime,
)

ACTIVATIONS = ("relu", "identity")


@dataclass
class LayerSpec:
    """An ordered list of neurons sharing one input vector and activation."""

    neurons: list[Neuron]
    activation: str = "relu"

    def __post_init__(self):
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        if not self.neurons:
            raise ValueError("layer must contain at least one neuron")

    @property
    def width(self) -> int:
        return len(self.neurons)


@dataclass
class Shortcut:
    """Forward edge injecting weight * activation[src] into a later pre-activation."""

    src_layer: int
    src_neuron: int
    dst_layer: int
    dst_neuron: int
    weight: float
    trainable: bool = True

    def __post_init__(self):
        self.weight = float(self.weight)
        if self.src_layer >= self.dst_layer:
            raise ValueError("shortcut edges must point forward")


@dataclass
class NetworkSpec:
    """Layered network with shortcuts and per-parameter trainability masks.

    masks mirrors layers: masks[k][j] is a boolean array the same length as
    neuron j's parameter vector.  A missing masks argument means everything
    is trainable.  Shortcut weights carry their own trainable flag.
    """

    input_dim: int
    layers: list[LayerSpec]
    shortcuts: list[Shortcut] = field(default_factory=list)
    masks: list[list[np.ndarray]] | None = None

    def __post_init__(self):
        if self.input_dim < 1:
            raise ValueError("input_dim must be >= 1")
        if not self.layers:
            raise ValueError("network must have at least one layer")
        if self.masks is None:
            self.masks = [
                [np.ones(nr.param_count, dtype=bool) for nr in layer.neurons]
                for layer in self.layers
            ]
        else:
            self.masks = [
                [np.asarray(m, dtype=bool) for m in layer_masks]
                for layer_masks in self.masks
            ]
        self._validate()

    def _validate(self):
        if len(self.masks) != len(self.layers):
            raise ValueError("masks must parallel layers")
        prev_width = self.input_dim
        for k, layer in enumerate(self.layers):
            if len(self.masks[k]) != layer.width:
                raise ValueError(f"masks for layer {k} must parallel its neurons")
            for j, neuron in enumerate(layer.neurons):
                if isinstance(neuron, PassthroughNeuron):
                    if neuron.index >= prev_width:
                        raise ValueError(
                            f"layer {k} neuron {j}: passthrough index "
                            f"{neuron.index} out of range for width {prev_width}"
                        )
                elif neuron.input_dim != prev_width:
                    raise ValueError(
                        f"layer {k} neuron {j}: expects input width "
                        f"{neuron.input_dim}, previous layer has {prev_width}"
                    )
                if self.masks[k][j].shape != (neuron.param_count,):
                    raise ValueError(f"mask shape mismatch at layer {k} neuron {j}")
            prev_width = layer.width
        n_layers = len(self.layers)
        for sc in self.shortcuts:
            if not (0 <= sc.src_layer < sc.dst_layer < n_layers):
                raise ValueError("shortcut layer indices out of range")
            if sc.src_neuron >= self.layers[sc.src_layer].width:
                raise ValueError("shortcut source neuron out of range")
            if sc.dst_neuron >= self.layers[sc.dst_layer].width:
                raise ValueError("shortcut destination neuron out of range")

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def output_dim(self) -> int:
        return self.layers[-1].width

    def layer_widths(self) -> list[int]:
        return [layer.width for layer in self.layers]


def copy_network(net: NetworkSpec) -> NetworkSpec:
    return copy.deepcopy(net)


# ---------------------------------------------------------------------------
# Forward evaluation
# ---------------------------------------------------------------------------


def _activate(z: np.ndarray, activation: str) -> np.ndarray:
    return relu(z) if activation == "relu" else z


def _forward_cached(net: NetworkSpec, X: np.ndarray):
    """Evaluate a batch, returning (preactivations, activations) per layer."""
    preacts: list[np.ndarray] = []
    acts: list[np.ndarray] = []
    incoming: dict[tuple[int, int], list[Shortcut]] = {}
    for sc in net.shortcuts:
        incoming.setdefault((sc.dst_layer, sc.dst_neuron), []).append(sc)
    current = X
    for k, layer in enumerate(net.layers):
        Z = np.empty((X.shape[0], layer.width))
        for j, neuron in enumerate(layer.neurons):
            z = preactivation(neuron, current)
            for sc in incoming.get((k, j), ()):
                z = z + sc.weight * acts[sc.src_layer][:, sc.src_neuron]
            Z[:, j] = z
        preacts.append(Z)
        current = _activate(Z, layer.activation)
        acts.append(current)
    return preacts, acts


def forward_batch(net: NetworkSpec, X) -> np.ndarray:
    """Evaluate a batch of inputs, shape (B, input_dim) -> (B, output_dim)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.input_dim:
        raise ValueError(
            f"expected batch of shape (B, {net.input_dim}), got {X.shape}"
        )
    _, acts = _forward_cached(net, X)
    return acts[-1]


def forward(net: NetworkSpec, x) -> np.ndarray:
    """Evaluate one input vector, shape (input_dim,) -> (output_dim,)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.input_dim,):
        raise ValueError(f"expected input of shape ({net.input_dim},), got {x.shape}")
    return forward_batch(net, x[None, :])[0]


# ---------------------------------------------------------------------------
# Parameter vector / masks
# ---------------------------------------------------------------------------


def _iter_neuron_entries(net: NetworkSpec):
    for k, layer in enumerate(net.layers):
        for j, neuron in enumerate(layer.neurons):
            yield k, j, neuron, net.masks[k][j]


def parameter_count(net: NetworkSpec) -> int:
    """Total parameter count, shortcut weights included."""
    total = sum(nr.param_count for _, _, nr, _ in _iter_neuron_entries(net))
    return total + len(net.shortcuts)


def trainable_count(net: NetworkSpec) -> int:
    total = sum(int(mask.sum()) for _, _, _, mask in _iter_neuron_entries(net))
    return total + sum(1 for sc in net.shortcuts if sc.trainable)


def trainable_values(net: NetworkSpec) -> np.ndarray:
    """Mask-selected parameters in canonical order (shortcut weights last)."""
    parts = [
        nr.param_vector()[mask] for _, _, nr, mask in _iter_neuron_entries(net)
    ]
    parts.append(np.array([sc.weight for sc in net.shortcuts if sc.trainable]))
    return np.concatenate(parts) if parts else np.zeros(0)


def set_trainable_values(net: NetworkSpec, values) -> NetworkSpec:
    """Return a copy of net with its trainable parameters replaced."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (trainable_count(net),):
        raise ValueError(
            f"expected {trainable_count(net)} trainable values, got {values.shape}"
        )
    out = copy_network(net)
    pos = 0
    for k, layer in enumerate(out.layers):
        for j, neuron in enumerate(layer.neurons):
            mask = out.masks[k][j]
            take = int(mask.sum())
            if take:
                vec = neuron.param_vector()
                vec[mask] = values[pos : pos + take]
                layer.neurons[j] = neuron.with_params(vec)
                pos += take
    for sc in out.shortcuts:
        if sc.trainable:
            sc.weight = float(values[pos])
            pos += 1
    return out


# ---------------------------------------------------------------------------
# Backward (analytic gradients)
# ---------------------------------------------------------------------------


def backward_batch(net: NetworkSpec, X, upstream) -> np.ndarray:
    """Gradient of sum_b upstream[b] . output[b] w.r.t. trainable parameters.

    Returns one value per mask=true parameter, canonical order; frozen
    parameters receive no entry.  Exact chain-rule derivatives: for a
    quadratic neuron with p = w_r.x + b_r and q = w_g.x + b_g,
    dh/dw_r = q x, dh/db_r = q, dh/dw_g = p x, dh/db_g = p,
    dh/dw_b = x*x, dh/dc = 1.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != net.input_dim:
        raise ValueError(
            f"expected batch of shape (B, {net.input_dim}), got {X.shape}"
        )
    upstream = np.asarray(upstream, dtype=np.float64)
    if upstream.shape != (X.shape[0], net.output_dim):
        raise ValueError(
            f"expected upstream of shape ({X.shape[0]}, {net.output_dim})"
        )

    preacts, acts = _forward_cached(net, X)
    n_layers = len(net.layers)
    grad_act: list[np.ndarray | None] = [None] * n_layers
    grad_act[-1] = upstream.copy()

    param_grads: dict[tuple[int, int], np.ndarray] = {}
    shortcut_grads = np.zeros(len(net.shortcuts))
    outgoing: dict[tuple[int, int], list[int]] = {}
    for idx, sc in enumerate(net.shortcuts):
        outgoing.setdefault((sc.dst_layer, sc.dst_neuron), []).append(idx)

    for k in range(n_layers - 1, -1, -1):
        layer = net.layers[k]
        g_act = grad_act[k]
        if g_act is None:
            g_act = np.zeros_like(acts[k])
        if layer.activation == "relu":
            g_pre = g_act * relu_prime(preacts[k])
        else:
            g_pre = g_act
        inp = X if k == 0 else acts[k - 1]
        g_inp = np.zeros_like(inp)
        for j, neuron in enumerate(layer.neurons):
            d = g_pre[:, j]
            if isinstance(neuron, QuadraticNeuron):
                p = inp @ neuron.w_r + neuron.b_r
                q = inp @ neuron.w_g + neuron.b_g
                dq = d * q
                dp = d * p
                grads = np.concatenate(
                    [
                        inp.T @ dq,
                        [dq.sum()],
                        inp.T @ dp,
                        [dp.sum()],
                        (inp * inp).T @ d,
                        [d.sum()],
                    ]
                )
                g_inp += (
                    dq[:, None] * neuron.w_r
                    + dp[:, None] * neuron.w_g
                    + 2.0 * d[:, None] * inp * neuron.w_b
                )
            elif isinstance(neuron, ConventionalNeuron):
                grads = np.concatenate([inp.T @ d, [d.sum()]])
                g_inp += d[:, None] * neuron.w
            else:
                grads = np.zeros(0)
                g_inp[:, neuron.index] += d
            param_grads[(k, j)] = grads
            for idx in outgoing.get((k, j), ()):
                sc = net.shortcuts[idx]
                src = acts[sc.src_layer][:, sc.src_neuron]
                shortcut_grads[idx] = float(d @ src)
                prev = grad_act[sc.src_layer]
                if prev is None:
                    prev = np.zeros_like(acts[sc.src_layer])
                    grad_act[sc.src_layer] = prev
                prev[:, sc.src_neuron] += sc.weight * d
        if k > 0:
            if grad_act[k - 1] is None:
                grad_act[k - 1] = g_inp
            else:
                grad_act[k - 1] = grad_act[k - 1] + g_inp

    parts = [
        param_grads[(k, j)][mask] for k, j, _, mask in _iter_neuron_entries(net)
    ]
    parts.append(
        np.array(
            [shortcut_grads[i] for i, sc in enumerate(net.shortcuts) if sc.trainable]
        )
    )
    return np.concatenate(parts) if parts else np.zeros(0)


def backward(net: NetworkSpec, x, upstream) -> np.ndarray:
    """Single-input gradient of upstream . output w.r.t. trainable parameters."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.input_dim,):
        raise ValueError(f"expected input of shape ({net.input_dim},), got {x.shape}")
    upstream = np.asarray(upstream, dtype=np.float64)
    if upstream.shape != (net.output_dim,):
        raise ValueError(
            f"expected upstream of shape ({net.output_dim},), got {upstream.shape}"
        )
    return backward_batch(net, x[None, :], upstream[None, :])


# ---------------------------------------------------------------------------
# Common blank architectures
# ---------------------------------------------------------------------------


def single_quadratic_net(input_dim: int) -> NetworkSpec:
    """One trainable quadratic neuron, identity activation, zero-initialised."""
    neuron = QuadraticNeuron(
        w_r=np.zeros(input_dim), b_r=0.0,
        w_g=np.zeros(input_dim), b_g=0.0,
        w_b=np.zeros(input_dim), c=0.0,
    )
    return NetworkSpec(input_dim, [LayerSpec([neuron], activation="identity")])


def one_hidden_quadratic(input_dim: int, width: int) -> NetworkSpec:
    """width quadratic ReLU units feeding one linear output neuron."""
    if width < 1:
        raise ValueError("width must be >= 1")
    hidden = [
        QuadraticNeuron(
            w_r=np.zeros(input_dim), b_r=0.0,
            w_g=np.zeros(input_dim), b_g=0.0,
            w_b=np.zeros(input_dim), c=0.0,
        )
        for _ in range(width)
    ]
    out = ConventionalNeuron(w=np.zeros(width), b=0.0)
    return NetworkSpec(
        input_dim,
        [LayerSpec(hidden, "relu"), LayerSpec([out], "identity")],
    )


def one_hidden_conventional(input_dim: int, width: int) -> NetworkSpec:
    """width conventional ReLU units feeding one linear output neuron."""
    if width < 1:
        raise ValueError("width must be >= 1")
    hidden = [
        ConventionalNeuron(w=np.zeros(input_dim), b=0.0) for _ in range(width)
    ]
    out = ConventionalNeuron(w=np.zeros(width), b=0.0)
    return NetworkSpec(
        input_dim,
        [LayerSpec(hidden, "relu"), LayerSpec([out], "identity")],
    )


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def _neuron_to_dict(neuron: Neuron) -> dict:
    if isinstance(neuron, QuadraticNeuron):
        return {"kind": "quadratic", "params": neuron.param_vector().tolist()}
    if isinstance(neuron, ConventionalNeuron):
        return {"kind": "conventional", "params": neuron.param_vector().tolist()}
    return {"kind": "passthrough", "index": neuron.index}


def _neuron_from_dict(d: dict) -> Neuron:
    kind = d["kind"]
    if kind == "passthrough":
        return PassthroughNeuron(d["index"])
    params = np.asarray(d["params"], dtype=np.float64)
    if kind == "quadratic":
        if (len(params) - 3) % 3:
            raise ValueError("quadratic neuron parameter count must be 3n + 3")
        n = (len(params) - 3) // 3
        return QuadraticNeuron(
            w_r=params[0:n], b_r=params[n],
            w_g=params[n + 1 : 2 * n + 1], b_g=params[2 * n + 1],
            w_b=params[2 * n + 2 : 3 * n + 2], c=params[3 * n + 2],
        )
    if kind == "conventional":
        return ConventionalNeuron(w=params[:-1], b=params[-1])
    raise ValueError(f"unknown neuron kind {kind!r}")


def to_json(net: NetworkSpec) -> str:
    """Serialize to JSON; round-trips bit-exactly for finite parameters."""
    doc = {
        "input_dim": net.input_dim,
        "layers": [
            {
                "activation": layer.activation,
                "neurons": [_neuron_to_dict(nr) for nr in layer.neurons],
            }
            for layer in net.layers
        ],
        "shortcuts": [
            {
                "src_layer": sc.src_layer,
                "src_neuron": sc.src_neuron,
                "dst_layer": sc.dst_layer,
                "dst_neuron": sc.dst_neuron,
                "weight": sc.weight,
                "trainable": sc.trainable,
            }
            for sc in net.shortcuts
        ],
        "masks": [
            [m.astype(int).tolist() for m in layer_masks] for layer_masks in net.masks
        ],
    }
    return json.dumps(doc, sort_keys=True)


def from_json(text: str) -> NetworkSpec:
    doc = json.loads(text)
    layers = [
        LayerSpec(
            neurons=[_neuron_from_dict(d) for d in layer["neurons"]],
            activation=layer["activation"],
        )
        for layer in doc["layers"]
    ]
    shortcuts = [Shortcut(**d) for d in doc["shortcuts"]]
    masks = [
        [np.asarray(m, dtype=bool) for m in layer_masks]
        for layer_masks in doc["masks"]
    ]
    return NetworkSpec(doc["input_dim"], layers, shortcuts, masks)
