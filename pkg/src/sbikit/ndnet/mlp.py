"""Feed-forward networks: spec, parameter initialization, forward pass."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core.rng import RngKey, fold_in
from ..errors import ContractError
from . import autodiff as ad
from . import kernels

_ACTIVATIONS = {"tanh": ad.tanh, "relu": ad.relu, "gelu": ad.gelu, "identity": lambda x: x}

DEFAULT_W_STD = 1e-3


@dataclass(frozen=True)
class MlpSpec:
    in_dim: int
    out_dim: int
    hidden_sizes: tuple = (64, 64)
    activation: str = "tanh"
    final_activation: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "hidden_sizes", tuple(int(h) for h in self.hidden_sizes))
        if self.in_dim < 1 or self.out_dim < 1 or any(h < 1 for h in self.hidden_sizes):
            raise ContractError("all MLP dimensions must be >= 1")
        if self.activation not in _ACTIVATIONS:
            raise ContractError(f"unknown activation {self.activation!r}")
        if self.final_activation is not None and self.final_activation not in _ACTIVATIONS:
            raise ContractError(f"unknown final activation {self.final_activation!r}")

    @property
    def layer_dims(self) -> list:
        return [self.in_dim, *self.hidden_sizes, self.out_dim]


def truncated_normal(gen: np.random.Generator, shape, std: float) -> np.ndarray:
    """Normal(0, std) resampled until within two standard deviations."""
    out = gen.standard_normal(shape)
    bad = np.abs(out) > 2.0
    while np.any(bad):
        out[bad] = gen.standard_normal(int(bad.sum()))
        bad = np.abs(out) > 2.0
    return out * std


def mlp_init(spec: MlpSpec, key: RngKey, w_std: float = DEFAULT_W_STD) -> dict:
    """Truncated-normal weights (std ``w_std``), zero biases."""
    dims = spec.layer_dims
    params = {}
    for i, (d_in, d_out) in enumerate(zip(dims[:-1], dims[1:])):
        gen = fold_in(key, i).generator()
        params[f"layer_{i}"] = {
            "W": truncated_normal(gen, (d_in, d_out), w_std),
            "b": np.zeros(d_out),
        }
    return params


def mlp_apply(spec: MlpSpec, params: dict, x):
    """Affine/activation stack; works on ndarray or autodiff Var inputs."""
    act = _ACTIVATIONS[spec.activation]
    fin = _ACTIVATIONS[spec.final_activation or "identity"]
    n_layers = len(spec.layer_dims) - 1
    h = x
    for i in range(n_layers):
        layer = params[f"layer_{i}"]
        h = ad.affine(h, layer["W"], layer["b"])
        h = fin(h) if i == n_layers - 1 else act(h)
    return h


def mlp_forward(spec: MlpSpec, params: dict, x: np.ndarray) -> np.ndarray:
    """Evaluation-only forward through the fused kernel path."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != spec.in_dim:
        raise ContractError(f"expected (n, {spec.in_dim}) input, got {x.shape}")
    n_layers = len(spec.layer_dims) - 1
    ws = [np.ascontiguousarray(params[f"layer_{i}"]["W"]) for i in range(n_layers)]
    bs = [np.ascontiguousarray(params[f"layer_{i}"]["b"]) for i in range(n_layers)]
    for i, w in enumerate(ws):
        if w.shape != (spec.layer_dims[i], spec.layer_dims[i + 1]):
            raise ContractError(f"layer_{i} weight shape {w.shape} inconsistent with spec")
    return kernels.mlp_forward(x, ws, bs, spec.activation, spec.final_activation or "identity")
