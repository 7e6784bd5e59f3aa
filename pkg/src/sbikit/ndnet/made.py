"""MADE: binary masks that make a dense network autoregressive.

A unit of degree d may only receive input from units of degree < d (strict
at the output layer, non-strict inside), so output block i depends only on
inputs whose order-index is smaller than order(i). Conditioning (context)
inputs are never masked.
"""

from __future__ import annotations

import numpy as np

from ..core.rng import RngKey, fold_in
from ..errors import ContractError
from . import autodiff as ad
from .mlp import DEFAULT_W_STD, truncated_normal, _ACTIVATIONS


def made_degrees(dim: int, hidden_sizes, order=None) -> list:
    if dim < 1:
        raise ContractError("dim must be >= 1")
    if order is None:
        order = np.arange(dim)
    order = np.asarray(order, dtype=np.intp)
    if sorted(order.tolist()) != list(range(dim)):
        raise ContractError("order must be a permutation of 0..dim-1")
    degrees = [order + 1]
    for n in hidden_sizes:
        degrees.append(np.arange(n) % max(1, dim - 1) + min(1, dim - 1))
    return degrees


def made_masks(dim: int, hidden_sizes, n_params_per_dim: int, order=None) -> list:
    """Masks for layers (input->h1, ..., hL->output).

    The output has ``n_params_per_dim`` stacked blocks of width ``dim``
    (block p occupies columns [p*dim, (p+1)*dim)).
    """
    degrees = made_degrees(dim, hidden_sizes, order)
    masks = [
        (d_in[:, None] <= d_out[None, :]).astype(np.float64)
        for d_in, d_out in zip(degrees[:-1], degrees[1:])
    ]
    d_out = np.tile(degrees[0], int(n_params_per_dim))
    masks.append((degrees[-1][:, None] < d_out[None, :]).astype(np.float64))
    return masks


def made_init(
    dim: int,
    context_dim: int,
    hidden_sizes,
    n_params_per_dim: int,
    key: RngKey,
    w_std: float = DEFAULT_W_STD,
) -> dict:
    """Weights for a context-conditioned MADE; first layer rows are
    [theta inputs; context inputs], only the theta rows are masked."""
    dims = [dim + context_dim, *hidden_sizes, dim * n_params_per_dim]
    params = {}
    for i, (d_in, d_out) in enumerate(zip(dims[:-1], dims[1:])):
        gen = fold_in(key, i).generator()
        params[f"layer_{i}"] = {
            "W": truncated_normal(gen, (d_in, d_out), w_std),
            "b": np.zeros(d_out),
        }
    return params


def masks_with_context(masks: list, context_dim: int) -> list:
    """Extend the first-layer mask with unmasked context rows."""
    if context_dim == 0:
        return list(masks)
    first = np.concatenate(
        [masks[0], np.ones((context_dim, masks[0].shape[1]))], axis=0
    )
    return [first, *masks[1:]]


def made_apply(params: dict, masks: list, theta, context, activation: str = "tanh"):
    """Masked forward pass; ndarray or Var inputs.

    ``masks`` must already carry context rows (see :func:`masks_with_context`)
    when ``context`` is given; pass ``context=None`` for unconditioned nets.
    """
    act = _ACTIVATIONS[activation]
    h = theta if context is None else ad.concat([theta, context], axis=1)
    n_layers = len(masks)
    for i in range(n_layers):
        layer = params[f"layer_{i}"]
        w_eff = layer["W"] * masks[i]
        h = ad.affine(h, w_eff, layer["b"])
        if i < n_layers - 1:
            h = act(h)
    return h


def effective_weights(params: dict, masks: list) -> tuple:
    """Premultiplied (W*mask, b) lists for the fused evaluation kernel."""
    ws, bs = [], []
    for i in range(len(masks)):
        layer = params[f"layer_{i}"]
        ws.append(np.ascontiguousarray(layer["W"] * masks[i]))
        bs.append(np.ascontiguousarray(layer["b"]))
    return ws, bs
