"""Pure-numpy implementations of the dense-layer hot kernels.

Same surface as the compiled extension ``_kernels_cy``; selected as the
fallback backend at import time in :mod:`sbikit.ndnet.kernels`.
"""

from __future__ import annotations

import numpy as np
from scipy.special import erf

BACKEND_NAME = "numpy"

_INV_SQRT2 = 1.0 / np.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def affine(x, w, b):
    return x @ w + b


def affine_grads(x, w, dout):
    return dout @ w.T, x.T @ dout, dout.sum(axis=0)


def tanh_fwd(x):
    return np.tanh(x)


def tanh_bwd(y, dout):
    # y is the forward output tanh(x)
    return (1.0 - y * y) * dout


def relu_fwd(x):
    return np.maximum(x, 0.0)


def relu_bwd(x, dout):
    return np.where(x > 0.0, dout, 0.0)


def gelu_fwd(x):
    return 0.5 * x * (1.0 + erf(x * _INV_SQRT2))


def gelu_bwd(x, dout):
    cdf = 0.5 * (1.0 + erf(x * _INV_SQRT2))
    pdf = _INV_SQRT_2PI * np.exp(-0.5 * x * x)
    return (cdf + x * pdf) * dout


_ACTS = {
    "tanh": tanh_fwd,
    "relu": relu_fwd,
    "gelu": gelu_fwd,
    "identity": lambda h: h,
}


def mlp_forward(x, ws, bs, hidden_act, final_act):
    """Fused affine/activation stack; the evaluation-only fast path."""
    act = _ACTS[hidden_act]
    h = x
    last = len(ws) - 1
    for i, (w, b) in enumerate(zip(ws, bs)):
        h = h @ w + b
        h = _ACTS[final_act](h) if i == last else act(h)
    return h
