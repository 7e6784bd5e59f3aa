"""Adam optimizer over parameter trees."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import autodiff as ad


@dataclass
class AdamState:
    step: int
    m: dict
    v: dict
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


def adam_init(params: dict, lr: float = 1e-3, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8) -> AdamState:
    zeros = ad.tree_map(lambda p: np.zeros(np.asarray(p).shape), params)
    return AdamState(step=0, m=zeros, v=ad.tree_map(np.copy, zeros), lr=lr, beta1=beta1, beta2=beta2, eps=eps)


def adam_step(state: AdamState, params: dict, grads: dict) -> tuple:
    """Textbook bias-corrected Adam update; returns (new_state, new_params)."""
    t = state.step + 1
    b1, b2 = state.beta1, state.beta2
    m = ad.tree_map2(lambda m_, g: b1 * m_ + (1 - b1) * g, state.m, grads)
    v = ad.tree_map2(lambda v_, g: b2 * v_ + (1 - b2) * g * g, state.v, grads)
    c1 = 1.0 - b1**t
    c2 = 1.0 - b2**t

    def update(p, mv):
        m_, v_ = mv
        return p - state.lr * (m_ / c1) / (np.sqrt(v_ / c2) + state.eps)

    mv = ad.tree_map2(lambda a, b: (a, b), m, v)
    new_params = ad.tree_map2(update, params, mv)
    new_state = AdamState(step=t, m=m, v=v, lr=state.lr, beta1=b1, beta2=b2, eps=state.eps)
    return new_state, new_params
