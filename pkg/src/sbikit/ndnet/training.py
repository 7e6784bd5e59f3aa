"""Mini-batch training loop with validation-based early stopping."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core.data import Dataset, split_train_val
from ..core.rng import RngKey, fold_in
from ..errors import ContractError
from . import autodiff as ad
from .adam import adam_init, adam_step


@dataclass
class LossProfile:
    """Per-epoch mean training loss (column 1) and validation loss (column 2)."""

    train: list = field(default_factory=list)
    val: list = field(default_factory=list)


def fit_loop(
    objective,
    init_params: dict,
    data: Dataset,
    key: RngKey,
    n_iter: int = 1000,
    batch_size: int = 128,
    val_fraction: float = 0.1,
    patience: int = 10,
    lr: float = 1e-3,
) -> tuple:
    """Optimize ``objective(params, batch, key) -> scalar`` with Adam.

    Shuffled mini-batches each epoch; stops early once the validation loss
    has not improved for ``patience`` consecutive epochs (``patience=0``
    disables early stopping). Returns the parameters snapshot at the best
    validation loss together with the loss profile. Deterministic given
    ``key``: the split, the shuffles and any objective-internal draws all
    derive from it.
    """
    if batch_size < 1:
        raise ContractError("batch_size must be >= 1")
    if data.n == 0:
        raise ContractError("empty dataset")
    train, val = split_train_val(data, val_fraction, fold_in(key, 0))
    epoch_key = fold_in(key, 1)
    val_key = fold_in(key, 2)

    params = ad.tree_map(np.copy, init_params)
    opt = adam_init(params, lr=lr)
    profile = LossProfile()
    best_val = np.inf
    best_params = ad.tree_map(np.copy, params)
    bad_epochs = 0

    for epoch in range(n_iter):
        k_e = fold_in(epoch_key, epoch)
        perm = k_e.generator().permutation(train.n)
        total, count = 0.0, 0
        for b, start in enumerate(range(0, train.n, batch_size)):
            idx = perm[start : start + batch_size]
            batch = train.rows(idx)
            b_key = fold_in(k_e, b + 1)
            loss, grads = ad.value_and_grad(
                lambda p: objective(p, batch, b_key), params
            )
            opt, params = adam_step(opt, params, grads)
            total += loss * idx.shape[0]
            count += idx.shape[0]
        profile.train.append(total / count)

        val_loss = float(ad.value_of(objective(params, val, val_key)))
        profile.val.append(val_loss)

        if val_loss < best_val:
            best_val = val_loss
            best_params = ad.tree_map(np.copy, params)
            bad_epochs = 0
        else:
            bad_epochs += 1
            if patience > 0 and bad_epochs >= patience:
                break

    return best_params, profile
