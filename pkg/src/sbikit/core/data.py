"""The simulated training corpus: paired (y, theta) records and its CSV form."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import ContractError
from .prior import ThetaBatch
from .rng import RngKey


@dataclass(frozen=True)
class Dataset:
    """Paired record of simulations y (n, d_y) and the parameters that produced them."""

    y: np.ndarray
    theta: ThetaBatch

    def __post_init__(self):
        y = np.asarray(self.y, dtype=np.float64)
        if y.ndim != 2:
            raise ContractError(f"y must be a matrix, got shape {y.shape}")
        object.__setattr__(self, "y", y)
        if y.shape[0] != self.theta.n:
            raise ContractError(
                f"y has {y.shape[0]} rows but theta has {self.theta.n}"
            )

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def y_dim(self) -> int:
        return self.y.shape[1]

    def rows(self, idx) -> "Dataset":
        return Dataset(self.y[idx], self.theta.rows(idx))


def drop_nonfinite(y: np.ndarray, theta: ThetaBatch) -> Dataset:
    """Build a Dataset, dropping rows with NaN/Inf in y (warned and counted)."""
    ok = np.all(np.isfinite(y), axis=1)
    n_bad = int((~ok).sum())
    if n_bad:
        warnings.warn(f"dropped {n_bad} simulated rows containing NaN/Inf")
        return Dataset(y[ok], theta.rows(ok))
    return Dataset(y, theta)


def stack_data(a: Dataset | None, b: Dataset) -> Dataset:
    """Row-wise concatenation, a's rows first; with a absent returns b."""
    if a is None:
        return b
    if a.y_dim != b.y_dim or a.theta.names != b.theta.names:
        raise ContractError("cannot stack datasets with different schemas")
    for k in a.theta.names:
        if a.theta[k].shape[1] != b.theta[k].shape[1]:
            raise ContractError(f"column mismatch for {k!r}")
    return Dataset(np.concatenate([a.y, b.y], axis=0), a.theta.concat(b.theta))


def split_train_val(d: Dataset, fraction: float, key: RngKey) -> tuple[Dataset, Dataset]:
    """Disjoint random partition; validation size round(fraction*n), at least 1."""
    if not 0.0 < fraction < 1.0:
        raise ContractError("fraction must be in (0, 1)")
    if d.n < 2:
        raise ContractError("need at least 2 rows to split")
    n_val = max(1, int(round(fraction * d.n)))
    if n_val >= d.n:
        n_val = d.n - 1
    perm = key.generator().permutation(d.n)
    return d.rows(perm[n_val:]), d.rows(perm[:n_val])


def _fmt(x: float) -> str:
    """Shortest decimal that round-trips the float exactly."""
    return repr(float(x))


def dataset_to_csv(d: Dataset, path) -> None:
    header = [f"y_{j}" for j in range(d.y_dim)]
    for name in d.theta.names:
        header.extend(f"{name}_{j}" for j in range(d.theta[name].shape[1]))
    full = np.concatenate([d.y, d.theta.matrix()], axis=1)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in full:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def dataset_from_csv(path) -> Dataset:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [list(map(float, line.split(","))) for line in fh if line.strip()]
    mat = np.asarray(rows, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[1] != len(header):
        raise ContractError("malformed dataset CSV")
    groups: dict[str, int] = {}
    for col in header:
        name, _, idx = col.rpartition("_")
        if not name or not idx.isdigit():
            raise ContractError(f"malformed column name {col!r}")
        groups[name] = groups.get(name, 0) + 1
    if "y" not in groups or list(groups)[0] != "y":
        raise ContractError("dataset CSV must start with y_* columns")
    d_y = groups.pop("y")
    theta, ofs = {}, d_y
    for name, width in groups.items():
        theta[name] = mat[:, ofs : ofs + width]
        ofs += width
    return Dataset(mat[:, :d_y], ThetaBatch(theta))
