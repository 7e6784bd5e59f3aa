"""Named joint priors over model parameters and their sample batches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractError
from .distributions import Distribution
from .rng import RngKey, fold_in


@dataclass(frozen=True)
class ThetaBatch:
    """Named map parameter-name -> (n, dim) matrix; insertion order is the
    canonical flattening order (vector <-> named round-trips are unambiguous).
    """

    entries: dict

    def __post_init__(self):
        ns = {v.shape[0] for v in self.entries.values()}
        if len(ns) > 1:
            raise ContractError(f"entries disagree on leading dimension: {ns}")

    @property
    def n(self) -> int:
        return next(iter(self.entries.values())).shape[0] if self.entries else 0

    @property
    def names(self) -> list:
        return list(self.entries.keys())

    def __getitem__(self, name: str) -> np.ndarray:
        return self.entries[name]

    def matrix(self) -> np.ndarray:
        """Concatenate entries column-wise in insertion order."""
        return np.concatenate([self.entries[k] for k in self.entries], axis=1)

    def rows(self, idx) -> "ThetaBatch":
        return ThetaBatch({k: v[idx] for k, v in self.entries.items()})

    def concat(self, other: "ThetaBatch") -> "ThetaBatch":
        if self.names != other.names:
            raise ContractError(f"name mismatch: {self.names} vs {other.names}")
        return ThetaBatch(
            {k: np.concatenate([self.entries[k], other.entries[k]], axis=0) for k in self.entries}
        )


@dataclass
class PriorSpec:
    """Ordered named map parameter-name -> marginal distribution."""

    marginals: dict

    def __post_init__(self):
        names = list(self.marginals.keys())
        if len(set(names)) != len(names):
            raise ContractError("duplicate parameter names in prior")
        for v in self.marginals.values():
            if not isinstance(v, Distribution):
                raise ContractError(f"marginals must be Distribution, got {type(v)}")

    @property
    def names(self) -> list:
        return list(self.marginals.keys())

    @property
    def dims(self) -> dict:
        return {k: d.event_dim for k, d in self.marginals.items()}

    @property
    def total_dim(self) -> int:
        return sum(d.event_dim for d in self.marginals.values())

    def sample(self, key: RngKey, n: int) -> ThetaBatch:
        """Independent draws from each marginal; deterministic given key."""
        if n < 1:
            raise ContractError("n must be >= 1")
        out = {}
        for i, (name, dist) in enumerate(self.marginals.items()):
            out[name] = dist.sample(fold_in(key, i), n)
        return ThetaBatch(out)

    def log_prob(self, theta: ThetaBatch) -> np.ndarray:
        """Row-wise sum of marginal log-densities; -inf off support."""
        if theta.names != self.names:
            raise ContractError(f"theta names {theta.names} != prior names {self.names}")
        total = np.zeros(theta.n)
        for name, dist in self.marginals.items():
            total = total + dist.log_prob(theta[name])
        return total

    def unflatten(self, mat: np.ndarray) -> ThetaBatch:
        """Inverse of ThetaBatch.matrix() under this prior's layout."""
        mat = np.asarray(mat, dtype=np.float64)
        if mat.ndim == 1:
            mat = mat.reshape(1, -1)
        if mat.shape[1] != self.total_dim:
            raise ContractError(f"expected {self.total_dim} columns, got {mat.shape[1]}")
        out, ofs = {}, 0
        for name, dist in self.marginals.items():
            out[name] = mat[:, ofs : ofs + dist.event_dim]
            ofs += dist.event_dim
        return ThetaBatch(out)


def prior_sample(prior: PriorSpec, key: RngKey, n: int) -> ThetaBatch:
    return prior.sample(key, n)


def prior_log_prob(prior: PriorSpec, theta: ThetaBatch) -> np.ndarray:
    return prior.log_prob(theta)
