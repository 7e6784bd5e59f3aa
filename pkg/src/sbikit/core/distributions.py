"""Elementary distributions used by priors and benchmark simulators.

This is a deliberately closed set of families. Every distribution maps a
key to an ``(n, event_dim)`` float64 sample matrix and evaluates row-wise
log-densities; out-of-support rows get ``-inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigurationError, ContractError
from .rng import RngKey, fold_in

_LOG_2PI = math.log(2.0 * math.pi)


def _as_vector(x) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if arr.ndim != 1:
        raise ConfigurationError(f"distribution parameters must be vectors, got shape {arr.shape}")
    return arr


class Distribution:
    """Base class; subclasses implement sample/log_prob over (n, event_dim)."""

    event_dim: int

    def sample(self, key: RngKey, n: int) -> np.ndarray:
        raise NotImplementedError

    def log_prob(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.event_dim:
            raise ContractError(
                f"expected (n, {self.event_dim}) matrix, got shape {x.shape}"
            )
        return x


@dataclass
class Normal(Distribution):
    """Independent normals per coordinate."""

    loc: np.ndarray
    scale: np.ndarray

    def __post_init__(self):
        self.loc = _as_vector(self.loc)
        self.scale = _as_vector(self.scale)
        if self.scale.shape != self.loc.shape:
            self.scale = np.broadcast_to(self.scale, self.loc.shape).copy()
        if np.any(self.scale <= 0):
            raise ConfigurationError("Normal scale must be > 0")
        self.event_dim = self.loc.shape[0]

    def sample(self, key, n):
        gen = key.generator()
        return self.loc + self.scale * gen.standard_normal((n, self.event_dim))

    def log_prob(self, x):
        x = self._check_matrix(x)
        z = (x - self.loc) / self.scale
        return np.sum(-0.5 * z * z - np.log(self.scale) - 0.5 * _LOG_2PI, axis=1)


@dataclass
class DiagMvNormal(Normal):
    """Multivariate normal with diagonal covariance (alias family of Normal)."""

    def __init__(self, loc, scales):
        super().__init__(loc, scales)

    @property
    def scales(self) -> np.ndarray:
        return self.scale


@dataclass
class HalfNormal(Distribution):
    """Absolute value of a centered normal; support x >= 0."""

    scale: np.ndarray

    def __post_init__(self):
        self.scale = _as_vector(self.scale)
        if np.any(self.scale <= 0):
            raise ConfigurationError("HalfNormal scale must be > 0")
        self.event_dim = self.scale.shape[0]

    def sample(self, key, n):
        gen = key.generator()
        return np.abs(self.scale * gen.standard_normal((n, self.event_dim)))

    def log_prob(self, x):
        x = self._check_matrix(x)
        z = x / self.scale
        lp = 0.5 * math.log(2.0 / math.pi) - np.log(self.scale) - 0.5 * z * z
        lp = np.where(x >= 0, lp, -np.inf)
        return np.sum(lp, axis=1)


@dataclass
class Uniform(Distribution):
    """Independent uniforms on [lo, hi] per coordinate."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        self.lo = _as_vector(self.lo)
        self.hi = _as_vector(self.hi)
        if self.hi.shape != self.lo.shape:
            raise ConfigurationError("Uniform lo/hi must have equal shapes")
        if np.any(self.lo >= self.hi):
            raise ConfigurationError("Uniform requires lo < hi elementwise")
        self.event_dim = self.lo.shape[0]

    def sample(self, key, n):
        gen = key.generator()
        return gen.uniform(self.lo, self.hi, size=(n, self.event_dim))

    def log_prob(self, x):
        x = self._check_matrix(x)
        inside = (x >= self.lo) & (x <= self.hi)
        lp = np.where(inside, -np.log(self.hi - self.lo), -np.inf)
        return np.sum(lp, axis=1)


@dataclass
class Categorical(Distribution):
    """Categorical over {0..K-1}; samples are integer-valued floats, event_dim 1."""

    logits: np.ndarray

    def __post_init__(self):
        self.logits = _as_vector(self.logits)
        if not np.all(np.isfinite(self.logits)):
            raise ConfigurationError("Categorical logits must be finite")
        self.event_dim = 1

    @property
    def probs(self) -> np.ndarray:
        p = np.exp(self.logits - np.max(self.logits))
        return p / p.sum()

    def sample(self, key, n):
        gen = key.generator()
        u = gen.random(n)
        cum = np.cumsum(self.probs)
        idx = np.searchsorted(cum, u, side="right")
        return idx.astype(np.float64).reshape(n, 1)

    def log_prob(self, x):
        x = self._check_matrix(x)
        k = x[:, 0]
        logp = self.logits - np.log(np.exp(self.logits - np.max(self.logits)).sum()) - np.max(self.logits)
        out = np.full(x.shape[0], -np.inf)
        valid = (k == np.floor(k)) & (k >= 0) & (k < self.logits.shape[0])
        out[valid] = logp[k[valid].astype(int)]
        return out


@dataclass
class MixtureSameFamily(Distribution):
    """Finite mixture of same-event-dim component distributions."""

    weights: np.ndarray
    components: list = field(default_factory=list)

    def __post_init__(self):
        self.weights = _as_vector(self.weights)
        if len(self.components) != self.weights.shape[0]:
            raise ConfigurationError("one weight per component required")
        if np.any(self.weights < 0) or self.weights.sum() <= 0:
            raise ConfigurationError("mixture weights must be nonnegative with positive sum")
        self.weights = self.weights / self.weights.sum()
        dims = {c.event_dim for c in self.components}
        if len(dims) != 1:
            raise ConfigurationError("mixture components must share event_dim")
        self.event_dim = dims.pop()

    def sample(self, key, n):
        cat = Categorical(np.log(self.weights))
        comp = cat.sample(fold_in(key, 0), n)[:, 0].astype(int)
        out = np.empty((n, self.event_dim))
        for j, c in enumerate(self.components):
            mask = comp == j
            if np.any(mask):
                draws = c.sample(fold_in(key, j + 1), int(mask.sum()))
                out[mask] = draws
        return out

    def log_prob(self, x):
        x = self._check_matrix(x)
        comp_lp = np.stack([c.log_prob(x) for c in self.components], axis=1)
        comp_lp = comp_lp + np.log(self.weights)
        m = np.max(comp_lp, axis=1, keepdims=True)
        m = np.where(np.isfinite(m), m, 0.0)
        return np.log(np.exp(comp_lp - m).sum(axis=1)) + m[:, 0]
