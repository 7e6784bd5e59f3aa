"""Reverse-mode automatic differentiation over numpy arrays.

A :class:`Var` wraps a float64 array and records the operations applied to
it; calling :func:`backward` on a scalar result accumulates exact gradients
into every reachable leaf. The op set is the closed family the estimators
are composed from: affine layers, activations, elementwise arithmetic,
reductions, log-sum-exp, concatenation/slicing and column gathers.

The same functional ops (``tanh``, ``affine``, ...) dispatch on input type
so estimator code written once runs both under differentiation (Var inputs)
and as plain fast numpy evaluation (ndarray inputs).
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractError
from . import kernels


def _unbroadcast(g: np.ndarray, shape: tuple) -> np.ndarray:
    """Reduce a broadcasted gradient back to ``shape``."""
    if g.shape == shape:
        return g
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for ax, s in enumerate(shape):
        if s == 1 and g.shape[ax] != 1:
            g = g.sum(axis=ax, keepdims=True)
    return g


def _c2d(x: np.ndarray) -> bool:
    return x.ndim == 2 and x.flags.c_contiguous and x.dtype == np.float64


def _contig(x: np.ndarray) -> np.ndarray:
    return x if x.flags.c_contiguous else np.ascontiguousarray(x)


class Var:
    """Node in the reverse-mode tape."""

    __slots__ = ("value", "grad", "_parents", "_vjps")

    def __init__(self, value, parents=(), vjps=()):
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = None
        self._parents = parents
        self._vjps = vjps

    @property
    def shape(self):
        return self.value.shape

    def _accumulate(self, g):
        if self.grad is None:
            self.grad = np.zeros(self.value.shape)
        self.grad += _unbroadcast(np.asarray(g), self.value.shape)

    def backward(self):
        """Backpropagate from this scalar node."""
        if self.value.size != 1:
            raise ContractError("backward() requires a scalar loss")
        order, visited, stack = [], set(), [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in visited:
                    stack.append((p, False))
        self.grad = np.ones(self.value.shape)
        for node in reversed(order):
            if node.grad is None or not node._parents:
                continue
            for parent, vjp in zip(node._parents, node._vjps):
                parent._accumulate(vjp(node.grad))

    # -- elementwise arithmetic ------------------------------------------

    def __add__(self, other):
        o = as_var(other)
        return Var(self.value + o.value, (self, o), (lambda g: g, lambda g: g))

    __radd__ = __add__

    def __neg__(self):
        return Var(-self.value, (self,), (lambda g: -g,))

    def __sub__(self, other):
        o = as_var(other)
        return Var(self.value - o.value, (self, o), (lambda g: g, lambda g: -g))

    def __rsub__(self, other):
        return as_var(other) - self

    def __mul__(self, other):
        o = as_var(other)
        return Var(
            self.value * o.value,
            (self, o),
            (lambda g: g * o.value, lambda g: g * self.value),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_var(other)
        return Var(
            self.value / o.value,
            (self, o),
            (lambda g: g / o.value, lambda g: -g * self.value / (o.value * o.value)),
        )

    def __rtruediv__(self, other):
        return as_var(other) / self

    def __pow__(self, p):
        if isinstance(p, Var):
            raise ContractError("exponent must be a constant")
        return Var(self.value**p, (self,), (lambda g: g * p * self.value ** (p - 1),))

    def __getitem__(self, key):
        def vjp(g):
            out = np.zeros(self.value.shape)
            out[key] = g
            return out

        return Var(self.value[key], (self,), (vjp,))

    def reshape(self, *shape):
        old = self.value.shape
        return Var(self.value.reshape(*shape), (self,), (lambda g: g.reshape(old),))


def as_var(x) -> Var:
    return x if isinstance(x, Var) else Var(x)


def is_var(x) -> bool:
    return isinstance(x, Var)


def value_of(x):
    return x.value if isinstance(x, Var) else np.asarray(x, dtype=np.float64)


def stop_gradient(x):
    return Var(value_of(x)) if isinstance(x, Var) else x


# -- dual-mode functional ops (Var graph or plain numpy) ------------------


def affine(x, w, b):
    """x @ w + b, the dense-layer hot path (kernel-backed both directions)."""
    if not (is_var(x) or is_var(w) or is_var(b)):
        x = np.asarray(x, dtype=np.float64)
        if _c2d(x) and _c2d(w):
            return kernels.affine(x, w, np.ascontiguousarray(b))
        return x @ w + b
    xv, wv, bv = as_var(x), as_var(w), as_var(b)
    xc, wc, bc = _contig(xv.value), _contig(wv.value), _contig(bv.value)
    out = kernels.affine(xc, wc, bc)
    cache = {}

    def _grads(g):
        key = id(g)
        if key not in cache:
            cache.clear()
            cache[key] = kernels.affine_grads(xc, wc, _contig(g))
        return cache[key]

    return Var(
        out,
        (xv, wv, bv),
        (
            lambda g: _grads(g)[0],
            lambda g: _grads(g)[1],
            lambda g: _grads(g)[2],
        ),
    )


def matmul(a, b):
    if not (is_var(a) or is_var(b)):
        return np.asarray(a) @ np.asarray(b)
    av, bv = as_var(a), as_var(b)
    return Var(
        av.value @ bv.value,
        (av, bv),
        (lambda g: g @ bv.value.T, lambda g: av.value.T @ g),
    )


def _unary(x, np_fwd, ker_fwd, make_vjp, ker_uses_out):
    if not is_var(x):
        x = np.asarray(x, dtype=np.float64)
        return ker_fwd(x) if (ker_fwd and _c2d(x)) else np_fwd(x)
    xv = x
    val = ker_fwd(xv.value) if (ker_fwd and _c2d(xv.value)) else np_fwd(xv.value)
    return Var(val, (xv,), (make_vjp(xv.value, val),))


def tanh(x):
    return _unary(
        x,
        np.tanh,
        kernels.tanh_fwd,
        lambda xval, out: (
            (lambda g: kernels.tanh_bwd(_contig(out), _contig(g)))
            if _c2d(out)
            else (lambda g: (1.0 - out * out) * g)
        ),
        True,
    )


def relu(x):
    return _unary(
        x,
        lambda v: np.maximum(v, 0.0),
        kernels.relu_fwd,
        lambda xval, out: (
            (lambda g: kernels.relu_bwd(_contig(xval), _contig(g)))
            if _c2d(xval)
            else (lambda g: np.where(xval > 0.0, g, 0.0))
        ),
        False,
    )


def gelu(x):
    from scipy.special import erf as _erf

    def np_fwd(v):
        return 0.5 * v * (1.0 + _erf(v / np.sqrt(2.0)))

    def np_bwd(xval):
        def vjp(g):
            cdf = 0.5 * (1.0 + _erf(xval / np.sqrt(2.0)))
            pdf = np.exp(-0.5 * xval * xval) / np.sqrt(2 * np.pi)
            return (cdf + xval * pdf) * g

        return vjp

    return _unary(
        x,
        np_fwd,
        kernels.gelu_fwd,
        lambda xval, out: (
            (lambda g: kernels.gelu_bwd(_contig(xval), _contig(g)))
            if _c2d(xval)
            else np_bwd(xval)
        ),
        False,
    )


def exp(x):
    if not is_var(x):
        return np.exp(x)
    val = np.exp(x.value)
    return Var(val, (x,), (lambda g: g * val,))


def log(x):
    if not is_var(x):
        return np.log(x)
    return Var(np.log(x.value), (x,), (lambda g: g / x.value,))


def sqrt(x):
    if not is_var(x):
        return np.sqrt(x)
    val = np.sqrt(x.value)
    return Var(val, (x,), (lambda g: g * 0.5 / val,))


def clip(x, lo, hi):
    """Clamp; gradient passes through inside [lo, hi], zero outside."""
    if not is_var(x):
        return np.clip(x, lo, hi)
    inside = (x.value >= lo) & (x.value <= hi)
    return Var(np.clip(x.value, lo, hi), (x,), (lambda g: g * inside,))


def vsum(x, axis=None, keepdims=False):
    if not is_var(x):
        return np.sum(x, axis=axis, keepdims=keepdims)
    shape = x.value.shape

    def vjp(g):
        if axis is None:
            return np.broadcast_to(g, shape).copy()
        gg = g if keepdims else np.expand_dims(g, axis)
        return np.broadcast_to(gg, shape).copy()

    return Var(np.sum(x.value, axis=axis, keepdims=keepdims), (x,), (vjp,))


def vmean(x, axis=None, keepdims=False):
    if not is_var(x):
        return np.mean(x, axis=axis, keepdims=keepdims)
    n = x.value.size if axis is None else x.value.shape[axis]
    return vsum(x, axis=axis, keepdims=keepdims) / float(n)


def logsumexp(x, axis, keepdims=False):
    """Numerically stable log-sum-exp along ``axis``."""
    xval = value_of(x)
    m = np.max(xval, axis=axis, keepdims=True)
    m = np.where(np.isfinite(m), m, 0.0)
    if not is_var(x):
        out = np.log(np.sum(np.exp(xval - m), axis=axis, keepdims=True)) + m
        return out if keepdims else np.squeeze(out, axis=axis)
    val = np.log(np.sum(np.exp(xval - m), axis=axis, keepdims=True)) + m
    soft = np.exp(xval - val)

    def vjp(g):
        gg = g if keepdims else np.expand_dims(g, axis)
        return gg * soft

    out = val if keepdims else np.squeeze(val, axis=axis)
    return Var(out, (x,), (vjp,))


def concat(parts, axis=1):
    if not any(is_var(p) for p in parts):
        return np.concatenate(parts, axis=axis)
    vparts = [as_var(p) for p in parts]
    sizes = [p.value.shape[axis] for p in vparts]
    offsets = np.cumsum([0] + sizes)

    def make_vjp(i):
        sl = [slice(None)] * vparts[i].value.ndim
        sl[axis] = slice(offsets[i], offsets[i + 1])
        sl = tuple(sl)
        return lambda g: g[sl]

    return Var(
        np.concatenate([p.value for p in vparts], axis=axis),
        tuple(vparts),
        tuple(make_vjp(i) for i in range(len(vparts))),
    )


def take_cols(x, idx):
    """Gather columns by an index vector (fixed permutations in flows)."""
    idx = np.asarray(idx, dtype=np.intp)
    if not is_var(x):
        return np.asarray(x)[:, idx]

    def vjp(g):
        out = np.zeros(x.value.shape)
        np.add.at(out, (slice(None), idx), g)
        return out

    return Var(x.value[:, idx], (x,), (vjp,))


def square(x):
    return x * x if is_var(x) else np.square(x)


# -- parameter trees -------------------------------------------------------


def tree_map(f, tree):
    if isinstance(tree, dict):
        return {k: tree_map(f, v) for k, v in tree.items()}
    return f(tree)


def tree_leaves(tree, prefix=""):
    """Depth-first (path, leaf) pairs in insertion order; paths join keys with '/'."""
    if isinstance(tree, dict):
        out = []
        for k, v in tree.items():
            out.extend(tree_leaves(v, f"{prefix}{k}/"))
        return out
    return [(prefix[:-1], tree)]


def tree_map2(f, a, b):
    if isinstance(a, dict):
        return {k: tree_map2(f, a[k], b[k]) for k in a}
    return f(a, b)


def grad(loss_fn, params):
    """Exact reverse-mode gradient of ``loss_fn`` at ``params``."""
    return value_and_grad(loss_fn, params)[1]


def value_and_grad(loss_fn, params):
    vparams = tree_map(Var, params)
    out = loss_fn(vparams)
    if not isinstance(out, Var):
        raise ContractError("loss must be composed from differentiable ops")
    if out.value.size != 1:
        raise ContractError("loss must be scalar")
    out.backward()
    grads = tree_map(
        lambda v: v.grad if v.grad is not None else np.zeros(v.value.shape), vparams
    )
    return float(out.value), grads
