"""Backend selection for the dense-layer hot kernels.

The compiled extension is preferred when it importable; the numpy fallback
has an identical surface. Set ``SBIKIT_PURE_PYTHON=1`` to force the
fallback (used by the backend-parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SBIKIT_PURE_PYTHON", "") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

affine = _impl.affine
affine_grads = _impl.affine_grads
tanh_fwd = _impl.tanh_fwd
tanh_bwd = _impl.tanh_bwd
relu_fwd = _impl.relu_fwd
relu_bwd = _impl.relu_bwd
gelu_fwd = _impl.gelu_fwd
gelu_bwd = _impl.gelu_bwd
mlp_forward = _impl.mlp_forward


def backend_name() -> str:
    """Which kernel implementation was selected at import ('cython' or 'numpy')."""
    return _impl.BACKEND_NAME


def available_backends():
    """All importable kernel backends, for benchmarks and parity tests."""
    out = {"numpy": _kernels_py}
    try:
        from . import _kernels_cy  # type: ignore[attr-defined]

        out["cython"] = _kernels_cy
    except ImportError:
        pass
    return out
