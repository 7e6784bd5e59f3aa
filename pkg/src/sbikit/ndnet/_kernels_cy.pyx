# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled dense-layer kernels: BLAS-backed affines with fused bias and
activation loops. Mirrors the surface of ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport tanh as ctanh, erf as cerf, exp as cexp, sqrt

from scipy.linalg.cython_blas cimport dgemm

cnp.import_array()

BACKEND_NAME = "cython"

cdef double INV_SQRT2 = 1.0 / sqrt(2.0)
cdef double INV_SQRT_2PI = 1.0 / sqrt(2.0 * 3.141592653589793)

cdef char TRANS_N = b'N'
cdef char TRANS_T = b'T'


cdef void _gemm_nn(double[:, ::1] x, double[:, ::1] w, double[:, ::1] out) noexcept nogil:
    # row-major out(n,m) = x(n,k) @ w(k,m)
    cdef int n = x.shape[0], k = x.shape[1], m = w.shape[1]
    cdef double one = 1.0, zero = 0.0
    dgemm(&TRANS_N, &TRANS_N, &m, &n, &k, &one, &w[0, 0], &m, &x[0, 0], &k, &zero, &out[0, 0], &m)


def affine(double[:, ::1] x, double[:, ::1] w, double[::1] b):
    cdef int n = x.shape[0], m = w.shape[1]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    _gemm_nn(x, w, ov)
    with nogil:
        for i in range(n):
            for j in range(m):
                ov[i, j] += b[j]
    return out


def affine_grads(double[:, ::1] x, double[:, ::1] w, double[:, ::1] dout):
    cdef int n = x.shape[0], k = x.shape[1], m = w.shape[1]
    cdef cnp.ndarray[double, ndim=2] dx = np.empty((n, k), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] dw = np.empty((k, m), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] db = np.zeros(m, dtype=np.float64)
    cdef double[:, ::1] dxv = dx, dwv = dw
    cdef double[::1] dbv = db
    cdef double one = 1.0, zero = 0.0
    cdef Py_ssize_t i, j
    with nogil:
        # dx(n,k) = dout(n,m) @ w(k,m)^T
        dgemm(&TRANS_T, &TRANS_N, &k, &n, &m, &one, &w[0, 0], &m, &dout[0, 0], &m, &zero, &dxv[0, 0], &k)
        # dw(k,m) = x(n,k)^T @ dout(n,m)
        dgemm(&TRANS_N, &TRANS_T, &m, &k, &n, &one, &dout[0, 0], &m, &x[0, 0], &k, &zero, &dwv[0, 0], &m)
        for i in range(n):
            for j in range(m):
                dbv[j] += dout[i, j]
    return dx, dw, db


cdef void _apply_act(double[:, ::1] h, int act) noexcept nogil:
    # act: 0 identity, 1 tanh, 2 relu, 3 gelu
    cdef Py_ssize_t i, j
    cdef double v
    if act == 0:
        return
    for i in range(h.shape[0]):
        for j in range(h.shape[1]):
            v = h[i, j]
            if act == 1:
                h[i, j] = ctanh(v)
            elif act == 2:
                h[i, j] = v if v > 0.0 else 0.0
            else:
                h[i, j] = 0.5 * v * (1.0 + cerf(v * INV_SQRT2))


def tanh_fwd(double[:, ::1] x):
    cdef cnp.ndarray[double, ndim=2] out = np.array(x, copy=True)
    cdef double[:, ::1] ov = out
    _apply_act(ov, 1)
    return out


def tanh_bwd(double[:, ::1] y, double[:, ::1] dout):
    cdef cnp.ndarray[double, ndim=2] out = np.empty((y.shape[0], y.shape[1]), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(y.shape[0]):
            for j in range(y.shape[1]):
                ov[i, j] = (1.0 - y[i, j] * y[i, j]) * dout[i, j]
    return out


def relu_fwd(double[:, ::1] x):
    cdef cnp.ndarray[double, ndim=2] out = np.array(x, copy=True)
    cdef double[:, ::1] ov = out
    _apply_act(ov, 2)
    return out


def relu_bwd(double[:, ::1] x, double[:, ::1] dout):
    cdef cnp.ndarray[double, ndim=2] out = np.empty((x.shape[0], x.shape[1]), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(x.shape[0]):
            for j in range(x.shape[1]):
                ov[i, j] = dout[i, j] if x[i, j] > 0.0 else 0.0
    return out


def gelu_fwd(double[:, ::1] x):
    cdef cnp.ndarray[double, ndim=2] out = np.array(x, copy=True)
    cdef double[:, ::1] ov = out
    _apply_act(ov, 3)
    return out


def gelu_bwd(double[:, ::1] x, double[:, ::1] dout):
    cdef cnp.ndarray[double, ndim=2] out = np.empty((x.shape[0], x.shape[1]), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    cdef double v, cdf, pdf
    with nogil:
        for i in range(x.shape[0]):
            for j in range(x.shape[1]):
                v = x[i, j]
                cdf = 0.5 * (1.0 + cerf(v * INV_SQRT2))
                pdf = INV_SQRT_2PI * cexp(-0.5 * v * v)
                ov[i, j] = (cdf + v * pdf) * dout[i, j]
    return out


_ACT_CODES = {"identity": 0, "tanh": 1, "relu": 2, "gelu": 3}


def mlp_forward(object x, list ws, list bs, str hidden_act, str final_act):
    """Fused affine/activation stack; the evaluation-only fast path."""
    cdef int hid = _ACT_CODES[hidden_act]
    cdef int fin = _ACT_CODES[final_act]
    cdef int n_layers = len(ws)
    cdef int li, n, m
    cdef cnp.ndarray[double, ndim=2] h = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=2] nxt
    cdef cnp.ndarray[double, ndim=2] w
    cdef cnp.ndarray[double, ndim=1] b
    cdef double[:, ::1] hv, nv
    cdef double[::1] bv
    cdef Py_ssize_t i, j
    for li in range(n_layers):
        w = ws[li]
        b = bs[li]
        n = h.shape[0]
        m = w.shape[1]
        nxt = np.empty((n, m), dtype=np.float64)
        hv = h
        nv = nxt
        bv = b
        _gemm_nn(hv, w, nv)
        with nogil:
            for i in range(n):
                for j in range(m):
                    nv[i, j] += bv[j]
            _apply_act(nv, fin if li == n_layers - 1 else hid)
        h = nxt
    return h
