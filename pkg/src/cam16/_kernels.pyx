# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-sample CAM16 loops (forward, inverse, original-form inverse).

Mirrors ``_kernels_py``: same arguments, same NaN-on-failure contract.
"""

import numpy as np

from libc.math cimport atan2, cos, sin, sqrt, pow, fabs, hypot, M_PI, NAN

NAME = "cython"

cdef double[3][3] _M16 = [
    [0.401288, 0.650173, -0.051461],
    [-0.250268, 1.204414, 0.045854],
    [-0.002079, 0.048952, 0.953127],
]
cdef double[3][3] _M16_INV
cdef double[5] _ANG = [20.14, 90.00, 164.25, 237.53, 380.14]
cdef double[5] _ECC = [0.8, 0.7, 1.0, 1.2, 0.8]
cdef double[5] _QUAD = [0.0, 100.0, 200.0, 300.0, 400.0]
cdef double _CHROMA_T = 50000.0 / 13.0
cdef double _DEG = 180.0 / M_PI
cdef double _RAD = M_PI / 180.0
cdef double _COS2 = cos(2.0)
cdef double _SIN2 = sin(2.0)

_inv = np.linalg.inv(np.array([[_M16[i][j] for j in range(3)] for i in range(3)]))
for _i in range(3):
    for _j in range(3):
        _M16_INV[_i][_j] = _inv[_i, _j]


cdef struct Params:
    double d[3]
    double f_l, f_l_root, n_c, n_cb, n_bb, a_w, c, cz, chroma_scale, legacy_a_w


cdef Params _unpack(double[::1] p):
    cdef Params out
    out.d[0] = p[0]
    out.d[1] = p[1]
    out.d[2] = p[2]
    out.f_l = p[3]
    out.f_l_root = p[4]
    out.n_c = p[5]
    out.n_cb = p[6]
    out.n_bb = p[7]
    out.a_w = p[8]
    out.c = p[9]
    out.cz = p[10]
    out.chroma_scale = p[11]
    out.legacy_a_w = p[12]
    return out


cdef inline double _compress(double x, double f_l) nogil:
    cdef double q
    if x == 0.0:
        return 0.0
    q = pow(f_l * fabs(x) / 100.0, 0.42)
    if x < 0.0:
        return -400.0 * q / (q + 27.13)
    return 400.0 * q / (q + 27.13)


cdef inline double _expand(double y, double f_l) nogil:
    # caller guarantees |y| < 400
    cdef double ay = fabs(y)
    cdef double v
    if y == 0.0:
        return 0.0
    v = 100.0 / f_l * pow(27.13 * ay / (400.0 - ay), 1.0 / 0.42)
    return -v if y < 0.0 else v


def forward(xyz, params):
    cdef double[:, ::1] src = np.ascontiguousarray(xyz, dtype=np.float64)
    cdef Params p = _unpack(np.ascontiguousarray(params, dtype=np.float64))
    cdef Py_ssize_t n = src.shape[0]
    out_arr = np.empty((n, 7), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t k, i
    cdef int seg
    cdef double ra[3]
    cdef double v, p2, a, b, u, h, hp, e_t, big_h, num, ach, j, root_j, t, alpha, chroma
    cdef long failed = 0

    with nogil:
        for k in range(n):
            for i in range(3):
                v = _M16[i][0] * src[k, 0] + _M16[i][1] * src[k, 1] + _M16[i][2] * src[k, 2]
                ra[i] = _compress(p.d[i] * v, p.f_l)
            p2 = 2.0 * ra[0] + ra[1] + ra[2] / 20.0
            a = ra[0] - 12.0 / 11.0 * ra[1] + ra[2] / 11.0
            b = (ra[0] + ra[1] - 2.0 * ra[2]) / 9.0
            u = ra[0] + ra[1] + 21.0 / 20.0 * ra[2]

            if a == 0.0 and b == 0.0:
                h = 0.0
            else:
                h = atan2(b, a) * _DEG
                if h < 0.0:
                    h = h + 360.0
                if h >= 360.0:
                    h = h - 360.0
            hp = h + 360.0 if h < _ANG[0] else h
            seg = 3
            while seg > 0 and hp < _ANG[seg]:
                seg -= 1
            num = _ECC[seg + 1] * (hp - _ANG[seg])
            big_h = _QUAD[seg] + 100.0 * num / (num + _ECC[seg] * (_ANG[seg + 1] - hp))
            if big_h >= 400.0:
                big_h = big_h - 400.0
            e_t = 0.25 * (cos(hp * _RAD + 2.0) + 3.8)

            ach = p2 * p.n_bb
            if not (ach >= 0.0 and u + 0.305 > 0.0):
                failed += 1
                for i in range(7):
                    out[k, i] = NAN
                continue
            j = 100.0 * pow(ach / p.a_w, p.cz)
            root_j = sqrt(j / 100.0)
            t = _CHROMA_T * p.n_c * p.n_cb * e_t * hypot(a, b) / (u + 0.305)
            alpha = pow(t, 0.9) * p.chroma_scale
            chroma = alpha * root_j
            out[k, 0] = j
            out[k, 1] = chroma
            out[k, 2] = h
            out[k, 3] = (4.0 / p.c) * root_j * (p.a_w + 4.0) * p.f_l_root
            out[k, 4] = chroma * p.f_l_root
            out[k, 5] = 50.0 * sqrt(alpha * p.c / (p.a_w + 4.0))
            out[k, 6] = big_h
    return out_arr, failed


cdef inline bint _finish(double[:, ::1] out, Py_ssize_t k, double* rgb_a, Params* p) nogil:
    cdef double rgb[3]
    cdef Py_ssize_t i
    for i in range(3):
        if not fabs(rgb_a[i]) < 400.0:
            out[k, 0] = NAN
            out[k, 1] = NAN
            out[k, 2] = NAN
            return False
        rgb[i] = _expand(rgb_a[i], p.f_l) / p.d[i]
    for i in range(3):
        out[k, i] = _M16_INV[i][0] * rgb[0] + _M16_INV[i][1] * rgb[1] + _M16_INV[i][2] * rgb[2]
    return True


def inverse(jch, params):
    cdef double[:, ::1] src = np.ascontiguousarray(jch, dtype=np.float64)
    cdef Params p = _unpack(np.ascontiguousarray(params, dtype=np.float64))
    cdef Py_ssize_t n = src.shape[0]
    out_arr = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t k
    cdef double j, alpha, t, hr, cos_h, sin_h, p1, p2, denom, gamma, a, b
    cdef double rgb_a[3]
    cdef double inv_cz = 1.0 / p.cz
    cdef double t_coef = _CHROMA_T * p.n_c * p.n_cb
    cdef long failed = 0

    with nogil:
        for k in range(n):
            j = src[k, 0]
            alpha = 0.0 if j == 0.0 else src[k, 1] / sqrt(j / 100.0)
            t = pow(alpha / p.chroma_scale, 1.0 / 0.9)
            hr = src[k, 2] * _RAD
            cos_h = cos(hr)
            sin_h = sin(hr)
            # cos(hr + 2) by angle addition, reusing cos_h and sin_h
            p1 = 0.25 * (cos_h * _COS2 - sin_h * _SIN2 + 3.8) * t_coef
            p2 = p.a_w * pow(j / 100.0, inv_cz) / p.n_bb
            denom = 23.0 * p1 + 11.0 * t * cos_h + 108.0 * t * sin_h
            if not denom > 0.0:
                failed += 1
                out[k, 0] = NAN
                out[k, 1] = NAN
                out[k, 2] = NAN
                continue
            gamma = 23.0 * (p2 + 0.305) * t / denom
            a = gamma * cos_h
            b = gamma * sin_h
            rgb_a[0] = (460.0 * p2 + 451.0 * a + 288.0 * b) / 1403.0
            rgb_a[1] = (460.0 * p2 - 891.0 * a - 261.0 * b) / 1403.0
            rgb_a[2] = (460.0 * p2 - 220.0 * a - 6300.0 * b) / 1403.0
            if not _finish(out, k, rgb_a, &p):
                failed += 1
    return out_arr, failed


def legacy_inverse(jch, params):
    cdef double[:, ::1] src = np.ascontiguousarray(jch, dtype=np.float64)
    cdef Params p = _unpack(np.ascontiguousarray(params, dtype=np.float64))
    cdef Py_ssize_t n = src.shape[0]
    out_arr = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t k
    cdef double j, t, hr, e_t, p1, p2, p3 = 21.0 / 20.0, sin_h, cos_h, a, b
    cdef double rgb_a[3]
    cdef long failed = 0

    with nogil:
        for k in range(n):
            j = src[k, 0]
            t = pow(src[k, 1] / (sqrt(j / 100.0) * p.chroma_scale), 1.0 / 0.9)
            hr = src[k, 2] * M_PI / 180.0
            e_t = 0.25 * (cos(hr + 2.0) + 3.8)
            p2 = p.legacy_a_w * pow(j / 100.0, 1.0 / p.cz) / p.n_bb + 0.305
            if t == 0.0:
                a = 0.0
                b = 0.0
            else:
                p1 = _CHROMA_T * p.n_c * p.n_cb * e_t / t
                sin_h = sin(hr)
                cos_h = cos(hr)
                if fabs(sin_h) >= fabs(cos_h):
                    b = (p2 * (2.0 + p3) * (460.0 / 1403.0)) / (
                        p1 / sin_h
                        + (2.0 + p3) * (220.0 / 1403.0) * (cos_h / sin_h)
                        - 27.0 / 1403.0
                        + p3 * (6300.0 / 1403.0))
                    a = b * (cos_h / sin_h)
                else:
                    a = (p2 * (2.0 + p3) * (460.0 / 1403.0)) / (
                        p1 / cos_h
                        + (2.0 + p3) * (220.0 / 1403.0)
                        - (27.0 / 1403.0 - p3 * (6300.0 / 1403.0)) * (sin_h / cos_h))
                    b = a * (sin_h / cos_h)
            rgb_a[0] = (460.0 * p2 + 451.0 * a + 288.0 * b) / 1403.0 - 0.1
            rgb_a[1] = (460.0 * p2 - 891.0 * a - 261.0 * b) / 1403.0 - 0.1
            rgb_a[2] = (460.0 * p2 - 220.0 * a - 6300.0 * b) / 1403.0 - 0.1
            if not _finish(out, k, rgb_a, &p):
                failed += 1
    return out_arr, failed
