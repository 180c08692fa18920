"""Vectorized numpy kernels; used when the compiled extension is unavailable.

Same signatures as the compiled ``_kernels`` module. ``params`` is the flat
vector built by :func:`cam16.batch.pack_params`. Rows the scalar API would
reject come back as NaN and are counted in the returned failure total.
"""

import numpy as np

from .core import M16, M16_INV, OPPONENT, OPPONENT_INV, UNIQUE_HUES

NAME = "python"

_ANGLES = np.array(UNIQUE_HUES.angles)
_ECC = np.array(UNIQUE_HUES.eccentricities)
_QUAD = np.array(UNIQUE_HUES.quadratures)
_CHROMA_T = 50000.0 / 13.0
_COS2 = np.cos(2.0)
_SIN2 = np.sin(2.0)


def _unpack(params):
    p = [float(v) for v in params]
    return np.array(p[0:3]), p[3:]


def _hue_quadrature(h):
    hp = np.where(h < _ANGLES[0], h + 360.0, h)
    i = np.clip(np.searchsorted(_ANGLES, hp, side="right") - 1, 0, 3)
    num = _ECC[i + 1] * (hp - _ANGLES[i])
    big_h = _QUAD[i] + 100.0 * num / (num + _ECC[i] * (_ANGLES[i + 1] - hp))
    return np.where(big_h >= 400.0, big_h - 400.0, big_h), hp


def forward(xyz, params):
    d_rgb, (f_l, f_l_root, n_c, n_cb, n_bb, a_w, c, cz, chroma_scale, _) = _unpack(params)
    xyz = np.asarray(xyz, dtype=np.float64)
    with np.errstate(all="ignore"):
        rgb_c = (xyz @ M16.T) * d_rgb
        q = (f_l * np.abs(rgb_c) / 100.0) ** 0.42
        rgb_a = np.sign(rgb_c) * 400.0 * q / (q + 27.13)
        p2, a, b, u = (rgb_a @ OPPONENT.T).T

        h = np.degrees(np.arctan2(b, a))
        h = np.where(h < 0.0, h + 360.0, h)
        h = np.where(h >= 360.0, h - 360.0, h)
        h = np.where((a == 0.0) & (b == 0.0), 0.0, h)
        big_h, hp = _hue_quadrature(h)
        e_t = 0.25 * (np.cos(np.radians(hp) + 2.0) + 3.8)

        achromatic = p2 * n_bb
        bad = ~((achromatic >= 0.0) & (u + 0.305 > 0.0))
        j = 100.0 * (achromatic / a_w) ** cz
        root_j = np.sqrt(j / 100.0)
        qq = (4.0 / c) * root_j * (a_w + 4.0) * f_l_root
        t = _CHROMA_T * n_c * n_cb * e_t * np.hypot(a, b) / (u + 0.305)
        alpha = t**0.9 * chroma_scale
        chroma = alpha * root_j
        s = 50.0 * np.sqrt(alpha * c / (a_w + 4.0))

    out = np.column_stack([j, chroma, h, qq, chroma * f_l_root, s, big_h])
    out[bad] = np.nan
    return out, int(bad.sum())


def _to_xyz(rgb_a, d_rgb, f_l, bad):
    ay = np.abs(rgb_a)
    bad = bad | ~(ay < 400.0).all(axis=1)
    rgb_c = np.sign(rgb_a) * (100.0 / f_l) * (27.13 * ay / (400.0 - ay)) ** (1.0 / 0.42)
    out = (rgb_c / d_rgb) @ M16_INV.T
    out[bad] = np.nan
    return out, int(bad.sum())


def inverse(jch, params):
    d_rgb, (f_l, f_l_root, n_c, n_cb, n_bb, a_w, c, cz, chroma_scale, _) = _unpack(params)
    j, chroma, h = np.asarray(jch, dtype=np.float64).T
    with np.errstate(all="ignore"):
        alpha = np.where(j == 0.0, 0.0, chroma / np.sqrt(j / 100.0))
        t = (alpha / chroma_scale) ** (1.0 / 0.9)
        hr = np.radians(h)
        cos_h, sin_h = np.cos(hr), np.sin(hr)
        # cos(hr + 2) by angle addition, reusing cos_h and sin_h
        p1 = 0.25 * (cos_h * _COS2 - sin_h * _SIN2 + 3.8) * _CHROMA_T * n_c * n_cb
        p2 = a_w * (j / 100.0) ** (1.0 / cz) / n_bb
        denom = 23.0 * p1 + 11.0 * t * cos_h + 108.0 * t * sin_h
        gamma = 23.0 * (p2 + 0.305) * t / denom
        opp = np.column_stack([p2, gamma * cos_h, gamma * sin_h])
        rgb_a = opp @ OPPONENT_INV.T / 1403.0
        return _to_xyz(rgb_a, d_rgb, f_l, ~(denom > 0.0))


def legacy_inverse(jch, params):
    d_rgb, (f_l, f_l_root, n_c, n_cb, n_bb, _, c, cz, chroma_scale, a_w) = _unpack(params)
    j, chroma, h = np.asarray(jch, dtype=np.float64).T
    p3 = 21.0 / 20.0
    with np.errstate(all="ignore"):
        t = (chroma / (np.sqrt(j / 100.0) * chroma_scale)) ** (1.0 / 0.9)
        hr = h * np.pi / 180.0
        e_t = 0.25 * (np.cos(hr + 2.0) + 3.8)
        p1 = _CHROMA_T * n_c * n_cb * e_t / t
        p2 = a_w * (j / 100.0) ** (1.0 / cz) / n_bb + 0.305
        sin_h, cos_h = np.sin(hr), np.cos(hr)

        b1 = (p2 * (2.0 + p3) * (460.0 / 1403.0)) / (
            p1 / sin_h
            + (2.0 + p3) * (220.0 / 1403.0) * (cos_h / sin_h)
            - 27.0 / 1403.0
            + p3 * (6300.0 / 1403.0)
        )
        a1 = b1 * (cos_h / sin_h)
        a2 = (p2 * (2.0 + p3) * (460.0 / 1403.0)) / (
            p1 / cos_h
            + (2.0 + p3) * (220.0 / 1403.0)
            - (27.0 / 1403.0 - p3 * (6300.0 / 1403.0)) * (sin_h / cos_h)
        )
        b2 = a2 * (sin_h / cos_h)
        use_sin = np.abs(sin_h) >= np.abs(cos_h)
        a = np.where(use_sin, a1, a2)
        b = np.where(use_sin, b1, b2)
        a = np.where(t == 0.0, 0.0, a)
        b = np.where(t == 0.0, 0.0, b)

        rgb_a = np.column_stack([
            (460.0 * p2 + 451.0 * a + 288.0 * b) / 1403.0,
            (460.0 * p2 - 891.0 * a - 261.0 * b) / 1403.0,
            (460.0 * p2 - 220.0 * a - 6300.0 * b) / 1403.0,
        ]) - 0.1
        nan_in = np.isnan(rgb_a).any(axis=1)
        return _to_xyz(rgb_a, d_rgb, f_l, nan_in)
