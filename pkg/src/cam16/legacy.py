"""
Original CAM16 steps, transcribed as first published.

Keeps the +0.1 offset on the compressed cone responses (and the matching
-0.305 / -0.1 corrections downstream), ``s = 100 sqrt(M/Q)``, the ``1/t``
factor in ``p1`` and the ``|sin h| >= |cos h|`` case split of the inverse.

Nothing here raises on degenerate input: divisions by zero and fractional
powers of negative numbers come back as inf/nan, which is how the original
formulation misbehaves at black. Only the shared ``|R'_a| >= 400`` guard of
the inverse raises.
"""

from __future__ import annotations

import math

from .core import (
    _M16,
    _M16_INV,
    Cam16Correlates,
    CorrelateSelection,
    UNIQUE_HUES,
    UnrepresentableCorrelatesError,
    ViewingConditions,
    XyzColor,
    XyzLike,
    _as_xyz,
    hue_from_quadrature,
    hue_quadrature,
)


def _div(num: float, den: float) -> float:
    try:
        return num / den
    except ZeroDivisionError:
        if num == 0.0 or math.isnan(num):
            return math.nan
        return math.copysign(math.inf, num) * math.copysign(1.0, den)


def _pow(base: float, exponent: float) -> float:
    if math.isnan(base) or base < 0.0:
        return math.nan
    try:
        return base**exponent
    except ZeroDivisionError:
        return math.inf


def legacy_postadapt(x: float, f_l: float) -> float:
    if x < 0.0:
        q = (-f_l * x / 100.0) ** 0.42
        return -400.0 * q / (q + 27.13) + 0.1
    q = (f_l * x / 100.0) ** 0.42
    return 400.0 * q / (q + 27.13) + 0.1


def legacy_achromatic_white(vc: ViewingConditions) -> float:
    r, g, b = (legacy_postadapt(v, vc.f_l) for v in vc.rgb_wc)
    return (2.0 * r + g + b / 20.0 - 0.305) * vc.n_bb


def legacy_forward(xyz: XyzLike, vc: ViewingConditions) -> Cam16Correlates:
    xyz = _as_xyz(xyz)
    # Step 1, 2
    rgb = [row[0] * xyz.x + row[1] * xyz.y + row[2] * xyz.z for row in _M16]
    rgb_c = [d * v for d, v in zip(vc.d_rgb, rgb)]
    # Step 3
    ra, ga, ba = (legacy_postadapt(v, vc.f_l) for v in rgb_c)
    # Step 4
    a = ra - 12.0 * ga / 11.0 + ba / 11.0
    b = (ra + ga - 2.0 * ba) / 9.0
    h = math.degrees(math.atan2(b, a))
    if h < 0.0:
        h += 360.0
    if h >= 360.0:
        h -= 360.0
    # Step 5
    hp = h + 360.0 if h < UNIQUE_HUES.angles[0] else h
    e_t = 0.25 * (math.cos(hp * math.pi / 180.0 + 2.0) + 3.8)
    big_h, h_c = hue_quadrature(h)
    # Step 6
    achromatic = (2.0 * ra + ga + ba / 20.0 - 0.305) * vc.n_bb
    # Step 7
    a_w = legacy_achromatic_white(vc)
    c = vc.c
    j = 100.0 * _pow(_div(achromatic, a_w), c * vc.z)
    # Step 8
    q = (4.0 / c) * _pow(j / 100.0, 0.5) * (a_w + 4.0) * vc.f_l**0.25
    # Step 9
    t = _div(
        50000.0 / 13.0 * vc.n_c * vc.n_cb * e_t * math.sqrt(a * a + b * b),
        ra + ga + 21.0 / 20.0 * ba,
    )
    chroma = _pow(t, 0.9) * _pow(j / 100.0, 0.5) * (1.64 - 0.29**vc.n) ** 0.73
    m = chroma * vc.f_l**0.25
    s = 100.0 * _pow(_div(m, q), 0.5)
    return Cam16Correlates(j=j, c=chroma, h=h, q=q, m=m, s=s, big_h=big_h, h_c=h_c)


def _legacy_opponent(p1: float, p2: float, h: float) -> tuple[float, float]:
    p3 = 21.0 / 20.0
    hr = h * math.pi / 180.0
    sin_h, cos_h = math.sin(hr), math.cos(hr)
    if abs(sin_h) >= abs(cos_h):
        p4 = p1 / sin_h
        b = (p2 * (2.0 + p3) * (460.0 / 1403.0)) / (
            p4
            + (2.0 + p3) * (220.0 / 1403.0) * (cos_h / sin_h)
            - 27.0 / 1403.0
            + p3 * (6300.0 / 1403.0)
        )
        a = b * (cos_h / sin_h)
    else:
        p5 = p1 / cos_h
        a = (p2 * (2.0 + p3) * (460.0 / 1403.0)) / (
            p5
            + (2.0 + p3) * (220.0 / 1403.0)
            - (27.0 / 1403.0 - p3 * (6300.0 / 1403.0)) * (sin_h / cos_h)
        )
        b = a * (sin_h / cos_h)
    return a, b


def legacy_inverse(sel: CorrelateSelection, vc: ViewingConditions) -> XyzColor:
    c = vc.c
    a_w = legacy_achromatic_white(vc)
    f_l_root = vc.f_l**0.25
    # Step 1-1
    if sel.J is not None:
        j = sel.J
    else:
        j = 6.25 * (c * sel.Q / ((a_w + 4.0) * f_l_root)) ** 2
    # Step 1-2
    if sel.C is not None:
        chroma = sel.C
    elif sel.M is not None:
        chroma = sel.M / f_l_root
    else:
        q = (4.0 / c) * math.sqrt(j / 100.0) * (a_w + 4.0) * f_l_root
        chroma = (sel.s / 100.0) ** 2 * q / f_l_root
    # Step 1-3
    h = sel.h if sel.h is not None else hue_from_quadrature(sel.H)

    # Step 2
    t = _pow(
        _div(chroma, math.sqrt(j / 100.0) * (1.64 - 0.29**vc.n) ** 0.73), 1.0 / 0.9
    )
    e_t = 0.25 * (math.cos(h * math.pi / 180.0 + 2.0) + 3.8)
    achromatic = a_w * (j / 100.0) ** (1.0 / (c * vc.z))
    p2 = achromatic / vc.n_bb + 0.305

    # Step 3
    if t == 0.0:
        a = b = 0.0
    else:
        p1 = _div(50000.0 / 13.0 * vc.n_c * vc.n_cb * e_t, t)
        a, b = _legacy_opponent(p1, p2, h)

    # Step 4
    rgb_a = (
        (460.0 * p2 + 451.0 * a + 288.0 * b) / 1403.0,
        (460.0 * p2 - 891.0 * a - 261.0 * b) / 1403.0,
        (460.0 * p2 - 220.0 * a - 6300.0 * b) / 1403.0,
    )
    # Step 5
    rgb_c = []
    for v in rgb_a:
        w = v - 0.1
        if not abs(w) < 400.0:
            if math.isnan(w):
                rgb_c.append(math.nan)
                continue
            raise UnrepresentableCorrelatesError(
                f"compressed cone response {w!r} outside (-400, 400)"
            )
        sign = (w > 0.0) - (w < 0.0)
        rgb_c.append(sign * 100.0 / vc.f_l * (27.13 * abs(w) / (400.0 - abs(w))) ** (1.0 / 0.42))
    # Step 6, 7
    rgb = [v / d for v, d in zip(rgb_c, vc.d_rgb)]
    x, y, z = (row[0] * rgb[0] + row[1] * rgb[1] + row[2] * rgb[2] for row in _M16_INV)
    # XyzColor rejects non-finite values; degenerate legacy output is returned raw
    if all(math.isfinite(v) for v in (x, y, z)):
        return XyzColor(x, y, z)
    return _RawXyz(x, y, z)


class _RawXyz(XyzColor):
    """Unvalidated XYZ triple for legacy outputs that may hold nan/inf."""

    def __post_init__(self):
        pass
