"""
CAM16 color appearance model, forward and inverse.

This is the streamlined formulation: the postadaptation compression carries
no +0.1 offset, the four opponent combinations come from a single 4x3
matrix, saturation is computed from the chroma intermediate ``alpha`` (so it
is defined for black), and the inverse needs neither a division by ``t`` nor
a case split on the hue angle.

All angles are stored in degrees and converted at the trig call site.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np


class Cam16Error(ValueError):
    """Base class for model errors."""


class DomainError(Cam16Error):
    """Input outside the domain on which the model is defined."""


class UnrepresentableCorrelatesError(Cam16Error):
    """Correlates that no tristimulus value can produce."""


M16 = np.array(
    [
        [0.401288, 0.650173, -0.051461],
        [-0.250268, 1.204414, 0.045854],
        [-0.002079, 0.048952, 0.953127],
    ]
)
M16_INV = np.linalg.inv(M16)

# rows produce (p2, a, b, u) from the compressed cone responses
OPPONENT = np.array(
    [
        [2.0, 1.0, 1.0 / 20.0],
        [1.0, -12.0 / 11.0, 1.0 / 11.0],
        [1.0 / 9.0, 1.0 / 9.0, -2.0 / 9.0],
        [1.0, 1.0, 21.0 / 20.0],
    ]
)

# (p2, a, b) -> compressed cone responses, to be divided by 1403
OPPONENT_INV = np.array(
    [
        [460.0, 451.0, 288.0],
        [460.0, -891.0, -261.0],
        [460.0, -220.0, -6300.0],
    ]
)

_M16 = tuple(tuple(float(v) for v in row) for row in M16)
_M16_INV = tuple(tuple(float(v) for v in row) for row in M16_INV)
_OPP = tuple(tuple(float(v) for v in row) for row in OPPONENT)
_OPP_INV = tuple(tuple(float(v) for v in row) for row in OPPONENT_INV)


class HueData(NamedTuple):
    angles: tuple[float, ...]
    eccentricities: tuple[float, ...]
    quadratures: tuple[float, ...]
    labels: tuple[str, ...]


UNIQUE_HUES = HueData(
    angles=(20.14, 90.00, 164.25, 237.53, 380.14),
    eccentricities=(0.8, 0.7, 1.0, 1.2, 0.8),
    quadratures=(0.0, 100.0, 200.0, 300.0, 400.0),
    labels=("R", "Y", "G", "B", "R"),
)

_CHROMA_T = 50000.0 / 13.0


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class XyzColor:
    """CIE XYZ tristimulus values on the 0-100 scale."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


XyzLike = Union[XyzColor, tuple, list, np.ndarray]


def _as_xyz(xyz: XyzLike) -> XyzColor:
    if isinstance(xyz, XyzColor):
        return xyz
    x, y, z = xyz
    return XyzColor(x, y, z)


# ---------------------------------------------------------------- surround

C_MIN = 0.525
C_MAX = 0.69


@dataclass(frozen=True)
class SurroundSpec:
    """Surround parameters: factor ``f``, impact ``c`` and chromatic induction ``n_c``."""

    f: float
    c: float
    n_c: float

    def __post_init__(self):
        if not C_MIN <= self.c <= C_MAX:
            raise DomainError(f"surround c={self.c} outside [{C_MIN}, {C_MAX}]")


SURROUNDS = {
    "average": SurroundSpec(1.0, 0.69, 1.0),
    "dim": SurroundSpec(0.9, 0.59, 0.9),
    "dark": SurroundSpec(0.8, 0.525, 0.8),
}


def surround_preset(name: str) -> SurroundSpec:
    try:
        return SURROUNDS[name.lower()]
    except KeyError:
        raise DomainError(
            f"unknown surround {name!r}, expected one of {sorted(SURROUNDS)}"
        ) from None


def surround_interpolate(c: float) -> SurroundSpec:
    """Surround with ``F`` and ``N_c`` interpolated linearly in ``c`` between the presets."""
    c = _finite("c", c)
    if not C_MIN <= c <= C_MAX:
        raise DomainError(f"surround c={c} outside [{C_MIN}, {C_MAX}]")
    nodes = sorted(SURROUNDS.values(), key=lambda s: s.c)
    for lo, hi in zip(nodes, nodes[1:]):
        if c <= hi.c:
            w = (c - lo.c) / (hi.c - lo.c)
            return SurroundSpec(
                f=lo.f + w * (hi.f - lo.f),
                c=c,
                n_c=lo.n_c + w * (hi.n_c - lo.n_c),
            )
    raise AssertionError("unreachable")


def adapting_luminance_from_illuminance(e_w: float, y_b: float, y_w: float) -> float:
    """Adapting-field luminance L_A (cd/m^2) from illuminance of the reference white in lux."""
    for name, v in (("e_w", e_w), ("y_b", y_b), ("y_w", y_w)):
        if not _finite(name, v) > 0:
            raise DomainError(f"{name} must be positive, got {v!r}")
    return e_w / math.pi * y_b / y_w


# -------------------------------------------------------- viewing conditions


@dataclass(frozen=True)
class ViewingConditions:
    """Sample-independent parameters; build with :func:`viewing_conditions`."""

    white: XyzColor
    y_b: float
    l_a: float
    surround: SurroundSpec
    rgb_w: tuple[float, float, float]
    d: float
    d_rgb: tuple[float, float, float]
    f_l: float
    n: float
    z: float
    n_bb: float
    n_cb: float
    rgb_wc: tuple[float, float, float]
    rgb_aw: tuple[float, float, float]
    a_w: float
    discount_illuminant: bool = False
    # derived, cached for the per-sample steps
    f_l_root: float = field(init=False, repr=False)
    chroma_scale: float = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "f_l_root", self.f_l**0.25)
        object.__setattr__(self, "chroma_scale", (1.64 - 0.29**self.n) ** 0.73)

    @property
    def c(self) -> float:
        return self.surround.c

    @property
    def n_c(self) -> float:
        return self.surround.n_c


def viewing_conditions(
    white: XyzLike,
    y_b: float,
    l_a: float,
    surround: SurroundSpec | str = "average",
    discount_illuminant: bool = False,
) -> ViewingConditions:
    white = _as_xyz(white)
    for name, v in (("white.x", white.x), ("white.y", white.y), ("white.z", white.z),
                    ("y_b", y_b), ("l_a", l_a)):
        if not _finite(name, v) > 0:
            raise DomainError(f"{name} must be positive, got {v!r}")
    if isinstance(surround, str):
        surround = surround_preset(surround)
    y_b = float(y_b)
    l_a = float(l_a)

    rgb_w = tuple(
        row[0] * white.x + row[1] * white.y + row[2] * white.z for row in _M16
    )
    if discount_illuminant:
        d = 1.0
    else:
        d = surround.f * (1.0 - (1.0 / 3.6) * math.exp((-l_a - 42.0) / 92.0))
        d = min(max(d, 0.0), 1.0)
    d_rgb = tuple(d * white.y / v + 1.0 - d for v in rgb_w)

    k = 1.0 / (5.0 * l_a + 1.0)
    k4 = k**4
    f_l = k4 * l_a + 0.1 * (1.0 - k4) ** 2 * (5.0 * l_a) ** (1.0 / 3.0)
    n = y_b / white.y
    z = 1.48 + math.sqrt(n)
    n_bb = 0.725 / n**0.2

    rgb_wc = tuple(g * v for g, v in zip(d_rgb, rgb_w))
    rgb_aw = tuple(postadapt(v, f_l) for v in rgb_wc)
    a_w = (2.0 * rgb_aw[0] + rgb_aw[1] + rgb_aw[2] / 20.0) * n_bb
    if not a_w > 0:
        raise DomainError(f"white point gives non-positive achromatic response {a_w}")

    return ViewingConditions(
        white=white,
        y_b=y_b,
        l_a=l_a,
        surround=surround,
        rgb_w=rgb_w,
        d=d,
        d_rgb=d_rgb,
        f_l=f_l,
        n=n,
        z=z,
        n_bb=n_bb,
        n_cb=n_bb,
        rgb_wc=rgb_wc,
        rgb_aw=rgb_aw,
        a_w=a_w,
        discount_illuminant=bool(discount_illuminant),
    )


# ------------------------------------------------------------- compression


def postadapt(x: float, f_l: float) -> float:
    """Postadaptation compression, odd in ``x`` and bounded by +-400."""
    if x == 0.0:
        return 0.0
    q = (f_l * abs(x) / 100.0) ** 0.42
    return math.copysign(400.0 * q / (q + 27.13), x)


def postadapt_inverse(y: float, f_l: float) -> float:
    if y == 0.0:
        return 0.0
    ay = abs(y)
    if not ay < 400.0:
        raise UnrepresentableCorrelatesError(
            f"compressed cone response {y!r} outside (-400, 400)"
        )
    return math.copysign(100.0 / f_l * (27.13 * ay / (400.0 - ay)) ** (1.0 / 0.42), y)


# --------------------------------------------------------------------- hue


def eccentricity(h: float) -> float:
    return 0.25 * (math.cos(math.radians(h) + 2.0) + 3.8)


class HueComposition(NamedTuple):
    """Hue as integer percentages of two neighbouring unique hues."""

    left: str
    left_percent: int
    right: str
    right_percent: int

    def __str__(self) -> str:
        if self.right_percent == 0:
            return f"{self.left_percent}{self.left}"
        if self.left_percent == 0:
            return f"{self.right_percent}{self.right}"
        return f"{self.left_percent}{self.left}{self.right_percent}{self.right}"


def _segment(values: tuple[float, ...], v: float) -> int:
    return min(max(bisect_right(values, v) - 1, 0), 3)


def hue_composition(big_h: float) -> HueComposition:
    """Split hue quadrature ``H`` into neighbouring unique-hue percentages."""
    hq = UNIQUE_HUES.quadratures
    i = _segment(hq, big_h)
    left = math.floor(hq[i + 1] - big_h + 0.5)
    left = min(max(left, 0), 100)
    return HueComposition(
        UNIQUE_HUES.labels[i], left, UNIQUE_HUES.labels[i + 1], 100 - left
    )


def hue_quadrature(h: float) -> tuple[float, str]:
    """Hue quadrature ``H`` in [0, 400) and composition string for hue angle ``h``."""
    h = _finite("h", h) % 360.0
    angles, ecc, quad, _ = UNIQUE_HUES
    hp = h + 360.0 if h < angles[0] else h
    i = _segment(angles, hp)
    num = ecc[i + 1] * (hp - angles[i])
    big_h = quad[i] + 100.0 * num / (num + ecc[i] * (angles[i + 1] - hp))
    if big_h >= 400.0:
        big_h -= 400.0
    return big_h, str(hue_composition(big_h))


def hue_from_quadrature(big_h: float) -> float:
    """Hue angle in [0, 360) for hue quadrature ``H`` in [0, 400]."""
    big_h = _finite("H", big_h)
    if not 0.0 <= big_h <= 400.0:
        raise DomainError(f"hue quadrature {big_h} outside [0, 400]")
    angles, ecc, quad, _ = UNIQUE_HUES
    i = _segment(quad, big_h)
    dh = big_h - quad[i]
    hp = (dh * (ecc[i + 1] * angles[i] - ecc[i] * angles[i + 1])
          - 100.0 * angles[i] * ecc[i + 1]) / (
        dh * (ecc[i + 1] - ecc[i]) - 100.0 * ecc[i + 1]
    )
    if hp >= 360.0:
        hp -= 360.0
    return hp


# ----------------------------------------------------------------- forward


@dataclass(frozen=True)
class Cam16Correlates:
    """Appearance correlates of one stimulus.

    ``j`` lightness, ``c`` chroma, ``h`` hue angle (degrees), ``q`` brightness,
    ``m`` colorfulness, ``s`` saturation, ``big_h`` hue quadrature and ``h_c``
    hue composition.
    """

    j: float
    c: float
    h: float
    q: float
    m: float
    s: float
    big_h: float
    h_c: str

    def as_dict(self) -> dict:
        return {"J": self.j, "C": self.c, "h": self.h, "Q": self.q, "M": self.m,
                "s": self.s, "H": self.big_h, "H_c": self.h_c}


def _hue_angle(a: float, b: float) -> float:
    if a == 0.0 and b == 0.0:
        return 0.0
    h = math.degrees(math.atan2(b, a))
    if h < 0.0:
        h += 360.0
    if h >= 360.0:
        h -= 360.0
    return h


def forward(xyz: XyzLike, vc: ViewingConditions) -> Cam16Correlates:
    """Appearance correlates of tristimulus ``xyz`` under ``vc``."""
    xyz = _as_xyz(xyz)
    x, y, z = xyz.x, xyz.y, xyz.z
    f_l = vc.f_l
    rgb_a = [
        postadapt(g * (row[0] * x + row[1] * y + row[2] * z), f_l)
        for g, row in zip(vc.d_rgb, _M16)
    ]
    p2, a, b, u = (
        row[0] * rgb_a[0] + row[1] * rgb_a[1] + row[2] * rgb_a[2] for row in _OPP
    )

    h = _hue_angle(a, b)
    big_h, h_c = hue_quadrature(h)
    e_t = eccentricity(h + 360.0 if h < UNIQUE_HUES.angles[0] else h)

    achromatic = p2 * vc.n_bb
    if achromatic < 0.0:
        raise DomainError(f"negative achromatic response {achromatic} for {xyz}")
    if not u + 0.305 > 0.0:
        raise DomainError(f"chroma denominator u + 0.305 = {u + 0.305} not positive for {xyz}")

    c = vc.c
    j = 100.0 * (achromatic / vc.a_w) ** (c * vc.z)
    root_j = math.sqrt(j / 100.0)
    q = (4.0 / c) * root_j * (vc.a_w + 4.0) * vc.f_l_root

    t = _CHROMA_T * vc.n_c * vc.n_cb * e_t * math.hypot(a, b) / (u + 0.305)
    alpha = t**0.9 * vc.chroma_scale
    chroma = alpha * root_j
    return Cam16Correlates(
        j=j,
        c=chroma,
        h=h,
        q=q,
        m=chroma * vc.f_l_root,
        s=50.0 * math.sqrt(alpha * c / (vc.a_w + 4.0)),
        big_h=big_h,
        h_c=h_c,
    )


# ----------------------------------------------------------------- inverse

_LIGHTNESS = ("J", "Q")
_CHROMA = ("C", "M", "s")
_HUE = ("h", "H")


@dataclass(frozen=True)
class CorrelateSelection:
    """Inverse-model input: one of J/Q, one of C/M/s, one of h/H.

    >>> CorrelateSelection(J=50.0, C=20.0, h=120.0).key
    'JCh'
    """

    J: float | None = None
    Q: float | None = None
    C: float | None = None
    M: float | None = None
    s: float | None = None
    h: float | None = None
    H: float | None = None

    def __post_init__(self):
        for group in (_LIGHTNESS, _CHROMA, _HUE):
            given = [k for k in group if getattr(self, k) is not None]
            if len(given) != 1:
                raise DomainError(
                    f"exactly one of {'/'.join(group)} required, got {given or 'none'}"
                )
        for k in _LIGHTNESS + _CHROMA + _HUE:
            v = getattr(self, k)
            if v is None:
                continue
            v = _finite(k, v)
            object.__setattr__(self, k, v)
            if v < 0.0:
                raise DomainError(f"{k} must be non-negative, got {v}")
        if self.h is not None and not self.h < 360.0:
            raise DomainError(f"h must be in [0, 360), got {self.h}")
        if self.H is not None and not self.H <= 400.0:
            raise DomainError(f"H must be in [0, 400], got {self.H}")

    @property
    def key(self) -> str:
        return "".join(
            next(k for k in group if getattr(self, k) is not None)
            for group in (_LIGHTNESS, _CHROMA, _HUE)
        )

    @classmethod
    def from_correlates(cls, corr: Cam16Correlates, key: str = "JCh") -> "CorrelateSelection":
        """Pick the three correlates named by ``key`` (e.g. ``"QMH"``) out of ``corr``."""
        values = corr.as_dict()
        if len(key) != 3:
            raise DomainError(f"selection key must name three correlates, got {key!r}")
        return cls(**{k: values[k] for k in key})


def resolve_selection(sel: CorrelateSelection, vc: ViewingConditions) -> tuple[float, float, float]:
    """Reduce any selection to lightness ``J``, chroma intermediate ``t`` and hue angle ``h``."""
    if sel.J is not None:
        j = sel.J
    else:
        j = 6.25 * (vc.c * sel.Q / ((vc.a_w + 4.0) * vc.f_l_root)) ** 2

    if sel.s is not None:
        alpha = (sel.s / 50.0) ** 2 * (vc.a_w + 4.0) / vc.c
    else:
        chroma = sel.C if sel.C is not None else sel.M / vc.f_l_root
        alpha = 0.0 if j == 0.0 else chroma / math.sqrt(j / 100.0)
    t = (alpha / vc.chroma_scale) ** (1.0 / 0.9)

    h = sel.h if sel.h is not None else hue_from_quadrature(sel.H)
    return j, t, h


class OpponentState(NamedTuple):
    p2: float
    a: float
    b: float
    denominator: float


def opponent_components(j: float, t: float, h: float, vc: ViewingConditions) -> OpponentState:
    """Achromatic and opponent signals (p2, a, b) from J, t and h.

    ``denominator`` is the shared positive term of the closed-form ``a``/``b``.
    """
    hr = math.radians(h)
    cos_h, sin_h = math.cos(hr), math.sin(hr)
    p1 = eccentricity(h) * _CHROMA_T * vc.n_c * vc.n_cb
    p2 = vc.a_w * (j / 100.0) ** (1.0 / (vc.c * vc.z)) / vc.n_bb
    denom = 23.0 * p1 + 11.0 * t * cos_h + 108.0 * t * sin_h
    if not denom > 0.0:
        raise UnrepresentableCorrelatesError(
            f"chroma t={t} too large for hue {h} (denominator {denom})"
        )
    gamma = 23.0 * (p2 + 0.305) * t / denom
    return OpponentState(p2, gamma * cos_h, gamma * sin_h, denom)


def xyz_from_opponent(p2: float, a: float, b: float, vc: ViewingConditions) -> XyzColor:
    rgb = [
        postadapt_inverse((row[0] * p2 + row[1] * a + row[2] * b) / 1403.0, vc.f_l) / g
        for g, row in zip(vc.d_rgb, _OPP_INV)
    ]
    return XyzColor(
        *(row[0] * rgb[0] + row[1] * rgb[1] + row[2] * rgb[2] for row in _M16_INV)
    )


def inverse(sel: CorrelateSelection, vc: ViewingConditions) -> XyzColor:
    """Tristimulus values that produce the selected correlates under ``vc``."""
    j, t, h = resolve_selection(sel, vc)
    p2, a, b, _ = opponent_components(j, t, h, vc)
    return xyz_from_opponent(p2, a, b, vc)
