"""CAM16 color appearance model.

``cam16.core`` holds the model itself, ``cam16.legacy`` the original
formulation used as a reference, ``cam16.batch`` the array API backed by
compiled kernels when available.
"""

from .batch import BACKEND, forward_batch, inverse_batch, legacy_inverse_batch
from .core import (
    M16,
    M16_INV,
    SURROUNDS,
    UNIQUE_HUES,
    Cam16Correlates,
    Cam16Error,
    CorrelateSelection,
    DomainError,
    HueComposition,
    SurroundSpec,
    UnrepresentableCorrelatesError,
    ViewingConditions,
    XyzColor,
    adapting_luminance_from_illuminance,
    eccentricity,
    forward,
    hue_composition,
    hue_from_quadrature,
    hue_quadrature,
    inverse,
    postadapt,
    postadapt_inverse,
    surround_interpolate,
    surround_preset,
    viewing_conditions,
)
from .legacy import legacy_forward, legacy_inverse, legacy_postadapt

__version__ = "0.1.0"
