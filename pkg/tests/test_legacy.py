import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cam16 import (
    CorrelateSelection,
    UnrepresentableCorrelatesError,
    forward,
    inverse,
    legacy_forward,
    legacy_inverse,
    legacy_postadapt,
    postadapt,
)
from cam16.legacy import legacy_achromatic_white

from conftest import STANDARD_WHITE, domain_samples, max_rel, standard_conditions

FIELDS = ("j", "c", "h", "q", "m", "s", "big_h")


def test_legacy_postadapt_examples():
    assert legacy_postadapt(0.0, 1.2) == 0.1
    assert legacy_postadapt(100.0, 1.0) == pytest.approx(400.0 / 28.13 + 0.1, rel=1e-15)


@given(st.floats(-1e6, 1e6, allow_nan=False), st.floats(0.01, 10))
def test_legacy_postadapt_offset_identity(x, f_l):
    assert legacy_postadapt(x, f_l) - postadapt(x, f_l) == pytest.approx(0.1, abs=1e-13)
    assert legacy_postadapt(-x, f_l) + legacy_postadapt(x, f_l) == pytest.approx(0.2, abs=1e-13)


def test_legacy_achromatic_white_matches_core(vc_any):
    assert legacy_achromatic_white(vc_any) == pytest.approx(vc_any.a_w, rel=1e-13)


def test_legacy_zero_input_residuals(vc):
    res = legacy_forward((0.0, 0.0, 0.0), vc)
    # order-of-magnitude classes of the original formulation at black
    assert 1e-25 < res.j < 1e-19
    assert 1e-12 < res.q < 1e-8
    assert 1e-7 < res.s < 1e-4
    assert 0.0 < res.c < 1e-20 and 0.0 < res.m < 1e-20


def test_legacy_white_point():
    vc = standard_conditions(discount_illuminant=True)
    assert legacy_forward(STANDARD_WHITE, vc).j == pytest.approx(100.0, abs=1e-6)


def test_legacy_forward_matches_core(vc_any):
    for xyz, core in domain_samples(500, vc_any, seed=99)[0]:
        leg = legacy_forward(xyz, vc_any)
        for f in FIELDS:
            assert max_rel(getattr(leg, f), getattr(core, f)) < 1e-8, f


def test_legacy_nan_where_core_rejects(vc):
    _, rejected = domain_samples(3000, vc, seed=7)
    assert rejected
    for xyz in rejected:
        assert math.isnan(legacy_forward(xyz, vc).j)


def test_legacy_inverse_matches_core(vc_any):
    for xyz, core in domain_samples(300, vc_any, seed=11)[0]:
        sel = CorrelateSelection.from_correlates(legacy_forward(xyz, vc_any), "JCh")
        assert max_rel(tuple(legacy_inverse(sel, vc_any)), tuple(inverse(sel, vc_any))) < 1e-8


@pytest.mark.parametrize("key", ["QMH", "JsH", "QsH", "JMh"])
def test_legacy_inverse_selections(vc, key):
    res = forward((41.24, 21.26, 1.93), vc)
    sel = CorrelateSelection.from_correlates(res, key)
    assert max_rel(tuple(legacy_inverse(sel, vc)), tuple(inverse(sel, vc))) < 1e-8


@pytest.mark.parametrize("h", [90.0, 0.0, 180.0, 270.0])
def test_legacy_inverse_axis_hues(vc, h):
    sel = CorrelateSelection(J=50.0, C=30.0, h=h)
    got = legacy_inverse(sel, vc)
    assert all(math.isfinite(v) for v in got)
    assert max_rel(tuple(got), tuple(inverse(sel, vc))) < 1e-8


def test_legacy_inverse_zero_chroma_branch(vc):
    sel = CorrelateSelection(J=42.0, C=0.0, h=200.0)
    assert max_rel(tuple(legacy_inverse(sel, vc)), tuple(inverse(sel, vc))) < 1e-10


def test_legacy_inverse_black_is_nan(vc):
    # 0/0 in t: the original steps have no answer at J = 0
    assert all(math.isnan(v) for v in legacy_inverse(CorrelateSelection(J=0.0, C=0.0, h=0.0), vc))


def test_legacy_inverse_branch_continuity(vc):
    # |sin h| = |cos h| at 45 degrees: outputs straddling the switch must not jump
    outs = [np.array(tuple(legacy_inverse(CorrelateSelection(J=50.0, C=40.0, h=h), vc)))
            for h in (45.0 - 1e-9, 45.0, 45.0 + 1e-9)]
    assert np.max(np.abs(np.diff(outs, axis=0))) < 1e-3
    for h in (44.9, 45.0, 45.1):
        sel = CorrelateSelection(J=50.0, C=40.0, h=h)
        assert max_rel(tuple(legacy_inverse(sel, vc)), tuple(inverse(sel, vc))) < 1e-8


@pytest.mark.parametrize("fn", [inverse, legacy_inverse])
def test_inverse_guard_on_compressed_response(vc, fn):
    # J = 1e4 pushes the achromatic signal past the 400 ceiling
    with pytest.raises(UnrepresentableCorrelatesError, match="outside"):
        fn(CorrelateSelection(J=1e4, C=0.0, h=0.0), vc)
