"""Cross-checks against the 40-digit step-by-step reference in tests/oracle."""

import csv
from pathlib import Path

import pytest

from cam16 import CorrelateSelection, forward, inverse

from conftest import STANDARD_WHITE, standard_conditions
from oracle import reference
from oracle.make_goldens import check_against_reference, fixture_rows

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("surround", ["average", "dim", "dark"])
@pytest.mark.parametrize("xyz", [(19.01, 20.0, 21.78), (41.24, 21.26, 1.93), (1.0, 90.0, 3.0), (0.001, 0.002, 0.003)])
def test_forward_inverse_against_reference(xyz, surround):
    vc = standard_conditions(surround)
    ref_vc = reference.conditions(STANDARD_WHITE, 20.0, 318.31, surround)
    assert vc.a_w == pytest.approx(float(ref_vc["A_w"]), rel=1e-14)
    res = forward(xyz, vc)
    ref = reference.forward(xyz, ref_vc)
    for key, field in (("J", "j"), ("Q", "q"), ("h", "h"), ("H", "big_h")):
        assert getattr(res, field) == pytest.approx(float(ref[key]), rel=1e-12)
    for key, field in (("C", "c"), ("M", "m"), ("s", "s")):
        assert getattr(res, field) == pytest.approx(float(ref[key]), rel=1e-11)
    back = inverse(CorrelateSelection(J=res.j, C=res.c, h=res.h), vc)
    want = reference.inverse_jch(res.j, res.c, res.h, ref_vc)
    assert tuple(back) == pytest.approx([float(v) for v in want], rel=1e-12)


def test_committed_goldens_agree_with_reference():
    rows = fixture_rows()
    fixture = list(csv.reader((DATA / "fixture_xyz.csv").open()))[1:]
    assert [tuple(map(float, r)) for r in fixture] == rows
    worst = check_against_reference(
        rows, (DATA / "golden_forward.csv").read_text(), (DATA / "golden_inverse.csv").read_text()
    )
    assert worst < 1e-11
