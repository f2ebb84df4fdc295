import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boundwell import (INFINITE, Delta, GeometryError, OverlapError, RangeError, Rect,
                       SchemaError, WellSpec, from_dimensionless, load_well, mirror,
                       validate, well_from_dict, well_to_dict)


def test_empty_well_is_valid():
    spec = validate(WellSpec(5, 5, 1.0))
    assert spec.elements == ()
    assert spec.top == 5


def test_overlapping_rects_rejected():
    with pytest.raises(OverlapError):
        validate(WellSpec(5, 5, 1.0, [Rect(0.2, 0.5, 1.0), Rect(0.4, 0.3, 1.0)]))


def test_delta_outside_rejected():
    with pytest.raises(RangeError):
        validate(WellSpec(5, 5, 1.0, [Delta(1.5, 1.0)]))


@pytest.mark.parametrize("v1,v2,d", [(5, 5, 0.0), (5, 5, -1.0), (0, 5, 1.0),
                                     (5, -2, 1.0), (INFINITE, 5, 1.0)])
def test_bad_geometry(v1, v2, d):
    with pytest.raises(GeometryError):
        validate(WellSpec(v1, v2, d))


def test_touching_rects_and_edge_delta_allowed():
    spec = validate(WellSpec(5, 5, 2.0, [Rect(1.0, 0.5, 2.0), Delta(1.0, 3.0),
                                         Rect(0.5, 0.5, -1.0)]))
    assert [el.left for el in spec.elements] == [0.5, 1.0, 1.0]
    assert isinstance(spec.elements[1], Delta)


def test_delta_inside_rect_rejected():
    with pytest.raises(OverlapError):
        validate(WellSpec(5, 5, 2.0, [Rect(0.5, 1.0, 2.0), Delta(1.0, 3.0)]))


def test_rect_reaching_past_wall():
    with pytest.raises(RangeError):
        validate(WellSpec(5, 5, 1.0, [Rect(0.6, 0.5, 1.0)]))


@st.composite
def wells(draw):
    d = draw(st.floats(0.5, 10))
    n = draw(st.integers(0, 5))
    cuts = sorted(draw(st.lists(st.floats(0.01, 0.99), min_size=2 * n, max_size=2 * n,
                                unique=True)))
    elements = []
    for i in range(n):
        lo, hi = cuts[2 * i] * d, cuts[2 * i + 1] * d
        if draw(st.booleans()):
            elements.append(Rect(lo, hi - lo, draw(st.floats(-20, 20))))
        else:
            elements.append(Delta(lo, draw(st.floats(-20, 20))))
    draw(st.randoms()).shuffle(elements)
    v = draw(st.floats(0.1, 100))
    return WellSpec(v, draw(st.floats(0.1, 100)), d, elements)


@given(wells())
def test_validate_idempotent(spec):
    once = validate(spec)
    assert validate(once) == once


@given(st.floats(0.05, 1.0), st.floats(0, 1), st.floats(-5, 5), st.floats(0.1, 50))
def test_from_dimensionless_always_valid(x, frac, u, v):
    y = frac * (1 / x - 1)
    spec = from_dimensionless(x, y, u, v)
    assert validate(spec) == spec


@given(st.floats(0.05, 1.0), st.floats(0, 1), st.floats(-5, 5))
def test_from_dimensionless_mirror(x, frac, u):
    y = frac * (1 / x - 1)
    a = from_dimensionless(x, y, u, 5.0)
    b = from_dimensionless(x, 1 / x - 1 - y, u, 5.0)
    m = mirror(a)
    assert m.d == pytest.approx(b.d)
    assert m.elements[0].left == pytest.approx(b.elements[0].left, abs=1e-9)


def test_from_dimensionless_examples():
    spec = from_dimensionless(0.3, 0, 0, 5)
    assert spec.d == pytest.approx(10 / 3)
    assert spec.v1 == spec.v2 == 5
    assert spec.elements == (Rect(0.0, 1.0, 0.0),)

    spec = from_dimensionless(0.2, 0, 2, 5)
    assert spec.d == pytest.approx(5.0)
    assert spec.elements == (Rect(0.0, 1.0, 2.0),)

    with pytest.raises(RangeError):
        from_dimensionless(0.3, 2.4, 1, 5)


def test_json_round_trip(tmp_path):
    data = {"v1": "inf", "v2": "inf", "d": 2.0,
            "elements": [{"type": "rect", "a": 0.5, "w": 0.2, "u": 3.0},
                         {"type": "delta", "x": 1.5, "g": -1.0}]}
    path = tmp_path / "well.json"
    path.write_text(json.dumps(data))
    spec = load_well(path)
    assert math.isinf(spec.v1) and spec.infinite
    assert well_to_dict(spec) == data


@pytest.mark.parametrize("data", [
    {"v1": 1, "v2": 1, "d": 1, "extra": 0},
    {"v1": 1, "v2": 1},
    {"v1": 1, "v2": 1, "d": 1, "elements": [{"type": "rect", "a": 0, "w": 1}]},
    {"v1": 1, "v2": 1, "d": 1, "elements": [{"type": "delta", "x": 0.5, "g": 1, "w": 1}]},
    {"v1": 1, "v2": 1, "d": 1, "elements": [{"type": "step"}]},
    {"v1": "big", "v2": 1, "d": 1},
])
def test_schema_errors(data):
    with pytest.raises(SchemaError):
        well_from_dict(data)


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"v1": 5,')
    with pytest.raises(SchemaError):
        load_well(path)
