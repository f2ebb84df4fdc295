"""Well model: wall heights, width and the interior potential elements.

Units throughout the package use hbar^2 / 2m = 1, so energies are in
length^-2 and delta strengths in length^-1.  The well occupies [0, d]; the
potential equals ``v1`` to the left of 0 and ``v2`` to the right of d.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Union

from .errors import GeometryError, OverlapError, RangeError, SchemaError

INFINITE = math.inf


@dataclass(frozen=True)
class Delta:
    """Point interaction ``g * delta(x - position)``."""

    position: float
    strength: float

    @property
    def left(self) -> float:
        return self.position

    @property
    def right(self) -> float:
        return self.position


@dataclass(frozen=True)
class Rect:
    """Constant potential ``height`` on ``[left, left + width]``."""

    left: float
    width: float
    height: float

    @property
    def right(self) -> float:
        return self.left + self.width

    @property
    def center(self) -> float:
        return self.left + 0.5 * self.width


Element = Union[Delta, Rect]


@dataclass(frozen=True)
class WellSpec:
    v1: float
    v2: float
    d: float
    elements: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    @property
    def infinite(self) -> bool:
        return math.isinf(self.v1) or math.isinf(self.v2)

    @property
    def top(self) -> float:
        """Upper edge of the bound-state window, ``min(v1, v2)``."""
        return min(self.v1, self.v2)


def _sort_key(el: Element):
    # deltas sitting on a rect edge go first so composition stays spatial
    return (el.left, el.right, isinstance(el, Rect))


def validate(spec: WellSpec) -> WellSpec:
    """Check every invariant of ``spec`` and return it with sorted elements.

    Raises
    ------
    GeometryError
        Non-positive width or wall height, or only one infinite wall.
    RangeError
        An element extends outside ``[0, d]``.
    OverlapError
        Two elements share an interval of positive length, or a delta sits
        strictly inside a rectangle.
    """
    d, v1, v2 = spec.d, spec.v1, spec.v2
    if not (math.isfinite(d) and d > 0):
        raise GeometryError(f"well width must be positive and finite, got {d!r}")
    for name, v in (("v1", v1), ("v2", v2)):
        if math.isnan(v) or v <= 0:
            raise GeometryError(f"{name} must be positive, got {v!r}")
    if math.isinf(v1) != math.isinf(v2):
        raise GeometryError("walls must be both finite or both infinite")

    for el in spec.elements:
        if isinstance(el, Delta):
            if not (0 < el.position < d):
                raise RangeError(f"delta at {el.position} lies outside (0, {d})")
            if not math.isfinite(el.strength):
                raise RangeError(f"delta strength must be finite, got {el.strength}")
        elif isinstance(el, Rect):
            if not (el.width > 0 and math.isfinite(el.width)):
                raise RangeError(f"rect width must be positive, got {el.width}")
            if el.left < 0 or el.right > d:
                raise RangeError(
                    f"rect [{el.left}, {el.right}] lies outside [0, {d}]")
            if not math.isfinite(el.height):
                raise RangeError(f"rect height must be finite, got {el.height}")
        else:
            raise TypeError(f"unknown element type {type(el).__name__}")

    elements = tuple(sorted(spec.elements, key=_sort_key))
    rects = [el for el in elements if isinstance(el, Rect)]
    for a, b in zip(rects, rects[1:]):
        if b.left < a.right:
            raise OverlapError(f"{a} and {b} overlap")
    for el in elements:
        if isinstance(el, Delta):
            for r in rects:
                if r.left < el.position < r.right:
                    raise OverlapError(f"{el} lies inside {r}")
    return replace(spec, elements=elements)


def from_dimensionless(x: float, y: float, u: float, v: float) -> WellSpec:
    """Symmetric well holding one rectangular barrier, with barrier width 1.

    ``x`` is barrier width over well width, ``y`` the gap between the left
    wall and the barrier in barrier widths, ``u`` the barrier height and
    ``v`` the wall height, both in units of (barrier width)^-2.
    """
    if not (0 < x <= 1):
        raise RangeError(f"x must lie in (0, 1], got {x}")
    d = 1.0 / x
    if y < 0 or y + 1.0 > d * (1 + 1e-12):
        raise RangeError(f"barrier at y={y} does not fit (y must be <= {d - 1:.6g})")
    left = min(float(y), d - 1.0)
    return validate(WellSpec(v1=v, v2=v, d=d, elements=(Rect(left, 1.0, u),)))


def mirror(spec: WellSpec) -> WellSpec:
    """Reflect the well about its midpoint (walls swap sides)."""
    d = spec.d
    flipped = []
    for el in spec.elements:
        if isinstance(el, Delta):
            flipped.append(Delta(d - el.position, el.strength))
        else:
            flipped.append(Rect(d - el.right, el.width, el.height))
    return validate(WellSpec(spec.v2, spec.v1, d, flipped))


# ---------------------------------------------------------------- JSON I/O

_TOP_KEYS = {"v1", "v2", "d", "elements"}
_ELEMENT_KEYS = {"delta": {"type", "x", "g"}, "rect": {"type", "a", "w", "u"}}


def _wall(value: Any, name: str) -> float:
    if value == "inf":
        return INFINITE
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{name} must be a number or \"inf\", got {value!r}")
    return float(value)


def _number(obj: dict, key: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"field {key!r} must be a number, got {value!r}")
    return float(value)


def well_from_dict(data: dict) -> WellSpec:
    """Build and validate a well from the JSON layout.

    ``{"v1": .., "v2": .., "d": .., "elements": [{"type": "delta", "x", "g"}
    | {"type": "rect", "a", "w", "u"}]}``; walls may be the string "inf".
    """
    if not isinstance(data, dict):
        raise SchemaError("well description must be a JSON object")
    extra = set(data) - _TOP_KEYS
    missing = {"v1", "v2", "d"} - set(data)
    if extra:
        raise SchemaError(f"unknown fields: {sorted(extra)}")
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")
    raw = data.get("elements", [])
    if not isinstance(raw, list):
        raise SchemaError("elements must be a list")
    elements = []
    for item in raw:
        if not isinstance(item, dict) or item.get("type") not in _ELEMENT_KEYS:
            raise SchemaError(f"element needs type 'delta' or 'rect': {item!r}")
        keys = _ELEMENT_KEYS[item["type"]]
        if set(item) != keys:
            raise SchemaError(f"{item['type']} element must have exactly {sorted(keys)}")
        if item["type"] == "delta":
            elements.append(Delta(_number(item, "x"), _number(item, "g")))
        else:
            elements.append(Rect(_number(item, "a"), _number(item, "w"), _number(item, "u")))
    spec = WellSpec(_wall(data["v1"], "v1"), _wall(data["v2"], "v2"),
                    _number(data, "d"), elements)
    return validate(spec)


def well_to_dict(spec: WellSpec) -> dict:
    def wall(v):
        return "inf" if math.isinf(v) else v

    elements = []
    for el in spec.elements:
        if isinstance(el, Delta):
            elements.append({"type": "delta", "x": el.position, "g": el.strength})
        else:
            elements.append({"type": "rect", "a": el.left, "w": el.width, "u": el.height})
    return {"v1": wall(spec.v1), "v2": wall(spec.v2), "d": spec.d, "elements": elements}


def load_well(path) -> WellSpec:
    """Read a well description file; JSON syntax errors become SchemaError."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return well_from_dict(data)
