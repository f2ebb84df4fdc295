"""Parameter sweeps over single-barrier and periodic wells, plus level analysis."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import SchemaError
from .potential import INFINITE, Rect, WellSpec, from_dimensionless, validate
from .scattering import rect_chain_coefficients
from .spectrum import SolverConfig, find_bound_states

MODES = ("barrier_height", "barrier_position", "periodic_height")

_MODE_KEYS = {
    "barrier_height": ({"x", "y", "v"}, set()),
    "barrier_position": ({"x", "u", "v"}, set()),
    "periodic_height": ({"N"}, {"w", "l"}),
}


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    start: float
    stop: float
    steps: int
    n_levels: int = 3
    fixed: dict = field(default_factory=dict)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


def sweep_from_dict(data: dict) -> SweepSpec:
    if not isinstance(data, dict):
        raise SchemaError("sweep description must be a JSON object")
    mode = data.get("mode")
    if mode not in MODES:
        raise SchemaError(f"mode must be one of {MODES}, got {mode!r}")
    required, optional = _MODE_KEYS[mode]
    allowed = required | optional | {"mode", "param", "n_levels"}
    extra = set(data) - allowed
    if extra:
        raise SchemaError(f"fields not used by mode {mode!r}: {sorted(extra)}")
    missing = (required | {"param"}) - set(data)
    if missing:
        raise SchemaError(f"missing fields: {sorted(missing)}")

    param = data["param"]
    if not isinstance(param, dict) or set(param) != {"from", "to", "steps"}:
        raise SchemaError('param must be {"from": .., "to": .., "steps": ..}')
    start, stop, steps = param["from"], param["to"], param["steps"]
    if not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in (start, stop)):
        raise SchemaError("param.from and param.to must be numbers")
    if not isinstance(steps, int) or isinstance(steps, bool) or steps < 2:
        raise SchemaError("param.steps must be an integer >= 2")
    if not start < stop:
        raise SchemaError("param.from must be below param.to")

    fixed = {}
    for key in required | optional:
        if key in data:
            value = data[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(f"{key} must be a number")
            fixed[key] = value
    if mode == "periodic_height":
        if not isinstance(fixed["N"], int) or fixed["N"] < 1:
            raise SchemaError("N must be a positive integer")
        fixed.setdefault("w", 1.0)
        fixed.setdefault("l", 0.2)
    n_levels = data.get("n_levels", fixed.get("N", 2) + 1 if mode == "periodic_height" else 3)
    if not isinstance(n_levels, int) or isinstance(n_levels, bool) or n_levels < 1:
        raise SchemaError("n_levels must be a positive integer")
    return SweepSpec(mode, float(start), float(stop), steps, n_levels, fixed)


def load_sweep(path) -> SweepSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return sweep_from_dict(data)


def periodic_well(N: int, w: float, l: float, U: float) -> WellSpec:
    """Infinite well cut into ``N + 1`` free sub-wells of width ``w`` by ``N`` barriers."""
    d = (N + 1) * w + N * l
    rects = [Rect(w + j * (w + l), l, U) for j in range(N)]
    return validate(WellSpec(INFINITE, INFINITE, d, rects))


def periodic_levels(N: int, w: float, l: float, U: float, n_levels: int,
                    cfg: Optional[SolverConfig] = None) -> list:
    """Lowest ``n_levels`` of :func:`periodic_well`, using the Chebyshev closed form."""
    spec = periodic_well(N, w, l, U)
    # the n-th level cannot exceed the n-th empty-well level shifted up by max(U, 0)
    e_max = ((n_levels + 1) * math.pi / spec.d) ** 2 + max(U, 0.0) + 1.0
    base = cfg or SolverConfig()
    cfg = SolverConfig(base.grid_points, base.tol_e, base.tol_res, base.edge_offset,
                       e_max, base.max_iter)

    def chain(_, E):
        return rect_chain_coefficients(U, l, w + l, w + 0.5 * l, N, np.sqrt(E))

    return list(find_bound_states(spec, cfg, coefficients=chain).energies[:n_levels])


def _lowest(spec: WellSpec, n_levels: int, cfg: Optional[SolverConfig]) -> list:
    energies = list(find_bound_states(spec, cfg).energies[:n_levels])
    return energies + [None] * (n_levels - len(energies))


def run_sweep(sweep: SweepSpec, cfg: Optional[SolverConfig] = None) -> list:
    """Rows ``(param, E1, ..., En)``; ``None`` marks a level that left the well."""
    f = sweep.fixed
    rows = []
    for p in sweep.values():
        p = float(p)
        if sweep.mode == "barrier_height":
            levels = _lowest(from_dimensionless(f["x"], f["y"], p, f["v"]), sweep.n_levels, cfg)
        elif sweep.mode == "barrier_position":
            levels = _lowest(from_dimensionless(f["x"], p, f["u"], f["v"]), sweep.n_levels, cfg)
        else:
            levels = periodic_levels(f["N"], f["w"], f["l"], p, sweep.n_levels, cfg)
        rows.append((p, *levels))
    return rows


def format_csv(rows, n_levels: int) -> str:
    """CSV text with 12 significant digits and ``escaped`` for missing levels."""
    out = io.StringIO()
    out.write(",".join(["param"] + [f"E{i}" for i in range(1, n_levels + 1)]) + "\n")
    for row in rows:
        cells = ["escaped" if v is None else f"{v:.12g}" for v in row]
        out.write(",".join(cells) + "\n")
    return out.getvalue()


# ------------------------------------------------------------------ analysis

def equidistance_defect(levels) -> float:
    """``(E3 - E2) - (E2 - E1)`` for the three lowest levels."""
    e1, e2, e3 = levels[:3]
    return (e3 - e2) - (e2 - e1)


def _bisect_param(pred, lo: float, hi: float, tol: float) -> float:
    """Boundary between ``pred(lo)`` and ``pred(hi)``, which must differ."""
    plo = pred(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid) == plo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def single_barrier_levels(x: float, y: float, u: float, v: float,
                          cfg: Optional[SolverConfig] = None) -> tuple:
    return find_bound_states(from_dimensionless(x, y, u, v), cfg).energies


def escape_height(x: float, y: float, v: float, level: int, lo: float, hi: float,
                  tol: float = 1e-6, cfg: Optional[SolverConfig] = None) -> float:
    """Barrier height at which bound state number ``level`` (1-based) leaves the well."""
    def present(u):
        return len(single_barrier_levels(x, y, u, v, cfg)) >= level

    if present(lo) == present(hi):
        raise ValueError(f"level {level} does not change status between u={lo} and u={hi}")
    return _bisect_param(present, lo, hi, tol)


def equidistant_height(x: float, y: float, v: float, lo: float, hi: float,
                       tol: float = 1e-8, cfg: Optional[SolverConfig] = None) -> float:
    """Barrier height where the three lowest levels are equally spaced."""
    def positive(u):
        return equidistance_defect(single_barrier_levels(x, y, u, v, cfg)) > 0

    if positive(lo) == positive(hi):
        raise ValueError(f"no sign change of the equidistance defect on [{lo}, {hi}]")
    return _bisect_param(positive, lo, hi, tol)


def band_gap_ratios(levels, band_size: int) -> list:
    """Gap over bandwidth at each boundary between consecutive blocks of ``band_size`` levels.

    The bandwidth used for a boundary is the larger span of the two blocks it
    separates.  Trailing levels that do not fill a block are ignored.
    """
    levels = sorted(levels)
    blocks = [levels[i:i + band_size]
              for i in range(0, len(levels) - band_size + 1, band_size)]
    ratios = []
    for lower, upper in zip(blocks, blocks[1:]):
        width = max(lower[-1] - lower[0], upper[-1] - upper[0])
        gap = upper[0] - lower[-1]
        ratios.append(math.inf if width == 0 else gap / width)
    return ratios
