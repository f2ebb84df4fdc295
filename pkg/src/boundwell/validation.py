"""Self-checks run by ``boundwell validate``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import WellError
from .oracle import GridConfig, finite_difference_levels
from .potential import INFINITE, Delta, Rect, WellSpec, from_dimensionless
from .scattering import (compose, delta_coefficients, interior_coefficients,
                         rect_chain_coefficients, rect_coefficients, shift)
from .spectrum import (SolverConfig, find_bound_states, plane_bottom_levels,
                       spectrum_residual, transmission_pole_residual)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_flux(cfg: SolverConfig, seed: int = 0) -> CheckResult:
    """Single elements: absolute 1e-12.  Products: relative to |alpha|^2 + |beta|^2."""
    rng = np.random.default_rng(seed)
    k = rng.uniform(0.5, 10.0, 2000)
    worst_abs = worst_rel = 0.0
    for U, w, g, x in rng.uniform([-10, 1e-3, -10, -3], [10, 1.0, 10, 3], size=(100, 4)):
        a = shift(rect_coefficients(U, w, k), x)
        b = shift(delta_coefficients(g, k), -x)
        worst_abs = max(worst_abs, np.max(np.abs(a.flux_defect())),
                        np.max(np.abs(b.flux_defect())))
        ab = compose(a, b)
        size = np.abs(ab.alpha) ** 2 + np.abs(ab.beta) ** 2
        worst_rel = max(worst_rel, np.max(np.abs(ab.flux_defect()) / size))
    ok = worst_abs < 1e-12 and worst_rel < 1e-13
    return CheckResult("flux", ok, f"element {worst_abs:.2e}, composed (relative) {worst_rel:.2e}")


def check_chebyshev(cfg: SolverConfig) -> CheckResult:
    worst = 0.0
    k = np.linspace(0.3, 8.0, 200)
    for N in range(1, 9):
        for U, l, a in ((4.0, 0.3, 1.0), (-3.0, 0.5, 1.2), (30.0, 0.1, 0.7)):
            explicit = interior_coefficients(
                WellSpec(INFINITE, INFINITE, 0.2 + N * a,
                         [Rect(0.1 + j * a, l, U) for j in range(N)]), k**2)
            closed = rect_chain_coefficients(U, l, a, 0.1 + 0.5 * l, N, k)
            scale = np.abs(explicit.alpha)
            err = np.max(np.maximum(np.abs(explicit.alpha - closed.alpha),
                                    np.abs(explicit.beta - closed.beta)) / scale)
            worst = max(worst, err)
    return CheckResult("chebyshev", worst < 1e-10, f"max relative deviation {worst:.2e}")


def check_reduction(cfg: SolverConfig) -> CheckResult:
    worst, detail = 0.0, ""
    for v, d in ((25.0, 1.0), (125.0, 1.0), (5.0, 10 / 3)):
        general = find_bound_states(WellSpec(v, v, d), cfg).energies
        closed = plane_bottom_levels(v, d)
        if len(general) != len(closed):
            return CheckResult("reduction", False,
                               f"v={v}, d={d}: {len(general)} vs {len(closed)} levels")
        worst = max(worst, max(abs(a - b) for a, b in zip(general, closed)))
    detail = f"max |E_general - E_closed| = {worst:.2e}"
    return CheckResult("reduction", worst < 1e-9, detail)


def check_pole(cfg: SolverConfig) -> CheckResult:
    wells = [
        WellSpec(6.0, 9.0, 2.0, [Rect(0.3, 0.5, 2.0), Delta(1.5, -1.0)]),
        from_dimensionless(0.3, 0.7, 1.2, 5.0),
        WellSpec(40.0, 25.0, 1.0, [Delta(0.4, 3.0)]),
    ]
    worst = 0.0
    for spec in wells:
        levels = find_bound_states(spec, cfg).energies
        if not levels:
            return CheckResult("pole", False, "well without bound states")
        grid = np.linspace(spec.top * 1e-3, spec.top * (1 - 1e-3), 200)
        scale = np.max(np.abs(transmission_pole_residual(spec, grid)))
        at_roots = np.abs(transmission_pole_residual(spec, np.array(levels)))
        worst = max(worst, float(np.max(at_roots)) / scale)
    return CheckResult("pole", worst < 1e-6, f"max |bracket| / scale at roots = {worst:.2e}")


def check_oracle(cfg: SolverConfig) -> CheckResult:
    worst = 0.0
    for spec in (WellSpec(25.0, 25.0, 1.0), from_dimensionless(0.3, 0.0, 2.0, 5.0)):
        levels = find_bound_states(spec, cfg).energies
        if not levels:
            return CheckResult("oracle", False, "no bound states found")
        chi = math.sqrt(spec.top - levels[-1])
        fd = finite_difference_levels(
            spec, GridConfig(n=20000, n_levels=len(levels), pad=max(8 / chi, 1.0)))
        if len(fd) != len(levels):
            return CheckResult("oracle", False, f"{len(levels)} levels vs oracle {len(fd)}")
        worst = max(worst, max(abs(a - b) / b for a, b in zip(fd, levels)))
    return CheckResult("oracle", worst < 1e-4, f"max relative deviation {worst:.2e}")


CHECKS: dict[str, Callable[[SolverConfig], CheckResult]] = {
    "flux": check_flux,
    "chebyshev": check_chebyshev,
    "reduction": check_reduction,
    "pole": check_pole,
    "oracle": check_oracle,
}


def run_checks(name_filter: Optional[str] = None,
               cfg: Optional[SolverConfig] = None) -> list:
    cfg = cfg or SolverConfig()
    selected = [n for n in CHECKS if name_filter is None or name_filter in n]
    results = []
    for name in selected:
        try:
            results.append(CHECKS[name](cfg))
        except WellError as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
