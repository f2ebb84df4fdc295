"""Brute-force finite-difference eigenvalues, independent of the transfer-matrix path.

The Hamiltonian ``-d^2/dx^2 + V(x)`` is discretised with the 3-point Laplacian
on a uniform grid with Dirichlet ends and its lowest eigenvalues are located
by bisection on the Sturm count of the tridiagonal matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GridError
from .potential import Delta, Rect, WellSpec


@dataclass(frozen=True)
class GridConfig:
    """``pad`` is the exterior length kept on each side of a finite well.

    ``None`` picks eight decay lengths at mid-window, ``8 / sqrt(min(v1, v2) / 2)``.
    """

    n: int = 20000
    n_levels: int = 5
    pad: Optional[float] = None

    def __post_init__(self):
        if self.n < 100:
            raise GridError(f"need at least 100 grid points, got {self.n}")
        if self.n_levels < 1:
            raise GridError("n_levels must be positive")
        if self.pad is not None and self.pad < 0:
            raise GridError("pad must be non-negative")


@dataclass(frozen=True)
class Discretization:
    x: np.ndarray
    h: float
    diag: np.ndarray

    @property
    def off2(self) -> float:
        """Square of the (constant) off-diagonal element."""
        return 1.0 / self.h**4


def default_pad(spec: WellSpec) -> float:
    if spec.infinite:
        return 0.0
    return 8.0 / math.sqrt(spec.top / 2)


def discretize(spec: WellSpec, n: int = 20000, pad: Optional[float] = None) -> Discretization:
    """Tridiagonal Hamiltonian of ``spec`` on about ``n`` nodes.

    Infinite walls use nodes ``x_i = i h`` with ``h = d/(n+1)`` so the wave
    function vanishes at 0 and d.  Finite walls use cell centres with the well
    edges on cell boundaries, padded by ``pad`` on both sides.
    """
    d = spec.d
    if spec.infinite:
        if pad:
            raise GridError("pad must be zero for infinite walls")
        h = d / (n + 1)
        x = h * np.arange(1, n + 1)
        v = np.zeros(n)
    else:
        pad = default_pad(spec) if pad is None else pad
        m = max(int(round(n * d / (d + 2 * pad))), 1)
        p = (n - m) // 2
        h = d / m
        x = h * (np.arange(-p, m + p) + 0.5)
        v = np.where(x < 0, spec.v1, np.where(x > d, spec.v2, 0.0))

    for el in spec.elements:
        if isinstance(el, Rect):
            # cell averages keep the discretisation second order at interfaces
            covered = np.clip(np.minimum(x + h / 2, el.right) - np.maximum(x - h / 2, el.left),
                              0.0, None)
            v += el.height * covered / h
        elif isinstance(el, Delta):
            j = int(np.argmin(np.abs(x - el.position)))
            v[j] += el.strength / h

    return Discretization(x=x, h=h, diag=2.0 / h**2 + v)


def sturm_count(disc: Discretization, lam: float) -> int:
    """Number of eigenvalues strictly below ``lam``."""
    b2 = disc.off2
    tiny = 1e-300
    count = 0
    q = 1.0
    first = True
    for a in disc.diag.tolist():
        if first:
            q = a - lam
            first = False
        else:
            q = a - lam - b2 / q
        if q == 0.0:
            q = -tiny
        if q < 0:
            count += 1
    return count


def _kth_eigenvalue(disc: Discretization, j: int, lo: float, hi: float, rtol: float) -> float:
    """Bisection for the ``j``-th (0-based) eigenvalue inside ``[lo, hi]``."""
    while hi - lo > rtol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        if sturm_count(disc, mid) > j:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def finite_difference_levels(spec: WellSpec, cfg: Optional[GridConfig] = None,
                             rtol: float = 1e-12) -> list:
    """Lowest ``cfg.n_levels`` eigenvalues (only those below ``min(v1, v2)`` for finite walls)."""
    cfg = cfg or GridConfig()
    if cfg.n_levels > cfg.n:
        raise GridError(f"{cfg.n} grid points cannot resolve {cfg.n_levels} levels")
    disc = discretize(spec, cfg.n, cfg.pad)
    lower = float(np.min(disc.diag)) - 2.0 / disc.h**2
    upper = float(np.max(disc.diag)) + 2.0 / disc.h**2
    if not spec.infinite:
        upper = spec.top
    available = sturm_count(disc, upper)
    levels = []
    for j in range(min(cfg.n_levels, available)):
        lo = levels[-1] if levels else lower
        levels.append(_kth_eigenvalue(disc, j, lo, upper, rtol))
    return levels


def count_levels_below(spec: WellSpec, energy: float, n: int = 20000,
                       pad: Optional[float] = None) -> int:
    """Finite-difference estimate of the number of bound states below ``energy``."""
    return sturm_count(discretize(spec, n, pad), energy)
