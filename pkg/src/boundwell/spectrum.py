"""Bound-state energies from the interior transfer coefficients.

With ``k = sqrt(E)`` and decay constants ``chi_i = sqrt(v_i - E)``, a bound
state of a finite well satisfies ``tan(kd) = Num / Den`` where Num and Den are
linear in the real and imaginary parts of alpha and beta.  The root finder
works with the pole-free form ``sin(kd) Den - cos(kd) Num``.  Infinite walls
reduce this to ``sin(kd)(Re a - Re b) - cos(kd)(Im b - Im a)``.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConvergenceError, DomainError, FiniteWallError, InfiniteWallError
from .potential import WellSpec
from .scattering import TransferCoefficients, interior_coefficients

log = logging.getLogger(__name__)

CoefficientSource = Callable[[WellSpec, np.ndarray], TransferCoefficients]

_REFINE = 16
_MAX_DEPTH = 8


@dataclass(frozen=True)
class SolverConfig:
    """Scan and bisection settings for :func:`find_bound_states`.

    ``edge_offset`` insets the window from both ends relative to its size;
    ``e_max`` caps the window and is mandatory for infinite walls.
    """

    grid_points: int = 2000
    tol_e: float = 1e-10
    tol_res: float = 1e-8
    edge_offset: float = 1e-9
    e_max: Optional[float] = None
    max_iter: int = 200

    def __post_init__(self):
        if int(self.grid_points) != self.grid_points or self.grid_points < 16:
            raise ValueError(f"grid_points must be an integer >= 16, got {self.grid_points}")
        for name in ("tol_e", "tol_res", "edge_offset", "max_iter"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.edge_offset < 0.5:
            raise ValueError("edge_offset must be below 0.5")
        if self.e_max is not None and not self.e_max > 0:
            raise ValueError("e_max must be positive")


@dataclass(frozen=True)
class SpectrumResult:
    energies: tuple
    residuals: tuple
    brackets: tuple
    window: tuple

    def __len__(self):
        return len(self.energies)


# ------------------------------------------------------------------ residuals

def _finite_parts(spec: WellSpec, E, coefficients: Optional[CoefficientSource]):
    if spec.infinite:
        raise InfiniteWallError("walls are infinite; use spectrum_residual_infinite")
    E = np.asarray(E, dtype=float)
    if np.any(~((E > 0) & (E < spec.top))):
        raise DomainError(f"energy must lie in (0, {spec.top})")
    tc = (coefficients or interior_coefficients)(spec, E)
    k = np.sqrt(E)
    c1, c2 = np.sqrt(spec.v1 - E), np.sqrt(spec.v2 - E)
    ra, ia = np.real(tc.alpha), np.imag(tc.alpha)
    rb, ib = np.real(tc.beta), np.imag(tc.beta)
    num = k * (c1 + c2) * ra + (c1 * c2 - k**2) * ia - (c1 * c2 + k**2) * ib - k * (c1 - c2) * rb
    den = k * (c1 + c2) * ia - (c1 * c2 - k**2) * ra + (c1 * c2 + k**2) * rb - k * (c1 - c2) * ib
    return k, c1, c2, tc, num, den


def spectrum_residual(spec: WellSpec, E, coefficients: Optional[CoefficientSource] = None):
    """Pole-free bound-state residual for a well with finite walls.

    ``coefficients`` replaces :func:`interior_coefficients` when given.
    """
    k, _, _, _, num, den = _finite_parts(spec, E, coefficients)
    kd = k * spec.d
    return np.sin(kd) * den - np.cos(kd) * num


def matching_determinant(spec: WellSpec, E, coefficients: Optional[CoefficientSource] = None):
    """Determinant of the 2x2 wall-matching system (complex, purely imaginary)."""
    k, c1, c2, tc, _, _ = _finite_parts(spec, E, coefficients)
    a, b = tc.alpha, tc.beta
    e = np.exp(1j * k * spec.d)
    m21 = (c2 + 1j * k) * a * e + (c2 - 1j * k) * np.conj(b) / e
    m22 = (c2 + 1j * k) * b * e + (c2 - 1j * k) * np.conj(a) / e
    return (c1 - 1j * k) * m22 - (c1 + 1j * k) * m21


def _infinite_parts(spec: WellSpec, E, coefficients):
    if not spec.infinite:
        raise FiniteWallError("walls are finite; use spectrum_residual")
    E = np.asarray(E, dtype=float)
    if np.any(~(E > 0)):
        raise DomainError("energy must be positive")
    tc = (coefficients or interior_coefficients)(spec, E)
    k = np.sqrt(E)
    p = np.real(tc.alpha) - np.real(tc.beta)
    s = np.imag(tc.beta) - np.imag(tc.alpha)
    return k, p, s


def spectrum_residual_infinite(spec: WellSpec, E,
                               coefficients: Optional[CoefficientSource] = None):
    """Bound-state residual for a well with infinite walls."""
    k, p, s = _infinite_parts(spec, E, coefficients)
    kd = k * spec.d
    return np.sin(kd) * p - np.cos(kd) * s


def _signed_scaled(spec: WellSpec, E, coefficients=None):
    E = np.asarray(E, dtype=float)
    if spec.infinite:
        k, p, q = _infinite_parts(spec, E, coefficients)
        amp = np.hypot(p, q)
        raw = np.sin(k * spec.d) * p - np.cos(k * spec.d) * q
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(amp > 0, raw / amp, 0.0)
    k, c1, c2, tc, num, den = _finite_parts(spec, E, coefficients)
    amp = np.hypot(num, den)
    raw = np.sin(k * spec.d) * den - np.cos(k * spec.d) * num
    size = (k + c1) * (k + c2) * (np.abs(tc.alpha) + np.abs(tc.beta))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = raw / amp
        degenerate = amp <= 1e-12 * size
        if np.any(degenerate):
            # Num and Den vanish together: let the matching determinant decide
            det = np.abs(matching_determinant(spec, E, coefficients)) / size
            out = np.where(degenerate, det, out)
    return out


def scaled_residual(spec: WellSpec, E, coefficients: Optional[CoefficientSource] = None):
    """Residual divided by its amplitude, i.e. ``|sin|`` of a phase mismatch.

    This is the quantity compared with ``SolverConfig.tol_res``; unlike the
    raw residual it does not grow with the size of the transfer coefficients.
    """
    return np.abs(_signed_scaled(spec, E, coefficients))


# -------------------------------------------------------------- root finding

def _bisect(f, lo, hi, flo, tol, max_iter):
    """Shrink a sign-change bracket to width ``tol``; returns (root, lo, hi).

    The final estimate interpolates linearly inside the terminal bracket.
    """
    fhi = None
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid, lo, hi
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    else:
        if hi - lo > tol:
            raise ConvergenceError(
                f"bisection stalled at width {hi - lo:.3g} > {tol:.3g} after {max_iter} steps")
    if fhi is None:
        fhi = f(hi)
    if fhi != flo:
        root = lo - flo * (hi - lo) / (fhi - flo)
        root = min(max(root, lo), hi)
    else:
        root = 0.5 * (lo + hi)
    return root, lo, hi


def _brackets(f, grid, values, depth):
    """Sign-change cells of ``values`` sampled on ``grid``.

    ``f`` must be amplitude-free (a sine of a phase mismatch).  Two refinements
    catch roots a single cell cannot separate: runs of adjacent sign changes,
    and dips of ``|f|`` that turn back before crossing zero (a close root pair
    inside one cell).  Both are resampled ``_REFINE`` times finer, up to
    ``depth`` levels deep.
    """
    s = np.sign(values)
    exact = [float(e) for e in grid[s == 0]]
    cells = set(np.flatnonzero(s[:-1] * s[1:] < 0).tolist())
    brackets = []
    zoom = []
    for i in sorted(cells):
        if depth > 0 and (i - 1 in cells or i + 1 in cells):
            zoom.append((grid[i], grid[i + 1]))
        else:
            brackets.append((float(grid[i]), float(grid[i + 1])))
    if depth > 0:
        a = np.abs(values)
        dips = np.flatnonzero((a[1:-1] < a[:-2]) & (a[1:-1] < a[2:])
                              & (s[:-2] == s[1:-1]) & (s[1:-1] == s[2:])) + 1
        for i in dips:
            zoom.append((grid[i - 1], grid[i + 1]))
    for lo, hi in zoom:
        sub = np.linspace(lo, hi, _REFINE + 1)
        sub_exact, sub_brackets = _brackets(f, sub, f(sub), depth - 1)
        exact.extend(sub_exact)
        brackets.extend(sub_brackets)
    return exact, brackets


def search_window(spec: WellSpec, cfg: SolverConfig) -> tuple:
    if spec.infinite:
        if cfg.e_max is None:
            raise DomainError("e_max must be set for infinite walls")
        return cfg.edge_offset * cfg.e_max, cfg.e_max
    W = spec.top
    hi = (1 - cfg.edge_offset) * W
    if cfg.e_max is not None:
        hi = min(hi, cfg.e_max)
    return cfg.edge_offset * W, hi


def find_bound_states(spec: WellSpec, cfg: Optional[SolverConfig] = None,
                      coefficients: Optional[CoefficientSource] = None,
                      cross_check: bool = False) -> SpectrumResult:
    """All bound-state energies of ``spec`` inside the search window.

    The window is scanned on a grid uniform in ``k = sqrt(E)``, sign changes are bisected to
    ``cfg.tol_e`` and candidates whose scaled residual exceeds ``cfg.tol_res``
    are dropped.  With ``cross_check`` the number of levels is compared with a
    finite-difference eigenvalue count and a mismatch is reported as a
    warning.
    """
    cfg = cfg or SolverConfig()
    lo, hi = search_window(spec, cfg)

    def f(E):
        return _signed_scaled(spec, E, coefficients)

    # levels are roughly evenly spaced in k, so sample uniformly in sqrt(E)
    grid = np.linspace(math.sqrt(lo), math.sqrt(hi), int(cfg.grid_points)) ** 2
    grid[0], grid[-1] = lo, hi
    exact, brackets = _brackets(f, grid, f(grid), _MAX_DEPTH)

    found = [(E, (E, E)) for E in exact]
    for a, b in brackets:
        fa = float(f(a))
        root, _, _ = _bisect(lambda e: float(f(e)), a, b, fa, cfg.tol_e, cfg.max_iter)
        found.append((root, (a, b)))
    found.sort(key=lambda item: item[0])

    energies, residuals, cells = [], [], []
    for E, cell in found:
        res = float(scaled_residual(spec, E, coefficients))
        if res > cfg.tol_res:
            log.debug("dropping candidate %.12g with residual %.3g", E, res)
            continue
        if energies and E - energies[-1] <= cfg.tol_e:
            continue
        energies.append(float(E))
        residuals.append(res)
        cells.append((float(cell[0]), float(cell[1])))

    result = SpectrumResult(tuple(energies), tuple(residuals), tuple(cells), (lo, hi))
    if cross_check:
        from .oracle import count_levels_below

        expected = count_levels_below(spec, hi) - count_levels_below(spec, lo)
        if expected != len(energies):
            warnings.warn(
                f"found {len(energies)} levels in {lo:.6g}..{hi:.6g} but the "
                f"finite-difference count is {expected}", RuntimeWarning, stacklevel=2)
    return result


# ------------------------------------------------------------ closed forms

def plane_bottom_levels(v: float, d: float) -> list:
    """Levels of a symmetric flat-bottomed well of depth ``v`` and width ``d``.

    Even states solve ``tan(kd/2) = chi/k`` and odd states
    ``cot(kd/2) = -chi/k``; each branch has at most one root per half period.
    """
    if not (v > 0 and d > 0):
        raise DomainError("v and d must be positive")
    tmax = math.sqrt(v) * d / 2

    def s(t):
        return math.sqrt(max(tmax * tmax - t * t, 0.0))

    def even(t):
        return t * math.sin(t) - s(t) * math.cos(t)

    def odd(t):
        return t * math.cos(t) + s(t) * math.sin(t)

    thetas = []
    n = 0
    while n * math.pi / 2 < tmax:
        start = n * math.pi / 2
        stop = min(start + math.pi / 2, tmax)
        branch = even if n % 2 == 0 else odd
        fa, fb = branch(start), branch(stop)
        if fa * fb < 0:
            t, _, _ = _bisect(branch, start, stop, fa, 1e-15 * max(1.0, tmax), 400)
            if t < tmax:
                thetas.append(t)
        n += 1
    return sorted((2 * t / d) ** 2 for t in thetas)


def plane_bottom_infinite_levels(d: float, n_max: int) -> list:
    if not d > 0:
        raise DomainError("d must be positive")
    return [(n * math.pi / d) ** 2 for n in range(1, n_max + 1)]


def delta_well_residual(g: float, d1: float, d: float, v: float, E):
    """Residual for a symmetric well of depth ``v`` with one delta at ``d1``.

    Returns ``(B+Au) s1 s2 - (B-Au) c1 c2 + C sin(kd)`` with ``s_i = sin(k d_i)``,
    ``c_i = cos(k d_i)``, ``u = g/2k``, ``A = 1 + (k/chi)^2``,
    ``B = (1 - (k/chi)^2) u - 2k/chi`` and ``C = 1 - (k/chi)^2 + g/chi``.
    This is the product-of-sines form multiplied through by C so that it has
    no poles.  Note the sign of ``g/chi`` in C: it is fixed by agreement with
    the general residual for a delta element.  ``v`` may be infinite.
    """
    E = np.asarray(E, dtype=float)
    if not (0 < d1 < d):
        raise DomainError(f"delta position must lie in (0, {d})")
    if np.any(~((E > 0) & (E < v))):
        raise DomainError(f"energy must lie in (0, {v})")
    k = np.sqrt(E)
    u = g / (2 * k)
    if math.isinf(v):
        ratio, inv_chi = np.zeros_like(k), np.zeros_like(k)
    else:
        chi = np.sqrt(v - E)
        ratio, inv_chi = k / chi, 1.0 / chi
    A = 1 + ratio**2
    B = (1 - ratio**2) * u - 2 * ratio
    C = (1 - ratio**2) + g * inv_chi
    d2 = d - d1
    s1, s2 = np.sin(k * d1), np.sin(k * d2)
    c1, c2 = np.cos(k * d1), np.cos(k * d2)
    return (B + A * u) * s1 * s2 - (B - A * u) * c1 * c2 + C * np.sin(k * d)


def transmission_pole_residual(spec: WellSpec, E,
                               coefficients: Optional[CoefficientSource] = None):
    """Bracketed factor of the inverse transmission amplitude of the whole well.

    Evaluated at the imaginary outer wavenumbers ``i chi_1``, ``i chi_2``; it
    vanishes exactly at bound states.  The nonvanishing prefactor is omitted.
    """
    k, c1, c2, tc, _, _ = _finite_parts(spec, E, coefficients)
    t, r = tc.t, tc.r
    k1, k2 = 1j * c1, 1j * c2
    ep = np.exp(1j * k * spec.d)
    em = 1.0 / ep
    return ((k2 - k) * (k - k1) / np.conj(t) * ep
            + (k2 + k) * (k + k1) / t * em
            + (k + k2) * (k1 - k) * r / t * em
            + (k - k2) * (k + k1) * np.conj(r) / np.conj(t) * ep)
