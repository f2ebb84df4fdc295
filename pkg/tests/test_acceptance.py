"""Acceptance criteria, one test each, at their stated tolerances.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
one PASS/FAIL line per criterion.
"""
import math

import numpy as np
from scipy.optimize import brentq

from boundwell import (INFINITE, Delta, GridConfig, Rect, SolverConfig, WellSpec,
                       compose, delta_coefficients, finite_difference_levels,
                       find_bound_states, from_dimensionless, interior_coefficients,
                       plane_bottom_levels, rect_chain_coefficients, rect_coefficients,
                       shift, spectrum_residual, transmission_pole_residual)
from boundwell.sweep import (SweepSpec, band_gap_ratios, equidistance_defect,
                             equidistant_height, escape_height, periodic_well, run_sweep,
                             single_barrier_levels)


def _zeros(f, lo, hi, n=40000):
    """Sign changes of ``f`` on a k-uniform grid, refined with brentq."""
    k = np.linspace(math.sqrt(lo), math.sqrt(hi), n)
    vals = f(k**2)
    roots = []
    for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
        roots.append(brentq(lambda e: float(f(np.array([e]))[0]), k[i] ** 2, k[i + 1] ** 2,
                            xtol=1e-14, rtol=1e-15))
    return roots


def test_closed_form_reduction(criterion):
    spec = WellSpec(25.0, 25.0, 1.0)
    general = list(find_bound_states(spec).energies)
    closed = plane_bottom_levels(25.0, 1.0)
    chi = math.sqrt(25.0 - general[-1])
    fd = finite_difference_levels(
        spec, GridConfig(n=20000, n_levels=len(general), pad=max(8 / chi, 1.0)))
    same_count = len(general) == len(closed) == len(fd)
    dev_closed = max(abs(a - b) for a, b in zip(general, closed))
    dev_fd = max(max(abs(a - b) / b for a, b in zip(fd, general)),
                 max(abs(a - b) / b for a, b in zip(fd, closed)))
    criterion(1, same_count and dev_closed < 1e-9 and dev_fd < 1e-4,
              f"{len(general)} levels; general vs closed {dev_closed:.1e} abs; "
              f"vs oracle {dev_fd:.1e} rel")


def test_infinite_empty_well(criterion):
    d = 1.3
    cfg = SolverConfig(e_max=(5.5 * math.pi / d) ** 2)
    found = find_bound_states(WellSpec(INFINITE, INFINITE, d), cfg).energies
    exact = [(n * math.pi / d) ** 2 for n in range(1, 6)]
    dev = max(abs(a - b) / b for a, b in zip(found, exact))
    criterion(2, len(found) == 5 and dev < 1e-9,
              f"{len(found)} levels, max relative deviation {dev:.1e}")


def test_level_counts(criterion):
    n02 = len(find_bound_states(from_dimensionless(0.2, 0.0, 0.0, 5.0)))
    n03 = len(find_bound_states(from_dimensionless(0.3, 0.0, 0.0, 5.0)))
    criterion(3, n02 == 4 and n03 == 3, f"x=0.2: {n02} levels, x=0.3: {n03} levels")


def _defects(x, us):
    rows = run_sweep(SweepSpec("barrier_height", us[0], us[-1], len(us), 3,
                               {"x": x, "y": 0.0, "v": 5.0}))
    return [(u, None if None in levels else equidistance_defect(levels))
            for u, *levels in rows]


def test_equidistance(criterion):
    rows = _defects(0.3, np.linspace(0.0, 3.3, 34))
    bracket = next((a[0], b[0]) for a, b in zip(rows, rows[1:])
                   if a[1] is not None and b[1] is not None and a[1] * b[1] < 0)
    u_eq = equidistant_height(0.3, 0.0, 5.0, *bracket, tol=1e-8)
    e1, e2, e3 = single_barrier_levels(0.3, 0.0, u_eq, 5.0)[:3]
    located = abs(u_eq - 1.845) < 0.05 and e1 < u_eq < e2 < e3

    impossible = {}
    for x in (0.2, 0.25):
        ds = [d for _, d in _defects(x, np.linspace(0.01, 5.0, 200)) if d is not None]
        crossing = any(a * b <= 0 for a, b in zip(ds, ds[1:]))
        impossible[x] = (not crossing, min(abs(d) for d in ds))
    ok = located and all(v[0] for v in impossible.values())
    criterion(4, ok,
              f"u_eq={u_eq:.4f}, E=({e1:.4f}, {e2:.4f}, {e3:.4f}); "
              + ", ".join(f"x={x}: min|defect|={m:.3f}" for x, (_, m) in impossible.items()))


def test_level_escape(criterion):
    at_30 = len(single_barrier_levels(0.3, 0.0, 3.0, 5.0))
    at_32 = len(single_barrier_levels(0.3, 0.0, 3.2, 5.0))
    u_esc = escape_height(0.3, 0.0, 5.0, 3, 3.0, 4.0, tol=1e-6)
    ok = at_30 >= 3 and at_32 < 3 and abs(u_esc - 3.1) < 0.15
    criterion(5, ok, f"levels at u=3.0: {at_30}, at u=3.2: {at_32}; "
                     f"third level escapes at u={u_esc:.4f}")


def test_delta_at_node(criterion):
    d = 1.0
    cfg = SolverConfig(e_max=600.0)
    spectra = {g: find_bound_states(
        WellSpec(INFINITE, INFINITE, d, [Delta(0.5 * d, g)]), cfg).energies
        for g in (0.0, 1.0, 10.0, 100.0)}
    pinned = [(2 * math.pi * n / d) ** 2 for n in (1, 2, 3)]
    pin_dev = other_dev = 0.0
    for g, levels in spectra.items():
        for target in pinned:
            near = min(levels, key=lambda e: abs(e - target))
            ref = min(spectra[0.0], key=lambda e: abs(e - target))
            pin_dev = max(pin_dev, abs(near - ref))
        for e in levels:
            if min(abs(e - t) for t in pinned) > 1e-6:
                k = math.sqrt(e)
                other_dev = max(other_dev, abs(1 / math.tan(k * d / 2) + g / (2 * k)))
    criterion(6, pin_dev < 1e-9 and other_dev < 1e-8,
              f"pinned spread {pin_dev:.1e}, |ctg(kd/2) + g/2k| <= {other_dev:.1e}")


def _random_well(rng):
    v1, v2 = rng.uniform(5, 60, 2)
    d = rng.uniform(0.5, 3.0)
    elements, cursor = [], 0.0
    for _ in range(rng.integers(0, 4)):
        left = cursor + rng.uniform(0.02, 0.3) * d
        if rng.random() < 0.5:
            width = rng.uniform(0.05, 0.25) * d
            if left + width >= d:
                break
            elements.append(Rect(left, width, rng.uniform(-10, 15)))
            cursor = left + width
        else:
            if left >= d:
                break
            elements.append(Delta(left, rng.uniform(-4, 6)))
            cursor = left
    return WellSpec(v1, v2, d, elements)


def test_pole_equivalence(criterion):
    rng = np.random.default_rng(7)
    worst, counts = 0.0, []
    ok = True
    for _ in range(10):
        spec = _random_well(rng)
        lo = 1e-9
        levels = list(find_bound_states(spec).energies)
        poles = _zeros(lambda e: np.imag(transmission_pole_residual(spec, e)),
                       lo, spec.top - 1e-9)
        counts.append((len(levels), len(poles)))
        if len(levels) != len(poles):
            ok = False
            continue
        if levels:
            worst = max(worst, max(abs(a - b) for a, b in zip(levels, poles)))
    ok = ok and worst < 1e-8
    criterion(7, ok, f"counts (residual, pole) {counts}; max |dE| {worst:.1e}")


def test_chebyshev_equivalence(criterion):
    k = np.linspace(0.3, 8.0, 400)
    worst_rel = worst_flux = 0.0
    for N in range(1, 9):
        for U, l, a in ((4.0, 0.3, 1.0), (-3.0, 0.5, 1.2), (30.0, 0.1, 0.7)):
            explicit = interior_coefficients(
                WellSpec(INFINITE, INFINITE, 0.2 + N * a,
                         [Rect(0.1 + j * a, l, U) for j in range(N)]), k**2)
            closed = rect_chain_coefficients(U, l, a, 0.1 + 0.5 * l, N, k)
            scale = np.abs(explicit.alpha)
            worst_rel = max(worst_rel, float(np.max(np.maximum(
                np.abs(explicit.alpha - closed.alpha),
                np.abs(explicit.beta - closed.beta)) / scale)))
            inv_t2 = np.abs(closed.alpha) ** 2
            flux = np.abs(inv_t2 - np.abs(closed.beta) ** 2 - 1) / inv_t2
            worst_flux = max(worst_flux, float(np.max(flux)))
    criterion(8, worst_rel < 1e-10 and worst_flux < 1e-10,
              f"closed vs composed {worst_rel:.1e} rel; flux {worst_flux:.1e} rel")


def test_band_grouping(criterion):
    U, w, l = 180.0, 1.0, 0.2
    cfg = SolverConfig(e_max=45.0)
    details, ok = [], True
    for N in range(3, 9):
        spec = periodic_well(N, w, l, U)
        levels = list(find_bound_states(spec, cfg).energies)
        size = N + 1
        ratios = band_gap_ratios(levels, size)
        # every gap inside a block must stay below the boundary threshold too
        blocks = [levels[i:i + size] for i in range(0, len(levels), size)]
        inner = max(max(np.diff(b)) / (b[-1] - b[0]) for b in blocks if len(b) > 1)
        good = (len(levels) == 2 * size and len(ratios) == 1 and ratios[0] > 3
                and inner <= 1.0)
        ok = ok and good
        details.append(f"N={N}: {len(levels)} levels, ratio {ratios[0] if ratios else 0:.2f}")
    criterion(9, ok, "; ".join(details))


def test_property_suite(criterion):
    rng = np.random.default_rng(2024)
    samples = 10_000
    k = rng.uniform(0.5, 10.0, samples)
    kinds = rng.integers(0, 2, samples)
    U = rng.uniform(-10, 10, samples)
    w = rng.uniform(1e-3, 1.0, samples)
    g = rng.uniform(-10, 10, samples)
    x = rng.uniform(-3, 3, samples)
    flux = 0.0
    for i in range(samples):
        el = (rect_coefficients(U[i], w[i], k[i]) if kinds[i]
              else delta_coefficients(g[i], k[i]))
        flux = max(flux, float(np.max(np.abs(shift(el, x[i]).flux_defect()))))

    kk = np.linspace(0.5, 10.0, 500)
    a = shift(rect_coefficients(2.0, 0.3, kk), -0.7)
    b = shift(delta_coefficients(-1.5, kk), 0.1)
    c = shift(rect_coefficients(-4.0, 0.2, kk), 0.6)
    left, right = compose(compose(a, b), c), compose(a, compose(b, c))
    assoc = float(np.max(np.abs(left.alpha - right.alpha) + np.abs(left.beta - right.beta)))

    base = rect_coefficients(3.0, 0.4, kk)
    s1, s2 = shift(shift(base, 0.37), -1.21), shift(base, 0.37 - 1.21)
    additive = float(np.max(np.abs(s1.beta - s2.beta) + np.abs(s1.alpha - s2.alpha)))

    # thin barrier of area g against a delta of strength g, over the sampling box
    width = 1e-4
    gs, ks = rng.uniform(-10, 10, 1000), rng.uniform(0.5, 10.0, 1000)
    limit = max(float(np.abs(rect_coefficients(gi / width, width, ki).alpha
                             - delta_coefficients(gi, ki).alpha)
                      + np.abs(rect_coefficients(gi / width, width, ki).beta
                               - delta_coefficients(gi, ki).beta))
                for gi, ki in zip(gs, ks))
    ok = flux < 1e-12 and assoc < 1e-12 and additive < 1e-12 and limit < 1e-6
    criterion(10, ok, f"flux {flux:.1e}, associativity {assoc:.1e}, shift {additive:.1e}, "
                      f"rect->delta at w=1e-4 {limit:.1e}")
