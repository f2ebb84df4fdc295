"""Transfer coefficients of interior potential elements.

A fragment of potential with zero potential on both sides maps plane-wave
amplitudes ``A exp(ikx) + B exp(-ikx)`` from its left to its right by

    (A2, B2) = [[alpha, beta], [conj(beta), conj(alpha)]] (A1, B1)

with ``alpha = 1/conj(t)`` and ``beta = -conj(r)/conj(t)``.  Amplitudes are
always referred to the global origin, so free stretches between elements
contribute the identity and the position of an element enters only through
the phase of ``beta`` (see :func:`shift`).

Every function accepts scalar or array wavenumbers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, MismatchError
from .potential import Delta, Rect, WellSpec

_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class TransferCoefficients:
    alpha: complex
    beta: complex
    k: float

    @property
    def t(self):
        """Transmission amplitude."""
        return 1.0 / np.conj(self.alpha)

    @property
    def r(self):
        """Reflection amplitude for incidence from the left."""
        return -np.conj(self.beta) / np.conj(self.alpha)

    def matrix(self) -> np.ndarray:
        a, b = complex(self.alpha), complex(self.beta)
        return np.array([[a, b], [b.conjugate(), a.conjugate()]])

    def flux_defect(self):
        """``|alpha|^2 - |beta|^2 - 1``; zero for real k and real potentials."""
        return np.abs(self.alpha) ** 2 - np.abs(self.beta) ** 2 - 1.0


@dataclass(frozen=True)
class PeriodicCoefficients:
    inv_T: complex
    R_over_T: complex
    bloch_cos: float
    N: int

    def as_transfer(self, k) -> TransferCoefficients:
        return TransferCoefficients(np.conj(self.inv_T), -np.conj(self.R_over_T), k)


def _check_k(k):
    k = np.asarray(k, dtype=float)
    if np.any(~(k > 0)):
        raise DomainError("wavenumber must be positive")
    return k


def identity(k) -> TransferCoefficients:
    k = _check_k(k)
    one = np.ones_like(k, dtype=complex)
    return TransferCoefficients(one, np.zeros_like(one), k)


def _inner_wavenumber(U, k):
    return np.sqrt(np.asarray(k, dtype=complex) ** 2 - U)


def _sin_over_q(q, w):
    """``sin(q w) / q`` without the 0/0 at q = 0."""
    z = q * w
    small = np.abs(z) < _SERIES_CUTOFF
    z2 = z * z
    series = w * (1 - z2 / 6 * (1 - z2 / 20 * (1 - z2 / 42 * (1 - z2 / 72))))
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.sin(z) / q
    return np.where(small, series, direct)


def delta_coefficients(g: float, k) -> TransferCoefficients:
    """Coefficients of ``g * delta(x)`` sitting at the origin."""
    k = _check_k(k)
    h = 1j * g / (2 * k)
    return TransferCoefficients(1 - h, -h, k)


def rect_coefficients(U: float, w: float, k) -> TransferCoefficients:
    """Coefficients of a barrier of height ``U`` and width ``w`` centred at 0.

    ``q = sqrt(k^2 - U)`` may be real, imaginary or zero; the expressions are
    even in ``q`` so the branch is irrelevant.
    """
    k = _check_k(k)
    if not w > 0:
        raise DomainError(f"barrier width must be positive, got {w}")
    q = _inner_wavenumber(U, k)
    sq = _sin_over_q(q, w)
    cos_qw = np.cos(q * w)
    # sin, not cos, in the imaginary part: required by |alpha|^2 - |beta|^2 = 1
    alpha = np.exp(-1j * k * w) * (cos_qw + 1j * (k**2 + q**2) / (2 * k) * sq)
    # sign fixed by the thin-barrier limit, which must reproduce a delta of strength U*w
    beta = -1j * (k**2 - q**2) / (2 * k) * sq
    return TransferCoefficients(alpha, beta, k)


def shift(tc: TransferCoefficients, x_c: float) -> TransferCoefficients:
    """Move a fragment from the origin to ``x_c``."""
    return TransferCoefficients(tc.alpha, tc.beta * np.exp(-2j * tc.k * x_c), tc.k)


def compose(outer: TransferCoefficients, inner: TransferCoefficients) -> TransferCoefficients:
    """Coefficients of ``inner`` followed (to the right) by ``outer``."""
    if not np.allclose(outer.k, inner.k, rtol=1e-13, atol=0):
        raise MismatchError("cannot compose coefficients at different wavenumbers")
    alpha = outer.alpha * inner.alpha + outer.beta * np.conj(inner.beta)
    beta = outer.alpha * inner.beta + outer.beta * np.conj(inner.alpha)
    return TransferCoefficients(alpha, beta, outer.k)


def element_coefficients(el, k) -> TransferCoefficients:
    """Coefficients of one element at its absolute position."""
    if isinstance(el, Delta):
        return shift(delta_coefficients(el.strength, k), el.position)
    if isinstance(el, Rect):
        return shift(rect_coefficients(el.height, el.width, k), el.center)
    raise TypeError(f"unknown element type {type(el).__name__}")


def interior_coefficients(spec: WellSpec, E) -> TransferCoefficients:
    """Coefficients of everything between the walls at energy ``E``."""
    E = np.asarray(E, dtype=float)
    if np.any(~(E > 0)):
        raise DomainError("energy must be positive for a real interior wavenumber")
    k = np.sqrt(E)
    total = identity(k)
    for el in spec.elements:
        total = compose(element_coefficients(el, k), total)
    return total


def bloch_cos_rect(U: float, l: float, a: float, k):
    """Cosine of the Bloch phase for barriers of width ``l`` repeated with period ``a``."""
    k = _check_k(k)
    if not (0 < l <= a):
        raise DomainError(f"need 0 < l <= a, got l={l}, a={a}")
    q = _inner_wavenumber(U, k)
    gap = a - l
    val = (np.cos(k * gap) * np.cos(q * l)
           - (q**2 + k**2) / (2 * k) * np.sin(k * gap) * _sin_over_q(q, l))
    return np.real(val)


def chebyshev_u(n: int, x):
    """Chebyshev polynomial of the second kind ``U_n(x)``; ``U_{-1} = 0``."""
    x = np.asarray(x, dtype=float)
    if n < 0:
        return np.zeros_like(x)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def periodic_coefficients(t1_inv, r1_over_t1, a: float, N: int, k) -> PeriodicCoefficients:
    """Closed form for ``N`` identical fragments repeated with period ``a``.

    ``t1_inv`` and ``r1_over_t1`` describe the first fragment at its actual
    position.  ``sin(N b) / sin(b)`` is evaluated as ``U_{N-1}(cos b)`` so band
    gaps (``|cos b| > 1``) need no complex Bloch phase.
    """
    if int(N) != N or N < 1:
        raise DomainError(f"number of periods must be a positive integer, got {N}")
    N = int(N)
    k = _check_k(k)
    phase = np.exp(-1j * k * a) * t1_inv
    x = np.real(phase)
    u_n1 = chebyshev_u(N - 1, x)
    cos_nb = x * u_n1 - chebyshev_u(N - 2, x)
    inv_T = np.exp(1j * k * N * a) * (cos_nb + 1j * np.imag(phase) * u_n1)
    R_over_T = np.exp(1j * k * (N - 1) * a) * r1_over_t1 * u_n1
    return PeriodicCoefficients(inv_T, R_over_T, x, N)


def rect_chain_coefficients(U: float, l: float, a: float, first_center: float,
                            N: int, k) -> TransferCoefficients:
    """``N`` equal barriers, the first centred at ``first_center``, via the closed form."""
    first = shift(rect_coefficients(U, l, k), first_center)
    pc = periodic_coefficients(np.conj(first.alpha), -np.conj(first.beta), a, N, first.k)
    return pc.as_transfer(first.k)
