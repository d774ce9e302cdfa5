"""Riccati-type splitting sequences.

A sequence obeying ``rho[k+1] = -b[k+1]/rho[k] - a[k+1]`` zeroes one
off-diagonal of the transfer matrix; two distinct such sequences make it
diagonal, so each branch evolves by plain multiplication.  The fixed points of
the map with constant coefficients are the characteristic roots, and they may
be repelling: sweeps report divergence instead of raising.
"""

import cmath
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import PoleHit
from .recurrence import GridFunction, RecurrenceCoefficients
from .split import DISTINCTNESS_TOLERANCE, SplitState, check_distinct

UPPER = 1e6
LOWER = 1e-12
POLE = 1e-300


@dataclass(frozen=True)
class RiccatiTrace:
    """Values ``rho[k]`` for ``k = first_index, ...``.

    ``diverged_at`` is the index of the first value that left the accepted
    modulus band; the trace ends there (that value is kept).
    """

    rho: np.ndarray
    first_index: int
    diverged_at: Optional[int] = None

    def __post_init__(self):
        r = np.array(self.rho, dtype=complex).reshape(-1)
        r.flags.writeable = False
        object.__setattr__(self, "rho", r)

    def __len__(self):
        return len(self.rho)

    @property
    def last_index(self):
        return self.first_index + len(self.rho) - 1

    def __getitem__(self, k):
        return complex(self.rho[k - self.first_index])

    def window(self, lo, hi):
        if lo < self.first_index or hi > self.last_index:
            raise ValueError(
                f"trace covers [{self.first_index}, {self.last_index}], need [{lo}, {hi}]"
            )
        return self.rho[lo - self.first_index: hi - self.first_index + 1]


def riccati_forward(coeffs, seed, from_k=None, count=None, upper=UPPER, lower=LOWER):
    """Iterate upward from ``rho[from_k] = seed`` for ``count`` values."""
    from_k = coeffs.first_index if from_k is None else int(from_k)
    count = coeffs.last_index - from_k + 1 if count is None else int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    if not cmath.isfinite(seed):
        raise ValueError("seed must be finite")
    out = np.zeros(count, dtype=complex)
    out[0] = seed
    if count > 1:
        a, b, _ = coeffs.window(from_k, from_k + count - 1)
        stop = kernels.riccati_forward_sweep(a, b, out, upper, lower)
    else:
        stop = -1
    if stop >= 0:
        return RiccatiTrace(out[: stop + 1], from_k, from_k + stop)
    return RiccatiTrace(out, from_k)


def riccati_inverse(coeffs, seed, from_k=None, count=None, upper=UPPER, lower=LOWER):
    """Iterate downward from ``rho[from_k] = seed``: ``rho[k] = -b[k+1]/(rho[k+1] + a[k+1])``.

    The returned trace ends at ``from_k`` and starts ``count - 1`` below it
    (or at the divergence index).
    """
    from_k = coeffs.last_index if from_k is None else int(from_k)
    count = from_k - coeffs.first_index + 1 if count is None else int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    if not cmath.isfinite(seed):
        raise ValueError("seed must be finite")
    lo = from_k - count + 1
    out = np.zeros(count, dtype=complex)
    out[-1] = seed
    if count > 1:
        a, b, _ = coeffs.window(lo, from_k)
        stop, pole_at = kernels.riccati_inverse_sweep(a, b, out, upper, lower, POLE)
    else:
        stop, pole_at = -1, -1
    if pole_at >= 0:
        raise PoleHit(f"rho[{lo + pole_at + 1}] + a[{lo + pole_at + 1}] vanishes")
    if stop >= 0:
        return RiccatiTrace(out[stop:], lo + stop, lo + stop)
    return RiccatiTrace(out, lo)


def characteristic_roots(a, b):
    """Roots of ``rho**2 + a*rho + b = 0``.

    The first root has the larger imaginary part; with equal imaginary parts
    the larger modulus, then the larger real part, comes first.
    """
    a, b = complex(a), complex(b)
    disc = cmath.sqrt(a * a - 4.0 * b)
    # pick the sign that avoids cancellation, then use the product of roots
    q = -0.5 * (a + disc) if abs(a + disc) >= abs(a - disc) else -0.5 * (a - disc)
    if q == 0:
        r1 = r2 = 0j
    else:
        r1, r2 = q, b / q
    scale = max(abs(r1), abs(r2), 1.0)
    tol = 1e-14 * scale
    if abs(r1.imag - r2.imag) > tol:
        swap = r2.imag > r1.imag
    elif abs(abs(r1) - abs(r2)) > tol:
        swap = abs(r2) > abs(r1)
    else:
        swap = r2.real > r1.real
    return (r2, r1) if swap else (r1, r2)


class DiagonalSolution(NamedTuple):
    y1: GridFunction
    y2: GridFunction

    @property
    def states(self):
        return [SplitState(complex(u), complex(v)) for u, v in zip(self.y1.values, self.y2.values)]


def _products(initial, rho):
    out = np.empty(len(rho) + 1, dtype=complex)
    out[0] = initial
    out[1:] = initial * np.cumprod(rho)
    return out


def diagonal_propagate(trace1, trace2, initial, count, start=None, tol=DISTINCTNESS_TOLERANCE):
    """Decoupled branches ``y1[k+1] = rho1[k]*y1[k]``, ``y2[k+1] = rho2[k]*y2[k]``.

    Returns ``count`` values of each branch starting at ``start`` (default:
    the later of the two traces' first indices).
    """
    start = max(trace1.first_index, trace2.first_index) if start is None else int(start)
    if count < 1:
        raise ValueError("count must be >= 1")
    r1 = trace1.window(start, start + count - 2) if count > 1 else np.zeros(0, complex)
    r2 = trace2.window(start, start + count - 2) if count > 1 else np.zeros(0, complex)
    if count > 1:
        check_distinct(r1, r2, tol)
    y1, y2 = initial
    return DiagonalSolution(
        GridFunction(_products(y1, r1), start),
        GridFunction(_products(y2, r2), start),
    )


class ProportionalCoefficients(NamedTuple):
    b: np.ndarray
    coeffs: RecurrenceCoefficients


def proportional_coefficients(a, rho_star, first_index=1):
    """Choose ``b`` so that the constant ``rho_star`` solves the Riccati map.

    ``b[k] = -rho_star*a[k] - rho_star**2``.  The companion branch then follows
    the forward Riccati iteration on the returned coefficients.
    """
    a = np.asarray(a, dtype=complex)
    b = -rho_star * a - rho_star * rho_star
    return ProportionalCoefficients(b, RecurrenceCoefficients(a, b, None, first_index, strict=False))


def riccati_residual(coeffs, trace):
    """``rho[k+1]*rho[k] + a[k+1]*rho[k] + b[k+1]`` along a trace."""
    r = trace.rho
    a, b, _ = coeffs.window(trace.first_index + 1, trace.last_index)
    return r[1:] * r[:-1] + a * r[:-1] + b
