"""Nearest-neighbour coupled-cavity chain and constant-gradient design.

Cells ``k = 1..N`` have normalized radius ``g[k] = R_k/R*`` and are joined by
apertures ``u[k]`` (the aperture between cells ``k-1`` and ``k``), so a chain
of ``N`` cells carries ``u[1..N+1]``.  The E010 amplitudes satisfy a
three-term recurrence with

    Z_k = 1 - g_k**2 + (u_k + u_{k+1})/g_k**2 - i g_k/Q
    a_k = -Z_k g_k**2/u_{k+1},   b_k = u_k/u_{k+1}.

A constant-gradient design makes ``exp(i phi)`` an exact Riccati solution, so
the forward field keeps its amplitude and advances by ``phi`` per cell.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NoPhysicalRoot
from .recurrence import GridFunction, RecurrenceCoefficients
from .riccati import RiccatiTrace, diagonal_propagate, riccati_forward

PAPER_PHI = 2 * math.pi / 3
PAPER_Q = 1e4


@dataclass(frozen=True)
class ChainDesign:
    phi: float
    Q: float
    g: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        g = np.array(self.g, dtype=float).reshape(-1)
        u = np.array(self.u, dtype=float).reshape(-1)
        if len(g) < 1 or len(u) != len(g) + 1:
            raise ValueError(f"need len(u) == len(g) + 1 (got {len(u)}, {len(g)})")
        if np.any(g <= 0) or np.any(u <= 0):
            raise ValueError("g and u must be positive")
        if not self.Q > 0:
            raise ValueError("Q must be positive")
        if abs(math.sin(self.phi)) < 1e-15:
            raise ValueError("sin(phi) must not vanish")
        g.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "u", u)

    @classmethod
    def uniform(cls, g0, u0, cells, phi=PAPER_PHI, Q=math.inf):
        return cls(phi, Q, np.full(cells, g0), np.full(cells + 1, u0))

    @property
    def cells(self):
        return len(self.g)

    @property
    def Z(self):
        g, u = self.g, self.u
        return 1 - g ** 2 + (u[:-1] + u[1:]) / g ** 2 - 1j * g / self.Q


def ccm_coefficients(design):
    g, u = design.g, design.u
    a = -design.Z * g ** 2 / u[1:]
    b = u[:-1] / u[1:]
    return RecurrenceCoefficients(a, b, None, 1)


def forward_condition_residual(design):
    """``Z_k - (exp(i phi) u_{k+1} + exp(-i phi) u_k)/g_k**2`` per cell."""
    g, u = design.g, design.u
    w = cmath.exp(1j * design.phi)
    return design.Z - (w * u[1:] + u[:-1] / w) / g ** 2


def _loss_slope(phi, Q):
    return (math.cos(phi) - 1) / (Q * math.sin(phi))


def aperture_from_radius(g, phi, Q):
    """Aperture ``u_k`` implied by radius ``g_k`` in a constant-gradient chain."""
    g = np.asarray(g, dtype=float)
    c1 = math.cos(phi) - 1
    return (g ** 2 - g ** 4 + g ** 3 * _loss_slope(phi, Q)) / (2 * c1)


def _real_positive_roots(coeffs):
    # companion-matrix eigenvalues, then Newton polish on the real candidates
    roots = np.roots(coeffs)
    p = np.poly1d(coeffs)
    dp = p.deriv()
    out = []
    for r in roots:
        if abs(r.imag) > 1e-7 * max(1.0, abs(r)):
            continue
        x = r.real
        for _ in range(3):
            d = dp(x)
            if d == 0:
                break
            x -= p(x) / d
        if x > 0:
            out.append(x)
    return np.array(out)


def _nearest(roots, target, what):
    if len(roots) == 0:
        raise NoPhysicalRoot(f"no positive real root for {what}")
    return float(roots[np.argmin(np.abs(roots - target))])


def design_constant_gradient(u1, phi=PAPER_PHI, Q=PAPER_Q, cells=100):
    """Radii and apertures giving a flat forward field with phase advance ``phi``.

    ``g_1`` is the positive root of the start quartic nearest 1; each next
    radius is the positive root of the continuation quartic nearest the
    previous one; apertures follow from the real part of the forward-field
    condition.  Raises :class:`NoPhysicalRoot` when a radius has no positive
    real continuation or an aperture stops being positive.
    """
    if not u1 > 0:
        raise ValueError("u1 must be positive")
    if not 0 < phi < math.pi:
        raise ValueError("phi must lie in (0, pi)")
    if not Q > 0:
        raise ValueError("Q must be positive")
    if cells < 1:
        raise ValueError("cells must be >= 1")
    beta = _loss_slope(phi, Q)
    c1 = math.cos(phi) - 1
    g = np.empty(cells)
    u = np.empty(cells + 1)
    u[0] = u1
    g[0] = _nearest(_real_positive_roots([1.0, -beta, -1.0, 0.0, 2 * c1 * u1]), 1.0, "g_1")
    for k in range(cells):
        gk = g[k]
        u[k + 1] = (gk ** 2 - gk ** 4) / c1 - u[k]
        if not u[k + 1] > 0:
            raise NoPhysicalRoot(
                f"aperture u_{k + 2} = {u[k + 1]:.3g} is not positive; chain too long for u1={u1}"
            )
        if k + 1 < cells:
            rhs = gk ** 4 + beta * gk ** 3 - gk ** 2
            g[k + 1] = _nearest(
                _real_positive_roots([1.0, -beta, -1.0, 0.0, -rhs]), gk, f"g_{k + 2}"
            )
    return ChainDesign(phi, Q, g, u)


class ForwardField(NamedTuple):
    trace: RiccatiTrace
    y1: GridFunction


def forward_field(design, y_start=1.0):
    """Forward field from the Riccati trace seeded with ``exp(i phi)``.

    The field is propagated together with the companion trace, as a diagonal
    system, and lives on ``k = 1..N+1``.
    """
    coeffs = ccm_coefficients(design)
    w = cmath.exp(1j * design.phi)
    t1 = riccati_forward(coeffs, w, 1, design.cells)
    t2 = riccati_forward(coeffs, complex(coeffs.b[0]) / w, 1, design.cells)
    sol = diagonal_propagate(t1, t2, (y_start, 1.0), min(len(t1), len(t2)) + 1, 1)
    return ForwardField(t1, sol.y1)


class BackwardField(NamedTuple):
    trace: RiccatiTrace
    y2: GridFunction
    amplitude: np.ndarray
    phase_deviation: np.ndarray


def backward_trace(design, ratio_exponent=1, seed=None):
    """Companion Riccati values for the backward field.

    ``rho2_k = -r_k/rho2_{k-1} + exp(i phi) + r_k exp(-i phi)`` with
    ``r_k = (u_k/u_{k+1})**ratio_exponent``.  The seed defaults to the
    other characteristic root of cell 1, ``r_1 exp(-i phi)``.
    """
    u = design.u
    ratio = (u[:-1] / u[1:]) ** ratio_exponent
    w = cmath.exp(1j * design.phi)
    rho = np.empty(design.cells, dtype=complex)
    rho[0] = ratio[0] / w if seed is None else seed
    for k in range(1, design.cells):
        rho[k] = -ratio[k] / rho[k - 1] + w + ratio[k] / w
        if not 1e-12 <= abs(rho[k]) <= 1e6:
            return RiccatiTrace(rho[: k + 1], 1, k + 1)
    return RiccatiTrace(rho, 1)


def backward_field(design, ratio_exponent=1, seed=None):
    """Backward field ``y2`` from a unit start, with amplitude and phase deviation.

    ``y2`` lives on ``k = 1..N+1``; the phase deviation is
    ``unwrap(arg y2_k) + (k - 1) phi`` so it vanishes identically for a
    uniform lossless chain.
    """
    trace = backward_trace(design, ratio_exponent, seed)
    y = np.empty(len(trace) + 1, dtype=complex)
    y[0] = 1.0
    y[1:] = np.cumprod(trace.rho)
    steps = np.arange(len(y))
    dev = np.unwrap(np.angle(y)) + steps * design.phi
    return BackwardField(trace, GridFunction(y, 1), np.abs(y), dev)
