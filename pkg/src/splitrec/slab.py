"""Normal-incidence wave diffraction on a 1-D permittivity profile.

The profile is sampled on nodes ``k = 1..N3`` at ``xi_k = k*h`` and the wave
equation ``y'' + eps(xi) y = 0`` is replaced by the three-point scheme

    y[k+1] + y[k-1] - (2 - h**2 eps[k]) y[k] = 0.

Vacuum occupies ``k <= N1`` and ``k > N2``.  The forward vacuum root is the
one with positive imaginary part (``~exp(+i h)``, time factor
``exp(-i omega t)``).  Plane-wave amplitudes are referenced to ``xi = 0``.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .matrices import propagate_transfer, solve_two_point_scatter
from .recurrence import GridFunction, RecurrenceCoefficients
from .riccati import RiccatiTrace, diagonal_propagate, riccati_forward, riccati_inverse
from .split import SplitSequences, decompose

PAPER_H = 2 * math.pi / 100
PAPER_EPS2 = 3 + 0.03j
PAPER_N1, PAPER_N2, PAPER_N3 = 100, 1100, 1200


@dataclass(frozen=True)
class SlabProfile:
    h: float
    eps: np.ndarray
    n1: int
    n2: int
    n3: int = None

    def __post_init__(self):
        eps = np.array(self.eps, dtype=complex).reshape(-1)
        n3 = len(eps) if self.n3 is None else int(self.n3)
        if not self.h > 0:
            raise ValueError("h must be positive")
        if n3 != len(eps):
            raise ValueError(f"N3={n3} but {len(eps)} permittivity samples")
        if not 1 <= self.n1 < self.n2 <= n3:
            raise ValueError(f"need 1 <= N1 < N2 <= N3 (got {self.n1}, {self.n2}, {n3})")
        if not np.all(np.isfinite(eps)):
            raise ValueError("permittivity must be finite")
        eps.flags.writeable = False
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "n3", n3)

    @classmethod
    def homogeneous(cls, eps2, h=PAPER_H, n1=PAPER_N1, n2=PAPER_N2, n3=PAPER_N3):
        """Uniform slab on nodes ``n1+1..n2`` in vacuum."""
        k = np.arange(1, n3 + 1)
        eps = np.where((k > n1) & (k <= n2), complex(eps2), 1.0 + 0j)
        return cls(h, eps, n1, n2, n3)

    @classmethod
    def from_geometry(cls, eps2, xi1, xi2, h=PAPER_H, tail=None):
        """Slab occupying ``xi1 < xi <= xi2``; ``tail`` vacuum nodes follow it."""
        n1 = int(round(xi1 / h))
        n2 = int(round(xi2 / h))
        tail = n1 if tail is None else int(tail)
        return cls.homogeneous(eps2, h, n1, n2, n2 + tail)

    @classmethod
    def ramp(cls, h=PAPER_H, n1=PAPER_N1, n2=PAPER_N2, n3=PAPER_N3):
        """Linear decrease from 1 to -1 over ``n1..n2``; opaque beyond the midpoint."""
        k = np.arange(1, n3 + 1)
        eps = np.ones(n3, dtype=complex)
        inside = (k >= n1) & (k <= n2)
        eps[inside] = 1 - 2 * (k[inside] - n1 + 0.5) / (n2 - n1)
        return cls(h, eps, n1, n2, n3)

    @property
    def xi(self):
        return self.h * np.arange(1, self.n3 + 1)


def paper_slab():
    return SlabProfile.homogeneous(PAPER_EPS2)


def discretize(profile):
    """Recurrence coefficients ``a = -(2 - h**2 eps)``, ``b = 1``, ``f = 0``."""
    a = -(2.0 - profile.h ** 2 * profile.eps)
    return RecurrenceCoefficients(a, np.ones_like(a), None, 1)


def local_roots(eps, h):
    """Roots of ``rho**2 - (2 - h**2 eps) rho + 1 = 0`` with the principal root.

    ``rho1 = c + sqrt(c**2 - 1)`` and ``rho2 = c - sqrt(c**2 - 1)`` with
    ``c = 1 - h**2 eps/2``; works elementwise on arrays.
    """
    c = 1.0 - h * h * np.asarray(eps, dtype=complex) / 2.0
    # + 0j clears a negative zero imaginary part so lossless nodes keep the +i branch
    s = np.sqrt(c * c - 1.0 + 0j)
    r1, r2 = c + s, c - s
    if np.ndim(r1) == 0:
        return complex(r1), complex(r2)
    return r1, r2


def vacuum_roots(h):
    return local_roots(1.0, h)


def analytic_slab_rt(eps2, xi1, xi2):
    """Closed-form reflection and transmission of a uniform slab in vacuum."""
    n = cmath.sqrt(complex(eps2))
    phase = n * (xi2 - xi1)
    den = (n + 1) ** 2 * cmath.exp(-1j * phase) - (n - 1) ** 2 * cmath.exp(1j * phase)
    r = (eps2 - 1) * 2j * cmath.sin(phase) * cmath.exp(2j * xi1 + 1j * xi2) / den
    t = 4 * n * cmath.exp(1j * xi1 - 1j * xi2) / den
    return complex(r), complex(t)


def _splitting(profile, rho_choice):
    r1, r2 = local_roots(profile.eps, profile.h)
    if rho_choice in (None, "local"):
        return SplitSequences(r1, r2, 1)
    c = complex(rho_choice)
    r1 = r1.copy()
    r2 = r2.copy()
    # the end nodes stay on the vacuum roots: they define the physical ports
    r1[1:-1] = c
    r2[1:-1] = 1.0 / c
    return SplitSequences(r1, r2, 1)


class ScatterResult(NamedTuple):
    R: complex
    T: complex
    field: GridFunction
    y1: GridFunction
    y2: GridFunction


def solve_forward_smatrix(profile, rho_choice="local"):
    """Unit forward wave incident from the left, nothing incident from the right.

    ``rho_choice`` is ``"local"`` (local characteristic roots at every node)
    or a complex constant ``c`` (``rho1 = c``, ``rho2 = 1/c`` on interior
    nodes).  ``R`` is the backward branch at node 1, ``T`` the forward branch
    at node ``N3``.
    """
    coeffs = discretize(profile)
    split = _splitting(profile, rho_choice)
    sol = solve_two_point_scatter(coeffs, split, 1.0, 0.0)
    return ScatterResult(sol.total.s11, sol.total.s21, sol.field, sol.y1, sol.y2)


def solve_forward_tmatrix(profile, rho_choice="local", reflection=None, **limits):
    """Transfer sweep from node 1 with ``(y1, y2) = (1, reflection)``.

    ``reflection`` defaults to the scatter-form ``R``.  Shows how the transfer
    form fares on the same physical data; check ``.overflow`` on the result.
    """
    coeffs = discretize(profile)
    split = _splitting(profile, rho_choice)
    if reflection is None:
        reflection = solve_forward_smatrix(profile, rho_choice).R
    return propagate_transfer(coeffs, split, (1.0, reflection), profile.n3, 1, **limits)


class IndependentPair(NamedTuple):
    y1: GridFunction
    y2: GridFunction
    trace1: RiccatiTrace
    trace2: RiccatiTrace


def solve_independent_pair(profile, seeds=None, initial=(1.0, 1.0)):
    """Two independent solutions from forward Riccati traces.

    ``seeds`` default to the vacuum roots at node 1.  A trace that diverges
    is returned truncated and the fields stop one node after it.
    """
    coeffs = discretize(profile)
    seeds = vacuum_roots(profile.h) if seeds is None else seeds
    t1 = riccati_forward(coeffs, seeds[0], 1, profile.n3)
    t2 = riccati_forward(coeffs, seeds[1], 1, profile.n3)
    count = min(profile.n3, len(t1) + 1, len(t2) + 1)
    sol = diagonal_propagate(t1, t2, initial, count, 1)
    return IndependentPair(sol.y1, sol.y2, t1, t2)


def plane_wave_amplitudes(y, k, rho_fwd, rho_bwd):
    """Forward/backward amplitudes at node ``k``: ``A_f + A_b = y[k]``,
    ``A_f*rho_fwd + A_b*rho_bwd = y[k+1]``."""
    s = decompose(y[k], y[k + 1], rho_fwd, rho_bwd)
    return s.y1, s.y2


class InverseResult(NamedTuple):
    R: complex
    T: complex
    y1: GridFunction
    trace: RiccatiTrace


def solve_inverse_scheme(profile, terminal_value=1.0):
    """Outgoing wave ``terminal_value`` at ``N3``, swept down to node 1.

    Riccati values come from the downward map seeded with the forward vacuum
    root at ``N3``.  The left vacuum field is split into plane waves; ``R`` is
    their backward/forward ratio and ``T`` the terminal value over the forward
    amplitude, both referenced to ``xi = 0``.
    """
    coeffs = discretize(profile)
    rf, rb = vacuum_roots(profile.h)
    trace = riccati_inverse(coeffs, rf, profile.n3, profile.n3)
    if trace.diverged_at is not None:
        raise ValueError(f"inverse Riccati sweep diverged at node {trace.diverged_at}")
    rho = trace.rho
    y = np.empty(profile.n3, dtype=complex)
    y[-1] = terminal_value
    y[:-1] = terminal_value / np.cumprod(rho[:-1][::-1])[::-1]
    field = GridFunction(y, 1)
    a_f, a_b = plane_wave_amplitudes(field, 1, rf, rb)
    fwd0, bwd0 = a_f / rf, a_b / rb
    return InverseResult(complex(bwd0 / fwd0), complex(terminal_value / fwd0), field, trace)


def grid_profile_for(h, eps2=PAPER_EPS2, xi1=2 * math.pi, xi2=22 * math.pi, tail_xi=2 * math.pi):
    """Default geometry resampled at step ``h`` (for grid-convergence runs)."""
    return SlabProfile.homogeneous(
        eps2, h, int(round(xi1 / h)), int(round(xi2 / h)), int(round((xi2 + tail_xi) / h))
    )

