"""Transfer (T) and scatter (S) step matrices for the split system.

With splitting values ``rho1``/``rho2`` the branch pair evolves as

    (y1[k+1], y2[k+1]) = T_k (y1[k], y2[k]) + (F, -F)
    (y2[k], y1[k+1])   = S_k (y1[k], y2[k+1]) + (F_s, rho2[k]*F_s)

Transfer sweeps blow up wherever the recurrence has exponentially growing
solutions; the scatter form cascaded with the star product does not.
"""

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import DegenerateSplit, SingularScatterDenominator, StarProductSingular
from .recurrence import GridFunction
from .split import SplitState

OVERFLOW_LIMIT = 1e100
# accumulated transfer products past this condition number keep < ~10 digits
CONDITION_LIMIT = 1e6
STAR_EPS = 1e-14
SCATTER_EPS = 1e-14


class Form(enum.Enum):
    TRANSFER = "transfer"
    SCATTER = "scatter"


@dataclass(frozen=True)
class StepMatrix:
    """One index step in transfer or scatter form.

    ``forcing`` is the scalar ``F`` of the step; ``offset`` is the additive
    2-vector actually applied, ``(F, -F)`` for transfer and
    ``(F, rho2[k]*F)`` for scatter form.
    """

    m11: complex
    m12: complex
    m21: complex
    m22: complex
    forcing: complex
    form: Form
    offset: tuple = (0j, 0j)

    @property
    def matrix(self):
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    def apply(self, u, v):
        """Map the step's two inputs to its two outputs."""
        return (
            self.m11 * u + self.m12 * v + self.offset[0],
            self.m21 * u + self.m22 * v + self.offset[1],
        )


@dataclass(frozen=True)
class CumulativeScatter:
    """Composite scatter block over a span of steps.

    Inputs are (left forward, right backward), outputs (left backward, right
    forward); ``o1``/``o2`` are the accumulated forcing offsets.
    """

    s11: complex
    s12: complex
    s21: complex
    s22: complex
    o1: complex = 0j
    o2: complex = 0j

    @classmethod
    def identity(cls):
        return cls(0j, 1 + 0j, 1 + 0j, 0j)

    @classmethod
    def from_step(cls, step):
        if step.form is not Form.SCATTER:
            raise ValueError("cascade needs scatter-form steps")
        return cls(step.m11, step.m12, step.m21, step.m22, *step.offset)

    def apply(self, left_in, right_in):
        return (
            self.s11 * left_in + self.s12 * right_in + self.o1,
            self.s21 * left_in + self.s22 * right_in + self.o2,
        )


def _step_window(coeffs, split, lo, hi):
    coeffs.require(lo + 1, hi + 1)
    r1, r2 = split.window(lo, hi + 1)
    a, b, f = coeffs.window(lo + 1, hi + 1)
    return r1[:-1], r2[:-1], r1[1:], r2[1:], a, b, f


def transfer_arrays(coeffs, split, lo, hi):
    """Transfer entries ``(t11, t12, t21, t22, F)`` for steps ``k = lo..hi``."""
    r1, r2, n1, n2, a, b, f = _step_window(coeffs, split, lo, hi)
    d = n1 - n2
    if np.any(np.abs(d) == 0.0):
        raise DegenerateSplit("coinciding splitting values at a step end")
    t11 = -(b + (n2 + a) * r1) / d
    t12 = -(b + (n2 + a) * r2) / d
    t21 = (b + (n1 + a) * r1) / d
    t22 = (b + (n1 + a) * r2) / d
    return t11, t12, t21, t22, f / d


def scatter_arrays(coeffs, split, lo, hi):
    """Scatter entries ``(s11, s12, s21, s22, o1, o2)`` for steps ``k = lo..hi``."""
    r1, r2, n1, n2, a, b, f = _step_window(coeffs, split, lo, hi)
    den = b + r2 * (n1 + a)
    scale = np.abs(b) + np.abs(r2 * (n1 + a))
    bad = ~(np.abs(den) > SCATTER_EPS * scale)
    if np.any(bad):
        k = lo + int(np.argmax(bad))
        raise SingularScatterDenominator(f"scatter denominator vanishes at step {k}")
    s11 = -(b + r1 * (n1 + a)) / den
    s12 = (n1 - n2) / den
    s21 = (r1 - r2) * b / den
    s22 = -(b + r2 * (n2 + a)) / den
    fs = f / den
    return s11, s12, s21, s22, fs, r2 * fs


def transfer_matrix(coeffs, split, k):
    t11, t12, t21, t22, ff = (complex(x[0]) for x in transfer_arrays(coeffs, split, k, k))
    return StepMatrix(t11, t12, t21, t22, ff, Form.TRANSFER, (ff, -ff))


def scatter_step(coeffs, split, k):
    s11, s12, s21, s22, o1, o2 = (complex(x[0]) for x in scatter_arrays(coeffs, split, k, k))
    return StepMatrix(s11, s12, s21, s22, o1, Form.SCATTER, (o1, o2))


@dataclass(frozen=True)
class TransferSweep:
    """Branch values produced by a transfer sweep.

    ``overflow`` marks a divergent sweep: either a component passed the
    magnitude limit (the arrays then stop there) or the accumulated transfer
    product became so ill-conditioned that round-off dominates the result.
    """

    y1: np.ndarray
    y2: np.ndarray
    first_index: int
    overflow_at: Optional[int]
    ill_conditioned_at: Optional[int]
    max_condition: float

    @property
    def overflow(self):
        return self.overflow_at is not None or self.ill_conditioned_at is not None

    def __len__(self):
        return len(self.y1)

    @property
    def states(self):
        return [SplitState(complex(u), complex(v)) for u, v in zip(self.y1, self.y2)]

    @property
    def total(self):
        return GridFunction(self.y1 + self.y2, self.first_index)


def propagate_transfer(coeffs, split, initial, count, start=None,
                       limit=OVERFLOW_LIMIT, cond_limit=CONDITION_LIMIT):
    """Sweep ``count`` states from ``initial`` at ``start``.

    ``start`` defaults to ``split.first_index``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    start = split.first_index if start is None else int(start)
    y1 = np.zeros(count, dtype=complex)
    y2 = np.zeros(count, dtype=complex)
    y1[0], y2[0] = initial
    if count == 1:
        return TransferSweep(y1, y2, start, None, None, 1.0)
    t11, t12, t21, t22, ff = transfer_arrays(coeffs, split, start, start + count - 2)
    written, over, ill, cmax = kernels.transfer_sweep(
        t11, t12, t21, t22, ff, y1, y2, float(limit), float(cond_limit)
    )
    return TransferSweep(
        y1[:written].copy(),
        y2[:written].copy(),
        start,
        None if over < 0 else start + over,
        None if ill < 0 else start + ill,
        float(cmax),
    )


def star(first, second):
    """Star product: ``first`` on the left, ``second`` on the right."""
    d = 1.0 - first.s22 * second.s11
    if abs(d) < STAR_EPS:
        raise StarProductSingular(f"|1 - A22*B11| = {abs(d):.3g}")
    return CumulativeScatter(
        first.s11 + first.s12 * second.s11 * first.s21 / d,
        first.s12 * second.s12 / d,
        second.s21 * first.s21 / d,
        second.s22 + second.s21 * first.s22 * second.s12 / d,
        first.o1 + first.s12 * (second.o1 + second.s11 * first.o2) / d,
        second.o2 + second.s21 * (first.o2 + first.s22 * second.o1) / d,
    )


def cascade_scatter(steps):
    """Left-to-right star-product fold of scatter-form steps."""
    total = CumulativeScatter.identity()
    for step in steps:
        block = step if isinstance(step, CumulativeScatter) else CumulativeScatter.from_step(step)
        total = star(total, block)
    return total


@dataclass(frozen=True)
class TwoPointScatter:
    total: CumulativeScatter
    y1: GridFunction
    y2: GridFunction

    @property
    def field(self):
        return self.y1 + self.y2


def _prefix(arrays):
    n = len(arrays[0])
    out = [np.zeros(n + 1, dtype=complex) for _ in range(6)]
    bad = kernels.cascade_prefix(*arrays, *out, STAR_EPS)
    if bad >= 0:
        raise StarProductSingular(f"singular coupling at step offset {bad}")
    return out


def solve_two_point_scatter(coeffs, split, left_in, right_in, lo=None, hi=None):
    """Branch values on nodes ``lo..hi`` from ``y1[lo] = left_in``, ``y2[hi] = right_in``.

    Forward pass accumulates prefix composites, backward pass recovers every
    node without ever sweeping a transfer matrix.
    """
    lo = split.first_index if lo is None else int(lo)
    hi = split.last_index if hi is None else int(hi)
    if hi <= lo:
        raise ValueError("need at least two nodes")
    arrays = scatter_arrays(coeffs, split, lo, hi - 1)
    p11, p12, p21, p22, q1, q2 = _prefix(arrays)
    total = CumulativeScatter(*(complex(x[-1]) for x in (p11, p12, p21, p22, q1, q2)))
    y1 = np.zeros(hi - lo + 1, dtype=complex)
    y2 = np.zeros(hi - lo + 1, dtype=complex)
    s11, s12, _, _, o1, _ = arrays
    kernels.scatter_backsub(s11, s12, o1, p21, p22, q2, complex(left_in), complex(right_in), y1, y2)
    return TwoPointScatter(total, GridFunction(y1, lo), GridFunction(y2, lo))
