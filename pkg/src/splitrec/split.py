"""Two-branch splitting of a grid function.

A solution value pair ``(y[k], y[k+1])`` is carried as ``(y1, y2)`` with

    y[k]   = y1 + y2
    y[k+1] = rho1[k]*y1 + rho2[k]*y2

for arbitrary, pointwise distinct ``rho1``/``rho2``.  The split components
need not solve the recurrence themselves, and adjacent values of a component
can differ wildly even when ``y`` is smooth, so nothing here assumes
smoothness.  Every function accepts scalars or numpy arrays.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateSplit

DISTINCTNESS_TOLERANCE = 1e-10


class SplitState(NamedTuple):
    y1: complex
    y2: complex


def check_distinct(rho1, rho2, tol=DISTINCTNESS_TOLERANCE):
    rho1 = np.asarray(rho1, dtype=complex)
    rho2 = np.asarray(rho2, dtype=complex)
    scale = np.maximum(1.0, np.maximum(np.abs(rho1), np.abs(rho2)))
    bad = ~(np.abs(rho1 - rho2) > tol * scale)
    if np.any(bad):
        pos = int(np.argmax(bad.reshape(-1)))
        raise DegenerateSplit(f"splitting values coincide (position {pos})")


@dataclass(frozen=True)
class SplitSequences:
    """Per-index splitting values ``rho1[k]``, ``rho2[k]``."""

    rho1: np.ndarray
    rho2: np.ndarray
    first_index: int = 1
    tol: float = DISTINCTNESS_TOLERANCE

    def __post_init__(self):
        r1 = np.array(self.rho1, dtype=complex).reshape(-1)
        r2 = np.array(self.rho2, dtype=complex).reshape(-1)
        if len(r1) != len(r2) or len(r1) == 0:
            raise ValueError("rho1 and rho2 must have equal non-zero length")
        scale = np.maximum(1.0, np.maximum(np.abs(r1), np.abs(r2)))
        bad = ~(np.abs(r1 - r2) > self.tol * scale)
        if bad.any():
            k = int(np.argmax(bad)) + self.first_index
            raise DegenerateSplit(f"rho1[{k}] == rho2[{k}] within tolerance")
        r1.flags.writeable = False
        r2.flags.writeable = False
        object.__setattr__(self, "rho1", r1)
        object.__setattr__(self, "rho2", r2)
        object.__setattr__(self, "first_index", int(self.first_index))

    @classmethod
    def constant(cls, rho1, rho2, n, first_index=1, tol=DISTINCTNESS_TOLERANCE):
        ones = np.ones(n, dtype=complex)
        return cls(rho1 * ones, rho2 * ones, first_index, tol)

    def __len__(self):
        return len(self.rho1)

    @property
    def last_index(self):
        return self.first_index + len(self.rho1) - 1

    def window(self, lo, hi):
        if lo < self.first_index or hi > self.last_index:
            raise DegenerateSplit(
                f"splitting values cover [{self.first_index}, {self.last_index}], "
                f"need [{lo}, {hi}]"
            )
        i, j = lo - self.first_index, hi - self.first_index + 1
        return self.rho1[i:j].copy(), self.rho2[i:j].copy()

    def at(self, k):
        r1, r2 = self.window(k, k)
        return complex(r1[0]), complex(r2[0])


def decompose(y_k, y_next, rho1, rho2, tol=DISTINCTNESS_TOLERANCE):
    """Split ``(y[k], y[k+1])`` into the two branch values."""
    check_distinct(rho1, rho2, tol)
    d = np.subtract(rho1, rho2)
    y1 = (y_next - np.multiply(rho2, y_k)) / d
    y2 = -(y_next - np.multiply(rho1, y_k)) / d
    if np.ndim(y1) == 0:
        return SplitState(complex(y1), complex(y2))
    return SplitState(y1, y2)


def recombine(state, rho1, rho2):
    """Inverse of :func:`decompose`: returns ``(y[k], y[k+1])``."""
    y1, y2 = state
    return y1 + y2, np.multiply(rho1, y1) + np.multiply(rho2, y2)


def initial_split(coeffs, y_prev, y_cur, rho1, rho2, k=None, tol=DISTINCTNESS_TOLERANCE):
    """Branch values at ``k`` from Cauchy data ``y[k-1]``, ``y[k]``.

    ``y[k+1]`` is eliminated through the recurrence at ``k``, so the
    coefficients there are required.  ``k`` defaults to
    ``coeffs.first_index + 1``.
    """
    k = coeffs.first_index + 1 if k is None else int(k)
    a, b, f = coeffs.at(k)
    check_distinct(rho1, rho2, tol)
    d = rho1 - rho2
    rest = f - y_prev * b
    return SplitState(
        complex((rest - (rho2 + a) * y_cur) / d),
        complex(-(rest - (rho1 + a) * y_cur) / d),
    )
