"""Second-order linear recurrence ``y[k+1] + a[k] y[k] + b[k] y[k-1] = f[k]``.

Holds the coefficient/grid containers, the direct (companion-form) solvers
used as oracles elsewhere, the Casoratian and the first-kind boundary solve.
Indices are absolute: every container stores its ``first_index``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import IndexOutOfRange, InsufficientCoefficients, SingularBoundarySystem

B_TOLERANCE = 1e-300


def _frozen(values):
    arr = np.array(values, dtype=complex).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Coefficient sequences ``a``, ``b``, ``f`` over ``first_index, ...``.

    ``strict=False`` drops the ``b[k] != 0`` check, which is only needed for
    backward and inverse sweeps.
    """

    a: np.ndarray
    b: np.ndarray
    f: np.ndarray = None
    first_index: int = 1
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        a = _frozen(self.a)
        b = _frozen(self.b)
        f = np.zeros_like(a) if self.f is None else _frozen(self.f)
        f.flags.writeable = False
        if not (len(a) == len(b) == len(f)) or len(a) < 1:
            raise ValueError(
                f"a, b, f must have equal non-zero length (got {len(a)}, {len(b)}, {len(f)})"
            )
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b)) and np.all(np.isfinite(f))):
            raise ValueError("coefficients must be finite")
        if self.strict and np.any(np.abs(b) <= B_TOLERANCE):
            k = int(np.argmax(np.abs(b) <= B_TOLERANCE)) + self.first_index
            raise ValueError(f"b[{k}] vanishes; pass strict=False for forward-only use")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "first_index", int(self.first_index))

    @classmethod
    def constant(cls, a, b, n, f=0.0, first_index=1, strict=True):
        ones = np.ones(n, dtype=complex)
        return cls(a * ones, b * ones, f * ones, first_index, strict)

    def __len__(self):
        return len(self.a)

    @property
    def last_index(self):
        return self.first_index + len(self.a) - 1

    def covers(self, lo, hi):
        return self.first_index <= lo and hi <= self.last_index

    def require(self, lo, hi):
        if lo > hi:
            return
        if not self.covers(lo, hi):
            raise InsufficientCoefficients(
                f"coefficients cover [{self.first_index}, {self.last_index}], "
                f"need [{lo}, {hi}]"
            )

    def window(self, lo, hi):
        """Return copies of ``(a, b, f)`` restricted to ``lo..hi`` inclusive."""
        self.require(lo, hi)
        i, j = lo - self.first_index, hi - self.first_index + 1
        return self.a[i:j].copy(), self.b[i:j].copy(), self.f[i:j].copy()

    def at(self, k):
        self.require(k, k)
        i = k - self.first_index
        return complex(self.a[i]), complex(self.b[i]), complex(self.f[i])


@dataclass(frozen=True)
class GridFunction:
    """Complex values ``y[k]`` for ``k = first_index, ..., last_index``."""

    values: np.ndarray
    first_index: int = 1

    def __post_init__(self):
        v = _frozen(self.values)
        if len(v) == 0:
            raise ValueError("grid function must be non-empty")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "first_index", int(self.first_index))

    def __len__(self):
        return len(self.values)

    @property
    def last_index(self):
        return self.first_index + len(self.values) - 1

    @property
    def indices(self):
        return np.arange(self.first_index, self.last_index + 1)

    def __getitem__(self, k):
        if isinstance(k, slice):
            raise TypeError("use .values for slicing")
        if not self.first_index <= k <= self.last_index:
            raise IndexOutOfRange(
                f"index {k} outside [{self.first_index}, {self.last_index}]"
            )
        return complex(self.values[k - self.first_index])

    def __add__(self, other):
        if not isinstance(other, GridFunction):
            return NotImplemented
        if (other.first_index, len(other)) != (self.first_index, len(self)):
            raise ValueError("grid functions live on different windows")
        return GridFunction(self.values + other.values, self.first_index)

    def scaled(self, c):
        return GridFunction(c * self.values, self.first_index)


def solve_cauchy(coeffs, y1, y2, count, start=None):
    """Iterate the recurrence from Cauchy data ``y[start]=y1``, ``y[start+1]=y2``.

    Uses coefficients at ``start+1 .. start+count-2`` and returns ``count``
    values starting at ``start`` (default ``coeffs.first_index``).
    """
    if count < 2:
        raise ValueError("count must be >= 2")
    start = coeffs.first_index if start is None else int(start)
    hi = start + count - 2
    if count > 2:
        a, b, f = _padded(coeffs, start, hi)
    else:
        a = b = f = np.zeros(2, dtype=complex)
    out = np.zeros(count, dtype=complex)
    out[0], out[1] = y1, y2
    if count > 2:
        kernels.cauchy_sweep(a, b, f, out)
    return GridFunction(out, start)


def _padded(coeffs, lo, hi):
    # coefficient at ``lo`` is never read by the sweep; pad it when absent
    a, b, f = coeffs.window(lo + 1, hi)
    z = np.zeros(1, dtype=complex)
    return np.concatenate([z, a]), np.concatenate([z, b]), np.concatenate([z, f])


def companion_step(coeffs, k, state):
    """One step of the standard companion form.

    ``state`` is ``(y[k], y[k-1])``; returns ``(y[k+1], y[k])`` computed as
    ``[[-a_k, -b_k], [1, 0]] @ state + (f_k, 0)``.
    """
    a, b, f = coeffs.at(k)
    x, y = state
    return (-a * x - b * y + f, complex(x))


def casoratian(ya, yb, k):
    """``ya[k]*yb[k+1] - yb[k]*ya[k+1]``."""
    return ya[k] * yb[k + 1] - yb[k] * ya[k + 1]


def solve_boundary_first_kind(basis1, basis2, y_left, y_right, tol=1e-12):
    """Combine two solutions so that the ends take the given values.

    Returns ``(C1, C2, y)`` with ``y = C1*basis1 + C2*basis2``.
    """
    if (basis1.first_index, len(basis1)) != (basis2.first_index, len(basis2)):
        raise ValueError("basis functions must share a window")
    lo, hi = basis1.first_index, basis1.last_index
    m = np.array([[basis1[lo], basis2[lo]], [basis1[hi], basis2[hi]]])
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    scale = abs(m[0, 0] * m[1, 1]) + abs(m[0, 1] * m[1, 0])
    if scale == 0.0 or abs(det) < tol * scale:
        raise SingularBoundarySystem(f"|det| = {abs(det):.3g} relative to {scale:.3g}")
    c1 = (y_left * m[1, 1] - m[0, 1] * y_right) / det
    c2 = (m[0, 0] * y_right - m[1, 0] * y_left) / det
    y = GridFunction(c1 * basis1.values + c2 * basis2.values, lo)
    return complex(c1), complex(c2), y


def residual(coeffs, y):
    """Pointwise residual of the recurrence at the interior nodes of ``y``.

    Returns a grid function on ``y.first_index+1 .. y.last_index-1``.
    """
    lo, hi = y.first_index + 1, y.last_index - 1
    a, b, f = coeffs.window(lo, hi)
    v = y.values
    r = v[2:] + a * v[1:-1] + b * v[:-2] - f
    return GridFunction(r, lo)
