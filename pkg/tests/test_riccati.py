import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from splitrec.errors import DegenerateSplit, PoleHit
from splitrec.matrices import propagate_transfer, transfer_arrays
from splitrec.recurrence import RecurrenceCoefficients, solve_cauchy
from splitrec.riccati import (
    characteristic_roots,
    diagonal_propagate,
    proportional_coefficients,
    riccati_forward,
    riccati_inverse,
    riccati_residual,
)
from splitrec.split import SplitSequences

from conftest import annulus, disk, random_disk


def test_characteristic_roots_vacuum():
    h = 2 * math.pi / 100
    r1, r2 = characteristic_roots(-(2 - h * h), 1.0)
    assert r1 == pytest.approx(0.99802608 + 0.06280084j, abs=1e-8)
    assert r2 == pytest.approx(r1.conjugate(), abs=1e-15)
    assert abs(r1) == pytest.approx(1.0, abs=1e-15)


def test_characteristic_roots_ordering_real():
    assert characteristic_roots(-5, 6) == (3, 2)


@given(disk(3), annulus(0.2, 3))
def test_characteristic_roots_satisfy_quadratic(a, b):
    r1, r2 = characteristic_roots(a, b)
    s = 1 + abs(a) ** 2 + abs(b)
    assert abs(r1 * r1 + a * r1 + b) <= 1e-12 * s
    assert abs(r2 * r2 + a * r2 + b) <= 1e-12 * s
    assert abs(r1 * r2 - b) <= 1e-12 * s


def test_constant_riccati_fixed_point():
    a, b = -2.5, 1.0
    r1, r2 = characteristic_roots(a, b)
    c = RecurrenceCoefficients.constant(a, b, 50)
    t = riccati_forward(c, r1)
    assert np.allclose(t.rho, r1, atol=1e-12)
    assert t.diverged_at is None and t.last_index == 50


def test_forward_residual_zero(rng):
    n = 40
    c = RecurrenceCoefficients(random_disk(rng, n, 1.5), 0.5 + random_disk(rng, n, 0.3))
    t = riccati_forward(c, 1.0 + 0.5j)
    assert np.max(np.abs(riccati_residual(c, t))) <= 1e-12 * (1 + np.max(np.abs(t.rho)) ** 2)


def test_forward_divergence_reported():
    c = RecurrenceCoefficients.constant(0.0, 1.0, 10)
    # rho -> -1/rho oscillates; zero coefficient b makes it collapse instead
    c0 = RecurrenceCoefficients(np.zeros(5), [1, 0, 1, 1, 1], strict=False)
    t = riccati_forward(c0, 1.0)
    assert t.diverged_at == 2 and t.last_index == 2
    assert riccati_forward(c, 2.0).diverged_at is None


def test_inverse_inverts_forward(rng):
    n = 30
    c = RecurrenceCoefficients(random_disk(rng, n, 1.5), 0.8 + random_disk(rng, n, 0.2))
    fwd = riccati_forward(c, 0.7 - 0.4j)
    back = riccati_inverse(c, fwd[n], n, n)
    assert np.max(np.abs(back.rho - fwd.rho)) <= 1e-8 * np.max(np.abs(fwd.rho))


def test_inverse_pole():
    c = RecurrenceCoefficients.constant(-1.0, 1.0, 5)
    with pytest.raises(PoleHit):
        riccati_inverse(c, 1.0, 5, 3)


def test_inverse_solution_is_ratio():
    c = RecurrenceCoefficients.constant(-2 * math.cos(0.2), 1.0, 40)
    t = riccati_inverse(c, cmath.exp(0.2j))
    assert t.first_index == 1
    assert np.allclose(t.rho, cmath.exp(0.2j))


def test_diagonal_branches_solve_recurrence(rng):
    # near-neutral regime: both branches stay apart
    n = 60
    c = RecurrenceCoefficients(random_disk(rng, n, 0.05) - 2 * math.cos(0.5), np.ones(n))
    t1 = riccati_forward(c, cmath.exp(0.5j))
    t2 = riccati_forward(c, cmath.exp(-0.5j))
    sol = diagonal_propagate(t1, t2, (1.0, 1.0), n)
    for y in (sol.y1, sol.y2):
        ref = solve_cauchy(c, y[1], y[2], n)
        assert np.max(np.abs(ref.values - y.values)) <= 1e-9 * np.max(np.abs(y.values))


def test_diagonal_degenerate():
    c = RecurrenceCoefficients.constant(-2.5, 1.0, 10)
    t = riccati_forward(c, 2.0)
    with pytest.raises(DegenerateSplit):
        diagonal_propagate(t, t, (1, 1), 5)


def _transfer_norm(t):
    return np.sqrt(sum(np.abs(x) ** 2 for x in t[:4]))


@given(
    st.lists(disk(2.0), min_size=8, max_size=8),
    st.lists(annulus(0.5, 2.0), min_size=8, max_size=8),
    annulus(0.3, 2.0),
    annulus(0.3, 2.0),
)
def test_riccati_pair_makes_transfer_diagonal(a, b, s1, s2):
    c = RecurrenceCoefficients(a, b)
    t1 = riccati_forward(c, s1)
    t2 = riccati_forward(c, s2)
    assume(t1.diverged_at is None and t2.diverged_at is None)
    assume(np.all(np.abs(t1.rho - t2.rho) > 1e-6 * np.maximum(1, np.abs(t1.rho))))
    t = transfer_arrays(c, SplitSequences(t1.rho, t2.rho), 1, 7)
    # off-diagonals are cancellations; bound them by the rounding of their terms
    r1, r2, n1, n2 = t1.rho[:-1], t2.rho[:-1], t1.rho[1:], t2.rho[1:]
    aa, bb = np.abs(c.a[1:]), np.abs(c.b[1:])
    d = np.abs(n1 - n2)
    eps = 64 * np.finfo(float).eps
    tol12 = eps * (bb + (np.abs(n2) + aa) * np.abs(r2)) / d
    tol21 = eps * (bb + (np.abs(n1) + aa) * np.abs(r1)) / d
    assert np.all(np.abs(t[1]) <= tol12) and np.all(np.abs(t[2]) <= tol21)


def test_only_second_riccati_gives_triangular(rng):
    n = 30
    c = RecurrenceCoefficients(random_disk(rng, n, 2), np.ones(n))
    t2 = riccati_forward(c, 0.3 + 0.1j)
    m = len(t2)
    free = np.full(m, 3.0 + 3.0j)
    t = transfer_arrays(c, SplitSequences(free, t2.rho), 1, m - 1)
    assert np.all(np.abs(t[1]) <= 1e-12 * _transfer_norm(t))
    assert np.max(np.abs(t[2])) > 1e-3


def test_diagonal_transfer_propagation_is_multiplication():
    c = RecurrenceCoefficients.constant(-2.5, 1.0, 20)
    r1, r2 = characteristic_roots(-2.5, 1.0)
    sweep = propagate_transfer(c, SplitSequences.constant(r1, r2, 20), (1.0, 1.0), 20)
    assert np.allclose(sweep.y1, r1 ** np.arange(20))
    assert np.allclose(sweep.y2, r2 ** np.arange(20))


def test_proportional_coefficients_fixed_point(rng):
    a = random_disk(rng, 20, 2)
    pc = proportional_coefficients(a, 0.8 + 0.6j)
    t = riccati_forward(pc.coeffs, 0.8 + 0.6j)
    assert np.allclose(t.rho, 0.8 + 0.6j, atol=1e-12)
