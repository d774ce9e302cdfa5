import numpy as np
import pytest
from hypothesis import assume, given

from splitrec.errors import DegenerateSplit
from splitrec.recurrence import RecurrenceCoefficients, solve_cauchy
from splitrec.split import SplitSequences, decompose, initial_split, recombine

from conftest import disk


def test_decompose_example():
    s = decompose(2.0, 3.0, 2.0, 1.0)
    assert s == (1.0, 1.0)


def test_degenerate_split():
    with pytest.raises(DegenerateSplit):
        decompose(1.0, 1.0, 0.5, 0.5)
    with pytest.raises(DegenerateSplit, match="rho1\\[3\\]"):
        SplitSequences([1, 2, 3], [0, 0, 3])


@given(disk(3), disk(3), disk(2), disk(2))
def test_roundtrip_both_directions(u, v, r1, r2):
    assume(abs(r1 - r2) >= 0.1)
    scale = max(abs(u), abs(v), 1e-300)
    yk, yn = recombine(decompose(u, v, r1, r2), r1, r2)
    assert abs(yk - u) <= 1e-13 * scale and abs(yn - v) <= 1e-13 * scale
    s = decompose(*recombine((u, v), r1, r2), r1, r2)
    assert abs(s.y1 - u) <= 1e-13 * scale and abs(s.y2 - v) <= 1e-13 * scale


def test_vectorized_matches_scalar(rng):
    u, v = rng.normal(size=5) + 1j, rng.normal(size=5)
    r1, r2 = np.full(5, 0.5 + 0.5j), np.full(5, -0.7)
    s = decompose(u, v, r1, r2)
    for i in range(5):
        one = decompose(u[i], v[i], r1[i], r2[i])
        assert one.y1 == pytest.approx(s.y1[i]) and one.y2 == pytest.approx(s.y2[i])


@given(disk(2), disk(2), disk(1), disk(1), disk(1), disk(2), disk(2))
def test_initial_split_reproduces_next_value(a, b, f, yp, yc, r1, r2):
    assume(abs(r1 - r2) >= 0.1 and abs(b) > 1e-3)
    c = RecurrenceCoefficients([0, a], [1, b], [0, f])
    s = initial_split(c, yp, yc, r1, r2)
    y_next = -a * yc - b * yp + f
    scale = 1 + abs(y_next) + abs(yc)
    assert abs(s.y1 + s.y2 - yc) <= 1e-12 * scale / abs(r1 - r2)
    assert abs(r1 * s.y1 + r2 * s.y2 - y_next) <= 1e-12 * scale * (abs(r1) + abs(r2)) / abs(r1 - r2)


def test_split_sequences_window():
    s = SplitSequences.constant(2.0, 0.5, 5, first_index=3)
    assert s.last_index == 7
    assert s.at(4) == (2.0, 0.5)
    with pytest.raises(DegenerateSplit):
        s.window(2, 4)


def test_initial_split_then_sum_equals_solution():
    c = RecurrenceCoefficients.constant(-1.2, 0.8, 10)
    y = solve_cauchy(c, 1.0, 2.0, 10)
    s = initial_split(c, y[1], y[2], 0.3j, 1.1)
    assert s.y1 + s.y2 == pytest.approx(y[2])
    assert 0.3j * s.y1 + 1.1 * s.y2 == pytest.approx(y[3])
