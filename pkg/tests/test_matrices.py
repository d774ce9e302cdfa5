import dataclasses
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from splitrec.errors import DegenerateSplit, StarProductSingular
from splitrec.matrices import (
    CumulativeScatter,
    Form,
    cascade_scatter,
    propagate_transfer,
    scatter_arrays,
    scatter_step,
    solve_two_point_scatter,
    star,
    transfer_matrix,
)
from splitrec.recurrence import RecurrenceCoefficients, solve_cauchy
from splitrec.split import SplitSequences, decompose, initial_split

from conftest import disk, random_disk


def _instance(rng, n, forced=True):
    c = RecurrenceCoefficients(
        random_disk(rng, n, 2), random_disk(rng, n, 2), random_disk(rng, n, 1) if forced else None
    )
    while True:
        r1, r2 = random_disk(rng, n, 1.5), random_disk(rng, n, 1.5)
        if np.all(np.abs(r1 - r2) > 0.1):
            return c, SplitSequences(r1, r2)


@given(st.lists(disk(2), min_size=6, max_size=6))
def test_transfer_step_maps_branches(v):
    a, b, f, r1, r2, _ = v
    n1, n2 = 0.3 + 0.9j, -0.8
    assume(abs(r1 - r2) > 0.1 and abs(b) > 1e-3)
    c = RecurrenceCoefficients([0, a], [1, b], [0, f])
    split = SplitSequences([r1, n1], [r2, n2])
    u1, u2 = 0.4 - 0.1j, 0.2 + 0.7j
    t = transfer_matrix(c, split, 1)
    assert t.form is Form.TRANSFER
    w1, w2 = t.apply(u1, u2)
    y1 = u1 + u2
    y2 = r1 * u1 + r2 * u2
    # the step must preserve the split definition at node 2
    assert abs((w1 + w2) - y2) <= 1e-11 * (1 + abs(y2))
    y3 = -c.a[1] * y2 - c.b[1] * y1 + f
    assert abs((n1 * w1 + n2 * w2) - y3) <= 1e-10 * (1 + abs(y3))


def test_transfer_sum_matches_direct_sweep(rng):
    for _ in range(50):
        n = int(rng.integers(3, 120))
        c, split = _instance(rng, n)
        y = solve_cauchy(c, 0.5, -0.3j, n)
        s0 = initial_split(c, y[1], y[2], *split.at(2), 2)
        sweep = propagate_transfer(c, split, s0, n - 1, 2, cond_limit=math.inf)
        scale = np.maximum.accumulate(np.abs(y.values))[1:]
        assert np.all(np.abs(sweep.total.values - y.values[1:]) <= 1e-10 * scale)


def test_transfer_overflow_truncates():
    c = RecurrenceCoefficients.constant(-10.0, 1.0, 400)
    r1, r2 = np.roots([1, -10, 1])
    split = SplitSequences.constant(r1, r2, 400)
    sweep = propagate_transfer(c, split, (1.0, 0.0), 400)
    assert sweep.overflow and sweep.overflow_at is not None
    assert len(sweep) < 400 and np.all(np.isfinite(sweep.y1))


def test_transfer_wellposed_no_flag():
    c = RecurrenceCoefficients.constant(-2 * math.cos(0.3), 1.0, 200)
    split = SplitSequences.constant(np.exp(0.3j), np.exp(-0.3j), 200)
    sweep = propagate_transfer(c, split, (1.0, 0.5), 200)
    assert not sweep.overflow and len(sweep) == 200
    assert sweep.max_condition < 10


def test_scatter_step_relation(rng):
    # outputs of a scatter step match the transfer step rearranged
    c, split = _instance(rng, 6)
    t = transfer_matrix(c, split, 2)
    s = scatter_step(c, split, 2)
    u1, v2 = 0.7 + 0.1j, -0.4j
    # solve t for (left backward u2, right forward v1) given (u1, v2)
    u2 = (v2 - t.m21 * u1 - t.offset[1]) / t.m22
    v1 = t.m11 * u1 + t.m12 * u2 + t.offset[0]
    o_u2, o_v1 = s.apply(u1, v2)
    assert o_u2 == pytest.approx(u2, rel=1e-10, abs=1e-12)
    assert o_v1 == pytest.approx(v1, rel=1e-10, abs=1e-12)


def test_printed_forcing_sign_disagrees_with_transfer_form(rng):
    c, split = _instance(rng, 6)
    t = transfer_matrix(c, split, 2)
    s = scatter_step(c, split, 2)
    u1, v2 = 0.3, 0.2j
    u2 = (v2 - t.m21 * u1 - t.offset[1]) / t.m22
    correct = s.m11 * u1 + s.m12 * v2 + s.offset[0]
    assert correct == pytest.approx(u2, rel=1e-10)
    # the alternative second offset -rho2*F breaks the right forward output
    v1 = t.m11 * u1 + t.m12 * u2 + t.offset[0]
    wrong_v1 = s.m21 * u1 + s.m22 * v2 - s.offset[1]
    assert abs(wrong_v1 - v1) > 1e-6


def test_star_identity():
    b = CumulativeScatter(0.1 + 0.2j, 0.9, 0.8j, -0.3, 0.05, -0.02j)
    i = CumulativeScatter.identity()
    for x in (star(i, b), star(b, i)):
        assert np.allclose(
            [x.s11, x.s12, x.s21, x.s22, x.o1, x.o2], [b.s11, b.s12, b.s21, b.s22, b.o1, b.o2]
        )


def _block(v):
    return CumulativeScatter(*v)


blocks = st.lists(disk(0.7), min_size=6, max_size=6).map(_block)


@given(blocks, blocks, blocks)
def test_star_associative(a, b, c):
    left = star(star(a, b), c)
    right = star(a, star(b, c))
    for x, y in zip(dataclasses.astuple(left), dataclasses.astuple(right)):
        assert abs(x - y) <= 1e-12 * (1 + abs(x))


def test_star_singular():
    a = CumulativeScatter(0, 1, 1, 1.0)
    b = CumulativeScatter(1.0, 1, 1, 0)
    with pytest.raises(StarProductSingular):
        star(a, b)


def test_cascade_matches_two_point_total(rng):
    c, split = _instance(rng, 30)
    steps = [scatter_step(c, split, k) for k in range(1, 30)]
    total = cascade_scatter(steps)
    sol = solve_two_point_scatter(c, split, 1.0, 0.0)
    for x, y in zip(dataclasses.astuple(total), dataclasses.astuple(sol.total)):
        assert x == pytest.approx(y, rel=1e-12, abs=1e-12)


def test_two_point_scatter_solves_recurrence(rng):
    for _ in range(20):
        n = int(rng.integers(4, 80))
        c, split = _instance(rng, n)
        left, right = random_disk(rng, 2, 1)
        try:
            sol = solve_two_point_scatter(c, split, left, right)
        except StarProductSingular:
            continue
        assert sol.y1[1] == pytest.approx(left) and sol.y2[n] == pytest.approx(right)
        y = sol.field.values
        r1, r2 = split.rho1, split.rho2
        # y[k+1] = rho1 y1 + rho2 y2 at every interior node
        nxt = r1 * sol.y1.values + r2 * sol.y2.values
        scale = np.max(np.abs(y)) + np.max(np.abs(nxt))
        assert np.max(np.abs(nxt[:-1] - y[1:])) <= 1e-9 * scale
        s = decompose(y[:-1], nxt[:-1], r1[:-1], r2[:-1])
        assert np.max(np.abs(s.y1 - sol.y1.values[:-1])) <= 1e-9 * scale * 10


def test_scatter_arrays_unforced_offsets_zero(rng):
    c, split = _instance(rng, 10, forced=False)
    arr = scatter_arrays(c, split, 1, 8)
    assert np.all(arr[4] == 0) and np.all(arr[5] == 0)


def test_degenerate_splitting_rejected():
    with pytest.raises(DegenerateSplit):
        SplitSequences.constant(0.5, 0.5, 4)
