import math

import pytest

import reference
from stripepow.chebyshev import (
    charpoly_value,
    cheb_u_eval,
    cheb_u_roots,
    cheb_u_sequence,
    delta_rec,
)
from stripepow.core import dense_det_shifted, make_stripe


def test_cheb_u_eval_low_degrees():
    assert cheb_u_eval(0, 12.7) == 1.0
    assert cheb_u_eval(1, 0.5) == 1.0
    assert cheb_u_eval(2, 1.0) == 3.0


def test_cheb_u_eval_rejects_negative_degree():
    with pytest.raises(ValueError):
        cheb_u_eval(-1, 0.0)


def test_cheb_u_eval_matches_trigonometric_form_inside_unit_interval():
    for k in range(0, 41):
        for t in range(1, 40):
            x = -0.975 + 0.05 * t
            expected = reference.u_quotient(k, x)
            got = cheb_u_eval(k, x)
            assert got == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_cheb_u_sequence_agrees_with_pointwise_eval():
    seq = cheb_u_sequence(12, 1.3)
    assert seq == [cheb_u_eval(k, 1.3) for k in range(13)]
    assert cheb_u_sequence(0, 2.0) == [1.0]


def test_cheb_u_roots_small_degrees():
    assert cheb_u_roots(1) == pytest.approx([0.0], abs=1e-15)
    assert cheb_u_roots(2) == pytest.approx([0.5, -0.5])
    assert cheb_u_roots(3) == pytest.approx([math.sqrt(2) / 2, 0.0, -math.sqrt(2) / 2], abs=1e-15)


def test_cheb_u_roots_rejects_degree_below_one():
    with pytest.raises(ValueError):
        cheb_u_roots(0)


def test_cheb_u_roots_are_roots_and_ordered():
    for k in range(1, 41):
        roots = cheb_u_roots(k)
        assert all(-1.0 < r < 1.0 for r in roots)
        assert all(a > b for a, b in zip(roots, roots[1:]))
        for r in roots:
            assert abs(cheb_u_eval(k, r)) < 1e-10


def test_cheb_u_roots_interlace():
    for k in range(1, 40):
        inner = cheb_u_roots(k)
        outer = cheb_u_roots(k + 1)
        for j, r in enumerate(inner):
            assert outer[j] > r > outer[j + 1]


def test_delta_rec_base_values():
    assert delta_rec(0, 17.0) == 1.0
    assert delta_rec(1, -2.5) == -2.5
    assert delta_rec(2, 3.0) == 8.0
    # recurrence by hand: D3(2) = 2*D2 - D1 = 2*3 - 2 = 4, also U3(1)
    assert delta_rec(3, 2.0) == 4.0
    assert cheb_u_eval(3, 1.0) == 4.0


def test_delta_rec_rejects_negative_order():
    with pytest.raises(ValueError):
        delta_rec(-1, 1.0)


def test_delta_matches_half_argument_chebyshev():
    for p in range(0, 41):
        for t in range(0, 81):
            alpha = -4.0 + 0.1 * t
            d = delta_rec(p, alpha)
            u = cheb_u_eval(p, alpha / 2.0)
            assert abs(d - u) <= 1e-12 * max(1.0, abs(d), abs(u))


def test_charpoly_value_examples():
    assert charpoly_value(6, 3.0) == pytest.approx(512.0)
    assert charpoly_value(6, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert charpoly_value(3, 0.0) == 0.0


@pytest.mark.parametrize("n", [0, 2, 4, 5, 7, 100])
def test_charpoly_value_rejects_bad_orders(n):
    with pytest.raises(ValueError):
        charpoly_value(n, 1.0)


def test_charpoly_agrees_with_determinant_oracle():
    for n in range(3, 31, 3):
        stripe = make_stripe(n, 3)
        for t in range(20):
            lam = -3.0 + 6.0 * t / 19
            value = charpoly_value(n, lam)
            det = dense_det_shifted(stripe, lam)
            assert abs(value - det) <= 1e-8 * max(1.0, abs(value))
