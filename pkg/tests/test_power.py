import pytest

import reference
from stripepow.core import (
    DenseIntMatrix,
    DenseRealMatrix,
    dense_mul,
    dense_pow_binary,
    make_stripe,
    max_abs_diff,
    recompose,
    residue_decompose,
    to_dense,
)
from stripepow.power import (
    PowerQuery,
    RoundingFailure,
    delta_selector,
    entry_power_canonical,
    entry_power_signed,
    matrix_power_blocked,
    matrix_power_closed,
    round_to_int,
    sigma_selector,
)
from stripepow.spectral import eigenvalues


def oracle_power(n: int, m: int) -> DenseIntMatrix:
    return dense_pow_binary(to_dense(make_stripe(n, 3)), m)


def test_delta_selector_congruence_table():
    assert delta_selector(1, 1) == 1
    assert delta_selector(2, 5) == 2
    assert delta_selector(3, 9) == 3
    for i in range(1, 13):
        for j in range(1, 13):
            expected = {2: 1, 1: 2, 0: 3}[(i + j) % 3]
            assert delta_selector(i, j) == expected


def test_sigma_selector_congruence_table():
    assert sigma_selector(1, 1) == 3
    assert sigma_selector(2, 2) == 3
    assert sigma_selector(3, 3) == 3
    for i in range(1, 13):
        for j in range(1, 13):
            expected = i + {2: 2, 1: 1, 0: 0}[(i + j) % 3]
            assert sigma_selector(i, j) == expected


def test_selectors_reject_nonpositive_indices():
    with pytest.raises(ValueError):
        delta_selector(0, 1)
    with pytest.raises(ValueError):
        sigma_selector(1, 0)


def test_selectors_are_consistent_on_shared_residue_classes():
    n = 12
    p = n // 3
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if (i - j) % 3:
                continue
            delta = delta_selector(i, j)
            sigma = sigma_selector(i, j)
            assert delta % 3 == i % 3 == j % 3
            assert (i - delta) % 3 == 0 and 0 <= (i - delta) // 3 < p
            assert (n - sigma) % 3 == 0 and 0 <= (n - sigma) // 3 < p
            # the reversed degree is the reflection of the ascending one
            assert (n - sigma) // 3 == p - 1 - (i - delta) // 3


@pytest.mark.parametrize(
    "n,m,i,j",
    [(0, 1, 1, 1), (6, -1, 1, 1), (6, 2, 0, 1), (6, 2, 1, 7)],
)
def test_power_query_validation(n, m, i, j):
    with pytest.raises(ValueError):
        PowerQuery(n, m, i, j)


def test_entry_power_rejects_orders_off_the_closed_form():
    with pytest.raises(ValueError):
        entry_power_signed(PowerQuery(7, 2, 1, 1))
    with pytest.raises(ValueError):
        entry_power_canonical(PowerQuery(7, 2, 1, 1))


def test_entry_power_signed_order_six_diagonal():
    for m in range(1, 11):
        expected = (1.0 + (-1.0) ** m) / 2.0
        got = entry_power_signed(PowerQuery(6, m, 1, 1))
        assert got == pytest.approx(expected, abs=1e-12)


def test_entry_power_signed_order_nine_values():
    assert entry_power_signed(PowerQuery(9, 2, 4, 4)) == pytest.approx(2.0, abs=1e-12)
    assert entry_power_signed(PowerQuery(9, 1, 1, 2)) == 0.0


def test_entry_power_canonical_base_cases():
    for n in (3, 6, 9, 12):
        for i in range(1, n + 1):
            assert entry_power_canonical(PowerQuery(n, 0, i, i)) == pytest.approx(1.0, abs=1e-12)
    assert entry_power_canonical(PowerQuery(9, 1, 1, 4)) == pytest.approx(1.0, abs=1e-12)


def test_entry_power_canonical_matches_oracle_entry():
    expected = oracle_power(12, 6).entry(2, 8)
    got = entry_power_canonical(PowerQuery(12, 6, 2, 8))
    assert got == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("n", range(3, 31, 3))
def test_signed_and_canonical_forms_agree(n):
    for m in range(1, 17):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                a = entry_power_signed(PowerQuery(n, m, i, j))
                b = entry_power_canonical(PowerQuery(n, m, i, j))
                assert abs(a - b) <= 1e-9 + 1e-12 * abs(b)


def test_matrix_power_closed_small_cases():
    assert max_abs_diff(matrix_power_closed(3, 5), DenseRealMatrix([[0.0] * 3] * 3)) < 1e-12
    assert max_abs_diff(matrix_power_closed(6, 2), DenseRealMatrix.identity(6)) < 1e-12


def test_matrix_power_closed_matches_block_oracle():
    decomp = residue_decompose(make_stripe(9, 3))
    blocks = [dense_pow_binary(b, 2) for b in decomp.tridiagonal_blocks()]
    expected = recompose(decomp, blocks)
    assert max_abs_diff(matrix_power_closed(9, 2), expected) < 1e-12


def test_matrix_power_closed_structure():
    out = matrix_power_closed(12, 7)
    for i in range(1, 13):
        for j in range(1, 13):
            assert out.entry(i, j) == out.entry(j, i)
            if (i - j) % 3:
                assert out.entry(i, j) == 0.0


def test_matrix_power_closed_identity_and_base():
    for n in (3, 6, 15):
        assert max_abs_diff(matrix_power_closed(n, 0), DenseRealMatrix.identity(n)) < 1e-12
        h = DenseRealMatrix(to_dense(make_stripe(n, 3)).row_lists())
        assert max_abs_diff(matrix_power_closed(n, 1), h) < 1e-12


def test_matrix_power_closed_rejects_bad_arguments():
    with pytest.raises(ValueError):
        matrix_power_closed(7, 2)
    with pytest.raises(ValueError):
        matrix_power_closed(6, -1)


def test_matrix_power_blocked_examples():
    assert matrix_power_blocked(make_stripe(6, 3), 2) == DenseIntMatrix.identity(6)
    assert matrix_power_blocked(make_stripe(9, 3), 4).entry(1, 1) == 2
    s7 = make_stripe(7, 3)
    assert matrix_power_blocked(s7, 3) == dense_pow_binary(to_dense(s7), 3)


def test_matrix_power_blocked_rejects_negative_exponent():
    with pytest.raises(ValueError):
        matrix_power_blocked(make_stripe(6, 3), -2)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [4, 5, 7, 10])
def test_matrix_power_blocked_general_strides(n, d):
    s = make_stripe(n, d)
    dense = to_dense(s)
    for m in range(0, 11):
        assert matrix_power_blocked(s, m) == dense_pow_binary(dense, m)


def test_round_to_int_exact_input():
    m = DenseRealMatrix([[2.0, -3.0], [0.0, 5.0]])
    assert round_to_int(m, 0.25) == DenseIntMatrix([[2, -3], [0, 5]])


def test_round_to_int_closed_form_matches_blocked():
    rounded = round_to_int(matrix_power_closed(9, 8), 1e-6)
    assert rounded == matrix_power_blocked(make_stripe(9, 3), 8)


def test_round_to_int_reports_worst_offender():
    m = DenseRealMatrix([[1.0, 0.4], [0.1, 2.0]])
    with pytest.raises(RoundingFailure) as exc_info:
        round_to_int(m, 0.3)
    failure = exc_info.value
    assert (failure.i, failure.j) == (1, 2)
    assert failure.residual == pytest.approx(0.4)


@pytest.mark.parametrize("tol", [0.0, -0.1, 0.5, 0.7])
def test_round_to_int_rejects_bad_tolerance(tol):
    with pytest.raises(ValueError):
        round_to_int(DenseRealMatrix.identity(2), tol)


def test_semigroup_law_after_rounding():
    n = 12
    for a in (0, 1, 3, 5, 8):
        for b in (0, 2, 4, 8):
            lhs = round_to_int(matrix_power_closed(n, a + b), 1e-6)
            rhs = dense_mul(
                round_to_int(matrix_power_closed(n, a), 1e-6),
                round_to_int(matrix_power_closed(n, b), 1e-6),
            )
            assert lhs == rhs


@pytest.mark.parametrize("n", [3, 9, 21, 30])
def test_trace_identity(n):
    spec = eigenvalues(n)
    for m in (0, 1, 2, 5, 16):
        out = matrix_power_closed(n, m)
        trace = sum(out.entry(t, t) for t in range(1, n + 1))
        expected = 3.0 * sum(lam**m for lam in spec.lambdas)
        assert trace == pytest.approx(expected, abs=1e-8)


def test_closed_form_matches_oracle_with_naive_reference():
    # independent repeated-multiplication oracle, not the binary one
    rows = reference.stripe_rows(9, 3)
    for m in range(0, 9):
        expected = reference.naive_pow(rows, m)
        rounded = round_to_int(matrix_power_closed(9, m), 1e-6)
        assert rounded.row_lists() == expected
