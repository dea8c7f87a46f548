import json
import random

import pytest
import sympy

from qonsager.commpoly import CommPoly
from qonsager.exactq import RatFuncQ, binom, q, qint, qpow
from qonsager.gseries import (
    CommutativityError,
    NormalizationError,
    TruncatedSeries,
    cayley_compose,
    certify_commutative,
    check_qexpansion_equivalences,
    inverse,
    q_expand,
    q_square,
    q_square_root,
    q_symmetrize,
    qexpansion_leading_coefficients,
    random_normalized_series,
    vee,
)
from qonsager.ncalg import W0, W1
from qonsager.oq import OqElements

T = sympy.Symbol("t")
Q = sympy.Symbol("q")


def ser(values):
    return TruncatedSeries([RatFuncQ(v) if isinstance(v, int) else v for v in values])


def sym(name):
    return CommPoly.symbol(name)


def to_sympy(f):
    return sympy.sympify(str(f).replace("^", "**"), locals={"q": Q})


# -- products ---------------------------------------------------------------------


def test_mul_examples():
    assert ser([1, 1, 0]) * ser([1, -1, 0]) == ser([1, 0, -1])
    a = ser([1, 2, 3])
    assert a * ser([1, 0, 0]) == a
    assert ser([1] * 6) * ser([1, -1, 0, 0, 0, 0]) == ser([1, 0, 0, 0, 0, 0])


def test_mul_order_mismatch():
    with pytest.raises(ValueError):
        ser([1, 1]) * ser([1, 1, 1])


def test_mul_keeps_left_factor_on_left():
    a = TruncatedSeries([W0, W1])
    b = TruncatedSeries([W1, W0])
    prod = a * b
    assert prod[0] == W0 * W1
    assert prod[1] == W0 * W0 + W1 * W1


# -- normalization and inverse ---------------------------------------------------


def test_vee_of_b_series():
    bt = OqElements().b_series(3)
    normalized = vee(bt)
    factor = -q / (q - q ** -1)
    for n in range(4):
        assert normalized[n] == bt[n] * factor
    assert normalized[0] == 1


def test_vee_errors_and_identity():
    a = ser([1, 5, 7])
    assert vee(a) == a
    with pytest.raises(NormalizationError):
        vee(ser([0, 1, 1]))
    with pytest.raises(NormalizationError):
        vee(TruncatedSeries([CommPoly.symbol("x"), CommPoly.scalar(1)]))


def test_inverse_examples():
    assert inverse(ser([1, -1, 0, 0, 0])) == ser([1, 1, 1, 1, 1])
    assert inverse(ser([1, 0])) == ser([1, 0])
    a1 = sym("a1")
    inv = inverse(TruncatedSeries([CommPoly.scalar(1), a1, CommPoly.scalar(0)]))
    assert inv.coeffs == [CommPoly.scalar(1), -a1, a1 * a1]


def test_inverse_needs_invertible_constant():
    with pytest.raises(NormalizationError):
        inverse(ser([0, 1, 0]))


def test_inverse_refuses_noncommuting_coefficients():
    a = TruncatedSeries([W0 * 0 + 1, W0, W1])
    with pytest.raises(CommutativityError):
        inverse(a)


def test_witness_can_be_given_modulo_relations():
    a = TruncatedSeries([W0 * 0 + 1, W0, W1])
    w = certify_commutative(a, is_zero=lambda x: True)
    assert w.method == "checked" and w.pairs_checked == 1


# -- q-square root ---------------------------------------------------------------


def test_q_square_root_small_cases():
    one = ser([1, 0, 0])
    assert q_square_root(one) == one
    a1 = sym("a1")
    b = q_square_root(TruncatedSeries([CommPoly.scalar(1), a1]))
    assert b[1] == a1 * (1 / qint(2))


def test_q_square_root_reconstructs_input():
    rng = random.Random(11)
    a = random_normalized_series(10, rng)
    b = q_square_root(a)
    # a_n = sum_i b_i b_{n-i} q^{2i-n}, written out term by term here
    for n in range(11):
        acc = CommPoly()
        for i in range(n + 1):
            acc = acc + b[i] * b[n - i] * qpow(2 * i - n)
        assert acc == a[n]
    assert q_square(b) == a


def test_q_square_root_needs_normalized():
    with pytest.raises(NormalizationError):
        q_square_root(ser([2, 1]))


# -- Cayley-type composition and q-symmetrization --------------------------------


def test_cayley_compose_of_t():
    b = ser([0, 1, 0, 0, 0, 0])
    out = cayley_compose(b, qint(2), 1)
    two = qint(2)
    assert out == TruncatedSeries([RatFuncQ(0), two, RatFuncQ(0), -two, RatFuncQ(0), two])


def test_cayley_compose_matches_sympy_series():
    # oracle: expand b((q+q^-1)/(t+1/t)) with sympy for b = 1 + 2t + 3t^2 + t^3
    N = 7
    b = ser([1, 2, 3, 1] + [0] * (N - 3))
    u = (Q + 1 / Q) / (T + 1 / T)
    expr = sympy.series(1 + 2 * u + 3 * u ** 2 + u ** 3, T, 0, N + 1).removeO()
    got = cayley_compose(b, qint(2), 1)
    for n in range(N + 1):
        assert sympy.simplify(to_sympy(got[n]) - expr.coeff(T, n)) == 0


def test_cayley_compose_constant():
    assert cayley_compose(ser([5, 0, 0]), qint(2), 1) == ser([5, 0, 0])


def test_cayley_coefficients_follow_binomial_sum():
    N = 9
    symbols = [CommPoly.scalar(1)] + [sym(f"b{i}") for i in range(1, N + 1)]
    out = cayley_compose(TruncatedSeries(symbols), qint(2), 1)
    for n in range(1, N + 1):
        expected = CommPoly()
        for ell in range((n - 1) // 2 + 1):
            expected = expected + symbols[n - 2 * ell] * (
                (-1) ** ell * binom(n - 1 - ell, ell) * qint(2) ** (n - 2 * ell))
        assert out[n] == expected


def test_q_symmetrize_examples():
    assert q_symmetrize(ser([4, 0, 0])) == ser([4, 0, 0])
    a0, a1 = sym("a0"), sym("a1")
    b = q_symmetrize(TruncatedSeries([a0, a1]))
    assert b[0] == a0 and b[1] == a1 * (1 / qint(2))


def test_q_symmetrize_round_trip():
    a = random_normalized_series(12, random.Random(5))
    assert cayley_compose(q_symmetrize(a), qint(2), 1) == a


# -- q-expansion -------------------------------------------------------------------


def test_q_expand_examples():
    one = ser([1, 0, 0])
    assert q_expand(one) == one
    a1 = sym("a1")
    b = q_expand(TruncatedSeries([CommPoly.scalar(1), a1]))
    assert b[1] == -a1 * (1 / qint(2) ** 2)


def test_q_expand_is_q_symmetrized_square_root_of_inverse():
    a = random_normalized_series(8, random.Random(2))
    assert q_expand(a) == q_symmetrize(q_square_root(inverse(a)))


def test_qexpansion_conditions_hold_and_agree():
    a = random_normalized_series(12, random.Random(1))
    rep = check_qexpansion_equivalences(a, q_expand(a))
    assert rep.all_hold and rep.agree


def test_qexpansion_conditions_detect_perturbation():
    a = random_normalized_series(8, random.Random(4))
    b = q_expand(a)
    bad = TruncatedSeries(b.coeffs[:5] + [b[5] + sym("x")] + b.coeffs[6:])
    rep = check_qexpansion_equivalences(a, bad)
    assert not rep.all_hold
    assert not (rep.product_form or rep.shifted_form or rep.recursion_form)


def test_qexpansion_trivial_case():
    one = ser([1, 0, 0, 0])
    assert check_qexpansion_equivalences(one, one).all_hold


@pytest.mark.parametrize("n", range(1, 9))
def test_leading_coefficients(n):
    assert qexpansion_leading_coefficients(n) == {
        "weighted_degree": True,
        "a_n_in_b_n": True,
        "b_n_in_a_n": True,
    }


# -- JSON ------------------------------------------------------------------------------


def test_json_round_trip():
    a = random_normalized_series(4, random.Random(9))
    data = json.loads(a.dumps())
    assert data["order"] == 4 and len(data["coeffs"]) == 5
    assert TruncatedSeries.from_json(data) == a
