from fractions import Fraction

import pytest

from qonsager.onsager import (
    A,
    B,
    OnsagerElements,
    bracket,
    g_prime,
    jacobi_check,
    onsager_context,
    tilde_g_prime,
    verify_limit_series,
    verify_onsager,
    w_prime,
)
from qonsager.relations import relation_parts


def test_bracket_examples():
    assert bracket(A(2), A(0)) == B(2) * 4
    assert bracket(A(0), A(2)) == B(2) * -4
    assert bracket(B(1), A(0)) == A(1) * 2 - A(-1) * 2
    assert bracket(B(1), B(3)) == 0
    assert bracket(A(3), A(3)) == 0


def test_b_sign_convention():
    assert B(0) == 0
    assert B(-2) == -B(2)


def test_tilde_g_prime_low_terms():
    # from 8 B(t) + G~'(2t - 2t^3 + ...) = 0, expanded by hand
    assert tilde_g_prime(1) == B(1) * -4
    assert tilde_g_prime(2) == B(2) * -2
    assert tilde_g_prime(3) == -B(3) - B(1)
    assert g_prime(1) == B(1) * 4


def test_w_prime_low_terms():
    assert w_prime(0) == A(0)
    assert w_prime(1) == A(1)
    assert w_prime(-1) == (A(1) + A(-1)) / 2
    assert w_prime(2) == (A(0) + A(2)) / 2


def test_plain_identification_violates_commutation():
    # W_0 and W_{-1} must commute; the naive choice W'_{-1} = A_{-1} does not
    assert bracket(A(0), A(-1)) == B(1) * 4
    assert bracket(w_prime(0), w_prime(-1)) == 0


def test_jacobi_identity():
    rep = jacobi_check(trials=300, seed=1)
    assert rep.overall == "PASS"
    assert len(rep.cases) == 300


def test_limit_series():
    assert verify_limit_series(10).overall == "PASS"


def test_relations_hold_exactly():
    rep = verify_onsager(6)
    assert rep.overall == "PASS", rep.failures()[:3]


def test_relation_values_are_exact_rationals():
    ctx = onsager_context()
    for _, x in relation_parts(ctx, "R5", 1, 2):
        assert x == 0
    assert all(isinstance(c, Fraction) for c in w_prime(-3).terms.values())


def test_sign_flip_is_detected():
    def flipped(n):
        return -tilde_g_prime(n) if n == 2 else tilde_g_prime(n)

    rep = verify_onsager(3, elements=OnsagerElements(flipped))
    assert rep.overall == "FAIL"


def test_non_constant_scalar_rejected():
    from qonsager.exactq import q

    with pytest.raises(TypeError):
        A(0) * q
