import json
from importlib import resources

import pytest

from qonsager.exactq import q, qint
from qonsager.ideal_check import reduce
from qonsager.ncalg import W0, W1, FreeElement, commutator, q_commutator
from qonsager.oq import (
    B0DELTA,
    G0,
    RHO,
    OqElements,
    appendix_a_table,
    appendix_b_table,
    appendix_b_targets,
)

SQ = (q ** 2 - q ** -2) ** 2
RECUR = q / ((q - q ** -1) * (q ** 2 - q ** -2))


@pytest.fixture(scope="module")
def E():
    return OqElements()


@pytest.fixture(scope="module")
def fixtures():
    return json.loads(resources.files("qonsager").joinpath("data/appendix_tables.json").read_text())


def test_constants():
    assert B0DELTA == q ** -2 - 1
    assert G0 == -(q - q ** -1) * qint(2) ** 2
    assert RHO == -SQ


def test_pbw_low_terms(E):
    bd = W1 * W0 * q ** -2 - W0 * W1
    assert E.b_delta == bd
    assert E.b_alpha0(0) == W0
    assert E.b_alpha1(0) == W1
    assert E.b_alpha0(1) == W1 + commutator(bd, W0) * RECUR
    assert E.b_alpha1(1) == W0 - commutator(bd, W1) * RECUR


def test_b_extended(E):
    assert E.b_extended(0, -1) == W1
    assert E.b_extended(1, -2) == E.b_alpha0(1)
    assert E.b_extended(0, 3) == E.b_alpha0(3)


def test_b_ndelta_small(E):
    assert E.b_ndelta(0) == FreeElement.scalar(q ** -2 - 1)
    assert E.b_ndelta(1) == W1 * W0 * q ** -2 - W0 * W1
    # hand expansion of the n = 2 recursion
    bd = W1 * W0 * q ** -2 - W0 * W1
    b1 = W0 - (bd * W1 - W1 * bd) * RECUR
    expected = b1 * W0 * q ** -2 - W0 * b1 + W1 * W1 * (q ** -2 - 1)
    assert E.b_ndelta(2) == expected


def test_b_series(E):
    bt = E.b_series(3)
    assert bt[0].as_scalar() == q ** -2 - 1
    assert bt[1] == E.b_ndelta(1)


def test_tilde_g_one_is_q_commutator(E):
    assert E.tilde_g(1) - q_commutator(W0, W1) == 0
    assert E.tilde_g(1) == E.b_delta * -q
    assert E.tilde_g(0).as_scalar() == G0


def test_w_low_terms(E):
    assert E.w_minus(0) == W0
    assert E.w_plus(0) == W1
    assert E.w_minus(1) == W1 - q_commutator(E.tilde_g(1), W0) / SQ
    assert E.w_plus(1) == W0 - q_commutator(W1, E.tilde_g(1)) / SQ


def test_g_low_terms(E):
    assert E.g(1) == E.tilde_g(1) + commutator(W1, W0) * qint(2)
    assert E.g(2) == E.tilde_g(2) + commutator(W1, E.w_minus(1)) * qint(2)


@pytest.mark.parametrize("n", range(1, 9))
def test_degree_bounds(E, n):
    assert E.b_ndelta(n).degree() == 2 * n
    assert E.b_alpha0(n).degree() == 2 * n + 1
    assert E.b_alpha1(n).degree() == 2 * n + 1
    assert E.tilde_g(n).degree() <= 2 * n


def test_w_alt_zero(E):
    assert E.w_alt_minus(0) == W0
    assert E.w_alt_plus(0) == W1


@pytest.mark.parametrize("n", range(0, 4))
def test_w_alt_equals_w_modulo_ideal(E, n):
    for x in (E.w_alt_minus(n) - E.w_minus(n), E.w_alt_plus(n) - E.w_plus(n)):
        assert not x or reduce(x, 2 * n + 3).is_member


@pytest.mark.parametrize("n", range(1, 4))
def test_w_index_shift_identities(E, n):
    s1 = q - q ** -1
    bd = E.b_delta
    x = E.w_minus(n) - (E.w_plus(n - 1) - W0 * E.tilde_g(n) * (s1 / SQ)
                        + commutator(bd, E.w_minus(n - 1)) * (q ** 2 / SQ))
    y = E.w_plus(n) - (E.w_minus(n - 1) - W1 * E.tilde_g(n) * (s1 / SQ)
                       - commutator(bd, E.w_plus(n - 1)) / SQ)
    for z in (x, y):
        assert not z or reduce(z, 2 * n + 3).is_member


@pytest.mark.parametrize("n", range(-2, 3))
def test_b_delta_brackets_on_extended_pbw(E, n):
    x = commutator(E.b_delta, E.b_extended(0, n)) * RECUR - (E.b_extended(0, n + 1) - E.b_extended(0, n - 1))
    y = commutator(E.b_delta, E.b_extended(1, n)) * RECUR - (E.b_extended(1, n - 1) - E.b_extended(1, n + 1))
    D = 2 * abs(n) + 5
    for z in (x, y):
        assert not z or reduce(z, D).is_member


def test_b_ndelta_commute_modulo_ideal(E):
    assert reduce(commutator(E.b_ndelta(1), E.b_ndelta(2)), 6).is_member


# -- appendix tables ----------------------------------------------------------------


def test_appendix_a_examples():
    assert appendix_a_table(4).row("[2]_q^2 G~_2") == [-2, 0, 1, 0, 0]
    assert appendix_a_table(8).row("[2]_q^4 G~_4") == [10, 0, -4, 0, 1, 0, 0, 0, 0]


@pytest.mark.parametrize("n", range(1, 9))
def test_appendix_a_golden(fixtures, n):
    assert appendix_a_table(n).entries == fixtures["appendix_a"][str(n)]


def test_appendix_a_beyond_range_is_marked():
    assert appendix_a_table(9).beyond_paper
    assert not appendix_a_table(8).beyond_paper
    with pytest.raises(ValueError):
        appendix_a_table(0)


def test_appendix_b_examples():
    assert appendix_b_table("W_-4").row("B_a0") == [6, 0, 2, 0, 1]
    assert appendix_b_table("W_{-7}").row("B_a0") == [0, 20, 0, 6, 0, 2, 0, 1]
    assert len(appendix_b_table("W_-1").rows) == 3


@pytest.mark.parametrize("target", appendix_b_targets())
def test_appendix_b_golden(fixtures, target):
    table = appendix_b_table(target)
    fx = fixtures["appendix_b"][target]
    assert table.entries == fx["entries"]
    assert len(table.rows) == len(fx["rows"])


def test_appendix_b_table_json_schema():
    data = appendix_b_table("W_2").to_json()
    assert set(data) >= {"target", "rows", "cols", "entries"}
    assert data["target"] == "W_2"
