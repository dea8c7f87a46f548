import random

import pytest

from qonsager.deltaq import (
    ALPHA,
    BETA,
    GAMMA,
    A,
    B,
    C,
    CentralForm,
    DeltaElement,
    SeriesElements,
    Z0,
    c_prime,
    casimir,
    is_central,
    n_series,
    natural_hom,
    rho,
    sigma,
    vanishes,
    verify_automorphisms,
    verify_b_series_identity,
    verify_deltaq,
    verify_eq_3B,
    verify_nzz,
    verify_presentation,
    verify_relations_delta,
    verify_tilde_g_closed_form,
    verify_w_g_closed_forms,
    z_series,
)
from qonsager.exactq import q, qint
from qonsager.ncalg import W0, W1, dolan_grady_generators

S1 = q - q ** -1
S2 = q ** 2 - q ** -2
al, be, ga = (DeltaElement.scalar(s) for s in (ALPHA, BETA, GAMMA))


# -- straightening -----------------------------------------------------------------
# each rule below is the corresponding central-element relation solved by hand


def test_straighten_ba():
    assert B * A == A * B * q ** 2 + C * (q * S2) - ga * (q * S1)


def test_straighten_cb():
    assert C * B == B * C * q ** 2 + A * (q * S2) - al * (q * S1)


def test_straighten_ca():
    assert C * A == A * C * q ** -2 - B * (q ** -1 * S2) + be * (q ** -1 * S1)


def test_ordered_monomials_are_untouched():
    assert list((A * B * C).terms) == [(1, 1, 1)]
    assert list((A * A * C).terms) == [(2, 0, 1)]
    assert (A * B * C).coefficient((1, 1, 1)) == 1


def test_normal_form_associativity():
    rng = random.Random(3)
    letters = [A, B, C]
    for _ in range(30):
        x, y, z = (
            letters[rng.randrange(3)] * letters[rng.randrange(3)] + letters[rng.randrange(3)] * rng.randint(-2, 2)
            for _ in range(3)
        )
        assert (x * y) * z == x * (y * z)


def test_centralform_agrees_with_expanded_form():
    a, b, c = (CentralForm.generator(n) for n in "ABC")
    x = a * b * c * b - c * a * a
    assert vanishes(x.expand() - ((A * B * C * B - C * A * A)))


# -- center and automorphisms -----------------------------------------------------------


def test_casimir_is_central():
    assert is_central(casimir())
    assert is_central(al) and is_central(be) and is_central(ga)
    assert not is_central(A)


def test_casimir_invariant():
    cas = casimir()
    assert rho(cas) == cas
    assert sigma(cas) == cas


def test_rho_and_sigma_orders():
    for x in (A, B, C, al, be, ga):
        assert rho(rho(rho(x))) == x
        assert sigma(sigma(x)) == x
    assert rho(A) == B and rho(B) == C and rho(C) == A
    assert sigma(C) == c_prime()


# -- the natural map from the free algebra ----------------------------------------------


def test_natural_hom():
    assert natural_hom(W0 * W1) == A * B
    for g in dolan_grady_generators():
        assert natural_hom(g) == 0


# -- generating functions ---------------------------------------------------------------


def test_z_low_coefficients():
    nt, zt = n_series(3), z_series(3)
    assert nt[0] == 1
    assert zt[0] == Z0
    assert zt[1] == -nt[1] * (Z0 / qint(2) ** 2)


@pytest.mark.parametrize(
    "suite",
    [
        lambda: verify_presentation(),
        lambda: verify_automorphisms(),
        lambda: verify_b_series_identity(5),
        lambda: verify_nzz(5),
        lambda: verify_tilde_g_closed_form(5),
        lambda: verify_w_g_closed_forms(5),
        lambda: verify_relations_delta(2),
    ],
    ids=["presentation", "automorphisms", "b-series", "nzz", "tilde-g", "w-g", "relations"],
)
def test_suites_pass_at_small_order(suite):
    rep = suite()
    assert rep.overall == "PASS", rep.failures()[:3]


def test_interface_aliases():
    assert verify_eq_3B is verify_b_series_identity


def test_full_suite_small():
    rep = verify_deltaq(order=4, K=2)
    assert rep.overall == "PASS"
    assert len(rep.cases) > 100


def test_flip_breaks_relations():
    rep = verify_relations_delta(2, SeriesElements(4, flip=1))
    assert rep.overall == "FAIL"
    assert all(c.residual_terms > 0 for c in rep.failures())


def test_series_elements_bounds():
    e = SeriesElements(3)
    assert e.w_minus(0) == CentralForm.generator("A")
    with pytest.raises(ValueError):
        e.g(4)


def _random_word(rng, max_len=8):
    return [rng.randrange(3) for _ in range(rng.randint(1, max_len))]


def test_normal_form_independent_of_bracketing():
    rng = random.Random(11)
    gens = [A, B, C]
    for _ in range(500):
        w = [gens[i] for i in _random_word(rng)]
        left = w[0]
        for g in w[1:]:
            left = left * g
        right = w[-1]
        for g in reversed(w[:-1]):
            right = g * right
        cut = rng.randrange(1, len(w)) if len(w) > 1 else 1
        mid_l, mid_r = DeltaElement.scalar(1), DeltaElement.scalar(1)
        for g in w[:cut]:
            mid_l = mid_l * g
        for g in w[cut:]:
            mid_r = mid_r * g
        assert left == right == mid_l * mid_r


def test_automorphisms_are_multiplicative():
    rng = random.Random(5)
    gens = [A, B, C]
    for _ in range(20):
        x = gens[rng.randrange(3)] * gens[rng.randrange(3)] + gens[rng.randrange(3)]
        y = gens[rng.randrange(3)] * gens[rng.randrange(3)] - al
        assert rho(x * y) == rho(x) * rho(y)
        assert sigma(x * y) == sigma(x) * sigma(y)


def test_b_ndelta_images_commute_with_c():
    rep = verify_b_series_identity(8)
    psi_cases = [c for c in rep.cases if c.id.startswith("[Psi_")]
    assert len(psi_cases) == 8
    assert all(c.verdict == "pass" for c in psi_cases)
