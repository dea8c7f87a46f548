import random

import pytest

from qonsager.exactq import RatFuncQ, q, qint, qpow
from qonsager.ncalg import (
    W0,
    W1,
    FreeElement,
    MissingImageError,
    apply_hom,
    commutator,
    dolan_grady_generators,
    q_commutator,
)


def word(*letters):
    return FreeElement({tuple(letters): 1})


def random_element(rng, max_len=3, terms=3):
    out = FreeElement()
    for _ in range(terms):
        w = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, max_len)))
        out = out + FreeElement({w: qpow(rng.randint(-2, 2)) * rng.randint(-3, 3)})
    return out


def test_products():
    assert W0 * W1 == word(0, 1)
    assert (W0 + W1) * W0 == word(0, 0) + word(1, 0)


def test_associativity_and_ring_axioms():
    rng = random.Random(1)
    for _ in range(100):
        x, y, z = (random_element(rng) for _ in range(3))
        assert x * (y * z) == (x * y) * z
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z
        assert x - x == 0
        if x and y:
            assert (x * y).degree() == x.degree() + y.degree()


def test_commutators():
    assert commutator(W0, W0) == 0
    assert q_commutator(W0, W1) == word(0, 1) * q - word(1, 0) * q ** -1


def test_nested_q_commutator_expansion():
    X, Y = W0, W1
    lhs = commutator(X, q_commutator(X, q_commutator(X, Y), -1))
    three = qint(3)
    expected = word(0, 0, 0, 1) - word(0, 0, 1, 0) * three + word(0, 1, 0, 0) * three - word(1, 0, 0, 0)
    assert lhs == expected


def test_dolan_grady_generators():
    g1, g2 = dolan_grady_generators()
    assert g1.coefficient((0, 0, 0, 1)) == 1
    assert g1.swap_letters() == g2
    assert g1.degree() == 4 and g2.degree() == 4
    assert {len(w) for w in g1.terms} == {2, 4}
    tail = g1.homogeneous_part(2)
    assert tail == -commutator(W1, W0) * (q ** 2 - q ** -2) ** 2


def test_apply_hom_basics():
    x = W0 * W1
    assert apply_hom(x, {0: W0, 1: W1}) == x
    assert apply_hom(x, {0: W1, 1: W0}) == W1 * W0
    with pytest.raises(MissingImageError):
        apply_hom(x, {0: W0})


def test_apply_hom_respects_products():
    rng = random.Random(2)
    images = {0: W0 * W1 - W1 * q, 1: W0 + W1 * W1}
    for _ in range(100):
        x, y = random_element(rng, 2, 2), random_element(rng, 2, 2)
        assert apply_hom(x * y, images) == apply_hom(x, images) * apply_hom(y, images)


def test_render_and_parse():
    x = W0 * W1 * (q - q ** -1) + W1 - 3
    s = str(x)
    assert "W0*W1" in s
    assert FreeElement.parse(s) == x
    assert FreeElement.parse("q*W0*W1 - q^-1*W1*W0") == q_commutator(W0, W1)


def test_scalar_detection():
    assert FreeElement.scalar(5).as_scalar() == RatFuncQ(5)
    assert W0.as_scalar() is None
    assert FreeElement().degree() == -1
