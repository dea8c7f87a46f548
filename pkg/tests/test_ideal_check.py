import itertools
import random

import pytest

from qonsager.exactq import q
from qonsager.ideal_check import (
    MODULUS,
    DegreeBoundError,
    MutatedElements,
    build_basis,
    id_word,
    reduce,
    verify_conjecture,
    verify_relation,
    word_id,
)
from qonsager.ncalg import W0, W1, FreeElement, commutator, dolan_grady_generators
from qonsager.oq import OqElements

E = OqElements()

# rank of the padded-generator span at D = 6, frozen from the dense oracle below
RANK_D6 = 34


def dense_rank_mod_p(rows, p=1_000_003, q0=12345):
    """Independent oracle: plain dense Gaussian elimination over GF(p) at q = q0."""
    words = sorted({w for r in rows for w in r.terms})
    col = {w: i for i, w in enumerate(words)}
    mat = []
    for r in rows:
        v = [0] * len(words)
        for w, c in r.terms.items():
            v[col[w]] = c.evaluate_mod(q0, p)
        mat.append(v)
    rank = 0
    for c in range(len(words)):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][c], -1, p)
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c] * inv % p
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def padded_generators(D):
    out = []
    for g in dolan_grady_generators():
        for pad in range(D - 3):
            for a in range(pad + 1):
                for u in itertools.product((0, 1), repeat=a):
                    for v in itertools.product((0, 1), repeat=pad - a):
                        out.append(FreeElement({u: 1}) * g * FreeElement({v: 1}))
    return out


def test_word_ids_are_deglex():
    words = [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1), (0, 0, 0)]
    assert [word_id(w) for w in words] == list(range(8))
    assert all(id_word(word_id(w)) == w for w in words)


def test_basis_sizes():
    assert build_basis(4).rank == 2
    assert len(build_basis(5).generators) == 2 * (1 + 2 + 2)
    assert len(padded_generators(5)) == 10


def test_rank_d6_against_dense_oracle():
    assert dense_rank_mod_p(padded_generators(6)) == RANK_D6
    assert build_basis(6).rank == RANK_D6


def test_basis_bound_guard():
    with pytest.raises(DegreeBoundError):
        build_basis(3)


def test_reduce_examples():
    g1, _ = dolan_grady_generators()
    assert reduce(g1, 4).is_member
    rep = reduce(commutator(E.b_ndelta(1), E.b_ndelta(2)), 6)
    assert rep.is_member and rep.residual_terms == 0
    rep = reduce(W0, 6)
    assert rep.verdict == "nonmember_at_bound"
    assert rep.residual == W0


def test_reduce_degree_guard():
    with pytest.raises(DegreeBoundError):
        reduce(W0 * W1 * W0 * W1 * W0, 4)


def test_certificate_reproduces_element():
    x = commutator(E.b_ndelta(1), E.b_ndelta(2))
    rep = reduce(x, 6)
    assert rep.certificate_element(build_basis(6)) == x


def test_residual_is_idempotent():
    x = W0 * W1 * W0 * W1 * W0 * W1 + W1 * W0 * q
    r1 = reduce(x, 6).residual
    assert r1 and reduce(r1, 6).residual == r1
    # residual differs from x by an ideal element
    assert reduce(x - r1, 6).is_member


def test_ideal_stable_under_letters():
    basis = build_basis(6)
    rng = random.Random(0)
    idx = rng.sample(range(len(basis.generators)), 6)
    for i in idx:
        g = basis.generator_element(i)
        for w in (W0, W1):
            if g.degree() + 1 <= 6:
                assert reduce(w * g, 6).is_member
                assert reduce(g * w, 6).is_member


def test_fast_pass_agrees_with_exact():
    g1, g2 = dolan_grady_generators()
    samples = [
        g1 * W0 - W1 * g2,
        commutator(E.b_ndelta(1), E.b_ndelta(2)),
        W0 * W1 * W0,
        g1 + W0 * W0,
        commutator(E.w_minus(1), E.w_plus(0)),
        commutator(E.w_minus(1), E.w_plus(1)),
    ]
    for x in samples:
        exact = reduce(x, 6, fast_pass=False)
        fast = reduce(x, 6, fast_pass_only=True)
        assert (fast.residual_terms == 0) == exact.is_member
        for seed in range(5):
            # other evaluation points agree too
            assert (reduce(x, 6, fast_pass_only=True, seed=seed).residual_terms == 0) == exact.is_member


def test_verify_relation_examples():
    reps = verify_relation("R1", 0, D=6)
    assert len(reps) == 2 and all(r.is_member for r in reps)
    assert all(r.is_member for r in verify_relation("R4", 1, 1))
    assert all(r.is_member for r in verify_relation("R11", 0, 0))


def test_verify_relation_bound_guard():
    with pytest.raises(DegreeBoundError):
        verify_relation("R2", 2, D=4)
    with pytest.raises(ValueError):
        verify_relation("R12", 0)


def test_conjecture_smallest_instance():
    rep = verify_conjecture(0, 6)
    assert rep.overall == "PASS"
    assert rep.exit_code == 0


def test_conjecture_mutation_fails():
    rep = verify_conjecture(2, 8, elements=MutatedElements(2))
    assert rep.overall == "FAIL"
    assert any(c.residual_terms > 0 for c in rep.failures())


def test_conjecture_bound_too_small_is_inconclusive():
    rep = verify_conjecture(5, 4)
    assert rep.overall == "INCONCLUSIVE"
    assert rep.exit_code == 2


def test_conjecture_report_schema():
    data = verify_conjecture(0, 6).as_dict()
    assert set(data) == {"suite", "cases", "overall"}
    case = data["cases"][0]
    assert {"id", "verdict", "residual_terms", "ms"} <= set(case)
    assert MODULUS == (1 << 61) - 1
