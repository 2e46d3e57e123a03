import pytest
from hypothesis import given
from hypothesis import strategies as st

from galcov.permutations import (
    Permutation,
    all_permutations,
    from_cycles,
    generates_symmetric_group,
    generator_transposition,
    identity_perm,
    phi_word,
    psi_eval,
    transposition,
    verify_homomorphism,
)
from galcov.presentation import GroupPresentation
from galcov.words import FreeWord, surface_gen, word


def test_psi_generator_images():
    assert psi_eval(word(surface_gen(1)), 3) == transposition(6, 1, 2)
    assert psi_eval(word(surface_gen(2)), 3) == transposition(6, 6, 1)
    assert psi_eval(word(surface_gen(4, True)), 3) == transposition(6, 3, 4)


def test_psi_projective_relator_trivial():
    from galcov.presentation import projective_relator

    for n in (2, 3, 4):
        assert psi_eval(projective_relator(n), n).is_identity()


def test_psi_rejects_foreign_namespace():
    from galcov.words import artin_gen

    with pytest.raises(ValueError):
        psi_eval(word(artin_gen(1)), 2)


def test_phi_single_generators():
    for n in (2, 3, 4):
        for i in range(3, 2 * n + 1):
            assert phi_word(transposition(2 * n, i - 1, i), n) == word(surface_gen(i))
        assert phi_word(transposition(2 * n, 2 * n, 1), n) == word(surface_gen(2))
        assert phi_word(identity_perm(2 * n), n) == FreeWord()


def test_phi_12_palindrome():
    # the crossing transposition needs the full round trip along the path
    w = phi_word(transposition(4, 1, 2), 2)
    assert [g.index for g, _ in w.letters] == [2, 4, 3, 4, 2]
    w = phi_word(transposition(6, 1, 2), 3)
    assert [g.index for g, _ in w.letters] == [2, 6, 5, 4, 3, 4, 5, 6, 2]


@pytest.mark.parametrize("n", [2, 3])
def test_psi_phi_identity_exhaustive(n):
    for p in all_permutations(2 * n):
        assert psi_eval(phi_word(p, n), n) == p


@given(st.integers(4, 5), st.randoms())
def test_psi_phi_identity_sampled(n, rnd):
    vals = list(range(1, 2 * n + 1))
    rnd.shuffle(vals)
    p = Permutation(tuple(vals))
    w = phi_word(p, n)
    assert psi_eval(w, n) == p
    assert len(w) <= (2 * n) ** 2  # selection-sort length bound


def test_phi_word_size_mismatch():
    with pytest.raises(ValueError):
        phi_word(identity_perm(4), 3)


def test_psi_surjective():
    for n in (2, 3):
        gens = [generator_transposition(j, n) for j in range(2, 2 * n + 1)]
        assert generates_symmetric_group(gens, 2 * n)


def test_composition_convention():
    # left-to-right: (1 2) then (2 3) maps 1 to 3
    p = transposition(3, 1, 2) * transposition(3, 2, 3)
    assert p(1) == 3
    assert from_cycles(3, (1, 3, 2)) == p


def test_verify_homomorphism_negative_control():
    a = surface_gen(1)
    good = GroupPresentation(generators=(a,), relators=(word(a, a),), n=1)
    bad = GroupPresentation(generators=(a,), relators=(word(a, a, a),), n=1)
    images = {a: transposition(2, 1, 2)}
    mul = lambda x, y: x * y
    inv = lambda x: x.inverse()
    is_id = lambda x: x.is_identity()
    assert verify_homomorphism(good, images, mul, inv, is_id).ok
    rep = verify_homomorphism(bad, images, mul, inv, is_id)
    assert not rep.ok and len(rep.failures) == 1
