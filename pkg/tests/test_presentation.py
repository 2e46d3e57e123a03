import pytest

from galcov.degeneration import build_complex
from galcov.permutations import psi_eval
from galcov.presentation import (
    GroupPresentation,
    TietzeLimits,
    add_projective_relation,
    branch_relator,
    dihedral_window,
    square_quotient_presentation,
    complement_presentation,
    presentation_from_factorization,
    projective_relator,
    quotient_squares,
    relators_from_factor,
    tietze_simplify,
)
from galcov.snf import abelianize, smith_normal_form
from galcov.words import FreeWord, surface_gen, word


def test_dihedral_window_depth0():
    w = dihedral_window(1, 0)
    assert [str(v) for v in w] == ["g1p", "g1"]


def test_dihedral_window_depth2():
    w = dihedral_window(1, 2)
    assert [str(v) for v in w] == [
        "g1p^-1 g1^-1 g1p g1 g1p",
        "g1p^-1 g1 g1p",
        "g1p",
        "g1",
        "g1 g1p g1^-1",
        "g1 g1p g1 g1p^-1 g1^-1",
    ]


def test_complement_presentation_counts_n2():
    c = build_complex(2)
    p = complement_presentation(c, depth=0)
    assert len(p.generators) == 8
    branches = [pv for pv in p.provenance if pv.startswith("branch")]
    assert len(branches) == 4  # one per 3-point


def test_complement_presentation_contains_expected_instances():
    c = build_complex(3)
    p = complement_presentation(c, depth=0)
    rels = {str(r) for r in p.relators}
    # commutator of the base variants for the incidental pair (1, 4)
    assert "g1 g4 g1^-1 g4^-1" in rels
    # triple relation for lines 1 and 3 meeting at V_1
    assert "g1 g3 g1 g3^-1 g1^-1 g3^-1" in rels
    # branch relator at V_1
    assert str(branch_relator(1, 3)) in rels


def test_branch_relator_form():
    assert str(branch_relator(1, 3)) == "g3p^-1 g1 g1p g3 g1p^-1 g1^-1"


def test_psi_kills_every_relator():
    for n in (2, 3, 4):
        c = build_complex(n)
        p = add_projective_relation(complement_presentation(c, depth=1))
        for r in p.relators:
            assert psi_eval(r, n).is_identity()


def test_quotient_squares_adds_squares():
    c = build_complex(2)
    p = quotient_squares(complement_presentation(c))
    squares = [r for r in p.relators if len(r) == 2 and r.letters[0] == r.letters[1]]
    assert len(squares) == 8


def test_quotient_squares_positivizes_branch():
    c = build_complex(2)
    p = quotient_squares(complement_presentation(c))
    rels = {str(r) for r in p.relators}
    assert "g3p g1 g1p g3 g1p g1" in rels  # branch relator, positive form
    assert "g3p^-1 g1 g1p g3 g1p^-1 g1^-1" not in rels


def test_quotient_squares_idempotent():
    c = build_complex(2)
    p1 = quotient_squares(complement_presentation(c))
    p2 = quotient_squares(p1)
    assert p1.relators == p2.relators


def test_projective_relator():
    r = projective_relator(2)
    assert len(r) == 8
    assert str(r) == "g1 g1p g2 g2p g3 g3p g4 g4p"
    c = build_complex(2)
    p = add_projective_relation(square_quotient_presentation(c))
    assert p.relators[-1] == r


def test_projective_abelianized_row_of_ones():
    c = build_complex(2)
    p = add_projective_relation(square_quotient_presentation(c))
    m = abelianize(p)
    assert m.rows[-1] == {j: 1 for j in range(8)}


def test_relators_from_factor_examples():
    c = build_complex(2)
    from galcov.braids import regenerate

    fs = regenerate(("three_point", 1), c)
    rels = [str(relators_from_factor(f)[0]) for f in fs]
    assert "g3p^-1 g1 g1p g3 g1p^-1 g1^-1" in rels  # branch at V_1
    assert "g1p g3p g1p g3p^-1 g1p^-1 g3p^-1" in rels  # plain cusp at V_1


def test_vankampen_route_matches_schema_route_abelianized():
    # n=2..4: both relator sets have identical abelianization invariants
    for n in (2, 3, 4):
        c = build_complex(n)
        schema = add_projective_relation(square_quotient_presentation(c))
        braid = add_projective_relation(quotient_squares(presentation_from_factorization(c)))
        assert smith_normal_form(abelianize(schema)) == smith_normal_form(abelianize(braid))


def test_vankampen_route_matches_schema_route_quotient_orders():
    # identical finite-quotient orders mod 2 (mod 3 too at n=2); the n=4
    # quotient order 2^14 * 8! is beyond any coset budget, so that case is
    # certified at the abelianized level above
    from galcov.analysis import expected_quotient_order, finite_quotient_presentation
    from galcov.toddcoxeter import todd_coxeter

    cases = [(2, 2), (2, 3), (3, 2)]
    for n, m in cases:
        c = build_complex(n)
        schema = square_quotient_presentation(c, projective=True)
        braid = add_projective_relation(quotient_squares(presentation_from_factorization(c)))
        expected = expected_quotient_order(n, m)
        for p in (schema, braid):
            t = todd_coxeter(
                finite_quotient_presentation(p, m, n),
                start_capacity=2 * expected,
                max_cosets=4_000_000,
            )
            assert t.complete and t.coset_count == expected


def test_depth_stability_of_quotient_order_braid_route():
    from galcov.analysis import finite_quotient_presentation
    from galcov.toddcoxeter import todd_coxeter

    c = build_complex(2)
    braid = add_projective_relation(quotient_squares(presentation_from_factorization(c)))
    t = todd_coxeter(finite_quotient_presentation(braid, 2, 2), start_capacity=4096)
    assert t.coset_count == 1536


def test_undeclared_generator_rejected():
    a, b = surface_gen(1), surface_gen(9)
    with pytest.raises(ValueError):
        GroupPresentation(generators=(a,), relators=(word(b),), n=1)


def test_tietze_dedupe_and_empty_removal():
    a, b = surface_gen(1), surface_gen(2)
    p = GroupPresentation(
        generators=(a, b),
        relators=(word(a, a), word(a, a), FreeWord(), word(b, (b, -1))),
        n=1,
    )
    q = tietze_simplify(p)
    assert q.relators == (word(a, a),)


def test_tietze_eliminates_single_occurrence_generator():
    a, b = surface_gen(1), surface_gen(2)
    # b = a^2 forced by the first relator; b occurs nowhere else
    p = GroupPresentation(
        generators=(a, b),
        relators=(word(b, (a, -1), (a, -1)), word(a, a, a, a)),
        n=1,
    )
    q = tietze_simplify(p)
    assert q.generators == (a,)
    assert q.relators == (word(a, a, a, a),)


def test_tietze_respects_limits():
    a, b = surface_gen(1), surface_gen(2)
    p = GroupPresentation(
        generators=(a, b),
        relators=(word(b, (a, -1), (a, -1)), word(a, a, a, a)),
        n=1,
    )
    q = tietze_simplify(p, TietzeLimits(max_passes=0))
    assert q.generators == (a, b)
