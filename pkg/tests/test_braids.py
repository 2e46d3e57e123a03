import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galcov.braids import (
    BRANCH,
    CUSP,
    NODE,
    Puncture,
    artin_apply,
    braid,
    braid_permutation,
    braids_equal,
    delta_squared_report,
    factor_census,
    factorization_permutation,
    factorization_product,
    fiber_generator,
    full_factorization,
    full_twist,
    half_twist,
    make_path,
    regenerate,
    twist_ordered_factorization,
)
from galcov.degeneration import build_complex
from galcov.words import concat, reduce, surface_gen, word


def g(i, primed=False):
    return surface_gen(i, primed)


def x(pos):
    return word(fiber_generator(pos))


# --- paths -------------------------------------------------------------------

def test_punctured_fiber_order():
    from galcov.braids import PuncturedFiber

    fiber = PuncturedFiber(2)
    assert fiber.size == 8
    pts = fiber.points()
    assert [p.position for p in pts] == list(range(1, 9))
    assert str(pts[0]) == "1" and str(pts[1]) == "1'"


def test_under_path_for_v1():
    c = build_complex(2)
    p = make_path("under", Puncture(1), Puncture(3), c)
    assert p.passages == ("under",) * 3  # 1', 2, 2'


def test_tilde_path_examples():
    c = build_complex(3)
    p = make_path("tilde", Puncture(2), Puncture(5), c)
    assert p.passages == ("over",) * 5  # 2', 3, 3', 4, 4'
    p = make_path("tilde", Puncture(1), Puncture(4), c)
    # over 1', 2, 2'; under the shared-vertex line 3 punctures
    assert p.passages == ("over", "over", "over", "under", "under")


def test_tilde_path_under_target_twin():
    c = build_complex(3)
    p = make_path("tilde", Puncture(1), Puncture(4, True), c)
    assert p.passages[-1] == "under"  # puncture 4 just before 4'


def test_path_requires_order():
    c = build_complex(2)
    with pytest.raises(ValueError):
        make_path("tilde", Puncture(3), Puncture(1), c)


# --- half twists and the Artin action ----------------------------------------

def test_half_twist_adjacent():
    from galcov.braids import TwistPath
    from galcov.words import artin_gen

    tp = TwistPath(3, 4, ())
    assert half_twist(tp, 1, 8).letters == word(artin_gen(3))


def test_half_twist_exponent_sum():
    c = build_complex(2)
    p = make_path("tilde", Puncture(1), Puncture(3, True), c)
    for power in (1, 2, 3):
        b = half_twist(p, power, 8)
        assert sum(e for _, e in b.letters) == power


def test_even_power_is_pure():
    c = build_complex(2)
    p = make_path("under", Puncture(1), Puncture(2), c)
    b = half_twist(p, 2, 8)
    assert braid_permutation(b).is_identity()


def test_artin_defining_action():
    s1 = braid(8, 1)
    assert artin_apply(s1, x(1)) == concat(x(1), x(2), x(1).inverse())
    assert artin_apply(s1, x(2)) == x(1)
    assert artin_apply(s1, x(3)) == x(3)


def test_artin_inverse():
    b = braid(8, 1, -1)
    for pos in range(1, 9):
        assert artin_apply(b, x(pos)) == x(pos)


def test_braid_relations_via_action():
    assert braids_equal(braid(8, 1, 2, 1), braid(8, 2, 1, 2))
    assert braids_equal(braid(8, 1, 3), braid(8, 3, 1))
    assert not braids_equal(braid(8, 1), braid(8, 2))


@pytest.mark.parametrize("m", [3, 4])
def test_full_twist_action_is_global_conjugation(m):
    boundary = concat(*[x(k) for k in range(1, m + 1)])
    d2 = full_twist(m)
    for k in range(1, m + 1):
        expect = reduce(concat(boundary, x(k), boundary.inverse()))
        assert artin_apply(d2, x(k)) == expect


def test_full_twist_degree_and_purity():
    assert sum(e for _, e in full_twist(2).letters) == 2
    assert sum(e for _, e in full_twist(12).letters) == 12 * 11
    assert braid_permutation(full_twist(5)).is_identity()


@given(
    st.lists(st.integers(-7, 7).filter(lambda v: v != 0), max_size=12),
    st.lists(st.integers(-8, 8).filter(lambda v: v != 0), max_size=10),
)
@settings(max_examples=60, deadline=None)
def test_artin_action_invertible_on_word_sample(signed, word_ints):
    b = braid(8, *signed)
    binv = b.inverse()
    w = reduce(
        concat(*[word((fiber_generator(abs(v)), 1 if v > 0 else -1)) for v in word_ints])
        if word_ints
        else word()
    )
    img = artin_apply(b, w)
    assert artin_apply(binv, img) == w


@given(st.lists(st.integers(-7, 7).filter(lambda v: v != 0), max_size=10))
@settings(max_examples=40, deadline=None)
def test_braid_permutation_matches_action(signed):
    # the image of x_pos is a conjugate of the letter at position perm(pos)
    b = braid(8, *signed)
    perm = braid_permutation(b)
    for pos in (1, 5):
        img = artin_apply(b, x(pos))
        core = [gen for gen, _ in img.letters]
        assert len(img.letters) % 2 == 1
        mid = core[len(core) // 2]
        from galcov.braids import generator_position

        assert generator_position(mid) == perm(pos)


# --- monodromy factors --------------------------------------------------------

def test_regenerate_node_counts():
    c = build_complex(3)
    fs = regenerate(("node", 1, 4), c)
    assert len(fs) == 4 and all(f.kind == NODE and f.exponent == 2 for f in fs)


def test_regenerate_three_point_counts():
    c = build_complex(2)
    fs = regenerate(("three_point", 1), c)
    kinds = [f.kind for f in fs]
    assert kinds.count(CUSP) == 3 and kinds.count(BRANCH) == 1
    assert [f.exponent for f in fs if f.kind == CUSP] == [3, 3, 3]


def test_regenerate_rejects_unknown():
    c = build_complex(2)
    with pytest.raises(ValueError):
        regenerate(("node", 1, 3), c)  # lines 1,3 meet at V_1
    with pytest.raises(ValueError):
        regenerate(("three_point", 9), c)


def test_branch_transported_loops_v1():
    c = build_complex(2)
    br = [f for f in regenerate(("three_point", 1), c) if f.kind == BRANCH][0]
    a, b = br.transported_loops()
    assert a == reduce(concat(word(g(1), g(1, True)), word(g(3)), word(g(1), g(1, True)).inverse()))
    assert b == word(g(3, True))
    assert braid_permutation(br.braid).cycle_string() == "(5 6)"  # punctures 3, 3'


def test_cusp_variants_v1():
    c = build_complex(2)
    cusps = [f for f in regenerate(("three_point", 1), c) if f.kind == CUSP]
    loops = [f.transported_loops() for f in cusps]
    assert all(b == word(g(3, True)) for _, b in loops)
    assert {str(a) for a, _ in loops} == {"g1p^-1 g1 g1p", "g1p", "g1"}


def test_node_transported_loops_exceptional_pair():
    c = build_complex(3)
    fs = regenerate(("node", 1, 4), c)
    by_source = {f.source[3:]: f.transported_loops() for f in fs}
    w = word(g(2), g(2, True))
    conj = lambda core: reduce(concat(w.inverse(), core, w))
    inner = reduce(concat(word(g(1, True)).inverse(), word(g(1)), word(g(1, True))))
    assert by_source[(False, False)] == (conj(inner), word(g(4)))
    assert by_source[(False, True)] == (conj(inner), word(g(4, True)))
    assert by_source[(True, False)] == (conj(word(g(1, True))), word(g(4)))


@pytest.mark.parametrize("n", range(2, 7))
def test_census_and_permutation_identity(n):
    c = build_complex(n)
    fs = full_factorization(c)
    cen = factor_census(fs)
    assert cen[BRANCH] == 2 * n
    assert cen[CUSP] == 6 * n
    assert cen[NODE] == 8 * n * n - 12 * n
    assert cen["exponent_sum"] == 16 * n * n - 4 * n
    assert factorization_permutation(fs).is_identity()


def test_factor_braids_have_stated_exponent():
    c = build_complex(2)
    for f in full_factorization(c):
        assert sum(e for _, e in f.braid.letters) == f.exponent


def test_full_twist_product_n2():
    c = build_complex(2)
    prod = factorization_product(twist_ordered_factorization(c))
    assert braids_equal(prod, full_twist(8))


def test_delta_squared_report_n2():
    rep = delta_squared_report(build_complex(2))
    assert rep["equal"] is True and rep["ordering"] == "twist"


@pytest.mark.parametrize("n", [2, 3])
def test_conjugation_rule_abelianized(n):
    # mirrored-passage node variants induce relators with equal abelianization
    from galcov.braids import MonodromyFactor, TwistPath, path_conjugator
    from galcov.presentation import relators_from_factor
    from galcov.words import exponent_sum

    c = build_complex(n)
    for (i, j) in c.incidental_pairs:
        for f in regenerate(("node", i, j), c):
            path = make_path("tilde", Puncture(i, f.source[3]), Puncture(j, f.source[4]), c)
            flipped = TwistPath(
                path.start,
                path.end,
                tuple("over" if p == "under" else "under" for p in path.passages),
            )
            mirrored = MonodromyFactor(
                kind=f.kind,
                source=f.source,
                conjugator=path_conjugator(flipped, 4 * n),
                core=f.core,
                exponent=f.exponent,
            )
            r1 = relators_from_factor(f)[0]
            r2 = relators_from_factor(mirrored)[0]
            gens = {gen for gen, _ in r1.letters} | {gen for gen, _ in r2.letters}
            for gen in gens:
                assert exponent_sum(r1, gen) == exponent_sum(r2, gen) == 0
