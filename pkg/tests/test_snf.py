import random

from hypothesis import given, settings
from hypothesis import strategies as st

from galcov.presentation import GroupPresentation
from galcov.snf import (
    IntegerMatrix,
    SNFResult,
    abelianize,
    naive_smith_normal_form,
    smith_normal_form,
)
from galcov.words import surface_gen, word


def test_diagonal_input():
    m = IntegerMatrix.from_dense([[2, 0], [0, 6]])
    assert smith_normal_form(m) == SNFResult((2, 6), 0)


def test_divisibility_chain_is_enforced():
    m = IntegerMatrix.from_dense([[6, 0], [0, 4]])
    res = smith_normal_form(m)
    assert res.invariant_factors == (2, 12)


def test_zero_matrix():
    m = IntegerMatrix.from_dense([[0] * 5, [0] * 5, [0] * 5])
    assert smith_normal_form(m) == SNFResult((), 5)


def test_abelianize_rows():
    a, b = surface_gen(1), surface_gen(2)
    p = GroupPresentation(
        generators=(a, b),
        relators=(word(a, a), word(a, b, (a, -1), (b, -1))),
        n=1,
    )
    m = abelianize(p)
    assert m.rows[0] == {0: 2}
    assert m.rows[1] == {}  # commutator abelianizes to zero


def test_torsion_description():
    res = smith_normal_form(IntegerMatrix.from_dense([[2, 0, 0], [0, 3, 0]]))
    assert res.free_rank == 1
    assert res.torsion == (2, 3) or res.torsion == (6,)


dense_strategy = st.lists(
    st.lists(st.integers(-10, 10), min_size=1, max_size=8),
    min_size=1,
    max_size=8,
).filter(lambda rows: len({len(r) for r in rows}) == 1)


@given(dense_strategy)
@settings(max_examples=300, deadline=None)
def test_matches_naive_oracle(rows):
    m = IntegerMatrix.from_dense(rows)
    assert smith_normal_form(m) == naive_smith_normal_form(m)


def test_thousand_random_trials_against_oracle():
    rnd = random.Random(2024)
    for _ in range(1000):
        r, c = rnd.randint(1, 8), rnd.randint(1, 8)
        rows = [[rnd.randint(-10, 10) for _ in range(c)] for _ in range(r)]
        m = IntegerMatrix.from_dense(rows)
        assert smith_normal_form(m) == naive_smith_normal_form(m)


def test_transpose_invariance():
    rnd = random.Random(7)
    for _ in range(50):
        rows = [[rnd.randint(-6, 6) for _ in range(5)] for _ in range(3)]
        m = IntegerMatrix.from_dense(rows)
        mt = IntegerMatrix.from_dense([list(col) for col in zip(*rows)])
        a, b = smith_normal_form(m), smith_normal_form(mt)
        assert a.invariant_factors == b.invariant_factors


def test_known_presentation_abelianizations():
    a, b = surface_gen(1), surface_gen(2)
    # Z x Z/2: <a, b | b^2, [a,b]>
    p = GroupPresentation(
        generators=(a, b),
        relators=(word(b, b), word(a, b, (a, -1), (b, -1))),
        n=1,
    )
    res = smith_normal_form(abelianize(p))
    assert res.free_rank == 1 and res.torsion == (2,)
