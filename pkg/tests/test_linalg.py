import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from centstab.linalg import (
    Echelon,
    Field,
    FieldMismatch,
    Matrix,
    Q,
    SemisimplicityViolation,
    close_under_maps,
    image_basis,
    inverse,
    is_invariant,
    kernel_basis,
    quotient_basis,
    rank,
    section,
    solve,
)
from oracles import dense, dense_rank

F5 = Field(5)


def test_field_parsing():
    assert Field.parse("Q") == Q
    assert Field.parse("Fp:7").p == 7
    assert Field.parse("Fp:7").spec == "Fp:7"
    for bad in ("Fp:8", "Fp:x", "R", "Fp:1"):
        with pytest.raises(ValueError):
            Field.parse(bad)


def test_scalars_canonical():
    assert Q(Fraction(6, 3)) == 2 and type(Q(Fraction(6, 3))) is int
    assert Q("3/7") == Fraction(3, 7)
    assert F5(-1) == 4
    assert F5(Fraction(1, 2)) == 3
    assert F5.inv(2) == 3
    assert Q.inv(Fraction(2, 3)) == Fraction(3, 2)


def test_semisimplicity_guard():
    Field(7).check_semisimple(6)
    Q.check_semisimple(100)
    with pytest.raises(SemisimplicityViolation):
        Field(5).check_semisimple(5)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        Matrix.identity(Q, 2) @ Matrix.identity(F5, 2)
    with pytest.raises(FieldMismatch):
        Matrix.identity(Q, 2) + Matrix.identity(F5, 2)


def test_rank_examples():
    assert rank(Matrix.identity(Q, 4)) == 4
    assert kernel_basis(Matrix.identity(Q, 4)).ncols == 0
    Z = Matrix.zeros(Q, 3, 5)
    assert rank(Z) == 0
    assert kernel_basis(Z).ncols == 5
    A = Matrix.from_lists(F5, [[1, 1, 0], [0, 1, 1]])
    assert rank(A) == 2
    K = kernel_basis(A)
    assert K.ncols == 1
    assert (A @ K).is_zero()


def test_image_basis_uses_pivot_columns():
    A = Matrix.from_lists(Q, [[1, 2, 0], [2, 4, 1]])
    B = image_basis(A)
    assert B.to_lists() == [[1, 0], [2, 1]]


def test_quotient_examples():
    reps, P = quotient_basis(3, Matrix.zeros(Q, 3, 0))
    assert P == Matrix.identity(Q, 3) and reps == [0, 1, 2]
    reps, P = quotient_basis(3, Matrix.identity(Q, 3))
    assert P.nrows == 0 and reps == []
    U = Matrix.from_lists(Q, [[1], [1], [1]])
    reps, P = quotient_basis(3, U)
    assert rank(P) == 2
    assert (P @ U).is_zero()
    assert P @ section(reps, 3, Q) == Matrix.identity(Q, 2)


def test_close_under_maps_examples():
    maps = [Matrix.permutation(Q, [1, 0, 2]), Matrix.permutation(Q, [0, 2, 1])]
    assert close_under_maps(Matrix.zeros(Q, 3, 0), maps).ncols == 0
    seed = Matrix.from_lists(Q, [[1], [-1], [0]])
    assert close_under_maps(seed, [Matrix.identity(Q, 3)]).ncols == 1
    B = close_under_maps(seed, maps)
    assert B.ncols == 2
    assert is_invariant(B, maps)


def test_inverse_and_solve():
    A = Matrix.from_lists(Q, [[2, 1], [1, 1]])
    assert A @ inverse(A) == Matrix.identity(Q, 2)
    with pytest.raises(ValueError):
        inverse(Matrix.from_lists(Q, [[1, 1], [1, 1]]))
    x = solve(A, {0: 3, 1: 2})
    assert A.apply(x) == {0: 3, 1: 2}
    assert solve(Matrix.from_lists(Q, [[1], [1]]), {0: 1}) is None


def test_json_round_trip():
    A = Matrix.from_lists(Q, [[Fraction(3, 7), 0], [12, -1]])
    data = A.to_json()
    assert data == [["3/7", "0"], ["12", "-1"]]
    assert Matrix.from_json(Q, data) == A


def test_echelon_incremental():
    e = Echelon(Q, 3)
    assert e.add({0: 1, 1: 1}) is not None
    assert e.add({0: 2, 1: 2}) is None
    assert e.contains({0: 3, 1: 3})
    assert not e.contains({2: 1})
    assert e.rank == 1


# -- randomized properties ------------------------------------------------------------

def matrices(field, max_dim=12):
    p = field.p

    @st.composite
    def build(draw):
        r = draw(st.integers(0, max_dim))
        c = draw(st.integers(0, max_dim))
        if p:
            entry = st.integers(0, p - 1)
        else:
            entry = st.fractions(min_value=-5, max_value=5, max_denominator=4)
        zero_bias = st.one_of(st.just(0), entry)
        data = [[draw(zero_bias) for _ in range(c)] for _ in range(r)]
        return Matrix.from_lists(field, data, ncols=c)

    return build()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([Q, Field(2), Field(7), Field(101)]).flatmap(matrices))
def test_rank_nullity(A):
    K = kernel_basis(A)
    assert rank(A) + K.ncols == A.ncols
    assert (A @ K).is_zero()
    if A.nrows and A.ncols:
        assert rank(A) == dense_rank(dense(A), A.field.p)
    assert rank(image_basis(A)) == rank(A)


@settings(max_examples=20, deadline=None)
@given(st.integers(30, 40), st.sampled_from([Q, Field(13)]), st.integers(0, 2**32))
def test_rank_nullity_large(n, field, seed):
    rnd = random.Random(seed)
    data = [[rnd.randint(-2, 2) if rnd.random() < 0.3 else 0 for _ in range(n)] for _ in range(n - 3)]
    A = Matrix.from_lists(field, data, ncols=n)
    assert rank(A) + kernel_basis(A).ncols == n
    assert rank(A) == dense_rank(dense(A), field.p)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([Q, Field(3)]).flatmap(lambda f: matrices(f, 8)))
def test_quotient_section_identity(U):
    d = U.nrows
    reps, P = quotient_basis(d, U)
    assert P.nrows == d - rank(U)
    assert (P @ U).is_zero()
    assert P @ section(reps, d, U.field) == Matrix.identity(U.field, len(reps))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_closure_is_invariant(d, seed):
    rnd = random.Random(seed)
    maps = [Matrix.from_lists(Q, [[rnd.randint(-1, 1) for _ in range(d)] for _ in range(d)]) for _ in range(2)]
    v = Matrix.from_lists(Q, [[rnd.randint(-1, 1)] for _ in range(d)], ncols=1)
    B = close_under_maps(v, maps)
    assert is_invariant(B, maps)
    assert rank(B.hstack(v)) == rank(B)
