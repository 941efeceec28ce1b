"""Exact linear algebra kernel: dense ops, signed permutations, solvers."""

import random
from fractions import Fraction

import pytest

from grafclifford.linalg import (
    SignedPerm,
    as_matrix,
    identity,
    is_identity,
    is_scalar_matrix,
    is_zero_matrix,
    mat_inverse,
    mat_mul,
    mat_scale,
    mat_trace,
    mat_vec,
    nullspace,
    orthonormal_congruence,
    rational_sqrt,
    rref,
    solve_twisted_system,
    solve_twisted_system_dense,
    transpose,
    vec_dot,
    zeros,
)


def rand_matrix(rng, n, box=4):
    return as_matrix([[rng.randint(-box, box) for _ in range(n)] for _ in range(n)])


def test_matrix_basics():
    a = as_matrix([[1, 2], [3, 4]])
    b = as_matrix([[0, 1], [1, 0]])
    assert mat_mul(a, b) == as_matrix([[2, 1], [4, 3]])
    assert transpose(a) == as_matrix([[1, 3], [2, 4]])
    assert mat_trace(a) == 5
    assert mat_vec(a, (1, 1)) == (3, 7)
    assert vec_dot((1, 2, 3), (4, 5, 6)) == 32
    assert is_zero_matrix(zeros(3, 3))
    assert is_identity(identity(4))
    assert is_scalar_matrix(mat_scale(identity(3), Fraction(5, 2))) == Fraction(5, 2)
    assert is_scalar_matrix(as_matrix([[1, 1], [0, 1]])) is None


def test_inverse_exact_and_singular():
    rng = random.Random(21)
    found = 0
    while found < 10:
        a = rand_matrix(rng, 4)
        try:
            inv = mat_inverse(a)
        except (ValueError, ZeroDivisionError):
            continue
        found += 1
        assert mat_mul(a, inv) == identity(4)
        assert mat_mul(inv, a) == identity(4)
    with pytest.raises((ValueError, ZeroDivisionError)):
        mat_inverse(as_matrix([[1, 2], [2, 4]]))


def test_rref_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    reduced, pivots = rref([list(r) for r in rows])
    assert len(pivots) == 2
    vecs = nullspace([list(r) for r in rows], 3)
    assert len(vecs) == 1
    for row in rows:
        assert sum(c * x for c, x in zip(row, vecs[0])) == 0
    rng = random.Random(22)
    for _ in range(10):
        m = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
        for vec in nullspace([list(r) for r in m], 5):
            assert any(vec)
            for row in m:
                assert sum(c * x for c, x in zip(row, vec)) == 0


def test_signed_perm_round_trip_and_composition():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(1, 6)
        cols = list(range(n))
        rng.shuffle(cols)
        sp = SignedPerm(tuple(cols), tuple(rng.choice((1, -1)) for _ in range(n)))
        dense = sp.to_dense()
        assert SignedPerm.from_dense(dense) == sp
        assert sp.transpose().to_dense() == transpose(dense)
        vec = tuple(rng.randint(-4, 4) for _ in range(n))
        assert sp.apply(vec) == mat_vec(dense, vec)
        cols2 = list(range(n))
        rng.shuffle(cols2)
        sp2 = SignedPerm(tuple(cols2), tuple(rng.choice((1, -1)) for _ in range(n)))
        assert sp.compose(sp2).to_dense() == mat_mul(dense, sp2.to_dense())
    assert SignedPerm.from_dense(as_matrix([[1, 1], [0, 1]])) is None
    assert SignedPerm.identity(3).scalar_value() == 1
    assert SignedPerm.identity(3).neg().scalar_value() == -1


def _span_signature(mats, d):
    """Canonical rref of the vectorized span, for span comparison."""
    rows = [[m[i][j] for i in range(d) for j in range(d)] for m in mats]
    reduced, pivots = rref(rows)
    return [tuple(reduced[r]) for r in range(len(pivots))]


def test_twisted_solver_agrees_with_dense_fallback():
    rng = random.Random(24)
    for _ in range(10):
        n = 4
        cols = list(range(n))
        rng.shuffle(cols)
        s = SignedPerm(tuple(cols), tuple(rng.choice((1, -1)) for _ in range(n)))
        rng.shuffle(cols)
        t = SignedPerm(tuple(cols), tuple(rng.choice((1, -1)) for _ in range(n)))
        eps = rng.choice((1, -1))
        fast = solve_twisted_system(n, [(s, t, eps)])
        dense = solve_twisted_system_dense(n, [(s.to_dense(), t.to_dense(), eps)])
        for m in fast:
            assert mat_mul(m, s.to_dense()) == mat_scale(mat_mul(t.to_dense(), m), eps)
        assert _span_signature(fast, n) == _span_signature(dense, n)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(0) == 0
    assert rational_sqrt(2) is None
    assert rational_sqrt(-4) is None


def test_orthonormal_congruence():
    gram = as_matrix([[4, 0, 0], [0, -9, 0], [0, 0, 1]])
    result = orthonormal_congruence(gram)
    assert result is not None
    c, signs = result
    diag = as_matrix(
        [[signs[i] if i == j else 0 for j in range(3)] for i in range(3)]
    )
    assert mat_mul(transpose(c), mat_mul(diag, c)) == gram
    assert orthonormal_congruence(as_matrix([[2, 0], [0, 1]])) is None
