from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from descent_lie.descent import dynkin_omega
from descent_lie.fields import GF, QQ, ZZ, field_from_name
from descent_lie.group_algebra import (
    GroupAlgebraElement,
    dense_product,
    group_sum,
    left_multiply_rows,
    right_multiply_rows,
)
from descent_lie.linalg import (
    Subspace,
    kernel,
    left_kernel,
    rref,
    right_ideal,
    solve,
    subspace_contains,
    subspace_dim,
    subspace_power,
    subspace_product,
)
from descent_lie.symgroup import Permutation, all_permutations, symmetric_group

FIELDS = [ZZ, QQ, GF(2), GF(3), GF(5)]


def random_element(rng, n, field, terms=6):
    elems = all_permutations(n)
    return GroupAlgebraElement(
        n, field, [(rng.choice(elems), rng.randint(-3, 3)) for _ in range(terms)]
    )


def oracle_product(a, b):
    """Dense n! x n! table product, independent of the sparse code path."""
    elems = all_permutations(a.n)
    pos = {pi: i for i, pi in enumerate(elems)}
    table = [[pos[Permutation([y[x - 1] for x in pi])] for y in elems] for pi in elems]
    out = [0] * len(elems)
    for pi, x in a.items():
        for sigma, y in b.items():
            out[table[pos[pi]][pos[sigma]]] += x * y
    return GroupAlgebraElement(a.n, a.field, zip(elems, out))


# --- scalars


def test_prime_field_canonical_residues():
    F = GF(5)
    assert F(-1) == 4
    assert F(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 5))
    with pytest.raises(ValueError):
        GF(4)


def test_field_names():
    assert field_from_name("Z") == ZZ
    assert field_from_name("0") == QQ
    assert field_from_name("q") == QQ
    assert field_from_name("3") == GF(3)
    with pytest.raises(ValueError):
        ZZ(Fraction(1, 2))


# --- group algebra


@pytest.mark.parametrize("field", FIELDS, ids=repr)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_product_matches_dense_oracle(field, n):
    rng = random.Random(1000 + n)
    for _ in range(100 if n == 4 else 25):
        a, b = random_element(rng, n, field), random_element(rng, n, field)
        assert a * b == oracle_product(a, b)
        assert GroupAlgebraElement.from_dense(n, field, dense_product(n, field, a.to_dense(), b.to_dense())) == a * b


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_ring_axioms(seed):
    rng = random.Random(seed)
    field = rng.choice(FIELDS)
    n = rng.randint(1, 4)
    a, b, c = (random_element(rng, n, field) for _ in range(3))
    one = GroupAlgebraElement.one(n, field)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert one * a == a == a * one
    assert (a - a).is_zero()


def test_examples():
    tau = Permutation((2, 1))
    one = GroupAlgebraElement.one(2, QQ)
    t = GroupAlgebraElement.from_permutation(tau, QQ)
    assert ((one + t) * (one - t)).is_zero()
    w = dynkin_omega(2, ZZ)
    assert w * w == w.scale(2)
    b = random_element(random.Random(3), 3, ZZ)
    assert GroupAlgebraElement.one(3) * b == b


def test_no_zero_coefficients_stored():
    F = GF(3)
    a = GroupAlgebraElement(2, F, [(Permutation((1, 2)), 3), (Permutation((2, 1)), 1)])
    assert len(a) == 1
    assert all(c != 0 for _, c in a.items())


def test_mismatch_errors():
    with pytest.raises(ValueError):
        GroupAlgebraElement.one(2) * GroupAlgebraElement.one(3)
    with pytest.raises(ValueError):
        GroupAlgebraElement.one(2, GF(2)) + GroupAlgebraElement.one(2, GF(3))


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_text_round_trip(field):
    rng = random.Random(7)
    for n in (1, 3, 5):
        a = random_element(rng, n, field, terms=20)
        if field == QQ:
            a = a.scale(Fraction(2, 7))
        text = a.to_text()
        assert text.splitlines()[0] == f"n={n} field={field.name}"
        b = GroupAlgebraElement.from_text(text)
        assert b == a
        assert b.to_text() == text


def test_row_multiplication_helpers():
    rng = random.Random(11)
    for field in (QQ, GF(3)):
        g = random_element(rng, 4, field)
        rows = [random_element(rng, 4, field) for _ in range(3)]
        dense = np.vstack([r.to_dense() for r in rows])
        left = left_multiply_rows(g, dense)
        right = right_multiply_rows(dense, g)
        for i, r in enumerate(rows):
            assert GroupAlgebraElement.from_dense(4, field, left[i]) == g * r
            assert GroupAlgebraElement.from_dense(4, field, right[i]) == r * g


# --- subspaces


def test_right_ideal_examples():
    assert right_ideal(GroupAlgebraElement.one(3, GF(3))).dim == 6
    assert right_ideal(dynkin_omega(3, GF(3))).dim == 2
    assert right_ideal(group_sum(3, QQ)).dim == 1
    assert right_ideal(GroupAlgebraElement.zero(3, GF(2))).dim == 0


@pytest.mark.parametrize("field", [QQ, GF(2), GF(3), GF(5)], ids=repr)
def test_sum_ideal_is_a_line(field):
    for n in range(1, 6):
        assert right_ideal(group_sum(n, field)).dim == 1


@pytest.mark.parametrize("field", [QQ, GF(3)], ids=repr)
def test_right_ideal_closed_under_right_multiplication(field):
    rng = random.Random(5)
    g = random_element(rng, 4, field, terms=4)
    ideal = right_ideal(g)
    for _ in range(20):
        h = random_element(rng, 4, field)
        pi = GroupAlgebraElement.from_permutation(rng.choice(all_permutations(4)), field)
        assert subspace_contains(ideal, g * h)
        assert subspace_contains(ideal, g * h * pi)


@pytest.mark.parametrize("field", [QQ, GF(2), GF(7)], ids=repr)
def test_echelon_form_is_canonical(field):
    rng = np.random.default_rng(0)
    base = rng.integers(-4, 5, size=(5, 12))
    combo = rng.integers(-3, 4, size=(9, 5))
    spanning = np.vstack([combo @ base, base[::-1]])
    a = Subspace(field, 12, base)
    b = Subspace(field, 12, spanning)
    assert np.array_equal(np.asarray(a.basis, dtype=object), np.asarray(b.basis, dtype=object))
    assert a == b


def test_rank_matches_naive_elimination():
    rng = np.random.default_rng(1)
    for p in (2, 3, 5, 65521):
        m = rng.integers(0, p, size=(40, 60))
        m[20:] = (m[:20] * 3 + m[:20]) % p
        assert Subspace(GF(p), 60, m).dim == _naive_rank(m.tolist(), p)


def _naive_rank(rows, p):
    rows = [r[:] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0])
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def test_kernel_and_solve():
    m = np.array([[1, 2, 3], [2, 4, 6]])
    k = kernel(QQ, m)
    assert k.dim == 2
    for row in k.basis:
        assert not np.any(np.dot(m, row))
    lk = left_kernel(GF(5), m)
    assert lk.dim == 1
    x = solve(QQ, [[2, 0], [0, 4]], [1, 1])
    assert x == [Fraction(1, 2), Fraction(1, 4)]
    with pytest.raises(ValueError):
        solve(QQ, [[1, 0], [1, 0]], [1, 2])
    red, piv = rref(GF(3), [[0, 2, 1], [0, 1, 2]])
    assert piv == [1]


def test_subspace_products():
    F = GF(3)
    zero = Subspace.zero(F, 6, n=3)
    assert subspace_dim(zero) == 0
    ideal = right_ideal(dynkin_omega(3, F))
    assert subspace_product(ideal, zero).dim == 0
    # omega_3^2 = 3 omega_3 = 0 over F_3, so L_3 * L_3 is zero
    assert subspace_product(ideal, ideal).dim == 0
    whole = right_ideal(GroupAlgebraElement.one(3, F))
    assert subspace_power(whole, 3).dim == 6
    with pytest.raises(ValueError):
        subspace_product(ideal, Subspace.zero(GF(2), 6, n=3))


def test_subspace_membership_of_elements():
    F = GF(2)
    ideal = right_ideal(dynkin_omega(4, F))
    w = dynkin_omega(4, F)
    assert w in ideal
    assert GroupAlgebraElement.one(4, F) not in ideal
    assert ideal <= right_ideal(GroupAlgebraElement.one(4, F))
    assert symmetric_group(4).order == 24
