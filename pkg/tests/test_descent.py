from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from descent_lie.descent import (
    ClassFunction,
    DescentAlgebra,
    NotInDescentAlgebra,
    descent_basis,
    descent_coordinates,
    dynkin_omega,
    radical_report,
    solomon_hom,
    structure_constants,
    structure_constants_by_matrices,
    young_character,
)
from descent_lie.fields import GF, QQ, ZZ
from descent_lie.group_algebra import GroupAlgebraElement
from descent_lie.linalg import solve
from descent_lie.symgroup import (
    Composition,
    Partition,
    Permutation,
    all_permutations,
    class_representative,
    compositions,
    multinomial,
    partitions,
    refines,
)

C = Composition


def young_subgroup(mu):
    return [pi for pi in all_permutations(mu.n)
            if all(min(b) <= pi(i) <= max(b) for b in mu.blocks() for i in b)]


def fixed_cosets_oracle(mu, pi):
    """Right cosets S_mu sigma with S_mu sigma pi = S_mu sigma, by enumeration."""
    young = young_subgroup(mu)
    cosets = {frozenset(y * s for y in young) for s in all_permutations(mu.n)}
    return sum(1 for c in cosets if frozenset(x * pi for x in c) == c)


# --- basis


def test_basis_examples():
    assert descent_basis(C((4,))) == GroupAlgebraElement.one(4)
    assert len(descent_basis(C((1, 1, 1)))) == 6
    assert len(descent_basis(C((2, 1)))) == 3


@pytest.mark.parametrize("n", range(1, 8))
def test_leading_terms_distinct(n):
    D = DescentAlgebra(n)
    leads = [D.leading_permutation(mu) for mu in D.compositions]
    assert len(set(leads)) == len(leads) == 2 ** (n - 1)
    for mu, lead in zip(D.compositions, leads):
        assert lead.descent_set() == mu.partial_sums()
        if n <= 6:
            assert lead in dict(descent_basis(mu).items())


@pytest.mark.parametrize("n", range(1, 6))
def test_basis_sizes(n):
    for mu in compositions(n):
        assert len(descent_basis(mu)) == multinomial(mu)


# --- structure constants


def test_structure_constant_examples():
    assert structure_constants(C((2, 2, 2)), C((4, 2)))[C((2, 2, 2))] == 3
    for mu in compositions(6):
        assert C((2, 2, 2)) not in structure_constants(C((3, 3)), mu)
    for lam in compositions(4):
        assert structure_constants(lam, C((4,))) == {lam: 1}


@pytest.mark.parametrize("n", range(1, 6))
def test_structure_constants_match_matrix_rule(n):
    for lam in compositions(n):
        for mu in compositions(n):
            assert structure_constants(lam, mu) == structure_constants_by_matrices(lam, mu)


@pytest.mark.parametrize("n", range(1, 5))
def test_structure_constants_by_generic_solve(n):
    # solve X^lam X^mu = sum c_nu X^nu as a full n!-row linear system
    basis = np.array([descent_basis(mu).to_dense() for mu in compositions(n)], dtype=object).T
    for lam in compositions(n):
        for mu in compositions(n):
            prod = (descent_basis(lam) * descent_basis(mu)).to_dense()
            coeffs = solve(QQ, basis, prod)
            expected = {nu: int(c) for nu, c in zip(compositions(n), coeffs) if c}
            assert structure_constants(lam, mu) == expected


@pytest.mark.parametrize("n", range(1, 7))
def test_structure_constants_nonnegative_and_refining(n):
    D = DescentAlgebra(n)
    for lam in D.compositions:
        for mu in D.compositions:
            for nu, c in D.structure_constants(lam, mu).items():
                assert c > 0
                assert refines(nu, lam)


def test_structure_constants_n7_spot_check():
    D = DescentAlgebra(7)
    rng = random.Random(7)
    comps = D.compositions
    for _ in range(4):
        lam, mu = rng.choice(comps), rng.choice(comps)
        prod = D.from_group_algebra(descent_basis(lam) * descent_basis(mu))
        assert D.structure_constants(lam, mu) == {nu: int(c) for nu, c in prod.items()}


# --- Young characters and the Solomon map


@pytest.mark.parametrize("n", range(1, 5))
def test_young_characters_match_coset_oracle(n):
    for mu in compositions(n):
        phi = young_character(mu)
        for lam in partitions(n):
            assert phi[lam] == fixed_cosets_oracle(mu, class_representative(lam))


@pytest.mark.parametrize("n", range(2, 7))
def test_young_character_examples(n):
    assert young_character(C((n,))) == ClassFunction.constant(n, ZZ, 1)
    for mu in compositions(n):
        if mu != C((n,)):
            assert young_character(mu)[Partition((n,))] == 0
    regular = young_character(C((1,) * n))
    from math import factorial

    assert regular[Partition((1,) * n)] == factorial(n)
    assert all(v == 0 for lam, v in regular.items() if lam != Partition((1,) * n))


@pytest.mark.parametrize("field", [ZZ, GF(2), GF(3)], ids=repr)
@pytest.mark.parametrize("n", range(1, 6))
def test_solomon_multiplicative(field, n):
    D = DescentAlgebra(n, field)
    for lam in D.compositions:
        for mu in D.compositions:
            assert D.solomon_hom(D.X(lam) * D.X(mu)) == D.young_character(lam) * D.young_character(mu)


@given(st.integers(1, 5), st.sampled_from([ZZ, QQ, GF(2), GF(3), GF(5)]), st.data())
@settings(max_examples=60, deadline=None)
def test_solomon_is_a_ring_map(n, field, data):
    D = DescentAlgebra(n, field)
    coords = st.lists(st.integers(-4, 4), min_size=D.dim, max_size=D.dim)
    a, b = D.from_vector(data.draw(coords)), D.from_vector(data.draw(coords))
    assert D.solomon_hom(a * b) == D.solomon_hom(a) * D.solomon_hom(b)
    assert D.solomon_hom(a + b) == D.solomon_hom(a) + D.solomon_hom(b)
    assert solomon_hom(D.one()) == ClassFunction.constant(n, field, 1)


@given(st.integers(1, 5), st.data())
@settings(max_examples=40, deadline=None)
def test_descent_product_matches_group_algebra(n, data):
    D = DescentAlgebra(n, ZZ)
    coords = st.lists(st.integers(-3, 3), min_size=D.dim, max_size=D.dim)
    a, b = D.from_vector(data.draw(coords)), D.from_vector(data.draw(coords))
    assert (a * b).to_group_algebra() == a.to_group_algebra() * b.to_group_algebra()
    assert D.from_group_algebra(a.to_group_algebra()) == a


def test_not_in_descent_algebra():
    g = GroupAlgebraElement.from_permutation(Permutation((2, 1, 3)))
    with pytest.raises(NotInDescentAlgebra):
        descent_coordinates(g)


def test_omega3_solomon_image_over_f3():
    D = DescentAlgebra(3, GF(3))
    w = D.from_group_algebra(dynkin_omega(3, GF(3)))
    image = D.solomon_hom(w)
    # omega_3 acts on L_3 by 3 = 0 in F_3; its image is 3 * indicator of 3-cycles, i.e. zero
    assert all(v == 0 for _, v in image.items())
    assert DescentAlgebra(3, ZZ).solomon_hom(descent_coordinates(dynkin_omega(3)))[Partition((3,))] == 3


# --- the Dynkin operator


def test_dynkin_examples():
    assert dynkin_omega(1) == GroupAlgebraElement.one(1)
    tau = GroupAlgebraElement.from_permutation(Permutation((2, 1)))
    assert dynkin_omega(2) == GroupAlgebraElement.one(2) - tau
    w3 = dynkin_omega(3)
    assert len(w3) == 4
    assert sorted(c for _, c in w3.items()) == [-1, -1, 1, 1]
    expansion = DescentAlgebra(3).from_group_algebra(w3)
    assert [int(c) for c in expansion.coords] == [3, -1, -2, 1]
    assert expansion.to_group_algebra() == w3


@pytest.mark.parametrize("n", range(1, 7))
def test_dynkin_identities(n):
    w = dynkin_omega(n)
    assert w * w == w.scale(n)
    DescentAlgebra(n).from_group_algebra(w)
    for mu in compositions(n):
        if mu != C((n,)):
            assert (descent_basis(mu) * w).is_zero()


@pytest.mark.parametrize("n,p", [(2, 2), (3, 3), (4, 2), (5, 5), (6, 2), (6, 3)])
def test_dynkin_square_vanishes_mod_p(n, p):
    w = dynkin_omega(n, GF(p))
    assert (w * w).is_zero()


# --- radical


def test_radical_examples():
    assert radical_report(2, 3) == (0, 1)
    assert radical_report(2, 2) == (1, 2)
    assert radical_report(1, 5) == (0, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", range(1, 7))
def test_radical_nilpotent(n, p):
    from descent_lie.symgroup import p_regular_partitions

    dim, index = radical_report(n, p)
    assert dim == 2 ** (n - 1) - len(p_regular_partitions(n, p))
    assert 1 <= index <= 2 ** (n - 1)


def test_radical_over_rationals():
    # the Young characters stay dependent over Q once n >= 3
    assert radical_report(3, 0).kernel_dim == 1


def test_class_function_arithmetic():
    f = ClassFunction(3, QQ, {(3,): 1, (2, 1): 2})
    g = ClassFunction.constant(3, QQ, 2)
    assert (f * g)[(2, 1)] == 4
    assert (f - f) == ClassFunction(3, QQ)
    with pytest.raises(ValueError):
        ClassFunction(3, QQ, {(4,): 1})
