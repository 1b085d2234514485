from __future__ import annotations

import itertools
from collections import Counter
from math import factorial

import pytest
from hypothesis import given, strategies as st

from descent_lie.symgroup import (
    CapacityError,
    Composition,
    Partition,
    Permutation,
    all_permutations,
    check_capacity,
    class_representative,
    class_size,
    compositions,
    cycle_type,
    is_p_regular,
    min_coset_reps,
    multinomial,
    p_equiv_classes,
    p_regular_partitions,
    partitions,
    refines,
    regularize,
    symmetric_group,
)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


# --- permutations


def test_composition_is_left_to_right():
    pi = Permutation((2, 3, 1))
    sigma = Permutation((2, 1, 3))
    prod = pi * sigma
    for i in range(1, 4):
        assert prod(i) == sigma(pi(i))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_group_axioms(triple):
    a, b, c = triple
    e = Permutation.identity(len(a))
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e


def test_invalid_permutations_rejected():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation((0, 1))


def test_text_forms():
    assert str(Permutation.parse("2,1,3")) == "2,1,3"
    assert Composition.parse("1,2,3") == Composition((1, 2, 3))
    with pytest.raises(ValueError):
        Partition((1, 2))


# --- cycle types and classes


def test_cycle_type_examples():
    assert cycle_type(Permutation.identity(3)) == Partition((1, 1, 1))
    zeta6 = Permutation.from_cycles(6, [(6, 5, 4, 3, 2, 1)])
    assert cycle_type(zeta6) == Partition((6,))
    pi = Permutation.from_cycles(5, [(1, 2), (3, 4, 5)])
    assert cycle_type(pi) == Partition((3, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_class_sizes_by_enumeration(n):
    counts = Counter(cycle_type(pi) for pi in all_permutations(n))
    assert sum(class_size(lam) for lam in partitions(n)) == factorial(n)
    for lam in partitions(n):
        assert class_size(lam) == counts[lam]
        assert cycle_type(class_representative(lam)) == lam


def test_class_size_examples():
    assert class_size(Partition((1,) * 6)) == 1
    assert class_size(Partition((6,))) == 120
    assert class_size(Partition((2, 2, 2))) == 15


def test_partition_orders():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    comps = list(compositions(3))
    assert comps == [(3,), (2, 1), (1, 2), (1, 1, 1)]
    assert [len(list(partitions(n))) for n in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]


# --- coset representatives


def _block_increasing(pi, mu):
    start = 0
    for part in mu:
        block = pi[start:start + part]
        if list(block) != sorted(block):
            return False
        start += part
    return True


@pytest.mark.parametrize("n", range(1, 6))
def test_min_coset_reps_one_per_coset(n):
    for mu in compositions(n):
        reps = set(min_coset_reps(mu))
        assert len(reps) == multinomial(mu)
        assert reps == {pi for pi in all_permutations(n) if _block_increasing(pi, mu)}
        # brute-force right cosets S_mu * sigma
        young = [pi for pi in all_permutations(n) if all(
            min(b) <= pi(i) <= max(b) for b in mu.blocks() for i in b)]
        cosets = {frozenset(y * s for y in young) for s in all_permutations(n)}
        assert len(cosets) == len(reps)
        for coset in cosets:
            assert len(coset & reps) == 1


def test_min_coset_reps_examples():
    assert min_coset_reps(Composition((4,))) == [Permutation.identity(4)]
    assert set(min_coset_reps(Composition((1, 1, 1)))) == set(all_permutations(3))
    reps = min_coset_reps(Composition((2, 1)))
    assert len(reps) == 3
    assert all(pi(1) < pi(2) for pi in reps)


# --- p-regularity


def test_regularize_examples():
    assert regularize(Partition((6, 3, 2)), 2) == Partition((3, 3, 3, 1, 1))
    assert regularize(Partition((5, 4, 1)), 3) == Partition((5, 4, 1))
    assert regularize(Partition((6,)), 3) == Partition((2, 2, 2))


@given(st.integers(1, 9), st.sampled_from([2, 3, 5, 7]), st.data())
def test_regularize_idempotent(n, p, data):
    lam = data.draw(st.sampled_from(list(partitions(n))))
    once = regularize(lam, p)
    assert regularize(once, p) == once
    assert once.n == n


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_equivalence_classes_partition_everything(n, p):
    classes = p_equiv_classes(n, p)
    seen = [lam for c in classes for lam in c.members]
    assert sorted(seen) == sorted(partitions(n))
    assert len(seen) == len(set(seen))
    for c in classes:
        assert is_p_regular(c.representative, p)
        assert c.representative in c
        assert len({regularize(lam, p) for lam in c.members}) == 1
    assert [c.representative for c in classes] == p_regular_partitions(n, p)


def test_equivalence_examples():
    by_rep = {c.representative: c.members for c in p_equiv_classes(6, 3)}
    assert by_rep[Partition((6,))] == {Partition((6,)), Partition((2, 2, 2))}
    by_rep = {c.representative: c.members for c in p_equiv_classes(6, 2)}
    assert by_rep[Partition((6,))] == {Partition((6,)), Partition((3, 3))}
    assert all(len(c.members) == 1 for c in p_equiv_classes(4, 5))


# --- refinement


def test_refines_examples():
    assert refines(Composition((1, 2, 3, 2, 1, 2)), Composition((3, 3, 5)))
    assert refines(Composition((2, 2, 2)), Composition((2, 2, 2)))
    assert not refines(Composition((2, 2, 2)), Composition((3, 3)))
    with pytest.raises(ValueError):
        refines(Composition((1, 1)), Composition((3,)))


@pytest.mark.parametrize("n", range(1, 6))
def test_refines_is_a_partial_order(n):
    comps = list(compositions(n))
    for a, b, c in itertools.product(comps, repeat=3):
        assert refines(a, a)
        if refines(a, b) and refines(b, c):
            assert refines(a, c)
        if refines(a, b) and refines(b, a):
            assert a == b


# --- dense group tables


@pytest.mark.parametrize("n", range(1, 6))
def test_group_tables(n):
    G = symmetric_group(n)
    for j in range(0, G.order, max(1, G.order // 7)):
        left, right = G.left_mult(j), G.right_mult(j)
        g = G.elements[j]
        for t in range(G.order):
            assert G.elements[left[t]] == g * G.elements[t]
            assert G.elements[right[t]] == G.elements[t] * g
    assert all(G.elements[G.inverse[t]] == G.elements[t].inverse() for t in range(G.order))


def test_capacity_guard():
    check_capacity(7)
    with pytest.raises(CapacityError):
        check_capacity(8)
