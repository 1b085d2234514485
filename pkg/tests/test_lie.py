from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

from descent_lie.descent import descent_basis, dynkin_omega
from descent_lie.fields import GF, QQ, ZZ
from descent_lie.group_algebra import GroupAlgebraElement
from descent_lie.idempotents import lift_idempotents
from descent_lie.lie import (
    block_embed,
    block_embed_element,
    block_symmetrizer,
    concat_elements,
    concat_embed,
    kappa,
    lie_module,
    omega_kappa,
    symmetric_power_of_lie,
    symmetrized_module,
    verify_kp_sequence,
)
from descent_lie.linalg import right_ideal
from descent_lie.symgroup import Composition, Permutation, all_permutations, compositions, refines


def concat_many(perms):
    out = Permutation(())
    for pi in perms:
        out = concat_embed(out, pi)
    return out


# --- embeddings


def test_embedding_examples():
    assert concat_embed(Permutation.identity(2), Permutation.identity(3)) == Permutation.identity(5)
    tau = Permutation((2, 1))
    assert concat_embed(tau, Permutation((1,))) == Permutation((2, 1, 3))
    assert block_embed(tau, 2) == Permutation((3, 4, 1, 2))
    assert block_embed(Permutation.identity(3), 2) == Permutation.identity(6)
    w = omega_kappa(2, 3)
    assert len(w) == 8 and {abs(c) for _, c in w.items()} == {1}
    assert len(block_symmetrizer(2, 3)) == 6


def test_block_embed_formula():
    for k, p in [(1, 3), (2, 3), (3, 2)]:
        for pi in all_permutations(p):
            big = block_embed(pi, k)
            for i in range(1, p + 1):
                for j in range(k):
                    assert big(i * k - j) == pi(i) * k - j


def test_concat_associative():
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (Permutation(rng.sample(range(1, m + 1), m)) for m in (rng.randint(1, 3),) * 3)
        assert concat_embed(concat_embed(a, b), c) == concat_embed(a, concat_embed(b, c))


def _eq6_and_eq7(k, p, alphas, betas, pi):
    lhs = concat_many(alphas) * concat_many(betas)
    assert lhs == concat_many([a * b for a, b in zip(alphas, betas)])
    moved = [alphas[pi(i) - 1] for i in range(1, p + 1)]
    assert block_embed(pi, k) * concat_many(alphas) == concat_many(moved) * block_embed(pi, k)


@pytest.mark.parametrize("k,p", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_wreath_relations_exhaustive(k, p):
    sk = all_permutations(k)
    tuples = list(itertools.product(sk, repeat=p))
    for alphas in tuples:
        for betas in tuples:
            for pi in all_permutations(p):
                _eq6_and_eq7(k, p, alphas, betas, pi)


def test_wreath_relations_random_k3_p2():
    rng = random.Random(3)
    s3, s2 = all_permutations(3), all_permutations(2)
    for _ in range(1000):
        alphas = [rng.choice(s3) for _ in range(2)]
        betas = [rng.choice(s3) for _ in range(2)]
        _eq6_and_eq7(3, 2, alphas, betas, rng.choice(s2))


@pytest.mark.parametrize("k,p", [(1, 4), (2, 2), (2, 3), (2, 4), (1, 3)])
def test_block_embed_multiplicative(k, p):
    for a in all_permutations(p):
        for b in all_permutations(p):
            assert block_embed(a * b, k) == block_embed(a, k) * block_embed(b, k)


def test_element_embeddings_are_multiplicative():
    rng = random.Random(9)
    s3 = all_permutations(3)

    def rand():
        return GroupAlgebraElement(3, ZZ, [(rng.choice(s3), rng.randint(-2, 2)) for _ in range(3)])

    for _ in range(20):
        a, b, c, d = rand(), rand(), rand(), rand()
        assert concat_elements(a, b) * concat_elements(c, d) == concat_elements(a * c, b * d)
        assert block_embed_element(a * b, 2) == block_embed_element(a, 2) * block_embed_element(b, 2)


# --- Lie modules


@pytest.mark.parametrize("field", [GF(2), GF(3), GF(5), QQ], ids=repr)
@pytest.mark.parametrize("n", range(1, 7))
def test_lie_module_dimension(field, n):
    assert lie_module(n, field).dim == factorial(n - 1)


def test_lie_module_examples():
    assert lie_module(3, GF(3)).dim == 2
    assert lie_module(2, GF(2)).dim == 1


@pytest.mark.parametrize("k,p", [(2, 3), (3, 2), (1, 3), (1, 5)])
def test_identities_behind_the_sequence(k, p):
    n = k * p
    kap = kappa(k, p)
    om = omega_kappa(k, p)
    s = block_symmetrizer(k, p)
    assert descent_basis(kap) * om == s * om
    for mu in compositions(n):
        if not refines(kap, mu):
            assert (descent_basis(mu) * om).is_zero()
    w = dynkin_omega(n, GF(p))
    assert (w * w).is_zero()
    e = lift_idempotents(n, p).e_n.to_group_algebra()
    assert e * w == w
    assert lie_module(n, GF(p)) <= right_ideal(e)


def test_symmetrized_module_examples():
    assert symmetric_power_of_lie(2, 3, GF(3)).dim == 15
    assert symmetric_power_of_lie(3, 2, GF(2)).dim == 40
    assert symmetric_power_of_lie(1, 3, GF(3)).dim == 1
    one = GroupAlgebraElement.one(1, GF(5))
    assert symmetrized_module(one, 5).dim == 1


@pytest.mark.parametrize("k,p", [(2, 3), (3, 2), (1, 5)])
def test_general_symmetrization_matches_division_free_path(k, p):
    F = GF(p)
    e = dynkin_omega(k, F).scale(Fraction(1, k))
    assert e * e == e
    assert symmetrized_module(e, p) == symmetric_power_of_lie(k, p, F)


def test_symmetrized_module_rejects_non_idempotent():
    with pytest.raises(ValueError):
        symmetrized_module(dynkin_omega(2, GF(3)), 3)


# --- the exact sequences


@pytest.mark.parametrize(
    "k,p,dims",
    [(1, 2, (1, 2, 1)), (1, 3, (2, 3, 1)), (1, 5, (24, 25, 1)), (2, 3, (120, 135, 15)), (3, 2, (120, 160, 40))],
)
def test_kp_sequence(k, p, dims):
    report = verify_kp_sequence(k, p)
    assert report.dims == dims
    assert report.expected_dims == dims
    assert report.passed, report.failures()
    names = [c.name for c in report.checks]
    assert "kernel of X^kappa on e_n F S_n equals L_n" in names
    assert "image of X^kappa on e_n F S_n equals S^p(L_k)" in names


def test_kp_sequence_rejects_p_dividing_k():
    with pytest.raises(ValueError):
        verify_kp_sequence(2, 2)


def test_kp_sequence_reports_a_broken_idempotent():
    system = lift_idempotents(3, 3)
    D = system.algebra
    idem = dict(system.idempotents)
    idem[next(iter(idem))] = D.one()
    from descent_lie.idempotents import IdempotentSystem

    report = verify_kp_sequence(1, 3, IdempotentSystem(3, 3, idem))
    assert not report.passed
    assert any("dimensions" in f for f in report.failures())
    assert Composition((3,)) == kappa(3, 1)
