"""Wreath embeddings, Lie modules and the exact sequences relating them.

For ``n = k p`` the sequence

    0 -> L_n -> e_n F S_n -> S^p(L_k) -> 0

has its second map given by left multiplication with ``X^kappa``,
``kappa = (k, ..., k)``. :func:`verify_kp_sequence` checks every identity the
argument uses and then the exactness itself, by explicit ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import factorial

import numpy as np

from .descent import descent_basis, dynkin_omega
from .fields import GF, ZZ
from .group_algebra import GroupAlgebraElement, left_multiply_rows
from .idempotents import IdempotentSystem, get_system
from .linalg import Subspace, _matmul_mod, left_kernel, right_ideal
from .symgroup import (
    Composition,
    Partition,
    Permutation,
    all_permutations,
    check_capacity,
    class_size,
    compositions,
    refines,
)


# ------------------------------------------------------------ embeddings


def concat_embed(alpha: Permutation, beta: Permutation) -> Permutation:
    """``alpha # beta``: alpha on the first a points, beta shifted onto the rest."""
    a = len(alpha)
    return Permutation._raw(tuple(alpha) + tuple(x + a for x in beta))


def block_embed(pi: Permutation, k: int) -> Permutation:
    """``pi^[k]``: moves the k-blocks of ``{1..kp}`` as ``pi`` moves ``{1..p}``."""
    images = []
    for i in range(1, len(pi) + 1):
        target = pi[i - 1]
        images.extend(target * k - j for j in range(k - 1, -1, -1))
    return Permutation._raw(tuple(images))


def concat_elements(*elements: GroupAlgebraElement) -> GroupAlgebraElement:
    """Bilinear extension of ``#`` to any number of group algebra elements."""
    if not elements:
        raise ValueError("need at least one element")
    field = elements[0].field
    terms = {Permutation._raw(()): field(1)}
    for g in elements:
        if g.field != field:
            raise ValueError("field mismatch")
        new: dict = {}
        for left, x in terms.items():
            for right, y in g.items():
                key = concat_embed(left, right)
                new[key] = new.get(key, 0) + x * y
        terms = new
    n = sum(g.n for g in elements)
    return GroupAlgebraElement(n, field, terms)


def block_embed_element(g: GroupAlgebraElement, k: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(
        g.n * k, g.field, {block_embed(pi, k): c for pi, c in g.items()}
    )


def kappa(k: int, p: int) -> Composition:
    return Composition((k,) * p)


def omega_kappa(k: int, p: int, field=ZZ) -> GroupAlgebraElement:
    """``omega_k # ... # omega_k`` with p factors."""
    w = dynkin_omega(k, field)
    return concat_elements(*([w] * p))


def block_symmetrizer(k: int, p: int, field=ZZ) -> GroupAlgebraElement:
    """``s_p^[k]``: the sum of ``pi^[k]`` over all pi in S_p."""
    return GroupAlgebraElement.sum_of(
        (block_embed(pi, k) for pi in all_permutations(p)), k * p, field
    )


# ------------------------------------------------------------ modules


def lie_module(n: int, field) -> Subspace:
    """``L_n = omega_n F S_n``."""
    check_capacity(n)
    return right_ideal(dynkin_omega(n, field))


def symmetrized_module(e: GroupAlgebraElement, p: int) -> Subspace:
    """``S^p(e F S_k) = s_p^[k] (e # ... # e) F S_kp`` for an idempotent ``e``."""
    if e * e != e:
        raise ValueError("the generator must be an idempotent of F S_k")
    check_capacity(e.n * p)
    gen = block_symmetrizer(e.n, p, e.field) * concat_elements(*([e] * p))
    return right_ideal(gen)


def symmetric_power_of_lie(k: int, p: int, field) -> Subspace:
    """``S^p(L_k)`` from the division-free generator ``s_p^[k] omega^kappa``."""
    check_capacity(k * p)
    return right_ideal(block_symmetrizer(k, p, field) * omega_kappa(k, p, field))


# ------------------------------------------------------------ the sequence


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SequenceReport:
    k: int
    p: int
    n: int
    dims: tuple[int, int, int]
    expected_dims: tuple[int, int, int]
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def additive(self) -> bool:
        return self.dims[0] + self.dims[2] == self.dims[1]

    @property
    def passed(self) -> bool:
        return self.additive and all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        out = [f"{c.name}: {c.detail}" if c.detail else c.name for c in self.checks if not c.passed]
        if not self.additive:
            out.append(f"dimensions {self.dims} are not additive")
        return out


def expected_sequence_dims(k: int, p: int) -> tuple[int, int, int]:
    n = k * p
    sym = class_size(Partition((k,) * p))
    return factorial(n - 1), class_size(Partition((n,))) + sym, sym


def verify_kp_sequence(
    k: int, p: int, system: IdempotentSystem | None = None, cache_dir=None
) -> SequenceReport:
    """Check the identities behind, and the exactness of, the (k, p) sequence."""
    if k % p == 0:
        raise ValueError(f"p={p} divides k={k}")
    n = k * p
    check_capacity(n)
    F = GF(p)
    if system is None:
        system = get_system(n, p, cache_dir)
    if (system.n, system.p) != (n, p):
        raise ValueError("idempotent system for the wrong (n, p)")
    kap = kappa(k, p)

    omega_n = dynkin_omega(n, ZZ)
    om_kap = omega_kappa(k, p, ZZ)
    s_block = block_symmetrizer(k, p, ZZ)
    x_kap = descent_basis(kap, ZZ)
    e_n = system.e_n.to_group_algebra()
    omega_n_p = omega_n.change_field(F)
    om_kap_p = om_kap.change_field(F)
    x_kap_p = x_kap.change_field(F)

    checks: list[Check] = []

    def record(name, ok, detail=""):
        checks.append(Check(name, bool(ok), "" if ok else detail))

    record("e_n omega_n = omega_n", e_n * omega_n_p == omega_n_p, "over F_p")
    record("X^kappa omega_n = 0", (x_kap * omega_n).is_zero(), "over Z")

    sw = s_block * om_kap
    record("X^kappa omega^kappa = s_p^[k] omega^kappa", x_kap * om_kap == sw, "over Z")
    record(
        "X^kappa e_n omega^kappa = s_p^[k] omega^kappa",
        x_kap_p * e_n * om_kap_p == sw.change_field(F),
        "over F_p",
    )

    bad = [
        str(mu)
        for mu in compositions(n)
        if not refines(kap, mu) and not (descent_basis(mu, ZZ) * om_kap).is_zero()
    ]
    record("X^mu omega^kappa = 0 unless kappa <= mu", not bad, "fails for " + "; ".join(bad))

    lie = right_ideal(omega_n_p)
    middle = right_ideal(e_n)
    sym = right_ideal(sw.change_field(F))
    dims = (lie.dim, middle.dim, sym.dim)
    expected = expected_sequence_dims(k, p)
    record("dimensions", dims == expected, f"got {dims}, expected {expected}")
    record("dim L_n + dim S^p(L_k) = dim e_n F S_n", dims[0] + dims[2] == dims[1], str(dims))

    lie_basis = lie.basis
    record("L_n inside e_n F S_n", lie <= middle, "a basis row of L_n lies outside")
    images = left_multiply_rows(x_kap_p, middle.basis)
    lie_images = left_multiply_rows(x_kap_p, lie_basis)
    record("X^kappa L_n = 0", not np.any(lie_images), "a basis row of L_n is not killed")

    coeffs = left_kernel(F, images).basis
    if len(coeffs):
        kernel_rows = _matmul_mod(np.asarray(coeffs, dtype=np.int64), middle.basis, p)
    else:
        kernel_rows = np.zeros((0, middle.basis.shape[1]), dtype=np.int64)
    kern = Subspace(F, middle.basis.shape[1], kernel_rows, n=n)
    record(
        "kernel of X^kappa on e_n F S_n equals L_n",
        kern == lie,
        f"kernel dim {kern.dim}, dim L_n {lie.dim}",
    )
    image = Subspace(F, middle.basis.shape[1], images, n=n)
    record(
        "image of X^kappa on e_n F S_n equals S^p(L_k)",
        image == sym,
        f"image dim {image.dim}, dim S^p(L_k) {sym.dim}",
    )
    return SequenceReport(k, p, n, dims, expected, checks)


__all__ = [
    "Check",
    "SequenceReport",
    "block_embed",
    "block_embed_element",
    "block_symmetrizer",
    "concat_elements",
    "concat_embed",
    "expected_sequence_dims",
    "kappa",
    "lie_module",
    "omega_kappa",
    "symmetric_power_of_lie",
    "symmetrized_module",
    "verify_kp_sequence",
]
