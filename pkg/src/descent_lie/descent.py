"""The descent algebra of S_n, its Young characters and the Solomon map.

``X^mu`` is the sum of the minimal right coset representatives of the Young
subgroup ``S_mu``; equivalently, of all permutations whose descent set lies
in the partial sums of ``mu``. Elements of the descent algebra are stored by
their coordinates in this basis, indexed by compositions in descending
lexicographic order.

Compositions of ``n`` correspond to subsets of ``{1..n-1}`` (their partial
sums); internally a subset is a bitmask with bit ``i-1`` standing for ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, NamedTuple

import numpy as np

from .fields import QQ, ZZ, PrimeField, field_for_characteristic
from .group_algebra import GroupAlgebraElement
from .linalg import Subspace, _frac_vec, _mpq_vec, left_kernel
from .symgroup import (
    Composition,
    Partition,
    Permutation,
    class_representative,
    compositions,
    min_coset_reps,
    partitions,
    symmetric_group,
)


class NotInDescentAlgebra(ArithmeticError):
    """A group algebra element is not a combination of the ``X^mu``."""


def composition_mask(mu: Composition) -> int:
    return sum(1 << (s - 1) for s in Composition(mu).partial_sums())


def _subset_zeta(arr: np.ndarray, bits: int) -> np.ndarray:
    """``out[..., S] = sum of arr[..., T] over subsets T of S``."""
    out = arr.copy()
    size = 1 << bits
    masks = np.arange(size)
    for b in range(bits):
        upper = masks[(masks >> b) & 1 == 1]
        out[..., upper] += out[..., upper ^ (1 << b)]
    return out


def _superset_mobius(arr: np.ndarray, bits: int) -> np.ndarray:
    """Inverse of summing over supersets: ``y_T = sum_{S >= T} x_S``."""
    out = arr.copy()
    size = 1 << bits
    masks = np.arange(size)
    for b in range(bits):
        lower = masks[(masks >> b) & 1 == 0]
        out[..., lower] -= out[..., lower | (1 << b)]
    return out


@dataclass
class _Tables:
    n: int
    compositions: list
    comp_index: dict
    comp_mask: np.ndarray
    mask_to_comp: np.ndarray
    supports: list
    lead_by_mask: np.ndarray
    partitions: list
    structure: np.ndarray
    young: np.ndarray


@lru_cache(maxsize=None)
def _tables(n: int) -> _Tables:
    G = symmetric_group(n)
    bits = n - 1
    size = 1 << bits
    comps = list(compositions(n))
    comp_index = {mu: i for i, mu in enumerate(comps)}
    comp_mask = np.array([composition_mask(mu) for mu in comps], dtype=np.int64)
    mask_to_comp = np.empty(size, dtype=np.int64)
    mask_to_comp[comp_mask] = np.arange(len(comps))
    des = G.descent_mask
    supports = [np.flatnonzero((des & ~m) == 0) for m in comp_mask]

    # leading term of X^mu: its longest element, whose descent set is exactly
    # the partial sums of mu
    lengths = np.array([pi.length() for pi in G.elements])
    lead_by_mask = np.empty(size, dtype=np.int64)
    for m in range(size):
        cands = np.flatnonzero(des == m)
        lead_by_mask[m] = cands[np.argmax(lengths[cands])]

    structure = _structure_tensor(n, comps, comp_mask, supports, lead_by_mask)
    parts = list(partitions(n))
    young = _young_matrix(n, comps, supports, parts)
    return _Tables(
        n, comps, comp_index, comp_mask, mask_to_comp, supports, lead_by_mask,
        parts, structure, young,
    )


def _structure_tensor(n, comps, comp_mask, supports, lead_by_mask) -> np.ndarray:
    """Integer tensor ``C[l, m, v]`` with ``X^l X^m = sum_v C[l, m, v] X^v``.

    The coefficient of ``w`` in ``X^l X^m`` counts ``s`` in ``X^l`` with
    ``s^-1 w`` in ``X^m``. For n <= 6 this is evaluated at every ``w`` to
    confirm the product is constant on descent classes; above that only at
    the leading permutations.
    """
    G = symmetric_group(n)
    bits = n - 1
    size = 1 << bits
    d = len(comps)
    des = G.descent_mask
    targets = np.arange(G.order) if n <= 6 else lead_by_mask
    inv_rows = G.perms[G.inverse]
    # D[t, s] = descent mask of s^-1 * w_t
    D = np.empty((len(targets), G.order), dtype=np.int64)
    for t, w in enumerate(targets):
        D[t] = des[G.rank(G.perms[w][inv_rows])]
    row_off = (np.arange(len(targets)) * size)[:, None]
    values = np.empty((d, d, len(targets)), dtype=np.int64)
    for l in range(d):
        sub = D[:, supports[l]] + row_off
        hist = np.bincount(sub.ravel(), minlength=len(targets) * size)
        hist = _subset_zeta(hist.reshape(len(targets), size), bits)
        values[l] = hist[:, comp_mask].T
    target_masks = des[targets]
    lead_pos = {int(w): t for t, w in enumerate(targets)}
    y = np.empty((d, d, size), dtype=np.int64)
    for m in range(size):
        y[:, :, m] = values[:, :, lead_pos[int(lead_by_mask[m])]]
    if not np.array_equal(values, y[:, :, target_masks]):
        raise NotInDescentAlgebra("a product X^l X^m is not constant on descent classes")
    x = _superset_mobius(y, bits)
    return x[:, :, comp_mask]


def _young_matrix(n, comps, supports, parts) -> np.ndarray:
    """``Y[m, c]`` = number of right cosets of S_m fixed by the class ``c``."""
    G = symmetric_group(n)
    inv_rows = G.perms[G.inverse]
    out = np.zeros((len(comps), len(parts)), dtype=np.int64)
    for m, mu in enumerate(comps):
        block = np.repeat(np.arange(len(mu)), mu)
        sup = supports[m]
        s, sinv = G.perms[sup].astype(np.int64), inv_rows[sup].astype(np.int64)
        for c, lam in enumerate(parts):
            pi = np.array([x - 1 for x in class_representative(lam)])
            # s pi s^-1, composed left to right
            conj = np.take_along_axis(sinv, pi[s], axis=1)
            out[m, c] = int(np.all(block[conj] == block, axis=1).sum())
    return out


# ------------------------------------------------------------ class functions


class ClassFunction:
    """A function on the conjugacy classes of S_n (keyed by cycle type)."""

    __slots__ = ("n", "field", "_values")

    def __init__(self, n: int, field, values: Mapping = ()):
        self.n = n
        self.field = field
        given = {Partition(k): v for k, v in dict(values).items()}
        self._values = {}
        for lam in partitions(n):
            self._values[lam] = field(given.pop(lam, 0))
        if given:
            raise ValueError(f"not partitions of {n}: {sorted(given)}")

    @classmethod
    def constant(cls, n: int, field, c=1) -> "ClassFunction":
        return cls(n, field, {lam: c for lam in partitions(n)})

    def __getitem__(self, lam):
        return self._values[Partition(lam)]

    def items(self):
        return self._values.items()

    def values(self) -> list:
        return list(self._values.values())

    def _check(self, other):
        if self.n != other.n or self.field != other.field:
            raise ValueError("class functions on different groups or fields")

    def _pointwise(self, other, op) -> "ClassFunction":
        self._check(other)
        return ClassFunction(
            self.n, self.field, {k: op(v, other._values[k]) for k, v in self._values.items()}
        )

    def __add__(self, other):
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._pointwise(other, lambda a, b: a - b)

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return self._pointwise(other, lambda a, b: a * b)
        return ClassFunction(self.n, self.field, {k: v * other for k, v in self._values.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self._values == other._values

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"({k}): {self.field.format(v)}" for k, v in self._values.items())
        return f"ClassFunction({{{body}}})"


# ------------------------------------------------------------ algebra


class DescentAlgebra:
    """The descent algebra D_n over ``field`` (Z, Q or F_p)."""

    def __init__(self, n: int, field=ZZ):
        self.n = n
        self.field = field
        self._t = _tables(n)
        self.compositions: list[Composition] = self._t.compositions
        self.dim = len(self.compositions)
        if isinstance(field, PrimeField):
            self._C = self._t.structure % field.p
            self._Y = self._t.young % field.p
        else:
            self._C = self._t.structure.astype(object)
            self._Y = self._t.young.astype(object)

    def __eq__(self, other) -> bool:
        return isinstance(other, DescentAlgebra) and (self.n, self.field) == (other.n, other.field)

    def __hash__(self) -> int:
        return hash((self.n, self.field))

    def __repr__(self) -> str:
        return f"DescentAlgebra({self.n}, {self.field!r})"

    def index(self, mu) -> int:
        return self._t.comp_index[Composition(mu)]

    # elements

    def _coords(self, values) -> np.ndarray:
        if isinstance(self.field, PrimeField):
            return np.array([self.field(v) for v in values], dtype=np.int64)
        arr = np.empty(self.dim, dtype=object)
        arr[:] = [self.field(v) for v in values]
        return arr

    def element(self, coeffs: Mapping | None = None) -> "DescentElement":
        vals = [0] * self.dim
        for mu, c in (coeffs or {}).items():
            vals[self.index(mu)] = c
        return DescentElement(self, self._coords(vals))

    def from_vector(self, values) -> "DescentElement":
        return DescentElement(self, self._coords(list(values)))

    def zero(self) -> "DescentElement":
        return self.element()

    def one(self) -> "DescentElement":
        return self.X((self.n,))

    def X(self, mu) -> "DescentElement":
        return self.element({Composition(mu): 1})

    def multiply_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if isinstance(self.field, PrimeField):
            t = np.tensordot(a, self._C, axes=(0, 0)) % self.field.p
            return np.dot(b, t) % self.field.p
        if self.field == QQ:
            # gmpy2 rationals are far cheaper than Fraction in the inner sums
            t = np.tensordot(_mpq_vec(a), self._C, axes=(0, 0))
            return _frac_vec(np.dot(_mpq_vec(b), t)).astype(object)
        t = np.tensordot(a, self._C, axes=(0, 0))
        return np.array([self.field(v) for v in np.dot(b, t)], dtype=object)

    # structure

    def structure_constants(self, lam, mu) -> dict[Composition, int]:
        """Nonzero integer coefficients of ``X^lam X^mu`` in the X-basis."""
        row = self._t.structure[self.index(lam), self.index(mu)]
        return {self.compositions[v]: int(c) for v, c in enumerate(row) if c}

    def young_character(self, mu) -> ClassFunction:
        row = self._Y[self.index(mu)]
        return ClassFunction(self.n, self.field, dict(zip(self._t.partitions, row)))

    def solomon_hom(self, d: "DescentElement") -> ClassFunction:
        vals = np.dot(d.coords, self._Y)
        return ClassFunction(self.n, self.field, dict(zip(self._t.partitions, vals)))

    def character_matrix(self) -> np.ndarray:
        """Young character values; rows follow compositions, columns partitions."""
        return self._Y.copy()

    def leading_permutation(self, mu) -> Permutation:
        m = composition_mask(Composition(mu))
        return symmetric_group(self.n).elements[int(self._t.lead_by_mask[m])]

    def to_group_algebra(self, d: "DescentElement") -> GroupAlgebraElement:
        G = symmetric_group(self.n)
        vec = self.field.zeros(G.order)
        for i, c in enumerate(d.coords):
            if c != 0:
                vec[self._t.supports[i]] += c
        if isinstance(self.field, PrimeField):
            vec %= self.field.p
        return GroupAlgebraElement.from_dense(self.n, self.field, vec)

    def from_group_algebra(self, g: GroupAlgebraElement) -> "DescentElement":
        """X-coordinates of ``g``, found from its values on leading terms.

        Raises :class:`NotInDescentAlgebra` when ``g`` is not constant on
        descent classes.
        """
        if g.n != self.n:
            raise ValueError("degree mismatch")
        g = g.change_field(self.field) if g.field != self.field else g
        G = symmetric_group(self.n)
        vec = g.to_dense()
        y = vec[self._t.lead_by_mask]
        if not all(a == b for a, b in zip(vec, y[G.descent_mask])):
            raise NotInDescentAlgebra(f"{g!r} is not in the descent algebra")
        x = _superset_mobius(np.asarray(y), self.n - 1)
        return self.from_vector(x[self._t.comp_mask])

    # radical

    def solomon_kernel(self) -> Subspace:
        """Kernel of the Solomon map in X-coordinates."""
        if not self.field.is_field:
            raise ValueError("kernel computations need a field")
        return left_kernel(self.field, self._Y)

    def coordinate_products(self):
        """All-pairs product on coordinate rows, for :func:`subspace_product`."""
        p = self.field.p if isinstance(self.field, PrimeField) else None

        def multiply(a_rows: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
            if p is not None and (p - 1) ** 2 * self.dim < 2**62:
                a = np.asarray(a_rows, dtype=np.int64)
                b = np.asarray(b_rows, dtype=np.int64)
                t = np.tensordot(a, self._C, axes=(1, 0)) % p
                out = np.einsum("bj,ajk->abk", b, t) % p
                return out.reshape(-1, self.dim)
            rows = [
                self.multiply_coords(np.asarray(a, dtype=object), np.asarray(b, dtype=object))
                for a in a_rows
                for b in b_rows
            ]
            return np.vstack(rows)

        return multiply


class DescentElement:
    """An element of a descent algebra, stored by X-coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: DescentAlgebra, coords: np.ndarray):
        self.algebra = algebra
        coords = np.asarray(coords)
        coords.setflags(write=False)
        self.coords = coords

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def field(self):
        return self.algebra.field

    def coefficient(self, mu):
        return self.coords[self.algebra.index(mu)]

    def items(self):
        """Nonzero ``(composition, coefficient)`` pairs in canonical order."""
        return [(mu, c) for mu, c in zip(self.algebra.compositions, self.coords) if c != 0]

    def is_zero(self) -> bool:
        return not any(c != 0 for c in self.coords)

    def _check(self, other: "DescentElement"):
        if self.algebra != other.algebra:
            raise ValueError(f"{self.algebra!r} vs {other.algebra!r}")

    def _wrap(self, coords) -> "DescentElement":
        return self.algebra.from_vector(coords)

    def __add__(self, other):
        self._check(other)
        return self._wrap(self.coords + other.coords)

    def __sub__(self, other):
        self._check(other)
        return self._wrap(self.coords - other.coords)

    def __neg__(self):
        return self._wrap(-self.coords)

    def __mul__(self, other):
        if isinstance(other, DescentElement):
            self._check(other)
            return DescentElement(self.algebra, self.algebra.multiply_coords(self.coords, other.coords))
        return self._wrap([c * other for c in self.coords])

    def __rmul__(self, other):
        return self._wrap([other * c for c in self.coords])

    def __pow__(self, m: int):
        out = self.algebra.one()
        for _ in range(m):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DescentElement):
            return NotImplemented
        return self.algebra == other.algebra and all(
            a == b for a, b in zip(self.coords, other.coords)
        )

    __hash__ = None  # type: ignore[assignment]

    def to_group_algebra(self) -> GroupAlgebraElement:
        return self.algebra.to_group_algebra(self)

    def __repr__(self) -> str:
        terms = " + ".join(
            f"{self.field.format(c)}*X({mu})" for mu, c in self.items()
        )
        return terms or "0"


# ------------------------------------------------------------ module API


def descent_basis(mu, field=ZZ) -> GroupAlgebraElement:
    """``X^mu`` in the group algebra: the sum of the minimal coset reps of S_mu."""
    mu = Composition(mu)
    return GroupAlgebraElement.sum_of(min_coset_reps(mu), mu.n, field)


def structure_constants(lam, mu) -> dict[Composition, int]:
    lam = Composition(lam)
    return DescentAlgebra(lam.n).structure_constants(lam, mu)


def young_character(mu, field=ZZ) -> ClassFunction:
    mu = Composition(mu)
    return DescentAlgebra(mu.n, field).young_character(mu)


def solomon_hom(d: DescentElement) -> ClassFunction:
    return d.algebra.solomon_hom(d)


def descent_coordinates(g: GroupAlgebraElement, field=None) -> DescentElement:
    return DescentAlgebra(g.n, field or g.field).from_group_algebra(g)


def structure_constants_by_matrices(lam, mu) -> dict[Composition, int]:
    """Count nonnegative integer matrices with row sums ``lam`` and column
    sums ``mu`` by their row-reading word (zeros dropped).

    Independent of the group algebra; used as a cross-check.
    """
    lam, mu = Composition(lam), Composition(mu)
    counts: dict[Composition, int] = {}
    for mat in _matrices(tuple(lam), tuple(mu)):
        word = Composition(x for row in mat for x in row if x)
        counts[word] = counts.get(word, 0) + 1
    return counts


def _matrices(rows: tuple, cols: tuple):
    if not rows:
        if not any(cols):
            yield ()
        return
    for first in _row_fillings(rows[0], cols):
        rest = tuple(c - f for c, f in zip(cols, first))
        for tail in _matrices(rows[1:], rest):
            yield (first,) + tail


def _row_fillings(total: int, caps: tuple):
    if not caps:
        if total == 0:
            yield ()
        return
    for x in range(min(total, caps[0]) + 1):
        for tail in _row_fillings(total - x, caps[1:]):
            yield (x,) + tail


def descending_cycle(k: int, n: int) -> Permutation:
    """The cycle ``(k k-1 ... 1)`` of S_n: maps i to i-1 for 2 <= i <= k and 1 to k."""
    images = list(range(1, n + 1))
    if k >= 2:
        images[0] = k
        for i in range(2, k + 1):
            images[i - 1] = i - 1
    return Permutation(images)


def dynkin_omega(n: int, field=ZZ) -> GroupAlgebraElement:
    """``(1 - z_n)(1 - z_{n-1})...(1 - z_2)`` with ``z_k`` the descending k-cycle."""
    one = GroupAlgebraElement.one(n, field)
    out = one
    for k in range(n, 1, -1):
        out = out * (one - GroupAlgebraElement.from_permutation(descending_cycle(k, n), field))
    return out


class RadicalReport(NamedTuple):
    kernel_dim: int
    nilpotency_index: int


def radical_report(n: int, p: int) -> RadicalReport:
    """Dimension of ker(Solomon map) over F_p (p=0: Q) and its nilpotency index.

    The index is the least ``m`` with ``K^m = 0`` (1 when ``K = 0``).
    """
    from .linalg import subspace_product

    D = DescentAlgebra(n, field_for_characteristic(p))
    K = D.solomon_kernel()
    mult = D.coordinate_products()
    power, m = K, 1
    while power.dim:
        if m > D.dim:
            raise ArithmeticError(f"kernel of the Solomon map is not nilpotent (n={n}, p={p})")
        power = subspace_product(power, K, mult)
        m += 1
    return RadicalReport(K.dim, m)


def compositions_refining(kappa, n: int) -> list[Composition]:
    """Compositions ``mu`` of ``n`` with ``kappa <= mu``."""
    kmask = composition_mask(kappa)
    return [mu for mu in compositions(n) if composition_mask(mu) & ~kmask == 0]


__all__ = [
    "ClassFunction",
    "DescentAlgebra",
    "DescentElement",
    "NotInDescentAlgebra",
    "RadicalReport",
    "descent_basis",
    "descent_coordinates",
    "descending_cycle",
    "dynkin_omega",
    "radical_report",
    "solomon_hom",
    "structure_constants",
    "structure_constants_by_matrices",
    "young_character",
]
