"""Sparse elements of the group algebra R S_n over an exact coefficient ring."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .fields import QQ, ZZ, PrimeField, field_from_name
from .symgroup import Permutation, symmetric_group


class GroupAlgebraElement:
    """Finite sum of permutations of degree ``n`` with nonzero coefficients.

    Instances are immutable. ``a * b`` is the convolution product with
    permutations composed left to right; ``c * a`` scales by a scalar.
    """

    __slots__ = ("n", "field", "_terms")

    def __init__(self, n: int, field=ZZ, terms: Mapping | Iterable = ()):
        self.n = n
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Permutation, object] = {}
        for perm, coeff in items:
            if not isinstance(perm, Permutation):
                perm = Permutation(perm)
            if len(perm) != n:
                raise ValueError(f"{perm} is not in S_{n}")
            clean[perm] = clean.get(perm, 0) + coeff
        self._terms = {}
        for perm, coeff in clean.items():
            c = field(coeff)
            if c != 0:
                self._terms[perm] = c

    # constructors

    @classmethod
    def _from_clean(cls, n, field, terms: dict) -> "GroupAlgebraElement":
        out = object.__new__(cls)
        out.n, out.field, out._terms = n, field, terms
        return out

    @classmethod
    def zero(cls, n: int, field=ZZ) -> "GroupAlgebraElement":
        return cls._from_clean(n, field, {})

    @classmethod
    def one(cls, n: int, field=ZZ) -> "GroupAlgebraElement":
        return cls._from_clean(n, field, {Permutation.identity(n): field(1)})

    @classmethod
    def from_permutation(cls, perm: Permutation, field=ZZ, coeff=1):
        return cls(len(perm), field, {Permutation(perm): coeff})

    @classmethod
    def sum_of(cls, perms: Iterable[Permutation], n: int, field=ZZ):
        """The sum of the given permutations, each with coefficient one."""
        return cls(n, field, ((pi, 1) for pi in perms))

    @classmethod
    def from_dense(cls, n: int, field, vector) -> "GroupAlgebraElement":
        elements = symmetric_group(n).elements
        return cls(n, field, ((elements[j], c) for j, c in enumerate(vector) if c != 0))

    # inspection

    def items(self):
        return self._terms.items()

    def support(self) -> list[Permutation]:
        return sorted(self._terms)

    def coefficient(self, perm) -> object:
        return self._terms.get(Permutation(perm), self.field(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def to_dense(self) -> np.ndarray:
        G = symmetric_group(self.n)
        out = self.field.zeros(G.order)
        for perm, c in self._terms.items():
            out[G.index[perm]] = c
        return out

    def change_field(self, field) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, field, self._terms)

    # arithmetic

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.n != other.n:
            raise ValueError(f"degree mismatch: S_{self.n} vs S_{other.n}")
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        terms = dict(self._terms)
        for perm, c in other._terms.items():
            terms[perm] = terms.get(perm, 0) + c
        return GroupAlgebraElement(self.n, self.field, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "GroupAlgebraElement":
        c = self.field(c)
        if c == 0:
            return GroupAlgebraElement.zero(self.n, self.field)
        return GroupAlgebraElement(
            self.n, self.field, {k: v * c for k, v in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            self._check(other)
            acc: dict = {}
            get = acc.get
            right = list(other._terms.items())
            for a, x in self._terms.items():
                for b, y in right:
                    key = Permutation._raw(tuple([b[i - 1] for i in a]))
                    acc[key] = get(key, 0) + x * y
            return GroupAlgebraElement(self.n, self.field, acc)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, m: int) -> "GroupAlgebraElement":
        out = GroupAlgebraElement.one(self.n, self.field)
        for _ in range(m):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (
            self.n == other.n
            and self.field == other.field
            and self._terms == other._terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self._terms:
            return f"0 in {self.field!r}S_{self.n}"
        shown = " + ".join(
            f"{self.field.format(c)}*[{perm}]" for perm, c in sorted(self._terms.items())[:6]
        )
        more = "" if len(self._terms) <= 6 else f" + ... ({len(self._terms)} terms)"
        return f"{shown}{more}"

    # serialization

    def to_text(self) -> str:
        """Header ``n=<n> field=<Z|Q|p>`` then one ``images<TAB>coeff`` per line."""
        lines = [f"n={self.n} field={self.field.name}"]
        for perm in sorted(self._terms):
            lines.append(f"{perm}\t{self.field.format(self._terms[perm])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupAlgebraElement":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty group algebra element text")
        header = dict(tok.split("=", 1) for tok in lines[0].split())
        try:
            n = int(header["n"])
            field = field_from_name(header["field"])
        except KeyError as exc:
            raise ValueError(f"bad header line {lines[0]!r}") from exc
        terms = []
        for ln in lines[1:]:
            perm_text, coeff_text = ln.split("\t")
            perm = Permutation.parse(perm_text)
            coeff = Fraction(coeff_text)
            if field == ZZ or isinstance(field, PrimeField):
                if coeff.denominator != 1:
                    raise ValueError(f"non-integral coefficient {coeff_text!r}")
                coeff = int(coeff)
            terms.append((perm, coeff))
        return cls(n, field, terms)


def group_sum(n: int, field=ZZ) -> GroupAlgebraElement:
    """The sum of all permutations of S_n."""
    return GroupAlgebraElement.sum_of(symmetric_group(n).elements, n, field)


def dense_product(n: int, field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two dense coefficient vectors indexed by Lehmer rank."""
    G = symmetric_group(n)
    out = field.zeros(G.order)
    for j in np.flatnonzero(a != 0):
        out[G.left_mult(int(j))] += a[j] * b
    if isinstance(field, PrimeField):
        out %= field.p
    return out


def left_multiply_rows(g: GroupAlgebraElement, rows: np.ndarray) -> np.ndarray:
    """``g * v`` for each dense row ``v`` of ``rows``."""
    G = symmetric_group(g.n)
    out = g.field.zeros(rows.shape)
    big = isinstance(g.field, PrimeField) and g.field.p > 2**20
    for perm, c in g.items():
        out[:, G.left_mult(G.index[perm])] += c * rows
        if big:
            out %= g.field.p
    if isinstance(g.field, PrimeField):
        out %= g.field.p
    return out


def right_multiply_rows(rows: np.ndarray, g: GroupAlgebraElement) -> np.ndarray:
    """``v * g`` for each dense row ``v`` of ``rows``."""
    G = symmetric_group(g.n)
    out = g.field.zeros(rows.shape)
    big = isinstance(g.field, PrimeField) and g.field.p > 2**20
    for perm, c in g.items():
        out[:, G.right_mult(G.index[perm])] += c * rows
        if big:
            out %= g.field.p
    if isinstance(g.field, PrimeField):
        out %= g.field.p
    return out


__all__ = [
    "GroupAlgebraElement",
    "group_sum",
    "dense_product",
    "left_multiply_rows",
    "right_multiply_rows",
    "QQ",
    "ZZ",
]
