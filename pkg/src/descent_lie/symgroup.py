"""Permutations, compositions and partitions of small symmetric groups.

Permutations are stored in one-line notation over the points ``1..n`` and act
on the right: ``pi(i)`` is the image of ``i`` and the product ``pi * sigma``
means "first pi, then sigma".
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

#: Largest degree for which dense group-indexed arrays are built.
MAX_N = 7


class CapacityError(ValueError):
    """Raised when a dense computation would exceed the supported degree."""


def check_capacity(n: int, limit: int = MAX_N) -> None:
    if n > limit:
        raise CapacityError(
            f"degree n={n} exceeds the supported ceiling of {limit} "
            f"({math.factorial(n)} group elements)"
        )


class Permutation(tuple):
    """An element of S_n in one-line notation, composed left to right."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]) -> "Permutation":
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles; ``(a b c)`` maps a->b->c->a."""
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for i, a in enumerate(cyc):
                if a in seen or not 1 <= a <= n:
                    raise ValueError(f"bad cycle {cyc!r} for degree {n}")
                seen.add(a)
                images[a - 1] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse the comma-separated one-line form, e.g. ``"2,1,3"``."""
        text = text.strip()
        if not text:
            return cls(())
        return cls(int(t) for t in text.split(","))

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return tuple.__getitem__(self, i - 1)

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self) != len(other):
            raise ValueError("permutations of different degree")
        return Permutation._raw(tuple(other[j - 1] for j in self))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self, start=1):
            inv[j - 1] = i
        return Permutation._raw(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for start in range(1, len(self) + 1):
            if seen[start - 1]:
                continue
            cyc = []
            i = start
            while not seen[i - 1]:
                seen[i - 1] = True
                cyc.append(i)
                i = self[i - 1]
            out.append(tuple(cyc))
        return out

    def descent_set(self) -> frozenset[int]:
        return frozenset(i for i in range(1, len(self)) if self[i - 1] > self[i])

    def length(self) -> int:
        """Number of inversions."""
        return sum(
            1
            for i in range(len(self))
            for j in range(i + 1, len(self))
            if self[i] > self[j]
        )

    def __str__(self) -> str:
        return ",".join(str(i) for i in self)

    def __repr__(self) -> str:
        return f"Permutation(({', '.join(str(i) for i in self)}))"


class Composition(tuple):
    """A finite sequence of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]) -> "Composition":
        parts = tuple(int(x) for x in parts)
        if any(x < 1 for x in parts):
            raise ValueError(f"parts of {parts} must be positive")
        return tuple.__new__(cls, parts)

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        return cls(int(t) for t in text.split(",")) if text else cls(())

    @property
    def n(self) -> int:
        return sum(self)

    def partial_sums(self) -> frozenset[int]:
        """Proper partial sums, i.e. the descent set allowed in ``X^mu``."""
        return frozenset(itertools.accumulate(self[:-1]))

    def blocks(self) -> list[range]:
        out, start = [], 1
        for m in self:
            out.append(range(start, start + m))
            start += m
        return out

    def __str__(self) -> str:
        return ",".join(str(x) for x in self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(({', '.join(str(x) for x in self)}))"


class Partition(Composition):
    """A weakly decreasing composition."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]) -> "Partition":
        parts = tuple(int(x) for x in parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not weakly decreasing")
        return super().__new__(cls, parts)

    @classmethod
    def sorted(cls, parts: Iterable[int]) -> "Partition":
        return cls(sorted(parts, reverse=True))

    def multiplicities(self) -> Counter:
        return Counter(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition(())
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def factorial(n: int) -> int:
    return math.factorial(n)


def multinomial(parts: Sequence[int]) -> int:
    out = math.factorial(sum(parts))
    for x in parts:
        out //= math.factorial(x)
    return out


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in descending lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest)


def compositions(n: int) -> Iterator[Composition]:
    """Compositions of ``n`` in descending lexicographic order."""
    if n == 0:
        yield Composition(())
        return
    for first in range(n, 0, -1):
        for rest in compositions(n - first):
            yield Composition((first,) + rest)


def composition_from_set(n: int, cuts: Iterable[int]) -> Composition:
    """Inverse of :meth:`Composition.partial_sums`."""
    pts = [0] + sorted(cuts) + [n]
    return Composition(b - a for a, b in zip(pts, pts[1:]))


def all_permutations(n: int) -> list[Permutation]:
    """S_n in lexicographic order of one-line images (= Lehmer rank order)."""
    return [Permutation._raw(t) for t in itertools.permutations(range(1, n + 1))]


def cycle_type(pi: Permutation) -> Partition:
    return Partition.sorted(len(c) for c in pi.cycles())


def class_size(lam: Partition) -> int:
    """Size of the conjugacy class of S_n with cycle type ``lam``."""
    denom = 1
    for part, mult in Counter(lam).items():
        denom *= part**mult * math.factorial(mult)
    return math.factorial(sum(lam)) // denom


def centralizer_order(lam: Partition) -> int:
    return math.factorial(sum(lam)) // class_size(lam)


def class_representative(lam: Partition) -> Permutation:
    """The permutation with cycles on consecutive blocks ``(1..l1)(l1+1..)...``."""
    n = sum(lam)
    cycles, start = [], 1
    for part in lam:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(n, cycles)


def is_block_increasing(pi: Permutation, mu: Composition) -> bool:
    return all(
        pi[i - 1] < pi[i] for block in mu.blocks() for i in block if i + 1 in block
    )


def min_coset_reps(mu: Composition) -> list[Permutation]:
    """Minimal length representatives of the right cosets of S_mu.

    These are the permutations whose images increase along every block of
    positions of ``mu``, listed in lexicographic order.
    """
    mu = Composition(mu)
    reps = [
        Permutation._raw(images)
        for images in _fill_blocks(tuple(range(1, mu.n + 1)), tuple(mu))
    ]
    reps.sort()
    return reps


def _fill_blocks(values: tuple, sizes: tuple) -> Iterator[tuple]:
    if not sizes:
        yield ()
        return
    for chosen in itertools.combinations(values, sizes[0]):
        rest = tuple(v for v in values if v not in chosen)
        for tail in _fill_blocks(rest, sizes[1:]):
            yield chosen + tail


def is_p_regular(lam: Partition, p: int) -> bool:
    return all(m < p for m in Counter(lam).values())


def regularize(lam: Partition, p: int) -> Partition:
    """Cycle type of the p-regular part of a permutation of cycle type ``lam``.

    Each part ``k * p**m`` with ``p`` not dividing ``k`` becomes ``p**m``
    copies of ``k``.
    """
    out: list[int] = []
    for part in lam:
        copies = 1
        while part % p == 0:
            part //= p
            copies *= p
        out.extend([part] * copies)
    return Partition.sorted(out)


@dataclass(frozen=True)
class PEquivClass:
    p: int
    representative: Partition
    members: frozenset

    def __contains__(self, lam) -> bool:
        return Partition(lam) in self.members

    def size(self) -> int:
        """Number of permutations in the union of the member classes."""
        return sum(class_size(lam) for lam in self.members)


def p_equiv_classes(n: int, p: int) -> list[PEquivClass]:
    """Partitions of ``n`` grouped by p-regularization.

    ``p = 0`` gives singleton classes. Classes are ordered by representative,
    descending lexicographically.
    """
    groups: dict[Partition, list[Partition]] = {}
    for lam in partitions(n):
        key = lam if p == 0 else regularize(lam, p)
        groups.setdefault(key, []).append(lam)
    out = []
    for members in groups.values():
        regular = [lam for lam in members if p == 0 or is_p_regular(lam, p)]
        if len(regular) != 1:
            raise AssertionError(f"class {members} has {len(regular)} p-regular members")
        out.append(PEquivClass(p, regular[0], frozenset(members)))
    return sorted(out, key=lambda c: c.representative, reverse=True)


def p_regular_partitions(n: int, p: int) -> list[Partition]:
    if p == 0:
        return list(partitions(n))
    return [lam for lam in partitions(n) if is_p_regular(lam, p)]


def refines(nu: Composition, lam: Composition) -> bool:
    """True iff ``nu`` is a concatenation of compositions of the parts of ``lam``."""
    if sum(nu) != sum(lam):
        raise ValueError("compositions of different weight")
    return Composition(lam).partial_sums() <= Composition(nu).partial_sums()


class SymmetricGroup:
    """Dense index tables for S_n, elements ranked lexicographically.

    ``perms[j]`` holds the 0-based one-line images of the j-th permutation.
    """

    def __init__(self, n: int):
        check_capacity(n)
        self.n = n
        self.order = math.factorial(n)
        self.elements = all_permutations(n)
        self.index = {pi: j for j, pi in enumerate(self.elements)}
        dtype = np.int8
        self.perms = np.array(
            [[x - 1 for x in pi] for pi in self.elements], dtype=dtype
        ).reshape(self.order, n)
        self._weights = np.array(
            [math.factorial(n - 1 - i) for i in range(n)], dtype=np.int64
        )
        self.inverse = self.rank(np.argsort(self.perms, axis=1))
        if n > 1:
            bits = (self.perms[:, :-1] > self.perms[:, 1:]).astype(np.int64)
            self.descent_mask = bits @ (1 << np.arange(n - 1, dtype=np.int64))
        else:
            self.descent_mask = np.zeros(self.order, dtype=np.int64)
        self.identity = 0

    def rank(self, arr: np.ndarray) -> np.ndarray:
        """Lehmer rank of each row of 0-based one-line images."""
        arr = np.asarray(arr)
        n = self.n
        codes = np.zeros(arr.shape[0], dtype=np.int64)
        for i in range(n - 1):
            smaller = (arr[:, i + 1 :] < arr[:, i : i + 1]).sum(axis=1)
            codes += smaller * self._weights[i]
        return codes

    def left_mult(self, j: int) -> np.ndarray:
        """Array ``t -> index(g_j * g_t)`` over all t."""
        return self.rank(self.perms[:, self.perms[j]])

    def right_mult(self, j: int) -> np.ndarray:
        """Array ``t -> index(g_t * g_j)`` over all t."""
        return self.rank(self.perms[j][self.perms])

    def compose(self, i: int, j: int) -> int:
        return self.index[self.elements[i] * self.elements[j]]

    def class_of(self) -> list[Partition]:
        return [cycle_type(pi) for pi in self.elements]


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> SymmetricGroup:
    return SymmetricGroup(n)
