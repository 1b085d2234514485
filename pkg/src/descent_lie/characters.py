"""Ordinary characters of S_n: irreducibles, characters of right ideals,
decompositions, abacus displays and the character checks for L_{2p}.

All arithmetic is exact (integers and rationals).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

import numpy as np

from .fields import QQ, ZZ
from .group_algebra import GroupAlgebraElement, dense_product
from .symgroup import Partition, class_size, cycle_type, is_prime, partitions, symmetric_group


class CharacterVector:
    """Integer class function of S_n, keyed by cycle type."""

    __slots__ = ("n", "_values")

    def __init__(self, n: int, values: Mapping = ()):
        self.n = n
        given = {Partition(k): v for k, v in dict(values).items()}
        self._values = {}
        for lam in partitions(n):
            v = given.pop(lam, 0)
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"non-integral character value {v} at {lam}")
                v = v.numerator
            self._values[lam] = int(v)
        if given:
            raise ValueError(f"not partitions of {n}: {sorted(given)}")

    def __getitem__(self, lam) -> int:
        return self._values[Partition(lam)]

    def items(self):
        return self._values.items()

    @property
    def degree(self) -> int:
        return self._values[Partition((1,) * self.n)]

    def __add__(self, other: "CharacterVector") -> "CharacterVector":
        self._check(other)
        return CharacterVector(self.n, {k: v + other._values[k] for k, v in self._values.items()})

    def __sub__(self, other: "CharacterVector") -> "CharacterVector":
        self._check(other)
        return CharacterVector(self.n, {k: v - other._values[k] for k, v in self._values.items()})

    def __rmul__(self, c: int) -> "CharacterVector":
        return CharacterVector(self.n, {k: c * v for k, v in self._values.items()})

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("characters of different degrees")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharacterVector):
            return NotImplemented
        return self.n == other.n and self._values == other._values

    __hash__ = None  # type: ignore[assignment]

    def inner(self, other: "CharacterVector") -> Fraction:
        """``(1/n!) sum |C_mu| chi(mu) psi(mu)`` (all classes are real)."""
        self._check(other)
        total = sum(class_size(lam) * v * other._values[lam] for lam, v in self._values.items())
        return Fraction(total, factorial(self.n))

    def to_record(self) -> dict[str, int]:
        return {str(lam): v for lam, v in self._values.items()}

    def __repr__(self) -> str:
        return f"CharacterVector({self.n}, {self.to_record()})"


# ------------------------------------------------------------ irreducibles


def _beta(lam: tuple) -> tuple:
    l = len(lam)
    return tuple(part + (l - 1 - i) for i, part in enumerate(lam))


def _from_beta(beta) -> Partition:
    b = sorted(beta, reverse=True)
    l = len(b)
    return Partition(x for x in (b[i] - (l - 1 - i) for i in range(l)) if x > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = _beta(lam)
    present = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in present:
            continue
        height = sum(1 for x in beta if c < x < b)
        new = _from_beta((present - {b}) | {c})
        total += (-1) ** height * _mn(tuple(new), rest)
    return total


def mn_character(lam, mu) -> int:
    """``chi^lam`` at the class of cycle type ``mu`` (rim-hook recursion)."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.n != mu.n:
        raise ValueError("partitions of different integers")
    return _mn(tuple(lam), tuple(mu))


def irreducible(lam) -> CharacterVector:
    lam = Partition(lam)
    return CharacterVector(lam.n, {mu: mn_character(lam, mu) for mu in partitions(lam.n)})


def character_table(n: int) -> np.ndarray:
    """Rows ``chi^lam``, columns classes, both in descending lexicographic order."""
    parts = list(partitions(n))
    return np.array([[mn_character(l, m) for m in parts] for l in parts], dtype=object)


def decompose(chi: CharacterVector) -> dict[Partition, int]:
    """Multiplicities of the irreducibles in ``chi``; only nonzero ones are returned.

    Raises ``ValueError`` for a non-integral or negative multiplicity.
    """
    out = {}
    for lam in partitions(chi.n):
        m = chi.inner(irreducible(lam))
        if m.denominator != 1 or m < 0:
            raise ValueError(f"multiplicity {m} of chi^({lam}): not a character")
        if m:
            out[lam] = int(m)
    if compose(chi.n, out) != chi:
        raise AssertionError("reconstruction from multiplicities failed")
    return out


def compose(n: int, multiplicities: Mapping) -> CharacterVector:
    total = CharacterVector(n)
    for lam, m in multiplicities.items():
        total = total + m * irreducible(lam)
    return total


# ------------------------------------------------------------ ideal characters


def _normalized_idempotent(g: GroupAlgebraElement) -> np.ndarray:
    """Dense coefficients of ``g / c`` where ``g^2 = c g``."""
    if g.field == ZZ:
        g = g.change_field(QQ)
    if g.field != QQ:
        raise ValueError("ideal characters are computed over Q")
    if g.is_zero():
        raise ValueError("zero element")
    vec = g.to_dense()
    sq = dense_product(g.n, QQ, vec, vec)
    j = int(np.flatnonzero(vec != 0)[0])
    c = sq[j] / vec[j]
    if c == 0 or any(a != c * b for a, b in zip(sq, vec)):
        raise ValueError("g^2 is not a nonzero multiple of g")
    return np.array([x / c for x in vec], dtype=object)


@lru_cache(maxsize=None)
def _class_labels(n: int) -> tuple:
    G = symmetric_group(n)
    return tuple(cycle_type(pi) for pi in G.elements)


def _character_from_dense(n: int, e: np.ndarray) -> dict[Partition, Fraction]:
    G = symmetric_group(n)
    labels = _class_labels(n)
    sums: dict[Partition, Fraction] = {lam: Fraction(0) for lam in partitions(n)}
    # trace of right multiplication by pi: |C(pi)| * sum of e over tau with tau^-1 ~ pi
    for t, coeff in enumerate(e):
        if coeff != 0:
            sums[labels[int(G.inverse[t])]] += coeff
    return {lam: factorial(n) // class_size(lam) * s for lam, s in sums.items()}


def ideal_character(g: GroupAlgebraElement, mu) -> Fraction:
    """Character of the right ideal ``g Q S_n`` at the class ``mu`` (needs g^2 = c g)."""
    mu = Partition(mu)
    return _character_from_dense(g.n, _normalized_idempotent(g))[mu]


def ideal_character_vector(g: GroupAlgebraElement) -> CharacterVector:
    return CharacterVector(g.n, _character_from_dense(g.n, _normalized_idempotent(g)))


# ------------------------------------------------------------ abacus


@dataclass(frozen=True)
class AbacusDisplay:
    """Bead positions of a partition of 2p on an abacus with p runners.

    Position ``b`` sits in row ``b // p`` on runner ``b % p + 1``.
    """

    p: int
    beads: frozenset

    def __post_init__(self):
        if len(self.beads) != 2 * self.p:
            raise ValueError(f"need {2 * self.p} beads, got {len(self.beads)}")
        if any(b < 0 for b in self.beads):
            raise ValueError("bead positions are nonnegative")

    def runner_rows(self, runner: int) -> tuple[int, ...]:
        return tuple(sorted(b // self.p for b in self.beads if b % self.p == runner - 1))

    def weight(self) -> int:
        """Gaps above each bead on its own runner, summed over all beads."""
        total = 0
        for b in self.beads:
            total += sum(1 for x in range(b % self.p, b, self.p) if x not in self.beads)
        return total

    def render(self, bead: str = "o", gap: str = ".") -> list[str]:
        rows = max(self.beads) // self.p + 1
        return [
            "".join(bead if r * self.p + c in self.beads else gap for c in range(self.p))
            for r in range(rows)
        ]


def abacus_of_partition(lam, p: int) -> AbacusDisplay:
    lam = Partition(lam)
    if lam.n != 2 * p:
        raise ValueError(f"{lam} is not a partition of {2 * p}")
    beads = 2 * p
    parts = list(lam) + [0] * (beads - len(lam))
    return AbacusDisplay(p, frozenset(parts[i] + (beads - 1 - i) for i in range(beads)))


def partition_of_abacus(display: AbacusDisplay) -> Partition:
    """Count the gaps before each bead."""
    beads = sorted(display.beads)
    return Partition(sorted((b - i for i, b in enumerate(beads) if b - i > 0), reverse=True))


def principal_block_test(lam, p: int) -> bool:
    """Whether chi^lam (lam a partition of 2p) lies in the principal p-block."""
    return abacus_of_partition(lam, p).weight() == 2


def gap_label(display: AbacusDisplay) -> tuple[int, ...] | None:
    """``(i,)`` for a gap of size two on runner i, ``(i, j)`` for gaps on runners
    i and j (``i == j`` allowed), or ``None`` outside the principal block."""
    if display.weight() != 2:
        return None
    moved = [r for r in range(1, display.p + 1) if display.runner_rows(r) != (0, 1)]
    rows = {r: display.runner_rows(r) for r in moved}
    if len(moved) == 1:
        (r,) = moved
        if rows[r] == (0, 3):
            return (r,)
        if rows[r] == (1, 2):
            return (r, r)
    if len(moved) == 2 and all(rows[r] == (0, 2) for r in moved):
        return tuple(moved)
    raise AssertionError(f"unexpected weight-two display {display}")


def abacus_of_label(label, p: int) -> AbacusDisplay:
    """Inverse of :func:`gap_label`."""
    label = tuple(label)
    rows = {r: (0, 1) for r in range(1, p + 1)}
    if len(label) == 1:
        rows[label[0]] = (0, 3)
    elif len(label) == 2 and label[0] == label[1]:
        rows[label[0]] = (1, 2)
    elif len(label) == 2:
        for r in label:
            rows[r] = (0, 2)
    else:
        raise ValueError(f"bad label {label}")
    if any(not 1 <= r <= p for r in label):
        raise ValueError(f"runner out of range in {label}")
    return AbacusDisplay(p, frozenset(row * p + r - 1 for r, rr in rows.items() for row in rr))


def partition_of_label(label, p: int) -> Partition:
    return partition_of_abacus(abacus_of_label(label, p))


def format_label(label) -> str:
    return "<" + ",".join(str(r) for r in label) + ">"


def p_core(lam, p: int) -> Partition:
    """Remove rim p-hooks from the Young diagram until none is left."""
    parts = list(Partition(lam))
    while True:
        hook = _find_hook(parts, p)
        if hook is None:
            return Partition(x for x in parts if x > 0)
        i, j, leg = hook
        for r in range(i, i + leg):
            parts[r] = parts[r + 1] - 1
        parts[i + leg] = j
        parts = [x for x in parts if x > 0]


def _find_hook(parts: list[int], p: int):
    conj = [sum(1 for x in parts if x > c) for c in range(parts[0])] if parts else []
    for i, row in enumerate(parts):
        for j in range(row):
            arm = row - j - 1
            leg = conj[j] - i - 1
            if arm + leg + 1 == p:
                return i, j, leg
    return None


# ------------------------------------------------------------ claims about L_2p


def spl2_principal_claim(p: int, exponent_shift: int = -1) -> list[Partition]:
    """Principal-block constituents of S^p(L_2) by the closed formula.

    The 2-part multiplicity is ``p - 2i + exponent_shift``; -1 gives
    partitions of 2p, the literal +1 does not.
    """
    out = [Partition((1,) * (2 * p))]
    for i in range(1, (p - 1) // 2 + 1):
        out.append(Partition((2 * i + 1,) * 2 + (2,) * (p - 2 * i + exponent_shift)))
    return out


def spl2_principal_labels(p: int) -> list[Partition]:
    """The same constituents from abacus labels: <1,1> and <2i,2i+1>."""
    labels = [(1, 1)] + [(2 * i, 2 * i + 1) for i in range(1, (p - 1) // 2 + 1)]
    return [partition_of_label(lb, p) for lb in labels]


def l2p_summand_claim(p: int) -> list[Partition]:
    """Constituents of the non-projective summand of L_{2p} by the closed formula."""
    out = [Partition((2,) + (1,) * (2 * p - 2)), Partition((3,) + (2,) * (p - 2) + (1,))]
    for i in range(2, (p - 1) // 2 + 1):
        out.append(Partition((2 * i + 1, 2 * i) + (2,) * (p - 2 * i - 1) + (1,)))
        out.append(Partition((2 * i - 1,) * 2 + (2,) * (p - 2 * i + 1)))
        out.append(Partition((2 * i, 2 * i - 1) + (2,) * (p - 2 * i) + (1,)))
    return out


def l2p_summand_labels(p: int) -> list[Partition]:
    labels = [(2, 2), (3, 1)]
    for i in range(2, (p - 1) // 2 + 1):
        labels += [(2 * i + 1, 2 * i - 1), (2 * i - 1, 2 * i - 2), (2 * i, 2 * i - 2)]
    return [partition_of_label(tuple(sorted(lb)), p) for lb in labels]


def p_singular_classes(n: int, p: int) -> list[Partition]:
    return [lam for lam in partitions(n) if any(part % p == 0 for part in lam)]


@dataclass
class CharacterReport:
    name: str
    p: int
    values: dict = dc_field(default_factory=dict)
    checks: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _mults_record(m: Mapping) -> dict[str, int]:
    return {str(lam): int(v) for lam, v in sorted(m.items(), reverse=True)}


def symmetric_square_lie_character(p: int) -> CharacterVector:
    """Character of S^p(L_2) in S_{2p}, from its generator ``s_p^[2] omega^(2,..,2)``."""
    from .lie import block_symmetrizer, omega_kappa

    g = block_symmetrizer(2, p, QQ) * omega_kappa(2, p, QQ)
    return ideal_character_vector(g)


def lie_character(n: int) -> CharacterVector:
    from .descent import dynkin_omega

    return ideal_character_vector(dynkin_omega(n, QQ))


def verify_spl2(p: int) -> CharacterReport:
    """Split the character of S^p(L_2) by blocks and compare with the closed formula."""
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    n = 2 * p
    chi = symmetric_square_lie_character(p)
    mults = decompose(chi)
    principal = {lam: m for lam, m in mults.items() if principal_block_test(lam, p)}
    other = {lam: m for lam, m in mults.items() if lam not in principal}
    claim = {lam: 1 for lam in spl2_principal_claim(p)}
    literal = spl2_principal_claim(p, exponent_shift=+1)
    report = CharacterReport("spl2", p)
    report.values = {
        "decomposition": _mults_record(mults),
        "principal": _mults_record(principal),
        "non_principal": _mults_record(other),
        "claimed_principal": _mults_record(claim),
        "dimension": chi.degree,
        "expected_dimension": class_size(Partition((2,) * p)),
    }
    report.checks = {
        "constituents have even part multiplicities": all(
            m == 1 and all(c % 2 == 0 for c in lam.multiplicities().values())
            for lam, m in mults.items()
        ),
        "principal part matches formula": principal == claim,
        "formula agrees with abacus labels": sorted(spl2_principal_claim(p))
        == sorted(spl2_principal_labels(p)),
        "dimension equals class size of (2^p)": chi.degree == class_size(Partition((2,) * p)),
    }
    report.notes.append(
        "2-part exponent taken as p-2i-1; the p-2i+1 reading gives partitions of "
        f"{sum(literal[1]) if len(literal) > 1 else n}, not {n}"
    )
    return report


def verify_2p(p: int) -> CharacterReport:
    """Compare the character of L_{2p} with the claimed non-projective summand
    on the p-singular classes and check the difference is a character."""
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    n = 2 * p
    chi = lie_character(n)
    claim = compose(n, {lam: 1 for lam in l2p_summand_claim(p)})
    singular = p_singular_classes(n, p)
    rest = chi - claim
    report = CharacterReport("l2p", p)
    try:
        rest_mults = decompose(rest)
        rest_ok = True
    except ValueError as exc:
        rest_mults, rest_ok = {}, False
        report.notes.append(str(exc))
    report.values = {
        "lie_character": chi.to_record(),
        "claim": _mults_record({lam: 1 for lam in l2p_summand_claim(p)}),
        "claim_dimension": claim.degree,
        "p_singular_classes": [str(lam) for lam in singular],
        "complement": _mults_record(rest_mults),
        "complement_dimension": rest.degree,
    }
    report.checks = {
        "agrees on p-singular classes": all(chi[lam] == claim[lam] for lam in singular),
        "complement is a character": rest_ok,
        "complement degree divisible by p": rest.degree % p == 0,
        "claim lies in the principal block": all(
            principal_block_test(lam, p) for lam in l2p_summand_claim(p)
        ),
        "formula agrees with abacus labels": sorted(l2p_summand_claim(p))
        == sorted(l2p_summand_labels(p)),
    }
    return report


__all__ = [
    "AbacusDisplay",
    "CharacterReport",
    "CharacterVector",
    "abacus_of_label",
    "abacus_of_partition",
    "character_table",
    "compose",
    "decompose",
    "format_label",
    "gap_label",
    "ideal_character",
    "ideal_character_vector",
    "irreducible",
    "lie_character",
    "mn_character",
    "p_core",
    "p_singular_classes",
    "partition_of_abacus",
    "partition_of_label",
    "principal_block_test",
    "spl2_principal_claim",
    "spl2_principal_labels",
    "symmetric_square_lie_character",
    "l2p_summand_claim",
    "l2p_summand_labels",
    "verify_2p",
    "verify_spl2",
]
