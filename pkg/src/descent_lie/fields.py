"""Exact coefficient rings: the integers, the rationals and prime fields F_p.

Scalars are plain Python objects: ``int`` for Z and F_p (canonical residues
``0..p-1``) and :class:`fractions.Fraction` for Q. A ring descriptor turns any
integer or fraction into its canonical scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .symgroup import is_prime


class IntegerRing:
    name = "Z"
    characteristic = 0
    is_field = False
    dtype = object

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x.numerator)
        return int(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerRing)

    def __hash__(self) -> int:
        return hash("Z")

    def __repr__(self) -> str:
        return "ZZ"

    def format(self, x) -> str:
        return str(x)

    def zeros(self, shape) -> np.ndarray:
        return _object_zeros(shape, 0)


class RationalField:
    name = "Q"
    characteristic = 0
    is_field = True
    dtype = object

    def __call__(self, x) -> Fraction:
        return x if type(x) is Fraction else Fraction(x)

    def inv(self, x) -> Fraction:
        return 1 / Fraction(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def zeros(self, shape) -> np.ndarray:
        return _object_zeros(shape, Fraction(0))


@dataclass(frozen=True)
class PrimeField:
    p: int
    is_field = True
    dtype = np.int64

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= 2**31:
            raise ValueError("only word-sized primes p < 2**31 are supported")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return str(self.p)

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            if den % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x) -> int:
        return pow(int(x), -1, self.p)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def format(self, x) -> str:
        return str(x)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)


def _object_zeros(shape, zero) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(zero)
    return out


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name) -> IntegerRing | RationalField | PrimeField:
    """``"Z"``, ``"Q"``, ``"0"`` (= Q) or a prime such as ``"3"``."""
    text = str(name).strip().upper()
    if text == "Z":
        return ZZ
    if text in ("Q", "0"):
        return QQ
    return GF(int(text))


def field_for_characteristic(p: int):
    return QQ if p == 0 else GF(p)


def parse_scalar(text: str) -> Fraction:
    return Fraction(text.strip())
