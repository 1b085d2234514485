"""Primitive idempotents of the descent algebra over F_p (or Q for p = 0).

The Solomon map sends D_{n,F} onto the algebra of class functions constant on
p-equivalence classes, with nilpotent kernel. Preimages of the class
indicators are lifted to idempotents by iterating ``x -> 3x^2 - 2x^3`` and
made orthogonal one at a time inside the corner left by those already found.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .descent import ClassFunction, DescentAlgebra, DescentElement
from .fields import field_for_characteristic
from .linalg import right_ideal, solve
from .symgroup import (
    Composition,
    Partition,
    check_capacity,
    class_size,
    is_p_regular,
    p_equiv_classes,
    p_regular_partitions,
)

CACHE_ENV = "DESCENT_LIE_CACHE_DIR"
CACHE_FORMAT = 1


class LiftingError(ArithmeticError):
    """Lifting did not converge; the Solomon kernel would not be nilpotent."""


class InvariantError(ValueError):
    """An idempotent system violates one of its defining properties."""

    def __init__(self, prop: str, detail: str = ""):
        self.property = prop
        super().__init__(f"{prop}: {detail}" if detail else prop)


class CacheError(ValueError):
    """A cache entry could not be read or failed revalidation."""


def class_indicator(mu, p: int) -> ClassFunction:
    """1 on partitions p-equivalent to ``mu``, 0 elsewhere (p = 0: just ``mu``)."""
    mu = Partition(mu)
    if p and not is_p_regular(mu, p):
        raise ValueError(f"{mu} is not {p}-regular")
    field = field_for_characteristic(p)
    for cls in p_equiv_classes(mu.n, p):
        if cls.representative == mu:
            return ClassFunction(mu.n, field, {lam: 1 for lam in cls.members})
    raise AssertionError(f"no p-equivalence class for {mu}")


def _lift(x: DescentElement, limit: int) -> DescentElement:
    for _ in range(limit + 1):
        x2 = x * x
        if x2 == x:
            return x
        x = 3 * x2 - 2 * (x2 * x)
    raise LiftingError(f"no idempotent after {limit} lifting steps")


def preimage(algebra: DescentAlgebra, target: ClassFunction) -> DescentElement:
    """A basic solution ``x`` of ``solomon_hom(x) = target``."""
    matrix = algebra.character_matrix().T
    rhs = [target[lam] for lam in target._values]
    return algebra.from_vector(solve(algebra.field, matrix, rhs))


@dataclass(frozen=True)
class IdempotentSystem:
    """Mutually orthogonal primitive idempotents ``e_mu`` keyed by p-regular mu."""

    n: int
    p: int
    idempotents: dict

    @property
    def algebra(self) -> DescentAlgebra:
        return DescentAlgebra(self.n, field_for_characteristic(self.p))

    def __getitem__(self, mu) -> DescentElement:
        return self.idempotents[Partition(mu)]

    def __len__(self) -> int:
        return len(self.idempotents)

    def items(self):
        return self.idempotents.items()

    @property
    def e_n(self) -> DescentElement:
        return self[(self.n,)]

    def validate(self) -> None:
        """Raise :class:`InvariantError` naming the first violated property."""
        D = self.algebra
        expected = p_regular_partitions(self.n, self.p)
        if list(self.idempotents) != expected:
            raise InvariantError("index set", "keys are not the p-regular partitions")
        for mu, e in self.items():
            if e.algebra != D:
                raise InvariantError("index set", f"e_{mu} lives in {e.algebra!r}")
        for mu, e in self.items():
            if e * e != e:
                raise InvariantError("e^2 = e", f"fails for e_({mu})")
        items = list(self.items())
        for mu, e in items:
            for lam, f in items:
                if lam != mu and not (e * f).is_zero():
                    raise InvariantError("orthogonality", f"e_({mu}) e_({lam}) != 0")
        total = D.zero()
        for _, e in items:
            total = total + e
        if total != D.one():
            raise InvariantError("completeness", "sum of idempotents is not 1")
        for mu, e in items:
            if D.solomon_hom(e) != class_indicator(mu, self.p):
                raise InvariantError("image", f"solomon_hom(e_({mu})) is not ch_({mu})")
        if self.e_n.coefficient(Composition((self.n,))) != 1:
            raise InvariantError("normalization", "X^(n)-coefficient of e_n is not 1")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvariantError:
            return False
        return True

    # serialization

    def to_json(self) -> str:
        D = self.algebra
        fmt = D.field.format
        record = {
            "format": CACHE_FORMAT,
            "n": self.n,
            "p": self.p,
            "compositions": [str(mu) for mu in D.compositions],
            "idempotents": [
                {"partition": str(mu), "coordinates": [fmt(c) for c in e.coords]}
                for mu, e in self.items()
            ],
        }
        return json.dumps(record, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "IdempotentSystem":
        """Parse a system; the caller is responsible for :meth:`validate`."""
        try:
            record = json.loads(text)
            n, p = int(record["n"]), int(record["p"])
            if record.get("format") != CACHE_FORMAT:
                raise CacheError(f"unknown cache format {record.get('format')!r}")
            D = DescentAlgebra(n, field_for_characteristic(p))
            if record["compositions"] != [str(mu) for mu in D.compositions]:
                raise CacheError("composition order does not match")
            idem = {}
            for entry in record["idempotents"]:
                mu = Partition.parse(entry["partition"])
                coords = [_parse_scalar(c) for c in entry["coordinates"]]
                if len(coords) != D.dim:
                    raise CacheError(f"wrong coordinate count for {mu}")
                idem[mu] = D.from_vector(coords)
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            if isinstance(exc, CacheError):
                raise
            raise CacheError(f"unreadable idempotent record: {exc}") from exc
        return cls(n, p, idem)


def _parse_scalar(text: str):
    from fractions import Fraction

    return Fraction(str(text))


def lift_idempotents(n: int, p: int) -> IdempotentSystem:
    """Orthogonal primitive idempotents of D_{n,F_p}; ``p = 0`` works over Q."""
    check_capacity(n)
    field = field_for_characteristic(p)
    D = DescentAlgebra(n, field)
    one = D.one()
    accepted: dict[Partition, DescentElement] = {}
    s = D.zero()
    for mu in p_regular_partitions(n, p):
        x = _lift(preimage(D, class_indicator(mu, p)), D.dim)
        if accepted:
            c = one - s
            x = _lift(c * x * c, D.dim)
        accepted[mu] = x
        s = s + x
    system = IdempotentSystem(n, p, accepted)
    if s != one:
        raise InvariantError("completeness", "sum of idempotents is not 1")
    return system


def ideal_dimension(e: DescentElement) -> int:
    """``dim e F S_n`` for an idempotent ``e`` of the descent algebra."""
    if e * e != e:
        raise ValueError("not an idempotent")
    return right_ideal(e.to_group_algebra()).dim


def expected_ideal_dimension(mu, p: int) -> int:
    """Total size of the classes p-equivalent to ``mu``."""
    ind = class_indicator(mu, p)
    return sum(class_size(lam) for lam, v in ind.items() if v)


# ------------------------------------------------------------ cache


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "descent-lie"


def cache_path(directory, n: int, p: int) -> Path:
    return Path(directory) / f"{n}-{p}.idem"


def save_system(system: IdempotentSystem, directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = cache_path(directory, system.n, system.p)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(system.to_json())
    tmp.replace(path)
    return path


def load_system(directory, n: int, p: int) -> IdempotentSystem:
    """Read and revalidate a cached system; raise :class:`CacheError` on any defect."""
    path = cache_path(directory, n, p)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CacheError(f"{path}: {exc.strerror}") from exc
    system = IdempotentSystem.from_json(text)
    if (system.n, system.p) != (n, p):
        raise CacheError(f"{path} holds n={system.n}, p={system.p}")
    try:
        system.validate()
    except InvariantError as exc:
        raise CacheError(f"{path}: {exc}") from exc
    return system


def get_system(n: int, p: int, cache_dir=None) -> IdempotentSystem:
    """Load from ``cache_dir`` when present and valid, otherwise lift and store."""
    if cache_dir is not None and cache_path(cache_dir, n, p).exists():
        return load_system(cache_dir, n, p)
    system = lift_idempotents(n, p)
    if cache_dir is not None:
        save_system(system, cache_dir)
    return system


def cache_entries(directory) -> list[tuple[int, int]]:
    directory = Path(directory)
    if not directory.is_dir():
        return []
    out = []
    for path in directory.glob("*.idem"):
        try:
            n, p = (int(t) for t in path.stem.split("-"))
        except ValueError:
            continue
        out.append((n, p))
    return sorted(out)


def validate_cache(directory, cases=None) -> dict[tuple[int, int], str | None]:
    """Map each entry to ``None`` if valid or to the failure message."""
    results = {}
    for n, p in cases if cases is not None else cache_entries(directory):
        try:
            load_system(directory, n, p)
            results[(n, p)] = None
        except CacheError as exc:
            results[(n, p)] = str(exc)
    return results


def clear_cache(directory, cases=None) -> int:
    """Remove cache entries (all of them by default); returns the number removed."""
    removed = 0
    for n, p in cases if cases is not None else cache_entries(directory):
        path = cache_path(directory, n, p)
        if path.exists():
            path.unlink()
            removed += 1
    return removed


__all__ = [
    "CacheError",
    "IdempotentSystem",
    "InvariantError",
    "LiftingError",
    "class_indicator",
    "clear_cache",
    "default_cache_dir",
    "expected_ideal_dimension",
    "get_system",
    "ideal_dimension",
    "lift_idempotents",
    "load_system",
    "preimage",
    "save_system",
    "validate_cache",
]
