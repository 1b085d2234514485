"""Subspaces of F^N over F_p or Q, kept in reduced row echelon form.

Over F_p, rows are dense ``int64`` arrays and reduction is blocked so that the
heavy lifting is a matrix product (done in float64 whenever the partial sums
stay below 2**53, which makes it exact). Over Q, rows hold ``gmpy2.mpq``
values internally; :attr:`Subspace.basis` converts them to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

import gmpy2
import numpy as np

from .fields import QQ, PrimeField, RationalField
from .group_algebra import GroupAlgebraElement
from .symgroup import symmetric_group

_EXACT_FLOAT = 2**53
_BLOCK = 256


# ---------------------------------------------------------------- F_p kernels


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    if (p - 1) ** 2 * a.shape[1] < _EXACT_FLOAT:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(prod, p).astype(np.int64)
    prod = a.astype(object) @ b.astype(object)
    return np.mod(prod, p).astype(np.int64)


def rref_mod_p(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``m`` over F_p; zero rows dropped."""
    r_mat = np.array(m, dtype=np.int64) % p
    rows, _ = r_mat.shape
    pivots: list[int] = []
    r = 0
    while r < rows:
        live = r_mat[r:]
        nz_cols = np.flatnonzero(live.any(axis=0))
        if nz_cols.size == 0:
            break
        c = int(nz_cols[0])
        i = r + int(np.flatnonzero(live[:, c])[0])
        if i != r:
            r_mat[[r, i]] = r_mat[[i, r]]
        inv = pow(int(r_mat[r, c]), -1, p)
        r_mat[r] = (r_mat[r] * inv) % p
        col = r_mat[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            # entries < p, so the product fits in int64 for p < 2**31
            r_mat[hit] = (r_mat[hit] - np.outer(col[hit], r_mat[r]) % p) % p
        pivots.append(c)
        r += 1
    return r_mat[:r], pivots


class _ModpEchelon:
    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots = np.zeros(0, dtype=np.int64)

    def reduce(self, block: np.ndarray) -> np.ndarray:
        block = np.asarray(block, dtype=np.int64) % self.p
        if self.rows.shape[0]:
            block = (block - _matmul_mod(block[:, self.pivots], self.rows, self.p)) % self.p
        return block

    def insert(self, block: np.ndarray) -> None:
        block = self.reduce(block)
        new_rows, new_piv = rref_mod_p(block, self.p)
        if not new_piv:
            return
        new_piv_arr = np.array(new_piv, dtype=np.int64)
        if self.rows.shape[0]:
            self.rows = (
                self.rows - _matmul_mod(self.rows[:, new_piv_arr], new_rows, self.p)
            ) % self.p
        rows = np.vstack([self.rows, new_rows])
        piv = np.concatenate([self.pivots, new_piv_arr])
        order = np.argsort(piv, kind="stable")
        self.rows, self.pivots = rows[order], piv[order]


# ---------------------------------------------------------------- Q kernels


def _to_mpq(x) -> gmpy2.mpq:
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    return gmpy2.mpq(x)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


_mpq_vec = np.frompyfunc(_to_mpq, 1, 1)
_frac_vec = np.frompyfunc(_to_fraction, 1, 1)


class _RationalEchelon:
    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.array(v, dtype=object)
        for row, c in zip(self.rows, self.pivots):
            x = v[c]
            if x != 0:
                v = v - x * row
        return v

    def insert_row(self, v: np.ndarray) -> None:
        v = self.reduce(v)
        nz = np.flatnonzero(v != 0)
        if nz.size == 0:
            return
        c = int(nz[0])
        v = v / v[c]
        for i, row in enumerate(self.rows):
            x = row[c]
            if x != 0:
                self.rows[i] = row - x * v
        pos = int(np.searchsorted(self.pivots, c))
        self.rows.insert(pos, v)
        self.pivots.insert(pos, c)

    def insert(self, block: np.ndarray) -> None:
        for v in _mpq_vec(np.asarray(block, dtype=object)).reshape(-1, self.ncols):
            self.insert_row(v)


def rref_rational(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Q of a matrix of ints/Fractions."""
    m = np.asarray(m, dtype=object)
    ech = _RationalEchelon(m.shape[1])
    ech.insert(m)
    if ech.rows:
        out = _frac_vec(np.vstack(ech.rows)).astype(object)
    else:
        out = np.empty((0, m.shape[1]), dtype=object)
    return out, list(ech.pivots)


def rref(field, m) -> tuple[np.ndarray, list[int]]:
    if isinstance(field, PrimeField):
        return rref_mod_p(np.asarray(m, dtype=object) % field.p, field.p)
    if isinstance(field, RationalField):
        return rref_rational(m)
    raise ValueError(f"linear algebra needs a field, got {field!r}")


# ---------------------------------------------------------------- Subspace


class Subspace:
    """A subspace of ``field**dim`` stored by its canonical RREF basis.

    ``n`` is set when the ambient space is the group algebra of S_n with
    coordinates indexed by Lehmer rank.
    """

    def __init__(self, field, dim: int, rows: Iterable = (), *, n: int | None = None):
        if not getattr(field, "is_field", False):
            raise ValueError(f"subspaces need a field, got {field!r}")
        self.field = field
        self.dim_ambient = dim
        self.n = n
        if isinstance(field, PrimeField):
            self._ech = _ModpEchelon(field.p, dim)
        else:
            self._ech = _RationalEchelon(dim)
        self._basis_cache = None
        self.extend(rows)

    @classmethod
    def zero(cls, field, dim: int, *, n: int | None = None) -> "Subspace":
        return cls(field, dim, n=n)

    def extend(self, rows) -> None:
        if isinstance(rows, np.ndarray):
            blocks = [rows.reshape(-1, self.dim_ambient)]
        else:
            blocks = rows
        for block in _batched(blocks, self.dim_ambient):
            self._add(block)

    def _add(self, block: np.ndarray) -> None:
        if block.shape[0] == 0:
            return
        if isinstance(self.field, PrimeField):
            self._ech.insert(np.asarray(block, dtype=object) % self.field.p)
        else:
            self._ech.insert(block)
        self._basis_cache = None

    # queries

    @property
    def dim(self) -> int:
        return len(self._ech.pivots)

    def __len__(self) -> int:
        return self.dim

    @property
    def pivots(self) -> list[int]:
        return [int(c) for c in self._ech.pivots]

    @property
    def basis(self) -> np.ndarray:
        """Canonical RREF basis (copy); Fractions over Q."""
        if self._basis_cache is None:
            if isinstance(self.field, PrimeField):
                self._basis_cache = self._ech.rows.copy()
            elif self._ech.rows:
                self._basis_cache = _frac_vec(np.vstack(self._ech.rows)).astype(object)
            else:
                self._basis_cache = np.empty((0, self.dim_ambient), dtype=object)
        return self._basis_cache.copy()

    def _vector(self, v) -> np.ndarray:
        if isinstance(v, GroupAlgebraElement):
            if self.n is None or v.n != self.n:
                raise ValueError("element does not live in this ambient space")
            if v.field != self.field:
                raise ValueError(f"field mismatch: {v.field!r} vs {self.field!r}")
            v = v.to_dense()
        v = np.asarray(v)
        if v.shape != (self.dim_ambient,):
            raise ValueError(f"vector of shape {v.shape} in ambient dim {self.dim_ambient}")
        return v

    def contains(self, v) -> bool:
        v = self._vector(v)
        if isinstance(self.field, PrimeField):
            red = self._ech.reduce(v.astype(object).reshape(1, -1) % self.field.p)
            return not red.any()
        red = self._ech.reduce(_mpq_vec(v.astype(object)))
        return not any(x != 0 for x in red)

    __contains__ = contains

    def coordinates(self, v) -> list:
        """Coefficients of ``v`` in :attr:`basis`; raises if ``v`` is outside."""
        v = self._vector(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [self.field(v[c]) for c in self.pivots]

    def is_subspace_of(self, other: "Subspace") -> bool:
        _compatible(self, other)
        return all(other.contains(row) for row in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.is_subspace_of(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.field != other.field or self.dim_ambient != other.dim_ambient:
            return False
        return self.pivots == other.pivots and np.array_equal(self.basis, other.basis)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Subspace") -> "Subspace":
        _compatible(self, other)
        out = Subspace(self.field, self.dim_ambient, n=self.n)
        out.extend(self.basis)
        out.extend(other.basis)
        return out

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.field!r}^{self.dim_ambient})"


def _batched(blocks, ncols: int):
    pending: list = []
    count = 0
    for block in blocks:
        block = np.asarray(block)
        if block.ndim == 1:
            block = block.reshape(1, ncols)
        for start in range(0, block.shape[0], _BLOCK):
            chunk = block[start : start + _BLOCK]
            pending.append(chunk)
            count += chunk.shape[0]
            if count >= _BLOCK:
                yield np.vstack(pending)
                pending, count = [], 0
    if pending:
        yield np.vstack(pending)


def _compatible(a: Subspace, b: Subspace) -> None:
    if a.field != b.field or a.dim_ambient != b.dim_ambient or a.n != b.n:
        raise ValueError("incompatible subspaces")


def subspace_dim(s: Subspace) -> int:
    return s.dim


def subspace_contains(s: Subspace, v) -> bool:
    return s.contains(v)


def subspace_product(
    s: Subspace, t: Subspace, multiply: Callable | None = None
) -> Subspace:
    """Span of all products ``a * b`` with ``a`` in ``s`` and ``b`` in ``t``.

    ``multiply(A, B)`` must return the products of all row pairs as a 2-D
    array; the default multiplies in the group algebra of S_n.
    """
    _compatible(s, t)
    out = Subspace(s.field, s.dim_ambient, n=s.n)
    if s.dim == 0 or t.dim == 0:
        return out
    if multiply is None:
        if s.n is None:
            raise ValueError("no multiplication known for this ambient space")
        multiply = _group_algebra_products(s.n, s.field)
    out.extend(multiply(s.basis, t.basis))
    return out


def subspace_power(s: Subspace, m: int, multiply: Callable | None = None) -> Subspace:
    """The m-fold product ``s * s * ... * s`` (m >= 1)."""
    if m < 1:
        raise ValueError("power must be at least 1")
    out = s
    for _ in range(m - 1):
        out = subspace_product(out, s, multiply)
    return out


def _group_algebra_products(n: int, field):
    G = symmetric_group(n)

    def multiply(a_rows: np.ndarray, b_rows: np.ndarray) -> np.ndarray:
        out = []
        for a in a_rows:
            acc = field.zeros((b_rows.shape[0], G.order))
            for j in np.flatnonzero(a != 0):
                acc[:, G.left_mult(int(j))] += a[j] * b_rows
            if isinstance(field, PrimeField):
                acc %= field.p
            out.append(acc)
        return np.vstack(out)

    return multiply


def right_ideal(g: GroupAlgebraElement) -> Subspace:
    """The right ideal ``g F S_n`` as a subspace of F S_n.

    Every generator ``g * pi`` is inserted; rank can grow late, so there is
    no early exit.
    """
    field = g.field
    if field.characteristic == 0 and not field.is_field:
        field = QQ
        g = g.change_field(QQ)
    G = symmetric_group(g.n)
    out = Subspace(field, G.order, n=g.n)
    if g.is_zero():
        return out
    cols = [(G.left_mult(G.index[perm]), c) for perm, c in g.items()]
    step = _BLOCK
    for start in range(0, G.order, step):
        stop = min(start + step, G.order)
        block = field.zeros((stop - start, G.order))
        rows = np.arange(stop - start)
        for col, c in cols:
            block[rows, col[start:stop]] += c
        out.extend(block)
    return out


def left_kernel(field, m) -> Subspace:
    """``{x : x @ m = 0}`` as a subspace of ``field**rows``."""
    m = np.asarray(m, dtype=object)
    return kernel(field, m.T)


def kernel(field, m) -> Subspace:
    """``{x : m @ x = 0}`` as a subspace of ``field**cols``."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    red, pivots = rref(field, m)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = field.zeros(cols)
        v[f] = field(1)
        for r, c in enumerate(pivots):
            v[c] = field(-red[r, f])
        basis.append(v)
    out = Subspace(field, cols)
    if basis:
        out.extend(np.vstack(basis))
    return out


def solve(field, a, b) -> list:
    """A solution ``x`` of ``a @ x = b``; free variables are set to zero.

    Raises ``ValueError`` when the system is inconsistent.
    """
    a = np.asarray(a, dtype=object)
    rows, cols = a.shape
    aug = np.hstack([a, np.asarray(b, dtype=object).reshape(rows, 1)])
    red, pivots = rref(field, aug)
    if cols in pivots:
        raise ValueError("inconsistent linear system")
    x = [field(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = field(red[r, cols])
    return x
