"""Bit-packed dense linear algebra over GF(2).

Matrices are stored row-major as numpy uint64 words, 64 bits per word,
little-endian bit order within each row.  All elimination routines use
leftmost-pivot / first-nonzero-row selection, so identical inputs always
produce identical echelon forms.  Values are immutable after construction
and safe to share.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

_U64 = np.uint64


def _words_for(cols: int) -> int:
    return max(1, (cols + 63) // 64)


def _pack(dense: np.ndarray, cols: int) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into (rows, words) uint64."""
    rows = dense.shape[0]
    w = _words_for(cols)
    if rows == 0:
        return np.zeros((0, w), dtype=_U64)
    b = np.packbits(dense.astype(np.uint8, copy=False), axis=1, bitorder="little")
    out = np.zeros((rows, w * 8), dtype=np.uint8)
    out[:, : b.shape[1]] = b
    return out.view(_U64).reshape(rows, w)


def _unpack(packed: np.ndarray, cols: int) -> np.ndarray:
    rows = packed.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    by = np.ascontiguousarray(packed).view(np.uint8).reshape(rows, -1)
    return np.unpackbits(by, axis=1, count=cols, bitorder="little")


def _eliminate(data: np.ndarray, cols: int, reduce_above: bool = False) -> list[int]:
    """In-place row elimination; returns pivot column list.

    Deterministic: scans columns left to right, picks the first row at or
    below the current pivot row with a nonzero entry.
    """
    rows = data.shape[0]
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r >= rows:
            break
        w, b = divmod(c, 64)
        bb = _U64(b)
        col = (data[r:, w] >> bb) & _U64(1)
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
        if reduce_above:
            full = (data[:, w] >> bb) & _U64(1)
            full[r] = 0
            sel = np.nonzero(full)[0]
        else:
            below = (data[r + 1 :, w] >> bb) & _U64(1)
            sel = r + 1 + np.nonzero(below)[0]
        if sel.size:
            data[sel] ^= data[r]
        pivots.append(c)
        r += 1
    return pivots


class BitMatrix:
    """Immutable GF(2) matrix with packed rows."""

    __slots__ = ("rows", "cols", "words", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray):
        self.rows = rows
        self.cols = cols
        self.words = _words_for(cols)
        assert data.shape == (rows, self.words) and data.dtype == _U64
        data.setflags(write=False)
        self.data = data

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _words_for(cols)), dtype=_U64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        d = np.zeros((n, _words_for(n)), dtype=_U64)
        for i in range(n):
            d[i, i >> 6] = _U64(1) << _U64(i & 63)
        return cls(n, n, d)

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        arr = np.asarray(dense, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(arr.shape[0], arr.shape[1], _pack(arr, arr.shape[1]))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int) -> "BitMatrix":
        lst = [np.asarray(r, dtype=np.uint8) for r in rows]
        if not lst:
            return cls.zeros(0, cols)
        return cls.from_dense(np.vstack(lst))

    @classmethod
    def vstack(cls, mats: Sequence["BitMatrix"]) -> "BitMatrix":
        cols = mats[0].cols
        assert all(m.cols == cols for m in mats)
        data = np.vstack([m.data for m in mats]).copy()
        return cls(sum(m.rows for m in mats), cols, data)

    # -- accessors ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> np.ndarray:
        return _unpack(self.data, self.cols)

    def get(self, i: int, j: int) -> int:
        return int((self.data[i, j >> 6] >> _U64(j & 63)) & _U64(1))

    def row_dense(self, i: int) -> np.ndarray:
        return _unpack(self.data[i : i + 1], self.cols)[0]

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.shape == other.shape
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    # -- arithmetic -----------------------------------------------------

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def __xor__(self, other: "BitMatrix") -> "BitMatrix":
        assert self.shape == other.shape
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        """Matrix product over GF(2): result = self @ other."""
        assert self.cols == other.rows
        left = self.to_dense()
        out = np.zeros((self.rows, other.words), dtype=_U64)
        for i in range(self.rows):
            sel = np.nonzero(left[i])[0]
            if sel.size:
                out[i] = np.bitwise_xor.reduce(other.data[sel], axis=0)
        return BitMatrix(self.rows, other.cols, out)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return self.matmul(other)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Apply to a dense 0/1 column vector: returns self @ vec."""
        v = np.asarray(vec, dtype=np.uint8) & 1
        assert v.shape == (self.cols,)
        if self.rows == 0:
            return np.zeros(0, dtype=np.uint8)
        vp = _pack(v[None, :], self.cols)[0]
        bits = np.bitwise_count(self.data & vp[None, :]).sum(axis=1)
        return (bits & 1).astype(np.uint8)

    # -- elimination ----------------------------------------------------

    def rank(self) -> int:
        work = self.data.copy()
        return len(_eliminate(work, self.cols))

    def rref(self) -> tuple["BitMatrix", tuple[int, ...]]:
        """Reduced row echelon form with zero rows dropped."""
        work = self.data.copy()
        pivots = _eliminate(work, self.cols, reduce_above=True)
        r = len(pivots)
        return BitMatrix(r, self.cols, work[:r].copy()), tuple(pivots)

    def nullspace(self) -> "Subspace":
        """Basis of the right kernel {x : self @ x = 0}."""
        work = self.data.copy()
        pivots = _eliminate(work, self.cols, reduce_above=True)
        piv = set(pivots)
        free = [c for c in range(self.cols) if c not in piv]
        if not free:
            return Subspace(self.cols, BitMatrix.zeros(0, self.cols), ())
        pivarr = np.array(pivots, dtype=np.int64)
        basis = np.zeros((len(free), self.cols), dtype=np.uint8)
        red = work[: len(pivots)]
        for k, f in enumerate(free):
            basis[k, f] = 1
            if pivots:
                colbits = (red[:, f >> 6] >> _U64(f & 63)) & _U64(1)
                basis[k, pivarr] = colbits.astype(np.uint8)
        return Subspace.from_generators(BitMatrix.from_dense(basis))

    def inverse(self) -> "BitMatrix":
        """Inverse of a square matrix; raises if singular."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = np.hstack([self.to_dense(), np.eye(n, dtype=np.uint8)])
        work = _pack(aug, 2 * n)
        pivots = _eliminate(work, 2 * n, reduce_above=True)
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise ValueError("matrix is singular")
        return BitMatrix.from_dense(_unpack(work[:n], 2 * n)[:, n:])

    def row_space(self) -> "Subspace":
        return Subspace.from_generators(self)

    def solve(self, b: np.ndarray) -> Optional[np.ndarray]:
        """Any x with self @ x = b, or None if the system is inconsistent."""
        bv = np.asarray(b, dtype=np.uint8) & 1
        assert bv.shape == (self.rows,)
        aug = np.hstack([self.to_dense(), bv[:, None]])
        work = _pack(aug, self.cols + 1)
        pivots = _eliminate(work, self.cols + 1, reduce_above=True)
        if pivots and pivots[-1] == self.cols:
            return None
        red = _unpack(work[: len(pivots)], self.cols + 1)
        x = np.zeros(self.cols, dtype=np.uint8)
        for i, p in enumerate(pivots):
            x[p] = red[i, -1]
        return x


class Subspace:
    """Subspace of GF(2)^ambient, basis kept in reduced row echelon form."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: BitMatrix, pivots: tuple[int, ...]):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_generators(cls, gens: BitMatrix) -> "Subspace":
        red, pivots = gens.rref()
        return cls(gens.cols, red, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, BitMatrix.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim,
            BitMatrix.identity(ambient_dim),
            tuple(range(ambient_dim)),
        )

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other) -> bool:
        # RREF is canonical, so equality of subspaces is equality of bases.
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        """Reduce a vector against the basis; zero iff the vector lies here."""
        v = (np.asarray(vec, dtype=np.uint8) & 1).copy()
        assert v.shape == (self.ambient_dim,)
        if self.dim == 0:
            return v
        dense = self.basis.to_dense()
        for i, p in enumerate(self.pivots):
            if v[p]:
                v ^= dense[i]
        return v

    def contains(self, vec: np.ndarray) -> bool:
        return not self.reduce(vec).any()

    def contains_space(self, other: "Subspace") -> bool:
        if other.dim > self.dim:
            return False
        return all(self.contains(other.basis.row_dense(i)) for i in range(other.dim))


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if u.dim == 0:
        return v
    if v.dim == 0:
        return u
    return Subspace.from_generators(BitMatrix.vstack([u.basis, v.basis]))


def subspace_meet(u: Subspace, v: Subspace) -> Subspace:
    """Intersection via the Zassenhaus block trick."""
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    n = u.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(n)
    ud = u.basis.to_dense()
    vd = v.basis.to_dense()
    top = np.hstack([ud, ud])
    bot = np.hstack([vd, np.zeros_like(vd)])
    work = _pack(np.vstack([top, bot]), 2 * n)
    pivots = _eliminate(work, 2 * n)
    red = _unpack(work[: len(pivots)], 2 * n)
    rows = [red[i, n:] for i in range(len(pivots)) if not red[i, :n].any()]
    if not rows:
        return Subspace.zero(n)
    return Subspace.from_generators(BitMatrix.from_dense(np.vstack(rows)))


def solve(a: BitMatrix, b: np.ndarray) -> Optional[np.ndarray]:
    return a.solve(b)
