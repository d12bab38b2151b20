"""GF(2) permutation modules on subsets and tabloids.

Provides the incidence maps between subset modules, the closed rank
formula for them, two-row Specht submodules as intersections of incidence
kernels, general Specht bases from polytabloids, and simple heads as
quotients by the radical of the standard bilinear form.

Modules carry provenance (an ambient coordinate set on which any
permutation acts by permuting coordinates), so every subquotient can be
acted on by arbitrary group elements, not just the generators it was
built with.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Optional, Sequence

import numpy as np

from .gf2 import BitMatrix, Subspace, subspace_sum
from .partitions import Partition
from .symgrp import Perm


class SubsetIndexer:
    """Colexicographic rank/unrank for r-subsets of {0..n-1}."""

    def __init__(self, n: int, r: int):
        if not (0 <= r <= n):
            raise ValueError(f"bad subset size {r} for n={n}")
        self.n = n
        self.r = r
        self.count = comb(n, r)

    def rank(self, subset: Sequence[int]) -> int:
        a = sorted(subset)
        assert len(a) == self.r
        return sum(comb(x, i + 1) for i, x in enumerate(a))

    def unrank(self, idx: int) -> tuple[int, ...]:
        out = []
        rest = idx
        for i in range(self.r, 0, -1):
            x = i - 1
            while comb(x + 1, i) <= rest:
                x += 1
            out.append(x)
            rest -= comb(x, i)
        return tuple(sorted(out))

    def all(self) -> list[tuple[int, ...]]:
        subs = [()] if self.r == 0 else list(
            itertools.combinations(range(self.n), self.r)
        )
        return sorted(subs, key=self.rank)


class SubsetAmbient:
    """Coordinates = r-subsets of an n-set, colex order."""

    def __init__(self, n: int, r: int):
        self.n = n
        self.r = r
        self.indexer = SubsetIndexer(n, r)
        self.dim = self.indexer.count
        self._subsets = self.indexer.all()

    def describe(self) -> str:
        return f"subsets(n={self.n},r={self.r})"

    def coord_map(self, g: Perm) -> np.ndarray:
        """Array c with basis vector e_i sent to e_{c[i]} by g."""
        assert g.degree == self.n
        out = np.empty(self.dim, dtype=np.int64)
        for i, sub in enumerate(self._subsets):
            out[i] = self.indexer.rank([g(x) for x in sub])
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SubsetAmbient)
            and (self.n, self.r) == (other.n, other.r)
        )

    def __hash__(self):
        return hash(("subsets", self.n, self.r))


class TabloidAmbient:
    """Coordinates = tabloids (row-content set partitions) of a shape.

    Tabloids are stored as tuples of sorted row tuples and indexed
    lexicographically.
    """

    def __init__(self, shape: Partition):
        self.shape = shape
        self.n = shape.n
        tabs: list[tuple[tuple[int, ...], ...]] = []

        def rec(rows_left: tuple[int, ...], avail: tuple[int, ...], acc):
            if not rows_left:
                tabs.append(tuple(acc))
                return
            for row in itertools.combinations(avail, rows_left[0]):
                rest = tuple(x for x in avail if x not in row)
                rec(rows_left[1:], rest, acc + [row])

        rec(shape.parts, tuple(range(self.n)), [])
        tabs.sort()
        self._tabloids = tabs
        self._index = {t: i for i, t in enumerate(tabs)}
        self.dim = len(tabs)
        expected = factorial(self.n)
        for part in shape.parts:
            expected //= factorial(part)
        assert self.dim == expected

    def describe(self) -> str:
        return f"tabloids({','.join(map(str, self.shape.parts))})"

    def tabloid_index(self, rows: Sequence[Sequence[int]]) -> int:
        key = tuple(tuple(sorted(r)) for r in rows)
        return self._index[key]

    def tabloid(self, idx: int) -> tuple[tuple[int, ...], ...]:
        return self._tabloids[idx]

    def coord_map(self, g: Perm) -> np.ndarray:
        assert g.degree == self.n
        out = np.empty(self.dim, dtype=np.int64)
        for i, rows in enumerate(self._tabloids):
            out[i] = self._index[tuple(tuple(sorted(g(x) for x in row)) for row in rows)]
        return out

    def __eq__(self, other):
        return isinstance(other, TabloidAmbient) and self.shape == other.shape

    def __hash__(self):
        return hash(("tabloids", self.shape))


def permute_coords(cmap: np.ndarray, vec: np.ndarray) -> np.ndarray:
    out = np.zeros_like(vec)
    out[cmap] = vec
    return out


def standard_sn_perms(n: int) -> dict[str, Perm]:
    """Generator labels used by default on full S_n modules."""
    gens = {"s": Perm.from_cycles([(0, 1)], n)}
    if n >= 3:
        gens["c"] = Perm.from_cycles([tuple(range(n))], n)
    return gens


class RepModule:
    """Module given by generator matrices, optionally ambient-backed.

    Ambient-backed modules are subquotients num/den of a coordinate
    module on which permutations act by permuting coordinates; they can
    produce the matrix of any permutation.  Plain modules only know their
    generator matrices.
    """

    def __init__(
        self,
        dim: int,
        gens: dict[str, BitMatrix],
        label: str = "M",
        ambient=None,
        perms: Optional[dict[str, Perm]] = None,
        num: Optional[Subspace] = None,
        den: Optional[Subspace] = None,
    ):
        self.dim = dim
        self.gens = gens
        self.label = label
        self.ambient = ambient
        self.perms = perms
        self.num = num
        self.den = den
        self._coset_dense: Optional[np.ndarray] = None
        self._coset_pivots: Optional[list[int]] = None
        for name, mat in gens.items():
            assert mat.shape == (dim, dim), f"generator {name} has shape {mat.shape}"

    # -- construction ----------------------------------------------------

    @classmethod
    def from_ambient(
        cls,
        ambient,
        perms: dict[str, Perm],
        num: Optional[Subspace] = None,
        den: Optional[Subspace] = None,
        label: str = "M",
    ) -> "RepModule":
        if num is None:
            num = Subspace.full(ambient.dim)
        if den is None:
            den = Subspace.zero(ambient.dim)
        mod = cls(num.dim - den.dim, {}, label, ambient, perms, num, den)
        mod._prepare_coset()
        mod.gens = {name: mod.matrixize(g) for name, g in perms.items()}
        return mod

    def _prepare_coset(self):
        den_piv = set(self.den.pivots)
        rows = []
        pivots = []
        dense = self.num.basis.to_dense()
        for i, p in enumerate(self.num.pivots):
            if p not in den_piv:
                rows.append(dense[i])
                pivots.append(p)
        self._coset_dense = (
            np.vstack(rows) if rows else np.zeros((0, self.ambient.dim), dtype=np.uint8)
        )
        self._coset_pivots = pivots
        assert len(pivots) == self.dim

    def coords_of(self, ambient_vec: np.ndarray) -> np.ndarray:
        """Coordinates in this module of an ambient vector lying in num."""
        y = self.den.reduce(ambient_vec)
        coords = y[self._coset_pivots].copy()
        # Confirm membership: the residual must vanish.
        rest = y.copy()
        for c, row in zip(coords, self._coset_dense):
            if c:
                rest ^= row
        if rest.any():
            raise ValueError("vector is not in the module")
        return coords

    def ambient_rep(self, coords: np.ndarray) -> np.ndarray:
        out = np.zeros(self.ambient.dim, dtype=np.uint8)
        for c, row in zip(coords, self._coset_dense):
            if c:
                out ^= row
        return out

    def lift_rows(self, sub: Subspace) -> np.ndarray:
        """Dense ambient rows for a subspace given in module coordinates."""
        if sub.dim == 0:
            return np.zeros((0, self.ambient.dim), dtype=np.uint8)
        coords = sub.basis.to_dense()
        return (coords.astype(np.uint8) @ self._coset_dense.astype(np.uint8)) % 2

    def matrixize(self, g: Perm) -> BitMatrix:
        """Matrix of a permutation acting on this subquotient."""
        if self.ambient is None:
            raise ValueError(f"module {self.label} has no ambient provenance")
        cmap = self.ambient.coord_map(g)
        cols = np.zeros((self.dim, self.dim), dtype=np.uint8)
        for i in range(self.dim):
            moved = permute_coords(cmap, self._coset_dense[i])
            try:
                cols[:, i] = self.coords_of(moved)
            except ValueError:
                raise ValueError(
                    f"{self.label} is not invariant under the given permutation"
                ) from None
        return BitMatrix.from_dense(cols)

    def with_generators(self, perms: dict[str, Perm], label: Optional[str] = None) -> "RepModule":
        """Same subquotient, different acting generators (restriction)."""
        if self.ambient is None:
            raise ValueError("cannot re-generate a plain module")
        return RepModule.from_ambient(
            self.ambient, perms, self.num, self.den, label or self.label
        )

    # -- subquotients ------------------------------------------------------

    def submodule(self, sub: Subspace, label: Optional[str] = None) -> "RepModule":
        assert sub.ambient_dim == self.dim
        name = label or f"{self.label}.sub"
        if self.ambient is not None:
            lifted = Subspace.from_generators(
                BitMatrix.from_dense(self.lift_rows(sub))
            )
            num2 = subspace_sum(lifted, self.den)
            return RepModule.from_ambient(self.ambient, self.perms, num2, self.den, name)
        basis = sub.basis
        gens2 = {}
        for gname, mat in self.gens.items():
            cols = np.zeros((sub.dim, sub.dim), dtype=np.uint8)
            for i in range(sub.dim):
                img = mat.apply(basis.row_dense(i))
                red = sub.reduce(img)
                if red.any():
                    raise ValueError("subspace is not invariant")
                cols[:, i] = _coords_in_rref(sub, img)
            gens2[gname] = BitMatrix.from_dense(cols)
        return RepModule(sub.dim, gens2, name)

    def quotient(self, sub: Subspace, label: Optional[str] = None) -> "RepModule":
        assert sub.ambient_dim == self.dim
        name = label or f"{self.label}.quo"
        if self.ambient is not None:
            lifted = Subspace.from_generators(
                BitMatrix.from_dense(self.lift_rows(sub))
            )
            den2 = subspace_sum(lifted, self.den)
            return RepModule.from_ambient(self.ambient, self.perms, self.num, den2, name)
        # Plain path: coset representatives modulo sub.
        piv = set(sub.pivots)
        keep = [i for i in range(self.dim) if i not in piv]
        qdim = len(keep)
        gens2 = {}
        for gname, mat in self.gens.items():
            cols = np.zeros((qdim, qdim), dtype=np.uint8)
            for col, i in enumerate(keep):
                e = np.zeros(self.dim, dtype=np.uint8)
                e[i] = 1
                img = sub.reduce(mat.apply(e))
                cols[:, col] = img[keep]
            gens2[gname] = BitMatrix.from_dense(cols)
        return RepModule(qdim, gens2, name)

    def dual(self, label: Optional[str] = None) -> "RepModule":
        gens2 = {name: mat.transpose() for name, mat in self.gens.items()}
        return RepModule(self.dim, gens2, label or f"{self.label}*")

    def restrict_labels(self, labels: Sequence[str]) -> "RepModule":
        kept = {k: self.gens[k] for k in labels}
        mod = RepModule(
            self.dim, kept, self.label, self.ambient,
            {k: self.perms[k] for k in labels} if self.perms else None,
            self.num, self.den,
        )
        if self.ambient is not None:
            mod._coset_dense = self._coset_dense
            mod._coset_pivots = self._coset_pivots
        return mod

    def __repr__(self):
        return f"RepModule({self.label}, dim={self.dim})"


def _coords_in_rref(sub: Subspace, vec: np.ndarray) -> np.ndarray:
    """Coefficients of a vector against an RREF basis it belongs to."""
    coords = np.zeros(sub.dim, dtype=np.uint8)
    v = vec.copy()
    dense = sub.basis.to_dense()
    for i, p in enumerate(sub.pivots):
        if v[p]:
            coords[i] = 1
            v ^= dense[i]
    if v.any():
        raise ValueError("vector outside subspace")
    return coords


def perm_module(n: int, r: int, perms: Optional[dict[str, Perm]] = None) -> RepModule:
    """The full permutation module on r-subsets."""
    amb = SubsetAmbient(n, r)
    return RepModule.from_ambient(
        amb, perms or standard_sn_perms(n), label=f"M{r}(n={n})"
    )


# -- incidence maps ------------------------------------------------------


@dataclass(frozen=True)
class IncidenceMap:
    """Map sending an r-set to the sum of incident s-sets."""

    n: int
    r: int
    s: int
    matrix: BitMatrix  # shape C(n,s) x C(n,r)


def eta(n: int, r: int, s: int) -> IncidenceMap:
    if not (0 <= r <= n and 0 <= s <= n):
        raise ValueError(f"eta out of range: n={n}, r={r}, s={s}")
    src = SubsetIndexer(n, r)
    dst = SubsetIndexer(n, s)
    dense = np.zeros((dst.count, src.count), dtype=np.uint8)
    for j, sub in enumerate(src.all()):
        if s >= r:
            others = [x for x in range(n) if x not in sub]
            for extra in itertools.combinations(others, s - r):
                dense[dst.rank(sub + extra), j] = 1
        else:
            for inner in itertools.combinations(sub, s):
                dense[dst.rank(inner), j] = 1
    return IncidenceMap(n, r, s, BitMatrix.from_dense(dense))


def wilson_rank(n: int, r: int, s: int) -> int:
    """Closed-form GF(2) rank of the incidence map, valid for r <= min(s, n-s).

    The index i runs from 0; the constant term (i = 0, when C(s,r) is odd)
    is required for the formula to reproduce the ranks the elimination
    gives, e.g. rank eta(n,1,3) = n.
    """
    if not (0 <= r <= min(s, n - s)):
        raise ValueError(f"wilson_rank requires r <= min(s, n-s); got {(n, r, s)}")
    total = 0
    for i in range(0, r + 1):
        if comb(s - i, r - i) % 2 == 1:
            total += comb(n, i) - (comb(n, i - 1) if i >= 1 else 0)
    return total


# -- labeled submodules ---------------------------------------------------


@dataclass
class ModuleWithBasis:
    """A labeled subspace of an ambient coordinate module."""

    ambient: object
    basis: Subspace
    label: str

    @property
    def dim(self) -> int:
        return self.basis.dim

    def check_invariant(self, perms: Sequence[Perm]) -> bool:
        for g in perms:
            cmap = self.ambient.coord_map(g)
            for i in range(self.basis.dim):
                moved = permute_coords(cmap, self.basis.basis.row_dense(i))
                if not self.basis.contains(moved):
                    return False
        return True

    def module(self, perms: Optional[dict[str, Perm]] = None) -> RepModule:
        return RepModule.from_ambient(
            self.ambient,
            perms or standard_sn_perms(self.ambient.n),
            self.basis,
            None,
            self.label,
        )

    def report(self) -> str:
        return f"{self.label}: ambient {self.ambient.describe()}, dim {self.dim}"

    def basis_dump(self) -> np.ndarray:
        return self.basis.basis.to_dense()


def specht_two_row(n: int, r: int) -> ModuleWithBasis:
    """Intersection of the kernels of eta(r, t) for t < r, inside M_r."""
    if n < 2 * r:
        raise ValueError("need n >= 2r for a two-row shape")
    mats = [eta(n, r, t).matrix for t in range(r)]
    stacked = BitMatrix.vstack(mats) if mats else BitMatrix.zeros(0, comb(n, r))
    basis = stacked.nullspace()
    mwb = ModuleWithBasis(SubsetAmbient(n, r), basis, f"S{r}(n={n})")
    assert mwb.dim == comb(n, r) - (comb(n, r - 1) if r >= 1 else 0)
    assert mwb.check_invariant(list(standard_sn_perms(n).values()))
    return mwb


def special_vectors(n: int, r: int) -> dict:
    """The all-ones vector and the kernel of the map to the empty set."""
    amb = SubsetAmbient(n, r)
    t_r = np.ones(amb.dim, dtype=np.uint8)
    aug = eta(n, r, 0).matrix.nullspace()
    return {
        "T": t_r,
        "augmentation": ModuleWithBasis(amb, aug, f"M'{r}(n={n})"),
    }


# -- tableaux and Specht bases --------------------------------------------


def _validate_tableau(rows: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    t = tuple(tuple(r) for r in rows)
    flat = [x for row in t for x in row]
    if sorted(flat) != list(range(n)):
        raise ValueError(f"tableau entries must be 0..{n-1} exactly once")
    lens = [len(r) for r in t]
    if any(lens[i] < lens[i + 1] for i in range(len(lens) - 1)):
        raise ValueError("tableau shape is not a partition")
    return t


def polytabloid(rows: Sequence[Sequence[int]], ambient: TabloidAmbient) -> np.ndarray:
    """Sum over the column group of the tabloids of the permuted tableau.

    Over GF(2) all signs collapse to 1.
    """
    t = _validate_tableau(rows, ambient.n)
    if Partition([len(r) for r in t]) != ambient.shape:
        raise ValueError("tableau shape does not match the ambient")
    ncols = len(t[0]) if t else 0
    columns = []
    for j in range(ncols):
        col = [row[j] for row in t if len(row) > j]
        columns.append(col)
    vec = np.zeros(ambient.dim, dtype=np.uint8)
    for perm_combo in itertools.product(
        *[itertools.permutations(col) for col in columns]
    ):
        subst = {}
        for col, permuted in zip(columns, perm_combo):
            for a, b in zip(col, permuted):
                subst[a] = b
        new_rows = [[subst.get(x, x) for x in row] for row in t]
        vec[ambient.tabloid_index(new_rows)] ^= 1
    return vec


def standard_tableaux(shape: Partition) -> list[tuple[tuple[int, ...], ...]]:
    """Row- and column-increasing fillings with 0..n-1."""
    rows = [[] for _ in shape.parts]
    out = []

    def place(k: int):
        if k == shape.n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, part in enumerate(shape.parts):
            if len(rows[i]) < part and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                place(k + 1)
                rows[i].pop()

    place(0)
    return out


def specht_general(shape: Partition) -> ModuleWithBasis:
    """Span of the standard polytabloids inside the tabloid module."""
    amb = TabloidAmbient(shape)
    tabs = standard_tableaux(shape)
    rows = np.zeros((len(tabs), amb.dim), dtype=np.uint8)
    for i, t in enumerate(tabs):
        rows[i] = polytabloid(t, amb)
    basis = Subspace.from_generators(BitMatrix.from_dense(rows))
    # Standard polytabloids are independent over every field.
    assert basis.dim == len(tabs), "standard polytabloids failed to be independent"
    label = "S(" + ",".join(map(str, shape.parts)) + ")"
    mwb = ModuleWithBasis(amb, basis, label)
    assert mwb.check_invariant(list(standard_sn_perms(shape.n).values()))
    return mwb


def hook_length_dim(shape: Partition) -> int:
    """Integer oracle for the Specht dimension."""
    conj = [0] * (shape.parts[0] if shape.parts else 0)
    for part in shape.parts:
        for j in range(part):
            conj[j] += 1
    prod = 1
    for i, part in enumerate(shape.parts):
        for j in range(part):
            prod *= (part - j) + (conj[j] - i) - 1
    return factorial(shape.n) // prod


def gram_radical(basis: Subspace) -> Subspace:
    """Radical of the orthonormal-coordinate form restricted to a subspace."""
    b = basis.basis
    gram = b @ b.transpose()
    coeffs = gram.nullspace()
    if coeffs.dim == 0:
        return Subspace.zero(basis.ambient_dim)
    rows = (coeffs.basis.to_dense() @ b.to_dense()) % 2
    return Subspace.from_generators(BitMatrix.from_dense(rows.astype(np.uint8)))


def simple_head(shape: Partition, perms: Optional[dict[str, Perm]] = None) -> RepModule:
    """Quotient of the Specht module by the radical of the bilinear form.

    Two-row shapes are built inside the subset module; general shapes use
    the tabloid module.
    """
    if not shape.is_p_regular(2):
        raise ValueError(f"{shape!r} is not 2-regular")
    n = shape.n
    perms = perms or standard_sn_perms(n)
    label = "D(" + ",".join(map(str, shape.parts)) + ")"
    if len(shape) <= 2:
        r = shape[1]
        mwb = specht_two_row(n, r)
        amb = mwb.ambient
        basis = mwb.basis
    else:
        mwb = specht_general(shape)
        amb = mwb.ambient
        basis = mwb.basis
    rad = gram_radical(basis)
    mod = RepModule.from_ambient(amb, perms, basis, rad, label)
    assert mod.dim > 0
    return mod


def two_row_subset_coordinates(shape: Partition) -> np.ndarray:
    """Index map from two-row tabloid coordinates to subset coordinates.

    A two-row tabloid is determined by its second row, an r-subset; this
    returns pi with subset_index = pi[tabloid_index].
    """
    if len(shape) != 2:
        raise ValueError("two-row shapes only")
    amb = TabloidAmbient(shape)
    idx = SubsetIndexer(shape.n, shape.parts[1])
    out = np.empty(amb.dim, dtype=np.int64)
    for i in range(amb.dim):
        out[i] = idx.rank(amb.tabloid(i)[1])
    return out


# -- the conjugated triple-sum element ------------------------------------


def paired_conjugation_sum_terms() -> list[Perm]:
    """Odd-multiplicity terms of sum_{g,sigma} sigma g sigma^-1 in S_6.

    g runs over the symmetric group on {1,2,3}, sigma over the group
    generated by the three commuting transpositions (1 4), (2 5), (3 6);
    over GF(2) signs vanish and coefficients reduce mod 2.
    """
    deg = 6
    gs = [
        Perm.from_cycles([c], deg)
        for c in [(), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    ] + [Perm.from_cycles([(0, 2, 1)], deg)]
    swaps = [(0, 3), (1, 4), (2, 5)]
    sigmas = []
    for mask in range(8):
        cycles = [swaps[i] for i in range(3) if mask >> i & 1]
        sigmas.append(Perm.from_cycles(cycles, deg))
    counts: dict[tuple, int] = {}
    for sigma in sigmas:
        sinv = sigma.inverse()
        for g in gs:
            term = (sigma * g * sinv).images
            counts[term] = counts.get(term, 0) + 1
    return [Perm(t) for t, c in sorted(counts.items()) if c % 2 == 1]


def apply_perm_sum(terms: Sequence[Perm], ambient, vec: np.ndarray) -> np.ndarray:
    out = np.zeros_like(vec)
    for g in terms:
        out ^= permute_coords(ambient.coord_map(g), vec)
    return out


def staircase_x_action() -> dict:
    """Evaluate the conjugated triple-sum element on the (3,2,1) Specht module.

    Returns the coefficient of the designated target tabloid in the image
    of the designated polytabloid, and whether the element kills the
    whole module.
    """
    shape = Partition((3, 2, 1))
    amb = TabloidAmbient(shape)
    terms = paired_conjugation_sum_terms()
    # 1-indexed rows {1,4,6},{2,5},{3} and {1,2,4},{3,5},{6}.
    t_rows = ((0, 3, 5), (1, 4), (2,))
    s_rows = ((0, 1, 3), (2, 4), (5,))
    e_t = polytabloid(t_rows, amb)
    image = apply_perm_sum(terms, amb, e_t)
    coeff = int(image[amb.tabloid_index(s_rows)])
    spec = specht_general(shape)
    annihilates = True
    for i in range(spec.dim):
        if apply_perm_sum(terms, amb, spec.basis.basis.row_dense(i)).any():
            annihilates = False
            break
    return {
        "coefficient": coeff,
        "module_killed": annihilates,
        "image_nonzero": bool(image.any()),
    }
