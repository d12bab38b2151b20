"""Permutations, conjugacy classes, and small-group brute-force utilities.

Permutations are 0-indexed internally; the cycle-string interface is
1-indexed.  Conjugacy class data feeds orbit counting via class sums, and
the closure / stabilizer helpers support explicit point-stabilizer
computations at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Iterable, Sequence

from .partitions import Partition


class GroupTooLargeError(RuntimeError):
    """Raised when a closure exceeds its element cap."""

    def __init__(self, reached: int, cap: int):
        super().__init__(f"group closure exceeded cap: reached {reached} > {cap}")
        self.reached = reached
        self.cap = cap


class Perm:
    """Permutation of {0, ..., deg-1} stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError("images do not form a bijection")
        self.images = imgs

    @classmethod
    def identity(cls, deg: int) -> "Perm":
        return cls(tuple(range(deg)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], deg: int) -> "Perm":
        """Build from 0-indexed cycles."""
        imgs = list(range(deg))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                imgs[x] = cyc[(i + 1) % len(cyc)]
        return cls(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        # (g*h)(i) = g(h(i))
        gi = self.images
        return Perm(tuple(gi[j] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)})"

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition including fixed points, ordered by minima."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Partition:
        return Partition(sorted((len(c) for c in self.cycles()), reverse=True))

    def sign(self) -> int:
        odd_swaps = sum(len(c) - 1 for c in self.cycles())
        return -1 if odd_swaps % 2 else 1


def format_cycles(g: Perm) -> str:
    """Cycle notation, 1-indexed, fixed points omitted."""
    parts = [
        "(" + " ".join(str(x + 1) for x in c) + ")" for c in g.cycles() if len(c) > 1
    ]
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, deg: int) -> Perm:
    text = text.strip()
    if text in ("", "()"):
        return Perm.identity(deg)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle string: {text!r}")
    cycles = []
    for chunk in text[1:-1].split(")("):
        pts = [int(tok) - 1 for tok in chunk.replace(",", " ").split()]
        if any(x < 0 or x >= deg for x in pts):
            raise ValueError(f"point out of range in {text!r}")
        cycles.append(pts)
    return Perm.from_cycles(cycles, deg)


def symmetric_gens(m: int) -> list[Perm]:
    """(1,2) and the long cycle; degenerate cases handled."""
    if m <= 1:
        return [Perm.identity(max(m, 1))]
    gens = [Perm.from_cycles([(0, 1)], m)]
    if m >= 3:
        gens.append(Perm.from_cycles([tuple(range(m))], m))
    elif m == 2:
        pass
    return gens


def alternating_gens(m: int) -> list[Perm]:
    """A 3-cycle plus an even long cycle."""
    if m < 3:
        return [Perm.identity(max(m, 1))]
    gens = [Perm.from_cycles([(0, 1, 2)], m)]
    if m >= 4:
        if m % 2 == 1:
            gens.append(Perm.from_cycles([tuple(range(m))], m))
        else:
            gens.append(Perm.from_cycles([tuple(range(1, m))], m))
    return gens


@dataclass(frozen=True)
class ConjClassInfo:
    cycle_type: Partition
    size: int
    parity: str  # "even" | "odd"
    splits_in_Am: bool

    def representative(self) -> Perm:
        """Cycles laid out left to right in decreasing length."""
        cycles = []
        at = 0
        for length in self.cycle_type.parts:
            cycles.append(tuple(range(at, at + length)))
            at += length
        return Perm.from_cycles(cycles, self.cycle_type.n)


def centralizer_order(lam: Partition) -> int:
    """z_lambda = prod j^{a_j} a_j! over multiplicities a_j of part size j."""
    mult: dict[int, int] = {}
    for part in lam.parts:
        mult[part] = mult.get(part, 0) + 1
    z = 1
    for j, a in mult.items():
        z *= j**a * factorial(a)
    return z


def _parity_of_type(lam: Partition) -> str:
    return "even" if (lam.n - len(lam)) % 2 == 0 else "odd"


def conj_classes(m: int, group: str = "S") -> list[ConjClassInfo]:
    """Conjugacy class data for S_m or A_m.

    For A_m only even types appear; a class that splits into two A_m
    classes is listed once with the halved size and the splits flag set
    (downstream class sums count it twice).
    """
    from .partitions import enumerate_partitions

    if m < 1:
        raise ValueError("m must be positive")
    if group not in ("S", "A"):
        raise ValueError("group must be 'S' or 'A'")
    out = []
    for lam in enumerate_partitions(m):
        parity = _parity_of_type(lam)
        size = factorial(m) // centralizer_order(lam)
        if group == "S":
            out.append(ConjClassInfo(lam, size, parity, False))
            continue
        if parity != "even":
            continue
        splits = len(set(lam.parts)) == len(lam.parts) and all(
            x % 2 == 1 for x in lam.parts
        )
        out.append(ConjClassInfo(lam, size // 2 if splits else size, parity, splits))
    return out


def fixed_r_subsets(cycle_type: Partition, r: int) -> int:
    """Subsets of size r fixed setwise: coefficient of x^r in prod(1+x^len)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    coeffs = [0] * (r + 1)
    coeffs[0] = 1
    for length in cycle_type.parts:
        if length <= r:
            for d in range(r, length - 1, -1):
                coeffs[d] += coeffs[d - length]
    return coeffs[r]


DEFAULT_CLOSURE_CAP = 10**6


def enumerate_group(gens: Sequence[Perm], cap: int = DEFAULT_CLOSURE_CAP) -> list[Perm]:
    """Breadth-first closure of the generated permutation group."""
    if not gens:
        return []
    deg = gens[0].degree
    gen_imgs = [g.images for g in gens]
    seen = {tuple(range(deg))}
    frontier = [tuple(range(deg))]
    while frontier:
        new = []
        for h in frontier:
            for gi in gen_imgs:
                prod = tuple(gi[j] for j in h)
                if prod not in seen:
                    seen.add(prod)
                    if len(seen) > cap:
                        raise GroupTooLargeError(len(seen), cap)
                    new.append(prod)
        frontier = new
    return [Perm(t) for t in sorted(seen)]


def _closure_tuples(gen_tuples: list[tuple], cap: int) -> set[tuple]:
    ident = tuple(range(len(gen_tuples[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for h in frontier:
            for gi in gen_tuples:
                prod = tuple(gi[j] for j in h)
                if prod not in seen:
                    seen.add(prod)
                    if len(seen) > cap:
                        raise GroupTooLargeError(len(seen), cap)
                    new.append(prod)
        frontier = new
    return seen


def two_abelianization_dim(elements: Sequence[Perm], cap: int = DEFAULT_CLOSURE_CAP) -> int:
    """dim over GF(2) of Hom(G, F_2) for the listed group elements.

    Computed as log2 of the index of the subgroup generated by all squares
    (which contains every commutator, since [x,y] = x^-2 (xy^-1)^2 y^2).
    """
    if not elements:
        raise ValueError("empty element list")
    order = len(elements)
    squares: list[tuple] = []
    seen_sq = set()
    for g in elements:
        sq = tuple(g.images[j] for j in g.images)
        if sq not in seen_sq:
            seen_sq.add(sq)
            squares.append(sq)
    ident = tuple(range(elements[0].degree))
    # Close a small seed first, then audit against the full square set.
    seed = squares[: min(len(squares), 24)]
    sub = _closure_tuples(seed, cap) if seed else {ident}
    for sq in squares:
        if sq not in sub:
            seed.append(sq)
            sub = _closure_tuples(seed, cap)
    index = order // len(sub)
    if len(sub) * index != order or index & (index - 1):
        raise AssertionError(
            f"square-subgroup index {order}/{len(sub)} is not a power of two"
        )
    return index.bit_length() - 1


def point_stabilizer_gens(
    gens: Sequence[Perm],
    point,
    act: Callable[[Perm, object], object],
) -> tuple[list[Perm], int]:
    """Schreier generators of the stabilizer of a point, plus the orbit size.

    `act` evaluates the group action on whatever object type `point` is.
    """
    transversal = {point: Perm.identity(gens[0].degree)}
    frontier = [point]
    while frontier:
        new = []
        for pt in frontier:
            u = transversal[pt]
            for g in gens:
                img = act(g, pt)
                if img not in transversal:
                    transversal[img] = g * u
                    new.append(img)
        frontier = new
    stab: list[Perm] = []
    seen = set()
    for pt, u in transversal.items():
        for g in gens:
            img = act(g, pt)
            s = transversal[img].inverse() * g * u
            if not s.is_identity() and s.images not in seen:
                seen.add(s.images)
                stab.append(s)
    return stab, len(transversal)


def subsets_orbit_count_burnside(m: int, r: int, group: str = "S") -> int:
    """Orbits of S_m or A_m on r-subsets of {1..m} by class summation."""
    total = 0
    order = factorial(m) if group == "S" else factorial(m) // 2
    for cls in conj_classes(m, group):
        weight = cls.size * (2 if cls.splits_in_Am else 1)
        total += weight * fixed_r_subsets(cls.cycle_type, r)
    assert total % order == 0
    return total // order


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
