"""Integer-partition combinatorics: regularity, rim strips, symbol involution.

The central object is the two-row symbol built by repeatedly stripping the
p-rim of a Young diagram.  Columns record (cells stripped, rows present).
The sign-twist involution on p-regular partitions is computed by replacing
each row count r_i with h_i - r_i + eps_i (eps_i = 0 iff p divides h_i)
and rebuilding the partition from the transformed symbol.

The p-rim is the subset of the border (cells (i,j) with (i+1,j+1) outside
the diagram) split into segments of at most p cells: the first segment
starts at the rightmost cell of row 1; after a full segment ends in row t,
the next segment starts at the rightmost border cell of row t+1; only the
final segment may be shorter than p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence


class Partition:
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ("parts", "n")

    def __init__(self, parts: Sequence[int]):
        ps = tuple(int(x) for x in parts if int(x) != 0)
        if any(x < 0 for x in ps):
            raise ValueError(f"negative part in {parts}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        self.parts = ps
        self.n = sum(ps)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        # Convenient 0-indexed access with zero padding past the last row.
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def is_p_regular(self, p: int) -> bool:
        """No part repeated p or more times."""
        if p < 2:
            return True
        run = 0
        prev = None
        for x in self.parts:
            run = run + 1 if x == prev else 1
            if run >= p:
                return False
            prev = x
        return True


def format_partition(lam: Partition) -> str:
    return ",".join(str(x) for x in lam.parts)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return Partition(())
    return Partition([int(tok) for tok in text.split(",")])


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not lam.parts:
        return lam
    cols = [0] * lam.parts[0]
    for part in lam.parts:
        for j in range(part):
            cols[j] += 1
    return Partition(cols)


def enumerate_partitions(n: int, p: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n in reverse-lexicographic order.

    With p given (and nonzero), only p-regular partitions are produced.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    limit = p if p else 0

    def rec(remaining: int, maxpart: int, run_val: int, run_len: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            new_run = run_len + 1 if first == run_val else 1
            if limit and new_run >= limit:
                continue
            for tail in rec(remaining - first, first, first, new_run):
                yield (first,) + tail

    for parts in rec(n, n if n else 1, -1, 0):
        yield Partition(parts)


@dataclass(frozen=True)
class MullineuxSymbol:
    """Columns (h_i, r_i) of the repeated rim-strip record, plus the prime."""

    columns: tuple[tuple[int, int], ...]
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("characteristic must be at least 2")
        for h, r in self.columns:
            if h <= 0 or r <= 0:
                raise ValueError(f"degenerate symbol column ({h},{r})")

    @property
    def n(self) -> int:
        return sum(h for h, _ in self.columns)

    def __str__(self) -> str:
        return ",".join(f"{h}/{r}" for h, r in self.columns)


def parse_symbol(text: str, p: int) -> MullineuxSymbol:
    cols = []
    for tok in text.strip().split(","):
        h, r = tok.split("/")
        cols.append((int(h), int(r)))
    return MullineuxSymbol(tuple(cols), p)


def _strip_counts(parts: Sequence[int], p: int) -> list[int]:
    """Cells the p-rim removes from each row (suffix of the row)."""
    r = len(parts)
    removed = [0] * r
    i = 0
    quota = p
    while i < r:
        low = max(parts[i + 1], 1) if i + 1 < r else 1
        avail = parts[i] - low + 1
        take = min(quota, avail)
        removed[i] = take
        if take == quota:
            quota = p  # segment complete, next one starts a row down
        else:
            quota -= take  # row border exhausted mid-segment
        i += 1
    return removed


def p_rim_strip(lam: Partition, p: int) -> tuple[int, int, Partition]:
    """One rim strip: (cells removed, row count, remaining partition)."""
    if not lam.parts:
        raise ValueError("cannot strip the empty partition")
    if p < 2:
        raise ValueError("characteristic must be at least 2")
    removed = _strip_counts(lam.parts, p)
    rest = [a - b for a, b in zip(lam.parts, removed)]
    return sum(removed), len(lam.parts), Partition(rest)


def mullineux_symbol(lam: Partition, p: int) -> MullineuxSymbol:
    if not lam.is_p_regular(p):
        raise ValueError(f"{lam!r} is not {p}-regular")
    cols = []
    cur = lam
    while cur.parts:
        h, r, cur = p_rim_strip(cur, p)
        cols.append((h, r))
    return MullineuxSymbol(tuple(cols), p)


def _reattach(mu: Partition, h: int, r: int, p: int) -> list[Partition]:
    """All partitions with r rows whose rim strip removes h cells leaving mu.

    Candidates are generated from the segment block structure (each strip
    segment occupies a run of consecutive rows, every touched row loses a
    suffix) and confirmed by re-running the forward strip.
    """
    if len(mu) > r or h < r:
        return []
    nseg, last = divmod(h, p)
    if last == 0:
        last = p
    else:
        nseg += 1
    seg_len = [p] * (nseg - 1) + [last]

    results = []

    def place(row: int, seg: int, nu: list[int]):
        if seg == len(seg_len):
            if row == r:
                cand = Partition(nu)
                got = p_rim_strip(cand, p)
                if got == (h, r, mu):
                    results.append(cand)
            return
        length = seg_len[seg]
        for g in range(1, min(length, r - row) + 1):
            rows = list(range(row, row + g))
            # Within a segment every row except the first is entered from
            # above, which pins its full width.
            nu_block = [0] * g
            for k in range(1, g):
                nu_block[k] = mu[rows[k] - 1] + 1
            tail = sum(nu_block[k] - mu[rows[k]] for k in range(1, g))
            nu_block[0] = mu[rows[0]] + (length - tail)
            if any(c <= mu[rows[k]] for k, c in enumerate(nu_block)):
                continue
            prev = nu[-1] if nu else None
            if prev is not None and nu_block[0] > prev:
                continue
            if any(nu_block[k] > nu_block[k - 1] for k in range(1, g)):
                continue
            place(row + g, seg + 1, nu + nu_block)

    place(0, 0, [])
    return sorted(set(results), key=lambda q: q.parts)


def partition_from_symbol(sym: MullineuxSymbol) -> Partition:
    """Invert the symbol; raises if no or several partitions realize it."""
    cur = Partition(())
    for h, r in reversed(sym.columns):
        cands = _reattach(cur, h, r, sym.p)
        if not cands:
            raise ValueError(f"symbol {sym} is not realizable (column ({h},{r}))")
        if len(cands) > 1:
            raise ValueError(f"symbol {sym} is ambiguous at column ({h},{r}): {cands}")
        cur = cands[0]
    return cur


def mullineux(lam: Partition, p: int) -> Partition:
    """Sign-twist involution on p-regular partitions via the symbol."""
    sym = mullineux_symbol(lam, p)
    twisted = tuple(
        (h, h - r + (0 if h % p == 0 else 1)) for h, r in sym.columns
    )
    out = partition_from_symbol(MullineuxSymbol(twisted, p))
    if out.n != lam.n or not out.is_p_regular(p):
        raise AssertionError(f"involution produced invalid image {out!r} for {lam!r}")
    return out


def basic_spin(n: int) -> Partition:
    """The two-row partition labelling the smallest faithful 2-modular module."""
    if n < 2:
        raise ValueError("need n >= 2")
    k = n // 2
    return Partition((k + 1, k - 1)) if n % 2 == 0 else Partition((k + 1, k))


def basic_spin_dim(n: int) -> int:
    if n < 2:
        raise ValueError("need n >= 2")
    return 2 ** ((n - 1) // 2)


def splits_necessary_p2(lam: Partition) -> bool:
    """Necessary condition at p=2 for the labelled simple to split over A_n.

    True iff the partition has at least two parts and the top two parts
    differ by 1 or 2.
    """
    if not lam.is_p_regular(2):
        raise ValueError(f"{lam!r} is not 2-regular")
    return len(lam) >= 2 and lam[0] - lam[1] in (1, 2)


def ext2_irreducible_over_An(lam: Partition, p: int) -> bool:
    """First big-first-row criterion: irreducible over A_n when it holds.

    Meaningful for p-regular input; the threshold itself is evaluated as is.
    """
    if p % 2 == 0:
        raise ValueError("criterion requires odd characteristic")
    return 2 * lam[0] >= lam.n + p + 2


def ext3_irreducible_over_An(lam: Partition, p: int) -> bool:
    """Second criterion, on the chain of row differences divisible by p."""
    if p % 2 == 0:
        raise ValueError("criterion requires odd characteristic")
    n = lam.n
    total = 0
    prev_diff = None
    s = 0
    while True:
        diff = lam[s] - lam[s + 1]
        if diff < p or (prev_diff is not None and diff > prev_diff):
            return False
        total += diff // p
        if total * (2 * p - 1) > n:
            return True
        prev_diff = diff
        s += 1
        if s >= len(lam):
            return False


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """Number of partitions of n (Euler recurrence)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total
