"""Orbit statistics for subset and block-partition actions of A_m / S_m.

f_r counts orbits on r-subsets of the permuted domain, computed exactly by
class sums (split alternating classes contribute twice with one
representative, since the induced cycle type only depends on the type
downstairs).  Direct orbit enumeration cross-checks the class sums
whenever the subset space fits under the configured caps.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Optional, Sequence

import numpy as np

from .partitions import Partition
from .symgrp import (
    Perm,
    alternating_gens,
    conj_classes,
    enumerate_group,
    fixed_r_subsets,
    point_stabilizer_gens,
    symmetric_gens,
    two_abelianization_dim,
)

DEFAULT_PAIR_CAP = 10**6
DEFAULT_TRIPLE_CAP = 10**7


def triple_cap() -> int:
    return int(os.environ.get("WORKBENCH_CAP_TRIPLES", DEFAULT_TRIPLE_CAP))


@dataclass(frozen=True)
class EmbeddingSpec:
    """Subset or block-partition action of A_m or S_m."""

    kind: str  # "ksubsets" | "blocks"
    group: str  # "alt" | "sym"
    m: int
    k: int = 0
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.group not in ("alt", "sym"):
            raise ValueError(f"bad group {self.group!r}")
        if self.kind == "ksubsets":
            if not 2 <= self.k < self.m / 2:
                raise ValueError(f"ksubsets needs 2 <= k < m/2, got k={self.k}, m={self.m}")
        elif self.kind == "blocks":
            if self.a < 2 or self.b < 2 or self.a * self.b != self.m:
                raise ValueError(f"blocks needs a,b >= 2 and ab = m, got {self}")
        else:
            raise ValueError(f"bad kind {self.kind!r}")

    def __str__(self):
        if self.kind == "ksubsets":
            return f"ksubsets:m={self.m},k={self.k},group={self.group}"
        return f"blocks:a={self.a},b={self.b},group={self.group}"


def parse_spec(text: str) -> EmbeddingSpec:
    kind, _, rest = text.strip().partition(":")
    kv = dict(item.split("=") for item in rest.split(","))
    group = kv.get("group", "alt")
    if kind == "ksubsets":
        m, k = int(kv["m"]), int(kv["k"])
        return EmbeddingSpec("ksubsets", group, m, k=k)
    if kind == "blocks":
        a, b = int(kv["a"]), int(kv["b"])
        return EmbeddingSpec("blocks", group, a * b, a=a, b=b)
    raise ValueError(f"unknown spec kind {kind!r}")


def omega_size(spec: EmbeddingSpec) -> int:
    if spec.kind == "ksubsets":
        return comb(spec.m, spec.k)
    return factorial(spec.m) // (factorial(spec.a) ** spec.b * factorial(spec.b))


def _block_partitions(points: tuple[int, ...], a: int):
    if not points:
        yield ()
        return
    first = points[0]
    rest = points[1:]
    for combo in itertools.combinations(rest, a - 1):
        block = (first,) + combo
        left = tuple(x for x in rest if x not in combo)
        for tail in _block_partitions(left, a):
            yield (block,) + tail


class OmegaAction:
    """Canonical point list for a spec, with induced permutations."""

    def __init__(self, spec: EmbeddingSpec):
        self.spec = spec
        if spec.kind == "ksubsets":
            self.points = list(itertools.combinations(range(spec.m), spec.k))
        else:
            self.points = sorted(_block_partitions(tuple(range(spec.m)), spec.a))
        self.index = {pt: i for i, pt in enumerate(self.points)}
        self.n = len(self.points)
        assert self.n == omega_size(spec)

    def apply_point(self, g: Perm, pt):
        if self.spec.kind == "ksubsets":
            return tuple(sorted(g(x) for x in pt))
        return tuple(sorted(tuple(sorted(g(x) for x in block)) for block in pt))

    def induced_images(self, g: Perm) -> np.ndarray:
        out = np.empty(self.n, dtype=np.int64)
        for i, pt in enumerate(self.points):
            out[i] = self.index[self.apply_point(g, pt)]
        return out

    def induced_perm(self, g: Perm) -> Perm:
        return Perm(tuple(int(x) for x in self.induced_images(g)))

    def induced_cycle_type(self, g: Perm) -> Partition:
        img = self.induced_images(g)
        seen = np.zeros(self.n, dtype=bool)
        lens = []
        for start in range(self.n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = int(img[j])
                length += 1
            lens.append(length)
        return Partition(sorted(lens, reverse=True))

    def domain_gens(self) -> list[Perm]:
        if self.spec.group == "alt":
            return alternating_gens(self.spec.m)
        return symmetric_gens(self.spec.m)

    def induced_gen_images(self) -> list[np.ndarray]:
        return [self.induced_images(g) for g in self.domain_gens()]


def induced_perm(g: Perm, spec: EmbeddingSpec) -> Perm:
    return OmegaAction(spec).induced_perm(g)


# -- orbit counting on r-subsets of the permuted domain ---------------------


def _all_subsets_colex(n: int, r: int) -> np.ndarray:
    """(C(n,r), r) array of subsets, rows in colex order."""
    subs = np.array(list(itertools.combinations(range(n), r)), dtype=np.int64)
    if len(subs) == 0:
        return subs.reshape(0, r)
    keys = np.zeros(len(subs), dtype=np.int64)
    for i in range(r):
        keys += np.array([comb(int(x), i + 1) for x in subs[:, i]], dtype=np.int64)
    order = np.argsort(keys, kind="stable")
    return subs[order]


def _colex_rank_rows(rows: np.ndarray, comb_tab: np.ndarray) -> np.ndarray:
    r = rows.shape[1]
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for i in range(r):
        out += comb_tab[rows[:, i], i + 1]
    return out


def subset_orbit_labels(
    gen_images: Sequence[np.ndarray], n: int, r: int, cap: Optional[int] = None
) -> Optional[np.ndarray]:
    """Orbit id per r-subset under the group generated by the images.

    Returns None when C(n,r) exceeds the cap.
    """
    total = comb(n, r)
    if cap is not None and total > cap:
        return None
    subs = _all_subsets_colex(n, r)
    comb_tab = np.zeros((n + 1, r + 2), dtype=np.int64)
    for x in range(n + 1):
        for i in range(r + 2):
            comb_tab[x, i] = comb(x, i) if x >= i else 0
    gen_ranks = []
    for img in gen_images:
        moved = np.sort(np.asarray(img)[subs], axis=1)
        gen_ranks.append(_colex_rank_rows(moved, comb_tab))
    labels = np.full(total, -1, dtype=np.int64)
    orbit = 0
    scan = 0
    while True:
        while scan < total and labels[scan] >= 0:
            scan += 1
        if scan >= total:
            break
        frontier = np.array([scan], dtype=np.int64)
        labels[scan] = orbit
        while frontier.size:
            nxt = np.concatenate([g[frontier] for g in gen_ranks])
            nxt = np.unique(nxt)
            nxt = nxt[labels[nxt] < 0]
            labels[nxt] = orbit
            frontier = nxt
        orbit += 1
    return labels


def subset_orbit_count(
    gen_images: Sequence[np.ndarray], n: int, r: int, cap: Optional[int] = None
) -> Optional[int]:
    labels = subset_orbit_labels(gen_images, n, r, cap)
    if labels is None:
        return None
    return int(labels.max()) + 1 if labels.size else 0


# -- class-sum statistics ----------------------------------------------------


@dataclass
class ActionStats:
    n: int
    f1: int
    f2: int
    f3: int
    e2: int
    e3: int
    method: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "f1": self.f1,
            "f2": self.f2,
            "f3": self.f3,
            "e2": self.e2,
            "e3": self.e3,
            "method": self.method,
        }


def burnside_frs(spec: EmbeddingSpec, rs: Sequence[int]) -> dict[int, int]:
    """Exact orbit counts on r-subsets of the point set by class summation."""
    action = OmegaAction(spec)
    group = "A" if spec.group == "alt" else "S"
    order = factorial(spec.m) // (2 if group == "A" else 1)
    totals = {r: 0 for r in rs}
    for cls in conj_classes(spec.m, group):
        ct = action.induced_cycle_type(cls.representative())
        weight = cls.size * (2 if cls.splits_in_Am else 1)
        for r in rs:
            totals[r] += weight * fixed_r_subsets(ct, r)
    out = {}
    for r in rs:
        assert totals[r] % order == 0
        out[r] = totals[r] // order
    return out


def stats(
    spec: EmbeddingSpec,
    pair_cap: int = DEFAULT_PAIR_CAP,
    tri_cap: Optional[int] = None,
) -> ActionStats:
    tri_cap = triple_cap() if tri_cap is None else tri_cap
    frs = burnside_frs(spec, (1, 2, 3))
    method = "burnside"
    action = OmegaAction(spec)
    if comb(action.n, 2) <= pair_cap:
        imgs = action.induced_gen_images()
        f2_enum = subset_orbit_count(imgs, action.n, 2, pair_cap)
        assert f2_enum == frs[2], f"class sums disagree with enumeration: {spec}"
        method = "burnside+enumeration"
        if comb(action.n, 3) <= tri_cap:
            f3_enum = subset_orbit_count(imgs, action.n, 3, tri_cap)
            assert f3_enum == frs[3], f"triple enumeration mismatch: {spec}"
    return ActionStats(
        action.n,
        frs[1],
        frs[2],
        frs[3],
        frs[2] - frs[1],
        frs[3] - frs[2],
        method,
    )


def e3_gap_symmetric_blocks(a: int, s: int) -> int:
    """f_3 - f_2 for the full symmetric group on partitions into s a-blocks."""
    if a < 2 or s < 2:
        raise ValueError("need a, s >= 2")
    spec = EmbeddingSpec("blocks", "sym", a * s, a=a, b=s)
    frs = burnside_frs(spec, (2, 3))
    return frs[3] - frs[2]


# -- the h bound --------------------------------------------------------------


@dataclass(frozen=True)
class HBound:
    dim_h1_m1: int
    h_max: int


def h_bound(spec: EmbeddingSpec) -> HBound:
    """First-cohomology dimension of the point stabilizer, by case formula.

    2 exactly for the halved-set action (two blocks, 4 | m), else 1; the h
    bound adds one for the second cohomology of the alternating group.
    """
    if spec.group != "alt" or spec.m < 5:
        raise ValueError("h bound applies to alternating groups, m >= 5")
    if spec.kind == "blocks" and spec.b == 2 and spec.m % 4 == 0:
        dim = 2
    else:
        dim = 1
    return HBound(dim, dim + 1)


def stabilizer_two_abelianization(spec: EmbeddingSpec, cap: int = 10**6) -> int:
    """Brute-force cross-check of the h-bound constant.

    Schreier generators of a point stabilizer, full closure, then the
    index of the subgroup generated by squares.
    """
    action = OmegaAction(spec)
    gens = action.domain_gens()
    stab_gens, orbit = point_stabilizer_gens(
        gens, action.points[0], action.apply_point
    )
    assert orbit == action.n, "domain generators are not transitive on the points"
    elements = enumerate_group(stab_gens, cap)
    return two_abelianization_dim(elements, cap)


# -- parity witness and the reduction certificate -----------------------------


@dataclass
class ParityWitness:
    orbit_index: int
    size: int
    example: tuple[int, int]


def specht2_parity_witness(
    gen_images: Sequence[np.ndarray],
    n: int,
    pair_cap: int = DEFAULT_PAIR_CAP,
    require_even: bool = True,
) -> Optional[ParityWitness]:
    """An orbit on 2-subsets of even size and even degree at every point.

    The sum over such an orbit is orthogonal to the all-pairs vector and
    to every image of a point under the point-to-pairs incidence map, so
    it is a nonzero fixed vector in the two-row Specht submodule.  Absence
    of a witness is not a disproof.  The orthogonality argument does not
    need an even degree; the flag only enforces the caller contract of
    the even-degree reduction setting.
    """
    if require_even and n % 2:
        raise ValueError("parity witness requires even degree")
    if comb(n, 2) > pair_cap:
        return None
    labels = subset_orbit_labels(gen_images, n, 2, pair_cap)
    pairs = _all_subsets_colex(n, 2)
    for orb in range(int(labels.max()) + 1):
        members = pairs[labels == orb]
        if len(members) % 2:
            continue
        degrees = np.bincount(members.reshape(-1), minlength=n)
        if (degrees % 2 == 0).all():
            return ParityWitness(orb, len(members), tuple(int(x) for x in members[0]))
    return None


@dataclass
class CertificateVerdict:
    satisfied: Optional[bool]
    f1: int
    f2: int
    f3: int
    e3: int
    h_max: int
    checks: dict
    notes: list[str]

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "f1": self.f1,
            "f2": self.f2,
            "f3": self.f3,
            "e3": self.e3,
            "h_max": self.h_max,
            "checks": self.checks,
            "notes": list(self.notes),
        }


def _certificate_from_numbers(
    n, f1, f2, f3, h_max, witness_fn: Callable[[], Optional[ParityWitness]], o2_ok: bool, notes
) -> CertificateVerdict:
    checks: dict = {}
    e3 = f3 - f2
    checks["transitive"] = f1 == 1
    checks["e3_at_least_hmax_plus_1"] = e3 >= h_max + 1
    checks["o2_equals_group"] = o2_ok
    if f2 >= 3:
        checks["f2_at_least_3"] = True
        specht_fixed = True
    else:
        checks["f2_at_least_3"] = False
        wit = witness_fn()
        specht_fixed = wit is not None
        checks["parity_witness"] = None if wit is None else wit.size
    checks["specht2_fixed_or_f2"] = bool(checks["f2_at_least_3"] or specht_fixed)
    hard = [checks["transitive"], checks["e3_at_least_hmax_plus_1"], checks["o2_equals_group"]]
    if all(hard) and checks["specht2_fixed_or_f2"]:
        verdict = True
    elif not all(hard):
        verdict = False
    else:
        verdict = None  # the soft branch could not be decided
        notes.append("pair space too large for the witness search")
    return CertificateVerdict(verdict, f1, f2, f3, f3 - f2, h_max, checks, notes)


def reduction_certificate(
    spec: EmbeddingSpec,
    assume_o2_equal: Optional[bool] = None,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> CertificateVerdict:
    """Check the reduction-criterion hypotheses for a special embedding.

    SATISFIED means: every simple module of the big symmetric group whose
    triple commutant strictly exceeds its point commutant restricts
    reducibly to the embedded group.  The h value is replaced by its case
    upper bound, which only strengthens the inequality being checked.
    """
    action = OmegaAction(spec)
    n = action.n
    notes: list[str] = []
    if n % 2:
        raise ValueError(f"certificate requires even degree, got n={n}")
    frs = burnside_frs(spec, (1, 2, 3))
    hb = h_bound(spec) if spec.group == "alt" else HBound(2, 3)
    if spec.group == "alt":
        o2_ok = True if assume_o2_equal is None else assume_o2_equal
    else:
        o2_ok = bool(assume_o2_equal)
        notes.append("full symmetric image has a two-element abelian quotient")

    def witness():
        return specht2_parity_witness(action.induced_gen_images(), n, pair_cap)

    return _certificate_from_numbers(
        n, frs[1], frs[2], frs[3], hb.h_max, witness, o2_ok, notes
    )


def raw_reduction_certificate(
    gen_images: Sequence[np.ndarray],
    n: int,
    h_max: int,
    perms: Optional[Sequence[Perm]] = None,
    pair_cap: int = DEFAULT_PAIR_CAP,
    closure_cap: int = 10**6,
) -> CertificateVerdict:
    """Certificate for an explicit generator action on n points."""
    if n % 2:
        raise ValueError("certificate requires even degree")
    notes: list[str] = []
    f1 = subset_orbit_count(gen_images, n, 1)
    f2 = subset_orbit_count(gen_images, n, 2, pair_cap)
    f3 = subset_orbit_count(gen_images, n, 3, triple_cap())
    if f2 is None or f3 is None:
        raise ValueError("orbit spaces exceed the enumeration caps")
    o2_ok = False
    if perms is not None:
        try:
            els = enumerate_group(list(perms), closure_cap)
            o2_ok = two_abelianization_dim(els, closure_cap) == 0
        except Exception as exc:  # cap exceeded: leave undecided
            notes.append(f"closure skipped: {exc}")
    return _certificate_from_numbers(
        n,
        f1,
        f2,
        f3,
        h_max,
        lambda: specht2_parity_witness(gen_images, n, pair_cap),
        o2_ok,
        notes,
    )


# -- batteries -----------------------------------------------------------------


def special_embeddings(m: int) -> list[EmbeddingSpec]:
    """All subset and block-partition specs for the alternating group."""
    out = [
        EmbeddingSpec("ksubsets", "alt", m, k=k) for k in range(2, (m + 1) // 2)
        if 2 * k < m
    ]
    for a in range(2, m):
        if m % a == 0:
            b = m // a
            if a >= 2 and b >= 2:
                out.append(EmbeddingSpec("blocks", "alt", m, a=a, b=b))
    return out


def theorem_bound_battery(m_lo: int, m_hi: int) -> dict:
    """For even-degree special embeddings (pairs action excluded):
    f_2 >= 3 and e_3 >= h_max + 2."""
    if m_lo < 11:
        raise ValueError("battery applies from m = 11 upward")
    entries = []
    ok = True
    for m in range(m_lo, m_hi + 1):
        for spec in special_embeddings(m):
            if spec.kind == "ksubsets" and spec.k == 2:
                continue
            n = omega_size(spec)
            if n % 2:
                continue
            frs = burnside_frs(spec, (1, 2, 3))
            hb = h_bound(spec)
            e3 = frs[3] - frs[2]
            passed = frs[2] >= 3 and e3 >= hb.h_max + 2
            ok &= passed
            entries.append(
                {
                    "spec": str(spec),
                    "n": n,
                    "f2": frs[2],
                    "f3": frs[3],
                    "e3": e3,
                    "h_max": hb.h_max,
                    "pass": passed,
                }
            )
    return {"range": [m_lo, m_hi], "entries": entries, "pass": ok}
