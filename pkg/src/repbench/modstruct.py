"""Module-structure analysis over GF(2).

Hom spaces between modules given by generator matrices, fixed points,
commutant dimensions of Young-subgroup restrictions, socle series against
a supplied list of simples, and a Norton-style irreducibility test with a
recursive chop.

Two hom solvers coexist: a direct kernel-intersection solver on the
matrix-entry unknowns, and a seeded standard-basis solver for maps out of
an irreducible module, which scales to the n = 12, 14 subset modules.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .gf2 import BitMatrix, Subspace, _eliminate, _pack, subspace_meet, subspace_sum
from .partitions import Partition, basic_spin
from .permmod import (
    RepModule,
    eta,
    perm_module,
    simple_head,
    specht_two_row,
    standard_sn_perms,
)
from .symgrp import Perm

MAX_DENSE_UNKNOWNS = 70_000


class ResourceCapError(RuntimeError):
    pass


class MeataxeInconclusive(RuntimeError):
    pass


class IncompleteSimplesError(RuntimeError):
    pass


# -- words in the generators ----------------------------------------------


def evaluate_word(gens: dict[str, BitMatrix], word: tuple[tuple[str, ...], ...], dim: int) -> BitMatrix:
    """Sum over monomials of products of generator matrices."""
    total = BitMatrix.zeros(dim, dim)
    for mon in word:
        cur = BitMatrix.identity(dim)
        for label in mon:
            cur = gens[label] @ cur
        total = total ^ cur
    return total


def _random_word(rng: random.Random, labels: Sequence[str]) -> tuple[tuple[str, ...], ...]:
    k = rng.randint(2, 4)
    mons: dict[tuple[str, ...], int] = {}
    for _ in range(k):
        mon = tuple(rng.choice(labels) for _ in range(rng.randint(1, 4)))
        mons[mon] = mons.get(mon, 0) + 1
    word = tuple(sorted(m for m, c in mons.items() if c % 2 == 1))
    return word if word else ((labels[0],),)


# -- hom spaces ------------------------------------------------------------


@dataclass
class HomSpace:
    dim: int
    maps: list[BitMatrix] = field(default_factory=list)


def _check_labels(u: RepModule, v: RepModule) -> list[str]:
    if set(u.gens) != set(v.gens):
        raise ValueError(f"generator labels differ: {set(u.gens)} vs {set(v.gens)}")
    return sorted(u.gens)


def _constraint_nullspace(gu: BitMatrix, gv: BitMatrix) -> np.ndarray:
    """Kernel of F -> F@gu + gv@F as dense rows over the dU*dV unknowns."""
    du, dv = gu.rows, gv.rows
    d = du * dv
    if d > MAX_DENSE_UNKNOWNS:
        raise ResourceCapError(f"hom system with {d} unknowns exceeds the cap")
    gud = gu.to_dense()
    gvd = gv.to_dense()
    words = (d + 63) // 64
    packed = np.zeros((d, words), dtype=np.uint64)
    chunk = max(1, (1 << 24) // max(d, 1))
    row = 0
    while row < d:
        hi = min(d, row + chunk)
        dense = np.zeros((hi - row, d), dtype=np.uint8)
        for k in range(row, hi):
            i, j = divmod(k, du)
            seg = dense[k - row, i * du : (i + 1) * du]
            seg ^= gud[:, j]
            cols = np.arange(dv) * du + j
            dense[k - row, cols] ^= gvd[i]
        packed[row:hi] = _pack(dense, d)
        row = hi
    pivots = _eliminate(packed, d, reduce_above=True)
    piv = set(pivots)
    free = [c for c in range(d) if c not in piv]
    basis = np.zeros((len(free), d), dtype=np.uint8)
    pivarr = np.array(pivots, dtype=np.int64)
    red = packed[: len(pivots)]
    for k, f in enumerate(free):
        basis[k, f] = 1
        if pivots:
            bits = (red[:, f >> 6] >> np.uint64(f & 63)) & np.uint64(1)
            basis[k, pivarr] = bits.astype(np.uint8)
    return basis


def hom_space(u: RepModule, v: RepModule, order: Optional[Sequence[str]] = None) -> HomSpace:
    """All F with F g_U = g_V F for every shared generator label.

    The kernel of the first generator's constraint is intersected with the
    constraints of the remaining generators one at a time.
    """
    labels = _check_labels(u, v)
    if order:
        assert sorted(order) == labels
        labels = list(order)
    du, dv = u.dim, v.dim
    if du == 0 or dv == 0:
        return HomSpace(0, [])
    basis: Optional[np.ndarray] = None
    for label in labels:
        gu, gv = u.gens[label], v.gens[label]
        if basis is None:
            basis = _constraint_nullspace(gu, gv)
        else:
            if basis.shape[0] == 0:
                break
            rows = []
            for vecrow in basis:
                f = BitMatrix.from_dense(vecrow.reshape(dv, du))
                lmap = (f @ gu) ^ (gv @ f)
                rows.append(lmap.to_dense().reshape(-1))
            e = np.vstack(rows)
            combo = BitMatrix.from_dense(e.T).nullspace()
            if combo.dim == 0:
                basis = basis[:0]
                break
            basis = (combo.basis.to_dense() @ basis) % 2
            basis = basis.astype(np.uint8)
    if basis is None:
        basis = np.zeros((0, du * dv), dtype=np.uint8)
    maps = [BitMatrix.from_dense(row.reshape(dv, du)) for row in basis]
    for f in maps:
        for label in labels:
            assert (f @ u.gens[label]) == (v.gens[label] @ f)
    return HomSpace(len(maps), maps)


# -- seeded hom solver for simple sources ----------------------------------


def _find_low_nullity_word(mod: RepModule, rng: random.Random, tries: int = 400):
    labels = sorted(mod.gens)
    for attempt in range(tries):
        word = _random_word(rng, labels)
        a = evaluate_word(mod.gens, word, mod.dim)
        ns = a.nullspace()
        if ns.dim == 1:
            return word, ns
    raise MeataxeInconclusive(
        f"no nullity-1 word found on {mod.label} after {tries} tries"
    )


def _reduce_tracked(v: np.ndarray, c: np.ndarray, pivmap: dict) -> Optional[int]:
    """Reduce v (tracking combination c) against pivot rows; leading index or None.

    Rows are applied leading-bit first, so entries reintroduced at later
    positions are handled on subsequent passes of the loop.
    """
    while True:
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return None
        q = int(nz[0])
        hit = pivmap.get(q)
        if hit is None:
            return q
        row, t = hit
        v ^= row
        if c is not None:
            c ^= t


def _spin_with_relations(mod: RepModule):
    """Standard-basis spin from a nullity-1 seed.

    Returns (word, basis vectors, build schedule, linear relations), where
    relations record every product of a generator with a basis vector that
    was linearly dependent on the earlier ones.
    """
    rng = random.Random(20_000_003 + mod.dim)
    word, ns = _find_low_nullity_word(mod, rng)
    dim = mod.dim
    seed = ns.basis.row_dense(0)
    dense_gens = {k: m.to_dense() for k, m in mod.gens.items()}
    labels = sorted(mod.gens)
    basis = [seed]
    schedule: list[Optional[tuple[int, str]]] = [None]
    pivmap: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    c0 = np.zeros(dim, dtype=np.uint8)
    c0[0] = 1
    pivmap[int(np.nonzero(seed)[0][0])] = (seed.copy(), c0)
    relations: list[tuple[str, int, np.ndarray]] = []
    queue = [0]
    while queue:
        k = queue.pop(0)
        for label in labels:
            img = ((dense_gens[label] @ basis[k]) % 2).astype(np.uint8)
            v = img.copy()
            c = np.zeros(dim, dtype=np.uint8)
            lead = _reduce_tracked(v, c, pivmap)
            if lead is None:
                relations.append((label, k, c))
            else:
                idx = len(basis)
                assert idx < dim, "spin exceeded module dimension"
                basis.append(img)
                schedule.append((k, label))
                c[idx] = 1
                pivmap[lead] = (v, c)
                queue.append(idx)
    if len(basis) != dim:
        raise MeataxeInconclusive(
            f"seed failed to generate {mod.label}: source is not irreducible"
        )
    return word, basis, schedule, relations


def hom_from_simple(s: RepModule, m: RepModule) -> HomSpace:
    """Hom space with an irreducible source, via the standard-basis method."""
    labels = _check_labels(s, m)
    if s.dim == 1:
        fixed = fixed_subspace_from_word_gens(s, m)
        maps = [
            BitMatrix.from_dense(fixed.basis.row_dense(i)[:, None])
            for i in range(fixed.dim)
        ]
        return HomSpace(fixed.dim, maps)
    word, basis, schedule, relations = _spin_with_relations(s)
    a_m = evaluate_word(m.gens, word, m.dim)
    kern = a_m.nullspace()
    t = kern.dim
    if t == 0:
        return HomSpace(0, [])
    dense_m = {k: g.to_dense() for k, g in m.gens.items()}
    phi: list[np.ndarray] = [kern.basis.to_dense().T.astype(np.uint8)]
    for entry in schedule[1:]:
        parent, label = entry
        phi.append((dense_m[label] @ phi[parent]) % 2)
    blocks = []
    for label, k, coeffs in relations:
        r = (dense_m[label] @ phi[k]) % 2
        for j in np.nonzero(coeffs)[0]:
            r = r ^ phi[j]
        blocks.append(r.astype(np.uint8))
    if blocks:
        stacked = BitMatrix.from_dense(np.vstack(blocks))
        sols = stacked.nullspace()
    else:
        sols = Subspace.full(t)
    if sols.dim == 0:
        return HomSpace(0, [])
    bmat = BitMatrix.from_dense(np.vstack(basis))
    binv_t = bmat.transpose().inverse()
    maps = []
    for i in range(sols.dim):
        x = sols.basis.row_dense(i)
        img = np.zeros((m.dim, s.dim), dtype=np.uint8)
        for j in range(s.dim):
            img[:, j] = (phi[j] @ x) % 2
        f = BitMatrix.from_dense(img) @ binv_t
        maps.append(f)
    for f in maps:
        for label in labels:
            assert (f @ s.gens[label]) == (m.gens[label] @ f)
    return HomSpace(len(maps), maps)


def hom_auto(s: RepModule, m: RepModule) -> HomSpace:
    """Pick the solver by problem size."""
    if s.dim * m.dim <= 20_000 or s.dim == 1:
        try:
            return hom_space(s, m)
        except ResourceCapError:
            pass
    return hom_from_simple(s, m)


# -- fixed points -----------------------------------------------------------


def fixed_subspace_from_word_gens(s_triv: RepModule, m: RepModule) -> Subspace:
    mats = [m.gens[k] for k in sorted(m.gens)]
    return fixed_subspace(m, mats)


def fixed_subspace(m: RepModule, mats: Sequence[BitMatrix]) -> Subspace:
    ident = BitMatrix.identity(m.dim)
    stacked = BitMatrix.vstack([a ^ ident for a in mats])
    return stacked.nullspace()


def fixed_points(v: RepModule, gens: Sequence[Perm]) -> int:
    """dim of the common 1-eigenspace of the listed permutations."""
    mats = [v.matrixize(g) for g in gens]
    return fixed_subspace(v, mats).dim


# -- commutants of Young-subgroup restrictions ------------------------------


def young_subgroup_perms(n: int, r: int) -> dict[str, Perm]:
    """Generators of the stabilizer of the last r points, labelled."""
    if not (1 <= r <= n // 2):
        raise ValueError(f"need 1 <= r <= n/2, got r={r}, n={n}")
    out: dict[str, Perm] = {}
    a = n - r
    if a >= 2:
        out["a_s"] = Perm.from_cycles([(0, 1)], n)
    if a >= 3:
        out["a_c"] = Perm.from_cycles([tuple(range(a))], n)
    if r >= 2:
        out["b_s"] = Perm.from_cycles([(a, a + 1)], n)
    if r >= 3:
        out["b_c"] = Perm.from_cycles([tuple(range(a, n))], n)
    return out


def d_r(v: RepModule, r: int) -> int:
    """Dimension of the commutant of the restriction to S_{n-r,r}."""
    if v.dim == 1:
        return 1
    if v.ambient is None:
        raise ValueError("need ambient provenance to restrict")
    n = v.ambient.n
    perms = young_subgroup_perms(n, r)
    res = v.with_generators(perms, label=f"{v.label}|({n - r},{r})")
    order = [k for k in ("a_c", "b_c", "a_s", "b_s") if k in perms]
    return hom_space(res, res, order=order).dim


def restriction_module(v: RepModule, r: int) -> RepModule:
    n = v.ambient.n
    return v.with_generators(young_subgroup_perms(n, r))


def hom_dimension_battery(n: int, dim_cap: Optional[int] = None) -> dict:
    """Compare the commutants over S_{n-1,1} and S_{n-3,3} for every simple.

    The expected pattern: equality exactly for the trivial and two-row
    spin labels, strict increase otherwise.
    """
    from .partitions import enumerate_partitions

    if n % 2 or n < 6:
        raise ValueError("battery requires even n >= 6")
    spin = basic_spin(n)
    entries = []
    ok = True
    for lam in enumerate_partitions(n, 2):
        d = simple_head(lam)
        if dim_cap is not None and d.dim > dim_cap:
            entries.append(
                {
                    "partition": list(lam.parts),
                    "dim": d.dim,
                    "skipped": True,
                    "reason": f"dim {d.dim} exceeds cap {dim_cap}",
                }
            )
            continue
        d1 = d_r(d, 1)
        d3 = d_r(d, 3)
        expect_equal = lam == Partition((n,)) or lam == spin
        passed = (d3 == d1) if expect_equal else (d3 > d1)
        ok &= passed
        entries.append(
            {
                "partition": list(lam.parts),
                "dim": d.dim,
                "d1": d1,
                "d3": d3,
                "expect_equal": expect_equal,
                "pass": passed,
            }
        )
    return {"n": n, "entries": entries, "pass": ok}


# -- irreducibility and chop -------------------------------------------------


def _spin_vector(vec: np.ndarray, dense_gens: list[np.ndarray]) -> Subspace:
    dim = vec.shape[0]
    pivmap: dict[int, tuple[np.ndarray, None]] = {}

    def insert(u: np.ndarray) -> bool:
        v = u.copy()
        lead = _reduce_tracked(v, None, pivmap)
        if lead is None:
            return False
        pivmap[lead] = (v, None)
        return True

    queue = []
    if insert(vec):
        queue.append(vec)
    while queue and len(pivmap) < dim:
        u = queue.pop()
        for g in dense_gens:
            img = ((g @ u) % 2).astype(np.uint8)
            if insert(img):
                queue.append(img)
    if not pivmap:
        return Subspace.zero(dim)
    rows = np.vstack([row for row, _ in pivmap.values()])
    return Subspace.from_generators(BitMatrix.from_dense(rows))


def _kernel_combinations(basis_rows: np.ndarray):
    """Every nonzero vector of the spanned kernel (requires few rows)."""
    k = basis_rows.shape[0]
    for mask in range(1, 1 << k):
        v = None
        for i in range(k):
            if mask >> i & 1:
                v = basis_rows[i].copy() if v is None else v ^ basis_rows[i]
        yield v


def _norton(m: RepModule, seed: int, tries: int):
    """(True, None) if certified irreducible, else (False, proper submodule).

    The criterion needs every nonzero vector of the kernel of the chosen
    algebra element to generate the whole module, and every nonzero
    vector of the transposed kernel to generate the whole dual; a proper
    submodule either meets the kernel or its annihilator meets the
    transposed kernel.  Words of nullity above the cap are skipped since
    the combination count is exponential.
    """
    rng = random.Random(seed)
    labels = sorted(m.gens)
    dense_gens = [m.gens[k].to_dense() for k in labels]
    dense_tr = [g.T.copy() for g in dense_gens]
    nullity_cap = 8
    for attempt in range(tries):
        word = _random_word(rng, labels)
        a = evaluate_word(m.gens, word, m.dim)
        ns = a.nullspace()
        if ns.dim == 0:
            continue
        if ns.dim > 3 and attempt < tries // 3:
            continue
        if ns.dim > nullity_cap:
            continue
        for v in _kernel_combinations(ns.basis.to_dense()):
            sub = _spin_vector(v, dense_gens)
            if sub.dim < m.dim:
                return False, sub
        nst = a.transpose().nullspace()
        for w in _kernel_combinations(nst.basis.to_dense()):
            dual_sub = _spin_vector(w, dense_tr)
            if dual_sub.dim < m.dim:
                perp = dual_sub.basis.nullspace()
                assert 0 < perp.dim < m.dim
                return False, perp
        return True, None
    raise MeataxeInconclusive(f"norton test exhausted {tries} tries on {m.label}")


def is_irreducible(m: RepModule, seed: int = 1) -> bool:
    if m.dim == 0:
        raise ValueError("zero module")
    if m.dim == 1:
        return True
    flag, _ = _norton(m, seed, tries=300)
    return flag


def chop(m: RepModule, seed: int = 1) -> list[RepModule]:
    """Composition factors with multiplicity, by recursive splitting."""
    if m.dim == 0:
        return []
    if m.dim == 1:
        return [m]
    flag, sub = _norton(m, seed, tries=300)
    if flag:
        return [m]
    return chop(m.submodule(sub), seed) + chop(m.quotient(sub), seed)


def is_isomorphic(a: RepModule, b: RepModule, enum_cap: int = 12) -> bool:
    """Dimension check plus a search for an invertible equivariant map."""
    if a.dim != b.dim:
        return False
    if a.dim == 0:
        return True
    homs = hom_auto(a, b)
    if homs.dim == 0:
        return False
    if homs.dim > enum_cap:
        raise ResourceCapError(f"hom space too large to search: {homs.dim}")
    for mask in range(1, 1 << homs.dim):
        f = None
        for i in range(homs.dim):
            if mask >> i & 1:
                f = homs.maps[i] if f is None else f ^ homs.maps[i]
        if f.rank() == a.dim:
            return True
    return False


def module_is_trivial(m: RepModule) -> bool:
    ident = BitMatrix.identity(m.dim)
    return all(g == ident for g in m.gens.values())


def trivial_module(labels: Sequence[str]) -> RepModule:
    ident = BitMatrix.identity(1)
    return RepModule(1, {k: ident for k in labels}, "triv")


# -- socle series ------------------------------------------------------------


def _socle_data(m: RepModule, simples: Sequence[RepModule]):
    total = Subspace.zero(m.dim)
    mults: dict[str, int] = {}
    for s in simples:
        if module_is_trivial(s):
            fx = fixed_subspace(m, [m.gens[k] for k in sorted(m.gens)])
            mults[s.label] = fx.dim
            total = subspace_sum(total, fx)
            continue
        homs = hom_from_simple(s, m)
        mults[s.label] = homs.dim
        if homs.dim:
            rows = np.vstack([f.transpose().to_dense() for f in homs.maps])
            total = subspace_sum(
                total, Subspace.from_generators(BitMatrix.from_dense(rows))
            )
    return total, mults


def socle_wrt(m: RepModule, simples: Sequence[RepModule]) -> Subspace:
    return _socle_data(m, simples)[0]


@dataclass
class StructureReport:
    module: str
    dim: int
    layers: list[list[dict]] = field(default_factory=list)
    claims: list[dict] = field(default_factory=list)

    def layer_labels(self) -> list[list[str]]:
        out = []
        for layer in self.layers:
            labels = []
            for item in layer:
                labels.extend([item["simple"]] * item["mult"])
            out.append(sorted(labels))
        return out

    def is_uniserial(self) -> bool:
        return all(
            sum(item["mult"] for item in layer) == 1 for layer in self.layers
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "module": self.module,
                "dim": self.dim,
                "layers": self.layers,
                "claims": self.claims,
            },
            sort_keys=True,
        )


def socle_series_wrt(m: RepModule, simples: Sequence[RepModule]) -> StructureReport:
    """Iterated socles; every composition factor type must be supplied."""
    report = StructureReport(m.label, m.dim)
    current = m
    consumed = 0
    while current.dim > 0:
        soc, mults = _socle_data(current, simples)
        layer_dim = sum(
            mults[s.label] * s.dim for s in simples if mults.get(s.label)
        )
        if soc.dim == 0 or layer_dim != soc.dim:
            raise IncompleteSimplesError(
                f"socle of {current.label} (dim {current.dim}) not exhausted: "
                f"matched {layer_dim} of {soc.dim}"
            )
        report.layers.append(
            [
                {"simple": s.label, "dim": s.dim, "mult": mults[s.label]}
                for s in simples
                if mults.get(s.label)
            ]
        )
        consumed += soc.dim
        current = current.quotient(soc)
    assert consumed == m.dim
    return report


def ambient_socle_chain(m: RepModule, simples: Sequence[RepModule]) -> list[Subspace]:
    """Ascending socle chain of an ambient-backed module, in ambient coords."""
    assert m.ambient is not None
    chain = []
    den = m.den
    while True:
        cur = RepModule.from_ambient(m.ambient, m.perms, m.num, den, m.label)
        if cur.dim == 0:
            break
        soc, _ = _socle_data(cur, simples)
        if soc.dim == 0:
            raise IncompleteSimplesError(f"empty socle on nonzero {m.label}")
        den = subspace_sum(
            den, Subspace.from_generators(BitMatrix.from_dense(cur.lift_rows(soc)))
        )
        chain.append(den)
    return chain


# -- structure battery --------------------------------------------------------


def standard_simples(n: int) -> list[RepModule]:
    """triv and the three two-row heads used to label subset-module layers."""
    return [trivial_module(["s", "c"])] + [
        simple_head(Partition((n - r, r))) for r in (1, 2, 3)
    ]


def _line(vec: np.ndarray) -> Subspace:
    return Subspace.from_generators(BitMatrix.from_dense(vec[None, :]))


def image_subspace(mat: BitMatrix) -> Subspace:
    """Column space."""
    return mat.transpose().row_space()


def image_of_subspace(mat: BitMatrix, sub: Subspace) -> Subspace:
    rows = np.zeros((sub.dim, mat.rows), dtype=np.uint8)
    for i in range(sub.dim):
        rows[i] = mat.apply(sub.basis.row_dense(i))
    return Subspace.from_generators(BitMatrix.from_dense(rows))


def structure_battery(n: int) -> list[StructureReport]:
    """Subspace-identity and socle-layer claims for the subset modules.

    Runs the n = 0 mod 4 set or the n = 2 mod 4 set depending on parity.
    Claims are attached to a summary report appended at the end.
    """
    if n % 2 or n < 8:
        raise ValueError("battery requires even n >= 8 (three-row heads exist)")
    from math import comb

    perms = standard_sn_perms(n)
    simples = standard_simples(n)
    triv, d1m, d2m, d3m = simples
    m1 = perm_module(n, 1)
    m2 = perm_module(n, 2)
    m3 = perm_module(n, 3)
    reports: list[StructureReport] = []
    summary = StructureReport(f"claims(n={n})", 0)
    reports.append(summary)

    def add(cid: str, ok: bool, **details):
        entry = {"id": cid, "status": "pass" if ok else "fail"}
        entry.update(details)
        summary.claims.append(entry)

    rep_m1 = socle_series_wrt(m1, [triv, d1m])
    reports.append(rep_m1)
    add(
        "m1.layers.triv_d1_triv",
        rep_m1.layer_labels() == [["triv"], [d1m.label], ["triv"]],
        layers=rep_m1.layer_labels(),
    )

    e13 = eta(n, 1, 3).matrix
    e31 = eta(n, 3, 1).matrix
    e23 = eta(n, 2, 3).matrix
    e32 = eta(n, 3, 2).matrix
    aug2 = eta(n, 2, 0).matrix.nullspace()
    nsub = e31.nullspace()
    im13 = image_subspace(e13)
    im23 = image_subspace(e23)
    im32 = image_subspace(e32)
    s2 = specht_two_row(n, 2).basis
    s3 = specht_two_row(n, 3).basis
    t3 = _line(np.ones(comb(n, 3), dtype=np.uint8))
    t1 = _line(np.ones(n, dtype=np.uint8))
    qmod = m1.quotient(t1, label="Q")

    if n % 4 == 0:
        add("eta31.eta13.identity", (e31 @ e13) == BitMatrix.identity(n))
        add(
            "m3.splits.im13.plus.ker31",
            subspace_meet(im13, nsub).dim == 0 and im13.dim + nsub.dim == m3.dim,
        )
        u13 = m3.submodule(im13, label="im13")
        add("im13.iso.m1", is_isomorphic(u13, m1))
        nmod = m3.submodule(nsub, label="ker31")
        rep_n = socle_series_wrt(nmod, simples)
        reports.append(rep_n)
        want = [[d2m.label], [d1m.label], [d3m.label], [d1m.label], [d2m.label]]
        add(
            "ker31.uniserial.d2_d1_d3_d1_d2",
            rep_n.is_uniserial() and rep_n.layer_labels() == want,
            layers=rep_n.layer_labels(),
        )
        chain_n = ambient_socle_chain(nmod, simples)
        soc3n = chain_n[2]
        add(
            "ker32.meet.ker31.eq.soc3.ker31",
            subspace_meet(e32.nullspace(), nsub) == soc3n,
        )
        im32n = image_of_subspace(e32, nsub)
        add("eta32.ker31.eq.im32.meet.aug2", im32n == subspace_meet(im32, aug2))
        add("eta32.ker31.eq.specht2", im32n == s2)
    else:
        wmod = m3.submodule(im23, label="im23")
        rep_w = socle_series_wrt(wmod, simples)
        reports.append(rep_w)
        want_w = [["triv"], [d2m.label], ["triv"], [d1m.label]]
        add(
            "im23.uniserial.triv_d2_triv_d1",
            rep_w.is_uniserial() and rep_w.layer_labels() == want_w,
            layers=rep_w.layer_labels(),
        )
        add("soc.m3.eq.t3.line", socle_wrt(m3, simples) == t3)

        ymod = m2.submodule(aug2, label="m2.aug")
        rep_y = socle_series_wrt(ymod, simples)
        reports.append(rep_y)
        want_y = [[d1m.label], ["triv"], [d2m.label], ["triv"], [d1m.label]]
        add(
            "m2aug.uniserial.d1_t_d2_t_d1",
            rep_y.is_uniserial() and rep_y.layer_labels() == want_y,
            layers=rep_y.layer_labels(),
        )

        chain_w = ambient_socle_chain(wmod, simples)
        soc2w, soc3w = chain_w[1], chain_w[2]
        add("soc2.im23.inside.ker31", nsub.contains_space(soc2w))
        chain_y = ambient_socle_chain(ymod, simples)
        add(
            "ker.eta23.on.aug2.eq.soc.aug2",
            subspace_meet(e23.nullspace(), aug2) == chain_y[0],
        )
        add("eta23.aug2.eq.im23", image_of_subspace(e23, aug2) == im23)

        add(
            "ker31.meet.im23.eq.soc2.im23",
            subspace_meet(nsub, im23) == soc2w
            and subspace_meet(nsub, soc3w) == soc2w,
        )
        quo = m3.quotient(subspace_sum(nsub, soc3w), label="m3.over.n+soc3w")
        add("m3.over.n.plus.soc3w.iso.q", is_isomorphic(quo, qmod))

        add("im13.inside.ker31", nsub.contains_space(im13))
        add("im13.meet.im23.eq.t3.line", subspace_meet(im13, im23) == t3)
        qprime = RepModule.from_ambient(
            m3.ambient, perms, subspace_sum(im13, soc2w), soc2w, "Qprime"
        )
        add("qprime.iso.q", is_isomorphic(qprime, qmod))
        ndd = RepModule.from_ambient(
            m3.ambient, perms, nsub, subspace_sum(im13, soc2w), "Ndd"
        )
        rep_ndd = socle_series_wrt(ndd, simples)
        reports.append(rep_ndd)
        add(
            "ndd.uniserial.d3_d2",
            rep_ndd.is_uniserial()
            and rep_ndd.layer_labels() == [[d3m.label], [d2m.label]],
            layers=rep_ndd.layer_labels(),
        )

        add(
            "soc2.im23.inside.specht3.inside.ker31",
            s3.contains_space(soc2w) and nsub.contains_space(s3),
        )
        dprime = RepModule.from_ambient(m3.ambient, perms, s3, soc2w, "Dprime")
        iso_d3 = (
            dprime.dim == d3m.dim and hom_from_simple(d3m, dprime).dim >= 1
        )
        add("specht3.over.soc2w.iso.d3", iso_d3)
        nprime = RepModule.from_ambient(m3.ambient, perms, nsub, soc2w, "Nprime")
        chain_np = ambient_socle_chain(nprime, simples)
        chain_qp = ambient_socle_chain(qprime, simples)
        direct = (
            chain_np[0] == subspace_sum(s3, chain_qp[0])
            and chain_np[0].dim - soc2w.dim
            == (s3.dim - soc2w.dim) + (chain_qp[0].dim - soc2w.dim)
        )
        add("soc.nprime.eq.dprime.directsum.soc.qprime", direct)
        rep_np = socle_series_wrt(nprime, simples)
        reports.append(rep_np)
        first = rep_np.layer_labels()[0]
        add(
            "soc.nprime.constituents.d3.d1",
            sorted(first) == sorted([d3m.label, d1m.label]),
            layer=first,
        )
        s2mod = m2.submodule(s2, label="specht2")
        n_over_s3 = RepModule.from_ambient(m3.ambient, perms, nsub, s3, "n.over.s3")
        add("nprime.over.dprime.iso.specht2", is_isomorphic(n_over_s3, s2mod))
        im32n_mod = m2.submodule(image_of_subspace(e32, nsub), label="eta32.ker31")
        add("eta32.ker31.iso.specht2", is_isomorphic(im32n_mod, s2mod))

    summary.claims.sort(key=lambda c: c["id"])
    return reports


def battery_claims_pass(reports: Sequence[StructureReport]) -> bool:
    return all(
        c["status"] == "pass" for rep in reports for c in rep.claims
    )


def natural_subgroup_perms(n: int, k: int) -> dict[str, Perm]:
    """Generators of the symmetric group on the first k of n points."""
    out = {"k_s": Perm.from_cycles([(0, 1)], n)}
    if k >= 3:
        out["k_c"] = Perm.from_cycles([tuple(range(k))], n)
    return out


def branching_battery(
    n: int = 8,
    ks: Sequence[int] = (3, 4),
    shapes: Sequence[tuple] = ((7, 1), (6, 2)),
    seed: int = 1,
) -> dict:
    """Restrictions with a wide first row afford both the trivial module
    and the (k-1,1)-head as composition factors."""
    entries = []
    ok = True
    for parts in shapes:
        lam = Partition(parts)
        assert 2 * lam[0] - n >= min(ks) >= 3
        v = simple_head(lam)
        for k in ks:
            res = v.with_generators(
                natural_subgroup_perms(n, k), label=f"{v.label}|S{k}"
            )
            factors = chop(res, seed)
            has_triv = any(f.dim == 1 and module_is_trivial(f) for f in factors)
            ref = simple_head(
                Partition((k - 1, 1)),
                perms={
                    "k_s": Perm.from_cycles([(0, 1)], k),
                    "k_c": Perm.from_cycles([tuple(range(k))], k),
                },
            )
            has_std = False
            for f in factors:
                if f.dim == ref.dim and not module_is_trivial(f):
                    if hom_from_simple(ref, f).dim >= 1:
                        has_std = True
                        break
            passed = has_triv and has_std
            ok &= passed
            entries.append(
                {
                    "partition": list(parts),
                    "k": k,
                    "factor_dims": sorted(f.dim for f in factors),
                    "has_trivial": has_triv,
                    "has_standard_head": has_std,
                    "pass": passed,
                }
            )
    return {"n": n, "entries": entries, "pass": ok}
