"""Command-line front end.

Exit codes: 0 all assertions pass, 1 assertion failure, 2 usage error,
3 resource cap exceeded.  `--json PATH` writes machine-readable output;
the JSON carries "schema": 1 and no timestamps, so identical runs give
byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import manifest as manifest_mod
from .partitions import (
    enumerate_partitions,
    format_partition,
    mullineux,
    mullineux_symbol,
    parse_partition,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    for line in text_lines:
        print(line)
    if getattr(args, "json", None):
        payload = {"schema": 1, **payload}
        with open(args.json, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
            fh.write("\n")


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    return int(os.environ.get("WORKBENCH_SEED", "1"))


def cmd_mullineux(args) -> int:
    lam = parse_partition(args.lam)
    if args.n and lam.n != args.n:
        print(f"error: partition sums to {lam.n}, not {args.n}", file=sys.stderr)
        return EXIT_USAGE
    if not lam.is_p_regular(args.p):
        print(f"error: {args.lam} is not {args.p}-regular", file=sys.stderr)
        return EXIT_USAGE
    sym = mullineux_symbol(lam, args.p)
    image = mullineux(lam, args.p)
    fixed = image == lam
    _emit(
        args,
        {
            "partition": format_partition(lam),
            "p": args.p,
            "symbol": str(sym),
            "image": format_partition(image),
            "fixed": fixed,
        },
        [
            f"partition : {format_partition(lam)}",
            f"symbol    : {sym}",
            f"image     : {format_partition(image)}",
            f"fixed     : {'yes' if fixed else 'no'}",
        ],
    )
    return EXIT_OK


def cmd_partitions(args) -> int:
    parts = list(enumerate_partitions(args.n, args.p))
    lines = [format_partition(p) or "-" for p in parts]
    lines.append(f"count: {len(parts)}")
    _emit(
        args,
        {"n": args.n, "p": args.p, "partitions": [list(p.parts) for p in parts]},
        lines,
    )
    return EXIT_OK


def cmd_wilson_rank(args) -> int:
    from .permmod import eta, wilson_rank

    formula = wilson_rank(args.n, args.r, args.s)
    elim = eta(args.n, args.r, args.s).matrix.rank()
    ok = formula == elim
    _emit(
        args,
        {"n": args.n, "r": args.r, "s": args.s, "formula": formula, "elimination": elim, "match": ok},
        [f"rank formula {formula}, elimination {elim}, {'MATCH' if ok else 'MISMATCH'}"],
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_specht(args) -> int:
    from .permmod import hook_length_dim, specht_general, specht_two_row

    if args.shape:
        shape = parse_partition(args.shape)
        mwb = specht_general(shape)
        oracle = hook_length_dim(shape)
    else:
        mwb = specht_two_row(args.n, args.r)
        oracle = None
    lines = [mwb.report()]
    if oracle is not None:
        lines.append(f"hook-length oracle: {oracle}")
    _emit(args, {"label": mwb.label, "dim": mwb.dim, "oracle": oracle}, lines)
    if oracle is not None and oracle != mwb.dim:
        return EXIT_FAIL
    return EXIT_OK


_SOCLE_MODULES = ("m1", "m2", "m2aug", "m3", "ker31", "im23")


def cmd_socle(args) -> int:
    from .modstruct import socle_series_wrt, standard_simples, image_subspace
    from .permmod import eta, perm_module

    n = args.n
    simples = standard_simples(n)
    if args.module == "m1":
        mod = perm_module(n, 1)
        simples = simples[:2]
    elif args.module == "m2":
        mod = perm_module(n, 2)
    elif args.module == "m2aug":
        mod = perm_module(n, 2).submodule(
            eta(n, 2, 0).matrix.nullspace(), label="m2.aug"
        )
    elif args.module == "m3":
        mod = perm_module(n, 3)
    elif args.module == "ker31":
        mod = perm_module(n, 3).submodule(
            eta(n, 3, 1).matrix.nullspace(), label="ker31"
        )
    else:
        mod = perm_module(n, 3).submodule(
            image_subspace(eta(n, 2, 3).matrix), label="im23"
        )
    rep = socle_series_wrt(mod, simples)
    lines = [f"{rep.module} (dim {rep.dim})"]
    for i, layer in enumerate(rep.layer_labels(), 1):
        lines.append(f"  layer {i}: {' + '.join(layer)}")
    _emit(args, json.loads(rep.to_json()), lines)
    return EXIT_OK


def cmd_dr(args) -> int:
    from .modstruct import d_r
    from .permmod import simple_head

    lam = parse_partition(args.shape)
    mod = simple_head(lam)
    val = d_r(mod, args.r)
    _emit(
        args,
        {"shape": args.shape, "r": args.r, "dim": mod.dim, "d_r": val},
        [f"d_{args.r}(D({args.shape})) = {val}   (dim {mod.dim})"],
    )
    return EXIT_OK


def cmd_hom_battery(args) -> int:
    from .modstruct import hom_dimension_battery

    rep = hom_dimension_battery(args.n, dim_cap=args.cap_dim)
    lines = []
    for e in rep["entries"]:
        if e.get("skipped"):
            lines.append(f"  {e['partition']}: skipped ({e['reason']})")
        else:
            rel = "=" if e["expect_equal"] else ">"
            lines.append(
                f"  {e['partition']}: d1={e['d1']} d3={e['d3']} expect d3{rel}d1 "
                f"{'pass' if e['pass'] else 'FAIL'}"
            )
    lines.append(f"battery: {'pass' if rep['pass'] else 'FAIL'}")
    _emit(args, rep, lines)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_structure_battery(args) -> int:
    from .modstruct import battery_claims_pass, structure_battery

    reports = structure_battery(args.n)
    ok = battery_claims_pass(reports)
    lines = []
    for rep in reports:
        if rep.claims:
            for c in rep.claims:
                lines.append(f"  {c['id']}: {c['status']}")
        elif rep.layers:
            lines.append(
                f"  {rep.module}: layers {['+'.join(x) for x in rep.layer_labels()]}"
            )
    lines.append(f"battery: {'pass' if ok else 'FAIL'}")
    payload = {
        "n": args.n,
        "pass": ok,
        "reports": [json.loads(r.to_json()) for r in reports],
    }
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orbits(args) -> int:
    from .orbits import parse_spec, stats

    spec = parse_spec(args.spec)
    st = stats(spec, pair_cap=args.cap_pairs, tri_cap=args.cap_triples)
    _emit(
        args,
        {"spec": str(spec), **st.to_dict()},
        [
            f"{spec}: n={st.n} f1={st.f1} f2={st.f2} f3={st.f3} "
            f"e2={st.e2} e3={st.e3} [{st.method}]"
        ],
    )
    return EXIT_OK


def cmd_e32(args) -> int:
    from .orbits import e3_gap_symmetric_blocks

    val = e3_gap_symmetric_blocks(args.a, args.s)
    _emit(
        args,
        {"a": args.a, "s": args.s, "e3_gap": val},
        [f"f3 - f2 for the full symmetric group on {args.s} blocks of {args.a}: {val}"],
    )
    return EXIT_OK


def cmd_h_bound(args) -> int:
    from .orbits import h_bound, parse_spec, stabilizer_two_abelianization

    spec = parse_spec(args.spec)
    hb = h_bound(spec)
    payload = {"spec": str(spec), "dim_h1_m1": hb.dim_h1_m1, "h_max": hb.h_max}
    lines = [f"{spec}: dim H^1 = {hb.dim_h1_m1}, h_max = {hb.h_max}"]
    code = EXIT_OK
    if args.cross_check:
        got = stabilizer_two_abelianization(spec)
        payload["stabilizer_dim"] = got
        match = got == hb.dim_h1_m1
        lines.append(f"stabilizer cross-check: {got} {'MATCH' if match else 'MISMATCH'}")
        if not match:
            code = EXIT_FAIL
    _emit(args, payload, lines)
    return code


def cmd_reduce_cert(args) -> int:
    from .orbits import parse_spec, reduction_certificate

    spec = parse_spec(args.spec)
    verdict = reduction_certificate(spec, pair_cap=args.cap_pairs)
    status = {True: "SATISFIED", False: "NOT SATISFIED", None: "UNDECIDED"}[
        verdict.satisfied
    ]
    lines = [f"{spec}: {status}"]
    for key, val in verdict.checks.items():
        lines.append(f"  {key}: {val}")
    _emit(args, {"spec": str(spec), **verdict.to_dict()}, lines)
    return EXIT_OK if verdict.satisfied else EXIT_FAIL


def cmd_bound_battery(args) -> int:
    from .orbits import theorem_bound_battery

    rep = theorem_bound_battery(args.m_lo, args.m_hi)
    lines = [
        f"  {e['spec']}: n={e['n']} f2={e['f2']} e3={e['e3']} h_max={e['h_max']} "
        f"{'pass' if e['pass'] else 'FAIL'}"
        for e in rep["entries"]
    ]
    lines.append(f"battery: {'pass' if rep['pass'] else 'FAIL'}")
    _emit(args, rep, lines)
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def cmd_classical(args) -> int:
    from .classical import (
        RANK3_BATTERY_CASES,
        build_action,
        lemma_r3_battery,
        parse_case,
        rank3_stats,
    )

    if args.battery:
        rep = lemma_r3_battery(args.case or RANK3_BATTERY_CASES)
        lines = [
            f"  {e['case']}: n={e['n']} f2={e['f2']} f3={e['f3']} "
            f"{'pass' if e['pass'] else 'FAIL'}"
            for e in rep["entries"]
        ]
        lines.append(f"battery: {'pass' if rep['pass'] else 'FAIL'}")
        _emit(args, rep, lines)
        return EXIT_OK if rep["pass"] else EXIT_FAIL
    if not args.case:
        print("error: need --case or --battery", file=sys.stderr)
        return EXIT_USAGE
    form, d, q = parse_case(args.case[0])
    action = build_action(form, d, q)
    st = rank3_stats(action, tri_cap=args.cap_triples)
    payload = {"case": args.case[0], **st.to_dict(), "notes": action.notes}
    _emit(
        args,
        payload,
        [
            f"{args.case[0]}: n={st.n} f1={st.f1} f2={st.f2} f3={st.f3} [{st.method}]",
            f"field: {action.notes['field']}",
            f"group order checked: {action.notes.get('group_order_checked')}",
        ],
    )
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    if args.manifest == "default":
        man = manifest_mod.default_manifest()
    else:
        man = manifest_mod.load_manifest(args.manifest)
    caps = dict(manifest_mod.DEFAULT_CAPS)
    caps.update(man.get("caps", {}))
    if args.cap_triples:
        caps["triples"] = args.cap_triples
    os.environ["WORKBENCH_CAP_TRIPLES"] = str(caps["triples"])
    if args.seed is not None:
        seed = args.seed
    elif "WORKBENCH_SEED" in os.environ:
        seed = int(os.environ["WORKBENCH_SEED"])
    else:
        seed = man.get("seed", 1)
    groups = manifest_mod.groups_for_filter(args.only)
    observed = manifest_mod.evaluate_groups(groups, seed, caps)
    claims = man["claims"]
    tags = man.get("tags", {})
    results = []
    failures = 0
    for cid in sorted(observed):
        if cid not in claims:
            continue
        expected = claims[cid]
        got = observed[cid]
        ok = got == expected
        failures += 0 if ok else 1
        results.append(
            {
                "id": cid,
                "expected": expected,
                "observed": got,
                "tag": tags.get(cid, "stated"),
                "status": "pass" if ok else "FAIL",
            }
        )
    lines = [
        f"  {r['id']}: expected {r['expected']}, observed {r['observed']} [{r['status']}]"
        for r in results
    ]
    lines.append(
        f"claims: {len(results) - failures}/{len(results)} pass"
        + (f", {failures} FAIL" if failures else "")
    )
    payload = {
        "groups": groups,
        "results": results,
        "pass": failures == 0,
        "caps": caps,
        "seed": seed,
    }
    _emit(args, payload, lines)
    if args.record:
        recorded = {
            "schema": 1,
            "seed": seed,
            "caps": caps,
            "claims": {r["id"]: r["observed"] for r in results},
            "tags": {r["id"]: tags.get(r["id"], "stated") for r in results},
        }
        with open(args.record, "w") as fh:
            json.dump(recorded, fh, sort_keys=True, indent=1)
            fh.write("\n")
        print(f"recorded {len(results)} observed values to {args.record}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="repbench",
        description="GF(2) permutation-module and orbit-statistics workbench",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", help="write machine-readable output to this path")
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("mullineux", help="rim symbol and involution image")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    common(p)
    p.set_defaults(func=cmd_mullineux)

    p = sub.add_parser("partitions", help="list (p-regular) partitions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("wilson-rank", help="incidence rank: formula vs elimination")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_wilson_rank)

    p = sub.add_parser("specht", help="Specht basis dimensions")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--shape", help="comma-separated partition, e.g. 3,2,1")
    common(p)
    p.set_defaults(func=cmd_specht)

    p = sub.add_parser("socle", help="socle series of a subset module")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--module", choices=_SOCLE_MODULES, default="m3")
    common(p)
    p.set_defaults(func=cmd_socle)

    p = sub.add_parser("dr", help="commutant dimension of a Young restriction")
    p.add_argument("--shape", required=True)
    p.add_argument("--r", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_dr)

    p = sub.add_parser("hom-battery", help="compare d_1 and d_3 over all simples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap-dim", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_hom_battery)

    p = sub.add_parser("structure-battery", help="subset-module structure claims")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_structure_battery)

    p = sub.add_parser("orbits", help="orbit statistics for a special embedding")
    p.add_argument("--spec", required=True)
    p.add_argument("--cap-pairs", type=int, default=10**6)
    p.add_argument("--cap-triples", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("e32", help="triple/pair orbit gap for block actions")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_e32)

    p = sub.add_parser("h-bound", help="first-cohomology bound for an embedding")
    p.add_argument("--spec", required=True)
    p.add_argument("--cross-check", action="store_true")
    common(p)
    p.set_defaults(func=cmd_h_bound)

    p = sub.add_parser("reduce-cert", help="reduction-criterion certificate")
    p.add_argument("--spec", required=True)
    p.add_argument("--cap-pairs", type=int, default=10**6)
    common(p)
    p.set_defaults(func=cmd_reduce_cert)

    p = sub.add_parser("bound-battery", help="f2/e3 bounds for special embeddings")
    p.add_argument("--m-lo", type=int, default=11)
    p.add_argument("--m-hi", type=int, default=13)
    common(p)
    p.set_defaults(func=cmd_bound_battery)

    p = sub.add_parser("classical", help="rank-3 classical actions")
    p.add_argument("--case", action="append")
    p.add_argument("--battery", action="store_true")
    p.add_argument("--cap-triples", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("verify-paper", help="run the manifest verification battery")
    p.add_argument("--manifest", default="default")
    p.add_argument("--only", default=None, help="claim-group prefix filter")
    p.add_argument("--record", default=None, help="write observed values here")
    p.add_argument("--cap-triples", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify_paper)

    return ap


def main(argv=None) -> int:
    from .modstruct import ResourceCapError
    from .symgrp import GroupTooLargeError

    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ResourceCapError, GroupTooLargeError) as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
