"""Command-line surface: generation, circuit synthesis, verification,
sampling, and count statistics.

Exit codes: 0 success, 1 verification/tolerance failure, 2 usage error.
All generators are deterministic and seed-free; ``--seed`` only affects
``sample``.  ``--jobs`` (default from TOMOSCHED_JOBS) parallelizes
per-clique circuit synthesis with deterministic output order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import multiprocessing
import os
import sys

import numpy as np

from tomosched import schedule as schedule_model
from tomosched import verify as verify_mod
from tomosched.algebra import PauliString
from tomosched.circuits import (
    anticommuting_groups,
    basis_rotation_circuit,
    rotation_network,
    swap_network,
)
from tomosched.majorana_cover import four_majorana_cover, pairing_cliques_1rdm
from tomosched.qubit_cover import qubit_words_k
from tomosched.schedule import (
    Schedule,
    ScheduleParseError,
    deserialize,
    schedule_from_acsets,
    schedule_from_pairings,
    schedule_from_words,
    serialize,
)
from tomosched.symmetry_cover import (
    SymmetrySet,
    bin_majoranas,
    cover_from_bins,
    predicted_count,
    synthetic_balanced_bins,
)


def _write(data: bytes, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _read_schedule(path: str) -> Schedule:
    with open(path, "rb") as fh:
        return deserialize(fh.read())


def _attach_worker(args):
    kind, payload, provenance, size = args
    from tomosched.schedule import (
        ANTICOMMUTING_SET,
        MAJORANA_PAIRING,
        QUBIT_WORD,
        Clique,
        _circuit_to_dict,
    )

    clique = Clique(kind, payload, provenance)
    if kind == MAJORANA_PAIRING:
        circ = swap_network(clique.pairing(2 * size), size)
    elif kind == QUBIT_WORD:
        circ = basis_rotation_circuit(clique.word())
    elif kind == ANTICOMMUTING_SET:
        circ = rotation_network(clique.anticommuting_set(size))
    else:
        raise ValueError(f"unknown clique kind {kind}")
    return _circuit_to_dict(circ)


def _cmd_qubit_cover(args) -> int:
    words = qubit_words_k(args.n, args.k)
    sched = schedule_from_words(args.n, args.k, words)
    _write(serialize(sched, expanded=args.expanded), args.output)
    return 0


def _cmd_majorana_cover(args) -> int:
    if args.k == 1:
        fam = pairing_cliques_1rdm(args.n)
    else:
        fam = four_majorana_cover(args.n)
    sched = schedule_from_pairings("majorana-cover", args.n, args.k, fam)
    _write(serialize(sched, expanded=args.expanded), args.output)
    return 0


def _cmd_symmetry_cover(args) -> int:
    syms = SymmetrySet(tuple(PauliString.from_label(s) for s in args.sym))
    bins = bin_majoranas(args.n, syms)
    fam = cover_from_bins(args.n, bins)
    stats = (
        ("bin_sizes", sorted(len(m) for m in bins.values())),
        ("clique_count", len(fam)),
        ("predicted_count", predicted_count(args.n, len(args.sym))),
    )
    sched = schedule_from_pairings(
        "symmetry-cover", args.n, 2, fam, symmetries=tuple(args.sym),
        stats=stats,
    )
    _write(serialize(sched, expanded=args.expanded), args.output)
    if args.csv:
        n_sym = len(args.sym)
        pred = predicted_count(args.n, n_sym)
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["n", "n_sym", "scheme", "measured_count", "predicted_count", "ratio"]
            )
            writer.writerow(
                [args.n, n_sym, "symmetry", len(fam), f"{pred:.6g}",
                 f"{len(fam) / pred:.6g}"]
            )
    return 0


def _cmd_anticommuting_groups(args) -> int:
    groups = anticommuting_groups(args.n, args.omega)
    sched = schedule_from_acsets(args.n, args.omega, groups)
    _write(serialize(sched), args.output)
    return 0


def _cmd_circuits(args) -> int:
    sched = _read_schedule(getattr(args, "from"))
    size = sched.n_fermions if sched.n_fermions is not None else sched.n_qubits
    work = [
        (cl.kind, cl.payload, cl.provenance, size) for cl in sched.cliques
    ]
    if args.jobs > 1:
        with multiprocessing.Pool(args.jobs) as pool:
            circuit_dicts = pool.map(_attach_worker, work)
    else:
        circuit_dicts = [_attach_worker(w) for w in work]
    cliques = tuple(
        schedule_model.Clique(
            cl.kind,
            cl.payload,
            cl.provenance,
            schedule_model._circuit_from_dict(cd),
        )
        for cl, cd in zip(sched.cliques, circuit_dicts)
    )
    out = schedule_model.Schedule(
        kind=sched.kind,
        n_qubits=sched.n_qubits,
        n_fermions=sched.n_fermions,
        k=sched.k,
        omega=sched.omega,
        symmetries=sched.symmetries,
        cliques=cliques,
    )
    _write(serialize(out), args.output)
    return 0


def _cmd_verify(args) -> int:
    try:
        sched = _read_schedule(args.schedule)
    except ScheduleParseError as exc:
        _write(
            json.dumps({"passed": False, "error": str(exc)}).encode() + b"\n",
            args.output,
        )
        return 1
    mode = "sampled" if args.sampled else "exhaustive"
    report = verify_mod.verify_schedule(
        sched, mode=mode, seed=args.seed,
        sample_size=args.sampled or 20_000,
    )
    _write(
        json.dumps(report, indent=2, sort_keys=True).encode() + b"\n",
        args.output,
    )
    return 0 if report["passed"] else 1


def _cmd_sample(args) -> int:
    sched = _read_schedule(args.schedule)
    if sched.kind not in ("majorana-cover", "symmetry-cover"):
        raise SystemExit("sampling is defined for pairing schedules")
    n = sched.n_fermions
    cliques = []
    for cl in sched.cliques:
        pairing = cl.pairing(2 * n)
        cliques.append((pairing, cl.circuit))
    rng = np.random.default_rng(args.seed)
    if args.state == "mixed":
        state = "mixed"
    elif args.state == "zero":
        state = np.zeros(1 << n, dtype=complex)
        state[0] = 1.0
    else:
        state = verify_mod.random_state(n, np.random.default_rng(args.state_seed))
    k = sched.k or 2
    result = verify_mod.sample_estimate(
        state, cliques, args.shots, k=k,
        include_pairs=args.include_pairs, rng=rng,
    )
    payload = {
        "shots_per_clique": args.shots,
        "n_fermions": n,
        "operators": [
            {
                "modes": list(est.modes),
                "mean": est.mean,
                "shots": est.shots,
                "var_mean": est.var_mean,
                "variance_bound": est.variance_bound,
            }
            for est in sorted(
                result.operators.values(), key=lambda e: e.modes
            )
        ],
    }
    failures = []
    if args.check_dense:
        if isinstance(state, str):
            raise SystemExit("--check-dense needs a dense state")
        from tomosched.algebra import measurable_monomial

        for rec, est in zip(
            payload["operators"],
            sorted(result.operators.values(), key=lambda e: e.modes),
        ):
            truth = verify_mod.dense_expectation_of_monomial(
                measurable_monomial(est.modes), state, n
            )
            sigma = math.sqrt(max(1e-12, 1 - truth * truth) / est.shots)
            rec["expected"] = truth
            rec["within_tolerance"] = (
                abs(est.mean - truth) <= args.check_dense * sigma + 1e-9
            )
            if not rec["within_tolerance"]:
                failures.append(rec["modes"])
        payload["tolerance_sigma"] = args.check_dense
        payload["failures"] = failures
    _write(
        json.dumps(payload, indent=2, sort_keys=True).encode() + b"\n",
        args.output,
    )
    return 1 if failures else 0


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",") if x]


def stats_rows(scheme: str, n_values, sym_counts) -> list[dict]:
    rows = []
    for n in n_values:
        if scheme == "qubit-k2":
            measured = len(qubit_words_k(n, 2))
            predicted = 6 * (n - 1).bit_length() + 3
            rows.append(_stats_row(n, "", scheme, measured, predicted))
        elif scheme == "qubit-k3":
            measured = len(qubit_words_k(n, 3))
            predicted = 27 * (n - 1).bit_length() ** 2
            rows.append(_stats_row(n, "", scheme, measured, predicted))
        elif scheme == "1rdm":
            measured = len(pairing_cliques_1rdm(n))
            rows.append(_stats_row(n, "", scheme, measured, 2 * n - 1))
        elif scheme == "2rdm":
            measured = len(four_majorana_cover(n))
            rows.append(_stats_row(n, "", scheme, measured, 10 / 3 * n * n))
        elif scheme == "symmetry":
            for s in sym_counts:
                fam = cover_from_bins(n, synthetic_balanced_bins(n, s))
                rows.append(
                    _stats_row(n, s, scheme, len(fam), predicted_count(n, s))
                )
        else:
            raise SystemExit(f"unknown scheme {scheme!r}")
    return rows


def _stats_row(n, n_sym, scheme, measured, predicted):
    return {
        "n": n,
        "n_sym": n_sym,
        "scheme": scheme,
        "measured_count": measured,
        "predicted_count": f"{predicted:.6g}",
        "ratio": f"{measured / float(predicted):.6g}",
    }


def _cmd_stats(args) -> int:
    if args.n:
        n_values = _parse_range(args.n)
    else:
        n_values = [
            n
            for n in (16, 32, 64, 128, 256, 512, 1024)
            if n <= args.n_max
        ] or [args.n_max]
    sym_counts = _parse_range(args.sym_count)
    rows = stats_rows(args.scheme, n_values, sym_counts)
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf,
        fieldnames=["n", "n_sym", "scheme", "measured_count",
                    "predicted_count", "ratio"],
    )
    writer.writeheader()
    writer.writerows(rows)
    _write(buf.getvalue().encode(), args.csv)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tomosched",
        description="Measurement scheduling for qubit and fermionic RDM tomography",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("TOMOSCHED_JOBS", "1")),
        help="parallel workers for per-clique work (default TOMOSCHED_JOBS or 1)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qubit-cover", help="Pauli-word cover of all k-qubit operators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("-o", "--output")
    p.add_argument("--expanded", action="store_true")
    p.set_defaults(func=_cmd_qubit_cover)

    p = sub.add_parser("majorana-cover", help="pairing cover of 2k-mode operators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, choices=(1, 2), default=2)
    p.add_argument("-o", "--output")
    p.add_argument("--expanded", action="store_true")
    p.set_defaults(func=_cmd_majorana_cover)

    p = sub.add_parser("symmetry-cover", help="cover of symmetry-conserved operators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sym", action="append", default=[],
                   help="Pauli-word symmetry (repeatable)")
    p.add_argument("-o", "--output")
    p.add_argument("--csv", help="also write a one-row count-vs-prediction CSV")
    p.add_argument("--expanded", action="store_true")
    p.set_defaults(func=_cmd_symmetry_cover)

    p = sub.add_parser("anticommuting-groups",
                       help="partition 4-mode operators into anticommuting sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_anticommuting_groups)

    p = sub.add_parser("circuits", help="attach measurement circuits to a schedule")
    p.add_argument("--from", dest="from", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_circuits)

    p = sub.add_parser("verify", help="run the oracle suite on a schedule")
    p.add_argument("--schedule", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true", default=True)
    group.add_argument("--sampled", type=int, default=0,
                       help="sampled verification with this many probes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sample", help="simulate sampling a pairing schedule")
    p.add_argument("--schedule", required=True)
    p.add_argument("--shots", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--state", choices=("mixed", "zero", "random"), default="mixed")
    p.add_argument("--state-seed", type=int, default=1)
    p.add_argument("--include-pairs", action="store_true")
    p.add_argument("--check-dense", type=float, default=0.0,
                   help="verify estimates against dense truth at this sigma")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("stats", help="measured vs predicted clique counts (CSV)")
    p.add_argument("--scheme", required=True,
                   choices=("qubit-k2", "qubit-k3", "1rdm", "2rdm", "symmetry"))
    p.add_argument("--n", help="explicit N values, e.g. 16,32,64")
    p.add_argument("--n-max", type=int, default=64,
                   help="sweep cap (default 64; quadratic counts stay desk-scale)")
    p.add_argument("--sym-count", default="0..4",
                   help="symmetry counts for --scheme symmetry, e.g. 0..4")
    p.add_argument("--csv", help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_stats)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except SystemExit as exc:
        if exc.code is None or isinstance(exc.code, str):
            print(exc, file=sys.stderr)
            return 2
        return exc.code
    except ScheduleParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
