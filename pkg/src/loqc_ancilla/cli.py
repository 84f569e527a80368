"""Command-line front end.

Subcommands
-----------
build      prepare a register state and compare it against its oracle
verify     fidelity between two state files
teleport   exhaustive outcome table for one teleport
czgate     truth-table report for the double-teleport controlled sign
dots       compile and run the dot-array preparation
resources  gate counts and success probabilities

Exit codes: 0 success, 1 a computed fidelity fell below tolerance,
2 usage or input errors.  States are exchanged as JSON files in the
package's state schema; all numbers are emitted at full precision.
Relative output paths resolve against $LOQC_ANCILLA_OUTPUT_DIR when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from .errors import AncillaError
from .fock import SparseState, fidelity
from .pipeline import (
    PhaseMethod,
    build_entangled_pair,
    build_single_register,
    direct_oracle_pair,
    direct_oracle_single,
)
from .profiles import AmplitudeProfile
from .resources import failure_scaling, gate_counts
from .teleport import (
    Classification,
    InputQubit,
    cz_via_double_teleportation,
    failure_probability,
    teleport,
)
from . import dots as dots_mod

OUTPUT_DIR_ENV = "LOQC_ANCILLA_OUTPUT_DIR"


def _fmt(value: float) -> str:
    return repr(float(value))


def _resolve(path: str | None) -> str | None:
    if path is None or os.path.isabs(path):
        return path
    base = os.environ.get(OUTPUT_DIR_ENV)
    return os.path.join(base, path) if base else path


def _write_text(path: str | None, text: str) -> None:
    """Write atomically (temp file, then rename); stdout when no path."""
    if path is None:
        sys.stdout.write(text)
        return
    path = os.path.abspath(path)
    directory = os.path.dirname(path)
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_profile(source: str, n: int) -> AmplitudeProfile:
    if source == "constant":
        return AmplitudeProfile.constant(n)
    if source == "delta":
        return AmplitudeProfile.delta(n)
    profile = AmplitudeProfile.load(source)
    if profile.n != n:
        raise AncillaError(f"profile file is for n={profile.n}, requested n={n}")
    return profile


def _method(name: str) -> PhaseMethod:
    return PhaseMethod(name)


def _parse_qubit(text: str) -> InputQubit:
    parts = [float(v) for v in text.split(",")]
    if len(parts) == 2:
        return InputQubit.of(complex(parts[0]), complex(parts[1]))
    if len(parts) == 4:
        return InputQubit.of(complex(parts[0], parts[1]), complex(parts[2], parts[3]))
    raise AncillaError(
        "--input wants 'a,b' (real amplitudes) or 'a_re,a_im,b_re,b_im'"
    )


def _state_json(state: SparseState) -> str:
    return json.dumps(state.to_json_dict(), indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def _cmd_build(args: argparse.Namespace) -> int:
    profile = _load_profile(args.profile, args.n)
    if args.registers == "single":
        state = build_single_register(args.n, profile)
        oracle = direct_oracle_single(args.n, profile)
    else:
        state = build_entangled_pair(args.n, profile, _method(args.method))
        oracle = direct_oracle_pair(args.n, profile)
    fid = fidelity(state, oracle)
    _write_text(_resolve(args.output), _state_json(state))
    print(
        f"n={args.n} registers={args.registers} method={args.method} "
        f"terms={len(state)} fidelity={_fmt(fid)}",
        file=sys.stderr,
    )
    return 0 if fid >= 1.0 - args.tolerance else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    with open(args.state_a, "r", encoding="utf-8") as fh:
        a = SparseState.from_json_dict(json.load(fh))
    with open(args.state_b, "r", encoding="utf-8") as fh:
        b = SparseState.from_json_dict(json.load(fh))
    fid = fidelity(a.normalized(), b.normalized())
    print(_fmt(fid))
    return 0 if fid >= 1.0 - args.tolerance else 1


def _cmd_teleport(args: argparse.Namespace) -> int:
    profile = _load_profile(args.profile, args.n)
    qubit = _parse_qubit(args.input)
    ancilla = direct_oracle_single(args.n, profile)
    outcomes = teleport(qubit, ancilla, args.n)

    if args.format == "csv":
        rows = []
        for o in outcomes:
            rows.append(
                [
                    ";".join(map(str, o.counts)),
                    str(o.k),
                    _fmt(o.probability),
                    o.classification.value,
                    "" if o.fidelity is None else _fmt(o.fidelity),
                ]
            )
        text = _csv_text(
            ["outcome_counts", "k", "probability", "classification", "fidelity"], rows
        )
    else:
        text = (
            json.dumps(
                {
                    "n": args.n,
                    "failure_probability": failure_probability(outcomes),
                    "outcomes": [
                        {
                            "counts": list(o.counts),
                            "k": o.k,
                            "probability": o.probability,
                            "classification": o.classification.value,
                            "fidelity": o.fidelity,
                        }
                        for o in outcomes
                    ],
                },
                indent=2,
            )
            + "\n"
        )
    _write_text(_resolve(args.output), text)
    print(f"failure_probability={_fmt(failure_probability(outcomes))}", file=sys.stderr)
    bad = [
        o
        for o in outcomes
        if o.classification is Classification.SUCCESS
        and o.fidelity < 1.0 - args.tolerance
    ]
    return 1 if bad else 0


def _cmd_czgate(args: argparse.Namespace) -> int:
    profile = _load_profile(args.profile, args.n)
    ancilla = direct_oracle_pair(args.n, profile)
    basis = {
        "00": (InputQubit.zero(), InputQubit.zero()),
        "01": (InputQubit.zero(), InputQubit.one()),
        "10": (InputQubit.one(), InputQubit.zero()),
        "11": (InputQubit.one(), InputQubit.one()),
    }
    rows = []
    worst = 1.0
    for label, (qa, qb) in basis.items():
        result = cz_via_double_teleportation(qa, qb, ancilla, args.n)
        fid = result.min_fidelity if result.min_fidelity is not None else 0.0
        worst = min(worst, fid)
        rows.append(
            [
                label,
                _fmt(result.success_probability),
                _fmt(result.failure_probability),
                _fmt(fid),
            ]
        )
    if args.format == "csv":
        text = _csv_text(
            ["input", "success_probability", "failure_probability", "min_fidelity"],
            rows,
        )
    else:
        text = (
            json.dumps(
                {
                    "n": args.n,
                    "rows": [
                        {
                            "input": r[0],
                            "success_probability": float(r[1]),
                            "failure_probability": float(r[2]),
                            "min_fidelity": float(r[3]),
                        }
                        for r in rows
                    ],
                },
                indent=2,
            )
            + "\n"
        )
    _write_text(_resolve(args.output), text)
    return 0 if worst >= 1.0 - args.tolerance else 1


def _cmd_dots(args: argparse.Namespace) -> int:
    profile = _load_profile(args.profile, args.n)
    photonic, schedule = dots_mod.prepare_pair(
        args.n, profile, intra_coefficient=args.intra_coefficient
    )
    oracle = direct_oracle_pair(args.n, profile)
    fid = fidelity(photonic, oracle)
    if args.schedule_out:
        _write_text(_resolve(args.schedule_out), schedule.to_jsonl())
    if args.state_out:
        _write_text(_resolve(args.state_out), _state_json(photonic))
    report = {
        "n": args.n,
        "pulses": len(schedule.pulses),
        "fidelity": fid,
    }
    _write_text(_resolve(args.output), json.dumps(report, indent=2) + "\n")
    return 0 if fid >= 1.0 - args.tolerance else 1


def _cmd_resources(args: argparse.Namespace) -> int:
    methods = (
        [PhaseMethod.PAIRWISE_GATES, PhaseMethod.PARITY_ANCILLA]
        if args.method == "both"
        else [_method(args.method)]
    )
    rows = []
    for method in methods:
        report = gate_counts(args.n, method, args.p)
        scaling = failure_scaling(args.n)
        rows.append(
            [
                str(args.n),
                method.value,
                str(report.conditional_transfer_gates),
                str(report.phase_gates),
                str(report.total_gates),
                _fmt(report.per_gate_success),
                _fmt(report.success_probability),
                _fmt(scaling.klm),
                _fmt(scaling.high_fidelity),
            ]
        )
    header = [
        "n",
        "method",
        "conditional_gates",
        "phase_gates",
        "total",
        "p",
        "success_probability",
        "klm_failure",
        "hf_failure",
    ]
    if args.format == "csv":
        text = _csv_text(header, rows)
    else:
        text = (
            json.dumps(
                [dict(zip(header, row)) for row in rows],
                indent=2,
            )
            + "\n"
        )
    _write_text(_resolve(args.output), text)
    return 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, method: bool = True) -> None:
    sub.add_argument("--n", type=int, required=True, help="ancilla photon count")
    sub.add_argument(
        "--profile",
        default="constant",
        help="constant | delta | path to a profile JSON file",
    )
    if method:
        sub.add_argument(
            "--method",
            default="pairwise",
            choices=["pairwise", "parity", "oracle"],
            help="entangling phase method",
        )
    sub.add_argument("--tolerance", type=float, default=1e-10)
    sub.add_argument("--seed", type=int, default=0, help="reserved; kept for reproducible configs")
    sub.add_argument("--format", default="csv", choices=["json", "csv"])
    sub.add_argument("--output", default=None, help="output file (stdout when omitted)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loqc-ancilla",
        description="Exact preparation, teleportation and accounting of "
        "entangled multiphoton register states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="prepare a register state, compare to oracle")
    _add_common(p)
    p.add_argument("--registers", default="pair", choices=["single", "pair"])
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("verify", help="fidelity between two state files")
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("teleport", help="exhaustive teleport outcome table")
    _add_common(p, method=False)
    p.add_argument("--input", default="1,0", help="qubit amplitudes a,b")
    p.set_defaults(func=_cmd_teleport)

    p = sub.add_parser("czgate", help="double-teleport controlled-sign report")
    _add_common(p, method=False)
    p.set_defaults(func=_cmd_czgate)

    p = sub.add_parser("dots", help="dot-array preparation end to end")
    _add_common(p, method=False)
    p.add_argument("--intra-coefficient", type=float, default=0.0)
    p.add_argument("--schedule-out", default=None, help="write the pulse program (JSON lines)")
    p.add_argument("--state-out", default=None, help="write the emitted photonic state")
    p.set_defaults(func=_cmd_dots)

    p = sub.add_parser("resources", help="gate counts and success probabilities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--method", default="both", choices=["pairwise", "parity", "both"]
    )
    p.add_argument("--p", type=float, default=0.25, help="per-gate success probability")
    p.add_argument("--format", default="csv", choices=["json", "csv"])
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_resources)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AncillaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
