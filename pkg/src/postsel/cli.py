"""Command-line interface.

Subcommands:

- ``simulate``: exact statistics of a circuit file on an input assignment,
  optionally cross-checked against the branch-enumeration oracle.
- ``compile``: build one of the machine-to-circuit constructions from
  machine files and write the circuit in the text format.
- ``oracle``: branch-enumeration probability of a constraint set.
- ``verify``: run verification suites and report pass/fail conditions.

Exit codes: 0 success, 1 a verification or cross-check failed, 2 bad input
(syntax errors, missing files, inconsistent parameters).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .circuit import default_input, expand_mcx, parse_circuit, serialize_circuit
from .constructions import (
    compile_fqp_to_exp,
    compile_gap_squared,
    compile_pair_postsel,
    compile_pp_instance,
    rescale_postsel,
)
from .counting import parse_machine
from .errors import PostselError
from .exactring import DyadicRational
from .pathsum import path_sum
from .scenarios import SUITES, run_suite
from .simulator import joint_prob, measure_prob, postselect_stats, run


def _read(path: str) -> str:
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _cmd_simulate(args) -> int:
    circ = parse_circuit(_read(args.circuit))
    bits = args.input if args.input is not None else default_input(circ)
    state = run(expand_mcx(circ), bits)
    p_out = measure_prob(state, circ.output, 1)
    rows: list[tuple[str, str]] = [("prob_output", str(p_out))]
    checks: list[tuple[str, Fraction]] = [
        ("output", p_out.as_fraction()),
    ]
    if circ.postselect is not None:
        p_post = measure_prob(state, circ.postselect, 1)
        p_joint = joint_prob(state, [(circ.output, 1), (circ.postselect, 1)])
        rows.append(("prob_postselect", str(p_post)))
        rows.append(("prob_joint", str(p_joint)))
        if p_post.as_fraction() != 0:
            rows.append(("conditional", str(p_joint.as_fraction() / p_post.as_fraction())))
        else:
            rows.append(("conditional", "undefined"))
        checks.append(("postselect", p_post.as_fraction()))
        checks.append(("joint", p_joint.as_fraction()))
    status = 0
    if args.oracle:
        matched = True
        for name, dense_val in checks:
            if name == "output":
                constraints = [(circ.output, 1)]
            elif name == "postselect":
                constraints = [(circ.postselect, 1)]
            else:
                constraints = [(circ.output, 1), (circ.postselect, 1)]
            g, m = path_sum(circ, bits, constraints)
            matched = matched and Fraction(g, 1 << m) == dense_val
        rows.append(("oracle", "match" if matched else "mismatch"))
        if not matched:
            status = 1
    if args.report == "machine-readable":
        for key, val in rows:
            print(f"{key}={val}")
    else:
        names = {
            "prob_output": "P(output=1)",
            "prob_postselect": "P(postselect=1)",
            "prob_joint": "P(output=1, postselect=1)",
            "conditional": "P(output=1 | postselect=1)",
            "oracle": "oracle cross-check",
        }
        for key, val in rows:
            print(f"{names[key]} = {val}")
    return status


def _cmd_compile(args) -> int:
    m1 = parse_machine(_read(args.machine1))
    m2 = parse_machine(_read(args.machine2)) if args.machine2 else None
    kind = args.construction
    w = args.input
    if kind == "gapsq":
        circ = compile_gap_squared(m1, w)
    elif kind in ("pair", "wpp", "app"):
        if m2 is None:
            raise ValueError(f"construction {kind!r} needs --machine2")
        mode = {"pair": "fp_of_input", "wpp": "none", "app": "gap_of_length"}[kind]
        k = 0 if kind == "wpp" else args.k
        circ = compile_pair_postsel(m1, m2, w, k, mode)
    elif kind in ("fqp2exp", "rescale"):
        if m2 is None:
            raise ValueError(f"construction {kind!r} needs --machine2")
        base = compile_pair_postsel(m1, m2, w, args.k)
        if kind == "rescale":
            circ = rescale_postsel(base, args.t)
        else:
            f, h_exp = args.f, args.h
            if f is None or h_exp is None:
                st = postselect_stats(expand_mcx(base), default_input(base))
                f, h_exp = st.p_post.n, st.p_post.k
            circ = compile_fqp_to_exp(base, f, h_exp)
    else:  # pp
        if m2 is None:
            raise ValueError("construction 'pp' needs --machine2")
        circ = compile_pp_instance(m1, m2, w, args.r)
    with open(args.output, "w", encoding="ascii") as fh:
        fh.write(serialize_circuit(circ))
    print(
        f"wrote {args.output}: width={circ.width} gates={len(circ.gates)} "
        f"h={circ.h_count}"
    )
    return 0


def _cmd_oracle(args) -> int:
    circ = parse_circuit(_read(args.circuit))
    bits = args.input if args.input is not None else default_input(circ)
    if args.constrain:
        constraints = [(int(q), int(v)) for q, v in args.constrain]
    else:
        constraints = [(circ.output, 1)]
    g, m = path_sum(circ, bits, constraints)
    print(f"g={g}")
    print(f"m={m}")
    print(f"prob={DyadicRational(g, m)}")
    return 0


def _cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.seed, args.r)
    chunks = []
    for rep in reports:
        chunks.append(rep.to_machine() if args.format == "machine" else rep.to_text())
    sys.stdout.write("".join(chunks))
    if args.format == "text":
        good = sum(1 for rep in reports if rep.passed)
        print(f"scenarios passed: {good}/{len(reports)}")
    return 0 if all(rep.passed for rep in reports) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="postsel",
        description="Exact laboratory for postselected circuits and counting gaps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="exact statistics of a circuit file")
    s.add_argument("--circuit", required=True, help="circuit file")
    s.add_argument("--input", help="input bitstring (default: declared ancillas, else 0)")
    s.add_argument(
        "--oracle", action="store_true", help="cross-check against branch enumeration"
    )
    s.add_argument(
        "--report", choices=["text", "machine-readable"], default="text"
    )
    s.set_defaults(func=_cmd_simulate)

    c = sub.add_parser("compile", help="build a construction from machine files")
    c.add_argument(
        "--construction",
        required=True,
        choices=["gapsq", "pair", "wpp", "app", "fqp2exp", "rescale", "pp"],
    )
    c.add_argument("--machine1", required=True, help="machine file")
    c.add_argument("--machine2", help="second machine file")
    c.add_argument("--input", default="", help="instance bits baked into the circuit")
    c.add_argument("--k", type=int, default=0, help="padding pairs (pair/app)")
    c.add_argument("--t", type=int, default=1, help="rescale exponent (rescale)")
    c.add_argument("--f", type=int, help="postselection numerator override (fqp2exp)")
    c.add_argument("--h", type=int, help="postselection exponent override (fqp2exp)")
    c.add_argument("--r", type=int, default=4, help="sharpness exponent (pp)")
    c.add_argument("-o", "--output", required=True, help="circuit file to write")
    c.set_defaults(func=_cmd_compile)

    o = sub.add_parser("oracle", help="branch-enumeration probability")
    o.add_argument("--circuit", required=True)
    o.add_argument("--input")
    o.add_argument(
        "--constrain",
        nargs=2,
        action="append",
        metavar=("Q", "V"),
        help="require qubit Q to equal V (repeatable; default: output 1)",
    )
    o.set_defaults(func=_cmd_oracle)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=list(SUITES), default="all")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--r", type=int, default=4, help="sharpness for parametric scenarios")
    v.add_argument("--format", choices=["text", "machine"], default="text")
    v.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PostselError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
