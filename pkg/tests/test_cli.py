"""Command-line interface: outputs, exit codes, file round-trips."""

from fractions import Fraction

import pytest

from postsel import (
    default_input,
    expand_mcx,
    make_gap_machine,
    parse_circuit,
    postselect_stats,
    serialize_machine,
)
from postsel.cli import main

BELL = """\
qubits 2
h 0
cx 0 1
output 1
postselect 0
"""


@pytest.fixture
def bell_file(tmp_path):
    p = tmp_path / "bell.circ"
    p.write_text(BELL)
    return str(p)


@pytest.fixture
def machine_files(tmp_path):
    """Two instance-free machines with gaps 2 and -2 over 2 path bits."""
    p1 = tmp_path / "m1.machine"
    p1.write_text(serialize_machine(make_gap_machine(2, 2)))
    p2 = tmp_path / "m2.machine"
    p2.write_text(serialize_machine(make_gap_machine(-2, 2)))
    return str(p1), str(p2)


# ===================================================================
# simulate
# ===================================================================


def test_simulate_text_report(bell_file, capsys):
    assert main(["simulate", "--circuit", bell_file, "--input", "00"]) == 0
    out = capsys.readouterr().out
    assert "P(output=1) = 1/2^1" in out
    assert "P(postselect=1) = 1/2^1" in out
    assert "P(output=1, postselect=1) = 1/2^1" in out
    assert "P(output=1 | postselect=1) = 1" in out


def test_simulate_machine_report_with_oracle(bell_file, capsys):
    rc = main(
        [
            "simulate",
            "--circuit",
            bell_file,
            "--input",
            "00",
            "--oracle",
            "--report",
            "machine-readable",
        ]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "prob_output=1/2^1" in out
    assert "oracle=match" in out


def test_simulate_default_input_is_ancilla_canonical(tmp_path, capsys):
    p = tmp_path / "anc.circ"
    p.write_text("qubits 2\nancilla 1 1\ncx 1 0\noutput 0\n")
    assert main(["simulate", "--circuit", str(p)]) == 0
    assert "P(output=1) = 1/2^0" in capsys.readouterr().out


def test_simulate_missing_file_exits_2(capsys):
    assert main(["simulate", "--circuit", "/nonexistent.circ"]) == 2
    assert "error:" in capsys.readouterr().err


def test_simulate_syntax_error_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.circ"
    p.write_text("qubits 2\nzz 0\noutput 0\n")
    assert main(["simulate", "--circuit", str(p)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err


# ===================================================================
# oracle
# ===================================================================


def test_oracle_default_constraint_is_output(bell_file, capsys):
    assert main(["oracle", "--circuit", bell_file, "--input", "00"]) == 0
    out = capsys.readouterr().out
    assert "g=1" in out and "m=1" in out and "prob=1/2^1" in out


def test_oracle_explicit_constraints(bell_file, capsys):
    rc = main(
        [
            "oracle",
            "--circuit",
            bell_file,
            "--input",
            "00",
            "--constrain",
            "0",
            "1",
            "--constrain",
            "1",
            "0",
        ]
    )
    assert rc == 0
    assert "prob=0/2^0" in capsys.readouterr().out


# ===================================================================
# compile
# ===================================================================


def test_compile_gapsq_roundtrip(machine_files, tmp_path, capsys):
    m1, _ = machine_files
    out_path = str(tmp_path / "gapsq.circ")
    rc = main(
        ["compile", "--construction", "gapsq", "--machine1", m1, "-o", out_path]
    )
    assert rc == 0
    assert f"wrote {out_path}" in capsys.readouterr().out
    circ = parse_circuit(open(out_path).read())
    from postsel import measure_prob, run

    state = run(expand_mcx(circ), default_input(circ))
    assert measure_prob(state, circ.output, 1).as_fraction() == Fraction(1, 4)


def test_compile_pair_statistics(machine_files, tmp_path):
    m1, m2 = machine_files
    out_path = str(tmp_path / "pair.circ")
    rc = main(
        [
            "compile",
            "--construction",
            "pair",
            "--machine1",
            m1,
            "--machine2",
            m2,
            "-o",
            out_path,
        ]
    )
    assert rc == 0
    circ = parse_circuit(open(out_path).read())
    st = postselect_stats(expand_mcx(circ), default_input(circ))
    assert st.p_post.as_fraction() == Fraction(1, 8)
    assert st.p_cond == Fraction(1, 2)


@pytest.mark.parametrize("kind", ["wpp", "app"])
def test_compile_pair_variants(kind, machine_files, tmp_path):
    m1, m2 = machine_files
    out_path = str(tmp_path / f"{kind}.circ")
    rc = main(
        [
            "compile",
            "--construction",
            kind,
            "--machine1",
            m1,
            "--machine2",
            m2,
            "--k",
            "1",
            "-o",
            out_path,
        ]
    )
    assert rc == 0
    circ = parse_circuit(open(out_path).read())
    st = postselect_stats(expand_mcx(circ), default_input(circ))
    # wpp ignores --k; app honors it
    expect = Fraction(1, 8) if kind == "wpp" else Fraction(1, 32)
    assert st.p_post.as_fraction() == expect


def test_compile_rescale_and_fqp2exp(machine_files, tmp_path):
    m1, m2 = machine_files
    for kind, flags, expect_post in (
        ("rescale", ["--t", "2"], Fraction(1, 32)),
        ("fqp2exp", [], Fraction(1, 8)),  # base P(p)=1/2^3 -> forced to 2**-3
    ):
        out_path = str(tmp_path / f"{kind}.circ")
        rc = main(
            [
                "compile",
                "--construction",
                kind,
                "--machine1",
                m1,
                "--machine2",
                m2,
                "-o",
                out_path,
                *flags,
            ]
        )
        assert rc == 0
        circ = parse_circuit(open(out_path).read())
        st = postselect_stats(expand_mcx(circ), default_input(circ))
        assert st.p_post.as_fraction() == expect_post


def test_compile_pp(machine_files, tmp_path):
    m1, m2 = machine_files
    out_path = str(tmp_path / "pp.circ")
    rc = main(
        [
            "compile",
            "--construction",
            "pp",
            "--machine1",
            m1,
            "--machine2",
            m2,
            "-o",
            out_path,
        ]
    )
    assert rc == 0
    circ = parse_circuit(open(out_path).read())
    st = postselect_stats(expand_mcx(circ), default_input(circ))
    # Gg = Gf = 2, q_exp = q'_exp = 4: P(p) = (3*4+4)/2**10 = 1/64
    assert st.p_post.as_fraction() == Fraction(1, 64)
    assert st.p_cond == Fraction(3, 4)


def test_compile_pair_needs_second_machine(machine_files, tmp_path, capsys):
    m1, _ = machine_files
    rc = main(
        [
            "compile",
            "--construction",
            "pair",
            "--machine1",
            m1,
            "-o",
            str(tmp_path / "x.circ"),
        ]
    )
    assert rc == 2
    assert "machine2" in capsys.readouterr().err


def test_compile_zero_gap_pair_exits_2(tmp_path, capsys):
    z = tmp_path / "zero.machine"
    z.write_text(serialize_machine(make_gap_machine(0, 2)))
    rc = main(
        [
            "compile",
            "--construction",
            "pair",
            "--machine1",
            str(z),
            "--machine2",
            str(z),
            "-o",
            str(tmp_path / "x.circ"),
        ]
    )
    assert rc == 2
    assert "error:" in capsys.readouterr().err


# ===================================================================
# verify
# ===================================================================


def test_verify_single_suite_text(capsys):
    rc = main(["verify", "--suite", "algebra", "--seed", "42", "--r", "3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "error-algebra: pass" in out
    assert "scenarios passed: 1/1" in out


def test_verify_machine_format_is_pure_rows(capsys):
    rc = main(["verify", "--suite", "algebra", "--format", "machine"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "scenarios passed" not in out
    for line in out.strip().splitlines():
        assert line.startswith("scenario=")
        assert line.endswith("result=pass")


def test_verify_seed_determinism(capsys):
    main(["verify", "--suite", "wpp", "--seed", "5", "--format", "machine"])
    first = capsys.readouterr().out
    main(["verify", "--suite", "wpp", "--seed", "5", "--format", "machine"])
    assert capsys.readouterr().out == first
