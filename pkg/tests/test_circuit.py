"""Circuit IR: text grammar, validation, classical action, mcx expansion."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from postsel import (
    Circuit,
    CircuitSyntaxError,
    Gate,
    InsufficientAncillas,
    apply_gate_classical,
    ccx,
    cx,
    default_input,
    expand_mcx,
    h,
    mcx,
    parse_circuit,
    serialize_circuit,
    x,
)

# ===================================================================
# gate constructors
# ===================================================================


def test_mcx_helper_normalizes_by_control_count():
    assert mcx([], 0).kind == "x"
    assert mcx([1], 0).kind == "cx"
    assert mcx([1, 2], 0).kind == "ccx"
    assert mcx([1, 2, 3], 0).kind == "mcx"
    assert mcx([1, 2, 3, 4], 0).kind == "mcx"


def test_gate_rejects_malformed():
    with pytest.raises(ValueError):
        Gate("cz", 0)
    with pytest.raises(ValueError):
        Gate("cx", 0, (1, 2), (False, False))
    with pytest.raises(ValueError):
        Gate("mcx", 0, (1, 2), (False, False))  # too few controls for the macro
    with pytest.raises(ValueError):
        cx(0, 0)  # target is also a control
    with pytest.raises(ValueError):
        Gate("ccx", 2, (1, 1), (False, False))  # duplicate control
    with pytest.raises(ValueError):
        Gate("cx", 0, (1,), ())  # missing polarity flag


def test_circuit_validation():
    with pytest.raises(ValueError):
        Circuit(0, (), 0)
    with pytest.raises(ValueError):
        Circuit(2, (), 5)  # output outside register
    with pytest.raises(ValueError):
        Circuit(2, (), 0, postselect=0)  # output == postselect
    with pytest.raises(ValueError):
        Circuit(2, (cx(0, 5),), 0)  # gate off the register
    with pytest.raises(ValueError):
        Circuit(2, (), 0, ancillas=((1, 2),))  # ancilla value not a bit
    with pytest.raises(ValueError):
        Circuit(2, (), 0, ancillas=((1, 0), (1, 1)))  # declared twice


def test_default_input_uses_ancilla_values():
    c = Circuit(5, (), 0, ancillas=((1, 1), (3, 1)))
    assert default_input(c) == "01010"
    assert default_input(Circuit(3, (), 0)) == "000"


# ===================================================================
# classical gate action
# ===================================================================


def test_classical_action_x_and_cx():
    assert apply_gate_classical(0b000, x(1)) == 0b010
    assert apply_gate_classical(0b001, cx(0, 2)) == 0b101
    assert apply_gate_classical(0b000, cx(0, 2)) == 0b000
    assert apply_gate_classical(0b000, cx(0, 2, neg=True)) == 0b100


def test_classical_action_ccx_truth_table():
    g = ccx(0, 1, 2)
    for s in range(8):
        expect = s ^ (0b100 if (s & 0b11) == 0b11 else 0)
        assert apply_gate_classical(s, g) == expect


def test_classical_action_rejects_h():
    with pytest.raises(ValueError):
        apply_gate_classical(0, h(0))


@given(st.integers(min_value=0, max_value=63), st.data())
def test_classical_gates_are_involutions(state, data):
    n_ctl = data.draw(st.integers(min_value=0, max_value=4))
    qubits = data.draw(
        st.permutations(range(6)).map(lambda p: p[: n_ctl + 1])
    )
    negs = data.draw(st.lists(st.booleans(), min_size=n_ctl, max_size=n_ctl))
    g = mcx(qubits[:-1], qubits[-1], negs)
    assert apply_gate_classical(apply_gate_classical(state, g), g) == state


# ===================================================================
# mcx expansion
# ===================================================================


def _classical_run(circuit: Circuit, state: int) -> int:
    for g in circuit.gates:
        state = apply_gate_classical(state, g)
    return state


def test_expand_mcx_matches_direct_action_exhaustively():
    """Every control pattern and polarity; ladder vs direct mcx semantics."""
    rng = random.Random(7)
    for n_ctl in (3, 4, 5):
        width = n_ctl + 1 + (n_ctl - 2)  # controls + target + borrowed pool
        anc = tuple((q, 0) for q in range(n_ctl + 1, width))
        for _ in range(4):
            order = list(range(n_ctl + 1))
            rng.shuffle(order)
            ctls, tgt = order[:-1], order[-1]
            negs = [rng.random() < 0.5 for _ in ctls]
            g = mcx(ctls, tgt, negs)
            c = Circuit(width, (g,), 0, ancillas=anc)
            ex = expand_mcx(c)
            assert all(gate.kind != "mcx" for gate in ex.gates)
            for state in range(1 << width):
                assert _classical_run(ex, state) == apply_gate_classical(state, g)


def test_expand_mcx_restores_dirty_ancillas():
    """Borrowed work qubits come back to their initial value, whatever it was."""
    g = mcx([0, 1, 2, 3], 4)
    c = Circuit(7, (g,), 0, ancillas=((5, 0), (6, 0)))
    ex = expand_mcx(c)
    for state in range(1 << 7):  # including states where the pool is dirty
        after = _classical_run(ex, state)
        assert (after >> 5) & 0b11 == (state >> 5) & 0b11


def test_expand_mcx_skips_pool_qubits_inside_the_gate():
    # Pool qubit 3 participates in the gate, so only 4 and 5 are borrowable.
    g = mcx([0, 1, 2, 3], 6)
    c = Circuit(7, (g,), 0, ancillas=((3, 1), (4, 0), (5, 0)))
    ex = expand_mcx(c)
    borrowed = {q for gate in ex.gates for q in gate.qubits} - set(g.qubits)
    assert borrowed <= {4, 5}


def test_expand_mcx_insufficient_pool():
    g = mcx([0, 1, 2, 3], 4)
    c = Circuit(6, (g,), 0, ancillas=((5, 0),))
    with pytest.raises(InsufficientAncillas):
        expand_mcx(c)


def test_expand_mcx_cost_is_linear():
    """4*(n-2) CCX per all-positive expansion."""
    for n_ctl in (3, 4, 5, 6):
        width = 2 * n_ctl
        anc = tuple((q, 0) for q in range(n_ctl + 1, width))
        c = Circuit(width, (mcx(range(n_ctl), n_ctl),), 0, ancillas=anc)
        ex = expand_mcx(c)
        assert len(ex.gates) == 4 * (n_ctl - 2)
        assert all(gate.kind == "ccx" for gate in ex.gates)


# ===================================================================
# text format
# ===================================================================

SAMPLE = """\
# three-qubit demo
qubits 4
ancilla 3 1
h 0
x 1
cx !0 1
ccx 0 !1 2
mcx 0 1 !2 3
output 2
postselect 1
"""


def test_parse_sample():
    c = parse_circuit(SAMPLE)
    assert c.width == 4
    assert c.output == 2
    assert c.postselect == 1
    assert c.ancillas == ((3, 1),)
    kinds = [g.kind for g in c.gates]
    assert kinds == ["h", "x", "cx", "ccx", "mcx"]
    assert c.gates[2].negated == (True,)
    assert c.gates[4].negated == (False, False, True)


def test_serialize_parse_roundtrip():
    c = parse_circuit(SAMPLE)
    again = parse_circuit(serialize_circuit(c))
    assert again == c


def test_parse_errors_carry_line_numbers():
    with pytest.raises(CircuitSyntaxError) as e:
        parse_circuit("qubits 2\nzz 0\noutput 0\n")
    assert "line 2" in str(e.value)
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("h 0\nqubits 2\noutput 0\n")  # width must come first
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\nqubits 2\noutput 0\n")
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\n")  # missing output
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\nh !0\noutput 0\n")  # negated target
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\ncx 0 1 1\noutput 0\n")  # arity
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\nancilla 0 2\noutput 0\n")
    with pytest.raises(CircuitSyntaxError):
        parse_circuit("qubits 2\ncx 1 1\noutput 0\n")  # target == control


def test_parse_normalizes_wide_gates_spelled_short():
    c = parse_circuit("qubits 5\nmcx 0 1 2\nmcx 0 1 2 3 4\noutput 0\n")
    assert c.gates[0].kind == "ccx"
    assert c.gates[1].kind == "mcx"


def _random_circuit_text(rng: random.Random) -> str:
    width = rng.randint(2, 6)
    lines = [f"qubits {width}"]
    for _ in range(rng.randint(0, 12)):
        kind = rng.choice(["h", "x", "cx", "ccx", "mcx"])
        need = {"h": 1, "x": 1, "cx": 2, "ccx": 3}.get(kind, min(4, width))
        if need > width:
            continue
        qs = rng.sample(range(width), need)
        if kind in ("h", "x"):
            lines.append(f"{kind} {qs[0]}")
        else:
            ctls = " ".join(
                ("!" if rng.random() < 0.5 else "") + str(q) for q in qs[:-1]
            )
            lines.append(f"{kind} {ctls} {qs[-1]}")
    out = rng.randrange(width)
    lines.append(f"output {out}")
    if width > 1 and rng.random() < 0.5:
        post = rng.choice([q for q in range(width) if q != out])
        lines.append(f"postselect {post}")
    return "\n".join(lines) + "\n"


def test_roundtrip_many_random_circuits():
    rng = random.Random(11)
    for _ in range(200):
        text = _random_circuit_text(rng)
        try:
            c = parse_circuit(text)
        except CircuitSyntaxError:
            continue  # generator may collide output/postselect; skip those
        assert parse_circuit(serialize_circuit(c)) == c
