"""Circuit intermediate representation for the Hadamard+Toffoli gate set.

A circuit is a fixed-width ordered gate list plus a designated output qubit,
an optional postselection qubit (always postselected on value 1) and declared
work-qubit initial values.  The multi-controlled X macro ``mcx`` is the only
gate that is not simulated directly; ``expand_mcx`` rewrites it into CCX
ladders before simulation.

Text format, one statement per line, ``#`` starts a comment, indices are
0-based, controls may carry a ``!`` prefix for a negated (fires-on-0)
control::

    qubits N
    h Q
    x Q
    cx C T
    ccx C1 C2 T
    mcx C1 ... Cn T
    output Q
    postselect Q
    ancilla Q V

Files are plain 7-bit ASCII.  ``ancilla Q V`` declares that qubit Q must be
given input value V (0 or 1) and is returned to that value by the gates that
borrow it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .errors import CircuitSyntaxError, InsufficientAncillas

GATE_KINDS = ("h", "x", "cx", "ccx", "mcx")


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    controls: tuple[int, ...] = ()
    negated: tuple[bool, ...] = ()

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        expected = {"h": 0, "x": 0, "cx": 1, "ccx": 2}.get(self.kind)
        if expected is not None and len(self.controls) != expected:
            raise ValueError(f"{self.kind} takes {expected} controls")
        if self.kind == "mcx" and len(self.controls) < 3:
            raise ValueError("mcx gates carry >= 3 controls once normalized")
        if len(self.negated) != len(self.controls):
            raise ValueError("one polarity flag per control")
        if self.target in self.controls:
            raise ValueError("target may not also be a control")
        if len(set(self.controls)) != len(self.controls):
            raise ValueError("duplicate control qubit")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)


def h(q: int) -> Gate:
    return Gate("h", q)


def x(q: int) -> Gate:
    return Gate("x", q)


def cx(c: int, t: int, neg: bool = False) -> Gate:
    return Gate("cx", t, (c,), (neg,))


def ccx(c1: int, c2: int, t: int, neg1: bool = False, neg2: bool = False) -> Gate:
    return Gate("ccx", t, (c1, c2), (neg1, neg2))


def mcx(
    controls: Sequence[int], target: int, negated: Sequence[bool] | None = None
) -> Gate:
    """Multi-controlled X, normalized by control count (0->x, 1->cx, 2->ccx)."""
    controls = tuple(controls)
    negated = tuple(negated) if negated is not None else (False,) * len(controls)
    kind = {0: "x", 1: "cx", 2: "ccx"}.get(len(controls), "mcx")
    return Gate(kind, target, controls, negated)


@dataclass(frozen=True)
class Circuit:
    """Immutable gate list over ``width`` qubits.

    ``output`` is the qubit whose value-1 probability is the circuit's answer;
    ``postselect``, when present, is the qubit conditioned to 1.  ``ancillas``
    holds (qubit, initial value) pairs for declared work qubits.
    """

    width: int
    gates: tuple[Gate, ...]
    output: int
    postselect: int | None = None
    ancillas: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(
            self, "ancillas", tuple(sorted((int(q), int(v)) for q, v in self.ancillas))
        )
        self._validate()

    def _validate(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        def _chk(q, role):
            if not 0 <= q < self.width:
                raise ValueError(f"{role} qubit {q} outside width {self.width}")
        _chk(self.output, "output")
        if self.postselect is not None:
            _chk(self.postselect, "postselect")
            if self.postselect == self.output:
                raise ValueError("output and postselect qubits must differ")
        seen = set()
        for q, v in self.ancillas:
            _chk(q, "ancilla")
            if v not in (0, 1):
                raise ValueError("ancilla initial value must be 0 or 1")
            if q in seen:
                raise ValueError(f"qubit {q} declared ancilla twice")
            seen.add(q)
        for g in self.gates:
            for q in g.qubits:
                _chk(q, f"{g.kind} gate")

    @property
    def ancilla_map(self) -> dict[int, int]:
        return dict(self.ancillas)

    @property
    def h_count(self) -> int:
        return sum(1 for g in self.gates if g.kind == "h")

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return replace(self, gates=tuple(gates))


def default_input(circuit: Circuit) -> str:
    """Canonical input bitstring: declared ancilla values, zeros elsewhere."""
    bits = ["0"] * circuit.width
    for q, v in circuit.ancillas:
        bits[q] = str(v)
    return "".join(bits)


def apply_gate_classical(state: int, gate: Gate) -> int:
    """Apply a reversible (non-h) gate to a computational basis state."""
    if gate.kind == "h":
        raise ValueError("h has no classical action")
    for c, neg in zip(gate.controls, gate.negated):
        if ((state >> c) & 1) == (1 if neg else 0):
            return state
    return state ^ (1 << gate.target)


def _ladder(controls: Sequence[int], target: int, anc: Sequence[int]) -> list[Gate]:
    """CCX network for an all-positive multi-controlled X on n >= 3 controls.

    Uses n-2 work qubits that may hold anything (each is returned to its
    initial value), at a cost of 4*(n-2) CCX gates.
    """
    c = list(controls)
    n = len(c)
    a = list(anc)
    assert len(a) >= n - 2
    seq: list[Gate] = []

    def half():
        seq.append(ccx(c[n - 1], a[n - 3], target))
        for i in range(n - 2, 1, -1):
            seq.append(ccx(c[i], a[i - 2], a[i - 1]))
        seq.append(ccx(c[0], c[1], a[0]))
        for i in range(2, n - 1):
            seq.append(ccx(c[i], a[i - 2], a[i - 1]))

    half()
    half()
    return seq


def expand_mcx(circuit: Circuit) -> Circuit:
    """Rewrite every mcx macro into {x, cx, ccx} using declared ancillas.

    Negated controls are conjugated with X.  Each expansion borrows the first
    n-2 declared ancilla qubits that do not participate in the gate; the
    ladder restores them, so the same pool serves every mcx in the circuit.
    """
    anc_pool = [q for q, _ in circuit.ancillas]
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind != "mcx":
            out.append(g)
            continue
        free = [q for q in anc_pool if q not in g.qubits]
        need = len(g.controls) - 2
        if len(free) < need:
            raise InsufficientAncillas(
                f"mcx with {len(g.controls)} controls needs {need} ancillas, "
                f"only {len(free)} declared and free"
            )
        flips = [x(c) for c, neg in zip(g.controls, g.negated) if neg]
        out.extend(flips)
        out.extend(_ladder(g.controls, g.target, free[:need]))
        out.extend(flips)
    return circuit.with_gates(out)


# --- text format -----------------------------------------------------------


def _parse_index(token: str, line_no: int) -> tuple[int, bool]:
    neg = token.startswith("!")
    if neg:
        token = token[1:]
    if not token.isdigit():
        raise CircuitSyntaxError(f"bad qubit index {token!r}", line_no)
    return int(token), neg


def parse_circuit(text: str) -> Circuit:
    width: int | None = None
    gates: list[Gate] = []
    output: int | None = None
    postselect: int | None = None
    ancillas: list[tuple[int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op, args = parts[0].lower(), parts[1:]

        if op == "qubits":
            if width is not None:
                raise CircuitSyntaxError("duplicate qubits line", line_no)
            if len(args) != 1 or not args[0].isdigit():
                raise CircuitSyntaxError("usage: qubits N", line_no)
            width = int(args[0])
            continue
        if width is None:
            raise CircuitSyntaxError("qubits line must come first", line_no)

        try:
            if op in ("h", "x"):
                if len(args) != 1:
                    raise CircuitSyntaxError(f"usage: {op} Q", line_no)
                q, neg = _parse_index(args[0], line_no)
                if neg:
                    raise CircuitSyntaxError("targets cannot be negated", line_no)
                gates.append(Gate(op, q))
            elif op in ("cx", "ccx", "mcx"):
                if len(args) < 2:
                    raise CircuitSyntaxError(f"{op} needs controls and a target", line_no)
                *ctl_toks, tgt_tok = args
                tgt, neg = _parse_index(tgt_tok, line_no)
                if neg:
                    raise CircuitSyntaxError("targets cannot be negated", line_no)
                ctls, negs = [], []
                for tok in ctl_toks:
                    c, n = _parse_index(tok, line_no)
                    ctls.append(c)
                    negs.append(n)
                expected = {"cx": 1, "ccx": 2}.get(op)
                if expected is not None and len(ctls) != expected:
                    raise CircuitSyntaxError(f"{op} takes {expected} controls", line_no)
                gates.append(mcx(ctls, tgt, negs))
            elif op == "output":
                if output is not None:
                    raise CircuitSyntaxError("duplicate output line", line_no)
                output, _ = _parse_index(args[0], line_no)
            elif op == "postselect":
                if postselect is not None:
                    raise CircuitSyntaxError("duplicate postselect line", line_no)
                postselect, _ = _parse_index(args[0], line_no)
            elif op == "ancilla":
                if len(args) != 2:
                    raise CircuitSyntaxError("usage: ancilla Q V", line_no)
                q, _ = _parse_index(args[0], line_no)
                if args[1] not in ("0", "1"):
                    raise CircuitSyntaxError("ancilla value must be 0 or 1", line_no)
                ancillas.append((q, int(args[1])))
            else:
                raise CircuitSyntaxError(f"unknown statement {op!r}", line_no)
        except ValueError as exc:
            raise CircuitSyntaxError(str(exc), line_no) from exc

    if width is None:
        raise CircuitSyntaxError("missing qubits line")
    if output is None:
        raise CircuitSyntaxError("missing output line")
    try:
        return Circuit(width, tuple(gates), output, postselect, tuple(ancillas))
    except ValueError as exc:
        raise CircuitSyntaxError(str(exc)) from exc


def _gate_line(g: Gate) -> str:
    if g.kind in ("h", "x"):
        return f"{g.kind} {g.target}"
    ctls = " ".join(
        ("!" if neg else "") + str(c) for c, neg in zip(g.controls, g.negated)
    )
    return f"{g.kind} {ctls} {g.target}"


def serialize_circuit(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.width}"]
    lines += [f"ancilla {q} {v}" for q, v in circuit.ancillas]
    lines += [_gate_line(g) for g in circuit.gates]
    lines.append(f"output {circuit.output}")
    if circuit.postselect is not None:
        lines.append(f"postselect {circuit.postselect}")
    return "\n".join(lines) + "\n"
