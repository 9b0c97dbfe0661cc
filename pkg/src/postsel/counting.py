"""Reversible predicate machines and exact path counting.

A ``PredicateCircuit`` is a reversible circuit over {x, cx, ccx, mcx} acting
on an input register (the instance bits w), a path register (the
nondeterministic choice bits x), scratch bits and one accept flag.  All 2**q
settings of the path register are live by construction, so the accept count
N_a and reject count N_r always satisfy N_a + N_r == 2**q and the gap
G = N_a - N_r is congruent to 2**q mod 2.

Machine text format mirrors the circuit format (``#`` comments, 0-based
indices, ``!`` for negated controls)::

    machine IN_WIDTH PATH_WIDTH ANCILLAS
    x 3
    cx !0 4
    ...
    accept BITINDEX

Bit layout: [0, IN_WIDTH) instance bits, then PATH_WIDTH path bits, then
ANCILLAS scratch bits, then one more bit; ``accept`` must point into the
scratch-or-last region.  A machine must leave the instance and path bits
untouched and every scratch bit back at 0 after a forward pass; this is
checked during evaluation.

``FPFunction`` wraps the two desk-scale ways this package supplies an
efficiently-computable positive integer function: an explicit per-instance
table, or a machine whose gap on the all-ones instance of matching length is
taken as the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .circuit import Gate, apply_gate_classical, mcx, x
from .errors import CapExceeded, CircuitSyntaxError, MachineContractError

DEFAULT_MAX_PATH_BITS = 20


@dataclass(frozen=True)
class PredicateCircuit:
    input_width: int
    path_width: int
    ancilla_count: int
    gates: tuple[Gate, ...]
    accept_index: int

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.input_width < 0 or self.path_width < 0 or self.ancilla_count < 0:
            raise ValueError("widths must be >= 0")
        data = self.input_width + self.path_width
        if not data <= self.accept_index < self.total_bits:
            raise ValueError("accept bit must sit past the instance and path bits")
        for g in self.gates:
            if g.kind == "h":
                raise ValueError("predicate machines are reversible: no h gates")
            for q in g.qubits:
                if not 0 <= q < self.total_bits:
                    raise ValueError(f"gate touches bit {q} outside machine")

    @property
    def total_bits(self) -> int:
        return self.input_width + self.path_width + self.ancilla_count + 1


@dataclass(frozen=True)
class GapValue:
    accepts: int
    rejects: int
    path_width: int

    @property
    def gap(self) -> int:
        return self.accepts - self.rejects


def _pack(machine: PredicateCircuit, w, x_val: int) -> int:
    state = 0
    for i, b in enumerate(w):
        state |= int(b) << i
    state |= x_val << machine.input_width
    return state


def _check_w(machine: PredicateCircuit, w) -> tuple[int, ...]:
    bits = tuple(int(b) for b in w)
    if len(bits) != machine.input_width:
        raise MachineContractError(
            f"machine reads {machine.input_width} instance bits, got {len(bits)}"
        )
    if any(b not in (0, 1) for b in bits):
        raise MachineContractError("instance bits must be 0/1")
    return bits


def eval_machine(machine: PredicateCircuit, w, x_val: int) -> bool:
    """Run one nondeterministic path; True iff the accept bit ends at 1.

    Also enforces the machine contract: instance and path bits unchanged,
    scratch bits restored to 0.
    """
    bits = _check_w(machine, w)
    if not 0 <= x_val < (1 << machine.path_width):
        raise ValueError("path index out of range")
    state = _pack(machine, bits, x_val)
    start = state
    for g in machine.gates:
        state = apply_gate_classical(state, g)
    accept = (state >> machine.accept_index) & 1
    residue = (state ^ (accept << machine.accept_index)) ^ start
    if residue:
        raise MachineContractError(
            "machine left instance/path/scratch bits modified after a forward pass"
        )
    return bool(accept)


def gap(machine: PredicateCircuit, w, *, max_path_bits: int | None = None) -> GapValue:
    """Exact accept/reject counts over all 2**q paths."""
    cap = DEFAULT_MAX_PATH_BITS if max_path_bits is None else max_path_bits
    if machine.path_width > cap:
        raise CapExceeded(
            f"enumerating 2**{machine.path_width} paths exceeds cap 2**{cap}"
        )
    accepts = 0
    for x_val in range(1 << machine.path_width):
        if eval_machine(machine, w, x_val):
            accepts += 1
    total = 1 << machine.path_width
    return GapValue(accepts, total - accepts, machine.path_width)


def emit_less_than(bit_indices, constant: int, flag_index: int) -> list[Gate]:
    """Gates XOR-ing [value(bits) < constant] into ``flag_index``.

    ``bit_indices`` lists the compared bits least-significant first.  The
    comparison decomposes into mutually exclusive prefix terms, one per set
    bit of the constant, so plain XOR accumulation realizes the OR.
    """
    q = len(bit_indices)
    if constant <= 0:
        return []
    if constant >= (1 << q):
        return [x(flag_index)]
    out: list[Gate] = []
    for i in range(q - 1, -1, -1):
        if not (constant >> i) & 1:
            continue
        ctls = [bit_indices[j] for j in range(i + 1, q)] + [bit_indices[i]]
        negs = [not ((constant >> j) & 1) for j in range(i + 1, q)] + [True]
        out.append(mcx(ctls, flag_index, negs))
    return out


def make_gap_machine(v: int, q: int) -> PredicateCircuit:
    """Machine with q path bits whose gap on the empty instance is exactly v.

    Accepts the paths x < (2**q + v) / 2, so v must satisfy |v| <= 2**q and
    v == 2**q (mod 2).
    """
    if q < 0:
        raise ValueError("path width must be >= 0")
    if abs(v) > (1 << q):
        raise ValueError(f"|gap| {abs(v)} needs more than {q} path bits")
    if (v - (1 << q)) % 2:
        raise ValueError(f"gap {v} has wrong parity for {q} path bits")
    threshold = ((1 << q) + v) // 2
    gates = emit_less_than(list(range(q)), threshold, q)
    return PredicateCircuit(0, q, 0, tuple(gates), q)


def scale_gap(machine: PredicateCircuit, c: int) -> PredicateCircuit:
    """Machine whose gap is exactly c times the input machine's gap (c >= 1).

    Appends ceil(log2 c) extra path bits y.  Branches with y < c replay the
    base machine; the remaining branches accept exactly half the time and
    contribute nothing to the gap.
    """
    if c < 1:
        raise ValueError("scale factor must be >= 1")
    if c == 1:
        return machine
    if machine.path_width < 1:
        raise ValueError("base machine needs at least one path bit")
    extra = (c - 1).bit_length()
    in_w, q = machine.input_width, machine.path_width
    # new layout: [w | x (q) | y (extra) | old scratch | old accept slot | u | accept]
    def remap(i: int) -> int:
        return i if i < in_w + q else i + extra

    base = [
        Gate(g.kind, remap(g.target), tuple(remap(c_) for c_ in g.controls), g.negated)
        for g in machine.gates
    ]
    y_bits = list(range(in_w + q, in_w + q + extra))
    a_m = remap(machine.accept_index)
    u = in_w + q + extra + machine.ancilla_count + 1
    accept = u + 1
    compare = emit_less_than(y_bits, c, u)
    gates: list[Gate] = []
    gates += base
    gates += compare
    gates.append(mcx([u, a_m], accept))
    gates.append(mcx([u, in_w], accept, [True, True]))
    gates += reversed(compare)
    gates += reversed(base)
    return PredicateCircuit(in_w, q + extra, machine.ancilla_count + 2, tuple(gates), accept)


def complement_machine(machine: PredicateCircuit) -> PredicateCircuit:
    """Swap accept and reject, negating the gap."""
    return PredicateCircuit(
        machine.input_width,
        machine.path_width,
        machine.ancilla_count,
        machine.gates + (x(machine.accept_index),),
        machine.accept_index,
    )


def tabulated_count_machine(
    table: dict[str, int], input_width: int, path_width: int
) -> PredicateCircuit:
    """Machine whose accept count on instance w is table[w] (0 if missing).

    One block of comparator terms per table entry, each guarded on the full
    instance pattern; the guards are mutually exclusive across entries.
    """
    gates: list[Gate] = []
    accept = input_width + path_width
    x_bits = list(range(input_width, accept))
    for w, count in sorted(table.items()):
        bits = _as_bits(w, input_width)
        if not 0 <= count <= (1 << path_width):
            raise ValueError(f"count {count} does not fit in {path_width} path bits")
        guard_ctls = list(range(input_width))
        guard_negs = [b == 0 for b in bits]
        for term in emit_less_than(x_bits, count, accept):
            gates.append(
                mcx(
                    guard_ctls + list(term.controls),
                    accept,
                    guard_negs + list(term.negated),
                )
            )
    return PredicateCircuit(input_width, path_width, 0, tuple(gates), accept)


def _as_bits(w: str | Iterable[int], width: int) -> tuple[int, ...]:
    bits = tuple(int(b) for b in w)
    if len(bits) != width or any(b not in (0, 1) for b in bits):
        raise ValueError(f"bad instance bits {w!r} for width {width}")
    return bits


@dataclass(frozen=True)
class FPFunction:
    """Positive integer function with a declared bound 0 < f(w) <= 2**bound_exp.

    ``fp_of_input`` variants tabulate values per instance; ``gap_of_length``
    variants evaluate a machine's gap on the all-ones instance of the same
    length, so the value depends only on |w|.
    """

    variant: str  # 'fp_of_input' | 'gap_of_length'
    bound_exp: int
    table: dict[str, int] = field(default_factory=dict)
    machine: PredicateCircuit | None = None

    def __post_init__(self):
        if self.variant not in ("fp_of_input", "gap_of_length"):
            raise ValueError(f"unknown FPFunction variant {self.variant!r}")
        if self.variant == "fp_of_input":
            for w, val in self.table.items():
                self._check_value(val, w)
        elif self.machine is None:
            raise ValueError("gap_of_length variant needs a machine")

    def _check_value(self, val: int, w: str) -> int:
        if not 0 < val <= (1 << self.bound_exp):
            raise ValueError(
                f"f({w!r}) = {val} outside (0, 2**{self.bound_exp}]"
            )
        return val

    def __call__(self, w: str) -> int:
        if self.variant == "fp_of_input":
            if w not in self.table:
                raise KeyError(f"no tabulated value for instance {w!r}")
            return self.table[w]
        assert self.machine is not None
        ones = "1" * len(w)
        if self.machine.input_width != len(w):
            raise MachineContractError(
                f"length machine reads {self.machine.input_width} bits, |w| = {len(w)}"
            )
        return self._check_value(gap(self.machine, ones).gap, w)


def parse_fp_table(text: str, bound_exp: int) -> FPFunction:
    """Parse ``w_bits value`` lines into a tabulated FPFunction."""
    table: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not set(parts[0]) <= {"0", "1"}:
            raise CircuitSyntaxError("expected: BITS VALUE", line_no)
        try:
            table[parts[0]] = int(parts[1])
        except ValueError as exc:
            raise CircuitSyntaxError(f"bad value {parts[1]!r}", line_no) from exc
    return FPFunction("fp_of_input", bound_exp, table)


# --- machine text format ----------------------------------------------------


def parse_machine(text: str) -> PredicateCircuit:
    header: tuple[int, int, int] | None = None
    accept: int | None = None
    gates: list[Gate] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op, args = parts[0].lower(), parts[1:]
        if op == "machine":
            if header is not None:
                raise CircuitSyntaxError("duplicate machine line", line_no)
            if len(args) != 3 or not all(a.isdigit() for a in args):
                raise CircuitSyntaxError("usage: machine IN PATH ANC", line_no)
            header = (int(args[0]), int(args[1]), int(args[2]))
            continue
        if header is None:
            raise CircuitSyntaxError("machine line must come first", line_no)
        if op == "accept":
            if accept is not None:
                raise CircuitSyntaxError("duplicate accept line", line_no)
            if len(args) != 1 or not args[0].isdigit():
                raise CircuitSyntaxError("usage: accept BITINDEX", line_no)
            accept = int(args[0])
            continue
        if op == "h":
            raise CircuitSyntaxError("machines are reversible: no h gates", line_no)
        if op not in ("x", "cx", "ccx", "mcx"):
            raise CircuitSyntaxError(f"unknown statement {op!r}", line_no)
        toks = []
        for tok in args:
            neg = tok.startswith("!")
            body = tok[1:] if neg else tok
            if not body.isdigit():
                raise CircuitSyntaxError(f"bad bit index {tok!r}", line_no)
            toks.append((int(body), neg))
        if not toks:
            raise CircuitSyntaxError(f"{op} needs a target", line_no)
        if toks[-1][1]:
            raise CircuitSyntaxError("targets cannot be negated", line_no)
        try:
            gates.append(
                mcx([t for t, _ in toks[:-1]], toks[-1][0], [n for _, n in toks[:-1]])
            )
        except ValueError as exc:
            raise CircuitSyntaxError(str(exc), line_no) from exc
    if header is None:
        raise CircuitSyntaxError("missing machine line")
    if accept is None:
        raise CircuitSyntaxError("missing accept line")
    try:
        return PredicateCircuit(header[0], header[1], header[2], tuple(gates), accept)
    except ValueError as exc:
        raise CircuitSyntaxError(str(exc)) from exc


def serialize_machine(machine: PredicateCircuit) -> str:
    lines = [
        f"machine {machine.input_width} {machine.path_width} {machine.ancilla_count}"
    ]
    for g in machine.gates:
        toks = [
            ("!" if neg else "") + str(c) for c, neg in zip(g.controls, g.negated)
        ]
        lines.append(" ".join([g.kind, *toks, str(g.target)]))
    lines.append(f"accept {machine.accept_index}")
    return "\n".join(lines) + "\n"
