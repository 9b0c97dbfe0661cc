"""Compilers from counting machines to postselected circuits, plus the exact
probability-adjustment gadgets that reshape a circuit's acceptance statistics.

All output statistics are stated in terms of raw machine gaps G = N_a - N_r.
Analyses that normalize a gap to half its value (h = G/2) are reconciled by
the identity (G1**2 + G2**2) == 4*(h1**2 + h2**2); the compilers here keep
the raw form so no divisions ever happen.

Every compiler returns an ordinary Circuit whose mcx macros are still
unexpanded; enough work qubits are declared that ``expand_mcx`` always
succeeds.  Probabilities quoted in the docstrings are exact, not bounds,
unless explicitly written as inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .circuit import Circuit, Gate, ccx, default_input, expand_mcx, h, mcx, x
from .counting import PredicateCircuit, emit_less_than, gap
from .errors import StatsMismatch, ZeroPostselection
from .exactring import DyadicRational
from .simulator import postselect_stats
from .witness import Condition, WitnessReport


@dataclass
class ConstructionParams:
    """Knobs shared by the compilers and the verification scenarios."""

    k: int = 0  # |+> padding pairs in the two-machine construction
    r: int = 4  # witness sharpness exponent of the source data
    r1: int = 3  # conditional-probability sharpness of a postselected circuit
    r2: int = 3  # postselection-probability sharpness
    t: int = 0  # rescaling exponent
    h: int = 0  # target probability denominator exponent
    q: int = 0  # path-bit count
    s: int = 0  # auxiliary denominator exponent

    def validate(self) -> None:
        if min(self.k, self.t, self.h, self.q, self.s) < 0:
            raise ValueError("exponent parameters must be >= 0")
        if self.r < max(self.r1 + 2, self.r2 + 2):
            raise ValueError("need r >= max(r1 + 2, r2 + 2)")


class _Builder:
    """Mutable helper that allocates qubits and finishes into a Circuit."""

    def __init__(self, base: Circuit | None = None):
        self.width = 0
        self.gates: list[Gate] = []
        self.anc: dict[int, int] = {}
        if base is not None:
            self.width = base.width
            self.gates = list(base.gates)
            self.anc = dict(base.ancillas)

    def alloc(self, n: int) -> list[int]:
        start = self.width
        self.width += n
        return list(range(start, start + n))

    def alloc1(self) -> int:
        return self.alloc(1)[0]

    def add(self, gate: Gate) -> None:
        self.gates.append(gate)

    def extend(self, gates) -> None:
        self.gates.extend(gates)

    def declare(self, qubits, value: int = 0) -> None:
        if isinstance(qubits, int):
            qubits = [qubits]
        for q in qubits:
            self.anc[q] = value

    def embed(self, sub: Circuit) -> int:
        """Splice a whole sub-circuit onto fresh qubits; returns the offset."""
        off = self.alloc(sub.width)[0]
        for g in sub.gates:
            self.add(
                Gate(g.kind, g.target + off, tuple(c + off for c in g.controls), g.negated)
            )
        for q, v in sub.ancillas:
            self.anc[q + off] = v
        return off

    def finish(self, output: int, postselect: int | None = None) -> Circuit:
        # top up the declared work pool so every mcx can borrow n-2 free bits
        deficit = 0
        for g in self.gates:
            if g.kind != "mcx":
                continue
            free = sum(1 for q in self.anc if q not in g.qubits)
            deficit = max(deficit, len(g.controls) - 2 - free)
        if deficit > 0:
            self.declare(self.alloc(deficit))
        return Circuit(
            self.width,
            tuple(self.gates),
            output,
            postselect,
            tuple(sorted(self.anc.items())),
        )


def _machine_gates(
    machine: PredicateCircuit,
    w_map: list[int],
    x_map: list[int],
    scratch_map: list[int],
    accept_q: int,
    control: tuple[int, bool] | None = None,
) -> list[Gate]:
    """Map a machine's gate list onto circuit qubits, optionally adding one
    extra control to every gate."""
    table: dict[int, int] = {}
    for i, q in enumerate(w_map):
        table[i] = q
    for i, q in enumerate(x_map):
        table[machine.input_width + i] = q
    scratch_slots = [
        i
        for i in range(machine.input_width + machine.path_width, machine.total_bits)
        if i != machine.accept_index
    ]
    assert len(scratch_slots) == len(scratch_map)
    for i, q in zip(scratch_slots, scratch_map):
        table[i] = q
    table[machine.accept_index] = accept_q

    out: list[Gate] = []
    for g in machine.gates:
        ctls = [table[c] for c in g.controls]
        negs = list(g.negated)
        if control is not None:
            ctls.append(control[0])
            negs.append(control[1])
        out.append(mcx(ctls, table[g.target], negs))
    return out


def _as_bits(w) -> tuple[int, ...]:
    bits = tuple(int(b) for b in w)
    if any(b not in (0, 1) for b in bits):
        raise ValueError("instance bits must be 0/1")
    return bits


def gap_squared_prob(g_val: int, q: int) -> DyadicRational:
    """Closed form for the single-machine compiler: P(o=1) = G**2 / 2**2q."""
    return DyadicRational(g_val * g_val, 2 * q)


def pair_stats(g1: int, g2: int, q: int, k: int) -> tuple[DyadicRational, Fraction]:
    """Closed forms for the two-machine compiler:

    P(p=1) = (G1**2 + G2**2) / 2**(2q+2+2k)
    P(o=1 | p=1) = G1**2 / (G1**2 + G2**2)
    """
    ss = g1 * g1 + g2 * g2
    if ss == 0:
        raise ZeroPostselection("both gaps are zero")
    return DyadicRational(ss, 2 * q + 2 + 2 * k), Fraction(g1 * g1, ss)


def compile_gap_squared(machine: PredicateCircuit, w) -> Circuit:
    """Circuit without postselection whose P(output=1) == G**2 / 2**2q.

    Walks all paths in superposition, imprints the sign (-1) on every
    rejecting path through a computed flag bit, interferes the paths back and
    detects the all-zero path register.
    """
    bits = _as_bits(w)
    if len(bits) != machine.input_width:
        raise ValueError("instance width mismatch")
    q = machine.path_width
    b = _Builder()
    wq = b.alloc(machine.input_width)
    xq = b.alloc(q)
    scratch = b.alloc(machine.ancilla_count)
    acc = b.alloc1()
    out = b.alloc1()

    for i, bit in enumerate(bits):
        if bit:
            b.add(x(wq[i]))
    for qb in xq:
        b.add(h(qb))
    forward = _machine_gates(machine, wq, xq, scratch, acc)
    b.extend(forward)
    # phase (-1) exactly on rejecting paths: flip acc into a reject flag,
    # apply Z = H X H, flip back
    b.add(x(acc))
    b.add(h(acc))
    b.add(x(acc))
    b.add(h(acc))
    b.add(x(acc))
    b.extend(reversed(forward))
    for qb in xq:
        b.add(h(qb))
    b.add(mcx(xq, out, [True] * q))
    b.declare(scratch)
    b.declare(acc)
    return b.finish(output=out)


def compile_pair_postsel(
    m1: PredicateCircuit,
    m2: PredicateCircuit,
    w,
    k: int = 0,
    scale_mode: str = "none",
) -> Circuit:
    """Postselected circuit encoding two machine gaps at once.

    With G_i = gap(m_i, w) and q their shared path width:

        P(p=1)       = (G1**2 + G2**2) / 2**(2q+2+2k)
        P(o=1 | p=1) = G1**2 / (G1**2 + G2**2)

    A selector qubit chooses machine 1 (selector 1, the output) or machine 2
    (selector 0) in superposition; each branch picks up the sign (-1) on its
    rejecting paths and records its reject flag.  Postselection projects the
    2k padding qubits, the path register and the flag onto the uniform state
    via a Hadamard layer and an all-zeros detector.

    ``scale_mode`` records how the caller derived the machines (pre-scaled by
    tabulated values, by gaps of an all-ones instance, or not at all); the
    emitted circuit is the same either way.
    """
    if scale_mode not in ("none", "fp_of_input", "gap_of_length"):
        raise ValueError(f"unknown scale_mode {scale_mode!r}")
    if k < 0:
        raise ValueError("k must be >= 0")
    if m1.input_width != m2.input_width or m1.path_width != m2.path_width:
        raise ValueError("machines must share instance and path widths")
    bits = _as_bits(w)
    if len(bits) != m1.input_width:
        raise ValueError("instance width mismatch")
    g1 = gap(m1, bits).gap
    g2 = gap(m2, bits).gap
    if g1 == 0 and g2 == 0:
        raise ZeroPostselection("both machine gaps vanish on this instance")

    q = m1.path_width
    b = _Builder()
    wq = b.alloc(m1.input_width)
    pad = b.alloc(2 * k)
    xq = b.alloc(q)
    flag = b.alloc1()  # reject flag of the selected machine
    sel = b.alloc1()  # selector, doubles as the output qubit
    scratch = b.alloc(max(m1.ancilla_count, m2.ancilla_count))
    acc = b.alloc1()
    post = b.alloc1()

    for i, bit in enumerate(bits):
        if bit:
            b.add(x(wq[i]))
    b.add(h(sel))
    for qb in xq:
        b.add(h(qb))

    fw1 = _machine_gates(m1, wq, xq, scratch[: m1.ancilla_count], acc, (sel, False))
    b.extend(fw1)
    b.add(ccx(sel, acc, flag, neg2=True))  # flag ^= sel & not-accept
    b.extend(reversed(fw1))
    fw2 = _machine_gates(m2, wq, xq, scratch[: m2.ancilla_count], acc, (sel, True))
    b.extend(fw2)
    b.add(ccx(sel, acc, flag, neg1=True, neg2=True))
    b.extend(reversed(fw2))

    # phase (-1) on rejecting paths of whichever machine was selected
    b.add(h(flag))
    b.add(x(flag))
    b.add(h(flag))

    plus_reg = pad + xq + [flag]
    for qb in plus_reg:
        b.add(h(qb))
    b.add(mcx(plus_reg, post, [True] * len(plus_reg)))

    b.declare(scratch)
    b.declare(acc)
    return b.finish(output=sel, postselect=post)


def gadget_biased_flag(a: int, m: int) -> Circuit:
    """Circuit whose output flag is 1 with probability exactly a / 2**m."""
    if m < 0 or not 0 <= a <= (1 << m):
        raise ValueError("need 0 <= a <= 2**m")
    b = _Builder()
    coins = b.alloc(m)
    flag = b.alloc1()
    for qb in coins:
        b.add(h(qb))
    b.extend(emit_less_than(coins, a, flag))
    return b.finish(output=flag)


def rescale_postsel(circuit: Circuit, t: int) -> Circuit:
    """Multiply P(p=1) by exactly 2**-t without touching the conditional.

    ANDs the old postselection bit with an independent all-zeros test on t
    fresh coins.  t == 0 returns the circuit unchanged.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if circuit.postselect is None:
        raise ValueError("circuit declares no postselect qubit")
    if t == 0:
        return circuit
    b = _Builder(circuit)
    coins = b.alloc(t)
    flag = b.alloc1()
    p_new = b.alloc1()
    for qb in coins:
        b.add(h(qb))
    b.add(mcx(coins, flag, [True] * t))
    b.add(ccx(flag, circuit.postselect, p_new))
    return b.finish(output=circuit.output, postselect=p_new)


def mixed_conditional(f: int, t: int, inner: Fraction) -> Fraction:
    """Exact conditional of the half-and-half mix:

    cond_W = (f / 2**(t+1)) * cond_V + (1/2) * (2**(t+1) - f) / 2**(t+1)
    """
    return Fraction(f, 1 << (t + 1)) * inner + Fraction(1, 2) * Fraction(
        (1 << (t + 1)) - f, 1 << (t + 1)
    )


def mix_with_constant(circuit: Circuit, f: int, h_exp: int) -> Circuit:
    """Mix a postselecting circuit with a constant-statistics branch.

    Requires P(p=1) == f / 2**h exactly (checked by simulation).  With
    t = floor(log2 f), a fair coin selects on heads the given circuit and on
    tails a branch whose output is 1 with probability 1/2 and whose
    postselection bit fires with probability (2**(t+1) - f) / 2**h,
    independently.  The result W satisfies

        P_W(p=1) = 2**t / 2**h
        P_W(o=1 | p=1) = mixed_conditional(f, t, P(o=1 | p=1)).

    Gates of the given circuit other than Hadamards are conditioned on the
    coin; the Hadamards run unconditionally and the tails branch simply never
    reads those qubits (selection happens through controlled swaps onto the
    tails-side qubits).
    """
    if not 0 < f <= (1 << h_exp):
        raise ValueError("need 0 < f <= 2**h")
    stats = postselect_stats(expand_mcx(circuit), default_input(circuit))
    if stats.p_post != DyadicRational(f, h_exp):
        raise StatsMismatch(
            f"P(p=1) is {stats.p_post}, expected {DyadicRational(f, h_exp)}"
        )
    t = f.bit_length() - 1
    a = (1 << (t + 1)) - f

    b = _Builder(circuit)
    coin = b.alloc1()
    b.gates = []  # re-emit everything in order: coin flip first
    b.add(h(coin))
    for g in circuit.gates:
        if g.kind == "h":
            b.add(g)
        else:
            b.add(mcx(list(g.controls) + [coin], g.target, list(g.negated) + [False]))
    o_tails = b.alloc1()
    b.add(h(o_tails))
    coins = b.alloc(h_exp)
    p_tails = b.alloc1()
    for qb in coins:
        b.add(h(qb))
    b.extend(emit_less_than(coins, a, p_tails))
    _cswap(b, coin, circuit.output, o_tails)
    _cswap(b, coin, circuit.postselect, p_tails)
    return b.finish(output=o_tails, postselect=p_tails)


def _cswap(b: _Builder, c: int, u: int, v: int) -> None:
    b.add(ccx(c, u, v))
    b.add(ccx(c, v, u))
    b.add(ccx(c, u, v))


def compile_fqp_to_exp(circuit: Circuit, f: int, h_exp: int) -> Circuit:
    """Force P(p=1) to exactly 2**-h, whatever f was.

    Chains the constant mix (bringing P(p=1) to 2**t / 2**h) with a 2**-t
    rescale.  The final postselection probability depends only on h; the
    conditional is the mixed conditional of the input circuit's.
    """
    mixed = mix_with_constant(circuit, f, h_exp)
    t = f.bit_length() - 1
    return rescale_postsel(mixed, t)


def compile_pp_instance(
    mg: PredicateCircuit, mf: PredicateCircuit, w, r: int = 4
) -> Circuit:
    """Postselected circuit for a majority-vote style gap pair (g, f).

    Builds the two squared-gap blocks, downscales each by the other's path
    budget and routes them through a two-coin selector: both coins heads
    simulates the f block (output forced to 0), anything else simulates the
    g block (output mirrors it).  With q = 2 * mg.path_width and
    q' = 2 * mf.path_width:

        P_V(o=1) = G_g**2 / 2**(q+q')      P_W(o=1) = G_f**2 / 2**(q+q')
        P(p=1)   = (3 * P_V + P_W) / 4     P(o=1 | p=1) = 3 P_V / (3 P_V + P_W)

    Requires gap(mf, w) != 0, which makes P(p=1) >= 2**-(q+q'+2) with
    equality only in the degenerate all-zero-g, unit-f case.  ``r`` names the
    sharpness of the (g, f) pair and is used by the surrounding checks, not
    by the construction.
    """
    bits = _as_bits(w)
    if gap(mf, bits).gap == 0:
        raise ValueError("the f machine must have a nonzero gap")
    if r < 2:
        raise ValueError("r must be >= 2")
    q_exp = 2 * mg.path_width
    qp_exp = 2 * mf.path_width

    b = _Builder()
    block_g = compile_gap_squared(mg, bits)
    block_f = compile_gap_squared(mf, bits)
    o_g = b.embed(block_g) + block_g.output
    o_f = b.embed(block_f) + block_f.output

    coins = b.alloc(max(q_exp, qp_exp))
    for qb in coins:
        b.add(h(qb))
    flag_g = b.alloc1()  # scales the g block by 2**-q'
    flag_f = b.alloc1()  # scales the f block by 2**-q
    if qp_exp:
        b.add(mcx(coins[:qp_exp], flag_g, [True] * qp_exp))
    else:
        b.add(x(flag_g))
    if q_exp:
        b.add(mcx(coins[:q_exp], flag_f, [True] * q_exp))
    else:
        b.add(x(flag_f))

    c1 = b.alloc1()
    c2 = b.alloc1()
    sel = b.alloc1()
    b.add(h(c1))
    b.add(h(c2))
    b.add(ccx(c1, c2, sel))

    out = b.alloc1()
    post = b.alloc1()
    b.add(mcx([sel, o_g, flag_g], out, [True, False, False]))
    b.add(mcx([sel, o_g, flag_g], post, [True, False, False]))
    b.add(mcx([sel, o_f, flag_f], post, [False, False, False]))
    return b.finish(output=out, postselect=post)


def verify_error_algebra(r: int) -> WitnessReport:
    """Exact rational checks of the error-propagation inequalities used by
    the witness analyses, at sharpness exponent r >= 2.  Each returned
    condition carries its exact Fraction sides; nothing is rounded.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    eps1 = Fraction(1, 1 << (r - 1))  # 2**-(r+1-2) = 2**-(r-1)
    eps2 = Fraction(1, 1 << (r - 2))  # 2**-(r-2)
    eps = Fraction(1, 1 << r)
    report = WitnessReport(f"error-algebra-r{r}")
    checks = [
        ("inflate-upper", 1 / (1 - eps1), "<=", 1 + eps2),
        ("deflate-lower", 1 / (1 + eps1) - (1 - eps2), ">=", Fraction(0)),
        ("square-lower", (1 - eps) ** 2, ">=", 1 - eps1),
        ("cross-upper", 1 + eps * eps, "<=", 1 + eps1),
    ]
    for cid, lhs, op, rhs in checks:
        ok = lhs <= rhs if op == "<=" else lhs >= rhs
        report.add(Condition(cid, str(lhs), op, str(rhs), ok))
    return report
