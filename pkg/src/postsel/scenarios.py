"""End-to-end verification scenarios.

Each scenario compiles fixture machines or circuits, measures them with the
dense simulator and the branch-enumeration oracle, and reports exact
comparisons against closed forms as a WitnessReport.  Scenario functions all
take (seed, r); the seed drives any randomized fixtures through a private
generator so repeated runs are byte-identical, and r adjusts the sharpness
exponent where a scenario is parametric in it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .circuit import Circuit, ccx, cx, default_input, expand_mcx, h, mcx, x
from .classical import ProbTM, build_upcoup, run_ptm, wapp_witness
from .constructions import (
    _Builder,
    compile_fqp_to_exp,
    compile_gap_squared,
    compile_pair_postsel,
    compile_pp_instance,
    gadget_biased_flag,
    gap_squared_prob,
    mix_with_constant,
    mixed_conditional,
    pair_stats,
    rescale_postsel,
    verify_error_algebra,
)
from .counting import (
    FPFunction,
    PredicateCircuit,
    complement_machine,
    emit_less_than,
    gap,
    make_gap_machine,
    tabulated_count_machine,
)
from .errors import PromiseViolation, StatsMismatch, ZeroPostselection
from .pathsum import path_sum, path_sum_slow
from .simulator import joint_prob, measure_prob, postselect_stats, run
from .witness import (
    Condition,
    WitnessReport,
    check_awpp_witness,
    check_wapp_witness,
    classify_postsel_profile,
)

_OPS = {
    "==": lambda a, b: a == b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
}


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if hasattr(v, "as_fraction"):
        return v.as_fraction()
    return Fraction(v)


def _row(report: WitnessReport, cid: str, lhs, op: str, rhs) -> None:
    a, b = _frac(lhs), _frac(rhs)
    report.add(Condition(cid, str(a), op, str(b), _OPS[op](a, b)))


def _merge(report: WitnessReport, sub: WitnessReport, prefix: str = "") -> None:
    for c in sub.conditions:
        report.add(Condition(prefix + c.cid, c.lhs, c.op, c.rhs, c.passed))


def _raises(report: WitnessReport, cid: str, exc_type, fn) -> None:
    try:
        fn()
    except exc_type:
        report.add(Condition(cid, exc_type.__name__, "==", "raised", True))
    else:
        report.add(Condition(cid, exc_type.__name__, "==", "not-raised", False))


def _stats(circuit: Circuit):
    return postselect_stats(expand_mcx(circuit), default_input(circuit))


# --- randomized fixtures ------------------------------------------------------


def random_circuit(rng: random.Random, *, allow_mcx: bool = False) -> tuple[Circuit, str]:
    """Seeded random circuit plus a matching input assignment.

    With ``allow_mcx`` the top two qubits are reserved as a declared work
    pool so macro expansion always has room to borrow.
    """
    pool = 2 if allow_mcx else 0
    width = rng.randint(6, 8) if allow_mcx else rng.randint(3, 8)
    active = width - pool
    kinds = ["h", "h", "x", "cx", "cx", "ccx", "ccx"]
    if allow_mcx:
        kinds += ["mcx", "mcx"]
    gates = []
    h_left = 12
    for _ in range(rng.randint(4, 24)):
        kind = rng.choice(kinds)
        if kind == "h" and h_left == 0:
            kind = "x"
        if kind == "h":
            h_left -= 1
            gates.append(h(rng.randrange(active)))
        elif kind == "x":
            gates.append(x(rng.randrange(active)))
        elif kind == "cx":
            c, t = rng.sample(range(active), 2)
            gates.append(cx(c, t, rng.random() < 0.3))
        elif kind == "ccx":
            c1, c2, t = rng.sample(range(active), 3)
            gates.append(ccx(c1, c2, t, rng.random() < 0.3, rng.random() < 0.3))
        else:
            n_ctl = rng.randint(3, min(4, active - 1))
            qs = rng.sample(range(active), n_ctl + 1)
            gates.append(mcx(qs[:-1], qs[-1], [rng.random() < 0.3 for _ in qs[:-1]]))
    output = rng.randrange(active)
    postselect = None
    if rng.random() < 0.5:
        postselect = rng.choice([q for q in range(active) if q != output])
    ancillas = tuple((q, 0) for q in range(active, width))
    bits = "".join(rng.choice("01") for _ in range(active)) + "0" * pool
    return Circuit(width, tuple(gates), output, postselect, ancillas), bits


def random_machine(rng: random.Random, input_width: int, path_width: int) -> PredicateCircuit:
    """Random accept predicate as an XOR of polarized control terms."""
    accept = input_width + path_width
    gates = []
    for _ in range(rng.randint(1, 6)):
        n_ctl = rng.randint(0, min(4, accept))
        ctls = sorted(rng.sample(range(accept), n_ctl))
        gates.append(mcx(ctls, accept, [rng.random() < 0.5 for _ in ctls]))
    return PredicateCircuit(input_width, path_width, 0, tuple(gates), accept)


# --- shared fixture for the gap-pair scenarios --------------------------------


@dataclass(frozen=True)
class _ToyFixture:
    labels: dict[str, bool]
    g1: dict[str, int]
    f1: dict[str, int]
    g2: dict[str, int]
    f2: dict[str, int]
    q: int
    big_g1: dict[str, int]
    big_g2: dict[str, int]
    m1: PredicateCircuit
    m2: PredicateCircuit

    def postsel_numerator(self, w: str) -> int:
        return 4 * (self.f1[w] * self.f2[w]) ** 2

    @property
    def postsel_exp(self) -> int:
        return 2 * self.q + 2


def _toy_fixture() -> _ToyFixture:
    """Two-bit toy language (in iff the first bit is 1) with sharp witnesses.

    The cross products h1 = g1*f2 and h2 = g2*f1 put both witness ratios over
    the common denominator f1*f2; the machines realize twice those values as
    raw gaps over q = 3 path bits.
    """
    labels = {w: w[0] == "1" for w in ("00", "01", "10", "11")}
    g1 = {w: 2 if labels[w] else 0 for w in labels}
    f1 = {w: 2 for w in labels}
    g2 = {w: f1[w] - g1[w] for w in labels}
    f2 = {w: 2 for w in labels}
    q = 3
    big_g1 = {w: 2 * g1[w] * f2[w] for w in labels}
    big_g2 = {w: 2 * g2[w] * f1[w] for w in labels}
    m1 = tabulated_count_machine(
        {w: ((1 << q) + big_g1[w]) // 2 for w in labels}, 2, q
    )
    m2 = tabulated_count_machine(
        {w: ((1 << q) + big_g2[w]) // 2 for w in labels}, 2, q
    )
    return _ToyFixture(labels, g1, f1, g2, f2, q, big_g1, big_g2, m1, m2)


# --- scenarios ----------------------------------------------------------------


def scenario_oracle_equivalence(seed: int, r: int) -> WitnessReport:
    """Dense simulation and branch enumeration agree on random circuits."""
    rng = _rng(seed, "oracle-equivalence")
    report = WitnessReport("oracle-equivalence")
    for i in range(100):
        circ, bits = random_circuit(rng, allow_mcx=(i % 3 == 2))
        dense = run(expand_mcx(circ), bits)
        if circ.postselect is not None:
            constraints = [(circ.output, 1), (circ.postselect, 1)]
            lhs = joint_prob(dense, constraints)
        else:
            constraints = [(circ.output, 1)]
            lhs = measure_prob(dense, circ.output, 1)
        g, m = path_sum(circ, bits, constraints)
        _row(report, f"circuit{i:03d}:prob", lhs, "==", Fraction(g, 1 << m))
        if circ.postselect is not None:
            gm, mm = path_sum(circ, bits, [(circ.postselect, 1)])
            _row(
                report,
                f"circuit{i:03d}:marginal",
                measure_prob(dense, circ.postselect, 1),
                "==",
                Fraction(gm, 1 << mm),
            )
        if i < 20:
            gs, ms = path_sum_slow(circ, bits, constraints)
            _row(
                report,
                f"circuit{i:03d}:slow",
                Fraction(gs, 1 << ms),
                "==",
                Fraction(g, 1 << m),
            )
    return report


def scenario_gap_squared(seed: int, r: int) -> WitnessReport:
    """Single-machine compiler: P(o=1) equals the squared gap exactly."""
    rng = _rng(seed, "gap-squared")
    report = WitnessReport("gap-squared")

    pinned = compile_gap_squared(make_gap_machine(2, 2), "")
    _row(
        report,
        "pinned-gap2-q2",
        measure_prob(run(expand_mcx(pinned), default_input(pinned)), pinned.output, 1),
        "==",
        Fraction(1, 4),
    )
    all_accept = PredicateCircuit(0, 2, 0, (x(2),), 2)
    certain = compile_gap_squared(all_accept, "")
    _row(
        report,
        "pinned-all-accept",
        measure_prob(run(expand_mcx(certain), default_input(certain)), certain.output, 1),
        "==",
        Fraction(1),
    )

    for i in range(50):
        in_w = rng.randint(0, 2)
        q = rng.randint(1, 4)
        mach = random_machine(rng, in_w, q)
        w = "".join(rng.choice("01") for _ in range(in_w))
        g_val = gap(mach, w).gap
        circ = compile_gap_squared(mach, w)
        state = run(expand_mcx(circ), default_input(circ))
        _row(
            report,
            f"machine{i:02d}:prob",
            measure_prob(state, circ.output, 1),
            "==",
            gap_squared_prob(g_val, q),
        )
        go, mo = path_sum(circ, default_input(circ), [(circ.output, 1)])
        _row(
            report,
            f"machine{i:02d}:oracle",
            Fraction(go, 1 << mo),
            "==",
            gap_squared_prob(g_val, q),
        )
    return report


def scenario_awpp_forward(seed: int, r: int) -> WitnessReport:
    """Witness pair -> pair compiler: exact statistics and sharp conditionals."""
    fx = _toy_fixture()
    report = WitnessReport("awpp-forward")
    _merge(report, check_awpp_witness(fx.g1, fx.f1, fx.labels, 5), "w1:")
    flipped = {w: not v for w, v in fx.labels.items()}
    _merge(report, check_awpp_witness(fx.g2, fx.f2, flipped, 5), "w2:")

    stats = {}
    for w in sorted(fx.labels):
        circ = compile_pair_postsel(fx.m1, fx.m2, w, k=0, scale_mode="fp_of_input")
        st = _stats(circ)
        stats[w] = st
        p_ref, cond_ref = pair_stats(fx.big_g1[w], fx.big_g2[w], fx.q, 0)
        _row(report, f"w={w}:postsel", st.p_post, "==", p_ref)
        _row(report, f"w={w}:conditional", st.p_cond, "==", cond_ref)
        gj, mj = path_sum(
            circ, default_input(circ), [(circ.output, 1), (circ.postselect, 1)]
        )
        _row(report, f"w={w}:oracle-joint", st.p_joint, "==", Fraction(gj, 1 << mj))
        if fx.labels[w]:
            _row(report, f"w={w}:cond-high", st.p_cond, ">=", 1 - Fraction(1, 8))
        else:
            _row(report, f"w={w}:cond-low", st.p_cond, "<=", Fraction(1, 8))

    prof = classify_postsel_profile(
        stats,
        "aFP",
        f={w: fx.postsel_numerator(w) for w in fx.labels},
        q_exp=fx.postsel_exp,
        r2=3,
    )
    _merge(report, prof, "profile:")

    padded = compile_pair_postsel(fx.m1, fx.m2, "11", k=1)
    p_ref, cond_ref = pair_stats(fx.big_g1["11"], fx.big_g2["11"], fx.q, 1)
    st = _stats(padded)
    _row(report, "padded-k1:postsel", st.p_post, "==", p_ref)
    _row(report, "padded-k1:conditional", st.p_cond, "==", cond_ref)

    # boundary instance sitting exactly on the in-language threshold at r=5
    _merge(
        report,
        check_awpp_witness({"1": 31}, {"1": 32}, {"1": True}, 5),
        "boundary:",
    )
    mb1 = make_gap_machine(2 * 31 * 2, 7)
    mb2 = make_gap_machine(2 * 1 * 32, 7)
    cb = compile_pair_postsel(mb1, mb2, "")
    stb = _stats(cb)
    p_ref, cond_ref = pair_stats(124, 64, 7, 0)
    _row(report, "boundary:postsel", stb.p_post, "==", p_ref)
    _row(report, "boundary:conditional", stb.p_cond, "==", cond_ref)
    return report


def scenario_awpp_forward_complement(seed: int, r: int) -> WitnessReport:
    """Complementation: swapping the machines flips the conditional."""
    fx = _toy_fixture()
    report = WitnessReport("awpp-forward-complement")
    for w in sorted(fx.labels):
        _row(
            report,
            f"w={w}:complement-gap",
            gap(complement_machine(fx.m1), w).gap,
            "==",
            -fx.big_g1[w],
        )
        p_ref, cond_ref = pair_stats(fx.big_g1[w], fx.big_g2[w], fx.q, 0)
        st = _stats(compile_pair_postsel(fx.m2, fx.m1, w))
        _row(report, f"w={w}:swap-postsel", st.p_post, "==", p_ref)
        _row(report, f"w={w}:swap-conditional", st.p_cond, "==", 1 - cond_ref)
        if fx.labels[w]:
            _row(report, f"w={w}:swap-cond-low", st.p_cond, "<=", Fraction(1, 8))
        else:
            _row(report, f"w={w}:swap-cond-high", st.p_cond, ">=", 1 - Fraction(1, 8))
        # a gap's sign never shows in the statistics
        if fx.big_g1[w] != 0:
            stn = _stats(compile_pair_postsel(complement_machine(fx.m1), fx.m2, w))
            _row(report, f"w={w}:sign-invariant", stn.p_cond, "==", cond_ref)
    zero = make_gap_machine(0, 3)
    _raises(
        report,
        "zero-gaps-raise",
        ZeroPostselection,
        lambda: compile_pair_postsel(zero, zero, ""),
    )
    return report


def scenario_awpp_backward(seed: int, r: int) -> WitnessReport:
    """Read a witness pair back out of the compiled circuits via the oracle.

    The joint numerator from branch enumeration, scaled by 2**r2, over the
    declared postselection numerator scaled by (2**r2 + 1), lands in [1-eps, 1]
    or [0, eps] at eps = 1/3 whenever the circuit statistics are within the
    declared windows at r1 = r2 = 3.
    """
    fx = _toy_fixture()
    r2 = 3
    report = WitnessReport("awpp-backward")
    g_wit: dict[str, int] = {}
    f_wit: dict[str, int] = {}
    for w in sorted(fx.labels):
        circ = compile_pair_postsel(fx.m1, fx.m2, w)
        gj, mj = path_sum(
            circ, default_input(circ), [(circ.output, 1), (circ.postselect, 1)]
        )
        g_wit[w] = gj << r2
        f_wit[w] = fx.postsel_numerator(w) * ((1 << r2) + 1) << (mj - fx.postsel_exp)
    _merge(report, check_awpp_witness(g_wit, f_wit, fx.labels, Fraction(1, 3)))
    lower = (1 - Fraction(1, 8)) ** 2 / (1 + Fraction(1, 8))
    _row(report, "bound-value", lower, "==", Fraction(49, 72))
    _row(report, "bound-instantiation", lower, ">=", Fraction(2, 3))
    return report


def scenario_app_forward(seed: int, r: int) -> WitnessReport:
    """Length-indexed normalizer: statistics fit the size-only profiles."""
    fx = _toy_fixture()
    report = WitnessReport("app-forward")
    norm_machine = tabulated_count_machine({"11": ((1 << 7) + 64) // 2}, 2, 7)
    f_fn = FPFunction("gap_of_length", 7, machine=norm_machine)
    stats = {}
    for w in sorted(fx.labels):
        _row(report, f"w={w}:normalizer", f_fn(w), "==", fx.postsel_numerator(w))
        circ = compile_pair_postsel(fx.m1, fx.m2, w, k=0, scale_mode="gap_of_length")
        st = _stats(circ)
        stats[w] = st
        p_ref, cond_ref = pair_stats(fx.big_g1[w], fx.big_g2[w], fx.q, 0)
        _row(report, f"w={w}:postsel", st.p_post, "==", p_ref)
        _row(report, f"w={w}:conditional", st.p_cond, "==", cond_ref)
    _merge(report, classify_postsel_profile(stats, "post"), "profile-post:")
    _merge(
        report,
        classify_postsel_profile(stats, "size", f={2: 64}, q_exp=fx.postsel_exp),
        "profile-size:",
    )
    _merge(
        report,
        classify_postsel_profile(stats, "asize", f={2: 64}, q_exp=fx.postsel_exp, r2=3),
        "profile-asize:",
    )
    return report


def scenario_wpp_promise(seed: int, r: int) -> WitnessReport:
    """Two-valued conditionals with a fixed postselection numerator."""
    report = WitnessReport("wpp-promise")
    q = 2
    fixtures = {"0": (0, 2), "1": (2, 0)}
    stats = {}
    for label in sorted(fixtures):
        v1, v2 = fixtures[label]
        circ = compile_pair_postsel(
            make_gap_machine(v1, q), make_gap_machine(v2, q), "", k=0, scale_mode="none"
        )
        st = _stats(circ)
        stats[label] = st
        p_ref, cond_ref = pair_stats(v1, v2, q, 0)
        _row(report, f"w={label}:postsel", st.p_post, "==", p_ref)
        _row(report, f"w={label}:conditional", st.p_cond, "==", cond_ref)
        _row(
            report,
            f"w={label}:two-valued",
            st.p_cond * (1 - st.p_cond),
            "==",
            Fraction(0),
        )
        _row(report, f"w={label}:floor", st.p_post, ">=", Fraction(1, 1 << (2 * q)))
        gj, mj = path_sum(
            circ, default_input(circ), [(circ.output, 1), (circ.postselect, 1)]
        )
        _row(report, f"w={label}:oracle-joint", st.p_joint, "==", Fraction(gj, 1 << mj))
    table = {label: 4 for label in fixtures}
    _merge(
        report,
        classify_postsel_profile(stats, "FP", f=table, q_exp=2 * q + 2),
        "profile-fp:",
    )
    _merge(
        report,
        classify_postsel_profile(stats, "FQP", f=table, q_exp=2 * q + 2),
        "profile-fqp:",
    )
    return report


def scenario_postsel_rescale(seed: int, r: int) -> WitnessReport:
    """Rescaling halves P(p=1) per step and leaves the conditional alone."""
    rng = _rng(seed, "postsel-rescale")
    report = WitnessReport("postsel-rescale")
    made = 0
    attempts = 0
    while made < 20 and attempts < 400:
        attempts += 1
        circ, bits = random_circuit(rng)
        if circ.postselect is None:
            continue
        try:
            base = postselect_stats(circ, bits)
        except ZeroPostselection:
            continue
        t = made % 4
        scaled = rescale_postsel(circ, t)
        wide_bits = bits + "0" * (scaled.width - circ.width)
        st = postselect_stats(expand_mcx(scaled), wide_bits)
        _row(
            report,
            f"circuit{made:02d}:postsel-t{t}",
            st.p_post,
            "==",
            _frac(base.p_post) / (1 << t),
        )
        _row(report, f"circuit{made:02d}:conditional-t{t}", st.p_cond, "==", base.p_cond)
        made += 1
    for m in range(0, 5):
        for a in range(0, (1 << m) + 1):
            flag = gadget_biased_flag(a, m)
            state = run(expand_mcx(flag), default_input(flag))
            _row(
                report,
                f"biased-flag:m={m}:a={a}",
                measure_prob(state, flag.output, 1),
                "==",
                Fraction(a, 1 << m),
            )
    return report


def _uniform_circuit(h_exp: int, f_post: int, f_out: int | None) -> Circuit:
    """h coins; postselect on [coins < f_post]; output [coins < f_out] or coin 0."""
    b = _Builder()
    coins = b.alloc(h_exp)
    p_flag = b.alloc1()
    for qb in coins:
        b.add(h(qb))
    b.extend(emit_less_than(coins, f_post, p_flag))
    if f_out is None:
        out = coins[0]
    else:
        out = b.alloc1()
        b.extend(emit_less_than(coins, f_out, out))
    return b.finish(output=out, postselect=p_flag)


def scenario_exact_postsel_adjust(seed: int, r: int) -> WitnessReport:
    """Mix-then-rescale drives P(p=1) to exactly 2**-h for every numerator."""
    report = WitnessReport("exact-postsel-adjust")
    for h_exp in range(1, 7):
        for f in range(1, (1 << h_exp) + 1):
            v = _uniform_circuit(h_exp, f, None)
            w2 = compile_fqp_to_exp(v, f, h_exp)
            gj, mj = path_sum(w2, default_input(w2), [(w2.postselect, 1)])
            _row(
                report,
                f"h={h_exp}:f={f}:postsel",
                Fraction(gj, 1 << mj),
                "==",
                Fraction(1, 1 << h_exp),
            )

    v_hi = _uniform_circuit(4, 10, 9)
    inner = _stats(v_hi)
    _row(report, "fixture-hi:inner-cond", inner.p_cond, "==", Fraction(9, 10))
    mixed = mix_with_constant(v_hi, 10, 4)
    st = _stats(mixed)
    _row(report, "fixture-hi:mixed-postsel", st.p_post, "==", Fraction(8, 16))
    _row(
        report,
        "fixture-hi:mixed-cond",
        st.p_cond,
        "==",
        mixed_conditional(10, 3, Fraction(9, 10)),
    )
    _row(report, "fixture-hi:mixed-cond-value", st.p_cond, "==", Fraction(3, 4))
    _row(report, "fixture-hi:cond-floor", st.p_cond, ">=", Fraction(7, 10))
    final = rescale_postsel(mixed, 3)
    stf = _stats(final)
    _row(report, "fixture-hi:final-postsel", stf.p_post, "==", Fraction(1, 16))
    _row(report, "fixture-hi:final-cond", stf.p_cond, "==", Fraction(3, 4))
    _merge(
        report,
        classify_postsel_profile({"f=10,h=4": stf}, "exp", u=4),
        "profile:",
    )

    v_lo = _uniform_circuit(4, 10, 1)
    inner_lo = _stats(v_lo)
    _row(report, "fixture-lo:inner-cond", inner_lo.p_cond, "==", Fraction(1, 10))
    mixed_lo = mix_with_constant(v_lo, 10, 4)
    st_lo = _stats(mixed_lo)
    _row(report, "fixture-lo:mixed-cond", st_lo.p_cond, "==", Fraction(1, 4))
    _row(report, "fixture-lo:cond-ceiling", st_lo.p_cond, "<=", Fraction(3, 10))

    _raises(
        report,
        "wrong-numerator-raises",
        StatsMismatch,
        lambda: mix_with_constant(v_hi, 9, 4),
    )
    return report


def scenario_classical_upcoup(seed: int, r: int) -> WitnessReport:
    """Coin machines coupling two counters with a unique accepting path."""
    report = WitnessReport("classical-upcoup")

    def point_machine(q: int, j: int) -> PredicateCircuit:
        negs = [((j >> i) & 1) == 0 for i in range(q)]
        return PredicateCircuit(0, q, 0, (mcx(list(range(q)), q, negs),), q)

    def empty_machine(q: int) -> PredicateCircuit:
        return PredicateCircuit(0, q, 0, (), q)

    for q in range(1, 7):
        for owner in ("first", "second"):
            good = 0
            for j in range(1 << q):
                if owner == "first":
                    tm = build_upcoup(point_machine(q, j), empty_machine(q), "")
                    want = Fraction(1)
                else:
                    tm = build_upcoup(empty_machine(q), point_machine(q, j), "")
                    want = Fraction(0)
                st = run_ptm(tm, "")
                if _frac(st.p_post) == Fraction(1, 1 << q) and st.p_cond == want:
                    good += 1
            report.add(
                Condition(
                    f"q={q}:{owner}-owner",
                    str(good),
                    "==",
                    str(1 << q),
                    good == (1 << q),
                )
            )
    _raises(
        report,
        "two-paths-raise",
        PromiseViolation,
        lambda: build_upcoup(point_machine(2, 0), point_machine(2, 1), ""),
    )
    _raises(
        report,
        "no-path-raises",
        PromiseViolation,
        lambda: build_upcoup(empty_machine(2), empty_machine(2), ""),
    )

    def three_quarters(w: str, coins: int) -> tuple[int, int]:
        return (1 if coins < 4 else 0, 1 if coins < 3 else 0)

    tm = ProbTM(
        3,
        three_quarters,
        fp_numerators={"1": 1},
        fp_exponent=1,
        epsilon=Fraction(1, 3),
        instances={"1": True},
    )
    wit = wapp_witness(tm)
    ratio = wit.ratio("1")
    _row(report, "witness-ratio", ratio, "==", Fraction(3, 4))
    _merge(report, check_wapp_witness({"1": ratio}, {"1": True}, wit.epsilon), "eps1/3:")
    # margin 1/2 puts the acceptance gate exactly at the ratio; strict fails
    gate = (1 + Fraction(1, 2)) / 2
    _row(report, "eps1/2-rejected", ratio, "<=", gate)
    _row(report, "sup-epsilon", 2 * ratio - 1, "==", Fraction(1, 2))

    def coin_flip(w: str, coins: int) -> tuple[int, int]:
        return (1, 1 if coins < 2 else 0)

    st = run_ptm(ProbTM(2, coin_flip), "1")
    _row(report, "half-ratio", st.p_cond, "==", Fraction(1, 2))
    _row(report, "half-fails-in", st.p_cond, "<=", (1 + Fraction(1, 2)) / 2)
    _row(report, "half-fails-out", st.p_cond, ">=", (1 - Fraction(1, 2)) / 2)

    bad = ProbTM(
        3,
        three_quarters,
        fp_numerators={"1": 3},
        fp_exponent=1,
        epsilon=Fraction(1, 3),
        instances={"1": True},
    )
    _raises(report, "wrong-declaration-raises", StatsMismatch, lambda: wapp_witness(bad))

    def never(w: str, coins: int) -> tuple[int, int]:
        return (0, 0)

    _raises(
        report,
        "no-postselection-raises",
        ZeroPostselection,
        lambda: run_ptm(ProbTM(2, never), "1"),
    )
    return report


def scenario_pp_to_postsel(seed: int, r: int) -> WitnessReport:
    """Majority-vote gap pair routed through the two-coin selector."""
    if r < 2:
        raise ValueError("r must be >= 2")
    report = WitnessReport("pp-to-postsel")
    mg = tabulated_count_machine({"1": 3, "0": 2}, 1, 2)
    mf = tabulated_count_machine({"1": 3, "0": 3}, 1, 2)
    labels = {"1": True, "0": False}
    in_bound = Fraction(1, 2) + Fraction(1, 22) - Fraction(12, 11) / (1 << r)
    out_bound = Fraction(3, 1 << (2 * r))
    for w in sorted(labels):
        circ = compile_pp_instance(mg, mf, w, r)
        st = _stats(circ)
        gg = gap(mg, w).gap
        gf = gap(mf, w).gap
        denom = 3 * gg * gg + gf * gf
        _row(report, f"w={w}:postsel", st.p_post, "==", Fraction(denom, 1 << 10))
        _row(report, f"w={w}:conditional", st.p_cond, "==", Fraction(3 * gg * gg, denom))
        _row(report, f"w={w}:floor", st.p_post, ">=", Fraction(1, 1 << 10))
        gj, mj = path_sum(
            circ, default_input(circ), [(circ.output, 1), (circ.postselect, 1)]
        )
        _row(report, f"w={w}:oracle-joint", st.p_joint, "==", Fraction(gj, 1 << mj))
        if labels[w]:
            _row(report, f"w={w}:cond-high", st.p_cond, ">=", in_bound)
        else:
            _row(report, f"w={w}:cond-low", st.p_cond, "<=", out_bound)
    rho = 1 - Fraction(1, 1 << r)
    _row(
        report,
        "bound-instantiation",
        3 * rho**2 / (3 * rho**2 + 1),
        ">=",
        in_bound,
    )
    _row(
        report,
        "bound-value-r4",
        Fraction(1, 2) + Fraction(1, 22) - Fraction(12, 11) / 16,
        "==",
        Fraction(21, 44),
    )
    zero_f = tabulated_count_machine({"1": 2, "0": 2}, 1, 2)
    _raises(
        report,
        "zero-f-raises",
        ValueError,
        lambda: compile_pp_instance(mg, zero_f, "1", r),
    )
    return report


def scenario_error_algebra(seed: int, r: int) -> WitnessReport:
    """Exact inequality ladder across the sharpness range."""
    report = WitnessReport("error-algebra")
    for rr in range(2, max(16, r) + 1):
        _merge(report, verify_error_algebra(rr), f"r={rr}:")
    return report


SCENARIOS = {
    "oracle-equivalence": scenario_oracle_equivalence,
    "gap-squared": scenario_gap_squared,
    "awpp-forward": scenario_awpp_forward,
    "awpp-forward-complement": scenario_awpp_forward_complement,
    "awpp-backward": scenario_awpp_backward,
    "app-forward": scenario_app_forward,
    "wpp-promise": scenario_wpp_promise,
    "postsel-rescale": scenario_postsel_rescale,
    "exact-postsel-adjust": scenario_exact_postsel_adjust,
    "classical-upcoup": scenario_classical_upcoup,
    "pp-to-postsel": scenario_pp_to_postsel,
    "error-algebra": scenario_error_algebra,
}

SUITES = {
    "all": list(SCENARIOS),
    "awpp": ["awpp-forward", "awpp-forward-complement", "awpp-backward"],
    "app": ["app-forward"],
    "wpp": ["wpp-promise"],
    "theorem5": ["postsel-rescale"],
    "theorem6": ["exact-postsel-adjust"],
    "classical": ["classical-upcoup"],
    "pp": ["pp-to-postsel"],
    "algebra": ["error-algebra"],
}


def run_scenario(name: str, seed: int = 42, r: int = 4) -> WitnessReport:
    if name not in SCENARIOS:
        raise ValueError(f"unknown scenario {name!r}")
    return SCENARIOS[name](seed, r)


def run_suite(suite: str, seed: int = 42, r: int = 4) -> list[WitnessReport]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [run_scenario(name, seed, r) for name in SUITES[suite]]
