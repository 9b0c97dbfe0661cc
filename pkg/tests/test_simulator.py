"""Dense exact simulator: known states, invariants, caps, postselection."""

import random

import numpy as np
import pytest
from fractions import Fraction

from postsel import (
    CapExceeded,
    Circuit,
    DyadicRational,
    SqrtDyadic,
    ZeroPostselection,
    ancillas_restored,
    ccx,
    cx,
    expand_mcx,
    h,
    joint_prob,
    mcx,
    measure_prob,
    postselect_stats,
    run,
    x,
)

# ===================================================================
# known small states
# ===================================================================


def test_single_hadamard_is_uniform():
    st = run(Circuit(1, (h(0),), 0), "0")
    assert st.m == 1
    assert list(st.coeffs) == [1, 1]
    assert st.amplitude(0) == SqrtDyadic(0, 1, 1)  # 1/sqrt2 == sqrt2/2
    assert measure_prob(st, 0, 1) == DyadicRational(1, 1)


def test_hh_is_identity():
    st = run(Circuit(1, (h(0), h(0)), 0), "0").canonical()
    assert st.m == 0
    assert list(st.coeffs) == [1, 0]


def test_hh_from_one_interferes_back():
    st = run(Circuit(1, (h(0), h(0)), 0), "1").canonical()
    assert list(st.coeffs) == [0, 1]


def test_bell_pair():
    st = run(Circuit(2, (h(0), cx(0, 1)), 0), "00")
    assert st.m == 1
    assert list(st.coeffs) == [1, 0, 0, 1]  # (|00> + |11>)/sqrt2
    assert measure_prob(st, 0, 1) == DyadicRational(1, 1)
    assert joint_prob(st, [(0, 1), (1, 0)]) == DyadicRational(0, 0)
    assert joint_prob(st, [(0, 1), (1, 1)]) == DyadicRational(1, 1)


def test_x_and_negated_control():
    st = run(Circuit(2, (x(0), cx(0, 1, neg=True)), 0), "00")
    assert list(st.coeffs) == [0, 1, 0, 0]  # |01> as (q1 q0); no fire on 1
    st = run(Circuit(2, (cx(0, 1, neg=True),), 0), "00")
    assert list(st.coeffs) == [0, 0, 1, 0]  # fires on 0: |10>


def test_ccx_only_on_11():
    c = Circuit(3, (ccx(0, 1, 2),), 0)
    for z0 in range(8):
        st = run(c, format(z0, "03b")[::-1])
        expect = z0 ^ (0b100 if (z0 & 0b11) == 0b11 else 0)
        assert st.coeffs[expect] == 1 and st.norm_sq() == 1


# ===================================================================
# invariants
# ===================================================================


def _random_flat_circuit(rng: random.Random, width: int, n_gates: int) -> Circuit:
    gates = []
    kinds = [k for k, need in (("h", 1), ("x", 1), ("cx", 2), ("ccx", 3)) if need <= width]
    for _ in range(n_gates):
        kind = rng.choice(kinds)
        need = {"h": 1, "x": 1, "cx": 2, "ccx": 3}[kind]
        qs = rng.sample(range(width), need)
        negs = [rng.random() < 0.5 for _ in qs[:-1]]
        gates.append(mcx(qs[:-1], qs[-1], negs))
    return Circuit(width, tuple(gates), 0)


def test_norm_invariant_sum_of_squares_is_2_to_m():
    """Unitarity in integer form: sum(coeffs**2) == 2**m after every run."""
    rng = random.Random(3)
    for _ in range(60):
        width = rng.randint(1, 6)
        c = _random_flat_circuit(rng, width, rng.randint(0, 20))
        bits = "".join(rng.choice("01") for _ in range(width))
        st = run(c, bits)
        assert st.norm_sq() == 1 << st.m
        assert st.m == c.h_count


def test_marginals_sum_to_one():
    rng = random.Random(4)
    for _ in range(30):
        width = rng.randint(1, 5)
        c = _random_flat_circuit(rng, width, 12)
        st = run(c, "0" * width)
        for q in range(width):
            total = measure_prob(st, q, 0) + measure_prob(st, q, 1)
            assert total == DyadicRational(1, 0)


def test_view_kernel_matches_mask_kernel():
    """The reshaped-view permutation path agrees with the arange-mask path."""
    rng = random.Random(5)
    for _ in range(25):
        width = rng.randint(2, 6)
        c = _random_flat_circuit(rng, width, 15)
        bits = "".join(rng.choice("01") for _ in range(width))
        fast = run(c, bits)
        # Force the fallback by making the width look huge to the view check:
        # simulate manually through the mask branch via a monkeyed reshape cap.
        slow_coeffs = _mask_reference(c, bits)
        assert list(fast.coeffs) == slow_coeffs


def _mask_reference(circuit: Circuit, bits: str) -> list:
    """Reference permutation kernel: arange masks, no views."""
    n = circuit.width
    vec = np.zeros(1 << n, dtype=np.int64)
    vec[sum(int(b) << i for i, b in enumerate(bits))] = 1
    idx = np.arange(1 << n, dtype=np.int64)
    for g in circuit.gates:
        if g.kind == "h":
            v3 = vec.reshape(-1, 2, 1 << g.target)
            lo = v3[:, 0, :].copy()
            hi = v3[:, 1, :].copy()
            v3[:, 0, :] = lo + hi
            v3[:, 1, :] = lo - hi
        else:
            sel = ((idx >> g.target) & 1) == 0
            for c, neg in zip(g.controls, g.negated):
                sel &= ((idx >> c) & 1) == (0 if neg else 1)
            i0 = idx[sel]
            i1 = i0 | (1 << g.target)
            vec[i0], vec[i1] = vec[i1], vec[i0].copy()
    return list(vec)


def test_object_dtype_fallback_for_many_hadamards():
    """More than 60 h gates switches to Python-int coefficients, still exact."""
    gates = tuple(h(q) for _ in range(31) for q in (0, 1)) + (h(0),)
    c = Circuit(2, gates, 0)
    assert c.h_count == 63
    st = run(c, "00")
    assert st.coeffs.dtype == object
    assert st.norm_sq() == 1 << 63
    canon = st.canonical()
    assert canon.m == 1  # 62 of the 63 branchings cancel pairwise
    # qubit 0 saw 32 h's (identity), qubit 1 saw 31 (one net h)
    assert list(canon.coeffs) == [1, 0, 1, 0]


def test_int64_path_for_few_hadamards():
    st = run(Circuit(2, (h(0), h(1)), 0), "00")
    assert st.coeffs.dtype == np.int64


# ===================================================================
# guard rails
# ===================================================================


def test_width_cap():
    c = Circuit(25, (), 0)
    with pytest.raises(CapExceeded):
        run(c, "0" * 25)
    # explicit override admits it
    st = run(c, "0" * 25, max_qubits=25)
    assert st.norm_sq() == 1


def test_rejects_unexpanded_mcx():
    c = Circuit(6, (mcx([0, 1, 2], 3),), 0, ancillas=((4, 0), (5, 0)))
    with pytest.raises(ValueError, match="expand_mcx"):
        run(c, "000000")
    run(expand_mcx(c), "000000")  # expanded form is accepted


def test_rejects_input_contradicting_ancilla():
    c = Circuit(2, (), 0, ancillas=((1, 1),))
    with pytest.raises(ValueError, match="ancilla"):
        run(c, "00")
    run(c, "01")


def test_rejects_bad_bits():
    with pytest.raises(ValueError):
        run(Circuit(2, (), 0), "0")
    with pytest.raises(ValueError):
        run(Circuit(2, (), 0), "0z")


# ===================================================================
# postselection statistics
# ===================================================================


def test_postselect_stats_bell():
    c = Circuit(2, (h(0), cx(0, 1)), output=1, postselect=0)
    st = postselect_stats(c, "00")
    assert st.p_post == DyadicRational(1, 1)
    assert st.p_joint == DyadicRational(1, 1)
    assert st.p_cond == Fraction(1)


def test_postselect_stats_conditional_is_exact_fraction():
    # p ~ uniform on 2 coins; o = AND of the coins; P(o|p) needs thirds.
    c = Circuit(
        4,
        (h(0), h(1), ccx(0, 1, 2), cx(0, 3), cx(1, 3), ccx(0, 1, 3)),
        output=2,
        postselect=3,  # p == OR of the coins
    )
    st = postselect_stats(c, "0000")
    assert st.p_post == DyadicRational(3, 2)
    assert st.p_joint == DyadicRational(1, 2)
    assert st.p_cond == Fraction(1, 3)


def test_postselect_stats_zero_raises():
    c = Circuit(2, (), output=0, postselect=1)
    with pytest.raises(ZeroPostselection):
        postselect_stats(c, "00")


def test_postselect_stats_requires_postselect_qubit():
    with pytest.raises(ValueError):
        postselect_stats(Circuit(2, (), 0), "00")


def test_joint_prob_conflicting_constraints_is_zero():
    st = run(Circuit(2, (h(0),), 0), "00")
    assert joint_prob(st, [(0, 0), (0, 1)]) == DyadicRational(0, 0)
    assert joint_prob(st, [(0, 1), (0, 1)]) == DyadicRational(1, 1)


def test_ancillas_restored_detects_dirt():
    c = Circuit(3, (mcx([0, 1], 2),), 0, ancillas=((2, 0),))
    good = run(c.with_gates((x(0),)), "000")
    assert ancillas_restored(c, good)
    bad = run(c.with_gates((x(2),)), "000")
    assert not ancillas_restored(c, bad)
