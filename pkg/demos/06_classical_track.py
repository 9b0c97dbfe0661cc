"""
Classical coin machines with postselection
==========================================

The classical side mirrors the quantum one: a machine flips t fair coins,
computes a (postselect, output) bit pair, and we enumerate all 2^t outcomes
for exact statistics.  The unique-path coupling turns a promise — exactly
one accepting path across two machines — into a 0/1 conditional.
"""

from fractions import Fraction

from postsel import (
    ProbTM,
    build_upcoup,
    check_wapp_witness,
    run_ptm,
    wapp_witness,
)
from postsel.circuit import mcx
from postsel.counting import PredicateCircuit

# a machine on 3 coins: postselect when coins < 6, output when coins < 5
def evaluate(w: str, coins: int) -> tuple[int, int]:
    return int(coins < 6), int(coins < 5)

tm = ProbTM(3, evaluate)
st = run_ptm(tm, "")
print("P(p=1) =", st.p_post, "  P(o=1 | p=1) =", st.p_cond)

# unique-path coupling: machine A accepts exactly path 101, machine B never
q = 3
accepts_101 = PredicateCircuit(0, q, 0, (mcx([0, 1, 2], q, [False, True, False]),), q)
never = PredicateCircuit(0, q, 0, (), q)

coupled = build_upcoup(accepts_101, never, "")
st = run_ptm(coupled, "")
print("coupled: P(p=1) =", st.p_post, "  conditional =", st.p_cond)
assert st.p_cond == Fraction(1)          # first machine owns the path

flipped = build_upcoup(never, accepts_101, "")
assert run_ptm(flipped, "").p_cond == Fraction(0)

# declared statistics let us extract a counting witness and check the
# strict majority margins at epsilon = 1/2
coupled.fp_numerators = {"": 1}
coupled.fp_exponent = q
coupled.epsilon = Fraction(1, 2)
wit = wapp_witness(coupled)
print("witness ratio:", wit.ratio(""))
report = check_wapp_witness({"": wit.ratio("")}, {"": True}, Fraction(1, 2))
print(report.to_text())

# a fair-coin conditional of exactly 1/2 clears neither margin
half = run_ptm(ProbTM(1, lambda w, c: (1, c)), "").p_cond
assert not check_wapp_witness({"": half}, {"": True}, Fraction(1, 2)).passed
assert not check_wapp_witness({"": half}, {"": False}, Fraction(1, 2)).passed
print("boundary conditional 1/2 rejected on both sides")
