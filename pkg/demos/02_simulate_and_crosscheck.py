"""
Dense simulation, postselection, and the path-sum oracle
========================================================

A circuit is parsed from the plain-text format, run through the exact
statevector simulator, and then cross-checked against an independent
path-enumeration oracle.  Both routes must agree down to the last bit.
"""

from fractions import Fraction

from postsel import (
    default_input,
    measure_prob,
    parse_circuit,
    path_sum,
    postselect_stats,
    run,
    serialize_circuit,
)

TEXT = """\
qubits 3
h 0
cx 0 1
h 2
ccx 1 2 0
postselect 2
output 1
"""

circ = parse_circuit(TEXT)
print(serialize_circuit(circ).rstrip())
print()

bits = default_input(circ)                       # all zeros here
state = run(circ, bits)

# raw output distribution, before any postselection
for v in (0, 1):
    print(f"P(output={v}) =", measure_prob(state, circ.output, v))

# statistics conditioned on the postselection qubit reading 1
st = postselect_stats(circ, bits)
print("P(post=1)         =", st.p_post)
print("P(out=1, post=1)  =", st.p_joint)
print("P(out=1 | post=1) =", st.p_cond)

# the oracle sums +-1 path contributions over all Hadamard branches:
# P = g / 2^m with m = number of Hadamards
g, m = path_sum(circ, bits, [(circ.output, 1), (circ.postselect, 1)])
print(f"oracle joint      = {g}/2^{m}")
assert st.p_joint.as_fraction() == Fraction(g, 1 << m)  # exact agreement
