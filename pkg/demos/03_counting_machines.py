"""
Counting machines: predicates over fixed-length path strings
============================================================

A predicate machine reads an instance register and a path register and
computes one accept bit reversibly.  Its gap — accepting paths minus
rejecting paths — is the integer quantity every later construction encodes
into circuit probabilities.
"""

from postsel import (
    complement_machine,
    emit_less_than,
    gap,
    make_gap_machine,
    parse_machine,
    scale_gap,
    serialize_machine,
)
from postsel.circuit import mcx
from postsel.counting import PredicateCircuit

# a hand-built machine over 1 instance bit and 2 path bits:
# accept = instance AND (path == 11)
m = PredicateCircuit(1, 2, 0, (mcx([0, 1, 2], 3),), 3)
for w in ("0", "1"):
    g = gap(m, w)
    print(f"w={w}: accepts={g.accepts} rejects={g.rejects} gap={g.gap}")

# gap programming: a machine over q path bits realizing any even target gap
target = -6
prog = make_gap_machine(target, 3)
print("programmed gap:", gap(prog, "").gap, "== ", target)

# composable adjustments
print("complement:", gap(complement_machine(prog), "").gap)      # +6
print("scaled x5 :", gap(scale_gap(prog, 5), "").gap)            # -30

# comparator gadget: flag <- [path < c], one term per set bit of c
flag_gates = emit_less_than([0, 1, 2], 5, 3)
print("comparator terms for c=5:", len(flag_gates))

# machines round-trip through a plain text format
text = serialize_machine(prog)
print()
print(text.rstrip())
assert gap(parse_machine(text), "").gap == target
