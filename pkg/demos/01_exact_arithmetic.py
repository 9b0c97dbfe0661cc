"""
Exact scalars: dyadic rationals and the sqrt(2) ring
====================================================

Every probability a Hadamard+Toffoli circuit can produce is an integer over
a power of two, and every amplitude lives in Z[sqrt(2)] scaled the same way.
This demo exercises the three scalar types the package computes with —
no floats anywhere.
"""

from postsel import DyadicRational, PathAmplitude, SqrtDyadic

# dyadic rationals normalize to an odd numerator (or exponent zero)
p = DyadicRational(12, 5)
print("12/2^5 canonicalizes to", p)            # 3/2^3
print("as a Fraction:", p.as_fraction())

# arithmetic stays exact at any size
tiny = DyadicRational(1, 400)
print("1/2^400 + 1/2^400 =", tiny + tiny)      # 1/2^399
print("comparison: 1/2^400 < 1/2^399:", tiny < tiny + tiny)

# amplitudes: (a + b*sqrt(2)) / 2^k, with sqrt(2)^2 = 2 built into *
amp = SqrtDyadic(1, 1, 1)                      # (1 + sqrt2)/2
print("((1+sqrt2)/2)^2 =", amp * amp)          # (3 + 2*sqrt2)/4

# a single path contributes c / sqrt(2)^m; squaring gives a probability
contrib = PathAmplitude(3, 5)
print("path weight 3/sqrt2^5 squared =", contrib.square())   # 9/2^5
print("embedded in the ring:", contrib.as_sqrt_dyadic())

# interference: two paths with weights +1 and -1 over sqrt(2)^2 cancel
plus = PathAmplitude(1, 2).as_sqrt_dyadic()
minus = PathAmplitude(-1, 2).as_sqrt_dyadic()
total = plus + minus
print("(+1 - 1)/sqrt2^2 =", total, "-> probability", (total * total))

# and constructive interference doubles instead
both = plus + plus
print("(+1 + 1)/sqrt2^2 squared =", both * both)   # 1, certainty
assert both * both == SqrtDyadic.from_int(1)
