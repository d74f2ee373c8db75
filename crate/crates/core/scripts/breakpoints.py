"""Prints the positive N(0,1) breakpoints used by src/sax.rs.

For |A| symbols the breakpoints are ppf(k / |A|), k = 1 .. |A|-1; the
table keeps only the positive half (negatives are mirrored, 0 is implied
for even |A|).
"""
from scipy.stats import norm

for card in range(2, 11):
    upper = [norm.ppf(k / card) for k in range(1, card) if k / card > 0.5]
    print("    &[" + ", ".join(repr(float(b)) for b in upper) + "],")
