"""How long until one bank of alternatives is exhausted.

A bank of `a` alternatives is sampled uniformly with replacement, one draw
per test, until every alternative has appeared at least once.  This script
walks through the exact distribution of that waiting time for a small bank:
the mean, the survival curve, and a cross-check against an independent
exact-counting oracle.

Run:  python3 demos/single_bank.py
"""

from fractions import Fraction

from bankcover import (
    cdf_oracle,
    expected_single_bank,
    single_bank_cdf,
    single_bank_survival,
)

A = 6

print(f"bank of {A} alternatives, drawn uniformly with replacement")
print(f"expected draws to see all {A}: {expected_single_bank(A):.6f}")
print(f"  (equals {A} * H_{A} = {A} * {float(sum(Fraction(1, k) for k in range(1, A + 1))):.6f})")
print()

print(" y   P(Y > y)        P(Y <= y)")
for y in range(A - 1, 3 * A + 1):
    surv = single_bank_survival(A, y)
    cdf = single_bank_cdf(A, y)
    print(f"{y:2d}   {surv.p:.10f}   {cdf.p:.10f}")
print()

print("cross-check against exact rational counting (surjection oracle):")
for y in (A, 2 * A, 4 * A):
    closed = single_bank_cdf(A, y).p
    exact = cdf_oracle(A, y)
    print(f"  y={y:2d}: closed form {closed:.15f}, oracle {float(exact):.15f}, "
          f"difference {abs(closed - float(exact)):.2e}")
