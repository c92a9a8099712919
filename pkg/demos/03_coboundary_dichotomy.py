"""The coboundary dichotomy that decides variance growth for constant maps.

f1 = cos(4 pi x) - cos(2 pi x) solves f1 = u(2x) - u(x) with u = cos(2 pi x),
so over the doubling map its Birkhoff sums telescope and Var(S_n) stays at 1.
Over the tripling map the same equation has no square-integrable solution
(the frequency chain 1, 3, 9, ... accumulates a nonzero total) and the
variance grows linearly.
"""

from seqclt import cosine, l2_inner, linear_combine, variance_covariance
from seqclt.coboundary import result_to_obj, solve, verify
from seqclt.sequences import Constant

f1 = linear_combine([(1.0, cosine(2)), (-1.0, cosine(1))])

for b in (2, 3):
    res = solve(f1, b)
    print(f"base {b}: {result_to_obj(res)}")
    print(f"  independent verification: {verify(f1, b, res)}")

print("\nVar(S_n) under each constant sequence:")
print(f"{'n':>7s} {'base 2':>10s} {'base 3':>10s}")
for n in (1, 10, 100, 1000, 10000):
    v2 = variance_covariance(f1, Constant(2), n)
    v3 = variance_covariance(f1, Constant(3), n)
    print(f"{n:7d} {v2:10.4f} {v3:10.4f}")

u = solve(f1, 2).solution
print("\nsolution branch cap: Var(S_n) <= 4 ||u||_2^2 =", 4 * l2_inner(u, u))
