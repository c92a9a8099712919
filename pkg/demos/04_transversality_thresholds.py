"""Large multipliers force transversality: certificates and spike sequences.

For a nonconstant observable, two separated arcs yield an explicit threshold
L: whenever two consecutive multipliers exceed L, the backward average u_k
keeps a certified distance from the next map's measurable subspace, so every
spike of three large values deposits a fixed quantum of accumulated
transversality (which is what makes Var(S_n) diverge).
"""

from seqclt import (
    accumulated_transversality,
    angle_profile,
    cosine,
    example1_threshold,
    separation_bound_check,
    variance_covariance,
)
from seqclt.sequences import Triples

f = cosine(1)
cert = example1_threshold(f)
print("threshold certificate for cos(2 pi x):")
print(f"  arcs [x, x+eps], [y, y+eps] with x={cert.x}, y={cert.y}, eps={cert.eps}")
print(f"  certified separation delta={cert.delta:.6f}")
print(f"  multiplier threshold L={cert.L}")
print(f"  per-spike transversality quantum delta^2*eps/64 = "
      f"{cert.delta**2 * cert.eps / 64:.6f}")

spec = Triples(b0=2, B=cert.L + 20, p0=10, r=2)
print(f"\nspike sequence: background 2, spikes of {cert.L + 20} at 10*2^l")
for p in (10, 20, 40):
    checks = [separation_bound_check(f, spec, cert, k) for k in (p, p + 1)]
    print(f"  spike at {p}: separation bound holds at k={p},{p + 1}: {checks}")

n = 4000
profile = angle_profile(f, spec, n + 1)
acc = accumulated_transversality(profile, n)
print(f"\naccumulated transversality after {n} steps: {acc:.1f}")
print(f"Var(S_{n}) = {variance_covariance(f, spec, n):.1f} (diverges linearly here)")
