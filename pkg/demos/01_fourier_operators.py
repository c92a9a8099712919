"""Walk through the exact Fourier-side operator algebra.

Shows how the three operators act on stored coefficients (no discretisation
anywhere), checks adjointness and the isometry numerically, and prints
certified C1 norms.
"""

import numpy as np

from seqclt import (
    c1_norm,
    cosine,
    evaluate,
    koopman,
    l2_inner,
    linear_combine,
    make_trigpoly,
    project_measurable,
    transfer,
)

# A small observable: f(x) = cos(4 pi x) - cos(2 pi x), stored as two
# positive-frequency coefficients.
f = linear_combine([(1.0, cosine(2)), (-1.0, cosine(1))])
print("f coefficients:", f.coeffs)
print("f(0) =", evaluate(f, 0.0), "  f(1/2) =", evaluate(f, 0.5))

# Koopman: compose with x -> 3x mod 1; frequencies triple.
print("\nkoopman(3, f) coefficients:", koopman(3, f).coeffs)

# Transfer: average over the 2 preimages of x -> 2x; the odd frequency dies,
# the even one shifts down.
print("transfer(2, f) coefficients:", transfer(2, f).coeffs)

# Projection onto functions of the doubled angle = koopman o transfer.
print("project_measurable(2, f) coefficients:", project_measurable(2, f).coeffs)

# Adjointness <koopman g, h> = <g, transfer h> on random inputs.
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(200):
    g = make_trigpoly(
        [(n, complex(rng.uniform(-1, 1), rng.uniform(-1, 1))) for n in range(1, 20)]
    )
    h = make_trigpoly(
        [(n, complex(rng.uniform(-1, 1), rng.uniform(-1, 1))) for n in range(1, 20)]
    )
    a = int(rng.integers(2, 8))
    worst = max(worst, abs(l2_inner(koopman(a, g), h) - l2_inner(g, transfer(a, h))))
print("\nadjointness worst defect over 200 random pairs:", worst)

g = make_trigpoly([(1, 0.4 - 0.3j), (5, 0.2j)])
print("isometry: <Kg, Kg> =", l2_inner(koopman(4, g), koopman(4, g)),
      " <g, g> =", l2_inner(g, g))

# Certified sup|g| + sup|g'|: the value is a true upper bound, the grid
# estimate a lower one.
nrm = c1_norm(f)
print("\nC1 norm of f: certified", nrm.value, " grid estimate", nrm.grid_estimate)
