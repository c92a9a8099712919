import numpy as np
import pytest

from seqclt.trigpoly import TrigPoly, cosine, linear_combine, make_trigpoly


@pytest.fixture
def f1() -> TrigPoly:
    """cos(4 pi x) - cos(2 pi x), the workhorse coboundary-for-2 observable."""
    return linear_combine([(1.0, cosine(2)), (-1.0, cosine(1))])


def random_poly(rng: np.random.Generator, max_degree: int = 32, density: float = 0.5,
                quantize: int | None = None) -> TrigPoly:
    """Random mean-zero trigonometric polynomial with coefficients in [-1, 1].

    With quantize=q the real and imaginary parts are multiples of 2^-q, which
    keeps downstream float arithmetic exact.
    """
    entries = []
    for n in range(1, max_degree + 1):
        if rng.random() < density:
            re, im = rng.uniform(-1, 1), rng.uniform(-1, 1)
            if quantize is not None:
                scale = float(1 << quantize)
                re = round(re * scale) / scale
                im = round(im * scale) / scale
            entries.append((n, complex(re, im)))
    return make_trigpoly(entries)


def assert_canonical(g: TrigPoly) -> None:
    """Structural Hermitian-canonical-form check used after every operation."""
    freqs = [n for n, _ in g.coeffs]
    assert freqs == sorted(freqs)
    assert len(set(freqs)) == len(freqs)
    assert all(isinstance(n, int) and n >= 1 for n in freqs)
    assert all(isinstance(c, complex) and c != 0 for _, c in g.coeffs)
