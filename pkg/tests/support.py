"""Independent reference formulas used only by the tests.

The mode coefficients of the parabolic-profile chain have an exact
closed form in terms of Jacobi polynomials evaluated at zero. Evaluated
here in exact rational arithmetic, they provide an eigenvector oracle
that shares no code with the package's eigensolver path.
"""

from fractions import Fraction
from math import comb, factorial

import numpy as np


def jacobi_at_zero(m: int, a: int, b: int) -> Fraction:
    """P_m^{(a,b)}(0) exactly, for integer a, b (possibly negative)."""

    def gbinom(x: int, r: int) -> Fraction:
        num = Fraction(1)
        for i in range(r):
            num *= Fraction(x - i)
        return num / factorial(r)

    s = Fraction(0)
    for i in range(m + 1):
        s += gbinom(m + a, m - i) * gbinom(m + b, i) * (-1) ** i
    return s / Fraction(2) ** m


def mode_coefficient(n: int, j: int, k: int) -> float:
    """Entry j of the mode vector with frequency -(2/n)(2k - (n+1)).

    Signed square root of an exact rational; the squared coefficients
    sum to 1 over j for every k.
    """
    p = jacobi_at_zero(n - j, j - k, j + k - n - 1)
    rat = (
        Fraction(2) ** (n + 1)
        / Fraction(4) ** j
        * Fraction(k, j)
        * Fraction(comb(n, k), comb(n, j))
        * p
        * p
    )
    sign = 1 if p > 0 else (-1 if p < 0 else 0)
    return sign * float(rat) ** 0.5


def mode_matrix(n: int) -> np.ndarray:
    """All mode vectors as columns, ordered by ascending frequency.

    Column index (0-based) n - k holds the vector for frequency
    -(2/n)(2k - (n+1)), matching the ascending eigenvalue order of the
    package's spectral decomposition at d = 1.
    """
    out = np.empty((n, n))
    for k in range(1, n + 1):
        out[:, n - k] = [mode_coefficient(n, j, k) for j in range(1, n + 1)]
    return out


def random_couplings(rng: np.random.Generator, n: int) -> tuple[float, ...]:
    """n-1 bond couplings drawn uniformly from [0.5, 1.5)."""
    return tuple(float(c) for c in rng.uniform(0.5, 1.5, n - 1))
