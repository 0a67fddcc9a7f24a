"""Independent check of Clifford determinants through the left-regular matrix.

Left multiplication by ``A`` is a linear map on the ``2**d``-dimensional
algebra.  Its matrix determinant equals ``det(A)**m`` up to sign, with
``m = 2**d / order(d)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import RATIONAL, Metric, Multivector, tables
from .errors import UnsupportedDimension

# power of A in the canonical determinant, by dimension
DET_ORDER = {0: 1, 1: 2, 2: 2, 3: 4, 4: 4, 5: 8}


def oracle_exponent(d: int) -> int:
    if d not in DET_ORDER:
        raise UnsupportedDimension(f"no determinant formula for dimension {d}")
    return (1 << d) // DET_ORDER[d]


def regular_rep(A: Multivector) -> np.ndarray:
    """Matrix whose column ``J`` holds the coefficients of ``A * e_J``."""
    t = tables(A.metric)
    if A.ring is RATIONAL:
        return A.coeffs[t.perm] * t.exact
    return A.coeffs[t.perm] * (t.complex if A.ring.name == "complex" else t.float)


def _bareiss(M: np.ndarray) -> int:
    """Fraction-free elimination on an integer object matrix (first nonzero pivot)."""
    M = M.copy()
    n = M.shape[0]
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i, k] != 0), None)
            if swap is None:
                return 0
            M[[k, swap]] = M[[swap, k]]
            sign = -sign
        pivot = M[k, k]
        M[k + 1 :, k + 1 :] = (M[k + 1 :, k + 1 :] * pivot - np.outer(M[k + 1 :, k], M[k, k + 1 :])) // prev
        M[k + 1 :, k] = 0
        prev = pivot
    return sign * int(M[n - 1, n - 1])


def exact_det(M) -> object:
    """Determinant; exact for integer/rational entries, LAPACK for floats."""
    M = np.asarray(M, dtype=object) if not isinstance(M, np.ndarray) else M
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if M.dtype == object and all(isinstance(x, (int, Fraction)) for x in M.flat):
        den = math.lcm(*(Fraction(x).denominator for x in M.flat)) if M.size else 1
        ints = np.empty(M.shape, dtype=object)
        for idx, x in np.ndenumerate(M):
            x = Fraction(x)
            ints[idx] = x.numerator * (den // x.denominator)
        det = Fraction(_bareiss(ints), den ** M.shape[0])
        return det
    return np.linalg.det(np.asarray(M, dtype=np.complex128 if np.iscomplexobj(M) else np.float64))


@dataclass(frozen=True)
class OracleReport:
    clifford_det: object
    matrix_det: object
    exponent: int
    sign: int
    passed: bool


def oracle_check(A: Multivector, rtol: float = 1e-6) -> OracleReport:
    """Compare ``|det(regular_rep(A))|`` with ``|det(A)|**m``."""
    from .inverse import determinant

    if not 1 <= A.dim <= 5:
        raise UnsupportedDimension(f"oracle covers dimensions 1..5, got {A.dim}")
    m = oracle_exponent(A.dim)
    cdet = determinant(A)
    mdet = exact_det(regular_rep(A))
    power = cdet**m
    if A.ring is RATIONAL:
        passed = abs(mdet) == abs(power)
        sign = (mdet > 0) - (mdet < 0)
        if power != 0 and passed:
            sign = 1 if mdet == power else -1
    else:
        a, b = abs(mdet), abs(power)
        passed = abs(a - b) <= rtol * max(a, b, 1e-300) or max(a, b) < 1e-300
        sign = int(np.sign(np.real(mdet / power))) if b > 1e-300 else 0
    return OracleReport(cdet, mdet, m, sign, bool(passed))


def sign_census(metric: Metric, samples: int, seed: int = 0) -> dict:
    """Observed signs of ``det_matrix / det^m`` over random rational inputs."""
    from .algebra import random_multivector

    rng = np.random.default_rng(seed)
    counts: dict[int, int] = {}
    failures = 0
    for _ in range(samples):
        r = oracle_check(random_multivector(metric, rng))
        failures += not r.passed
        counts[r.sign] = counts.get(r.sign, 0) + 1
    return {"signs": counts, "failures": failures}
