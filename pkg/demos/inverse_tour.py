"""Determinants and inverses of multivectors, dimension by dimension.

Run with ``python demos/inverse_tour.py``.
"""

import numpy as np

from cliffdet import Metric, Multivector, random_multivector
from cliffdet.inverse import adjugate, determinant, inverse
from cliffdet.literal import format_multivector, parse_multivector
from cliffdet.oracle import oracle_check

# 2D: the determinant is a plain quadratic form
m2 = Metric.euclidean(2)
A = parse_multivector("1+2e1+3e2+4e12", m2)
print("A        =", format_multivector(A))
print("det(A)   =", determinant(A))
print("adj(A)   =", format_multivector(adjugate(A)))
print("A*inv(A) =", format_multivector(A * inverse(A)))

# a light-cone vector in Minkowski space has no inverse
mink = Metric([1, -1])
print("det(e1+e2), Minkowski =", determinant(parse_multivector("e1+e2", mink)))

# every dimension up to five, with exact rationals
rng = np.random.default_rng(3)
for d in range(6):
    metric = Metric.minkowski(d) if d else Metric(())
    X = random_multivector(metric, rng)
    if determinant(X) == 0:
        continue
    ok = X * inverse(X) == Multivector.scalar(metric, 1)
    print(f"d={d}: det={determinant(X)}  two-sided inverse ok: {ok}")

# the left-multiplication matrix agrees up to a fixed power
for d in range(1, 6):
    r = oracle_check(random_multivector(Metric.euclidean(d), rng))
    print(f"d={d}: matrix det = clifford det ^ {r.exponent}  ({r.passed})")
