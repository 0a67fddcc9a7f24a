"""The group of non-scalar grade negations and its quotient by the
determinant-preserving subgroup {identity, inversion, reverse, conjugate}.

Operators are :class:`GradeSet` values over grades 1..d.  Cosets are listed
as ``(rep, rep*inversion, rep*reverse, rep*conjugate)`` where the
representatives are generated from a few single grades in binary counting
order, which reproduces the labels Id, 1, 2, 12, 4, 14, ... used for the
tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

import numpy as np

from .algebra import (
    RATIONAL,
    GradeSet,
    Metric,
    conjugate_grades,
    grade_negate,
    inversion_grades,
    random_multivector,
    reverse_grades,
)
from .errors import UnsupportedDimension

# single grades whose products give one representative per coset
_GENERATORS = {2: (), 3: (1,), 4: (1, 4), 5: (1, 2, 4), 6: (1, 2, 3, 4)}
PROBE_SEED = 4242


def _check(d: int, lo: int = 2, hi: int = 6) -> None:
    if not lo <= d <= hi:
        raise UnsupportedDimension(f"dimension {d} outside {lo}..{hi}")


def compose(a, b) -> GradeSet:
    """Composition of grade negations is the symmetric difference."""
    return GradeSet(a) ^ GradeSet(b)


def operators(d: int) -> list[GradeSet]:
    """All ``2**d`` negations over grades 1..d, ordered by bitmask."""
    return [GradeSet(g for g in range(1, d + 1) if idx >> (g - 1) & 1) for idx in range(1 << d)]


def normal_subgroup(d: int) -> tuple[GradeSet, ...]:
    """``(identity, inversion, reverse, conjugate)`` restricted to grades 1..d."""
    _check(d)
    body = GradeSet(range(1, d + 1))
    return (GradeSet(), inversion_grades(d) & body, reverse_grades(d) & body, conjugate_grades(d) & body)


def op_label(S: GradeSet) -> str:
    return S.label() or "Id"


@dataclass(frozen=True)
class CosetPartition:
    dim: int
    representatives: tuple[GradeSet, ...]
    cosets: tuple[tuple[GradeSet, ...], ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(op_label(r) for r in self.representatives)

    @property
    def set_names(self) -> tuple[str, ...]:
        """``Set-1`` .. ``Set-8`` then ``Set-a`` .. for larger quotients."""
        return tuple(f"Set-{i + 1}" if i < 8 else f"Set-{'abcdefgh'[i - 8]}" for i in range(len(self.cosets)))

    def index_of(self, S) -> int:
        S = GradeSet(S)
        for i, coset in enumerate(self.cosets):
            if S in coset:
                return i
        raise ValueError(f"{S} is not an operator of dimension {self.dim}")

    def __len__(self) -> int:
        return len(self.cosets)


@lru_cache(maxsize=None)
def cosets(d: int) -> CosetPartition:
    _check(d)
    N = normal_subgroup(d)
    gens = _GENERATORS[d]
    reps = []
    for idx in range(1 << len(gens)):
        rep = GradeSet()
        for bit, g in enumerate(gens):
            if idx >> bit & 1:
                rep = rep ^ GradeSet([g])
        reps.append(rep)
    rows = tuple(tuple(compose(rep, n) for n in N) for rep in reps)
    covered = {S for row in rows for S in row}
    if len(covered) != 1 << d:
        raise AssertionError("coset representatives do not cover the group")
    return CosetPartition(d, tuple(reps), rows)


@dataclass(frozen=True)
class CayleyTable:
    dim: int
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def product(self, i: int, j: int) -> int:
        return self.table[i][j]

    def is_abelian(self) -> bool:
        n = len(self.table)
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))

    def all_self_inverse(self) -> bool:
        return all(self.table[i][i] == 0 for i in range(len(self.table)))

    def isomorphism_type(self) -> str:
        """Name of the group; every quotient here is elementary abelian."""
        n = len(self.table)
        if not (self.is_abelian() and self.all_self_inverse()):
            return "other"
        k = n.bit_length() - 1
        if 1 << k != n:
            return "other"
        return {0: "trivial", 1: "C2", 2: "Klein four"}.get(k, f"C2^{k}")

    def rows_as_labels(self) -> list[list[str]]:
        return [[self.labels[x] for x in row] for row in self.table]


@lru_cache(maxsize=None)
def cayley_table(d: int) -> CayleyTable:
    part = cosets(d)
    reps = part.representatives
    table = tuple(tuple(part.index_of(compose(a, b)) for b in reps) for a in reps)
    return CayleyTable(d, part.labels, table)


def _probes(d: int, count: int, seed: int):
    metric = Metric.euclidean(d)
    rng = np.random.default_rng([seed, d])
    return [random_multivector(metric, rng, RATIONAL) for _ in range(count)]


@dataclass(frozen=True)
class Classification:
    operator: GradeSet
    coset: int
    values: tuple
    consistent: bool


def classify_operator(S, d: int, probes: int = 3, seed: int = PROBE_SEED) -> Classification:
    """Coset of ``S`` and whether ``det([[A]]_S)`` agrees with its coset representative."""
    from .inverse import determinant

    _check(d, 2, 5)
    S = GradeSet(S)
    part = cosets(d)
    idx = part.index_of(S)
    rep = part.representatives[idx]
    values = []
    consistent = True
    for A in _probes(d, probes, seed):
        v = determinant(grade_negate(A, S))
        consistent &= v == determinant(grade_negate(A, rep))
        values.append(v)
    return Classification(S, idx, tuple(values), bool(consistent))


def empirical_partition(d: int, probes: int = 3, seed: int = PROBE_SEED) -> list[frozenset]:
    """Group operators by their determinant values on shared probes.

    If two cosets collide on every probe, one more probe is drawn, up to a
    fixed limit, so a chance coincidence cannot merge classes.
    """
    from .inverse import determinant

    _check(d, 2, 5)
    ops = operators(d)
    count = probes
    while True:
        samples = _probes(d, count, seed)
        keys = {}
        for S in ops:
            key = tuple(determinant(grade_negate(A, S)) for A in samples)
            keys.setdefault(key, set()).add(S)
        classes = [frozenset(v) for v in keys.values()]
        if len(classes) == len(cosets(d)) or count >= probes + 8:
            return sorted(classes, key=lambda c: min(s.mask for s in c))
        count += 1


def algebraic_partition(d: int) -> list[frozenset]:
    return sorted((frozenset(c) for c in cosets(d).cosets), key=lambda c: min(s.mask for s in c))


def quotient_is_elementary_abelian(d: int) -> bool:
    t = cayley_table(d)
    n = len(t.table)
    assoc = all(
        t.table[t.table[a][b]][c] == t.table[a][t.table[b][c]] for a, b, c in iproduct(range(n), repeat=3)
    )
    return assoc and t.is_abelian() and t.all_self_inverse()
