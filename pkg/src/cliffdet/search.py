"""Exhaustive searches over grade-negated expression families.

Two families are enumerated, with grade sets drawn from the ``2**d`` subsets of
grades 1..d in every slot:

* nested self-products ``f[...f[A, S1]..., Sk]``
* plain products ``[[A]]_S1 [[A]]_S2 ... [[A]]_SL``

Every candidate is first evaluated on random integer probes modulo a prime.
The arithmetic runs in float64 and is exact because every intermediate sum stays
below 2**53.  A nonzero residue of a non-scalar blade proves that the exact
value is non-scalar too, so the filter never rejects a true scalar.  Survivors
are then confirmed exactly: by symbolic expansion for d <= 5, or by four exact
rational probes for d = 6.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct

import numpy as np

from .algebra import (
    RATIONAL,
    GradeSet,
    Metric,
    Multivector,
    generic_probe,
    grade_of,
    random_multivector,
    tables,
)
from .catalog import canonical_expression
from .errors import UnsupportedDimension
from .expressions import (
    A,
    GradeNeg,
    Negate,
    Node,
    Product,
    chain,
    desugar,
    evaluate,
    neg,
    prod,
    reversed_order,
)

PRIME = 1_000_003
PROBE_LOW, PROBE_HIGH = -9, 9
WIDE_LOW, WIDE_HIGH = -99, 99
CHECKPOINT_EVERY = 10_000_000
UNIT_LIMIT = 1 << 20


def subset(idx: int, d: int) -> GradeSet:
    """Grade set over 1..d encoded by bit ``g-1`` of ``idx``."""
    return GradeSet(g for g in range(1, d + 1) if idx >> (g - 1) & 1)


def subset_index(S: GradeSet) -> int:
    return sum(1 << (g - 1) for g in S if g >= 1)


# ---------------------------------------------------------------------------
# modular kernel


class ModKernel:
    """Batched geometric products modulo a prime for one metric."""

    def __init__(self, metric: Metric, p: int = PRIME):
        if any(not isinstance(g, int) for g in metric.entries):
            raise ValueError("modular search needs an integer metric")
        t = tables(metric)
        n = metric.size
        d = metric.dim
        self.p = p
        self.n = n
        self.d = d
        self.perm = t.perm
        lsgn = np.array(t.exact.tolist(), dtype=np.int64)
        self.lsgn = np.mod(lsgn, p).astype(np.float64)
        # right-multiplication signs: (x*y)[k] = sum_i x[i] * y[k^i] * lsgn[k, k^i]
        rows = np.arange(n)[:, None]
        self.rsgn = np.mod(lsgn[rows, t.perm], p).astype(np.float64)
        grades = np.array([grade_of(k) for k in range(n)])
        neg_tab = np.ones((n, 1 << d), dtype=np.int64)
        for s in range(1 << d):
            S = subset(s, d)
            neg_tab[[grade_of(k) in S for k in range(n)], s] = -1
        self.neg = np.mod(neg_tab, p).astype(np.float64)
        self.grades = grades

    def reduce(self, values) -> np.ndarray:
        return np.mod(np.asarray(values, dtype=np.int64), self.p).astype(np.float64)

    def lmat(self, x: np.ndarray) -> np.ndarray:
        return np.mod(x[self.perm] * self.lsgn, self.p)

    def negated_all(self, x: np.ndarray) -> np.ndarray:
        """Columns ``[[x]]_S`` for every subset index ``S``."""
        return np.mod(x[:, None] * self.neg, self.p)

    def selfprod_all(self, x: np.ndarray) -> np.ndarray:
        """Columns ``f[x, S]`` for every subset index ``S``."""
        return np.mod(self.lmat(x) @ self.negated_all(x), self.p)

    def right_stack(self, ys: np.ndarray) -> np.ndarray:
        """Stacked right-multiplication matrices, shape ``(cols * n, n)``."""
        mats = np.mod(ys.T[:, self.perm] * self.rsgn[None, :, :], self.p)
        return mats.reshape(-1, self.n)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.mod(self.lmat(x) @ y, self.p)


def _probe_ints(d: int, seed: int, k: int, low: int = PROBE_LOW, high: int = PROBE_HIGH) -> list[int]:
    rng = np.random.default_rng([seed, d, k])
    return [int(v) for v in rng.integers(low, high + 1, size=1 << d)]


def _exact_probe(metric: Metric, seed: int, k: int, wide: bool = False) -> Multivector:
    lo, hi = (WIDE_LOW, WIDE_HIGH) if wide else (PROBE_LOW, PROBE_HIGH)
    return Multivector(metric, _probe_ints(metric.dim, seed, k, lo, hi), RATIONAL)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class SearchVerdict:
    kind: str
    grades: tuple
    scalar: bool
    det_valued: bool | None
    value_class: int | None
    sign: int | None
    probes: int
    symbolic_confirmed: bool

    @property
    def expression(self) -> Node:
        return build_expression(self.kind, self.grades)

    @property
    def text(self) -> str:
        return str(self.expression)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(S.label() for S in self.grades)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "grades": list(self.labels),
            "expression": self.text,
            "scalar": self.scalar,
            "det_valued": self.det_valued,
            "value_class": self.value_class,
            "sign": self.sign,
            "evidence": {"probes": self.probes, "symbolic_confirmed": self.symbolic_confirmed},
        }


@dataclass
class SearchReport:
    verdicts: list
    summary: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.verdicts)

    def __len__(self) -> int:
        return len(self.verdicts)

    def scalar(self) -> list:
        return [v for v in self.verdicts if v.scalar]

    def det_valued(self) -> list:
        return [v for v in self.verdicts if v.det_valued]

    def find(self, *labels: str) -> SearchVerdict | None:
        want = tuple(GradeSet(x) for x in labels)
        return next((v for v in self.verdicts if v.grades == want), None)


def build_expression(kind: str, grades) -> Node:
    if kind == "nested":
        return chain(*grades)
    if kind == "product":
        return prod(*(neg(A, S) for S in grades))
    raise ValueError(f"unknown search kind {kind!r}")


# ---------------------------------------------------------------------------
# exact confirmation


class _Confirmer:
    """Exact scalarity and value-class checks with shared caches.

    For ``d <= 5`` the expression is expanded symbolically.  Grade sets are
    first cut down to the grades actually present in the negated operand, which
    is an exact identity, so candidates that differ only in absent grades
    share one expansion.
    """

    def __init__(self, d: int, metric: Metric, seed: int, backend: str = "auto"):
        from .symbolic import generic_multivector, make_backend

        self.d = d
        self.metric = metric
        self.seed = seed
        self.symbolic = d <= 5
        if self.symbolic:
            self.backend = make_backend(backend, d).name
            self.generic = generic_multivector(d, metric, self.backend)
        self.cache: dict = {}
        self.class_polys: dict = {}

    def _class_poly(self, rep: GradeSet):
        if rep.mask not in self.class_polys:
            canon = canonical_expression(self.d)
            self.class_polys[rep.mask] = evaluate(canon.root, self.generic.negate_grades(rep)).coeffs[0]
        return self.class_polys[rep.mask]

    def _nested_value(self, grades):
        X = self.generic
        key: tuple = ()
        for S in grades:
            S_eff = S & X.support()
            key = key + (S_eff.mask,)
            hit = self.cache.get(key)
            if hit is None:
                hit = X * X.negate_grades(S_eff)
                self.cache[key] = hit
            X = hit
        return X

    def _product_value(self, grades):
        X = None
        key: tuple = ()
        for S in grades:
            key = key + (S.mask,)
            hit = self.cache.get(key)
            if hit is None:
                factor = self.generic.negate_grades(S)
                hit = factor if X is None else X * factor
                self.cache[key] = hit
            X = hit
        return X

    def confirm(self, kind: str, grades, hint_classes=None):
        """Return ``(scalar, det_valued, value_class, sign, confirmed)``."""
        if not self.symbolic:
            node = build_expression(kind, grades)
            for k, wide in ((0, False), (1, False), (2, True), (3, True)):
                value = evaluate(node, _exact_probe(self.metric, self.seed, k, wide))
                if not value.is_scalar():
                    return False, None, None, None, False
            return True, None, None, None, False
        value = self._nested_value(grades) if kind == "nested" else self._product_value(grades)
        if any(c != 0 for c in value.coeffs[1:]):
            return False, None, None, None, True
        poly = value.coeffs[0]
        from .group import cosets

        if self.d < 2:
            reps = [GradeSet()]
        else:
            reps = list(cosets(self.d).representatives)
        order = list(hint_classes or []) + [i for i in range(len(reps)) if i not in (hint_classes or [])]
        for idx in order:
            ref = self._class_poly(reps[idx])
            if poly == ref:
                return True, idx == 0, idx, 1, True
            if poly == -ref:
                return True, idx == 0, idx, -1, True
        return True, False, None, None, True


def _class_residues(kernel: ModKernel, x: np.ndarray, d: int) -> list[int]:
    """``det([[x]]_rep) mod p`` for each coset representative."""
    from .group import cosets

    if d > 5:
        return []
    reps = [GradeSet()] if d < 2 else list(cosets(d).representatives)
    canon = canonical_expression(d)
    out = []
    for rep in reps:
        y = np.mod(x * kernel.neg[:, subset_index(rep)], kernel.p)
        out.append(int(_eval_mod(kernel, canon.root, y)[0]))
    return out


def _eval_mod(kernel: ModKernel, node: Node, x: np.ndarray, cache=None) -> np.ndarray:
    """Evaluate an expression on a residue vector."""
    if cache is None:
        cache = {}
    if node in cache:
        return cache[node]
    from .expressions import Dual, SelfProd, Var

    if isinstance(node, Var):
        out = x
    elif isinstance(node, GradeNeg):
        out = np.mod(_eval_mod(kernel, node.child, x, cache) * kernel.neg[:, subset_index(node.grades.restrict(kernel.d))], kernel.p)
        if 0 in node.grades:
            out = np.mod(-out, kernel.p)
    elif isinstance(node, SelfProd):
        c = _eval_mod(kernel, node.child, x, cache)
        y = np.mod(c * kernel.neg[:, subset_index(node.grades.restrict(kernel.d))], kernel.p)
        if 0 in node.grades:
            y = np.mod(-y, kernel.p)
        out = kernel.mul(c, y)
    elif isinstance(node, Product):
        out = np.zeros(kernel.n)
        out[0] = 1
        for fac in node.factors:
            out = kernel.mul(out, _eval_mod(kernel, fac, x, cache))
    elif isinstance(node, Negate):
        out = np.mod(-_eval_mod(kernel, node.child, x, cache), kernel.p)
    elif isinstance(node, Dual):
        pseudo = np.zeros(kernel.n)
        pseudo[-1] = 1
        out = kernel.mul(pseudo, _eval_mod(kernel, node.child, x, cache))
    else:
        raise TypeError(f"cannot evaluate {node!r} modulo p")
    cache[node] = out
    return out


# ---------------------------------------------------------------------------
# probe stage workers


def _nested_unit(args) -> list[tuple]:
    """Probe-stage hits of the nested search below one first-level choice."""
    metric, depth, seed, s1 = args
    kernel = _kernel(metric)
    x = kernel.reduce(_probe_ints(metric.dim, seed, 0))
    first = kernel.selfprod_all(x)[:, s1]
    hits: list[tuple] = []

    def walk(vec, prefix):
        cols = kernel.selfprod_all(vec)
        if len(prefix) + 1 == depth:
            scalar = ~cols[1:].any(axis=0)
            hits.extend(prefix + (int(s),) for s in np.nonzero(scalar)[0])
            return
        for s in range(cols.shape[1]):
            walk(cols[:, s], prefix + (s,))

    if depth == 1:
        if not first[1:].any():
            hits.append((s1,))
    else:
        walk(first, (s1,))
    return hits


def _product_unit(args) -> list[tuple]:
    """Probe-stage hits of the product search below one fixed prefix."""
    metric, length, seed, prefix = args
    kernel = _kernel(metric)
    x = kernel.reduce(_probe_ints(metric.dim, seed, 0))
    ys = kernel.negated_all(x)
    stack = _right_stack(metric, seed)
    m = ys.shape[1]
    vec = ys[:, prefix[0]]
    for s in prefix[1:]:
        vec = kernel.mul(vec, ys[:, s])
    P = vec[:, None]
    for _ in range(length - len(prefix) - 1):
        R = np.mod(stack @ P, kernel.p).reshape(m, kernel.n, -1)
        P = R.transpose(1, 2, 0).reshape(kernel.n, -1)
    if len(prefix) == length:
        return [tuple(prefix)] if not P[1:, 0].any() else []
    R = np.mod(stack @ P, kernel.p).reshape(m, kernel.n, -1)
    scalar = ~R[:, 1:, :].any(axis=1)  # (last slot, prefix column)
    cols, lasts = np.nonzero(scalar.T)
    rest = length - len(prefix) - 1
    hits = []
    for c, s in zip(cols, lasts):
        middle = []
        c = int(c)
        for _ in range(rest):
            middle.append(c % m)
            c //= m
        hits.append(tuple(prefix) + tuple(reversed(middle)) + (int(s),))
    return hits


@lru_cache(maxsize=8)
def _kernel(metric: Metric) -> ModKernel:
    return ModKernel(metric)


@lru_cache(maxsize=8)
def _right_stack(metric: Metric, seed: int) -> np.ndarray:
    kernel = _kernel(metric)
    x = kernel.reduce(_probe_ints(metric.dim, seed, 0))
    return kernel.right_stack(kernel.negated_all(x))


def _survives_second_probe(kernel: ModKernel, kind: str, grades, seed: int) -> bool:
    x = kernel.reduce(_probe_ints(kernel.d, seed, 1))
    value = _eval_mod(kernel, build_expression(kind, grades), x)
    return not value[1:].any()


# ---------------------------------------------------------------------------
# driver


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("CLIFF_JOBS", "1") or 1)
    return max(1, int(jobs))


def _run_units(worker, units: list, jobs: int, checkpoint: str | None, meta: dict, unit_size: int) -> list[tuple]:
    """Run probe-stage units in order, optionally resuming from and saving a checkpoint."""
    start = 0
    hits: list[tuple] = []
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            state = json.load(fh)
        if state.get("meta") != meta:
            raise ValueError(f"checkpoint {checkpoint} belongs to a different search")
        start = state["next_unit"]
        hits = [tuple(h) for h in state["hits"]]

    def save(next_unit: int) -> None:
        tmp = f"{checkpoint}.tmp"
        with open(tmp, "w") as fh:
            json.dump({"meta": meta, "next_unit": next_unit, "hits": [list(h) for h in hits]}, fh)
        os.replace(tmp, checkpoint)

    pending = 0
    todo = units[start:]
    if jobs == 1:
        results = map(worker, todo)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        results = pool.map(worker, todo, chunksize=1)
    try:
        for offset, found in enumerate(results):
            hits.extend(found)
            pending += unit_size
            if checkpoint and pending >= CHECKPOINT_EVERY:
                save(start + offset + 1)
                pending = 0
    finally:
        if pool is not None:
            pool.shutdown()
    if checkpoint:
        save(len(units))
    return sorted(hits)


def _finish(kind: str, d: int, metric: Metric, seed: int, raw_hits, candidates: int, backend: str) -> SearchReport:
    kernel = _kernel(metric)
    survivors = [h for h in raw_hits if _survives_second_probe(kernel, kind, [subset(s, d) for s in h], seed)]
    confirmer = _Confirmer(d, metric, seed, backend)
    x1 = kernel.reduce(_probe_ints(d, seed, 1))
    classes_mod = _class_residues(kernel, x1, d)
    verdicts = []
    for h in survivors:
        grades = tuple(subset(s, d) for s in h)
        hint = []
        if classes_mod:
            val = int(_eval_mod(kernel, build_expression(kind, grades), x1)[0])
            hint = [i for i, c in enumerate(classes_mod) if val in (c, (-c) % kernel.p)]
        scalar, det_valued, value_class, sign, confirmed = confirmer.confirm(kind, grades, hint)
        if not scalar:
            continue
        verdicts.append(SearchVerdict(kind, grades, True, det_valued, value_class, sign, 4 if d > 5 else 2, confirmed))
    summary = {
        "kind": kind,
        "dim": d,
        "candidates": candidates,
        "probe_hits": len(raw_hits),
        "second_probe_survivors": len(survivors),
        "scalar": len(verdicts),
        "det_valued": sum(1 for v in verdicts if v.det_valued),
        "confirmation": "symbolic" if d <= 5 else "four exact probes",
        "probabilistically_scalar": len(verdicts) if d > 5 else 0,
        "seed": seed,
    }
    if d <= 5:
        summary["value_classes"] = _class_histogram(verdicts)
    return SearchReport(verdicts, summary)


def _class_histogram(verdicts) -> dict:
    out: dict = {}
    for v in verdicts:
        key = "none" if v.value_class is None else str(v.value_class)
        out[key] = out.get(key, 0) + 1
    return out


def search_nested(
    d: int,
    depth: int,
    *,
    seed: int = 1,
    jobs: int | None = None,
    checkpoint: str | None = None,
    metric: Metric | None = None,
    backend: str = "auto",
) -> SearchReport:
    """All scalar-valued ``f[...f[A,S1]...,Sk]`` with each ``S`` a subset of 1..d."""
    if not 1 <= d <= 6:
        raise UnsupportedDimension(f"nested search covers dimensions 1..6, got {d}")
    if not 1 <= depth <= 3:
        raise ValueError("depth must be 1, 2 or 3")
    metric = Metric.euclidean(d) if metric is None else metric
    m = 1 << d
    units = [(metric, depth, seed, s1) for s1 in range(m)]
    meta = {"kind": "nested", "dim": d, "depth": depth, "seed": seed, "metric": list(metric.entries)}
    raw = _run_units(_nested_unit, units, _resolve_jobs(jobs), checkpoint, meta, m ** (depth - 1))
    return _finish("nested", d, metric, seed, raw, m**depth, backend)


def search_plain_products(
    d: int,
    length: int,
    *,
    seed: int = 1,
    jobs: int | None = None,
    huge: bool = False,
    checkpoint: str | None = None,
    metric: Metric | None = None,
    backend: str = "auto",
) -> SearchReport:
    """All scalar-valued ``[[A]]_S1 ... [[A]]_SL`` with each ``S`` a subset of 1..d."""
    if length == 4 and not 1 <= d <= 4:
        raise UnsupportedDimension(f"length-4 product search covers dimensions 1..4, got {d}")
    if length == 8:
        if not huge:
            raise ValueError("length 8 is a long run; pass huge=True to start it")
        if not 1 <= d <= 4:
            raise UnsupportedDimension(f"length-8 product search covers dimensions 1..4, got {d}")
    elif length != 4:
        raise ValueError("length must be 4 or 8")
    metric = Metric.euclidean(d) if metric is None else metric
    m = 1 << d
    # split so each unit covers at most UNIT_LIMIT candidates
    fixed = 1
    while m ** (length - fixed) > UNIT_LIMIT:
        fixed += 1
    units = [(metric, length, seed, pre) for pre in iproduct(range(m), repeat=fixed)]
    meta = {"kind": "product", "dim": d, "length": length, "seed": seed, "metric": list(metric.entries)}
    raw = _run_units(_product_unit, units, _resolve_jobs(jobs), checkpoint, meta, m ** (length - fixed))
    return _finish("product", d, metric, seed, raw, m**length, backend)


# ---------------------------------------------------------------------------
# single-expression test


@dataclass(frozen=True)
class ScalarityVerdict:
    scalar: bool
    confirmed: bool
    method: str
    support: GradeSet


def scalarity_test(expr, d: int, *, seed: int = 1, metric: Metric | None = None, backend: str = "auto") -> ScalarityVerdict:
    """Two exact probes, then symbolic expansion (d <= 5) or two wide probes (d = 6)."""
    from .catalog import DetExpression
    from .symbolic import expand

    node = expr.root if isinstance(expr, DetExpression) else expr
    metric = Metric.euclidean(d) if metric is None else metric
    support = GradeSet()
    for k in range(2):
        value = evaluate(node, _exact_probe(metric, seed, k))
        support = support | value.grades()
    if support & GradeSet(range(1, d + 1)):
        return ScalarityVerdict(False, True, "probe", support)
    if d <= 5:
        full = expand(node, d, metric, mode="full", backend=backend)
        sym_support = full.support()
        return ScalarityVerdict(sym_support <= GradeSet([0]), True, "symbolic", sym_support)
    for k in (2, 3):
        value = evaluate(node, _exact_probe(metric, seed, k, wide=True))
        support = support | value.grades()
    return ScalarityVerdict(support <= GradeSet([0]), False, "wide probes", support)


# ---------------------------------------------------------------------------
# deduplication

EQUIVALENCES = ("sign", "complement", "reversal", "absent", "cyclic")


@dataclass(frozen=True)
class DedupClass:
    representative: object
    members: tuple


def _normalize(node: Node, d: int, values: list, use: set) -> tuple[Node, int]:
    """Canonical tree and sign parity under the chosen equivalences."""
    sign = 0

    def walk(n: Node) -> Node:
        nonlocal sign
        if isinstance(n, Negate):
            sign ^= 1
            return walk(n.child)
        if isinstance(n, Product):
            return prod(*(walk(x) for x in n.factors))
        if isinstance(n, GradeNeg):
            child = walk(n.child)
            S = n.grades.restrict(d)
            if "absent" in use:
                present = GradeSet()
                for probe, cache in values:
                    present = present | evaluate(n.child, probe, cache).grades()
                S = S & present
            if "complement" in use and 0 in S:
                S = S.complement(d)
                sign ^= 1
            return neg(child, S)
        return n

    out = walk(desugar(node))
    return out, sign


def _key(node: Node, d: int, values: list, use: set) -> str:
    variants = [node]
    if "reversal" in use:
        variants.append(reversed_order(node))
    keys = []
    for v in variants:
        norm, sign = _normalize(v, d, values, use)
        forms = [norm]
        if "cyclic" in use and isinstance(norm, Product):
            fs = list(norm.factors)
            forms = [prod(*(fs[s:] + fs[:s])) for s in range(len(fs))]
        for form in forms:
            text = str(form)
            keys.append(text if "sign" in use or not sign else "-" + text)
    return min(keys)


def dedup(items, d: int | None = None, equivalences=EQUIVALENCES) -> list[DedupClass]:
    """Group expressions (or verdicts) that are trivially equivalent.

    Supported equivalences: overall ``sign``; the ``complement`` identity
    ``[[X]]_S = -[[X]]_{complement of S}``; product-order ``reversal``;
    ``absent`` grades whose negation does nothing; and ``cyclic`` rotation of a
    top-level product.  Absent grades are read from two generic probes.
    """
    use = set(equivalences)
    unknown = use - set(EQUIVALENCES)
    if unknown:
        raise ValueError(f"unknown equivalences {sorted(unknown)}")
    items = list(items)
    if not items:
        return []
    if d is None:
        first = items[0]
        d = max(max(S, default=0) for S in first.grades) if isinstance(first, SearchVerdict) else None
        if d is None:
            raise ValueError("dimension needed to deduplicate bare expressions")
    metric = Metric.euclidean(d)
    values = [(generic_probe(metric, k), {}) for k in range(2)]
    groups: dict[str, list] = {}
    for item in items:
        node = item.expression if isinstance(item, SearchVerdict) else item
        groups.setdefault(_key(node, d, values, use), []).append(item)
    return [DedupClass(members[0], tuple(members)) for members in groups.values()]


def closed_under_normal_subgroup(verdicts, d: int) -> bool:
    """True when pre-applying any determinant-preserving negation maps hits to hits."""
    from .group import normal_subgroup

    have = {v.grades for v in verdicts}
    for grades in have:
        for n in normal_subgroup(d):
            if tuple(S ^ n for S in grades) not in have:
                return False
    return True


def random_probe(metric: Metric, seed: int) -> Multivector:
    return random_multivector(metric, np.random.default_rng(seed), RATIONAL)
