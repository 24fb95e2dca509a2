"""Nonfree locus of a rank-3 matroid over a representation slice.

Pipeline: Ziegler restriction onto a coordinate hyperplane, the graded
morphism psi whose kernel is the derivation module of the restriction,
its degree (d2 - 1) part phi over the slice ring, a smaller presentation
of coker(phi), and finally the Fitting ideal whose vanishing set inside
the slice is the nonfree locus.

Matrices follow the row convention: rows index the source basis, so a
kernel vector v satisfies v * phi = 0.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .groebner import (
    Ideal, QuotientRing, ResourceError, eliminate, radical_membership, row_syzygies,
    col_syzygies, saturate,
)
from .matroid import Matroid
from .poly import Polynomial, UsageError, VariableContext, t_mul
from .representation import Slice

log = logging.getLogger(__name__)

MAX_MINOR = 12


class AnalysisError(ValueError):
    """The matroid does not satisfy the hypotheses of the freeness criterion."""


class UnsupportedChoice(ValueError):
    pass


# ---------------------------------------------------------------------------
# Ziegler restriction

@dataclass
class Multiarrangement2D:
    ring: QuotientRing
    columns: list[tuple[Polynomial, Polynomial]]
    multiplicities: list[int]
    flats: list[tuple[int, ...]] = field(default_factory=list)
    hyperplane: int | None = None

    @property
    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.columns)


def hyperplane_pivot(s: Slice, H: int) -> tuple[int, Polynomial]:
    """Coordinate k where column H has a unit entry, and that entry's inverse."""
    ring = s.ring
    col = [ring.reduce(f) for f in s.P.column(H)]
    for k, f in enumerate(col):
        if f.is_constant() and abs(f.constant_value()) == 1:
            return k, f
    for k, f in enumerate(col):
        if f:
            inv = ring.inverse(f)
            if inv is not None:
                return k, inv
    raise UnsupportedChoice(f"column {H} has no unit coordinate")


def ziegler_restriction(s: Slice, H: int) -> Multiarrangement2D:
    """Restriction onto the hyperplane of element ``H``.

    Linear forms are taken modulo alpha_H: if alpha_H has a unit in
    coordinate k, alpha maps to alpha - alpha_k * u^-1 * alpha_H with
    coordinate k dropped.  Columns are grouped by the rank-2 flats through
    H, so the grouping is combinatorial; each flat contributes the column
    of its smallest other element with multiplicity |F| - 1.
    """
    M = s.matroid
    if M is None:
        raise UsageError("slice carries no matroid")
    if M.r != 3:
        raise UnsupportedChoice("only rank 3 is supported")
    if not 1 <= H <= M.n:
        raise UsageError(f"hyperplane {H} out of range 1..{M.n}")
    ring = s.ring
    k, inv = hyperplane_pivot(s, H)
    alpha_h = [ring.reduce(f) for f in s.P.column(H)]
    cols, mults, flats = [], [], []
    for F in M.flat_lattice().lines_through(H):
        rep = min(e for e in F if e != H)
        v = [ring.reduce(f) for f in s.P.column(rep)]
        if v[k]:
            c = ring.reduce(v[k] * inv)
            v = [ring.reduce(f - c * g) for f, g in zip(v, alpha_h)]
        col = [f for i, f in enumerate(v) if i != k]
        cols.append((col[0], col[1]))
        mults.append(len(F) - 1)
        flats.append(F)
    return Multiarrangement2D(ring, cols, mults, flats, H)


def default_hyperplane(M: Matroid) -> int:
    """Element whose lines have the largest total size; ties go to the smallest index."""
    lat = M.flat_lattice()
    return max(range(1, M.n + 1), key=lambda e: (sum(len(F) for F in lat.lines_through(e)), -e))


# ---------------------------------------------------------------------------
# graded morphism psi

@dataclass
class GradedMorphism:
    """Matrix over A[x, y]; entry (i, j) is homogeneous of degree
    source_degrees[i] - target_degrees[j]."""
    ring: QuotientRing
    ctx: VariableContext            # params + (x, y)
    entries: list[list[Polynomial]]
    source_degrees: list[int]
    target_degrees: list[int]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.target_degrees)

    def is_homogeneous(self) -> bool:
        k = self.ring.ctx.nvars
        for i, row in enumerate(self.entries):
            for j, f in enumerate(row):
                want = self.source_degrees[i] - self.target_degrees[j]
                for e in f.terms_dict:
                    if sum(e[k:]) != want:
                        return False
        return True


def geometric_context(ring_ctx: VariableContext) -> VariableContext:
    names = []
    for base in ("x", "y"):
        nm = base
        while nm in ring_ctx.names:
            nm += "_"
        names.append(nm)
    return ring_ctx.extend(names)


def build_psi(ma: Multiarrangement2D) -> GradedMorphism:
    pctx = ma.ring.ctx
    ctx = geometric_context(pctx)
    k = pctx.nvars
    x, y = ctx.var(k), ctx.var(k + 1)
    n = len(ma.columns)
    zero = ctx.zero()
    lift = [(c1.change_context(ctx, list(range(k))), c2.change_context(ctx, list(range(k))))
            for c1, c2 in ma.columns]
    rows = [[c1 for c1, _ in lift], [c2 for _, c2 in lift]]
    for j, ((c1, c2), m) in enumerate(zip(lift, ma.multiplicities)):
        row = [zero] * n
        alpha = c1 * x + c2 * y
        row[j] = _reduce_params(alpha ** m, ma.ring, k)
        rows.append(row)
    return GradedMorphism(ma.ring, ctx, rows, [0, 0] + list(ma.multiplicities), [0] * n)


def _reduce_params(f: Polynomial, ring: QuotientRing, k: int) -> Polynomial:
    """Reduce the parameter coefficients of f (in params + geometric) modulo the ring."""
    groups: dict = {}
    for e, c in f.terms_dict.items():
        groups.setdefault(e[k:], {})[e[:k]] = c
    out = {}
    for g, coeff in groups.items():
        red = ring.reduce_terms(coeff)
        for e, c in red.items():
            out[e + g] = c
    return Polynomial(f.ctx, out)


def monomials(a: int) -> list[tuple[int, int]]:
    """Degree-a monomials in x, y, descending: x^a, x^(a-1) y, ..., y^a."""
    if a < 0:
        return []
    return [(a - i, i) for i in range(a + 1)]


@dataclass
class DegreePartMatrix:
    ring: QuotientRing
    entries: list[list[Polynomial]]
    ncols: int
    degree: int
    row_labels: list[tuple[int, tuple[int, int]]] = field(default_factory=list)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def index(self) -> int:
        return self.ncols - self.nrows

    @property
    def ell(self) -> int:
        return self.index


def degree_part(psi: GradedMorphism, d: int) -> DegreePartMatrix:
    """Matrix of psi restricted to degree d, over the parameter ring.

    Source generator i contributes one row per monomial of degree
    d - source_degrees[i]; target j contributes one column per monomial
    of degree d - target_degrees[j].
    """
    if d < 0:
        raise UsageError("degree must be nonnegative")
    ring = psi.ring
    k = ring.ctx.nvars
    pctx = ring.ctx
    col_offsets = []
    col_index: list[dict] = []
    total = 0
    for t in psi.target_degrees:
        mons = monomials(d - t)
        col_offsets.append(total)
        col_index.append({m: total + i for i, m in enumerate(mons)})
        total += len(mons)
    rows = []
    labels = []
    for i, s in enumerate(psi.source_degrees):
        for mu in monomials(d - s):
            row: list[dict] = [dict() for _ in range(total)]
            for j, f in enumerate(psi.entries[i]):
                for e, c in f.terms_dict.items():
                    gx, gy = e[k] + mu[0], e[k + 1] + mu[1]
                    col = col_index[j].get((gx, gy))
                    if col is None:
                        continue
                    pe = e[:k]
                    acc = row[col]
                    v = acc.get(pe, 0) + c
                    if v:
                        acc[pe] = v
                    else:
                        acc.pop(pe, None)
            rows.append([Polynomial(pctx, ring.reduce_terms(r)) for r in row])
            labels.append((i, mu))
    return DegreePartMatrix(ring, rows, total, d, labels)


# ---------------------------------------------------------------------------
# matrices over the slice ring

Matrix = list[list[Polynomial]]


def _is_unit_const(f: Polynomial) -> bool:
    return f.is_constant() and abs(f.constant_value()) == 1


class MinorEngine:
    """m x m minors with cofactor expansion, memoized on column subsets."""

    def __init__(self, ring: QuotientRing):
        self.ring = ring
        self.zero = ring.ctx.zero()

    def minors_of_rows(self, rows: Sequence[Sequence[Polynomial]]) -> dict[tuple[int, ...], Polynomial]:
        """All maximal minors of the given rows, keyed by column subset."""
        m = len(rows)
        ncols = len(rows[0])
        red = self.ring.reduce_terms
        prev: dict[tuple[int, ...], dict] = {(): {(0,) * self.ring.ctx.nvars: 1}}
        for k in range(m):
            cur: dict[tuple[int, ...], dict] = {}
            row = rows[k]
            for S, val in prev.items():
                if not val:
                    continue
                for j in range(ncols):
                    if j in S or not row[j]:
                        continue
                    T = tuple(sorted(S + (j,)))
                    sign = -1 if sum(1 for s in S if s > j) % 2 else 1
                    term = t_mul(row[j].terms_dict, val)
                    if sign < 0:
                        term = {e: -c for e, c in term.items()}
                    acc = cur.get(T)
                    if acc is None:
                        cur[T] = term
                    else:
                        for e, c in term.items():
                            v = acc.get(e, 0) + c
                            if v:
                                acc[e] = v
                            else:
                                del acc[e]
            prev = {T: red(v) for T, v in cur.items()}
        ctx = self.ring.ctx
        return {T: Polynomial(ctx, v) for T, v in prev.items() if v}

    def determinant(self, mx: Sequence[Sequence[Polynomial]]) -> Polynomial:
        if not mx:
            return self.ring.ctx.one()
        vals = self.minors_of_rows(mx)
        return vals.get(tuple(range(len(mx))), self.zero)


def fitting_ideal(mx: Matrix, ncols: int, ell: int, ring: QuotientRing) -> Ideal:
    """ell-th Fitting ideal of the presentation matrix ``mx`` (rows = relations)."""
    nrows = len(mx)
    m = ncols - ell
    ctx = ring.ctx
    if m <= 0:
        return Ideal([ctx.one()], ctx)
    if m > min(nrows, ncols):
        return Ideal([], ctx)
    if m > MAX_MINOR:
        raise ResourceError(f"refusing {m} x {m} minors; reduce the presentation first")
    eng = MinorEngine(ring)
    gens: list[Polynomial] = []
    seen = set()
    for R in combinations(range(nrows), m):
        sub = [mx[i] for i in R]
        for v in eng.minors_of_rows(sub).values():
            if _is_unit_const(v):
                return Ideal([ctx.one()], ctx)
            key = v if v.leading_term()[0] > 0 else -v
            if key not in seen:
                seen.add(key)
                gens.append(key)
    return Ideal(gens, ctx)


@dataclass
class ReductionStep:
    rule: str
    shape: tuple[int, int]
    shift: int


def _reduce_matrix(mx: Matrix, ring: QuotientRing) -> Matrix:
    return [[ring.reduce(f) for f in row] for row in mx]


def _pivot(mx: Matrix, i: int, j: int, inv: Polynomial, ring: QuotientRing) -> Matrix:
    """Eliminate generator j using the unit entry (i, j); drops row i and column j."""
    piv_row = mx[i]
    scaled = [ring.reduce(inv * f) if f else f for f in piv_row]
    red = ring.reduce_terms
    ctx = ring.ctx
    out = []
    for k, row in enumerate(mx):
        if k == i:
            continue
        f = row[j]
        if not f:
            out.append(row[:j] + row[j + 1:])
            continue
        new = []
        fd = f.terms_dict
        for l, g in enumerate(row):
            if l == j:
                continue
            h = scaled[l]
            if h:
                prod = t_mul(fd, h.terms_dict)
                acc = dict(g.terms_dict)
                for e, c in prod.items():
                    v = acc.get(e, 0) - c
                    if v:
                        acc[e] = v
                    else:
                        acc.pop(e, None)
                new.append(Polynomial(ctx, red(acc)))
            else:
                new.append(g)
        out.append(new)
    return out


def reduce_presentation(mx: Matrix, ncols: int, ring: QuotientRing, use_syzygies: bool = True,
                        max_syzygy_size: int = 40) -> tuple[Matrix, int, int, list[ReductionStep]]:
    """Smaller presentation: returns (matrix, ncols, shift z, steps) with
    coker(input) = coker(output) + A^z.
    """
    mx = _reduce_matrix(mx, ring)
    z = 0
    steps: list[ReductionStep] = []

    def log_step(rule):
        steps.append(ReductionStep(rule, (len(mx), ncols), z))

    while True:
        changed = False
        # (1) zero and duplicate rows
        kept, seen = [], set()
        for row in mx:
            if not any(row):
                continue
            key = tuple(row)
            neg = tuple(-f for f in row)
            if key in seen or neg in seen:
                continue
            seen.add(key)
            kept.append(row)
        if len(kept) != len(mx):
            mx = kept
            log_step("drop-rows")
        # (3) unit pivots: constants first, then other units, smallest (i, j) first
        piv = _find_unit(mx, ring)
        if piv is not None:
            i, j, inv = piv
            mx = _pivot(mx, i, j, inv, ring)
            ncols -= 1
            log_step("unit-pivot")
            changed = True
        # (4) zero columns split off free summands
        if ncols:
            zero_cols = [j for j in range(ncols) if all(not row[j] for row in mx)]
            if zero_cols:
                keep = [j for j in range(ncols) if j not in zero_cols]
                mx = [[row[j] for j in keep] for row in mx]
                ncols -= len(zero_cols)
                z += len(zero_cols)
                log_step("zero-columns")
                changed = True
        if changed:
            continue
        # (2) / (5) syzygy rules only when nothing cheaper applies
        if use_syzygies and mx and ncols and len(mx) + ncols <= max_syzygy_size:
            i = _redundant_row(mx, ring)
            if i is not None:
                mx = mx[:i] + mx[i + 1:]
                log_step("row-syzygy")
                continue
            j = _redundant_col(mx, ring)
            if j is not None:
                mx = [row[:j] + row[j + 1:] for row in mx]
                ncols -= 1
                z += 1
                log_step("col-syzygy")
                continue
        return mx, ncols, z, steps


def _find_unit(mx: Matrix, ring: QuotientRing):
    for i, row in enumerate(mx):
        for j, f in enumerate(row):
            if f and _is_unit_const(f):
                return i, j, f
    for i, row in enumerate(mx):
        for j, f in enumerate(row):
            if f and not f.is_constant():
                inv = ring.inverse(f)
                if inv is not None:
                    return i, j, inv
    for i, row in enumerate(mx):
        for j, f in enumerate(row):
            if f and f.is_constant() and ring.modulus.generators:
                inv = ring.inverse(f)
                if inv is not None:
                    return i, j, inv
    return None


def _redundant_row(mx: Matrix, ring: QuotientRing) -> int | None:
    for syz in row_syzygies(mx, ring):
        for i, c in enumerate(syz):
            if c and ring.is_unit(c):
                return i
    return None


def _redundant_col(mx: Matrix, ring: QuotientRing) -> int | None:
    for syz in col_syzygies(mx, ring):
        for j, c in enumerate(syz):
            if c and ring.is_unit(c):
                return j
    return None


# ---------------------------------------------------------------------------
# loci inside a slice

EMPTY, ENTIRE, PROPER = "Empty", "EntireSlice", "Proper"


@dataclass
class Locus:
    slice: Slice
    N: Ideal
    classification: str | None = None
    char_generator: int | None = None
    _saturated: Ideal | None = field(default=None, repr=False)

    def classify(self) -> "Locus":
        self.classification = classify_locus(self.slice, self.N, self.saturated)
        self.char_generator = characteristic_support(self)
        return self

    @property
    def saturated(self) -> Ideal:
        """(I + N) : (prod J)^oo, saturating one removed polynomial at a time."""
        if self._saturated is None:
            self._saturated = _saturate_by_removed(self.slice, _combined(self.slice, self.N))
        return self._saturated

    @property
    def char_support(self) -> int | None:
        """Squarefree part of the generator of the locus ideal meet ZZ (0 if it dominates Spec ZZ)."""
        m = self.char_generator
        if m is None or m == 0:
            return m
        out = 1
        for p in prime_support(m):
            out *= p
        return out

    def describe(self) -> str:
        if self.classification == EMPTY:
            return "empty"
        if self.classification == ENTIRE:
            return "entire slice"
        return "V(" + ", ".join(str(g) for g in self.N.generators) + ")"


def _combined(s: Slice, N: Ideal) -> Ideal:
    return Ideal(list(s.I.generators) + list(N.generators), s.ctx)


def _saturate_by_removed(s: Slice, K: Ideal) -> Ideal:
    # saturating by each factor equals saturating by the product, which can be huge
    for g in s.J:
        if K.is_unit_ideal():
            break
        K = saturate(K, g)
    return K


def classify_locus(s: Slice, N: Ideal, saturated: Ideal | None = None) -> str:
    K = saturated if saturated is not None else _saturate_by_removed(s, _combined(s, N))
    if K.is_unit_ideal():
        return EMPTY
    if all(radical_membership(g, s.I) for g in N.generators):
        return ENTIRE
    return PROPER


def locus_empty_ideal(s: Slice, N: Ideal) -> bool:
    return _saturate_by_removed(s, _combined(s, N)).is_unit_ideal()


def locus_empty(L: Locus) -> bool:
    return L.saturated.is_unit_ideal()


def locus_equal(L1: Locus, L2: Locus) -> bool:
    """Equality of V(I + N1) and V(I + N2) after removing V(J).

    f * prod(J) lies in rad(K) exactly when f lies in rad(K : prod(J)^oo).
    """
    if L1.slice.ctx != L2.slice.ctx:
        raise UsageError("loci live in different slices")
    K1, K2 = L1.saturated, L2.saturated
    return (all(radical_membership(f, K2) for f in L1.N.generators) and
            all(radical_membership(f, K1) for f in L2.N.generators))


def saturated_locus_ideal(L: Locus) -> Ideal:
    return L.saturated


def characteristic_support(L: Locus) -> int:
    """Nonnegative generator m of ((I + N) : J^oo) intersected with ZZ."""
    K = L.saturated
    if K.is_unit_ideal():
        return 1
    ctx = K.ctx
    if ctx.nvars == 0:
        gb = K.groebner()
        return gb[0].constant_value() if gb else 0
    E = eliminate(K, list(ctx.names))
    consts = [g.constant_value() for g in E.generators if g.is_constant()]
    return abs(consts[0]) if consts else 0


def prime_support(m: int) -> list[int]:
    out = []
    p = 2
    while m > 1 and p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------

@dataclass
class NFLResult:
    locus: Locus
    restriction: Multiarrangement2D
    psi: GradedMorphism
    phi: DegreePartMatrix
    reduced: Matrix
    reduced_cols: int
    shift: int
    steps: list[ReductionStep]
    d2: int
    d3: int
    timings: dict[str, float]


def nonfree_locus(M: Matroid, H: int, s: Slice, reduce: bool = True) -> NFLResult:
    cp = M.characteristic_polynomial()
    if cp.splitting is None:
        raise AnalysisError(f"characteristic polynomial {cp} does not split over ZZ; "
                            "the freeness criterion needs integral roots")
    if s.I.is_unit_ideal():
        raise AnalysisError("matroid is not representable")
    d2, d3 = cp.splitting
    timings = {}
    t0 = time.perf_counter()
    ma = ziegler_restriction(s, H)
    psi = build_psi(ma)
    phi = degree_part(psi, d2 - 1)
    timings["phi"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    if reduce:
        red, ncols, z, steps = reduce_presentation(phi.entries, phi.ncols, s.ring)
    else:
        red, ncols, z, steps = phi.entries, phi.ncols, 0, []
    timings["reduce"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    N = fitting_ideal(red, ncols, phi.ell - z, s.ring)
    timings["fitting"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    L = Locus(s, N).classify()
    timings["locus"] = time.perf_counter() - t0
    return NFLResult(L, ma, psi, phi, red, ncols, z, steps, d2, d3, timings)
