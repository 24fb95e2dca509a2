"""Representation ideals and representation slices of a matroid.

A slice is the quasi-affine set V(I) minus the union of V(g) for g in J,
carried together with a parametrized r x n matrix P.  ``build_slice``
fixes an identity on a chosen basis, zeros outside fundamental circuits
and ones on a spanning forest of the remaining support, then saturates
the non-basis minors by every basis determinant.  Linear unit pivots are
substituted away as soon as they appear, which keeps every Groebner
computation in few variables.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .groebner import Ideal, QuotientRing, Reducer, radical_membership, saturate
from .matroid import Matroid
from .poly import Polynomial, UsageError, VariableContext

log = logging.getLogger(__name__)


class NotRepresentable(ValueError):
    pass


def det3(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(m)
    if n == 3:
        return det3(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    acc = m[0][0].ctx.zero()
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            term = m[0][j] * det(minor)
            acc = acc - term if j % 2 else acc + term
    return acc


@dataclass
class ParametrizedMatrix:
    ctx: VariableContext
    entries: list[list[Polynomial]]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column(self, j: int) -> list[Polynomial]:
        """Column of element j (1-indexed)."""
        return [row[j - 1] for row in self.entries]

    def submatrix(self, cols: Sequence[int]) -> list[list[Polynomial]]:
        return [[row[j - 1] for j in cols] for row in self.entries]

    def minor(self, cols: Sequence[int]) -> Polynomial:
        return det(self.submatrix(cols))

    def substitute(self, images, target) -> "ParametrizedMatrix":
        return ParametrizedMatrix(target, [[f.substitute(images, target) for f in row] for row in self.entries])

    def to_strings(self) -> list[list[str]]:
        return [[str(f) for f in row] for row in self.entries]

    @classmethod
    def from_strings(cls, ctx: VariableContext, rows: Sequence[Sequence[str] | str]) -> "ParametrizedMatrix":
        parsed = []
        for row in rows:
            cells = row.split() if isinstance(row, str) else row
            parsed.append([ctx.parse(c) for c in cells])
        if len({len(r) for r in parsed}) > 1:
            raise UsageError("ragged matrix")
        return cls(ctx, parsed)


@dataclass
class EmbeddingMap:
    """Original variable -> polynomial in the kept variables."""
    source: VariableContext
    target: VariableContext
    substitutions: dict[str, Polynomial]

    @property
    def kept(self) -> tuple[str, ...]:
        return self.target.names

    def images(self) -> list[Polynomial]:
        return [self.substitutions[nm] for nm in self.source.names]

    def apply(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.images(), self.target)

    def then(self, other: "EmbeddingMap") -> "EmbeddingMap":
        subs = {nm: other.apply(p) for nm, p in self.substitutions.items()}
        return EmbeddingMap(self.source, other.target, subs)

    def is_identity(self) -> bool:
        return (self.source == self.target
                and all(self.substitutions[nm] == self.target.var(nm) for nm in self.source.names))

    @classmethod
    def identity(cls, ctx: VariableContext) -> "EmbeddingMap":
        return cls(ctx, ctx, {nm: ctx.var(nm) for nm in ctx.names})


@dataclass
class Slice:
    ctx: VariableContext
    I: Ideal
    J: list[Polynomial]
    P: ParametrizedMatrix
    matroid: Matroid | None = None
    basis: tuple[int, ...] | None = None
    _ring: QuotientRing | None = field(default=None, repr=False)

    @property
    def ring(self) -> QuotientRing:
        if self._ring is None:
            self._ring = QuotientRing(self.I)
        return self._ring

    @property
    def nparams(self) -> int:
        return self.ctx.nvars

    def j_product(self) -> Polynomial:
        out = self.ctx.one()
        for g in self.J:
            out = out * g
        return out

    def is_representable(self) -> bool:
        return is_representable(self)

    def describe(self) -> str:
        eqs = ", ".join(str(g) for g in self.I.groebner()) or "0"
        text = f"V({eqs})"
        for g in self.J:
            text += f" \\ V({g})"
        names = ", ".join(self.ctx.names)
        return f"{text} in Spec ZZ[{names}]"

    # -- serialization
    def to_json(self) -> dict:
        return {
            "variables": list(self.ctx.names),
            "I": [str(g) for g in self.I.groebner()],
            "J": [str(g) for g in self.J],
            "P": self.P.to_strings(),
            "basis": list(self.basis) if self.basis else None,
            "matroid": self.matroid.to_json() if self.matroid else None,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "Slice":
        if isinstance(data, str):
            data = json.loads(data)
        ctx = VariableContext(data["variables"])
        I = Ideal([ctx.parse(s) for s in data["I"]], ctx)
        J = [ctx.parse(s) for s in data["J"]]
        P = ParametrizedMatrix.from_strings(ctx, data["P"])
        M = Matroid.from_json(data["matroid"]) if data.get("matroid") else None
        basis = tuple(data["basis"]) if data.get("basis") else None
        return cls(ctx, I, J, P, M, basis)


# ---------------------------------------------------------------------------

def generic_matrix(n: int, r: int) -> ParametrizedMatrix:
    names = [f"p{i}_{j}" for i in range(1, r + 1) for j in range(1, n + 1)]
    ctx = VariableContext(names)
    return ParametrizedMatrix(ctx, [[ctx.var(f"p{i}_{j}") for j in range(1, n + 1)] for i in range(1, r + 1)])


def representation_ideals(M: Matroid) -> tuple[Ideal, list[Polynomial]]:
    """Non-basis minors as an ideal over ZZ[p_ij], and the basis minors.

    The second ideal is principal, generated by the product of the basis
    minors; it is returned factored since the expanded product is huge.
    """
    P = generic_matrix(M.n, M.r)
    I = Ideal([P.minor(N) for N in M.nonbases_list()], P.ctx)
    return I, [P.minor(B) for B in M.bases_list()]


def _normalization_forest(support: dict[int, list[int]], r: int) -> list[tuple[int, int]]:
    """Entries (row, column) to fix to 1: first nonzero per column, then per row,
    skipping any entry that would close a cycle in the row/column support graph."""
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []

    def try_edge(i, j):
        a, b = find(("r", i)), find(("c", j))
        if a != b:
            parent[a] = b
            chosen.append((i, j))

    for j in sorted(support):
        if support[j]:
            try_edge(min(support[j]), j)
    for i in range(r):
        cols = [j for j in sorted(support) if i in support[j]]
        if cols:
            try_edge(i, cols[0])
    return chosen


def slice_template(M: Matroid, basis: Sequence[int] | None = None):
    """The normalized matrix before any ideal computation.

    Returns (ctx, P, non-basis minors, basis minors).
    """
    if basis is None:
        basis = M.default_basis()
    basis = tuple(sorted(basis))
    if not M.is_basis(basis):
        raise UsageError(f"{basis} is not a basis")
    r, n = M.r, M.n
    pos = {e: k for k, e in enumerate(basis)}
    support: dict[int, list[int]] = {}
    for j in range(1, n + 1):
        if j in pos:
            continue
        circ = M.fundamental_circuit(j, basis)
        support[j] = sorted(pos[e] for e in circ if e != j)
    ones = set(_normalization_forest(support, r))
    names = []
    for j in sorted(support):
        for i in support[j]:
            if (i, j) not in ones:
                names.append(f"p{i + 1}_{j}")
    ctx = VariableContext(names)
    entries = [[ctx.zero() for _ in range(n)] for _ in range(r)]
    for e, k in pos.items():
        entries[k][e - 1] = ctx.one()
    for j, rows in support.items():
        for i in rows:
            entries[i][j - 1] = ctx.one() if (i, j) in ones else ctx.var(f"p{i + 1}_{j}")
    P = ParametrizedMatrix(ctx, entries)
    nonbasis = [g for g in (P.minor(N) for N in M.nonbases_list()) if g]
    basis_minors = [P.minor(B) for B in M.bases_list()]
    return ctx, P, nonbasis, basis_minors


def _find_pivot(gens: Sequence[Polynomial], avoid=()) -> tuple[int, int] | None:
    """A generator u*x - f with u = +-1 and x absent from f: (generator index, variable)."""
    best = None
    for gi, g in enumerate(gens):
        d = g.terms_dict
        counts: dict[int, int] = {}
        for e in d:
            for v, k in enumerate(e):
                if k:
                    counts[v] = counts.get(v, 0) + 1
        for v in sorted(counts, reverse=True):
            if v in avoid or counts[v] != 1:
                continue
            e, c = next((e, c) for e, c in d.items() if e[v])
            if e[v] == 1 and sum(e) == 1 and abs(c) == 1:
                cand = (len(d), gi, v)
                if best is None or cand < best:
                    best = cand
                break
    return None if best is None else (best[1], best[2])


def _drop_variable(ctx: VariableContext, v: int, image_of_v: Polynomial):
    """Map eliminating variable ``v``; returns (new ctx, images in new ctx)."""
    names = [nm for i, nm in enumerate(ctx.names) if i != v]
    target = VariableContext(names)
    mapping = [None if i == v else (i if i < v else i - 1) for i in range(ctx.nvars)]
    images = []
    for i in range(ctx.nvars):
        if i == v:
            images.append(image_of_v.change_context(target, mapping))
        else:
            images.append(target.var(mapping[i]))
    return target, images


class _Work:
    """Mutable state of a slice computation: ideal generators, removed
    polynomials and the matrix, all in the current variable context."""

    def __init__(self, ctx, gens, dets, P):
        self.ctx = ctx
        self.gens = list(gens)
        self.dets = list(dets)
        self.P = P
        self.emb = EmbeddingMap.identity(ctx)

    def substitute(self, v: int, image: Polynomial):
        target, images = _drop_variable(self.ctx, v, image)
        step = EmbeddingMap(self.ctx, target, dict(zip(self.ctx.names, images)))
        self.gens = [g.substitute(images, target) for g in self.gens]
        self.gens = [g for g in self.gens if g]
        self.dets = [g.substitute(images, target) for g in self.dets]
        self.P = self.P.substitute(images, target)
        self.emb = self.emb.then(step)
        self.ctx = target

    def pivot_once(self) -> bool:
        piv = _find_pivot(self.gens)
        if piv is None:
            return False
        gi, v = piv
        g = self.gens[gi]
        e, c = next((e, c) for e, c in g.terms_dict.items() if e[v])
        # g = c*x + rest = 0  =>  x = -c*rest  (c = +-1)
        rest = Polynomial(self.ctx, {k: w for k, w in g.terms_dict.items() if k != e})
        self.substitute(v, -c * rest)
        return True

    def standard_once(self, gb: Sequence[Polynomial]) -> bool:
        red = Reducer(gb)
        for v in range(self.ctx.nvars - 1, -1, -1):
            x = self.ctx.var(v)
            nf = red(x)
            if nf != x:
                if v in nf.variables():
                    continue
                self.substitute(v, nf)
                return True
        return False


def _prime_factors(m: int) -> list[int]:
    out, p = [], 2
    while m > 1 and p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def _split_removed(g: Polynomial) -> list[Polynomial]:
    """Pieces with the same union of vanishing sets: content primes, then
    the variables of a monomial or the primitive part."""
    ctx = g.ctx
    c = g.content()
    out = [ctx.const(p) for p in _prime_factors(c)]
    prim = g.exact_div(c) if c > 1 else g
    if len(prim.terms_dict) == 1:
        out.extend(ctx.var(v) for v in sorted(prim.variables()))
    elif not prim.is_constant():
        out.append(prim)
    return out


def _dedupe_removed(polys: Sequence[Polynomial], ring_reduce, I: Ideal | None = None) -> list[Polynomial]:
    """Normalize the removed polynomials modulo I.

    A zero entry is kept (it empties the slice).  With ``I`` given, pieces
    that never vanish on V(I) are dropped.
    """
    out = []
    seen = set()
    for g in polys:
        g = ring_reduce(g)
        if not g:
            return [g]
        for h in _split_removed(g):
            h = ring_reduce(h)
            if h.is_constant() and abs(h.constant_value()) == 1:
                continue
            if not h:
                return [h]
            if h.leading_term()[0] < 0:
                h = -h
            if h in seen:
                continue
            seen.add(h)
            if I is not None and Ideal(list(I.generators) + [h], h.ctx).is_unit_ideal():
                continue
            out.append(h)
    return out


def _simplify(work: _Work, saturate_by_dets: bool = True) -> Ideal:
    """Substitute, saturate and shrink until nothing changes."""
    while True:
        while work.pivot_once():
            pass
        I = Ideal(work.gens, work.ctx)
        if I.is_unit_ideal():
            return I
        gb = I.groebner()
        if saturate_by_dets:
            red = Reducer(gb)
            removed = _dedupe_removed(work.dets, red)
            if any(not g for g in removed):
                return Ideal([work.ctx.one()], work.ctx)
            # cheap first: low degree and few terms
            removed.sort(key=lambda g: (g.total_degree(), len(g.terms_dict), str(g)))
            for g in removed:
                g = Reducer(I.groebner())(g)
                if not g:
                    return Ideal([work.ctx.one()], work.ctx)
                if g.is_constant() and abs(g.constant_value()) == 1:
                    continue
                I = saturate(I, g)
                if I.is_unit_ideal():
                    return I
            gb = I.groebner()
            saturate_by_dets = False
        work.gens = list(gb)
        if work.pivot_once():
            saturate_by_dets = True  # substitution can expose further degenerate components
            continue
        if work.standard_once(gb):
            continue
        return Ideal(gb, work.ctx)


def build_slice(M: Matroid, basis: Sequence[int] | None = None) -> Slice:
    """Representation slice of ``M`` relative to ``basis`` (default: smallest basis)."""
    if basis is None:
        basis = M.default_basis()
    basis = tuple(sorted(basis))
    ctx, P, nonbasis, dets = slice_template(M, basis)
    work = _Work(ctx, nonbasis, dets, P)
    I = _simplify(work)
    red = Reducer(I.groebner())
    J = [] if I.is_unit_ideal() else _dedupe_removed(work.dets, red, I)
    P = ParametrizedMatrix(work.ctx, [[red(f) for f in row] for row in work.P.entries])
    log.debug("slice of %r: %d parameters", M, work.ctx.nvars)
    return Slice(work.ctx, I, J, P, M, basis)


def shrink_embedding(s: Slice) -> tuple[Slice, EmbeddingMap]:
    """Drop variables determined by the others modulo I (standard indeterminates, unit pivots)."""
    work = _Work(s.ctx, s.I.groebner(), s.J, s.P)
    I = _simplify(work, saturate_by_dets=False)
    red = Reducer(I.groebner())
    J = _dedupe_removed(work.dets, red, I) if not I.is_unit_ideal() else []
    P = ParametrizedMatrix(work.ctx, [[red(f) for f in row] for row in work.P.entries])
    return Slice(work.ctx, I, J, P, s.matroid, s.basis), work.emb


def saturated_slice(ctx: VariableContext, equations: Sequence[Polynomial], removed: Sequence[Polynomial],
                    P: ParametrizedMatrix, matroid: Matroid | None = None) -> Slice:
    """Slice from explicit data; the equations are saturated by every removed polynomial."""
    I = Ideal(equations, ctx)
    for g in removed:
        I = saturate(I, g)
    red = Reducer(I.groebner())
    J = _dedupe_removed(removed, red, I)
    return Slice(ctx, I, J, P, matroid)


def is_representable(s: Slice) -> bool:
    return not s.I.is_unit_ideal()


def vanishes_on_slice(f: Polynomial, s: Slice) -> bool:
    """f vanishes identically on V(I) minus V(J).

    Slice ideals are saturated by J, so no component of V(I) lies inside
    V(J) and the test reduces to radical membership in I.
    """
    if not f:
        return True
    if not s.I.reducer()(f):
        return True
    return radical_membership(f, s.I)


def matroid_of_parametrized_matrix(P: ParametrizedMatrix, s: Slice) -> Matroid:
    """Bases are the r-subsets whose minor does not vanish identically on the slice."""
    r, n = P.rows, P.cols
    bases = []
    for B in combinations(range(1, n + 1), r):
        if not vanishes_on_slice(P.minor(B), s):
            bases.append(B)
    return Matroid(n, r, bases)
