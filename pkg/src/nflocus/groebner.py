"""Strong Groebner bases over the integers and the ideal operations built on them.

Completion is Buchberger-style over a Euclidean ring: every critical pair
yields an S-polynomial (lcm of leading coefficients) and, when neither
leading coefficient divides the other, a G-polynomial (gcd combination).
Reduction divides coefficients with remainder, so normal forms are
unique with respect to a reduced strong basis.
"""

from __future__ import annotations

import heapq
import logging
from math import gcd
from typing import Iterable, Sequence

from .poly import (
    DEGREVLEX, Exp, MonomialOrder, Polynomial, TermDict, UsageError,
    VariableContext, elimination_order, t_scale, t_sub,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_PAIRS = 10 ** 6
DEFAULT_MAX_BITS = 10 ** 5


class ResourceError(RuntimeError):
    """A completion exceeded its configured pair or coefficient budget."""

    def __init__(self, msg, **diagnostics):
        super().__init__(msg)
        self.diagnostics = diagnostics


class Limits:
    """Process-wide resource caps, overridable from the CLI."""
    max_pairs = DEFAULT_MAX_PAIRS
    max_bits = DEFAULT_MAX_BITS
    trace = False


def _divides(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


class _Elem:
    __slots__ = ("lm", "lc", "poly", "sugar")

    def __init__(self, poly: TermDict, key, sugar=None):
        lm = max(poly, key=key)
        lc = poly[lm]
        if lc < 0:
            poly = {e: -c for e, c in poly.items()}
            lc = -lc
        self.lm = lm
        self.lc = lc
        self.poly = poly
        self.sugar = sum(lm) if sugar is None else max(sugar, max(sum(e) for e in poly))


def _reduce(f: TermDict, basis: Sequence[_Elem], key, full: bool = True) -> TermDict:
    """Division with remainder; ``basis`` sorted by ascending leading coefficient."""
    f = dict(f)
    rest: TermDict = {}
    while f:
        e = max(f, key=key)
        c = f[e]
        for g in basis:
            if _divides(g.lm, e):
                q = c // g.lc
                if q:
                    f = t_sub(f, t_scale(g.poly, q, _sub_exp(e, g.lm)))
                    c -= q * g.lc
                if not c:
                    break
        if c:
            if not full:
                f.update(rest)
                return f
            rest[e] = c
            del f[e]
    return rest


def _strongly_divisible(lm: Exp, lc: int, basis: Sequence[_Elem]) -> bool:
    for g in basis:
        if lc % g.lc == 0 and _divides(g.lm, lm):
            return True
    return False


def _check_bits(poly: TermDict, n_pairs: int, basis_size: int):
    limit = Limits.max_bits
    for c in poly.values():
        if c.bit_length() > limit:
            raise ResourceError(
                f"coefficient exceeds {limit} bits",
                pairs=n_pairs, basis_size=basis_size)


def _buchberger(gens: Iterable[TermDict], order: MonomialOrder) -> list[_Elem]:
    key = order.key
    basis: list[_Elem] = []      # insertion order, for pair bookkeeping
    by_lc: list[_Elem] = []      # same elements sorted for reduction
    pairs: list = []
    pending: set = set()
    counter = 0
    n_pairs = 0

    def insert(poly: TermDict, sugar=None):
        nonlocal counter
        h = _Elem(poly, key, sugar)
        k = len(basis)
        for i, g in enumerate(basis):
            L = _lcm_exp(g.lm, h.lm)
            s = max(g.sugar + sum(L) - sum(g.lm), h.sugar + sum(L) - sum(h.lm))
            counter += 1
            heapq.heappush(pairs, (s, key(L), counter, i, k))
            pending.add((i, k))
        basis.append(h)
        lo = 0
        while lo < len(by_lc) and by_lc[lo].lc <= h.lc:
            lo += 1
        by_lc.insert(lo, h)
        return h

    for f in gens:
        if not f:
            continue
        r = _reduce(f, by_lc, key)
        if r:
            if len(r) == 1 and not any(next(iter(r))) and abs(next(iter(r.values()))) == 1:
                return [_Elem(r, key)]
            insert(r)

    while pairs:
        s, _, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        n_pairs += 1
        if n_pairs > Limits.max_pairs:
            raise ResourceError(
                f"pair budget {Limits.max_pairs} exhausted",
                pairs=n_pairs, basis_size=len(basis))
        f, g = basis[i], basis[j]
        L = _lcm_exp(f.lm, g.lm)
        fi, gi = f.lc, g.lc

        # G-polynomial: only needed when neither leading coefficient divides the other
        if fi % gi and gi % fi:
            d = gcd(fi, gi)
            if not _strongly_divisible(L, d, by_lc):
                u, v = _xgcd_coeffs(fi, gi)
                gp = _add(t_scale(f.poly, u, _sub_exp(L, f.lm)), t_scale(g.poly, v, _sub_exp(L, g.lm)))
                lead = gp.pop(L)
                tail = _reduce(gp, by_lc, key) if gp else {}
                tail[L] = lead
                _check_bits(tail, n_pairs, len(basis))
                insert(tail, s)

        # product criterion: coprime leading monomials and coefficients
        if gcd(fi, gi) == 1 and all(not (x and y) for x, y in zip(f.lm, g.lm)):
            continue
        # chain criterion
        C = fi * gi // gcd(fi, gi)
        skip = False
        for k, h in enumerate(basis):
            if k in (i, j):
                continue
            if C % h.lc == 0 and _divides(h.lm, L):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    skip = True
                    break
        if skip:
            continue
        sp = t_sub(t_scale(f.poly, C // fi, _sub_exp(L, f.lm)),
                   t_scale(g.poly, C // gi, _sub_exp(L, g.lm)))
        r = _reduce(sp, by_lc, key)
        if r:
            _check_bits(r, n_pairs, len(basis))
            if len(r) == 1 and not any(next(iter(r))) and abs(next(iter(r.values()))) == 1:
                return [_Elem(r, key)]
            insert(r, s)

    if Limits.trace:
        log.info("groebner: %d pairs, %d basis elements before reduction", n_pairs, len(basis))
    return _interreduce(basis, key)


def _add(f: TermDict, g: TermDict) -> TermDict:
    r = dict(f)
    for e, c in g.items():
        s = r.get(e, 0) + c
        if s:
            r[e] = s
        else:
            r.pop(e, None)
    return r


def _xgcd_coeffs(a: int, b: int) -> tuple[int, int]:
    """u, v with u*a + v*b = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _interreduce(basis: list[_Elem], key) -> list[_Elem]:
    # minimal: drop elements whose leading term is strongly divisible by another's
    elems = sorted(basis, key=lambda g: (g.lc, key(g.lm)))
    keep: list[_Elem] = []
    for g in elems:
        if any(h.lc and g.lc % h.lc == 0 and _divides(h.lm, g.lm) for h in keep):
            continue
        keep = [h for h in keep if not (h.lc % g.lc == 0 and _divides(g.lm, h.lm))]
        keep.append(g)
    keep.sort(key=lambda g: (g.lc, key(g.lm)))
    out = []
    for g in keep:
        others = [h for h in keep if h is not g]
        tail = dict(g.poly)
        del tail[g.lm]
        tail = _reduce(tail, others, key) if tail else {}
        tail[g.lm] = g.lc
        out.append(_Elem(tail, key))
    out.sort(key=lambda g: key(g.lm), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API on Polynomial objects

def strong_groebner_basis(gens: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX,
                          ctx: VariableContext | None = None) -> list[Polynomial]:
    """Reduced strong Groebner basis over ZZ, positive leading coefficients."""
    if ctx is None:
        if not gens:
            raise UsageError("empty generator list needs an explicit context")
        ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise UsageError("generators from different contexts")
    elems = _buchberger([g.terms_dict for g in gens], order)
    return [Polynomial(ctx, g.poly) for g in elems]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> Polynomial:
    if not f:
        return f
    key = order.key
    elems = sorted((_Elem(g.terms_dict, key) for g in basis if g), key=lambda g: (g.lc, key(g.lm)))
    return Polynomial(f.ctx, _reduce(f.terms_dict, elems, key))


class Reducer:
    """Normal forms against a fixed basis, with the sorted elements prepared once."""

    def __init__(self, basis: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX):
        self.order = order
        key = order.key
        self.elems = sorted((_Elem(g.terms_dict, key) for g in basis if g),
                            key=lambda g: (g.lc, key(g.lm)))

    def reduce_terms(self, f: TermDict) -> TermDict:
        if not f or not self.elems:
            return f
        return _reduce(f, self.elems, self.order.key)

    def __call__(self, f: Polynomial) -> Polynomial:
        return Polynomial(f.ctx, self.reduce_terms(f.terms_dict))


def is_strong_groebner_basis(basis: Sequence[Polynomial], order: MonomialOrder = DEGREVLEX) -> bool:
    """Check the S-/G-polynomial criterion directly (used by tests)."""
    key = order.key
    elems = sorted((_Elem(dict(g.terms_dict), key) for g in basis if g), key=lambda g: (g.lc, key(g.lm)))
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            f, g = elems[a], elems[b]
            L = _lcm_exp(f.lm, g.lm)
            C = f.lc * g.lc // gcd(f.lc, g.lc)
            sp = t_sub(t_scale(f.poly, C // f.lc, _sub_exp(L, f.lm)),
                       t_scale(g.poly, C // g.lc, _sub_exp(L, g.lm)))
            if _reduce(sp, elems, key):
                return False
            if not _strongly_divisible(L, gcd(f.lc, g.lc), elems):
                return False
    return True


# ---------------------------------------------------------------------------

class Ideal:
    """Ideal of a polynomial ring over ZZ, with cached reduced bases per order."""

    def __init__(self, generators: Iterable[Polynomial], ctx: VariableContext | None = None):
        gens = [g for g in generators if g]
        if ctx is None:
            if not gens:
                raise UsageError("empty ideal needs an explicit context")
            ctx = gens[0].ctx
        for g in gens:
            if g.ctx != ctx:
                raise UsageError("generators from different contexts")
        self.ctx = ctx
        self.generators = gens
        self._gb: dict[MonomialOrder, list[Polynomial]] = {}

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> list[Polynomial]:
        if order not in self._gb:
            self._gb[order] = strong_groebner_basis(self.generators, order, self.ctx)
        return self._gb[order]

    def reducer(self, order: MonomialOrder = DEGREVLEX) -> Reducer:
        return Reducer(self.groebner(order), order)

    def normal_form(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        return normal_form(f, self.groebner(order), order)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def is_unit_ideal(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0] == self.ctx.one()

    def is_zero(self) -> bool:
        return not self.generators

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ctx == other.ctx and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ctx, tuple(self.groebner())))

    def __repr__(self):
        return f"Ideal<{', '.join(str(g) for g in self.generators)}>"


def ideal_sum(I: Ideal, K: Ideal) -> Ideal:
    if I.ctx != K.ctx:
        raise UsageError("context mismatch")
    return Ideal(I.generators + K.generators, I.ctx)


def ideal_product(I: Ideal, K: Ideal) -> Ideal:
    if I.ctx != K.ctx:
        raise UsageError("context mismatch")
    return Ideal([f * g for f in I.generators for g in K.generators], I.ctx)


def _fresh_name(ctx: VariableContext, base: str) -> str:
    name = base
    k = 0
    while name in ctx.names:
        k += 1
        name = f"{base}{k}"
    return name


def eliminate(I: Ideal, front: Sequence[str]) -> Ideal:
    """Generators of I intersected with the subring of the other variables.

    The eliminated variables are moved to a leading block if they are not
    already one; the result lives in a context of the remaining variables.
    """
    ctx = I.ctx
    front = list(front)
    for nm in front:
        ctx.index(nm)
    rest = [nm for nm in ctx.names if nm not in front]
    work = VariableContext(front + rest, (len(front), len(rest)) if front else (len(rest),))
    gens = [g.change_context(work) for g in I.generators]
    k = len(front)
    gb = strong_groebner_basis(gens, elimination_order(k), work)
    target = VariableContext(rest)
    keep = [p for p in gb if all(not any(e[:k]) for e in p.terms_dict)]
    out = [Polynomial(target, {e[k:]: c for e, c in p.terms_dict.items()}) for p in keep]
    return Ideal(out, target)


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^oo via a tag variable t and elimination of t from I + <1 - t f>."""
    if not f:
        raise UsageError("saturation by zero")
    if f.ctx != I.ctx:
        raise UsageError("context mismatch")
    ctx = I.ctx
    if f.is_constant() and abs(f.constant_value()) == 1:
        return Ideal(I.generators, ctx)
    t = _fresh_name(ctx, "t")
    work = ctx.extend([t], front=True)
    lift = [g.change_context(work) for g in I.generators]
    tv = work.var(0)
    lift.append(work.one() - tv * f.change_context(work))
    gb = strong_groebner_basis(lift, elimination_order(1), work)
    keep = [Polynomial(ctx, {e[1:]: c for e, c in p.terms_dict.items()})
            for p in gb if all(e[0] == 0 for e in p.terms_dict)]
    return Ideal(keep, ctx)


def saturate_many(I: Ideal, fs: Iterable[Polynomial]) -> Ideal:
    """Successive saturation by each element of ``fs``."""
    out = I
    for f in fs:
        if f.is_constant() and abs(f.constant_value()) == 1:
            continue
        out = saturate(out, f)
        if out.is_unit_ideal():
            break
    return out


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f, from the intersection I cap <f> computed by elimination."""
    ctx = I.ctx
    t = _fresh_name(ctx, "t")
    work = ctx.extend([t], front=True)
    tv = work.var(0)
    fl = f.change_context(work)
    gens = [tv * g.change_context(work) for g in I.generators] + [(work.one() - tv) * fl]
    gb = strong_groebner_basis(gens, elimination_order(1), work)
    inter = [Polynomial(ctx, {e[1:]: c for e, c in p.terms_dict.items()})
             for p in gb if all(e[0] == 0 for e in p.terms_dict)]
    quotients = []
    for h in inter:
        q = divide_exact(h, f)
        quotients.append(q)
    return Ideal(quotients, ctx)


def divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    """h / f for an exact multiple (multivariate division over ZZ)."""
    key = DEGREVLEX.key
    lm = max(f.terms_dict, key=key)
    lc = f.terms_dict[lm]
    rem = dict(h.terms_dict)
    q: TermDict = {}
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        if not _divides(lm, e) or c % lc:
            raise UsageError(f"{f} does not divide {h}")
        m = _sub_exp(e, lm)
        q[m] = c // lc
        rem = t_sub(rem, t_scale(f.terms_dict, c // lc, m))
    return Polynomial(h.ctx, q)


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """True iff some power of f lies in I (Rabinowitsch: 1 in I + <1 - t f>)."""
    if f.ctx != I.ctx:
        raise UsageError("context mismatch")
    if not f:
        return True
    ctx = I.ctx
    t = _fresh_name(ctx, "t")
    work = ctx.extend([t])
    lift = [g.change_context(work) for g in I.generators]
    lift.append(work.one() - work.var(t) * f.change_context(work))
    gb = strong_groebner_basis(lift, DEGREVLEX, work)
    return len(gb) == 1 and gb[0] == work.one()


# ---------------------------------------------------------------------------

class QuotientRing:
    """ZZ[params] / modulus, elements kept as normal forms."""

    def __init__(self, modulus: Ideal):
        self.ctx = modulus.ctx
        self.modulus = modulus
        self.gb = modulus.groebner()
        self._reducer = Reducer(self.gb)
        self._unit_cache: dict[Polynomial, Polynomial | None] = {}

    def reduce(self, f: Polynomial) -> Polynomial:
        return self._reducer(f)

    def reduce_terms(self, f: TermDict) -> TermDict:
        return self._reducer.reduce_terms(f)

    def is_zero(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def is_trivial(self) -> bool:
        return len(self.gb) == 1 and self.gb[0] == self.ctx.one()

    def mul(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return self.reduce(f * g)

    def inverse(self, u: Polynomial) -> Polynomial | None:
        """Inverse of ``u`` in the quotient, or None when ``u`` is not a unit."""
        u = self.reduce(u)
        if u in self._unit_cache:
            return self._unit_cache[u]
        inv = None
        if u.is_constant():
            c = u.constant_value()
            if abs(c) == 1:
                inv = u
            elif c and self.modulus.generators:
                inv = self._inverse_general(u)
        elif u:
            inv = self._inverse_general(u)
        self._unit_cache[u] = inv
        return inv

    def _inverse_general(self, u: Polynomial) -> Polynomial | None:
        probe = Ideal(self.gb + [u], self.ctx)
        if not probe.is_unit_ideal():
            return None
        t = _fresh_name(self.ctx, "t")
        work = self.ctx.extend([t], front=True)
        gens = [g.change_context(work) for g in self.gb]
        gens.append(work.var(0) * u.change_context(work) - work.one())
        order = elimination_order(1)
        gb = strong_groebner_basis(gens, order, work)
        v = normal_form(work.var(0), gb, order)
        if any(e[0] for e in v.terms_dict):
            raise RuntimeError(f"inverse of {u} did not eliminate the tag")
        inv = self.reduce(Polynomial(self.ctx, {e[1:]: c for e, c in v.terms_dict.items()}))
        assert self.is_zero(inv * u - self.ctx.one())
        return inv

    def is_unit(self, u: Polynomial) -> bool:
        return self.inverse(u) is not None


# ---------------------------------------------------------------------------
# syzygies via tag variables for the module components

def row_syzygies(rows: Sequence[Sequence[Polynomial]], ring: QuotientRing) -> list[list[Polynomial]]:
    """Generators of {c : sum_i c_i * rows[i] = 0 in ring^k}.

    A vector is encoded as sum_j f_j E_j; the rows get tags T_i.  Adding
    all quadratic monomials in the E's and T's plus g*E_j for each modulus
    generator g turns the module problem into an ideal computation.  With
    the E block eliminated, basis elements linear in the T's are syzygies.
    """
    ctx = ring.ctx
    s = len(rows)
    if s == 0:
        return []
    k = len(rows[0])
    E = [_fresh_name(ctx, f"E{j}_") for j in range(k)]
    T = [_fresh_name(ctx, f"T{i}_") for i in range(s)]
    work = VariableContext(E + list(ctx.names) + T, (k, ctx.nvars, s))
    # order: E block first, then the rest with T's last in degrevlex
    order = elimination_order(k)
    tags = [work.var(j) for j in range(k)]
    ttags = [work.var(k + ctx.nvars + i) for i in range(s)]
    gens = []
    for i, row in enumerate(rows):
        v = ttags[i]
        for j, f in enumerate(row):
            if f:
                v = v + f.change_context(work) * tags[j]
        gens.append(v)
    for g in ring.gb:
        gl = g.change_context(work)
        gens.extend(gl * tags[j] for j in range(k))
        gens.extend(gl * ttags[i] for i in range(s))
    allt = tags + ttags
    for a in range(len(allt)):
        for b in range(a, len(allt)):
            gens.append(allt[a] * allt[b])
    gb = strong_groebner_basis(gens, order, work)
    out = []
    base = ctx.nvars
    for p in gb:
        d = p.terms_dict
        if any(any(e[:k]) for e in d):
            continue
        if any(sum(e[k + base:]) != 1 for e in d):
            continue
        vec = [dict() for _ in range(s)]
        for e, c in d.items():
            i = next(idx for idx, x in enumerate(e[k + base:]) if x)
            vec[i][e[k:k + base]] = c
        coeffs = [ring.reduce(Polynomial(ctx, v)) for v in vec]
        if any(coeffs) and coeffs not in out:
            out.append(coeffs)
    for c in out:
        for j in range(k):
            acc = ctx.zero()
            for i in range(s):
                if c[i] and rows[i][j]:
                    acc = acc + c[i] * rows[i][j]
            if not ring.is_zero(acc):
                raise RuntimeError("syzygy check failed")
    return out


def col_syzygies(matrix: Sequence[Sequence[Polynomial]], ring: QuotientRing) -> list[list[Polynomial]]:
    """Syzygies among the columns, i.e. {c : matrix * c = 0}."""
    if not matrix:
        return []
    cols = [list(col) for col in zip(*matrix)]
    return row_syzygies(cols, ring)
