"""Pointwise freeness over small finite fields.

This is an independent check of the symbolic Fitting-ideal computation:
enumerate the slice points over F_q, specialize phi, and read freeness
off the kernel dimension.  It also recovers the exponents of the Ziegler
restriction at each point by scanning degrees of psi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .freeness import DegreePartMatrix, GradedMorphism, Locus, degree_part
from .poly import Polynomial, UsageError
from .representation import Slice

MAX_PRIME = 97
MAX_PARAMS = 3


def prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


class SmallField:
    """F_q for q = p or p^2.

    Elements are ints 0 <= x < q; for k = 2 the element a + b*g is stored
    as a + b*p where g is a root of a fixed monic irreducible quadratic.
    """

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise UsageError(f"{q} is not a prime power")
        p, k = pk
        if k > 2:
            raise UsageError(f"F_{q}: extension degree {k} exceeds 2")
        if p > MAX_PRIME:
            raise UsageError(f"F_{q}: characteristic {p} exceeds {MAX_PRIME}")
        self.q, self.p, self.k = q, p, k
        self.modulus = None
        if k == 2:
            # x^2 = c1*x + c0 with no root in F_p
            for c1 in range(p):
                for c0 in range(p):
                    if all((x * x - c1 * x - c0) % p for x in range(p)):
                        self.modulus = (c0, c1)
                        break
                if self.modulus:
                    break
        self._inv: dict[int, int] = {}

    def __repr__(self):
        return f"GF({self.q})"

    @property
    def characteristic(self) -> int:
        return self.p

    def elements(self) -> range:
        return range(self.q)

    def from_int(self, c: int) -> int:
        return c % self.p

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.k == 1:
            return (x + y) % p
        return (x % p + y % p) % p + ((x // p + y // p) % p) * p

    def neg(self, x: int) -> int:
        p = self.p
        if self.k == 1:
            return (-x) % p
        return (-(x % p)) % p + ((-(x // p)) % p) * p

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        p = self.p
        if self.k == 1:
            return x * y % p
        a, b = x % p, x // p
        c, d = y % p, y // p
        c0, c1 = self.modulus
        bd = b * d
        lo = (a * c + bd * c0) % p
        hi = (a * d + b * c + bd * c1) % p
        return lo + hi * p

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        y = self._inv.get(x)
        if y is None:
            y = self._inv[x] = self.power(x, self.q - 2)
        return y

    def power(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def evaluate(self, f: Polynomial, point: Sequence[int]) -> int:
        acc = 0
        cache: dict = {}
        for e, c in f.terms_dict.items():
            v = self.from_int(c)
            if not v:
                continue
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    pw = cache.get(key)
                    if pw is None:
                        pw = cache[key] = self.power(point[i], k)
                    v = self.mul(v, pw)
            acc = self.add(acc, v)
        return acc

    def rank(self, rows: list[list[int]]) -> int:
        m = [list(r) for r in rows]
        if not m:
            return 0
        ncols = len(m[0])
        r = 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = self.inv(m[r][c])
            m[r] = [self.mul(inv, x) for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
        return r


def fields_up_to(bound: int) -> list[int]:
    """Supported field sizes up to bound: p or p^2 with p <= MAX_PRIME."""
    out = []
    for q in range(2, bound + 1):
        pk = prime_power(q)
        if pk and pk[1] <= 2 and pk[0] <= MAX_PRIME:
            out.append(q)
    return out


def enumerate_slice_points(s: Slice, F: SmallField) -> list[tuple[int, ...]]:
    """All F-points of V(I) minus V(J) in the slice coordinates."""
    if s.nparams > MAX_PARAMS:
        raise UsageError(f"exhaustive scan supports at most {MAX_PARAMS} parameters, slice has {s.nparams}")
    eqs = list(s.I.groebner())
    removed = list(s.J)
    pts = []
    for pt in product(F.elements(), repeat=s.nparams):
        if any(F.evaluate(f, pt) for f in eqs):
            continue
        if any(not F.evaluate(g, pt) for g in removed):
            continue
        pts.append(pt)
    return pts


def specialize(matrix: Sequence[Sequence[Polynomial]], point, F: SmallField) -> list[list[int]]:
    return [[F.evaluate(f, point) if f else 0 for f in row] for row in matrix]


def specialize_phi(phi: DegreePartMatrix, point, F: SmallField) -> list[list[int]]:
    return specialize(phi.entries, point, F)


def kernel_dimension(phi: DegreePartMatrix, point, F: SmallField) -> int:
    """Dimension of {v : v * phi(point) = 0}."""
    if phi.nrows == 0:
        return 0
    return phi.nrows - F.rank(specialize_phi(phi, point, F))


def is_free_at_point(phi: DegreePartMatrix, point, F: SmallField) -> bool:
    return kernel_dimension(phi, point, F) == 0


class ExponentScanner:
    """Exponents (d1', d2') of the restricted multiarrangement at a point."""

    def __init__(self, psi: GradedMorphism):
        self.psi = psi
        self.total = sum(psi.source_degrees[2:])
        self._parts: dict[int, DegreePartMatrix] = {}

    def part(self, e: int) -> DegreePartMatrix:
        if e not in self._parts:
            self._parts[e] = degree_part(self.psi, e)
        return self._parts[e]

    def exponents(self, point, F: SmallField) -> tuple[int, int]:
        for e in range(self.total // 2 + 1):
            if kernel_dimension(self.part(e), point, F):
                return e, self.total - e
        raise RuntimeError("no derivation found up to half the total multiplicity")


def restriction_exponents_at_point(psi: GradedMorphism, point, F: SmallField) -> tuple[int, int]:
    return ExponentScanner(psi).exponents(point, F)


@dataclass
class PointReport:
    field: int
    point: tuple[int, ...]
    kernel_dim: int
    free: bool
    in_locus: bool
    exponents: tuple[int, int] | None = None


@dataclass
class CrossValidation:
    fields: list[int]
    points: list[PointReport] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)

    @property
    def mismatches(self) -> list[PointReport]:
        return [r for r in self.points if r.free == r.in_locus]

    @property
    def agree(self) -> bool:
        return not self.mismatches

    def summary(self) -> dict:
        return {
            "fields": self.fields,
            "points": len(self.points),
            "nonfree_points": sum(1 for r in self.points if not r.free),
            "mismatches": len(self.mismatches),
            "fields_without_points": self.skipped,
        }


def in_locus(locus: Locus, point, F: SmallField) -> bool:
    return all(F.evaluate(g, point) == 0 for g in locus.N.generators)


def cross_validate(s: Slice, phi: DegreePartMatrix, locus: Locus, fields: Sequence[int],
                   psi: GradedMorphism | None = None) -> CrossValidation:
    """Compare pointwise freeness with membership in the symbolic locus.

    When psi is given the restriction exponents are recorded as well.
    """
    report = CrossValidation(list(fields))
    scanner = ExponentScanner(psi) if psi is not None else None
    for q in fields:
        F = SmallField(q)
        pts = enumerate_slice_points(s, F)
        if not pts:
            report.skipped.append(q)
            continue
        for pt in pts:
            k = kernel_dimension(phi, pt, F)
            exps = scanner.exponents(pt, F) if scanner else None
            report.points.append(PointReport(q, pt, k, k == 0, in_locus(locus, pt, F), exps))
    return report
