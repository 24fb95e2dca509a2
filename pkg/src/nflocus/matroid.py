"""Matroids given by their bases, with the rank-3 lattice data the analysis needs.

Elements are labelled 1..n.  Subsets are stored as bitmasks (bit i-1 for
element i); helpers convert to and from sorted tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import isqrt
from typing import Iterable, Sequence


class InvalidMatroid(ValueError):
    pass


class Unsupported(ValueError):
    pass


def to_mask(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << (e - 1)
    return m


def to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Matroid:
    """A matroid on {1..n} of rank r, validated against the basis-exchange axiom."""

    def __init__(self, n: int, r: int, bases: Iterable[Iterable[int]], check: bool = True):
        if n > 64:
            raise Unsupported("ground sets above 64 elements are not supported")
        self.n = n
        self.r = r
        masks = set()
        for b in bases:
            b = tuple(b)
            if len(set(b)) != r or any(not 1 <= e <= n for e in b):
                raise InvalidMatroid(f"{b} is not an {r}-subset of 1..{n}")
            masks.add(to_mask(b))
        if not masks:
            raise InvalidMatroid("a matroid needs at least one basis")
        self.bases = frozenset(masks)
        if check:
            self._check_exchange()
        pairs = [to_mask(p) for p in combinations(range(1, n + 1), 2)]
        self.simple = all(any(b & pm == pm for b in self.bases) for pm in pairs)
        self._rank_cache: dict[int, int] = {}

    @classmethod
    def from_nonbases(cls, n: int, r: int, nonbases: Iterable[Iterable[int]]) -> "Matroid":
        non = {to_mask(x) for x in nonbases}
        for x in non:
            if popcount(x) != r:
                raise InvalidMatroid(f"{to_tuple(x)} is not an {r}-subset")
        bases = [c for c in combinations(range(1, n + 1), r) if to_mask(c) not in non]
        return cls(n, r, bases)

    def _check_exchange(self):
        for b1 in self.bases:
            for b2 in self.bases:
                diff = b1 & ~b2
                while diff:
                    low = diff & -diff
                    diff ^= low
                    rest = b1 ^ low
                    cand = b2 & ~b1
                    ok = False
                    while cand:
                        c = cand & -cand
                        cand ^= c
                        if rest | c in self.bases:
                            ok = True
                            break
                    if not ok:
                        raise InvalidMatroid(
                            f"exchange axiom fails for bases {to_tuple(b1)} and {to_tuple(b2)} "
                            f"at element {to_tuple(low)[0]}")

    # -- queries
    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def bases_list(self) -> list[tuple[int, ...]]:
        return sorted(to_tuple(b) for b in self.bases)

    def nonbases_list(self) -> list[tuple[int, ...]]:
        return [c for c in combinations(range(1, self.n + 1), self.r) if to_mask(c) not in self.bases]

    def is_basis(self, elems: Iterable[int]) -> bool:
        return to_mask(elems) in self.bases

    def rank(self, elems: Iterable[int] | int) -> int:
        mask = elems if isinstance(elems, int) else to_mask(elems)
        if mask not in self._rank_cache:
            self._rank_cache[mask] = max(popcount(b & mask) for b in self.bases)
        return self._rank_cache[mask]

    def closure(self, elems: Iterable[int] | int) -> int:
        mask = elems if isinstance(elems, int) else to_mask(elems)
        rk = self.rank(mask)
        out = mask
        for e in range(self.n):
            bit = 1 << e
            if not mask & bit and self.rank(mask | bit) == rk:
                out |= bit
        return out

    def default_basis(self) -> tuple[int, ...]:
        return self.bases_list()[0]

    def fundamental_circuit(self, i: int, basis: Sequence[int]) -> tuple[int, ...]:
        """The unique circuit inside basis + {i}."""
        bmask = to_mask(basis)
        if bmask not in self.bases:
            raise ValueError(f"{tuple(basis)} is not a basis")
        if bmask >> (i - 1) & 1:
            raise ValueError(f"element {i} lies in the basis")
        circ = 1 << (i - 1)
        for e in basis:
            if (bmask ^ (1 << (e - 1))) | (1 << (i - 1)) in self.bases:
                circ |= 1 << (e - 1)
        return to_tuple(circ)

    def circuits(self) -> list[tuple[int, ...]]:
        """All circuits (minimal dependent sets), brute force."""
        out = []
        found: list[int] = []
        for k in range(1, self.r + 2):
            for c in combinations(range(1, self.n + 1), k):
                m = to_mask(c)
                if any(f & m == f for f in found):
                    continue
                if self.rank(m) < k:
                    found.append(m)
                    out.append(c)
        return out

    def flat_lattice(self) -> "FlatLattice":
        if self.r != 3:
            raise Unsupported("flat lattice is implemented for rank 3 only")
        if not self.simple:
            raise Unsupported("flat lattice needs a simple matroid")
        lines = set()
        for i, j in combinations(range(1, self.n + 1), 2):
            lines.add(self.closure(to_mask((i, j))))
        lines = sorted(lines, key=lambda m: to_tuple(m))
        return FlatLattice(
            n=self.n,
            points=[(e,) for e in range(1, self.n + 1)],
            lines=[to_tuple(m) for m in lines],
        )

    def characteristic_polynomial(self) -> "CharPoly":
        if self.r != 3:
            raise Unsupported("characteristic polynomial is implemented for rank 3 only")
        lat = self.flat_lattice()
        s = sum(len(F) - 1 for F in lat.lines)
        n = self.n
        c0 = -(1 - n + s)
        coeffs = (c0, s, -n, 1)  # ascending powers
        b, c = -(n - 1), s - n + 1   # cofactor t^2 + b t + c
        splitting = None
        disc = b * b - 4 * c
        if disc >= 0 and isqrt(disc) ** 2 == disc:
            rt = isqrt(disc)
            d2, d3 = sorted(((-b - rt) // 2, (-b + rt) // 2))
            if d2 > 0 and d2 * d3 == c and d2 + d3 == -b:
                splitting = (d2, d3)
        return CharPoly(coeffs, splitting)

    def whitney_characteristic(self) -> tuple[int, ...]:
        """chi(t) from sum over all subsets of (-1)^|S| t^(r - rank S); ascending coefficients."""
        coeffs = [0] * (self.r + 1)
        for mask in range(1 << self.n):
            coeffs[self.r - self.rank(mask)] += -1 if popcount(mask) % 2 else 1
        return tuple(coeffs)

    # -- serialization
    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "bases": [list(b) for b in self.bases_list()]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Matroid":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n, r = int(data["n"]), int(data["r"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidMatroid(f"matroid JSON needs integer n and r: {exc}") from None
        if "bases" in data:
            return cls(n, r, data["bases"])
        if "nonbases" in data:
            return cls.from_nonbases(n, r, data["nonbases"])
        raise InvalidMatroid("matroid JSON needs 'bases' or 'nonbases'")

    def __eq__(self, other):
        return isinstance(other, Matroid) and (self.n, self.r, self.bases) == (other.n, other.r, other.bases)

    def __hash__(self):
        return hash((self.n, self.r, self.bases))

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, {len(self.bases)} bases)"

    def isomorphism(self, other: "Matroid") -> dict[int, int] | None:
        """An element bijection carrying bases to bases, by backtracking."""
        if (self.n, self.r, len(self.bases)) != (other.n, other.r, len(other.bases)):
            return None
        n, r = self.n, self.r
        deg_a = [sum(1 for b in self.bases if b >> (e - 1) & 1) for e in range(1, n + 1)]
        deg_b = [sum(1 for b in other.bases if b >> (e - 1) & 1) for e in range(1, n + 1)]
        if sorted(deg_a) != sorted(deg_b):
            return None
        image: dict[int, int] = {}
        used = set()

        def consistent(e):
            assigned = [x for x in image if x != e]
            for rest in combinations(assigned, r - 1):
                src = rest + (e,)
                if self.is_basis(src) != other.is_basis([image[x] for x in src]):
                    return False
            return True

        def extend(e):
            if e > n:
                return True
            for f in range(1, n + 1):
                if f in used or deg_a[e - 1] != deg_b[f - 1]:
                    continue
                image[e] = f
                used.add(f)
                if consistent(e) and extend(e + 1):
                    return True
                used.discard(f)
                del image[e]
            return False

        return dict(image) if extend(1) else None

    def is_isomorphic(self, other: "Matroid") -> bool:
        return self.isomorphism(other) is not None


@dataclass
class FlatLattice:
    n: int
    points: list[tuple[int, ...]]
    lines: list[tuple[int, ...]]

    def mobius(self, flat: tuple[int, ...]) -> int:
        k = len(flat)
        if k == 0:
            return 1
        if flat in self.points:
            return -1
        if flat in self.lines:
            return k - 1
        if k == self.n:
            return -(1 - self.n + sum(len(F) - 1 for F in self.lines))
        raise ValueError(f"{flat} is not a flat")

    def lines_through(self, e: int) -> list[tuple[int, ...]]:
        return [F for F in self.lines if e in F]

    def line_sizes(self) -> list[int]:
        return sorted(len(F) for F in self.lines)


@dataclass
class CharPoly:
    coefficients: tuple[int, ...]   # ascending powers of t
    splitting: tuple[int, int] | None = None

    def __call__(self, t: int) -> int:
        return sum(c * t ** k for k, c in enumerate(self.coefficients))

    def __str__(self):
        if self.splitting:
            d2, d3 = self.splitting
            if d2 == d3:
                return f"(t-1)(t-{d2})^2"
            return f"(t-1)(t-{d2})(t-{d3})"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c:
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                if mono and abs(c) == 1:
                    terms.append(("+" if c > 0 else "-") + mono)
                else:
                    terms.append(f"{c:+d}{mono}" if mono else f"{c:+d}")
        return "".join(terms).lstrip("+")
