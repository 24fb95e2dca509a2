"""Sparse multivariate polynomials over the integers.

A polynomial lives in a :class:`VariableContext`, an ordered tuple of
variable names split into consecutive blocks.  Monomials are exponent
tuples of the context's length; a zero entry simply means the variable
does not occur.  Coefficients are Python ints, so everything is exact.

Terms are kept in a dict keyed by exponent tuple.  Ordered views are
produced on demand for a given :class:`MonomialOrder`.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Dict, Iterable, Sequence, Tuple

Exp = Tuple[int, ...]
TermDict = Dict[Exp, int]


class UsageError(ValueError):
    """Raised when an operation is called outside its contract."""


class VariableContext:
    """Ordered variable names, partitioned into consecutive blocks.

    ``blocks`` holds the block sizes, e.g. ``(2, 2)`` for two parameters
    followed by two geometric variables.  Elimination orders only ever
    eliminate a prefix of the blocks.
    """

    __slots__ = ("names", "blocks", "_index")

    def __init__(self, names: Sequence[str], blocks: Sequence[int] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        for nm in names:
            if not _IDENT.fullmatch(nm):
                raise UsageError(f"bad variable name {nm!r}")
        if blocks is None:
            blocks = (len(names),) if names else ()
        blocks = tuple(int(b) for b in blocks)
        if sum(blocks) != len(names) or any(b < 0 for b in blocks):
            raise UsageError(f"blocks {blocks} do not partition {len(names)} names")
        self.names = names
        self.blocks = blocks
        self._index = {nm: i for i, nm in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}") from None

    def __eq__(self, other):
        return (isinstance(other, VariableContext)
                and self.names == other.names and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.names, self.blocks))

    def __repr__(self):
        return f"VariableContext({list(self.names)}, blocks={list(self.blocks)})"

    # constructors of derived contexts
    def extend(self, names: Sequence[str], front: bool = False) -> "VariableContext":
        """New context with one extra block of variables, at the front or back."""
        names = tuple(names)
        if front:
            return VariableContext(names + self.names, (len(names),) + self.blocks)
        return VariableContext(self.names + names, self.blocks + (len(names),))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str | int) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    """A global multiplicative monomial order.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"elim"``.  For ``"elim"`` the
    first ``front`` variables are compared first (degrevlex on that block),
    ties broken by degrevlex on the remaining variables.
    """

    __slots__ = ("kind", "front", "key")

    def __init__(self, kind: str = "degrevlex", front: int = 0):
        if kind not in ("degrevlex", "lex", "elim"):
            raise UsageError(f"unknown order {kind!r}")
        self.kind = kind
        self.front = front if kind == "elim" else 0
        if kind == "degrevlex":
            self.key = _degrevlex_key
        elif kind == "lex":
            self.key = _lex_key
        else:
            k = self.front

            def key(e, k=k):
                return (_degrevlex_key(e[:k]), _degrevlex_key(e[k:]))
            self.key = key

    def compare(self, u: Exp, v: Exp) -> int:
        """Return -1, 0 or 1 as ``u`` is smaller than, equal to, larger than ``v``."""
        if len(u) != len(v):
            raise UsageError("monomials from different contexts")
        ku, kv = self.key(u), self.key(v)
        return (ku > kv) - (ku < kv)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.front) == (other.kind, other.front)

    def __hash__(self):
        return hash((self.kind, self.front))

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder('elim', front={self.front})"
        return f"MonomialOrder({self.kind!r})"


def _degrevlex_key(e: Exp):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e: Exp):
    return e


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def elimination_order(front: int) -> MonomialOrder:
    return MonomialOrder("elim", front)


def compare_monomials(u: Exp, v: Exp, order: MonomialOrder = DEGREVLEX) -> int:
    return order.compare(u, v)


# ---------------------------------------------------------------------------
# raw term-dict arithmetic (shared with the Groebner engine)

def t_add(f: TermDict, g: TermDict) -> TermDict:
    if len(f) < len(g):
        f, g = g, f
    r = dict(f)
    for e, c in g.items():
        s = r.get(e, 0) + c
        if s:
            r[e] = s
        else:
            r.pop(e, None)
    return r


def t_sub(f: TermDict, g: TermDict) -> TermDict:
    r = dict(f)
    for e, c in g.items():
        s = r.get(e, 0) - c
        if s:
            r[e] = s
        else:
            r.pop(e, None)
    return r


def t_mul(f: TermDict, g: TermDict) -> TermDict:
    if len(f) < len(g):
        f, g = g, f
    r: TermDict = {}
    for e2, c2 in g.items():
        for e1, c1 in f.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = r.get(e, 0) + c1 * c2
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def t_scale(f: TermDict, c: int, m: Exp | None = None) -> TermDict:
    """``c * x^m * f``."""
    if not c:
        return {}
    if m is None or not any(m):
        return {e: c * v for e, v in f.items()}
    return {tuple(a + b for a, b in zip(e, m)): c * v for e, v in f.items()}


def t_content(f: TermDict) -> int:
    g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable polynomial with integer coefficients."""

    __slots__ = ("ctx", "_d", "_hash")

    def __init__(self, ctx: VariableContext, terms: TermDict | Iterable[tuple[int, Exp]] = ()):
        self.ctx = ctx
        if isinstance(terms, dict):
            d = {e: c for e, c in terms.items() if c}
        else:
            d = {}
            for c, e in terms:
                s = d.get(e, 0) + c
                if s:
                    d[e] = s
                else:
                    d.pop(e, None)
        n = ctx.nvars
        for e in d:
            if len(e) != n:
                raise UsageError(f"monomial {e} outside context of {n} variables")
        self._d = d
        self._hash = None

    # -- basic queries
    @property
    def terms_dict(self) -> TermDict:
        return self._d

    def terms(self, order: MonomialOrder = DEGREVLEX) -> list[tuple[int, Exp]]:
        """(coefficient, exponent) pairs, strictly descending in ``order``."""
        return [(self._d[e], e) for e in sorted(self._d, key=order.key, reverse=True)]

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._d)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise UsageError(f"{self} is not constant")
        return self._d.get((0,) * self.ctx.nvars, 0)

    def leading_term(self, order: MonomialOrder = DEGREVLEX) -> tuple[int, Exp]:
        if not self._d:
            raise UsageError("zero polynomial has no leading term")
        e = max(self._d, key=order.key)
        return self._d[e], e

    def total_degree(self) -> int:
        return max((sum(e) for e in self._d), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._d), default=-1)

    def variables(self) -> set[int]:
        out = set()
        for e in self._d:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def content(self) -> int:
        return integer_content(self)

    # -- arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ctx != self.ctx:
            raise UsageError(f"context mismatch: {self.ctx} vs {other.ctx}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, t_add(self._d, other._d))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, t_sub(self._d, other._d))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self._d.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.ctx, t_scale(self._d, other))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, t_mul(self._d, other._d))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise UsageError("negative power")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, c: int) -> "Polynomial":
        out = {}
        for e, v in self._d.items():
            q, r = divmod(v, c)
            if r:
                raise UsageError(f"{c} does not divide {self}")
            out[e] = q
        return Polynomial(self.ctx, out)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._d.items())))
        return self._hash

    # -- substitution / evaluation
    def substitute(self, images: Sequence["Polynomial"], target: VariableContext | None = None) -> "Polynomial":
        """Ring map sending variable ``i`` to ``images[i]`` (all in ``target``)."""
        if len(images) != self.ctx.nvars:
            raise UsageError("need one image per variable")
        if target is None:
            target = images[0].ctx if images else self.ctx
        powers: list[dict[int, TermDict]] = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 1:
                    cache[k] = images[i]._d
                else:
                    h = k // 2
                    p = t_mul(power(i, h), power(i, h))
                    cache[k] = t_mul(p, images[i]._d) if k % 2 else p
            return cache[k]

        one = (0,) * target.nvars
        acc: TermDict = {}
        for e, c in self._d.items():
            t: TermDict = {one: c}
            for i, k in enumerate(e):
                if k:
                    t = t_mul(t, power(i, k))
            acc = t_add(acc, t)
        return Polynomial(target, acc)

    def evaluate(self, values: Sequence, zero=0):
        """Evaluate at a point; ``values`` may be any ring supporting + and *."""
        total = zero
        for e, c in self._d.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def change_context(self, target: VariableContext, mapping: Sequence[int] | None = None) -> "Polynomial":
        """Reinterpret in ``target``; variable ``i`` goes to position ``mapping[i]``.

        Without ``mapping`` variables are matched by name.
        """
        if mapping is None:
            mapping = [target.index(nm) for nm in self.ctx.names]
        n = target.nvars
        out = {}
        for e, c in self._d.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = mapping[i]
                    if j is None or j < 0:
                        raise UsageError(f"variable {self.ctx.names[i]} has no image")
                    ne[j] += k
            out[tuple(ne)] = c
        return Polynomial(target, out)

    # -- text
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def ring_arithmetic(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise UsageError(f"unknown op {op!r}")


def integer_content(f: Polynomial) -> int:
    if f.is_zero():
        raise UsageError("content of the zero polynomial")
    return t_content(f.terms_dict)


# ---------------------------------------------------------------------------
# text format

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def format_polynomial(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    if f.is_zero():
        return "0"
    names = f.ctx.names
    parts = []
    for k, (c, e) in enumerate(f.terms(order)):
        mono = "*".join(names[i] + (f"^{x}" if x > 1 else "") for i, x in enumerate(e) if x)
        sign = "-" if c < 0 else ("+" if k else "")
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append(sign + body)
    return "".join(parts)


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    """Parse infix text such as ``a^2-a-1`` or ``-2*(x+y)^3``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
    tokens.append(("end", None))
    p = _Parser(tokens, ctx)
    result = p.expr()
    if p.peek() != ("end", None):
        raise UsageError(f"trailing input in {text!r}")
    return result


class _Parser:
    def __init__(self, tokens, ctx):
        self.tokens = tokens
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            t = self.term()
            acc = acc - t if op == "-" else acc + t
        return acc

    def term(self):
        acc = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                acc = acc * self.power()
            elif tok[0] in ("var", "num") or tok == ("op", "("):
                acc = acc * self.power()  # implicit product, e.g. 2a
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise UsageError("exponent must be a nonnegative integer")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ctx.const(val)
        if kind == "var":
            return self.ctx.var(val)
        if (kind, val) == ("op", "("):
            e = self.expr()
            if self.take() != ("op", ")"):
                raise UsageError("unbalanced parenthesis")
            return e
        if (kind, val) == ("op", "-"):
            return -self.power()
        raise UsageError(f"unexpected token {val!r}")
