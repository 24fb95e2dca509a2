"""Reflection arrangements of the monomial groups G(n, n, 3)."""

from __future__ import annotations

from .groebner import Ideal, saturate
from .matroid import Matroid
from .poly import UsageError, VariableContext
from .representation import ParametrizedMatrix, Slice, matroid_of_parametrized_matrix


def cyclotomic_modulus(n: int, ctx: VariableContext) -> Ideal:
    """(a^n - 1) saturated by a^d - 1 for every proper divisor d of n."""
    a = ctx.var("a")
    I = Ideal([a ** n - 1], ctx)
    for d in range(1, n):
        if n % d == 0:
            I = saturate(I, a ** d - 1)
    if I.is_unit_ideal():
        raise RuntimeError(f"degenerate modulus for n={n}")
    return I


def gnn3_matrix(n: int, ctx: VariableContext) -> ParametrizedMatrix:
    """Columns x - a^k y, x - a^k z, y - a^k z for k = 0..n-1."""
    a = ctx.var("a")
    one, zero = ctx.one(), ctx.zero()
    cols = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        for k in range(n):
            v = [zero, zero, zero]
            v[i] = one
            v[j] = -(a ** k)
            cols.append(v)
    return ParametrizedMatrix(ctx, [[c[r] for c in cols] for r in range(3)])


def build_gnn3(n: int) -> tuple[Matroid, Slice]:
    if not 3 <= n <= 9:
        raise UsageError("n must lie in 3..9")
    ctx = VariableContext(["a"])
    I = cyclotomic_modulus(n, ctx)
    P = gnn3_matrix(n, ctx)
    s = Slice(ctx, I, [], P)
    M = matroid_of_parametrized_matrix(P, s)
    s.matroid = M
    return M, s
