import pytest

from nflocus.gnn3 import build_gnn3, cyclotomic_modulus
from nflocus.groebner import Ideal
from nflocus.poly import UsageError, VariableContext
from nflocus.workbench import analyze

from helpers import fixture


@pytest.mark.parametrize("n, modulus", [(3, "a^2+a+1"), (4, "a^2+1"), (6, "a^2-a+1")])
def test_cyclotomic_modulus(n, modulus):
    ctx = VariableContext(["a"])
    assert cyclotomic_modulus(n, ctx) == Ideal([ctx.parse(modulus)], ctx)


def test_gnn3_3_has_m9_flats():
    M, s = build_gnn3(3)
    assert M.n == 9
    assert M.flat_lattice().line_sizes() == fixture("M9").flat_lattice().line_sizes()
    assert M.flat_lattice().line_sizes().count(3) == 12


def test_gnn3_4_is_m12_1():
    M, _ = build_gnn3(4)
    assert M.is_isomorphic(fixture("M12_1"))
    assert not M.is_isomorphic(fixture("M12_2"))


def test_gnn3_sizes():
    for n in (5, 6):
        M, _ = build_gnn3(n)
        assert M.n == 3 * n
        assert M.characteristic_polynomial().splitting == (n + 1, 2 * n - 2)


def test_gnn3_range():
    for n in (2, 10):
        with pytest.raises(UsageError):
            build_gnn3(n)


def test_gnn3_small_loci():
    rep3 = analyze(build_gnn3(3)[0], "G(3,3,3)")
    assert rep3["nfl"]["primes"] == [3]
    rep4 = analyze(build_gnn3(4)[0], "G(4,4,3)")
    assert rep4["nfl"]["classification"] == "Empty"
