from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from nflocus.matroid import InvalidMatroid, Matroid
from nflocus.fixtures import FIXTURE_NAMES
from nflocus.printed import TABLE

from helpers import fixture

U33 = Matroid(3, 3, [(1, 2, 3)])
U34 = Matroid(4, 3, combinations(range(1, 5), 3))


def test_uniform_matroids():
    assert U33.simple and U34.simple
    assert len(U34.bases) == 4
    assert U34.fundamental_circuit(4, (1, 2, 3)) == (1, 2, 3, 4)
    assert sorted(U34.flat_lattice().line_sizes()) == [2] * 6
    assert sorted(U33.flat_lattice().line_sizes()) == [2] * 3


def test_parallel_pair_is_not_simple():
    M = Matroid(4, 3, [(1, 2, 3), (1, 2, 4)])
    assert not M.simple


def test_exchange_violation_is_reported():
    with pytest.raises(InvalidMatroid):
        Matroid(6, 3, [(1, 2, 3), (4, 5, 6)])


def test_characteristic_polynomials():
    assert U34.characteristic_polynomial().splitting is None
    assert tuple(U34.characteristic_polynomial().coefficients) == (-3, 6, -4, 1)
    assert U33.characteristic_polynomial().splitting == (1, 1)
    cp = fixture("M11").characteristic_polynomial()
    assert str(cp) == "(t-1)(t-5)^2" and cp.splitting == (5, 5)
    assert fixture("M9").characteristic_polynomial().splitting == (4, 4)


def test_fundamental_circuits_of_m11():
    M = fixture("M11")
    assert M.fundamental_circuit(3, (1, 2, 5)) == (1, 2, 3)
    assert M.fundamental_circuit(6, (1, 2, 5)) == (1, 5, 6)


def test_m9_lines_are_the_affine_plane():
    M = fixture("M9")
    # brute force: 3-subsets that are not bases, each closed under the matroid
    triples = [t for t in combinations(range(1, 10), 3) if not M.is_basis(t)]
    assert len(triples) == 12
    assert sorted(M.flat_lattice().line_sizes()) == [3] * 12


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_characteristic_polynomial(name):
    M = fixture(name)
    cp = M.characteristic_polynomial()
    assert M.n == TABLE[name]["size"]
    assert cp.splitting == TABLE[name]["roots"]
    d2, d3 = cp.splitting
    assert d2 + d3 == M.n - 1
    assert tuple(cp.coefficients) == M.whitney_characteristic()


def test_json_round_trip():
    M = fixture("M11")
    assert Matroid.from_json(M.to_json()) == M
    non = {"n": 4, "r": 3, "nonbases": [[1, 2, 3]]}
    assert len(Matroid.from_json(non).bases) == 3


def test_isomorphism():
    assert fixture("M12_1").isomorphism(fixture("M12_1")) is not None
    assert not fixture("M12_1").is_isomorphic(fixture("M12_2"))


@settings(max_examples=30, deadline=None)
@given(st.permutations(list(range(1, 10))))
def test_relabelled_m9_is_isomorphic(perm):
    M = fixture("M9")
    relabel = Matroid(9, 3, [tuple(perm[e - 1] for e in b) for b in M.bases_list()])
    assert relabel.is_isomorphic(M)
    assert relabel.characteristic_polynomial().coefficients == M.characteristic_polynomial().coefficients
