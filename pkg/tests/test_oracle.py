import pytest
from hypothesis import given, settings, strategies as st

from nflocus.fixtures import FIXTURE_NAMES, printed_slice
from nflocus.freeness import DegreePartMatrix, build_psi, degree_part, ziegler_restriction
from nflocus.groebner import Ideal
from nflocus.matroid import Matroid
from nflocus.oracle import (
    ExponentScanner, SmallField, cross_validate, enumerate_slice_points, fields_up_to, is_free_at_point,
    kernel_dimension, prime_power, specialize_phi,
)
from nflocus.poly import UsageError, VariableContext
from nflocus.representation import ParametrizedMatrix, Slice, build_slice

from helpers import analysis, default_slice

U33 = Matroid(3, 3, [(1, 2, 3)])


def test_prime_power():
    assert prime_power(9) == (3, 2) and prime_power(7) == (7, 1)
    assert prime_power(12) is None and prime_power(1) is None


def test_field_size_limits():
    for q in (6, 8, 101 * 101):
        with pytest.raises(UsageError):
            SmallField(q)
    assert fields_up_to(25) == [2, 3, 4, 5, 7, 9, 11, 13, 17, 19, 23, 25]


@pytest.mark.parametrize("q", fields_up_to(121))
def test_field_axioms_exhaustive(q):
    F = SmallField(q)
    els = list(F.elements())
    for x in els:
        assert F.add(x, F.neg(x)) == 0
        assert F.mul(x, 1) == x and F.add(x, 0) == x
        if x:
            assert F.mul(x, F.inv(x)) == 1
    # multiplicative group is cyclic of order q - 1
    assert all(F.power(x, q - 1) == 1 for x in els if x)
    sample = els[:: max(1, q // 11)]
    for x in sample:
        for y in sample:
            assert F.mul(x, y) == F.mul(y, x)
            assert F.add(x, y) == F.add(y, x)
            for z in sample:
                assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
                assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))


@settings(max_examples=200)
@given(st.sampled_from([49, 89, 97, 121]), st.data())
def test_field_inverse_randomized(q, data):
    F = SmallField(q)
    x = data.draw(st.integers(1, q - 1))
    assert F.mul(F.inv(x), x) == 1


def test_slice_points_examples():
    s = printed_slice("M11")
    assert enumerate_slice_points(s, SmallField(5)) == [(3,)]
    assert len(enumerate_slice_points(build_slice(U33), SmallField(7))) == 1
    s9 = default_slice("M9")
    assert enumerate_slice_points(s9, SmallField(2)) == []
    assert len(enumerate_slice_points(s9, SmallField(4))) == 2


def test_scan_refuses_many_parameters():
    ctx = VariableContext(["a", "b", "c", "d"])
    s = Slice(ctx, Ideal([], ctx), [], ParametrizedMatrix(ctx, [[ctx.one()]]))
    with pytest.raises(UsageError):
        enumerate_slice_points(s, SmallField(2))


def test_zero_matrix_kernel():
    R = analysis("M11").phi.ring
    zero = R.ctx.zero()
    phi = DegreePartMatrix(R, [[zero] * 3 for _ in range(4)], 3, 0)
    assert kernel_dimension(phi, (0,), SmallField(5)) == 4


def test_m11_pointwise():
    r = analysis("M11")
    s = default_slice("M11")
    scan = ExponentScanner(r.psi)
    F5, F4 = SmallField(5), SmallField(4)
    (p5,) = enumerate_slice_points(s, F5)
    assert is_free_at_point(r.phi, p5, F5)
    assert scan.exponents(p5, F5) == (5, 5)
    pts4 = enumerate_slice_points(s, F4)
    assert len(pts4) == 2
    for p in pts4:
        assert kernel_dimension(r.phi, p, F4) >= 1
        assert scan.exponents(p, F4) == (4, 6)


def test_m9_freeness_by_characteristic():
    r = analysis("M9")
    s = default_slice("M9")
    for q, free in ((3, False), (4, True), (7, True)):
        F = SmallField(q)
        pts = enumerate_slice_points(s, F)
        assert pts and all(is_free_at_point(r.phi, p, F) == free for p in pts)


def test_boolean_is_free():
    s = build_slice(U33)
    s.matroid = U33
    ma = ziegler_restriction(s, 3)
    psi = build_psi(ma)
    phi = degree_part(psi, 0)
    for q in (2, 3, 4):
        F = SmallField(q)
        (pt,) = enumerate_slice_points(s, F)
        assert is_free_at_point(phi, pt, F)
        assert ExponentScanner(psi).exponents(pt, F) == (1, 1)


def test_m11_cross_validation():
    r = analysis("M11")
    cv = cross_validate(default_slice("M11"), r.phi, r.locus, [4, 5, 9, 11], r.psi)
    assert cv.agree
    assert {p.field for p in cv.points if not p.free} == {4}


def test_m12_2_nonfree_everywhere():
    r = analysis("M12_2")
    cv = cross_validate(default_slice("M12_2"), r.phi, r.locus, [4])
    assert cv.points and not any(p.free for p in cv.points) and cv.agree


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_specialized_dimensions(name):
    r = analysis(name)
    s = default_slice(name)
    for q in fields_up_to(25):
        F = SmallField(q)
        pts = enumerate_slice_points(s, F)
        if pts:
            m = specialize_phi(r.phi, pts[0], F)
            assert (len(m), len(m[0])) == r.phi.shape
            return
