"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import time
from contextlib import contextmanager
from functools import lru_cache

import test_freeness
import test_groebner
from nflocus.fixtures import FIXTURE_NAMES, load_fixture, printed_slice
from nflocus.freeness import Locus, build_psi, degree_part, fitting_ideal, locus_equal, nonfree_locus, \
    reduce_presentation, ziegler_restriction
from nflocus.gnn3 import build_gnn3
from nflocus.groebner import Ideal
from nflocus.oracle import cross_validate, fields_up_to
from nflocus.workbench import analyze, nfl_label, table_rows

from helpers import analysis, default_slice, fixture

EXPECTED_PHI = {"M9": (16, 16), "M11": (25, 25), "M12_1": (24, 25), "M12_2": (24, 25), "M13_1": (36, 36),
                "M13_2": (36, 36), "M13_3": (36, 36), "M13_4": (36, 36), "M13_5": (36, 36)}
EXPECTED_NFL = {"M9": ("Proper", 3), "M11": ("Proper", 2), "M12_1": ("Empty", None),
                "M12_2": ("EntireSlice", None), "M13_1": ("Empty", None), "M13_2": ("EntireSlice", None),
                "M13_3": ("EntireSlice", None), "M13_4": ("Empty", None), "M13_5": ("Empty", None)}


@contextmanager
def criterion(capsys, k, title):
    details = []
    ok = False
    try:
        yield details
        ok = True
    finally:
        with capsys.disabled():
            extra = f" ({'; '.join(details)})" if details else ""
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} {title}{extra}")


@lru_cache(maxsize=None)
def oracle_run(name):
    r = analysis(name)
    return r, cross_validate(default_slice(name), r.phi, r.locus, fields_up_to(25), r.psi)


def test_criterion_1_phi_dimensions(capsys):
    with criterion(capsys, 1, "phi dimensions exact") as det:
        got = {name: analysis(name).phi.shape for name in FIXTURE_NAMES}
        det.append(", ".join(f"{n} {r}x{c}" for n, (r, c) in got.items()))
        assert got == EXPECTED_PHI


def test_criterion_2_nfl_column(capsys):
    with criterion(capsys, 2, "nonfree locus per fixture") as det:
        for name in FIXTURE_NAMES:
            L = analysis(name).locus
            cls, p = EXPECTED_NFL[name]
            det.append(f"{name} {L.classification}" + (f" char {L.char_support}" if p else ""))
            assert L.classification == cls
            if p:
                s = default_slice(name)
                assert L.char_support == p
                assert locus_equal(L, Locus(s, Ideal([s.ctx.one() * p], s.ctx)).classify())


def test_criterion_3_m11_reduction(capsys):
    with criterion(capsys, 3, "printed M11 slice reduces to <= 2x2 with radical <2>") as det:
        s = printed_slice("M11")
        s.matroid = fixture("M11")
        phi = degree_part(build_psi(ziegler_restriction(s, 5)), 4)
        assert phi.shape == (25, 25)
        red, ncols, z, _ = reduce_presentation(phi.entries, phi.ncols, s.ring)
        det.append(f"reduced {len(red)}x{ncols}: {[[str(f) for f in row] for row in red]}")
        assert len(red) <= 2 and ncols <= 2
        N = fitting_ideal(red, ncols, phi.ell - z, s.ring)
        assert locus_equal(Locus(s, N).classify(), Locus(s, Ideal([s.ctx.one() * 2], s.ctx)).classify())


def test_criterion_4_oracle_agreement(capsys):
    with criterion(capsys, 4, "oracle agrees with the symbolic locus over fields <= 25") as det:
        total = 0
        for name in FIXTURE_NAMES:
            _, cv = oracle_run(name)
            total += len(cv.points)
            assert cv.points, name
            assert cv.agree, (name, cv.mismatches[:3])
        det.append(f"{total} points, 0 mismatches")


def test_criterion_5_exponent_inequality(capsys):
    with criterion(capsys, 5, "exponent inequality with equality exactly at free points") as det:
        checked = 0
        for name in FIXTURE_NAMES:
            r, cv = oracle_run(name)
            n = fixture(name).n
            for p in cv.points:
                e1, e2 = p.exponents
                assert e1 + e2 == n - 1
                assert e1 * e2 <= r.d2 * r.d3
                assert (e1 * e2 == r.d2 * r.d3) == p.free
                checked += 1
        det.append(f"{checked} points")


def test_criterion_6_hyperplane_independence(capsys):
    with criterion(capsys, 6, "locus independent of the hyperplane") as det:
        for name in FIXTURE_NAMES:
            M = fixture(name)
            s = default_slice(name)
            first = analysis(name)
            H = first.restriction.hyperplane
            other = next(e for e in s.basis if e != H)
            second = nonfree_locus(M, other, s)
            det.append(f"{name} H={H},{other}")
            assert locus_equal(first.locus, second.locus), name


def test_criterion_7_gnn3(capsys):
    with criterion(capsys, 7, "G(n,n,3) for n = 3, 4, 5") as det:
        for n, want in ((3, "V(3)"), (4, "empty"), (5, "V(5)")):
            rep = analyze(build_gnn3(n)[0], f"G({n},{n},3)")
            det.append(f"n={n} {nfl_label(rep)}")
            assert nfl_label(rep) == want


def test_criterion_8_runtime(capsys):
    with criterion(capsys, 8, "table under 30 min, each fixture under 10 min") as det:
        per = {}
        t_all = time.perf_counter()
        for name in FIXTURE_NAMES:
            t0 = time.perf_counter()
            analyze(load_fixture(name), name)
            per[name] = time.perf_counter() - t0
        t0 = time.perf_counter()
        table_rows(workers=None)
        parallel = time.perf_counter() - t0
        total = time.perf_counter() - t_all
        det.append(f"slowest {max(per, key=per.get)} {max(per.values()):.1f}s, parallel table {parallel:.1f}s")
        assert max(per.values()) < 600
        assert total < 1800


def test_criterion_9_property_suites(capsys):
    with criterion(capsys, 9, "property suites") as det:
        for prop in (test_groebner.test_groebner_soundness_against_sympy, test_groebner.test_saturation_idempotent,
                     test_freeness.test_reduction_preserves_fitting_ideal):
            prop()
            det.append(prop.__name__)
        for name in FIXTURE_NAMES:
            test_freeness.test_psi_homogeneous(name)
            test_freeness.test_dimension_and_index_laws(name)
        det.append("psi homogeneity, dimension and index laws")
