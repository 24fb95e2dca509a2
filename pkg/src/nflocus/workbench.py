"""Analysis pipeline, reports and the fixture table."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .fixtures import FIXTURE_NAMES, load_fixture
from .freeness import AnalysisError, default_hyperplane, nonfree_locus, prime_support
from .gnn3 import build_gnn3
from .groebner import DEFAULT_MAX_PAIRS, Limits, ResourceError
from .matroid import InvalidMatroid, Matroid
from .oracle import cross_validate, fields_up_to
from .printed import TABLE
from .representation import build_slice

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MAX_ORACLE_Q = 121

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NONSPLIT = 3
EXIT_NOT_REPRESENTABLE = 4
EXIT_RESOURCE = 5
EXIT_ORACLE = 6


class ConfigError(ValueError):
    pass


@dataclass
class AnalysisConfig:
    matroid_file: str | None = None
    fixture: str | None = None
    gnn3: int | None = None
    hyperplane: int | None = None
    oracle: list[int] = field(default_factory=list)
    format: str = "json"
    max_pairs: int | None = None
    trace: bool = False

    def validate(self):
        sources = [x for x in (self.matroid_file, self.fixture, self.gnn3) if x is not None]
        if len(sources) != 1:
            raise ConfigError("give exactly one of --matroid, --fixture, --gnn3")
        supported = set(fields_up_to(MAX_ORACLE_Q))
        bad = [q for q in self.oracle if q not in supported]
        if bad:
            raise ConfigError(f"unsupported oracle field sizes {bad}; use p or p^2 up to {MAX_ORACLE_Q}")
        if self.format not in ("json", "md"):
            raise ConfigError(f"unknown format {self.format!r}")

    def source_name(self) -> str:
        if self.fixture:
            return self.fixture
        if self.gnn3 is not None:
            return f"G({self.gnn3},{self.gnn3},3)"
        return self.matroid_file

    def load(self) -> Matroid:
        if self.fixture:
            return load_fixture(self.fixture)
        if self.gnn3 is not None:
            return build_gnn3(self.gnn3)[0]
        with open(self.matroid_file) as fh:
            return Matroid.from_json(fh.read())


class AnalysisFailure(Exception):
    def __init__(self, code: int, message: str, report: dict | None = None):
        super().__init__(message)
        self.code = code
        self.report = report


def basis_through(M: Matroid, H: int) -> tuple[int, ...]:
    return min(b for b in M.bases_list() if H in b)


def analyze(M: Matroid, name: str = "", hyperplane: int | None = None,
            oracle: Sequence[int] = ()) -> dict:
    """Run slice, nonfree locus and optional oracle; returns the JSON report.

    Stages run in order, so a matroid that is neither representable nor
    integrally splitting fails at the slice stage.

    Raises AnalysisFailure carrying the CLI exit code.
    """
    report: dict = {"schema_version": SCHEMA_VERSION, "matroid": {"name": name, "n": M.n, "r": M.r,
                                                                  "bases": len(M.bases)}}
    if M.r != 3:
        raise AnalysisFailure(EXIT_INVALID, "only rank-3 matroids are supported", report)
    if not M.simple:
        raise AnalysisFailure(EXIT_INVALID, "matroid is not simple", report)
    cp = M.characteristic_polynomial()
    report["characteristic_polynomial"] = str(cp)
    report["roots"] = list(cp.splitting) if cp.splitting else None
    H = hyperplane if hyperplane is not None else default_hyperplane(M)
    if not 1 <= H <= M.n:
        raise AnalysisFailure(EXIT_INVALID, f"hyperplane {H} out of range", report)
    timings = {}
    t0 = time.perf_counter()
    s = build_slice(M, basis_through(M, H))
    timings["slice"] = round(time.perf_counter() - t0, 3)
    report["slice"] = {"variables": list(s.ctx.names), "I": [str(g) for g in s.I.groebner()],
                       "J": [str(g) for g in s.J], "basis": list(s.basis), "description": s.describe()}
    if not s.is_representable():
        raise AnalysisFailure(EXIT_NOT_REPRESENTABLE, "matroid is not representable over any field", report)
    # splitting is a hypothesis of the freeness criterion, checked after the slice stage
    if cp.splitting is None:
        raise AnalysisFailure(EXIT_NONSPLIT, f"characteristic polynomial {cp} does not split over ZZ", report)
    try:
        R = nonfree_locus(M, H, s)
    except AnalysisError as exc:
        raise AnalysisFailure(EXIT_NONSPLIT, str(exc), report) from None
    timings.update({k: round(v, 3) for k, v in R.timings.items()})
    L = R.locus
    report["hyperplane"] = H
    report["restriction"] = {"flats": [list(F) for F in R.restriction.flats],
                             "multiplicities": R.restriction.multiplicities}
    report["phi"] = {"rows": R.phi.nrows, "cols": R.phi.ncols, "index": R.phi.index, "degree": R.phi.degree}
    report["reduced"] = {"rows": len(R.reduced), "cols": R.reduced_cols, "free_summands": R.shift,
                         "steps": [s_.rule for s_ in R.steps]}
    report["nfl"] = {"classification": L.classification, "generators": [str(g) for g in L.N.generators],
                     "char_support": L.char_support, "char_generator": L.char_generator,
                     "primes": prime_support(L.char_support or 0),
                     # a proper locus over every characteristic is only sampled by the oracle
                     "undecided": L.classification not in ("Empty", "EntireSlice") and L.char_generator == 0}
    if report["nfl"]["undecided"]:
        log.warning("nonfree locus dominates Spec ZZ; oracle sampling cannot decide it")
    if oracle:
        t0 = time.perf_counter()
        cv = cross_validate(s, R.phi, L, oracle, R.psi)
        timings["oracle"] = round(time.perf_counter() - t0, 3)
        d2, d3 = R.d2, R.d3
        yosh = all(r.exponents[0] * r.exponents[1] <= d2 * d3 and
                   ((r.exponents[0] * r.exponents[1] == d2 * d3) == r.free) for r in cv.points)
        report["oracle"] = dict(cv.summary(), yoshinaga=yosh,
                                nonfree=[{"q": r.field, "point": list(r.point), "exponents": list(r.exponents)}
                                         for r in cv.points if not r.free])
        if not cv.agree:
            report["timings"] = timings
            raise AnalysisFailure(EXIT_ORACLE, f"oracle disagrees at {len(cv.mismatches)} points", report)
    report["timings"] = timings
    return report


def nfl_label(report: dict) -> str:
    nfl = report["nfl"]
    c = nfl["classification"]
    if c == "Empty":
        return "empty"
    if c == "EntireSlice":
        return "slice"
    primes = nfl["primes"]
    if nfl["char_support"] and primes:
        return "V(" + ",".join(str(p) for p in primes) + ")"
    return "V(" + ", ".join(nfl["generators"]) + ")"


def render_markdown(report: dict) -> str:
    """Markdown view of a report; a pure function of the JSON."""
    m = report["matroid"]
    lines = [f"# Nonfree locus of {m['name'] or 'matroid'}", "",
             f"- size: {m['n']}, rank {m['r']}, {m['bases']} bases"]
    if "characteristic_polynomial" in report:
        lines.append(f"- characteristic polynomial: {report['characteristic_polynomial']}")
    if report.get("roots"):
        lines.append(f"- roots: ({report['roots'][0]}, {report['roots'][1]})")
    if "slice" in report:
        lines.append(f"- slice: {report['slice']['description']}")
    if "hyperplane" in report:
        r = report["restriction"]
        lines.append(f"- hyperplane: {report['hyperplane']}, multiplicities {tuple(r['multiplicities'])}")
        lines.append(f"- phi: {report['phi']['rows']} x {report['phi']['cols']} (index {report['phi']['index']})")
        red = report["reduced"]
        lines.append(f"- reduced: {red['rows']} x {red['cols']} plus {red['free_summands']} free summands")
        nfl = report["nfl"]
        gens = ", ".join(nfl["generators"]) or "0"
        lines.append(f"- nonfree locus: {nfl['classification']} (Fitting generators: {gens}; "
                     f"characteristic support {nfl['char_support']})")
    if "oracle" in report:
        o = report["oracle"]
        lines.append(f"- oracle: {o['points']} points over {o['fields']}, {o['nonfree_points']} nonfree, "
                     f"{o['mismatches']} mismatches, exponent inequality {'holds' if o['yoshinaga'] else 'FAILS'}")
    if "error" in report:
        lines.append(f"- error: {report['error']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# fixture table

TABLE_HEADER = "| matroid | size | roots | phi | reduced phi | NFL |\n|---|---|---|---|---|---|"


def _table_entry(name: str) -> tuple[str, dict]:
    return name, analyze(load_fixture(name), name)


def table_rows(names: Sequence[str] = FIXTURE_NAMES, workers: int | None = None) -> list[dict]:
    if workers == 1:
        results = dict(map(_table_entry, names))
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = dict(ex.map(_table_entry, names))
    return [results[n] for n in names]


def render_table(reports: Sequence[dict]) -> str:
    """Deterministic markdown table; timings are deliberately left out."""
    lines = [TABLE_HEADER]
    for rep in reports:
        m = rep["matroid"]
        d2, d3 = rep["roots"]
        lines.append(f"| {m['name']} | {m['n']} | ({d2},{d3}) | {rep['phi']['rows']} x {rep['phi']['cols']} | "
                     f"{rep['reduced']['rows']} x {rep['reduced']['cols']} | {nfl_label(rep)} |")
    return "\n".join(lines) + "\n"


def compare_with_table(reports: Sequence[dict]) -> list[str]:
    """Differences from the reference table in the machine-checkable columns."""
    problems = []
    for rep in reports:
        name = rep["matroid"]["name"]
        ref = TABLE[name]
        if rep["matroid"]["n"] != ref["size"]:
            problems.append(f"{name}: size {rep['matroid']['n']} != {ref['size']}")
        if tuple(rep["roots"]) != ref["roots"]:
            problems.append(f"{name}: roots {rep['roots']} != {ref['roots']}")
        if (rep["phi"]["rows"], rep["phi"]["cols"]) != ref["phi"]:
            problems.append(f"{name}: phi {rep['phi']['rows']}x{rep['phi']['cols']} != {ref['phi']}")
        if nfl_label(rep) != ref["nfl"]:
            problems.append(f"{name}: NFL {nfl_label(rep)} != {ref['nfl']}")
    return problems


def apply_limits(cfg: AnalysisConfig):
    Limits.max_pairs = DEFAULT_MAX_PAIRS if cfg.max_pairs is None else cfg.max_pairs
    Limits.trace = cfg.trace


def run_analysis(cfg: AnalysisConfig) -> tuple[int, dict]:
    """Exit code and report for a configuration."""
    cfg.validate()
    apply_limits(cfg)
    name = cfg.source_name()
    try:
        M = cfg.load()
    except InvalidMatroid as exc:
        return EXIT_INVALID, {"schema_version": SCHEMA_VERSION, "matroid": {"name": name}, "error": str(exc)}
    try:
        return EXIT_OK, analyze(M, name, cfg.hyperplane, cfg.oracle)
    except AnalysisFailure as exc:
        rep = exc.report or {"schema_version": SCHEMA_VERSION}
        rep["error"] = str(exc)
        return exc.code, rep
    except ResourceError as exc:
        return EXIT_RESOURCE, {"schema_version": SCHEMA_VERSION, "matroid": {"name": name, "n": M.n, "r": M.r,
                                                                             "bases": len(M.bases)},
                               "error": str(exc), "diagnostics": exc.diagnostics}
