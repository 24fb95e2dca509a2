"""The nine exceptional rank-3 matroids as committed bases lists."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .matroid import Matroid
from .poly import VariableContext
from .printed import PRINTED, TABLE
from .representation import ParametrizedMatrix, Slice, matroid_of_parametrized_matrix, saturated_slice

FIXTURE_NAMES = ("M9", "M11", "M12_1", "M12_2", "M13_1", "M13_2", "M13_3", "M13_4", "M13_5")
DATA_FILE = "fixtures.json"


class UnknownFixture(KeyError):
    pass


def printed_slice(name: str) -> Slice:
    """Slice and matrix as printed, with the matroid left unset."""
    d = PRINTED[name]
    ctx = VariableContext(d["params"])
    P = ParametrizedMatrix.from_strings(ctx, d["rows"])
    eqs = [ctx.parse(e) for e in d["equations"]]
    removed = [ctx.parse(e) for e in d["removed"]]
    return saturated_slice(ctx, eqs, removed, P)


def derive_fixture(name: str) -> Matroid:
    """Re-derive a fixture from its printed matrix."""
    s = printed_slice(name)
    return matroid_of_parametrized_matrix(s.P, s)


@lru_cache(maxsize=None)
def _catalog() -> dict:
    text = resources.files("nflocus").joinpath("data", DATA_FILE).read_text()
    return json.loads(text)


def load_fixture(name: str) -> Matroid:
    data = _catalog()
    if name not in data:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return Matroid.from_json(data[name])


def table_row(name: str) -> dict:
    return TABLE[name]


def write_catalog(path) -> None:
    """Regenerate the committed catalog from the printed matrices."""
    out = {name: derive_fixture(name).to_json() for name in FIXTURE_NAMES}
    lines = [f"{json.dumps(k)}: {json.dumps(v, separators=(',', ':'))}" for k, v in out.items()]
    with open(path, "w") as fh:
        fh.write("{\n" + ",\n".join(lines) + "\n}\n")
