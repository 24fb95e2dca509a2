"""Cached pipeline objects shared across test modules."""

from functools import lru_cache

from nflocus.fixtures import load_fixture
from nflocus.freeness import default_hyperplane, nonfree_locus
from nflocus.representation import build_slice
from nflocus.workbench import basis_through


@lru_cache(maxsize=None)
def fixture(name):
    return load_fixture(name)


@lru_cache(maxsize=None)
def default_slice(name):
    M = fixture(name)
    return build_slice(M, basis_through(M, default_hyperplane(M)))


@lru_cache(maxsize=None)
def analysis(name, H=None):
    M = fixture(name)
    s = default_slice(name)
    return nonfree_locus(M, H or default_hyperplane(M), s)
