"""Shared fixtures.

The large random dataset (k = 10^4 strings, n = 10^6 total characters over
ACGT) and its extended structure are expensive to build, so they are built
once per session and shared by every performance-flavoured test.  All other
fixtures are cheap throwaways.
"""

import pytest

from hog.datasets import StringSet, generate_random, normalize
from hog.ehog import EhogBuild, build_ehog

BIG_K = 10_000
BIG_N = 1_000_000
BIG_SEED = 42
BIG_ALPHABET = b"ACGT"

FIG1 = [b"aabaa", b"aadbd", b"dbdaa"]


@pytest.fixture(scope="session")
def big_dataset() -> StringSet:
    return generate_random(BIG_K, BIG_N, BIG_ALPHABET, BIG_SEED)


@pytest.fixture(scope="session")
def big_build(big_dataset) -> EhogBuild:
    return build_ehog(big_dataset)


@pytest.fixture()
def fig1() -> StringSet:
    return normalize(FIG1)
