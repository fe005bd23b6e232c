from pathlib import Path

import pytest

from ks8.exact_linalg import Context, parse_vectors
from ks8.pipeline import construct

GOLDEN = Path(__file__).parent / "golden"


def golden_octads(name: str) -> list[Context]:
    vs = parse_vectors((GOLDEN / name).read_text())
    assert len(vs) % 8 == 0
    return [Context.of_vectors(v.ray() for v in vs[k : k + 8]) for k in range(0, len(vs), 8)]


def as_sets(contexts) -> set[frozenset]:
    return {frozenset(v.ray() for v in c.vectors) for c in contexts}


@pytest.fixture(scope="session")
def c3():
    return construct(3)


@pytest.fixture(scope="session")
def catalog(c3):
    return c3.catalog
