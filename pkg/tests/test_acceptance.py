import numpy as np
import pytest

from core.presheaf.serialization import to_text
from core.services.acceptance import (
    FIXTURES,
    monotone_grid_maps,
    monotone_maps,
    random_marked_set,
    run_fixtures,
)


def test_oracles():
    assert [monotone_maps(n) for n in range(4)] == [2, 3, 4, 5]
    assert monotone_grid_maps(1, 1) == 6
    assert monotone_grid_maps(0, 0, 2) == 3


def test_random_corpus_is_seeded():
    first = [random_marked_set(np.random.default_rng(7), i) for i in range(5)]
    second = [random_marked_set(np.random.default_rng(7), i) for i in range(5)]
    assert [to_text(x.underlying, x.marked) for x in first] == [to_text(x.underlying, x.marked) for x in second]
    assert all(len(x.underlying.generators) <= 6 for x in first)


def test_random_corpus_reaches_triangles():
    rng = np.random.default_rng(0)
    corpus = [random_marked_set(rng, i) for i in range(50)]
    assert any(x.underlying.nondegenerate((2,)) for x in corpus)
    assert all(len(x.underlying.generators) <= 6 for x in corpus)


@pytest.mark.parametrize("fixture_id", sorted(FIXTURES))
def test_fixture_passes(fixture_id):
    report = FIXTURES[fixture_id](0)
    failing = [c for c in report["checks"] if not c["ok"]]
    assert report["id"] == fixture_id
    assert report["ok"], failing[:3]


def test_run_fixtures_orders_and_deduplicates():
    reports = run_fixtures(0, [9, 8, 9])
    assert [r["id"] for r in reports] == [8, 9]
