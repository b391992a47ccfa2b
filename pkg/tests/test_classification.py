import pytest
from hypothesis import given, settings, strategies as st

from core.bisimplicial.operations import slice
from core.catkit.category import chain_category, indiscrete_category, relative_category
from core.classification.constant import categorically_constant_check
from core.classification.diagram import (
    classification_diagram,
    classification_map,
    constant_map,
    marked_classification,
)
from core.classification.reindex import i1_star, p1_star, reindex, t_lower
from core.classification.relative import cross_check, relative_classification
from core.marked.marked_set import MarkedSimplicialSet, flat, sharp
from core.presheaf.constructions import point, sub_presheaf
from core.presheaf.ez import check_simplicial_identities
from core.presheaf.maps import find_isomorphism
from core.presheaf.shapes import simplex
from core.services.acceptance import monotone_grid_maps
from core.utils.errors import BoundsError, ParameterError


@st.composite
def marked_sets(draw):
    """Sous-ensembles simpliciaux de Δ² marqués au hasard."""
    ambient = simplex(2)
    keep = draw(st.lists(st.integers(0, len(ambient.generators) - 1), min_size=1, max_size=4, unique=True))
    sub, _ = sub_presheaf(ambient, keep, "X")
    edges = sub.nondegenerate((1,))
    marked = draw(st.lists(st.sampled_from(edges), unique=True)) if edges else []
    return MarkedSimplicialSet(sub, frozenset(marked), "X")


def _same(first, second):
    return find_isomorphism(first.underlying, second.underlying,
                            source_marked=first.marked, target_marked=second.marked) is not None


def test_sharp_interval_counts_are_monotone_grid_maps(sharp_interval):
    x = classification_diagram(sharp_interval, 2, 2)
    assert x.count((1, 1)) == 6
    for n in range(3):
        for m in range(3):
            assert x.count((n, m)) == monotone_grid_maps(n, m)


def test_flat_interval_counts_collapse(flat_interval):
    x = classification_diagram(flat_interval, 3, 2)
    for n in range(4):
        for m in range(3):
            assert x.count((n, m)) == n + 2


def test_classification_diagram_satisfies_identities(sharp_interval):
    x = classification_diagram(sharp_interval, 3, 3)
    assert check_simplicial_identities(x, (2, 2)) == []


def test_out_of_bounds_requests_raise(sharp_interval):
    x = classification_diagram(sharp_interval, 2, 2)
    with pytest.raises(BoundsError):
        x.cells((3, 0))
    with pytest.raises(BoundsError):
        slice(x, "column", 3)


def test_marked_refinement(sharp_interval, flat_interval):
    assert len(marked_classification(sharp_interval, 1, 1).marked_cells(0)) == 3
    assert len(marked_classification(flat_interval, 1, 1).marked_cells(0)) == 2


def test_classification_map_postcomposes(flat_interval):
    f = classification_map(constant_map(flat_interval, flat(point())), 1, 1)
    for cell in f.source.cells((1, 1)):
        assert f.apply(cell) in f.target.cells((1, 1))
    assert f.target.count((1, 1)) == 1


def test_rows_constant_object_is_categorically_constant(sharp_interval):
    rows = categorically_constant_check(p1_star(sharp_interval), 2, 2)
    assert [row["status"] for row in rows] == ["holds"] * 3


@given(marked_sets())
@settings(max_examples=25, deadline=None)
def test_reindexing_recovers_the_marked_set(x):
    boxed = p1_star(x)
    assert _same(i1_star(boxed, 2), x)
    assert _same(t_lower(boxed, 2), x)


def test_reindex_dispatch(sharp_interval):
    boxed = reindex("p1_star", sharp_interval)
    assert _same(reindex("i1_star", boxed, 2), sharp_interval)
    with pytest.raises(ParameterError):
        reindex("i1_star", sharp_interval)
    with pytest.raises(ParameterError):
        reindex("lower_shriek", boxed)


def test_relative_classification_counts():
    arrow = chain_category(1)
    discrete = relative_classification(relative_category(arrow), 2, 2)
    full = relative_classification(relative_category(arrow, mode="all"), 2, 2)
    for n in range(3):
        for m in range(3):
            assert discrete.count((n, m)) == n + 2
            assert full.count((n, m)) == monotone_grid_maps(n, m)


@pytest.mark.parametrize("relative", [
    relative_category(chain_category(1)),
    relative_category(chain_category(2), mode="all"),
    relative_category(indiscrete_category(["x", "y"]), mode="isos"),
])
def test_cross_check_against_marked_nerve(relative):
    report = cross_check(relative, 1, 1)
    assert report["agrees"]
    assert len(report["bidegrees"]) == 4
