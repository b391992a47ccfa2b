import pytest

from core.bisimplicial.operations import (
    bidegree_table,
    bidegree_skeleton,
    box_product,
    diagonal,
    full_subset,
    marked_row,
    slice,
    unmark,
)
from core.presheaf.constructions import product
from core.presheaf.ez import check_ez_uniqueness, check_simplicial_identities
from core.presheaf.maps import find_isomorphism
from core.presheaf.shapes import simplex
from core.utils.errors import ParameterError


@pytest.fixture
def square_box(interval):
    return box_product(interval, interval)


def test_box_product_counts(square_box):
    table = bidegree_table(square_box, 2, 2)
    assert [(row["n"], row["m"]) for row in table][:3] == [(0, 0), (0, 1), (0, 2)]
    for row in table:
        assert row["count"] == (row["n"] + 2) * (row["m"] + 2)


def test_box_product_is_a_bisimplicial_set(square_box):
    assert check_simplicial_identities(square_box, (2, 2)) == []
    assert check_ez_uniqueness(square_box.presentation, (2, 2)) == []


def test_box_product_marking(sharp_interval, flat_interval, interval):
    sharp_row = bidegree_table(box_product(sharp_interval, interval), 1, 0, operators=True)[-1]
    flat_row = bidegree_table(box_product(flat_interval, interval), 1, 0, operators=True)[-1]
    assert (sharp_row["n"], sharp_row["m"]) == (1, 0)
    assert len(sharp_row["marked"]) == 6
    assert len(flat_row["marked"]) == 4
    assert box_product(interval, interval).is_flat
    assert not box_product(sharp_interval, interval).is_flat


def test_operator_tables_index_lower_cells(square_box):
    row = bidegree_table(square_box, 1, 1, operators=True)[-1]
    assert len(row["faces_h"]) == row["count"]
    assert all(len(faces) == 2 for faces in row["faces_v"])


def test_slices_of_box_product(square_box):
    column = slice(square_box, "column", 1, 2)
    row = slice(square_box, "row", 0, 2)
    assert column.nondegenerate_counts() == (6, 3)
    assert row.nondegenerate_counts() == (4, 2)


def test_unknown_axis_is_rejected(square_box):
    with pytest.raises(ParameterError):
        slice(square_box, "diagonal", 0, 2)


def test_diagonal_of_box_is_product(square_box):
    diag = diagonal(square_box, 2)
    assert find_isomorphism(diag, product(simplex(1), simplex(1))) is not None


def test_marked_row_keeps_marking(sharp_interval, interval):
    row = marked_row(box_product(sharp_interval, interval), 0, 1)
    assert row.nondegenerate_marked() == 2


def test_unmark(sharp_interval, interval):
    assert unmark(box_product(sharp_interval, interval)).is_flat


def test_full_subset_and_skeleton(square_box):
    vertices = square_box.cells((0, 0))[:1]
    subset = full_subset(square_box, vertices)
    assert subset.count((1, 1)) == 1
    skeleton = bidegree_skeleton(square_box, 1)
    assert skeleton.count((1, 1)) < square_box.count((1, 1))
    with pytest.raises(ParameterError):
        full_subset(square_box, [("nope",)])
