import pytest
from hypothesis import given, settings, strategies as st

from core.catkit.category import chain_category, indiscrete_category
from core.catkit.nerve import nerve
from core.marked.marked_set import (
    MarkedSimplicialSet,
    enumerate_marked_maps,
    flat,
    natural_marking,
    remark,
    sharp,
    two_out_of_three_violations,
    with_marking,
)
from core.marked.operations import marked_mapping_space, marked_product
from core.presheaf.shapes import boundary, simplex
from core.utils.errors import ParameterError, UnsupportedInputError, ValidationError


def test_flat_and_sharp(interval):
    assert flat(interval).nondegenerate_marked() == 0
    assert sharp(interval).nondegenerate_marked() == 1
    assert len(flat(interval).marked_edges()) == 2
    assert len(sharp(interval).marked_edges()) == 3


def test_only_edges_can_be_marked():
    triangle = simplex(2)
    with pytest.raises(ValidationError):
        MarkedSimplicialSet(triangle, frozenset([triangle.index_of((0, 1, 2))]))


def test_marked_maps_respect_marking(sharp_interval, flat_interval):
    assert len(enumerate_marked_maps(sharp_interval, flat_interval)) == 2
    assert len(enumerate_marked_maps(flat_interval, sharp_interval)) == 3
    assert len(enumerate_marked_maps(sharp_interval, sharp_interval)) == 3


def test_remark_modes(sharp_interval):
    assert remark(sharp_interval, "flat").marked == frozenset()
    assert remark(sharp_interval, "unmark") is sharp_interval.underlying
    with pytest.raises(ParameterError):
        remark(sharp_interval, "dotted")


def test_natural_marking_marks_isomorphisms():
    groupoid = nerve(indiscrete_category(["x", "y"]), 3)
    assert natural_marking(groupoid).nondegenerate_marked() == 2
    assert natural_marking(nerve(chain_category(1), 3)).nondegenerate_marked() == 0


def test_natural_marking_refuses_non_nerves():
    with pytest.raises(UnsupportedInputError):
        natural_marking(boundary(2))


def test_two_out_of_three():
    triangle = simplex(2)
    assert two_out_of_three_violations(sharp(triangle)) == []
    assert two_out_of_three_violations(flat(triangle)) == []
    partial = with_marking(triangle, [(0, 1), (1, 2)])
    assert len(two_out_of_three_violations(partial)) == 1


def test_marked_product_marks_pairs_of_marked_edges(sharp_interval, flat_interval):
    assert marked_product(sharp_interval, sharp_interval).nondegenerate_marked() == 5
    assert marked_product(sharp_interval, flat_interval).nondegenerate_marked() == 2
    assert marked_product(flat_interval, flat_interval).nondegenerate_marked() == 0


@given(st.sampled_from(["flat", "sharp"]), st.sampled_from(["flat", "sharp"]))
@settings(max_examples=4, deadline=None)
def test_mapping_space_vertices_are_marked_maps(source_mode, target_mode):
    x = remark(simplex(1), source_mode)
    y = remark(simplex(1), target_mode)
    space = marked_mapping_space(x, y, 1)
    assert len(space.vertices()) == len(enumerate_marked_maps(x, y))
