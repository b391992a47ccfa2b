from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from core.presheaf.constructions import coproduct, point, product, pushout, skeleton
from core.presheaf.ez import PresheafBuilder, check_ez_uniqueness, check_simplicial_identities
from core.presheaf.maps import count_maps, find_isomorphism, identity_map, is_monomorphism
from core.presheaf.monotone import collapse, compose, factor, identity, monotone_maps, surjections
from core.presheaf.serialization import to_text
from core.presheaf.shapes import boundary, boundary_inclusion, horn, horn_inclusion, j_truncated, simplex
from core.utils.errors import ParameterError


@pytest.mark.parametrize("n", range(5))
def test_simplex_counts_are_binomial(n):
    assert simplex(n).nondegenerate_counts() == tuple(comb(n + 1, k + 1) for k in range(n + 1))


def test_boundary_and_horn_counts():
    assert boundary(3).nondegenerate_counts() == (4, 6, 4)
    assert horn(2, 1).nondegenerate_counts() == (3, 2)
    assert horn(3, 0).nondegenerate_counts() == (4, 6, 3)


def test_boundary_of_point_is_empty():
    assert boundary(0).generators == ()


def test_j_truncated_has_two_cells_per_degree():
    j = j_truncated(3)
    assert j.nondegenerate_counts() == (2, 2, 2, 2)
    assert j.truncated_at == 3


def test_invalid_shapes_raise():
    with pytest.raises(ParameterError):
        simplex(-1)
    with pytest.raises(ParameterError):
        horn(2, 5)
    with pytest.raises(ParameterError):
        horn(0, 0)


def test_square_and_prism_counts():
    assert product(simplex(1), simplex(1)).nondegenerate_counts() == (4, 5, 2)
    prism = product(simplex(2), simplex(1))
    assert prism.nondegenerate_counts()[0] == 6
    assert prism.nondegenerate_counts()[-1] == 3


def test_product_projections_are_maps():
    square = product(simplex(1), simplex(1))
    first, second = square.projections()
    first.validate()
    second.validate()


@pytest.mark.parametrize("shape", [simplex(3), boundary(3), horn(3, 1), product(simplex(1), simplex(1))])
def test_simplicial_identities_and_ez_uniqueness(shape):
    assert check_simplicial_identities(shape, (3,)) == []
    assert check_ez_uniqueness(shape, (3,)) == []


def test_successive_faces_of_a_shared_simplex():
    x = simplex(2)
    top = x.generator_cell(x.index_of((0, 1, 2)))
    faces = [x.d(top, i) for i in range(3)]
    assert faces == [x.generator_cell(x.index_of(label)) for label in [(1, 2), (0, 2), (0, 1)]]
    assert x.d(faces[0], 1) == x.generator_cell(x.index_of((1,)))
    assert [x.vertex_of(top, k) for k in range(3)] == [x.index_of((v,)) for v in range(3)]


def test_inconsistent_faces_are_reported():
    builder = PresheafBuilder(1)
    for v in "abc":
        builder.add(v, (0,), [[]])
    point_face = (identity(0),)
    for source, target in ["ab", "bc", "ac"]:
        builder.add(source + target, (1,), [[(point_face, target), (point_face, source)]])
    edge_face = (identity(1),)
    builder.add("abc", (2,), [[(edge_face, "ab"), (edge_face, "ac"), (edge_face, "ab")]])
    violations = check_ez_uniqueness(builder.build("tordu"), (2,))
    assert "face 0 axe 0 de 'abc'" in violations


@given(st.integers(0, 3), st.integers(0, 3))
@settings(max_examples=16, deadline=None)
def test_maps_between_simplices_are_monotone_maps(n, m):
    assert count_maps(simplex(n), simplex(m)) == comb(n + m + 1, n + 1)
    assert len(monotone_maps(n, m)) == comb(n + m + 1, n + 1)


@given(st.integers(0, 5), st.integers(0, 5))
def test_surjection_counts(m, k):
    assert len(surjections(m, k)) == (comb(m, k) if k <= m else 0)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=6).map(sorted))
def test_factor_recomposes(values):
    theta = tuple(values)
    rho, iota = factor(theta)
    assert compose(iota, rho) == theta


def test_collapse_groups_repetitions():
    assert collapse(("a", "a", "b", "b", "b", "a")) == ((0, 0, 1, 1, 1, 2), ("a", "b", "a"))


def test_skeleton_and_coproduct():
    sk, inclusion = skeleton(simplex(3), 1)
    assert sk.nondegenerate_counts() == (4, 6)
    assert is_monomorphism(inclusion)
    assert coproduct(point(), point()).object.nondegenerate_counts() == (2,)


def test_horn_inclusions_are_monomorphisms():
    assert is_monomorphism(horn_inclusion(2, 1))
    assert is_monomorphism(boundary_inclusion(2))


def test_pushout_of_two_intervals_along_endpoints():
    i = boundary_inclusion(1)
    glued = pushout(i, i).object
    assert glued.nondegenerate_counts() == (2, 2)


def test_find_isomorphism():
    assert find_isomorphism(simplex(2), simplex(2)) is not None
    assert find_isomorphism(horn(2, 0), horn(2, 1)) is None
    iso = find_isomorphism(boundary(2), boundary(2))
    assert iso is not None
    iso.validate()


def test_serialization_is_deterministic():
    assert to_text(simplex(2)) == to_text(simplex(2))
    assert to_text(simplex(2)) != to_text(boundary(2))
