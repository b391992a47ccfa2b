import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.free_groups import free_group

from core.catkit.category import chain_category, indiscrete_category
from core.catkit.nerve import nerve
from core.classification.diagram import classification_map, constant_map
from core.invariants.fundamental_group import _eliminate_generators, pi1_presentation
from core.invariants.homology import boundary_matrix, homology, homology_mismatch
from core.invariants.verdicts import (
    cartesian_verdict,
    column_verdict,
    contractibility,
    row_verdict,
    weak_equivalence_verdict,
)
from core.marked.marked_set import flat, natural_marking, sharp
from core.presheaf.constructions import point, skeleton, to_point
from core.presheaf.maps import identity_map
from core.presheaf.shapes import boundary, horn, j_truncated, simplex
from core.utils.errors import ParameterError, UnsupportedInputError


@pytest.fixture
def groupoid_nerve():
    return nerve(indiscrete_category(["x", "y"], "I2"), 3)


class TestHomology:

    def test_spheres(self):
        sphere = homology(boundary(3))
        assert sphere.ranks == (1, 0, 1)
        assert not any(sphere.torsion)
        assert homology(boundary(1)).ranks == (2,)
        assert homology(boundary(2)).ranks == (1, 1)

    @given(st.integers(min_value=0, max_value=4))
    @settings(max_examples=5, deadline=None)
    def test_simplices_are_points(self, n):
        assert homology(simplex(n)).is_point()

    @pytest.mark.parametrize("x", [simplex(3), boundary(3), horn(3, 1)])
    def test_boundary_squares_to_zero(self, x):
        for k in range(1, 3):
            product = boundary_matrix(x, k) @ boundary_matrix(x, k + 1)
            assert not np.any(product)

    def test_normalized_and_unnormalized_chains_agree(self):
        x = boundary(2)
        assert homology(x, 1).ranks == homology(x, 1, normalized=False).ranks

    def test_truncation_limits_exact_degrees(self):
        profile = homology(j_truncated(3), 4)
        assert profile.exact_up_to == 2
        assert profile.exact_degrees() == [0, 1, 2]

    def test_mismatch_reports_first_degree(self):
        obstruction = homology_mismatch(homology(boundary(1)), homology(simplex(1)))
        assert obstruction["degree"] == 0
        assert obstruction["source"]["rank"] == 2
        assert obstruction["target"]["rank"] == 1
        assert homology_mismatch(homology(simplex(2)), homology(point())) is None


class TestFundamentalGroup:

    def test_circle_is_nontrivial(self):
        circle = pi1_presentation(boundary(2))
        assert circle.verdict == "nontrivial"
        assert len(circle.generators) == 1

    def test_groupoid_skeleton_is_simply_connected(self, groupoid_nerve):
        j_skeleton, _ = skeleton(j_truncated(3), 2)
        assert pi1_presentation(j_skeleton).verdict == "trivial"
        assert pi1_presentation(groupoid_nerve).verdict == "trivial"

    def test_invalid_inputs(self):
        with pytest.raises(ParameterError):
            pi1_presentation(boundary(0))
        with pytest.raises(ParameterError):
            pi1_presentation(boundary(2), basepoint="absent")

    def test_disconnected_input_is_refused(self):
        with pytest.raises(UnsupportedInputError):
            pi1_presentation(boundary(1))

    def test_presentation_of_groupoid_skeleton_empties(self):
        j_skeleton, _ = skeleton(j_truncated(3), 2)
        presentation = pi1_presentation(j_skeleton)
        assert presentation.raw_generators == 1
        assert presentation.raw_relators == 2
        assert presentation.generators == ()
        assert presentation.relators == ()
        assert pi1_presentation(simplex(2)).verdict == "trivial"

    def test_greedy_elimination(self):
        free, a, b = free_group("a,b")
        assert _eliminate_generators([a, b], [a * b, b]) == ([], [])
        assert _eliminate_generators([a], [a]) == ([], [])
        gens, rels = _eliminate_generators([a, b], [a ** 2, b * a])
        assert gens == [b]
        assert rels == [b ** -2]
        assert _eliminate_generators([a], [a ** 2]) == ([a], [a ** 2])


class TestVerdicts:

    def test_contractibility(self):
        verdict = contractibility(nerve(chain_category(2), 3))
        assert verdict.status == "holds"
        assert verdict.reason == "extremal_object"
        assert contractibility(boundary(1)).status == "fails"
        assert contractibility(boundary(1)).reason == "homology"
        assert contractibility(boundary(0)).reason == "empty"

    def test_contractibility_without_rule(self):
        assert contractibility(horn(2, 1)).status == "unknown"

    def test_weak_equivalences(self):
        assert weak_equivalence_verdict(identity_map(boundary(2))).reason == "isomorphism"
        pair = weak_equivalence_verdict(to_point(simplex(2)))
        assert (pair.status, pair.reason) == ("equivalent", "contractible_pair")
        mismatch = weak_equivalence_verdict(to_point(boundary(1)))
        assert mismatch.status == "not_equivalent"
        assert mismatch.certificate["degree"] == 0
        assert weak_equivalence_verdict(to_point(horn(2, 1))).status == "unknown"

    def test_cartesian_verdict_on_nerves(self, groupoid_nerve):
        groupoid = cartesian_verdict(constant_map(natural_marking(groupoid_nerve), flat(point())))
        assert (groupoid.status, groupoid.reason) == ("equivalent", "category_equivalence")
        arrow = cartesian_verdict(constant_map(flat(simplex(1)), flat(point())))
        assert arrow.status == "not_equivalent"

    def test_column_of_flat_interval_is_not_a_point(self):
        f = classification_map(constant_map(flat(simplex(1)), flat(point())), 3, 3)
        verdict = column_verdict(f, 1)
        assert verdict.status == "not_equivalent"
        assert verdict.certificate["source"]["rank"] == 3
        assert verdict.certificate["target"]["rank"] == 1
        assert verdict.bound == 3

    def test_columns_of_sharp_interval_are_contractible(self):
        f = classification_map(constant_map(sharp(simplex(1)), flat(point())), 3, 4)
        for n in range(3):
            assert column_verdict(f, n).status == "equivalent"

    def test_row_zero_recovers_the_map(self):
        f = classification_map(constant_map(flat(simplex(1)), flat(point())), 3, 3)
        verdict = row_verdict(f, 0)
        assert verdict.status == "not_equivalent"
        assert verdict.reason == "category_equivalence"
