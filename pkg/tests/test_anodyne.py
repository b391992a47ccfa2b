import pytest

from core.anodyne.generators import (
    GeneratorSpec,
    MarkedInclusion,
    make_generator,
    marked_inclusion,
    pushout_product,
)
from core.anodyne.lifting import TerminalMap, has_rlp, lifting_report, to_terminal
from core.bisimplicial.operations import box_product
from core.catkit.category import chain_category, indiscrete_category
from core.catkit.nerve import nerve
from core.classification.diagram import marked_classification
from core.marked.marked_set import flat, natural_marking, sharp
from core.presheaf.constructions import to_point
from core.presheaf.maps import identity_map
from core.presheaf.shapes import boundary, boundary_inclusion, horn_inclusion, simplex
from core.utils.errors import ParameterError, ValidationError


@pytest.fixture
def groupoid_nerve():
    return nerve(indiscrete_category(["x", "y"], "I2"), 3)


@pytest.fixture
def arrow_nerve():
    return nerve(chain_category(1), 3)


@pytest.mark.parametrize("spec", [
    GeneratorSpec("mbe_A", 0, 0, 0),
    GeneratorSpec("mbe_A", 1, 2, 3),
    GeneratorSpec("mbe_B", 2, 0, 0),
    GeneratorSpec("mbe_D", 0, 0, 0, 0),
    GeneratorSpec("cof_sset_plus", 2, 0, 1),
    GeneratorSpec("mbe_Z"),
])
def test_out_of_range_specs_are_rejected(spec):
    with pytest.raises(ParameterError):
        make_generator(spec)


def test_j_truncation_defaults_to_settings():
    from config.settings import Settings
    assert GeneratorSpec("mbe_D").truncation == Settings.J_TRUNCATION
    assert GeneratorSpec("mbe_D", d=2).truncation == 2
    assert GeneratorSpec("mbe_A", 0, 1, 0).truncation is None


def test_mbe_a_generator_shape():
    generator = make_generator(GeneratorSpec("mbe_A", 0, 1, 0))
    assert len(generator.source.generators) == 1
    assert len(generator.target.generators) == 3
    transposed = generator.transpose()
    assert transposed.target.underlying.nondegenerate_counts() == (2, 1)
    assert transposed.target.nondegenerate_marked() == 1


def test_marking_generator():
    generator = make_generator(GeneratorSpec("cof_sset_plus", 1, 0, 1))
    assert isinstance(generator, MarkedInclusion)
    assert generator.source.nondegenerate_marked() == 0
    assert generator.target.nondegenerate_marked() == 1


def test_inclusion_must_preserve_marking():
    with pytest.raises(ValidationError):
        MarkedInclusion(sharp(simplex(1)), flat(simplex(1)), identity_map(simplex(1)))
    with pytest.raises(ValidationError):
        marked_inclusion(to_point(simplex(1)))


def test_pushout_product_of_boundaries_is_square_boundary():
    square = pushout_product(boundary_inclusion(1), boundary_inclusion(1))
    assert square.source.nondegenerate_counts() == (4, 4)
    assert square.target.nondegenerate_counts() == (4, 5, 2)


def test_inner_horn_lifts_uniquely_in_a_nerve(arrow_nerve):
    verdict = has_rlp(to_point(arrow_nerve), horn_inclusion(2, 1))
    assert verdict.status == "holds"
    assert verdict.squares == 4
    assert verdict.lifts == 4
    assert verdict.unique


def test_outer_horn_fails_in_a_poset_but_not_in_a_groupoid(arrow_nerve, groupoid_nerve):
    failing = has_rlp(to_point(arrow_nerve), horn_inclusion(2, 0))
    assert failing.status == "fails"
    assert failing.witness is not None
    assert has_rlp(to_point(groupoid_nerve), horn_inclusion(2, 0)).status == "holds"


def test_boundary_of_triangle_is_not_a_kan_complex():
    assert has_rlp(to_point(boundary(2)), horn_inclusion(2, 1)).status == "fails"


def test_marking_lifts(groupoid_nerve):
    marking = make_generator(GeneratorSpec("cof_sset_plus", 1, 0, 1))
    assert has_rlp(to_terminal(natural_marking(groupoid_nerve)), marking).status == "holds"
    assert has_rlp(to_terminal(flat(groupoid_nerve)), marking).status == "fails"


def test_transposed_lift_against_classification_diagram(groupoid_nerve):
    target = TerminalMap(marked_classification(natural_marking(groupoid_nerve), 2, 2))
    verdict = has_rlp(target, make_generator(GeneratorSpec("mbe_A", 0, 1, 0)))
    assert verdict.status == "holds"
    assert verdict.note.startswith("transposé")


@pytest.mark.parametrize("m", [0, 1])
def test_vertex_of_j_generator_lifts_against_groupoid(m):
    generator = make_generator(GeneratorSpec("mbe_C", 0, m, 0, 3))
    if m == 0:
        assert len(generator.source.generators) == 1
        assert len(generator.target.generators) == 8
    groupoid = nerve(indiscrete_category(["x", "y"], "I2"), 4)
    target = TerminalMap(marked_classification(natural_marking(groupoid), 3, 3))
    assert has_rlp(target, generator).status == "holds"


def test_direct_lift_against_box_product(sharp_interval, interval):
    target = TerminalMap(box_product(sharp_interval, interval))
    verdict = has_rlp(target, make_generator(GeneratorSpec("mbe_A", 0, 1, 0)), transpose=False)
    assert verdict.status == "holds"
    assert verdict.squares == 4
    assert not verdict.unique


def test_unsupported_combinations(sharp_interval, interval):
    with pytest.raises(ParameterError):
        has_rlp(TerminalMap(box_product(sharp_interval, interval)), horn_inclusion(2, 1))
    with pytest.raises(ParameterError):
        has_rlp(to_point(simplex(1)), to_point(simplex(1)))


def test_lifting_report(arrow_nerve):
    report = lifting_report(to_point(arrow_nerve), {
        "inner": horn_inclusion(2, 1),
        "outer": horn_inclusion(2, 0),
    })
    assert [(row["generator"], row["status"]) for row in report] == [("inner", "holds"), ("outer", "fails")]
