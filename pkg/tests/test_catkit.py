import pytest

from core.catkit.category import (
    build_category,
    chain_category,
    core,
    free_category,
    functor_category,
    functor_to_terminal,
    indiscrete_category,
    is_equivalence,
    is_groupoid,
    isomorphic_categories,
    poset_category,
    relative_category,
    terminal_category,
)
from core.catkit.nerve import detect_nerve, nerve
from core.presheaf.maps import find_isomorphism
from core.presheaf.shapes import boundary, horn, j_truncated, simplex
from core.utils.errors import UnsupportedInputError, ValidationError


@pytest.fixture
def groupoid():
    return indiscrete_category(["x", "y"], "I2")


def test_chain_category_arrows():
    c = chain_category(2)
    assert len(c.objects) == 3
    assert len(c.arrows) == 6
    assert c.count_chains(2) == 10


def test_nerve_of_chain_is_simplex():
    n = nerve(chain_category(2), 3)
    assert n.nondegenerate_counts() == (3, 3, 1)
    assert n.truncated_at is None
    assert find_isomorphism(n, simplex(2)) is not None


def test_nerve_of_indiscrete_groupoid_is_truncated_j(groupoid):
    n = nerve(groupoid, 3)
    assert n.truncated_at == 3
    assert n.nondegenerate_counts() == (2, 2, 2, 2)
    assert find_isomorphism(n, j_truncated(3)) is not None


def test_detect_nerve(groupoid):
    detection = detect_nerve(nerve(chain_category(2), 3))
    assert detection.success
    assert len(detection.category.objects) == 3
    assert detect_nerve(nerve(groupoid, 3)).success


def test_detect_nerve_reports_missing_filler():
    detection = detect_nerve(horn(2, 1))
    assert not detection.success
    assert detection.witness["kind"] == "missing_filler"
    assert not detect_nerve(boundary(2)).success


def test_groupoid_predicates(groupoid):
    assert is_groupoid(groupoid)
    assert not is_groupoid(chain_category(1))
    assert len(core(chain_category(2)).arrows) == 3
    assert len(core(groupoid).arrows) == 4


def test_functor_category_of_arrow():
    fun = functor_category(1, chain_category(1))
    assert len(fun.objects) == 3
    assert len(fun.arrows) == 6
    assert len(functor_category(0, chain_category(1)).objects) == 2


def test_functor_category_of_groupoid_is_groupoid(groupoid):
    assert is_groupoid(functor_category(2, groupoid))


def test_equivalences(groupoid):
    assert is_equivalence(functor_to_terminal(groupoid))
    assert not is_equivalence(functor_to_terminal(chain_category(1)))
    assert is_equivalence(functor_to_terminal(terminal_category()))


def test_isomorphic_categories():
    square = poset_category(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    product = functor_category(0, square)
    assert isomorphic_categories(square, product) is not None
    assert isomorphic_categories(chain_category(2), square) is None


def test_poset_cycle_is_rejected():
    with pytest.raises(ValidationError):
        poset_category(["a", "b"], [("a", "b"), ("b", "a")])


def test_free_category_on_cycle_is_rejected():
    with pytest.raises(UnsupportedInputError):
        free_category(["a", "b"], [("f", "a", "b"), ("g", "b", "a")])


def test_free_category_paths():
    c = free_category(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")])
    assert len(c.arrows) == 3 + 3
    assert c.arrow_index("g∘f") >= 0


def test_build_category_table():
    c = build_category({
        "kind": "table", "name": "Iso",
        "objects": ["a", "b"],
        "arrows": [("f", "a", "b"), ("g", "b", "a")],
        "composites": {("g", "f"): "id_a", ("f", "g"): "id_b"},
    })
    assert is_groupoid(c)


def test_relative_category_modes(groupoid):
    assert relative_category(groupoid, mode="isos").weak == frozenset(range(4))
    c = chain_category(1)
    assert relative_category(c).weak == frozenset(c.identities)
    assert len(relative_category(c, mode="all").weak) == 3


def test_relative_category_must_be_closed():
    c = chain_category(2)
    with pytest.raises(ValidationError):
        relative_category(c, [(0, 1), (1, 2)])
