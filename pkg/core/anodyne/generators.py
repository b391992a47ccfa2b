"""
Familles génératrices: extensions bianodynes marquées (A)-(E) et
cofibrations génératrices, construites comme produits-poussés en boîte.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional

from config.settings import Settings
from core.bisimplicial.bisimplicial_set import FiniteBisimplicialSet
from core.bisimplicial.operations import BoxProduct
from core.marked.marked_set import MarkedSimplicialSet, flat, preserves_marking, sharp
from core.marked.operations import marked_product
from core.presheaf.constructions import (
    ProductSimplicialSet,
    empty_like,
    product,
    product_map,
    pushout,
    sub_presheaf,
)
from core.presheaf.ez import SimplicialSet
from core.presheaf.maps import PresheafMap, identity_map, image_generators, is_monomorphism
from core.presheaf.monotone import identity
from core.presheaf.shapes import (
    boundary_inclusion,
    edge_inclusion,
    horn_inclusion,
    j_truncated,
    simplex,
    vertex_inclusion,
)
from core.utils.errors import ParameterError, ValidationError

logger = logging.getLogger(__name__)

FAMILIES = ("mbe_A", "mbe_B", "mbe_C", "mbe_D", "mbe_E", "cof_flat", "cof_mark", "cof_sset_plus")
J_FAMILIES = ("mbe_C", "mbe_D", "mbe_E")


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Attributes:
        family: Nom de la famille
        n, m, k: Paramètres entiers (selon la famille)
        d: Troncature de J pour les familles C, D, E
    """
    family: str
    n: int = 0
    m: int = 0
    k: int = 0
    d: Optional[int] = None

    @property
    def truncation(self) -> Optional[int]:
        if self.family not in J_FAMILIES:
            return None
        return Settings.J_TRUNCATION if self.d is None else self.d

    def validate(self) -> None:
        n, m, k = self.n, self.m, self.k
        checks = {
            "mbe_A": (n >= 0 and m >= 1 and 0 <= k <= m, "n >= 0, m >= 1, 0 <= k <= m"),
            "mbe_B": (0 < k < n and m >= 0, "0 < k < n, m >= 0"),
            "mbe_C": (m >= 0, "m >= 0"),
            "mbe_D": (m >= 0, "m >= 0"),
            "mbe_E": (m >= 0, "m >= 0"),
            "cof_flat": (n >= 0 and m >= 0, "n >= 0, m >= 0"),
            "cof_mark": (n >= 0, "n >= 0"),
            "cof_sset_plus": (n >= 0 and k in (0, 1) and (k == 0 or n == 1), "n >= 0, k = 0 (bord) ou n = k = 1 (marquage)"),
        }
        if self.family not in checks:
            raise ParameterError(f"Famille génératrice inconnue: {self.family!r}")
        ok, rule = checks[self.family]
        if not ok:
            raise ParameterError(f"{self.family}: paramètres hors plage ({rule}), reçu n={n}, m={m}, k={k}")
        if self.truncation is not None and self.truncation < 1:
            raise ParameterError(f"{self.family}: troncature de J >= 1 requise")

    def to_dict(self):
        return {"family": self.family, "n": self.n, "m": self.m, "k": self.k, "d": self.truncation}


@dataclass(frozen=True, eq=False)
class MarkedInclusion:
    """Inclusion d'ensembles simpliciaux marqués ``Ā ⊂ B̄``."""
    source: MarkedSimplicialSet
    target: MarkedSimplicialSet
    map: PresheafMap

    def __post_init__(self):
        if not is_monomorphism(self.map):
            raise ValidationError("Une inclusion doit être un monomorphisme")
        if not preserves_marking(self.map, self.source, self.target):
            raise ValidationError("L'inclusion ne préserve pas le marquage")

    def source_marks(self, cell) -> bool:
        """Marquage de la source lu dans la cible (arête de B̄)."""
        (surj,), g = cell
        if surj == (0, 0):
            return True
        preimage = {c[1]: h for h, c in enumerate(self.map.images)}
        return g in preimage and preimage[g] in self.source.marked


def marked_inclusion(i: PresheafMap, source_marking: str = "flat", target_marking: str = "flat") -> MarkedInclusion:
    build = {"flat": flat, "sharp": sharp}
    return MarkedInclusion(build[source_marking](i.source), build[target_marking](i.target), i)


@dataclass(frozen=True, eq=False)
class BoxInclusion:
    """
    Produit-poussé en boîte ``i ⊠ j``: ``(Ā⊠Y) ∪ (B̄⊠X) ⊂ B̄⊠Y``.

    Attributes:
        horizontal: Inclusion marquée ``i: Ā ⊂ B̄``
        vertical: Inclusion simpliciale ``j: X ⊂ Y``
        source: Sous-objet marqué
        target: Produit en boîte marqué
        map: Inclusion des présentations
    """
    horizontal: MarkedInclusion
    vertical: PresheafMap
    source: FiniteBisimplicialSet
    target: BoxProduct
    map: PresheafMap
    spec: Optional[GeneratorSpec] = None

    @property
    def truncation(self) -> Optional[int]:
        return self.spec.truncation if self.spec else None

    def transpose(self) -> MarkedInclusion:
        """
        Inclusion adjointe ``(Ā×Y♯) ∪ (B̄×X♯) ⊂ B̄×Y♯`` d'ensembles
        simpliciaux marqués.
        """
        i, j = self.horizontal, self.vertical
        whole: MarkedSimplicialSet = marked_product(i.target, sharp(j.target))
        prod: ProductSimplicialSet = whole.underlying
        in_a, in_x = image_generators(i.map), image_generators(j)
        keep = [g for g, (_, a, _, b) in enumerate(prod.components) if a in in_a or b in in_x]
        sub, inclusion = sub_presheaf(prod, keep, f"({i.source.name}×{j.target.name})∪({i.target.name}×{j.source.name})")
        marked = frozenset(
            h for h in sub.nondegenerate((1,))
            if self._union_marks(prod, inclusion.images[h][1], in_a, in_x)
        )
        return MarkedInclusion(MarkedSimplicialSet(sub, marked), whole, inclusion)

    def _union_marks(self, prod: ProductSimplicialSet, g: int, in_a: FrozenSet[int], in_x: FrozenSet[int]) -> bool:
        sigma, a, _, b = prod.components[g]
        first = ((sigma,), a)
        from_a = a in in_a and self.horizontal.source_marks(first)
        from_x = b in in_x and self.horizontal.target.is_marked(first)
        return from_a or from_x


def box_pushout_product(i: MarkedInclusion, j: PresheafMap, spec: Optional[GeneratorSpec] = None) -> BoxInclusion:
    """
    Construit ``i ⊠ j`` à l'intérieur de ``B̄ ⊠ Y``.

    Args:
        i: Inclusion marquée horizontale
        j: Inclusion simpliciale verticale
        spec: Paramètres de la famille, le cas échéant

    Returns:
        BoxInclusion
    """
    if not is_monomorphism(j):
        raise ValidationError("La composante verticale doit être une inclusion")
    target = BoxProduct(i.target, j.target)
    in_a, in_x = image_generators(i.map), image_generators(j)
    keep = [g for g in range(len(target.generators)) if target.split(g)[0] in in_a or target.split(g)[1] in in_x]
    sub, inclusion = sub_presheaf(target.presentation, keep, f"{i.source.name}⊠{j.target.name}∪{i.target.name}⊠{j.source.name}")
    marked = set()
    for h, gen in enumerate(sub.generators):
        if gen.degree[0] != 1:
            continue
        a, b = target.split(inclusion.images[h][1])
        edge = ((identity(1),), a)
        if (a in in_a and i.source_marks(edge)) or (b in in_x and a in i.target.marked):
            marked.add(h)
    source = FiniteBisimplicialSet(sub, frozenset(marked), sub.name)
    return BoxInclusion(i, j, source, target, inclusion, spec)


def make_generator(spec: GeneratorSpec):
    """
    Inclusion génératrice d'une famille.

    Returns:
        BoxInclusion (familles bisimpliciales) ou MarkedInclusion (``cof_sset_plus``)

    Raises:
        ParameterError: Paramètres hors plage
    """
    spec.validate()
    n, m, k, family = spec.n, spec.m, spec.k, spec.family
    if family == "cof_sset_plus":
        if k == 1:
            return MarkedInclusion(flat(simplex(1)), sharp(simplex(1)), identity_map(simplex(1)))
        return marked_inclusion(boundary_inclusion(n))
    if family in J_FAMILIES:
        jset: SimplicialSet = j_truncated(spec.truncation)
        if family == "mbe_C":
            i = marked_inclusion(vertex_inclusion(jset, (1,)))
            vertical = boundary_inclusion(m)
        elif family == "mbe_D":
            i = MarkedInclusion(flat(jset), sharp(jset), identity_map(jset))
            vertical = empty_like(simplex(m))[1]
        else:
            i = marked_inclusion(edge_inclusion(jset, (0, 1)), "sharp", "sharp")
            vertical = empty_like(simplex(m))[1]
    elif family == "mbe_A":
        i, vertical = marked_inclusion(boundary_inclusion(n)), horn_inclusion(m, k)
    elif family == "mbe_B":
        i, vertical = marked_inclusion(horn_inclusion(n, k)), boundary_inclusion(m)
    elif family == "cof_flat":
        i, vertical = marked_inclusion(boundary_inclusion(n)), boundary_inclusion(m)
    else:
        i = MarkedInclusion(flat(simplex(1)), sharp(simplex(1)), identity_map(simplex(1)))
        vertical = empty_like(simplex(n))[1]
    result = box_pushout_product(i, vertical, spec)
    logger.debug(f"Générateur {family} {spec.to_dict()}: {len(result.source.generators)} ⊂ "
                 f"{len(result.target.generators)} générateurs")
    return result


@dataclass(frozen=True, eq=False)
class PushoutProduct:
    """``(A×Y) ∪_{A×X} (B×X) -> B×Y`` avec le recollement intermédiaire."""
    source: SimplicialSet
    target: ProductSimplicialSet
    map: PresheafMap


def pushout_product(i: PresheafMap, j: PresheafMap) -> PushoutProduct:
    """
    Produit-poussé ``i ∧ j`` de deux morphismes simpliciaux.

    Args:
        i: ``A -> B``
        j: ``X -> Y``

    Returns:
        PushoutProduct dont ``map`` est le morphisme induit
    """
    a, b, x, y = i.source, i.target, j.source, j.target
    ax = product(a, x)
    ay, bx, by = product(a, y), product(b, x), product(b, y)
    left = product_map(identity_map(a), j, ax, ay)
    right = product_map(i, identity_map(x), ax, bx)
    glued = pushout(left, right, f"({a.name}×{y.name})∪({b.name}×{x.name})")
    induced = glued.induced(product_map(i, identity_map(y), ay, by), product_map(identity_map(b), j, bx, by))
    logger.debug(f"Produit-poussé {glued.object.name}: {glued.object.nondegenerate_counts()} -> "
                 f"{by.nondegenerate_counts()}")
    return PushoutProduct(glued.object, by, induced)


def pushout_of_inclusion(i: PresheafMap, g: PresheafMap) -> PresheafMap:
    """Image directe de ``i: A ⊂ B`` le long de ``g: A -> C``: ``C -> C ∪_A B``."""
    return pushout(i, g).right
