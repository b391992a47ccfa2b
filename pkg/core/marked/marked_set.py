"""
Ensembles simpliciaux marqués (X, S).
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, List, Optional, Union

from core.catkit.nerve import detect_nerve
from core.presheaf.ez import Cell, Degree, SimplicialSet
from core.presheaf.maps import PresheafMap, iter_maps
from core.utils.errors import ParameterError, UnsupportedInputError, ValidationError

logger = logging.getLogger(__name__)

MARKING_MODES = ("flat", "sharp", "unmark")


@dataclass(frozen=True, eq=False)
class MarkedSimplicialSet:
    """
    Ensemble simplicial muni d'un ensemble d'arêtes marquées.

    Attributes:
        underlying: Ensemble simplicial sous-jacent
        marked: Arêtes non dégénérées marquées (indices de générateurs);
            les arêtes dégénérées sont toujours marquées
        name: Nom d'affichage
    """
    underlying: SimplicialSet
    marked: FrozenSet[int]
    name: str = ""

    def __post_init__(self):
        for g in self.marked:
            if self.underlying.generators[g].degree != (1,):
                raise ValidationError(f"Marquage invalide: {self.underlying.generators[g].label!r} n'est pas une arête")
        if not self.name:
            object.__setattr__(self, "name", self.underlying.name)

    def is_marked(self, cell: Cell, degree: Optional[Degree] = None) -> bool:
        (surj,), g = cell
        if len(surj) != 2:
            raise ParameterError("Seules les arêtes peuvent être marquées")
        return surj == (0, 0) or g in self.marked

    def marked_edges(self) -> List[Cell]:
        """Toutes les arêtes marquées, dégénérées comprises."""
        return [e for e in self.underlying.simplices(1) if self.is_marked(e)]

    def nondegenerate_marked(self) -> int:
        return len(self.marked)


def flat(x: SimplicialSet) -> MarkedSimplicialSet:
    return MarkedSimplicialSet(x, frozenset(), f"{x.name}♭")


def sharp(x: SimplicialSet) -> MarkedSimplicialSet:
    return MarkedSimplicialSet(x, frozenset(x.nondegenerate((1,))), f"{x.name}♯")


def with_marking(x: SimplicialSet, labels: Iterable[Hashable], name: str = "") -> MarkedSimplicialSet:
    """Marque les arêtes désignées par leurs étiquettes."""
    return MarkedSimplicialSet(x, frozenset(x.index_of(label) for label in labels), name)


def remark(x: Union[SimplicialSet, MarkedSimplicialSet], mode: str):
    """
    Change le marquage.

    Args:
        x: Ensemble simplicial, marqué ou non
        mode: ``flat``, ``sharp`` ou ``unmark``

    Returns:
        MarkedSimplicialSet (flat, sharp) ou SimplicialSet (unmark)
    """
    underlying = x.underlying if isinstance(x, MarkedSimplicialSet) else x
    if mode == "flat":
        return flat(underlying)
    if mode == "sharp":
        return sharp(underlying)
    if mode == "unmark":
        return underlying
    raise ParameterError(f"Mode de marquage inconnu: {mode!r}")


def natural_marking(x: SimplicialSet) -> MarkedSimplicialSet:
    """
    Marquage naturel X♮: les arêtes qui sont des isomorphismes de la
    catégorie dont X est le nerf.

    Raises:
        UnsupportedInputError: Si X n'est pas reconnu comme un nerf
    """
    detection = detect_nerve(x)
    if not detection.success:
        raise UnsupportedInputError(
            f"Marquage naturel refusé: {x.name} n'est pas un nerf ({detection.witness})"
        )
    category = detection.category
    marked = frozenset(
        edge[1] for edge, arrow in detection.edge_arrow.items()
        if x.is_nondegenerate(edge) and category.is_iso(arrow)
    )
    logger.debug(f"Marquage naturel de {x.name}: {len(marked)} arêtes non dégénérées marquées")
    return MarkedSimplicialSet(x, marked, f"{x.name}♮")


def two_out_of_three_violations(x: MarkedSimplicialSet) -> List[str]:
    """
    Pour chaque 2-simplexe (f, g, g∘f), vérifie que deux arêtes marquées
    entraînent la troisième.

    Returns:
        Liste des triangles fautifs
    """
    violations = []
    u = x.underlying
    for tau in u.simplices(2):
        edges = [u.d(tau, 2), u.d(tau, 0), u.d(tau, 1)]
        flags = [x.is_marked(e) for e in edges]
        if sum(flags) == 2:
            violations.append(repr(tau))
    return violations


@dataclass(frozen=True, eq=False)
class MarkedMap:
    """Morphisme simplicial qui envoie S dans T, avec son bit de vérification."""
    map: PresheafMap
    source: MarkedSimplicialSet
    target: MarkedSimplicialSet
    verified: bool = True

    def apply(self, cell: Cell, degree: Optional[Degree] = None) -> Cell:
        return self.map.apply(cell)

    @property
    def images(self):
        return self.map.images


def preserves_marking(f: PresheafMap, source: MarkedSimplicialSet, target: MarkedSimplicialSet) -> bool:
    return all(target.is_marked(f.images[g]) for g in source.marked)


def enumerate_marked_maps(source: MarkedSimplicialSet, target: MarkedSimplicialSet,
                          **options) -> List[MarkedMap]:
    """
    Morphismes marqués ``source -> target`` en ordre canonique.

    Args:
        source: Source marquée
        target: Cible marquée
        **options: Options de ``iter_maps`` (fixed, constraint)

    Returns:
        Liste des morphismes marqués
    """
    found = [
        MarkedMap(PresheafMap(source.underlying, target.underlying, images), source, target)
        for images in iter_maps(source.underlying, target.underlying,
                                source_marked=source.marked, target_marked=target.is_marked, **options)
    ]
    logger.debug(f"{len(found)} morphismes marqués {source.name} -> {target.name}")
    return found


def compose_marked(outer: MarkedMap, inner: MarkedMap) -> MarkedMap:
    images = tuple(outer.map.apply(c) for c in inner.map.images)
    return MarkedMap(PresheafMap(inner.source.underlying, outer.target.underlying, images),
                     inner.source, outer.target)
