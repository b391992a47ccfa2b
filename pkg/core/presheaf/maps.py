"""
Morphismes de préfaisceaux et énumération exhaustive par retour arrière.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterator, List, Optional, Tuple

from core.presheaf.ez import Cell, Degree, FinitePresheaf, Presheaf
from core.presheaf.monotone import is_identity
from core.utils.errors import ValidationError

logger = logging.getLogger(__name__)

MarkPredicate = Callable[[Hashable, Degree], bool]
Constraint = Callable[[int, Hashable, List[Optional[Hashable]]], bool]


@dataclass(frozen=True, eq=False)
class PresheafMap:
    """
    Morphisme depuis un préfaisceau présenté, donné sur les générateurs.

    Attributes:
        source: Préfaisceau présenté
        target: Préfaisceau (présenté ou vue)
        images: Image de chaque générateur, cellule de même degré
    """
    source: FinitePresheaf
    target: Presheaf
    images: Tuple[Hashable, ...]

    def apply(self, cell: Cell, degree: Optional[Degree] = None) -> Hashable:
        surjs, g = cell
        return self.target.act(self.images[g], self.source.generators[g].degree, surjs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PresheafMap):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and self.images == other.images)

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.images))

    def validate(self) -> None:
        """Vérifie la compatibilité aux faces sur les générateurs."""
        if len(self.images) != len(self.source.generators):
            raise ValidationError("Nombre d'images incorrect")
        for g, gen in enumerate(self.source.generators):
            for a in range(self.source.axes):
                for i, face_cell in enumerate(gen.faces[a]):
                    expected = self.apply(face_cell)
                    if self.target.face(self.images[g], gen.degree, a, i) != expected:
                        raise ValidationError(
                            f"Le morphisme ne commute pas à la face {i} de {gen.label!r}"
                        )


def identity_map(presheaf: FinitePresheaf) -> PresheafMap:
    return PresheafMap(presheaf, presheaf,
                       tuple(presheaf.generator_cell(g) for g in range(len(presheaf.generators))))


def compose_maps(outer: PresheafMap, inner: PresheafMap) -> PresheafMap:
    """Composée ``outer ∘ inner`` (la cible de ``inner`` doit être présentée)."""
    if inner.target is not outer.source:
        raise ValidationError("Morphismes non composables")
    return PresheafMap(inner.source, outer.target, tuple(outer.apply(c) for c in inner.images))


def is_monomorphism(f: PresheafMap) -> bool:
    """
    Un morphisme entre présentations EZ est mono s'il envoie les générateurs
    injectivement sur des générateurs.
    """
    target = f.target
    if not isinstance(target, FinitePresheaf):
        return len(set(f.images)) == len(f.images)
    seen = set()
    for image in f.images:
        if not target.is_nondegenerate(image) or image in seen:
            return False
        seen.add(image)
    return True


def is_isomorphism(f: PresheafMap, source_marked: Optional[FrozenSet[int]] = None,
                   target_marked: Optional[FrozenSet[int]] = None) -> bool:
    """
    Bijection générateur à générateur, qui reflète le marquage s'il est donné.
    """
    if not isinstance(f.target, FinitePresheaf) or len(f.images) != len(f.target.generators):
        return False
    if not is_monomorphism(f):
        return False
    if source_marked is None and target_marked is None:
        return True
    return frozenset(f.images[g][1] for g in source_marked or ()) == frozenset(target_marked or ())


def image_generators(f: PresheafMap) -> FrozenSet[int]:
    """Indices des générateurs cibles atteints par les générateurs source."""
    return frozenset(cell[1] for cell in f.images)


def assignment_order(source: FinitePresheaf) -> List[int]:
    """
    Ordre d'affectation: par dernier sommet atteint puis par degré total,
    de sorte que les faces précèdent toujours le générateur.
    """
    memo = source._memo("_assignment_order")
    if "order" not in memo:
        vertex_sets: List[FrozenSet[int]] = []
        rank: Dict[int, int] = {}
        for g, gen in enumerate(source.generators):
            if sum(gen.degree) == 0:
                rank[g] = len(rank)
                vertex_sets.append(frozenset([g]))
            else:
                vertex_sets.append(frozenset().union(
                    *(vertex_sets[h] for axis_faces in gen.faces for _, h in axis_faces)
                ))
        order = sorted(
            range(len(source.generators)),
            key=lambda g: (max((rank[v] for v in vertex_sets[g]), default=-1),
                           sum(source.generators[g].degree), g),
        )
        memo.setdefault("order", order)
    return memo["order"]


def iter_maps(source: FinitePresheaf, target: Presheaf, *,
              fixed: Optional[Dict[int, Hashable]] = None,
              source_marked: Optional[FrozenSet[int]] = None,
              target_marked: Optional[MarkPredicate] = None,
              constraint: Optional[Constraint] = None,
              injective: bool = False) -> Iterator[Tuple[Hashable, ...]]:
    """
    Énumère les morphismes ``source -> target`` par retour arrière.

    Args:
        source: Préfaisceau présenté
        target: Préfaisceau cible
        fixed: Images imposées pour certains générateurs
        source_marked: Générateurs marqués de la source (à envoyer sur du marqué)
        target_marked: Prédicat de marquage de la cible
        constraint: Filtre supplémentaire ``(g, candidat, images) -> bool``
        injective: Images non dégénérées et deux à deux distinctes

    Yields:
        Tuples d'images indexés par générateur, en ordre canonique
    """
    fixed = fixed or {}
    marked = source_marked or frozenset()
    order = assignment_order(source)
    total = len(order)
    images: List[Optional[Hashable]] = [None] * len(source.generators)
    used = set()

    def candidates(g: int) -> List[Hashable]:
        gen = source.generators[g]
        if sum(gen.degree) == 0:
            pool = target.cells(gen.degree)
        else:
            key = tuple(
                target.act(images[h], source.generators[h].degree, ops)
                for axis_faces in gen.faces
                for ops, h in axis_faces
            )
            pool = target.face_index(gen.degree).get(key, ())
        if g in fixed:
            pool = [fixed[g]] if fixed[g] in pool else []
        result = []
        for cell in pool:
            if g in marked and target_marked is not None and not target_marked(cell, gen.degree):
                continue
            if injective and (cell in used or not all(is_identity(s) for s in cell[0])):
                continue
            if constraint is not None and not constraint(g, cell, images):
                continue
            result.append(cell)
        return result

    if total == 0:
        yield ()
        return
    choices: List[Optional[List[Hashable]]] = [None] * total
    position = [0] * total
    level = 0
    while level >= 0:
        if level == total:
            yield tuple(images)
            level -= 1
            continue
        g = order[level]
        if choices[level] is None:
            if images[g] is not None and injective:
                used.discard(images[g])
            choices[level] = candidates(g)
            position[level] = 0
        elif injective and images[g] is not None:
            used.discard(images[g])
        if position[level] < len(choices[level]):
            images[g] = choices[level][position[level]]
            if injective:
                used.add(images[g])
            position[level] += 1
            level += 1
        else:
            choices[level] = None
            images[g] = None
            level -= 1


def enumerate_maps(source: FinitePresheaf, target: Presheaf, *,
                   limit: Optional[int] = None, **options) -> List[PresheafMap]:
    """
    Liste complète (ou limitée) des morphismes, ordre canonique.

    Args:
        source: Préfaisceau présenté
        target: Préfaisceau cible
        limit: Nombre maximal de morphismes renvoyés
        **options: Options de ``iter_maps``

    Returns:
        Liste de morphismes
    """
    found: List[PresheafMap] = []
    for images in iter_maps(source, target, **options):
        found.append(PresheafMap(source, target, images))
        if limit is not None and len(found) >= limit:
            break
    logger.debug(f"{len(found)} morphismes {source.name} -> {getattr(target, 'name', '?')}")
    return found


def count_maps(source: FinitePresheaf, target: Presheaf, **options) -> int:
    return sum(1 for _ in iter_maps(source, target, **options))


def find_isomorphism(source: FinitePresheaf, target: FinitePresheaf, *,
                     source_marked: Optional[FrozenSet[int]] = None,
                     target_marked: Optional[FrozenSet[int]] = None) -> Optional[PresheafMap]:
    """
    Cherche un isomorphisme (marqué si des marquages sont donnés).

    Returns:
        Un isomorphisme, ou None s'il n'en existe pas
    """
    if source.axes != target.axes:
        return None
    if sorted(g.degree for g in source.generators) != sorted(g.degree for g in target.generators):
        return None
    source_marked = source_marked or frozenset()
    target_marked = target_marked or frozenset()
    if len(source_marked) != len(target_marked):
        return None

    def marked_in_target(cell, degree) -> bool:
        return cell[1] in target_marked

    def preserves_unmarked(g, cell, images) -> bool:
        # une bijection doit aussi refléter le marquage
        return (g in source_marked) == (cell[1] in target_marked) if target_marked else True

    for images in iter_maps(source, target, injective=True,
                            source_marked=source_marked, target_marked=marked_in_target,
                            constraint=preserves_unmarked):
        return PresheafMap(source, target, images)
    return None
