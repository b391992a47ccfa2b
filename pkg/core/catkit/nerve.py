"""
Nerfs de catégories finies et reconnaissance des nerfs.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from core.catkit.category import Arrow, FiniteCategory
from core.presheaf.ez import Cell, PresheafBuilder, SimplicialSet
from core.presheaf.monotone import identity
from core.utils.errors import ParameterError, ValidationError

logger = logging.getLogger(__name__)


def _object_label(category: FiniteCategory, x: int) -> Hashable:
    return ("ob", category.objects[x])


def _chain_label(category: FiniteCategory, chain: Sequence[int]) -> Hashable:
    return ("ch",) + tuple(category.arrows[a].name for a in chain)


def chain_normal_form(category: FiniteCategory, chain: Sequence[int], start: int) -> Tuple[Tuple, Hashable]:
    """
    Forme normale d'une suite composable pouvant contenir des identités.

    Args:
        category: Catégorie
        chain: Indices de flèches ``f_1, ..., f_k``
        start: Objet source (utile si ``chain`` est vide)

    Returns:
        Tuple (surjection, étiquette du générateur du nerf)
    """
    kept = [a for a in chain if not category.is_identity(a)]
    surjection, count = [0], 0
    for a in chain:
        if not category.is_identity(a):
            count += 1
        surjection.append(count)
    if not kept:
        return tuple(surjection), _object_label(category, start)
    return tuple(surjection), _chain_label(category, kept)


def nerve(category: FiniteCategory, d: int = 3) -> SimplicialSet:
    """
    Nerf de ``category`` présenté jusqu'en dimension ``d``.

    Les k-simplexes non dégénérés sont les suites de k flèches non
    identités. Le résultat est marqué tronqué s'il existe de telles suites
    au-delà de ``d``.
    """
    if d < 0:
        raise ParameterError(f"nerve: d doit être >= 0 (reçu {d})")
    builder = PresheafBuilder(1)
    for x in range(len(category.objects)):
        builder.add(_object_label(category, x), (0,), [[]])
    non_identity = category.non_identity()
    by_source: Dict[int, List[int]] = {}
    for a in non_identity:
        by_source.setdefault(category.arrows[a].source, []).append(a)
    chains: List[Tuple[int, ...]] = [(a,) for a in non_identity]
    k = 1
    while chains and k <= d:
        for chain in chains:
            faces = []
            for i in range(k + 1):
                if i == 0:
                    reduced, start = chain[1:], category.arrows[chain[0]].target
                elif i == k:
                    reduced, start = chain[:-1], category.arrows[chain[0]].source
                else:
                    composite = category.compose(chain[i], chain[i - 1])
                    reduced = chain[:i - 1] + (composite,) + chain[i + 1:]
                    start = category.arrows[chain[0]].source
                surj, label = chain_normal_form(category, reduced, start)
                faces.append(((surj,), label))
            builder.add(_chain_label(category, chain), (k,), [faces])
        chains = [c + (b,) for c in chains for b in by_source.get(category.arrows[c[-1]].target, [])]
        k += 1
    truncation = (d,) if chains else None
    result = builder.build(f"N({category.name})", truncation)
    logger.debug(f"Nerf {result.name}: {result.nondegenerate_counts()}")
    return result


def nerve_cell(x: SimplicialSet, category: FiniteCategory, chain: Sequence[int], start: int) -> Cell:
    """Cellule du nerf associée à une suite composable quelconque."""
    surj, label = chain_normal_form(category, chain, start)
    return (surj,), x.index_of(label)


@dataclass
class NerveDetection:
    """
    Résultat de ``detect_nerve``.

    Attributes:
        success: True si X est (à troncature près) le nerf d'une catégorie
        category: Catégorie reconstruite (objets = sommets, flèches = arêtes)
        witness: Obstruction en cas d'échec
        edge_arrow: Arête (cellule de degré 1) -> indice de flèche
        checked_up_to: Dernière dimension de Segal vérifiée
    """
    success: bool
    category: Optional[FiniteCategory] = None
    witness: Optional[Dict] = None
    edge_arrow: Dict[Cell, int] = field(default_factory=dict)
    checked_up_to: int = 0

    def to_dict(self) -> Dict:
        payload = {"success": self.success, "checked_up_to": self.checked_up_to}
        if self.category is not None:
            payload["objects"] = len(self.category.objects)
            payload["arrows"] = len(self.category.arrows)
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


def detect_nerve(x: SimplicialSet) -> NerveDetection:
    """
    Reconnaît un nerf: applications de Segal bijectives en dimensions
    ``2 .. max(3, dimension)`` (bornées par la troncature éventuelle).

    Returns:
        NerveDetection avec la catégorie ou un témoin d'échec
    """
    vertices = x.vertices()
    object_of = {g: i for i, g in enumerate(vertices)}
    edges = x.simplices(1)
    edge_arrow = {e: i for i, e in enumerate(edges)}
    arrows = []
    for e in edges:
        src, tgt = object_of[x.vertex_of(e, 0)], object_of[x.vertex_of(e, 1)]
        name = ("id", x.generators[e[1]].label) if not x.is_nondegenerate(e) else x.generators[e[1]].label
        arrows.append(Arrow(name, src, tgt))
    identities = tuple(edge_arrow[x.s(x.generator_cell(v), 0)] for v in vertices)
    composition: Dict[Tuple[int, int], int] = {}
    for tau in x.simplices(2):
        f, g, h = edge_arrow[x.d(tau, 2)], edge_arrow[x.d(tau, 0)], edge_arrow[x.d(tau, 1)]
        if (g, f) in composition:
            return NerveDetection(False, witness={
                "kind": "duplicate_filler", "dimension": 2,
                "edges": [str(arrows[f].name), str(arrows[g].name)],
            }, checked_up_to=1)
        composition[(g, f)] = h
    for f, af in enumerate(arrows):
        for g, ag in enumerate(arrows):
            if ag.source == af.target and (g, f) not in composition:
                return NerveDetection(False, witness={
                    "kind": "missing_filler", "dimension": 2,
                    "edges": [str(af.name), str(ag.name)],
                }, checked_up_to=1)
    category = FiniteCategory(tuple(x.generators[v].label for v in vertices), tuple(arrows),
                              composition, identities, f"cat({x.name})")
    top = max(3, x.dimension_bound)
    if x.truncated_at is not None:
        top = min(top, x.truncated_at)
    for k in range(3, top + 1):
        spines = set()
        for cell in x.simplices(k):
            spine = tuple(edge_arrow[x.act(cell, (k,), ((j, j + 1),))] for j in range(k))
            if spine in spines:
                return NerveDetection(False, category=None, witness={
                    "kind": "duplicate_filler", "dimension": k,
                    "edges": [str(arrows[a].name) for a in spine],
                }, checked_up_to=k - 1)
            spines.add(spine)
        if len(spines) != category.count_chains(k):
            return NerveDetection(False, witness={
                "kind": "coskeletality", "dimension": k,
                "simplices": len(spines), "chains": category.count_chains(k),
            }, checked_up_to=k - 1)
    try:
        category.validate()
    except ValidationError as e:
        return NerveDetection(False, witness={"kind": "non_associative", "detail": str(e)}, checked_up_to=top)
    logger.debug(f"✅ Nerf reconnu: {x.name} ({len(vertices)} objets, {len(arrows)} flèches)")
    return NerveDetection(True, category, None, edge_arrow, top)
