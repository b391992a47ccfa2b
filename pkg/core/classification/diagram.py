"""
Diagramme de classification N(X̄) et son raffinement marqué (t⁺)^!.
"""
import logging
from typing import Dict, Hashable, List, Optional, Tuple

from config.settings import Settings
from core.bisimplicial.bisimplicial_set import BisimplicialView, MarkedView
from core.bisimplicial.operations import slice_view
from core.classification.grid import grid
from core.marked.marked_set import MarkedMap, MarkedSimplicialSet
from core.presheaf.constructions import to_point
from core.presheaf.ez import Degree, Ops, Presheaf, SimplicialSet, materialize
from core.presheaf.maps import PresheafMap, iter_maps
from core.utils.errors import BoundsError

logger = logging.getLogger(__name__)


class ClassificationDiagram(BisimplicialView):
    """
    N(X̄): les (n, m)-cellules sont les morphismes marqués
    ``(Δⁿ)♭ × (Δᵐ)♯ -> X̄``, codés par les images des simplexes maximaux.
    """

    def __init__(self, source: MarkedSimplicialSet, pbound: int, qbound: int, name: str = ""):
        super().__init__(name or f"N({source.name})", pbound, qbound)
        self.source = source

    def _compute_cells(self, degree: Degree) -> List[Tuple[Hashable, ...]]:
        n, m = degree
        g = grid(n, m)
        cells = [
            tuple(images[i] for i in g.top)
            for images in iter_maps(g.product, self.source.underlying,
                                    source_marked=g.marked.marked, target_marked=self.source.is_marked)
        ]
        logger.debug(f"{self.name}_{{{n},{m}}}: {len(cells)} cellules")
        return cells

    def _compute_act(self, cell, degree: Degree, ops: Ops):
        n, m = degree
        alpha, beta = ops
        g = grid(n, m)
        g2 = grid(len(alpha) - 1, len(beta) - 1)
        return tuple(
            g.chain_image(cell, [(alpha[x], beta[y]) for x, y in path], self.source.underlying)
            for path in g2.paths
        )

    def as_map(self, cell, degree: Degree) -> PresheafMap:
        """Morphisme ``Δⁿ × Δᵐ -> X`` représenté par une cellule."""
        g = grid(*degree)
        images = tuple(g.chain_image(cell, points, self.source.underlying) for points in g.points)
        return PresheafMap(g.product, self.source.underlying, images)

    def edge_images(self, cell, degree: Degree) -> List[Hashable]:
        g = grid(*degree)
        return [g.chain_image(cell, g.points[e], self.source.underlying) for e in g.edges()]


class MarkedClassificationDiagram(ClassificationDiagram, MarkedView):
    """
    (t⁺)^! X̄: la cellule (1, m) est marquée si toutes les arêtes de
    ``Δ¹ × Δᵐ`` sont envoyées sur des arêtes marquées.
    """

    def __init__(self, source: MarkedSimplicialSet, pbound: int, qbound: int, name: str = ""):
        super().__init__(source, pbound, qbound, name or f"N⁺({source.name})")

    def is_marked(self, cell, degree: Degree) -> bool:
        if degree[0] != 1:
            raise BoundsError("Marquage défini en colonne 1 uniquement")
        return all(self.source.is_marked(e) for e in self.edge_images(cell, degree))


def classification_diagram(source: MarkedSimplicialSet, pbound: Optional[int] = None,
                           qbound: Optional[int] = None) -> ClassificationDiagram:
    """
    Args:
        source: Ensemble simplicial marqué fini
        pbound, qbound: Bornes (défauts de ``Settings``)
    """
    return ClassificationDiagram(source,
                                 Settings.DEFAULT_PBOUND if pbound is None else pbound,
                                 Settings.DEFAULT_QBOUND if qbound is None else qbound)


def marked_classification(source: MarkedSimplicialSet, pbound: Optional[int] = None,
                          qbound: Optional[int] = None) -> MarkedClassificationDiagram:
    return MarkedClassificationDiagram(source,
                                       Settings.DEFAULT_PBOUND if pbound is None else pbound,
                                       Settings.DEFAULT_QBOUND if qbound is None else qbound)


class ClassificationMap:
    """N(f): post-composition par un morphisme marqué, bidegré par bidegré."""

    def __init__(self, f: MarkedMap, source: ClassificationDiagram, target: ClassificationDiagram):
        self.f = f
        self.source = source
        self.target = target

    def apply(self, cell, degree: Optional[Degree] = None):
        return tuple(self.f.map.apply(c) for c in cell)


def classification_map(f: MarkedMap, pbound: Optional[int] = None, qbound: Optional[int] = None,
                        marked: bool = False) -> ClassificationMap:
    """Réalise ``N(f): N(X̄) -> N(Ȳ)``."""
    build = marked_classification if marked else classification_diagram
    return ClassificationMap(f, build(f.source, pbound, qbound), build(f.target, pbound, qbound))


def constant_map(source: MarkedSimplicialSet, target: MarkedSimplicialSet) -> MarkedMap:
    """Morphisme vers un objet terminal ``(Δ⁰)``."""
    return MarkedMap(to_point(source.underlying, target.underlying), source, target)


def slice_table(x: Presheaf, axis: str, index: int, bound: int) -> Tuple[SimplicialSet, Dict]:
    """Colonne ou ligne matérialisée avec sa table de formes normales."""
    view = slice_view(x, axis, index)
    return materialize(view, (bound,), view.name)


def induced_slice_map(f, axis: str, index: int, bound: int) -> Tuple[PresheafMap, SimplicialSet, SimplicialSet]:
    """
    Morphisme induit entre colonnes (ou lignes) matérialisées.

    Args:
        f: Morphisme de vues (``apply(cell, degree)``)
        axis: ``column`` ou ``row``
        index: Indice fixé
        bound: Dimension matérialisée

    Returns:
        Tuple (morphisme, source matérialisée, cible matérialisée)
    """
    source, _ = slice_table(f.source, axis, index, bound)
    target, table = slice_table(f.target, axis, index, bound)
    images = []
    for gen in source.generators:
        (k,), cell = gen.label
        full = (index, k) if axis == "column" else (k, index)
        images.append(table[((k,), f.apply(cell, full))])
    return PresheafMap(source, target, tuple(images)), source, target
