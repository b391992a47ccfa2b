"""
Produits marqués et espaces de morphismes Map♯(X̄, Ȳ).
"""
import logging
from typing import Dict, Hashable, List, Tuple

from core.marked.marked_set import MarkedSimplicialSet, enumerate_marked_maps, sharp
from core.presheaf.constructions import ProductSimplicialSet, product, product_map
from core.presheaf.ez import Degree, Ops, Presheaf, SimplicialSet, materialize
from core.presheaf.maps import PresheafMap, identity_map
from core.presheaf.shapes import simplex, simplex_map

logger = logging.getLogger(__name__)


def marked_product(x: MarkedSimplicialSet, y: MarkedSimplicialSet, name: str = "") -> MarkedSimplicialSet:
    """Produit marqué: une arête est marquée si ses deux projections le sont."""
    underlying = product(x.underlying, y.underlying, name or f"{x.name}×{y.name}")
    marked = frozenset(
        g for g, (sigma, a, tau, b) in enumerate(underlying.components)
        if underlying.generators[g].degree == (1,)
        and x.is_marked(((sigma,), a)) and y.is_marked(((tau,), b))
    )
    return MarkedSimplicialSet(underlying, marked, underlying.name)


class MappingSpaceView(Presheaf):
    """
    Vue paresseuse de Map♯(X̄, Ȳ): les k-simplexes sont les morphismes
    marqués ``X̄ × (Δᵏ)♯ -> Ȳ``, codés par leurs images de générateurs.
    """

    axes = 1

    def __init__(self, source: MarkedSimplicialSet, target: MarkedSimplicialSet):
        self.source = source
        self.target = target
        self.name = f"Map♯({source.name},{target.name})"
        self._products: Dict[int, MarkedSimplicialSet] = {}

    def _product(self, k: int) -> MarkedSimplicialSet:
        if k not in self._products:
            self._products.setdefault(k, marked_product(self.source, sharp(simplex(k))))
        return self._products[k]

    def cells(self, degree: Degree) -> List[Tuple[Hashable, ...]]:
        memo = self._memo("_cells")
        if degree not in memo:
            maps = enumerate_marked_maps(self._product(degree[0]), self.target)
            memo.setdefault(degree, [f.images for f in maps])
        return memo[degree]

    def act(self, cell, degree: Degree, ops: Ops):
        memo = self._memo("_act")
        key = (cell, ops)
        if key not in memo:
            (theta,) = ops
            k, k2 = degree[0], len(theta) - 1
            source_product: ProductSimplicialSet = self._product(k2).underlying
            target_product: ProductSimplicialSet = self._product(k).underlying
            restriction = product_map(identity_map(self.source.underlying), simplex_map(theta, k),
                                      source_product, target_product)
            f = PresheafMap(target_product, self.target.underlying, cell)
            memo.setdefault(key, tuple(f.apply(c) for c in restriction.images))
        return memo[key]


def marked_mapping_space(x: MarkedSimplicialSet, y: MarkedSimplicialSet, d: int) -> SimplicialSet:
    """
    Map♯(X̄, Ȳ) tronqué en dimension ``d``.

    Returns:
        Ensemble simplicial dont les sommets sont les morphismes marqués X̄ -> Ȳ
    """
    view = MappingSpaceView(x, y)
    presheaf, _ = materialize(view, (d,), view.name)
    logger.debug(f"{view.name} jusqu'en dimension {d}: {presheaf.nondegenerate_counts()}")
    return presheaf
