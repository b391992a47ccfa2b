"""
Grilles ``(Δⁿ)♭ × (Δᵐ)♯`` et chemins de treillis.

Une cellule de bidegré (n, m) d'un diagramme de classification est codée
par les images des simplexes maximaux de la grille, un par chemin de
treillis de (0, 0) à (n, m).
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Hashable, List, Sequence, Tuple

from core.marked.marked_set import MarkedSimplicialSet, flat, sharp
from core.marked.operations import marked_product
from core.presheaf.constructions import ProductSimplicialSet
from core.presheaf.ez import Presheaf
from core.presheaf.shapes import simplex

Point = Tuple[int, int]
Path = Tuple[Point, ...]


@dataclass(frozen=True, eq=False)
class Grid:
    """
    Attributes:
        n, m: Dimensions de la grille
        marked: ``(Δⁿ)♭ × (Δᵐ)♯`` (ou ``(Δⁿ)♯ × (Δᵐ)♯``)
        paths: Chemins de treillis, dans l'ordre des générateurs maximaux
        top: Indice du générateur maximal de chaque chemin
        path_index: Chemin -> position dans ``paths``
        points: Pour chaque générateur du produit, la suite de ses sommets
    """
    n: int
    m: int
    marked: MarkedSimplicialSet
    paths: Tuple[Path, ...]
    top: Tuple[int, ...]
    path_index: Dict[Path, int]
    points: Tuple[Path, ...]

    @property
    def product(self) -> ProductSimplicialSet:
        return self.marked.underlying

    def lattice_path(self, points: Sequence[Point]) -> Path:
        """Complète une suite croissante de points en chemin « x d'abord »."""
        x, y = 0, 0
        walk: List[Point] = [(0, 0)]
        for px, py in list(points) + [(self.n, self.m)]:
            while x < px:
                x += 1
                walk.append((x, y))
            while y < py:
                y += 1
                walk.append((x, y))
        return tuple(walk)

    def chain_image(self, top_images: Sequence[Hashable], points: Sequence[Point], target: Presheaf) -> Hashable:
        """
        Image d'une chaîne de points de la grille par le morphisme dont les
        simplexes maximaux ont pour images ``top_images``.
        """
        path = self.lattice_path(points)
        theta = tuple(px + py for px, py in points)
        return target.act(top_images[self.path_index[path]], (self.n + self.m,), (theta,))

    def edges(self) -> List[int]:
        return self.product.nondegenerate((1,))


@lru_cache(maxsize=None)
def grid(n: int, m: int, first_sharp: bool = False) -> Grid:
    """Grille ``(Δⁿ)♭ × (Δᵐ)♯`` (premier facteur ♯ si ``first_sharp``)."""
    first = sharp(simplex(n)) if first_sharp else flat(simplex(n))
    marked = marked_product(first, sharp(simplex(m)))
    prod: ProductSimplicialSet = marked.underlying
    points = []
    for sigma, a, tau, b in prod.components:
        la, lb = prod.left.generators[a].label, prod.right.generators[b].label
        points.append(tuple((la[s], lb[t]) for s, t in zip(sigma, tau)))
    top = tuple(prod.nondegenerate((n + m,)))
    paths = tuple(points[g] for g in top)
    return Grid(n, m, marked, paths, top, {p: i for i, p in enumerate(paths)}, tuple(points))
