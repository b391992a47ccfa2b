"""
Diagramme de classification d'une catégorie relative (C, W).

La colonne n est le produit fibré ``Fun([n], C) ×_{C^{n+1}} W^{n+1}``: une
(n, m)-cellule est un foncteur ``[n] × [m] -> C`` dont les flèches
verticales sont dans W.
"""
import logging
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from config.settings import Settings
from core.bisimplicial.bisimplicial_set import BisimplicialView
from core.catkit.category import FiniteCategory, RelativeCategory
from core.catkit.nerve import nerve, nerve_cell
from core.classification.diagram import ClassificationDiagram, classification_diagram
from core.classification.grid import grid
from core.marked.marked_set import MarkedSimplicialSet
from core.presheaf.ez import Degree, Ops, SimplicialSet

logger = logging.getLogger(__name__)

# (objet en (0, 0), flèches horizontales par ligne, flèches verticales par colonne)
GridFunctor = Tuple[int, Tuple[Tuple[int, ...], ...], Tuple[Tuple[int, ...], ...]]


class RelativeClassificationDiagram(BisimplicialView):
    """
    Vue bornée dont les (n, m)-cellules sont les foncteurs de grille.

    Attributes:
        relative: Catégorie relative (C, W)
    """

    def __init__(self, relative: RelativeCategory, pbound: int, qbound: int, name: str = ""):
        super().__init__(name or f"N{relative.name}", pbound, qbound)
        self.relative = relative

    @property
    def category(self) -> FiniteCategory:
        return self.relative.base

    def _compute_cells(self, degree: Degree) -> List[GridFunctor]:
        n, m = degree
        cells = []
        for first, points in self._rows(n):
            for vertical, horizontal in self._extend(n, m, [first], [points], [[] for _ in range(n + 1)]):
                cells.append((points[0], horizontal, vertical))
        logger.debug(f"{self.name}_{{{n},{m}}}: {len(cells)} foncteurs")
        return cells

    def _rows(self, n: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        c = self.category
        if n == 0:
            return [((), (x,)) for x in range(len(c.objects))]
        rows = []
        for chain in c.chains(n):
            points = (c.arrows[chain[0]].source,) + tuple(c.arrows[a].target for a in chain)
            rows.append((chain, points))
        return rows

    def _extend(self, n: int, m: int, rows: List, points: List, vertical: List[List[int]]) -> Iterator:
        """Ajoute les lignes une à une en imposant la commutation des carrés."""
        if len(rows) == m + 1:
            yield tuple(tuple(v) for v in vertical), tuple(rows)
            return
        for v0 in self._weak_from(points[-1][0]):
            for row, down in self._next_row(n, rows[-1], points[-1], v0):
                next_points = (self.category.arrows[v0].target,) + tuple(
                    self.category.arrows[a].target for a in row)
                for i, a in enumerate(down):
                    vertical[i].append(a)
                yield from self._extend(n, m, rows + [row], points + [next_points], vertical)
                for i in range(n + 1):
                    vertical[i].pop()

    def _weak_from(self, x: int) -> List[int]:
        c = self.category
        return [a for a in sorted(self.relative.weak) if c.arrows[a].source == x]

    def _next_row(self, n: int, row: Tuple[int, ...], points: Tuple[int, ...], v0: int) -> Iterator:
        c = self.category
        outgoing = c.outgoing()

        def walk(i: int, chosen: Tuple[int, ...], down: Tuple[int, ...]):
            if i == n:
                yield chosen, down
                return
            left = down[-1]
            for h in outgoing[c.arrows[left].target]:
                for v in self._weak_from(points[i + 1]):
                    if c.arrows[v].target != c.arrows[h].target:
                        continue
                    if c.compose(v, row[i]) == c.compose(h, left):
                        yield from walk(i + 1, chosen + (h,), down + (v,))

        yield from walk(0, (), (v0,))

    def point(self, cell: GridFunctor, x: int, y: int) -> int:
        obj, horizontal, vertical = cell
        for i in range(x):
            obj = self.category.arrows[horizontal[0][i]].target
        for j in range(y):
            obj = self.category.arrows[vertical[x][j]].target
        return obj

    def arrow(self, cell: GridFunctor, start: Tuple[int, int], end: Tuple[int, int]) -> int:
        """Image de ``start <= end``: le long de la ligne, puis de la colonne."""
        c = self.category
        _, horizontal, vertical = cell
        (x, y), (x2, y2) = start, end
        result = c.identities[self.point(cell, x, y)]
        for i in range(x, x2):
            result = c.compose(horizontal[y][i], result)
        for j in range(y, y2):
            result = c.compose(vertical[x2][j], result)
        return result

    def _compute_act(self, cell: GridFunctor, degree: Degree, ops: Ops) -> GridFunctor:
        alpha, beta = ops
        n2, m2 = len(alpha) - 1, len(beta) - 1
        horizontal = tuple(
            tuple(self.arrow(cell, (alpha[x], beta[y]), (alpha[x + 1], beta[y])) for x in range(n2))
            for y in range(m2 + 1)
        )
        vertical = tuple(
            tuple(self.arrow(cell, (alpha[x], beta[y]), (alpha[x], beta[y + 1])) for y in range(m2))
            for x in range(n2 + 1)
        )
        return self.point(cell, alpha[0], beta[0]), horizontal, vertical

    def path_chain(self, cell: GridFunctor, path: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
        return tuple(self.arrow(cell, path[k], path[k + 1]) for k in range(len(path) - 1))


def relative_classification(relative: RelativeCategory, pbound: Optional[int] = None,
                            qbound: Optional[int] = None) -> RelativeClassificationDiagram:
    """
    Args:
        relative: Catégorie relative finie
        pbound, qbound: Bornes (défauts de ``Settings``)
    """
    return RelativeClassificationDiagram(relative,
                                         Settings.DEFAULT_PBOUND if pbound is None else pbound,
                                         Settings.DEFAULT_QBOUND if qbound is None else qbound)


def weak_marked_nerve(relative: RelativeCategory, d: int) -> MarkedSimplicialSet:
    """Nerf de C marqué par les flèches de W."""
    c = relative.base
    x = nerve(c, d)
    marked = frozenset(
        x.index_of(("ch", c.arrows[a].name)) for a in relative.weak if not c.is_identity(a)
    )
    return MarkedSimplicialSet(x, marked, f"{x.name}_W")


def to_classification_cell(diagram: RelativeClassificationDiagram, cell: GridFunctor, degree: Degree,
                           target: SimplicialSet) -> Tuple[Hashable, ...]:
    """Cellule de ``N(nerf(C), W)`` associée à un foncteur de grille."""
    g = grid(*degree)
    start = diagram.point(cell, 0, 0)
    return tuple(nerve_cell(target, diagram.category, diagram.path_chain(cell, path), start) for path in g.paths)


def cross_check(relative: RelativeCategory, pbound: int, qbound: int) -> Dict:
    """
    Compare bidegré par bidegré ``relative_classification(R)`` et le
    diagramme de classification du nerf marqué par W.

    Returns:
        ``{"agrees": bool, "bidegrees": [...]}``
    """
    diagram = relative_classification(relative, pbound, qbound)
    marked = weak_marked_nerve(relative, pbound + qbound)
    reference: ClassificationDiagram = classification_diagram(marked, pbound, qbound)
    rows = []
    agrees = True
    for n in range(pbound + 1):
        for m in range(qbound + 1):
            converted = {to_classification_cell(diagram, c, (n, m), marked.underlying)
                         for c in diagram.cells((n, m))}
            expected = set(reference.cells((n, m)))
            same = converted == expected and len(converted) == diagram.count((n, m))
            agrees = agrees and same
            rows.append({"n": n, "m": m, "count": diagram.count((n, m)), "reference": len(expected),
                         "agrees": same})
    if agrees:
        logger.info(f"✅ {diagram.name} coïncide avec {reference.name} jusqu'en ({pbound},{qbound})")
    else:
        logger.warning(f"⚠️ {diagram.name} diffère de {reference.name}")
    return {"agrees": agrees, "bidegrees": rows}
