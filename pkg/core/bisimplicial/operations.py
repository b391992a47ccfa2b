"""
Produits en boîte, colonnes, lignes, diagonale, sous-ensembles pleins,
squelettes et tables de bidegrés.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Hashable, Iterable, List, Optional, Tuple, Union

from config.settings import Settings
from core.bisimplicial.bisimplicial_set import (
    BisimplicialSet,
    FilteredView,
    FiniteBisimplicialSet,
    UnmarkedView,
    marked_generators,
)
from core.marked.marked_set import MarkedSimplicialSet
from core.presheaf.ez import Degree, Presheaf, PresheafBuilder, SimplicialSet, materialize
from core.presheaf.maps import PresheafMap, find_isomorphism
from core.presheaf.monotone import identity
from core.utils.errors import BoundsError, ParameterError

logger = logging.getLogger(__name__)


class BoxProduct(FiniteBisimplicialSet):
    """
    ``X ⊠ Y`` avec ``(X ⊠ Y)_{n,m} = X_n × Y_m``; marquage ``S × Y``.
    Le générateur ``(a, b)`` a l'indice ``a·|gen(Y)| + b``.
    """

    def __init__(self, left: Union[SimplicialSet, MarkedSimplicialSet], right: SimplicialSet, name: str = ""):
        marking = left if isinstance(left, MarkedSimplicialSet) else None
        xs = left.underlying if marking else left
        self.left = xs
        self.right = right
        builder = PresheafBuilder(2)
        for ga in xs.generators:
            for gb in right.generators:
                p, q = ga.degree[0], gb.degree[0]
                horizontal = [((sigma, identity(q)), (xs.generators[a2].label, gb.label))
                              for ((sigma,), a2) in ga.faces[0]]
                vertical = [((identity(p), tau), (ga.label, right.generators[b2].label))
                            for ((tau,), b2) in gb.faces[0]]
                builder.add((ga.label, gb.label), (p, q), [horizontal, vertical])
        label = name or f"{left.name}⊠{right.name}"
        presentation = builder.build(label)
        width = len(right.generators)
        marked = frozenset(a * width + b for a in (marking.marked if marking else ()) for b in range(width))
        super().__init__(presentation, marked, label)

    def pair(self, a: int, b: int) -> int:
        return a * len(self.right.generators) + b

    def split(self, g: int) -> Tuple[int, int]:
        return divmod(g, len(self.right.generators))


def box_product(x: Union[SimplicialSet, MarkedSimplicialSet], y: SimplicialSet, name: str = "") -> BoxProduct:
    """Produit en boîte, marqué si ``x`` l'est."""
    result = BoxProduct(x, y, name)
    logger.debug(f"Produit en boîte {result.name}: {len(result.generators)} générateurs")
    return result


class _SliceView(Presheaf):
    axes = 1

    def __init__(self, parent: Presheaf, axis: int, index: int, name: str):
        self.parent = parent
        self.axis = axis
        self.index = index
        self.name = name

    def _full(self, k: int) -> Degree:
        return (self.index, k) if self.axis == 0 else (k, self.index)

    def cells(self, degree):
        return self.parent.cells(self._full(degree[0]))

    def act(self, cell, degree, ops):
        (theta,) = ops
        fixed = identity(self.index)
        full_ops = (fixed, theta) if self.axis == 0 else (theta, fixed)
        return self.parent.act(cell, self._full(degree[0]), full_ops)


class _DiagonalView(Presheaf):
    axes = 1

    def __init__(self, parent: Presheaf, name: str):
        self.parent = parent
        self.name = name

    def cells(self, degree):
        return self.parent.cells((degree[0], degree[0]))

    def act(self, cell, degree, ops):
        (theta,) = ops
        return self.parent.act(cell, (degree[0], degree[0]), (theta, theta))


def _default_bound(x: Presheaf, axis: int, bound: Optional[int]) -> int:
    if bound is not None:
        return bound
    declared = getattr(x, "qbound" if axis == 0 else "pbound", None)
    if declared is not None:
        return declared
    return Settings.DEFAULT_QBOUND if axis == 0 else Settings.DEFAULT_PBOUND


def slice_view(x: Presheaf, axis: str, index: int) -> Presheaf:
    """Vue paresseuse d'une colonne (``column``) ou d'une ligne (``row``)."""
    if axis not in ("column", "row"):
        raise ParameterError(f"Axe inconnu: {axis!r}")
    a = 0 if axis == "column" else 1
    bound = getattr(x, "pbound" if a == 0 else "qbound", None)
    if index < 0 or (bound is not None and index > bound):
        raise BoundsError(f"Indice {index} hors des bornes de {x.name}")
    symbol = f"{x.name}_{{{index},*}}" if a == 0 else f"{x.name}_{{*,{index}}}"
    return _SliceView(x, a, index, symbol)


def slice(x: Presheaf, axis: str, index: int, bound: Optional[int] = None) -> SimplicialSet:
    """
    Colonne ``X_{index,*}`` ou ligne ``X_{*,index}`` matérialisée.

    Args:
        x: Ensemble bisimplicial
        axis: ``column`` ou ``row``
        index: Indice de la colonne ou de la ligne
        bound: Dimension maximale matérialisée

    Returns:
        Ensemble simplicial tronqué à ``bound``
    """
    view = slice_view(x, axis, index)
    a = 0 if axis == "column" else 1
    presheaf, _ = materialize(view, (_default_bound(x, a, bound),), view.name)
    return presheaf


def marked_row_table(x: Presheaf, m: int, bound: Optional[int] = None) -> Tuple[MarkedSimplicialSet, Dict]:
    """Ligne ``(X_{*,m}, S_m)`` matérialisée, avec sa table de formes normales."""
    view = slice_view(x, "row", m)
    presheaf, table = materialize(view, (_default_bound(x, 1, bound),), view.name)
    marked = frozenset(g for g in presheaf.nondegenerate((1,))
                       if x.is_marked(presheaf.generators[g].label[1], (1, m)))
    return MarkedSimplicialSet(presheaf, marked, view.name), table


def marked_row(x: Presheaf, m: int, bound: Optional[int] = None) -> MarkedSimplicialSet:
    """Ligne ``(X_{*,m}, S_m)`` matérialisée avec son marquage."""
    return marked_row_table(x, m, bound)[0]


def diagonal(x: Presheaf, bound: Optional[int] = None) -> SimplicialSet:
    """``diag X`` avec ``(diag X)_n = X_{n,n}``, matérialisé jusqu'à ``bound``."""
    view = _DiagonalView(x, f"diag({x.name})")
    if bound is None:
        bound = min(_default_bound(x, 0, None), _default_bound(x, 1, None))
    presheaf, _ = materialize(view, (bound,), view.name)
    return presheaf


def cell_vertices(x: Presheaf, cell: Hashable, degree: Degree) -> List[Hashable]:
    n, m = degree
    return [x.vertex(cell, degree, (i, j)) for i in range(n + 1) for j in range(m + 1)]


def full_subset(x: BisimplicialSet, vertices: Iterable[Hashable], name: str = "") -> FilteredView:
    """
    Sous-ensemble plein engendré par ``V ⊆ X_{0,0}``.

    Raises:
        ParameterError: Si V contient une cellule hors de ``X_{0,0}``
    """
    chosen = frozenset(vertices)
    known = set(x.cells((0, 0)))
    if not chosen <= known:
        raise ParameterError("full_subset: V doit être inclus dans X_{0,0}")
    return FilteredView(x, lambda cell, degree: all(v in chosen for v in cell_vertices(x, cell, degree)),
                        name or f"full({x.name})")


def core_degree(x: Presheaf, cell: Hashable, degree: Degree) -> Degree:
    """Bidegré du générateur non dégénéré dont la cellule est une dégénérescence."""
    current, current_degree = cell, degree
    changed = True
    while changed:
        changed = False
        for a in range(2):
            lower = tuple(d - 1 if b == a else d for b, d in enumerate(current_degree))
            for j in range(current_degree[a]):
                z = x.face(current, current_degree, a, j)
                if x.degeneracy(z, lower, a, j) == current:
                    current, current_degree, changed = z, lower, True
                    break
            if changed:
                break
    return current_degree


def bidegree_skeleton(x: BisimplicialSet, p: int, name: str = "") -> FilteredView:
    """p-squelette: images des cellules de degré total ``<= p``."""
    if p < 0:
        raise ParameterError(f"Squelette de degré négatif: {p}")
    return FilteredView(x, lambda cell, degree: sum(core_degree(x, cell, degree)) <= p,
                        name or f"sk{p}({x.name})")


def unmark(x: BisimplicialSet) -> BisimplicialSet:
    if isinstance(x, FiniteBisimplicialSet):
        return FiniteBisimplicialSet(x.presentation, frozenset(), f"unmark({x.name})")
    return UnmarkedView(x)


def _fill(x: Presheaf, degrees: List[Degree]) -> Dict[Degree, int]:
    threads = max(1, Settings.THREADS)
    if threads == 1:
        return {d: x.count(d) for d in degrees}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        counts = list(pool.map(x.count, degrees))
    return dict(zip(degrees, counts))


def bidegree_table(x: Presheaf, pbound: int, qbound: int, operators: bool = False) -> List[Dict]:
    """
    Table des cardinaux par bidegré, avec tables d'opérateurs optionnelles.

    Returns:
        Lignes ``{"n", "m", "count"}`` triées par ``(n, m)``; avec
        ``operators``: ``"marked"``, ``"faces_h"`` et ``"faces_v"`` en indices.
    """
    degrees = [(n, m) for n in range(pbound + 1) for m in range(qbound + 1)]
    counts = _fill(x, degrees)
    rows = []
    for n, m in degrees:
        row = {"n": n, "m": m, "count": counts[(n, m)]}
        if operators:
            cells = x.cells((n, m))
            if n > 0:
                lower = {c: i for i, c in enumerate(x.cells((n - 1, m)))}
                row["faces_h"] = [[lower[x.face(c, (n, m), 0, i)] for i in range(n + 1)] for c in cells]
            if m > 0:
                lower = {c: i for i, c in enumerate(x.cells((n, m - 1)))}
                row["faces_v"] = [[lower[x.face(c, (n, m), 1, j)] for j in range(m + 1)] for c in cells]
            if n == 1:
                row["marked"] = [i for i, c in enumerate(cells) if x.is_marked(c, (n, m))]
        rows.append(row)
    return rows


def materialize_bisimplicial(x: Presheaf, pbound: int, qbound: int) -> FiniteBisimplicialSet:
    """Matérialise une vue bornée, marquage compris."""
    presentation, _ = materialize(x, (pbound, qbound), x.name)
    return FiniteBisimplicialSet(presentation, marked_generators(presentation, x), x.name)


def views_isomorphic(x: Presheaf, y: Presheaf, pbound: int, qbound: int,
                     marked: bool = True) -> Optional[PresheafMap]:
    """
    Certificat d'isomorphisme (marqué) entre deux vues, dans les bornes.

    Returns:
        Isomorphisme entre matérialisations, ou None
    """
    mx = materialize_bisimplicial(x, pbound, qbound)
    my = materialize_bisimplicial(y, pbound, qbound)
    if marked:
        return find_isomorphism(mx.presentation, my.presentation,
                                source_marked=mx.marked, target_marked=my.marked)
    return find_isomorphism(mx.presentation, my.presentation)
