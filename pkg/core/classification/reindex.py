"""
Foncteurs de réindexation entre ensembles simpliciaux marqués et
ensembles bisimpliciaux marqués: (p₁⁺)*, (i₁⁺)* et (t⁺)_!.
"""
import logging
from typing import Optional, Union

from core.bisimplicial.operations import BoxProduct, box_product, diagonal, marked_row
from core.marked.marked_set import MarkedSimplicialSet
from core.presheaf.ez import Presheaf
from core.presheaf.shapes import simplex
from core.utils.errors import ParameterError

logger = logging.getLogger(__name__)

SELECTORS = ("p1_star", "i1_star", "t_lower")


def p1_star(x: MarkedSimplicialSet) -> BoxProduct:
    """Objet à lignes constantes ``X̄ ⊠ Δ⁰``: toutes les lignes valent X̄."""
    return box_product(x, simplex(0), f"p1*({x.name})")


def i1_star(x: Presheaf, bound: Optional[int] = None, row: int = 0) -> MarkedSimplicialSet:
    """Extraction de la ligne ``row`` (par défaut la ligne 0) avec son marquage."""
    return marked_row(x, row, bound)


def t_lower(x: Presheaf, bound: Optional[int] = None) -> MarkedSimplicialSet:
    """
    ``(diag X, S₁)``: la diagonale, marquée par les cellules ``(1, 1)``
    marquées de X.
    """
    diag = diagonal(x, bound)
    marked = frozenset(
        g for g in diag.nondegenerate((1,))
        if x.is_marked(diag.generators[g].label[1], (1, 1))
    )
    logger.debug(f"t_!({x.name}): {len(marked)} arêtes marquées")
    return MarkedSimplicialSet(diag, marked, f"t!({x.name})")


def reindex(selector: str, arg: Union[MarkedSimplicialSet, Presheaf],
            bound: Optional[int] = None) -> Union[BoxProduct, MarkedSimplicialSet]:
    """
    Applique un foncteur de réindexation.

    Args:
        selector: ``p1_star``, ``i1_star`` ou ``t_lower``
        arg: Ensemble simplicial marqué (p1_star) ou bisimplicial (autres)
        bound: Dimension matérialisée pour i1_star et t_lower

    Returns:
        Ensemble bisimplicial marqué ou ensemble simplicial marqué
    """
    if selector == "p1_star":
        if not isinstance(arg, MarkedSimplicialSet):
            raise ParameterError("p1_star attend un ensemble simplicial marqué")
        return p1_star(arg)
    if selector not in SELECTORS:
        raise ParameterError(f"Réindexation inconnue: {selector!r}")
    if isinstance(arg, MarkedSimplicialSet):
        raise ParameterError(f"{selector} attend un ensemble bisimplicial")
    if selector == "i1_star":
        return i1_star(arg, bound)
    return t_lower(arg, bound)
