"""
Constance catégorique: les dégénérescences de lignes
``(X_{*,0}, S_0) -> (X_{*,n}, S_n)`` sont des équivalences cartésiennes.
"""
import logging
from typing import Dict, List, Optional

from config.settings import Settings
from core.bisimplicial.operations import marked_row_table
from core.invariants.verdicts import EquivalenceVerdict, cartesian_verdict
from core.marked.marked_set import MarkedMap
from core.presheaf.ez import Presheaf
from core.presheaf.maps import PresheafMap
from core.presheaf.monotone import identity

logger = logging.getLogger(__name__)

STATUS = {"equivalent": "holds", "not_equivalent": "fails", "unknown": "unknown"}


def row_degeneracy(x: Presheaf, n: int, bound: int) -> MarkedMap:
    """Morphisme de lignes induit par l'unique application ``[n] -> [0]``."""
    source, _ = marked_row_table(x, 0, bound)
    target, table = marked_row_table(x, n, bound)
    constant = tuple(0 for _ in range(n + 1))
    images = []
    for gen in source.underlying.generators:
        (k,), cell = gen.label
        images.append(table[((k,), x.act(cell, (k, 0), (identity(k), constant)))])
    return MarkedMap(PresheafMap(source.underlying, target.underlying, tuple(images)), source, target)


def categorically_constant_check(x: Presheaf, nbound: Optional[int] = None,
                                 bound: Optional[int] = None) -> List[Dict]:
    """
    Verdict à trois valeurs pour chaque ``n <= nbound``.

    Args:
        x: Ensemble bisimplicial marqué (vue bornée ou présenté)
        nbound: Dernière ligne examinée (défaut: ``qbound`` de la vue)
        bound: Dimension matérialisée des lignes (défaut: ``pbound``)

    Returns:
        Liste de ``{"n", "status", "verdict"}``
    """
    if nbound is None:
        nbound = Settings.DEFAULT_QBOUND if getattr(x, "qbound", None) is None else x.qbound
    if bound is None:
        bound = Settings.DEFAULT_PBOUND if getattr(x, "pbound", None) is None else x.pbound
    results = []
    for n in range(nbound + 1):
        verdict: EquivalenceVerdict = cartesian_verdict(row_degeneracy(x, n, bound), bound)
        results.append({"n": n, "status": STATUS[verdict.status], "verdict": verdict.to_dict()})
        logger.debug(f"Ligne 0 -> ligne {n} de {x.name}: {verdict.status}")
    return results
