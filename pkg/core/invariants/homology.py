"""
Homologie simpliciale entière (chaînes normalisées ou non).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from core.presheaf.ez import Cell, SimplicialSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyProfile:
    """
    Attributes:
        ranks: Rang libre de H_k pour k = 0..top
        torsion: Coefficients de torsion de H_k (chacun > 1, divisant le suivant)
        exact_up_to: Dernier degré exact (None: tous les degrés calculés)
        normalized: Chaînes normalisées
    """
    ranks: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...]
    exact_up_to: Optional[int] = None
    normalized: bool = True
    chain_ranks: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def exact_degrees(self) -> List[int]:
        last = self.top if self.exact_up_to is None else min(self.top, self.exact_up_to)
        return list(range(last + 1))

    def is_point(self) -> bool:
        return all(self.ranks[k] == (1 if k == 0 else 0) and not self.torsion[k] for k in self.exact_degrees())

    def to_dict(self) -> Dict:
        return {
            "ranks": list(self.ranks),
            "torsion": [list(t) for t in self.torsion],
            "exact_up_to": self.exact_up_to,
            "normalized": self.normalized,
        }


def _chains(x: SimplicialSet, k: int, normalized: bool) -> List[Cell]:
    if normalized:
        return [x.generator_cell(g) for g in x.nondegenerate((k,))]
    return list(x.simplices(k))


def boundary_matrix(x: SimplicialSet, k: int, normalized: bool = True) -> np.ndarray:
    """
    Matrice de ``∂_k: C_k -> C_{k-1}`` (colonnes indexées par C_k).
    """
    source = _chains(x, k, normalized)
    target = _chains(x, k - 1, normalized)
    row = {c: i for i, c in enumerate(target)}
    matrix = np.zeros((len(target), len(source)), dtype=np.int64)
    for j, cell in enumerate(source):
        for i in range(k + 1):
            face = x.d(cell, i)
            if face in row:
                matrix[row[face], j] += (-1) ** i
    return matrix


def _invariant_factors(matrix: np.ndarray) -> List[int]:
    if matrix.size == 0 or not matrix.any():
        return []
    snf = smith_normal_form(Matrix(matrix.tolist()), domain=ZZ)
    size = min(snf.shape)
    return [abs(int(snf[i, i])) for i in range(size) if snf[i, i] != 0]


def homology(x: SimplicialSet, top: Optional[int] = None, normalized: bool = True) -> HomologyProfile:
    """
    Homologie entière de X en degrés ``0..top``.

    Args:
        x: Ensemble simplicial fini
        top: Dernier degré calculé (défaut: dimension de X)
        normalized: Quotient par les simplexes dégénérés

    Returns:
        HomologyProfile; si X est tronqué en d, seuls les degrés < d sont exacts
    """
    if top is None:
        top = max(x.dimension_bound, 0)
    factors = {k: _invariant_factors(boundary_matrix(x, k, normalized)) for k in range(1, top + 2)}
    ranks, torsion, chain_ranks = [], [], []
    for k in range(top + 1):
        size = len(_chains(x, k, normalized))
        outgoing = len(factors.get(k, []))
        incoming = factors[k + 1]
        ranks.append(size - outgoing - len(incoming))
        torsion.append(tuple(sorted(f for f in incoming if f > 1)))
        chain_ranks.append(size)
    exact_up_to = None
    if x.truncated_at is not None and x.truncated_at <= top:
        exact_up_to = x.truncated_at - 1
    profile = HomologyProfile(tuple(ranks), tuple(torsion), exact_up_to, normalized, tuple(chain_ranks))
    logger.debug(f"H({x.name}) = {profile.ranks} (torsion {profile.torsion})")
    return profile


def homology_mismatch(first: HomologyProfile, second: HomologyProfile) -> Optional[Dict]:
    """
    Premier degré exact où les deux profils diffèrent.

    Returns:
        Obstruction ``{"degree", "source", "target"}`` ou None
    """
    shared = sorted(set(first.exact_degrees()) & set(second.exact_degrees()))
    for k in shared:
        if first.ranks[k] != second.ranks[k] or first.torsion[k] != second.torsion[k]:
            return {
                "degree": k,
                "source": {"rank": first.ranks[k], "torsion": list(first.torsion[k])},
                "target": {"rank": second.ranks[k], "torsion": list(second.torsion[k])},
            }
    return None
