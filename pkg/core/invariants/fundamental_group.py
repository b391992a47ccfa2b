"""
Présentation du groupe fondamental par chemins d'arêtes.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics.fp_groups import FpGroup, simplify_presentation
from sympy.combinatorics.free_groups import free_group

from core.invariants.homology import homology
from core.presheaf.ez import SimplicialSet
from core.utils.errors import ParameterError, UnsupportedInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupPresentation:
    """
    Attributes:
        generators: Générateurs restants après simplification
        relators: Relations restantes
        verdict: ``trivial``, ``nontrivial`` ou ``unknown``
        basepoint: Étiquette du point base
        raw_generators: Nombre d'arêtes hors de l'arbre couvrant
        raw_relators: Nombre de triangles non dégénérés
    """
    generators: Tuple[str, ...]
    relators: Tuple[str, ...]
    verdict: str
    basepoint: Hashable
    raw_generators: int
    raw_relators: int
    exact: bool = True

    def to_dict(self) -> Dict:
        return {
            "generators": list(self.generators),
            "relators": list(self.relators),
            "verdict": self.verdict,
            "raw_generators": self.raw_generators,
            "raw_relators": self.raw_relators,
            "exact": self.exact,
        }


def component(x: SimplicialSet, vertex: int) -> Set[int]:
    """Sommets de la composante connexe de ``vertex``."""
    neighbours: Dict[int, List[int]] = {v: [] for v in x.vertices()}
    for e in x.nondegenerate((1,)):
        cell = x.generator_cell(e)
        a, b = x.vertex_of(cell, 0), x.vertex_of(cell, 1)
        neighbours[a].append(b)
        neighbours[b].append(a)
    seen = {vertex}
    queue = deque([vertex])
    while queue:
        v = queue.popleft()
        for w in neighbours[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def _spanning_tree(x: SimplicialSet, root: int) -> Set[int]:
    """Arêtes non dégénérées d'un arbre couvrant (parcours en largeur)."""
    incident: Dict[int, List[Tuple[int, int]]] = {}
    for e in x.nondegenerate((1,)):
        cell = x.generator_cell(e)
        a, b = x.vertex_of(cell, 0), x.vertex_of(cell, 1)
        incident.setdefault(a, []).append((e, b))
        incident.setdefault(b, []).append((e, a))
    tree: Set[int] = set()
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e, w in incident.get(v, []):
            if w not in seen:
                seen.add(w)
                tree.add(e)
                queue.append(w)
    return tree


def _eliminate_generators(generators: Sequence, relators: Sequence) -> Tuple[List, List]:
    """
    Passe de Tietze gloutonne: tant qu'un générateur n'apparaît qu'une fois
    dans une relation, il est exprimé par le reste de cette relation,
    substitué ailleurs, et la relation est retirée.

    Returns:
        Tuple (générateurs restants, relations non triviales restantes)
    """
    gens = list(generators)
    rels = [r for r in relators if not r.is_identity]
    progress = True
    while progress:
        progress = False
        for r in rels:
            for x in gens:
                if r.generator_count(x) != 1:
                    continue
                symbol = x.array_form[0][0]
                position = 0
                for sym, exp in r.array_form:
                    if sym == symbol:
                        break
                    position += abs(exp)
                before, after = r.subword(0, position), r.subword(position + 1, len(r))
                # r = u·x^ε·v
                if r.exponent_sum(x) == 1:
                    replacement = before ** -1 * after ** -1
                else:
                    replacement = after * before
                rels = [s.eliminate_word(x, replacement) for s in rels if s is not r]
                rels = [s for s in rels if not s.is_identity]
                gens.remove(x)
                progress = True
                break
            if progress:
                break
    return gens, rels


def pi1_presentation(x: SimplicialSet, basepoint: Optional[Hashable] = None) -> GroupPresentation:
    """
    Groupe des chemins d'arêtes d'un ensemble simplicial connexe.

    Args:
        x: Ensemble simplicial fini
        basepoint: Étiquette d'un sommet (défaut: premier sommet)

    Returns:
        GroupPresentation simplifiée (transformations de Tietze) et verdict

    Raises:
        ParameterError: Si le point base n'est pas un sommet de X
        UnsupportedInputError: Si X n'est pas connexe
    """
    vertices = x.vertices()
    if not vertices:
        raise ParameterError(f"pi1: {x.name} est vide")
    if basepoint is None:
        root = vertices[0]
    else:
        if not x.has_label(basepoint) or x.generators[x.index_of(basepoint)].degree != (0,):
            raise ParameterError(f"pi1: {basepoint!r} n'est pas un sommet de {x.name}")
        root = x.index_of(basepoint)
    if len(component(x, root)) != len(vertices):
        raise UnsupportedInputError(f"pi1: {x.name} n'est pas connexe")
    tree = _spanning_tree(x, root)
    loose = [e for e in x.nondegenerate((1,)) if e not in tree]
    exact = x.truncated_at is None or x.truncated_at >= 2
    label = x.generators[root].label
    triangles = x.nondegenerate((2,))
    if not loose:
        return GroupPresentation((), (), "trivial", label, 0, len(triangles), exact)
    names = [f"e{i}" for i in range(len(loose))]
    free, *symbols = free_group(",".join(names))
    letter = {e: s for e, s in zip(loose, symbols)}

    def word(edge_cell):
        if not x.is_nondegenerate(edge_cell):
            return free.identity
        return letter.get(edge_cell[1], free.identity)

    relators = []
    for t in triangles:
        cell = x.generator_cell(t)
        r = word(x.d(cell, 2)) * word(x.d(cell, 0)) * word(x.d(cell, 1)) ** -1
        if r != free.identity:
            relators.append(r)
    simplified = simplify_presentation(FpGroup(free, relators))
    remaining, kept = _eliminate_generators(simplified.generators, simplified.relators)
    gens = tuple(str(g) for g in remaining)
    rels = tuple(str(r) for r in kept)
    if not gens:
        verdict = "trivial"
    else:
        h1 = homology(x, 1)
        verdict = "nontrivial" if h1.ranks[1] > 0 or h1.torsion[1] else "unknown"
    if not exact:
        verdict = "unknown"
    logger.debug(f"π₁({x.name}): {len(gens)} générateurs, {len(rels)} relations -> {verdict}")
    return GroupPresentation(gens, rels, verdict, label, len(loose), len(triangles), exact)
