"""
Formes standard: simplexes, bords, cornets, troncatures de J.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Hashable

from core.presheaf.constructions import sub_presheaf
from core.presheaf.ez import PresheafBuilder, SimplicialSet
from core.presheaf.maps import PresheafMap
from core.presheaf.monotone import Monotone, collapse, identity
from core.utils.errors import ParameterError

logger = logging.getLogger(__name__)

SHAPE_KINDS = ("simplex", "boundary", "horn", "j_truncated")


@lru_cache(maxsize=None)
def simplex(n: int) -> SimplicialSet:
    """Δⁿ, générateurs étiquetés par les suites strictement croissantes de sommets."""
    if n < 0:
        raise ParameterError(f"simplex: n doit être >= 0 (reçu {n})")
    builder = PresheafBuilder(1)
    for size in range(1, n + 2):
        for face in combinations(range(n + 1), size):
            k = size - 1
            faces = [((identity(k - 1),), face[:i] + face[i + 1:]) for i in range(size)] if k else []
            builder.add(face, (k,), [faces])
    return builder.build(f"Δ^{n}")


@lru_cache(maxsize=None)
def boundary_inclusion(n: int) -> PresheafMap:
    """∂Δⁿ ⊂ Δⁿ (vide pour n = 0)."""
    ambient = simplex(n)
    keep = [g for g, gen in enumerate(ambient.generators) if gen.degree[0] < n]
    _, inclusion = sub_presheaf(ambient, keep, f"∂Δ^{n}")
    return inclusion


@lru_cache(maxsize=None)
def horn_inclusion(n: int, k: int) -> PresheafMap:
    """Λⁿ_k ⊂ Δⁿ."""
    if n < 1 or not 0 <= k <= n:
        raise ParameterError(f"horn: il faut n >= 1 et 0 <= k <= n (reçu n={n}, k={k})")
    ambient = simplex(n)
    missing = tuple(v for v in range(n + 1) if v != k)
    keep = [g for g, gen in enumerate(ambient.generators)
            if gen.degree[0] < n and gen.label != missing]
    _, inclusion = sub_presheaf(ambient, keep, f"Λ^{n}_{k}")
    return inclusion


def boundary(n: int) -> SimplicialSet:
    if n < 0:
        raise ParameterError(f"boundary: n doit être >= 0 (reçu {n})")
    return boundary_inclusion(n).source


def horn(n: int, k: int) -> SimplicialSet:
    return horn_inclusion(n, k).source


@lru_cache(maxsize=None)
def j_truncated(d: int) -> SimplicialSet:
    """
    sk_d J: nerf du groupoïde indiscret sur {0, 1}, tronqué en dimension d.

    Les k-simplexes non dégénérés sont les suites alternées de longueur k+1.
    """
    if d < 0:
        raise ParameterError(f"j_truncated: d doit être >= 0 (reçu {d})")
    builder = PresheafBuilder(1)
    for k in range(d + 1):
        for start in (0, 1):
            word = tuple((start + t) % 2 for t in range(k + 1))
            faces = []
            if k:
                for i in range(k + 1):
                    surj, reduced = collapse(word[:i] + word[i + 1:])
                    faces.append(((surj,), reduced))
            builder.add(word, (k,), [faces])
    return builder.build(f"J≤{d}", (d,))


def vertex_inclusion(x: SimplicialSet, label: Hashable) -> PresheafMap:
    """Inclusion d'un sommet ``{v} ⊂ X``."""
    _, inclusion = sub_presheaf(x, [x.index_of(label)], f"{{{label}}}")
    return inclusion


def edge_inclusion(x: SimplicialSet, label: Hashable) -> PresheafMap:
    """Inclusion ``Δ¹ ⊂ X`` d'une arête non dégénérée."""
    g = x.index_of(label)
    if x.generators[g].degree != (1,):
        raise ParameterError(f"{label!r} n'est pas une arête")
    interval = simplex(1)
    faces = x.generators[g].faces[0]
    images = {(1,): faces[0], (0,): faces[1], (0, 1): x.generator_cell(g)}
    return PresheafMap(interval, x, tuple(images[gen.label] for gen in interval.generators))


def simplex_map(theta: Monotone, n: int) -> PresheafMap:
    """Morphisme ``Δᵐ -> Δⁿ`` induit par ``θ: [m] -> [n]``."""
    m = len(theta) - 1
    source, target = simplex(m), simplex(n)
    images = []
    for gen in source.generators:
        surj, label = collapse(tuple(theta[v] for v in gen.label))
        images.append(((surj,), target.index_of(label)))
    return PresheafMap(source, target, tuple(images))


def make_shape(kind: str, *params: int) -> SimplicialSet:
    """
    Construit une forme nommée.

    Args:
        kind: ``simplex``, ``boundary``, ``horn`` ou ``j_truncated``
        *params: Paramètres entiers de la forme

    Returns:
        Ensemble simplicial correspondant
    """
    arity = {"simplex": 1, "boundary": 1, "horn": 2, "j_truncated": 1}
    if kind not in arity:
        raise ParameterError(f"Forme inconnue: {kind}")
    if len(params) != arity[kind]:
        raise ParameterError(f"{kind} attend {arity[kind]} paramètre(s), reçu {len(params)}")
    if kind == "simplex":
        return simplex(*params)
    if kind == "boundary":
        return boundary(*params)
    if kind == "horn":
        return horn(*params)
    return j_truncated(*params)


def shape_inclusion(kind: str, *params: int) -> PresheafMap:
    """Inclusion canonique d'une forme dans le simplexe ambiant."""
    if kind == "boundary":
        return boundary_inclusion(*params)
    if kind == "horn":
        return horn_inclusion(*params)
    raise ParameterError(f"Pas d'inclusion canonique pour {kind}")
