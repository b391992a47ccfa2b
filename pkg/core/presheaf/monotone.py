"""
Applications croissantes entre ordinaux finis.

Une application croissante θ: [m] -> [n] est codée par le tuple
``(θ(0), ..., θ(m))``. Les opérateurs simpliciaux agissent à droite:
``x·θ`` envoie un n-simplexe sur un m-simplexe.
"""
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import List, Tuple

Monotone = Tuple[int, ...]


def identity(n: int) -> Monotone:
    return tuple(range(n + 1))


def is_identity(theta: Monotone) -> bool:
    return theta == tuple(range(len(theta)))


def compose(outer: Monotone, inner: Monotone) -> Monotone:
    """Composée ``outer ∘ inner``."""
    return tuple(outer[i] for i in inner)


def coface(n: int, i: int) -> Monotone:
    """δ_i: [n-1] -> [n], qui évite i."""
    return tuple(t if t < i else t + 1 for t in range(n))


def codegeneracy(n: int, j: int) -> Monotone:
    """σ_j: [n+1] -> [n], qui répète j."""
    return tuple(t if t <= j else t - 1 for t in range(n + 2))


def point(value: int) -> Monotone:
    """[0] -> [n] d'image ``value``."""
    return (value,)


def factor(theta: Monotone) -> Tuple[Monotone, Monotone]:
    """
    Factorisation épi-mono ``theta = iota ∘ rho``.

    Returns:
        Tuple (rho surjective, iota injective)
    """
    image = tuple(sorted(set(theta)))
    position = {v: k for k, v in enumerate(image)}
    return tuple(position[v] for v in theta), image


def collapse(sequence: Tuple) -> Tuple[Monotone, Tuple]:
    """
    Regroupe les répétitions consécutives d'une suite.

    Returns:
        Tuple (surjection, suite sans répétition consécutive)
    """
    kept: List = []
    surjection: List[int] = []
    for item in sequence:
        if not kept or kept[-1] != item:
            kept.append(item)
        surjection.append(len(kept) - 1)
    return tuple(surjection), tuple(kept)


@lru_cache(maxsize=None)
def surjections(m: int, k: int) -> Tuple[Monotone, ...]:
    """Toutes les surjections croissantes [m] -> [k], ordre canonique."""
    if k > m or k < 0:
        return ()
    result = []
    for steps in combinations(range(1, m + 1), k):
        value, current = [], 0
        step_set = set(steps)
        for t in range(m + 1):
            if t in step_set:
                current += 1
            value.append(current)
        result.append(tuple(value))
    return tuple(result)


@lru_cache(maxsize=None)
def monotone_maps(p: int, n: int) -> Tuple[Monotone, ...]:
    """Toutes les applications croissantes [p] -> [n]."""
    return tuple(combinations_with_replacement(range(n + 1), p + 1))
