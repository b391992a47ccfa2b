"""
Constructions finies: sous-préfaisceaux, squelettes, coproduits, produits,
recollements (pushouts).
"""
import logging
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from core.presheaf.ez import Cell, FinitePresheaf, Generator, SimplicialSet
from core.presheaf.maps import PresheafMap
from core.presheaf.monotone import Monotone, coface, collapse, compose, identity, surjections
from core.utils.errors import ParameterError, ValidationError

logger = logging.getLogger(__name__)


def sub_presheaf(ambient: FinitePresheaf, keep: Iterable[int],
                 name: str = "") -> Tuple[FinitePresheaf, PresheafMap]:
    """
    Sous-préfaisceau engendré par des générateurs (clôture par faces).

    Args:
        ambient: Préfaisceau ambiant
        keep: Indices de générateurs à conserver
        name: Nom du résultat

    Returns:
        Tuple (sous-préfaisceau, inclusion canonique)
    """
    closure = set()
    stack = list(keep)
    while stack:
        g = stack.pop()
        if g in closure:
            continue
        closure.add(g)
        for axis_faces in ambient.generators[g].faces:
            stack.extend(h for _, h in axis_faces)
    order = sorted(closure)
    renumber = {old: new for new, old in enumerate(order)}
    generators = []
    for old in order:
        gen = ambient.generators[old]
        faces = tuple(tuple((ops, renumber[h]) for ops, h in axis_faces) for axis_faces in gen.faces)
        generators.append(Generator(gen.degree, faces, gen.label))
    sub = ambient._spawn(generators, name or f"sub({ambient.name})", ambient.truncation)
    inclusion = PresheafMap(sub, ambient, tuple(ambient.generator_cell(old) for old in order))
    return sub, inclusion


def skeleton(presheaf: FinitePresheaf, p: int) -> Tuple[FinitePresheaf, PresheafMap]:
    """p-squelette: générateurs de degré total ``<= p``."""
    if p < 0:
        raise ParameterError(f"Squelette de degré négatif: {p}")
    keep = [g for g, gen in enumerate(presheaf.generators) if sum(gen.degree) <= p]
    return sub_presheaf(presheaf, keep, f"sk{p}({presheaf.name})")


def empty_like(presheaf: FinitePresheaf) -> Tuple[FinitePresheaf, PresheafMap]:
    return sub_presheaf(presheaf, [], "∅")


def point(axes: int = 1) -> FinitePresheaf:
    """Objet terminal (un unique générateur de degré 0)."""
    gen = Generator(tuple(0 for _ in range(axes)), tuple(() for _ in range(axes)), "*")
    if axes == 1:
        return SimplicialSet([gen], "Δ^0")
    return FinitePresheaf(axes, [gen], "Δ^0⊠Δ^0")


def to_point(presheaf: FinitePresheaf, terminal: Optional[FinitePresheaf] = None) -> PresheafMap:
    terminal = terminal or point(presheaf.axes)
    images = tuple(
        (tuple((0,) * (d + 1) for d in gen.degree), 0) for gen in presheaf.generators
    )
    return PresheafMap(presheaf, terminal, images)


@dataclass(frozen=True, eq=False)
class Coproduct:
    """Somme disjointe avec ses deux injections."""
    object: FinitePresheaf
    left: PresheafMap
    right: PresheafMap


def coproduct(x: FinitePresheaf, y: FinitePresheaf, name: str = "") -> Coproduct:
    if x.axes != y.axes:
        raise ParameterError("Somme de préfaisceaux d'axes différents")
    shift = len(x.generators)
    generators = [Generator(g.degree, g.faces, (0, g.label)) for g in x.generators]
    for gen in y.generators:
        faces = tuple(tuple((ops, h + shift) for ops, h in axis_faces) for axis_faces in gen.faces)
        generators.append(Generator(gen.degree, faces, (1, gen.label)))
    total = x._spawn(generators, name or f"{x.name}⊔{y.name}")
    left = PresheafMap(x, total, tuple(total.generator_cell(g) for g in range(shift)))
    right = PresheafMap(y, total, tuple(total.generator_cell(g + shift) for g in range(len(y.generators))))
    return Coproduct(total, left, right)


class ProductSimplicialSet(SimplicialSet):
    """
    Produit ``X × Y`` présenté par les paires de battements (shuffles).

    Un générateur ``(σ, a, τ, b)`` représente la paire ``(a·σ, b·τ)`` avec
    ``(σ, τ)`` conjointement injective.
    """

    def __init__(self, left: SimplicialSet, right: SimplicialSet, name: str = ""):
        self.left = left
        self.right = right
        self.components: List[Tuple[Monotone, int, Monotone, int]] = []
        self._component_index: Dict[Tuple, int] = {}
        candidates = []
        for a, gen_a in enumerate(left.generators):
            for b, gen_b in enumerate(right.generators):
                p, q = gen_a.degree[0], gen_b.degree[0]
                for m in range(max(p, q), p + q + 1):
                    for sigma in surjections(m, p):
                        for tau in surjections(m, q):
                            if _jointly_injective(sigma, tau):
                                candidates.append((m, a, b, sigma, tau))
        candidates.sort()
        generators: List[Generator] = []
        for m, a, b, sigma, tau in candidates:
            index = len(generators)
            faces = ()
            if m > 0:
                faces = tuple(
                    self._pair_normal_form(
                        left.act(left.generator_cell(a), left.generators[a].degree, (compose(sigma, coface(m, i)),)),
                        right.act(right.generator_cell(b), right.generators[b].degree, (compose(tau, coface(m, i)),)),
                    )
                    for i in range(m + 1)
                )
            label = (sigma, left.generators[a].label, tau, right.generators[b].label)
            generators.append(Generator((m,), (faces,), label))
            self.components.append((sigma, a, tau, b))
            self._component_index[(sigma, a, tau, b)] = index
        truncation = None
        if left.truncated_at is not None or right.truncated_at is not None:
            truncation = min(t for t in (left.truncated_at, right.truncated_at) if t is not None)
        super().__init__(generators, name or f"{left.name}×{right.name}", truncation)

    def _pair_normal_form(self, u: Cell, v: Cell) -> Cell:
        (sigma,), a = u
        (tau,), b = v
        rho, points = collapse(tuple(zip(sigma, tau)))
        sigma2 = tuple(s for s, _ in points)
        tau2 = tuple(t for _, t in points)
        return (rho,), self._component_index[(sigma2, a, tau2, b)]

    def pair_cell(self, u: Cell, v: Cell) -> Cell:
        """Cellule du produit correspondant à la paire ``(u, v)`` de même degré."""
        if len(u[0][0]) != len(v[0][0]):
            raise ValidationError("Paire de simplexes de degrés différents")
        return self._pair_normal_form(u, v)

    def split(self, cell: Cell) -> Tuple[Cell, Cell]:
        """Inverse de ``pair_cell``."""
        (rho,), g = cell
        sigma, a, tau, b = self.components[g]
        return ((compose(sigma, rho),), a), ((compose(tau, rho),), b)

    def projections(self) -> Tuple[PresheafMap, PresheafMap]:
        first = PresheafMap(self, self.left, tuple(((s,), a) for s, a, _, _ in self.components))
        second = PresheafMap(self, self.right, tuple(((t,), b) for _, _, t, b in self.components))
        return first, second


def _jointly_injective(sigma: Monotone, tau: Monotone) -> bool:
    return all((sigma[t], tau[t]) != (sigma[t + 1], tau[t + 1]) for t in range(len(sigma) - 1))


def product(x: SimplicialSet, y: SimplicialSet, name: str = "") -> ProductSimplicialSet:
    """Produit binaire de deux ensembles simpliciaux finis."""
    result = ProductSimplicialSet(x, y, name)
    logger.debug(f"Produit {result.name}: {result.nondegenerate_counts()}")
    return result


def pairing(f: PresheafMap, g: PresheafMap, target: ProductSimplicialSet) -> PresheafMap:
    """Morphisme ``(f, g): Z -> X × Y``."""
    images = tuple(target.pair_cell(u, v) for u, v in zip(f.images, g.images))
    return PresheafMap(f.source, target, images)


def product_map(f: PresheafMap, g: PresheafMap,
                source: Optional[ProductSimplicialSet] = None,
                target: Optional[ProductSimplicialSet] = None) -> PresheafMap:
    """Morphisme ``f × g: X × Y -> X' × Y'``."""
    source = source or product(f.source, g.source)
    target = target or product(f.target, g.target)
    images = []
    for sigma, a, tau, b in source.components:
        u = f.apply(((sigma,), a))
        v = g.apply(((tau,), b))
        images.append(target.pair_cell(u, v))
    return PresheafMap(source, target, tuple(images))


@dataclass(frozen=True, eq=False)
class Pushout:
    """
    Recollement ``X ∪_A B`` avec ses deux morphismes structuraux.

    Attributes:
        object: Ensemble simplicial recollé
        left: ``X -> P``
        right: ``B -> P``
        provenance: Pour chaque générateur de P, ``(côté, cellule)`` représentant
    """
    object: SimplicialSet
    left: PresheafMap
    right: PresheafMap
    provenance: Tuple[Tuple[int, Cell], ...]

    def induced(self, u: PresheafMap, v: PresheafMap) -> PresheafMap:
        """Morphisme induit ``P -> Z`` par un cocône ``(u: X -> Z, v: B -> Z)``."""
        if u.target is not v.target:
            raise ValidationError("Cocône de cibles différentes")
        images = tuple((u if side == 0 else v).apply(cell) for side, cell in self.provenance)
        return PresheafMap(self.object, u.target, images)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def pushout(f: PresheafMap, g: PresheafMap, name: str = "") -> Pushout:
    """
    Recollement de ``f: A -> X`` et ``g: A -> B`` degré par degré.

    Une classe est non dégénérée si tous ses membres le sont.

    Args:
        f: Premier pied
        g: Second pied (même source)
        name: Nom du résultat

    Returns:
        Pushout avec morphismes structuraux et provenance
    """
    if f.source is not g.source:
        raise ValidationError("Les deux pieds du recollement doivent partager leur source")
    x, b, a = f.target, g.target, f.source
    top = max(x.dimension_bound, b.dimension_bound)
    generators: List[Generator] = []
    provenance: List[Tuple[int, Cell]] = []
    # (degré, côté, cellule) -> forme normale dans P
    normal: Dict[Tuple[int, int, Cell], Cell] = {}
    for k in range(top + 1):
        elements = [(0, c) for c in x.cells((k,))] + [(1, c) for c in b.cells((k,))]
        position = {e: i for i, e in enumerate(elements)}
        classes = _UnionFind(len(elements))
        for cell in a.cells((k,)):
            classes.union(position[(0, f.apply(cell))], position[(1, g.apply(cell))])
        members: Dict[int, List[int]] = {}
        for i in range(len(elements)):
            members.setdefault(classes.find(i), []).append(i)
        for root in sorted(members):
            group = [elements[i] for i in members[root]]
            degenerate = [(side, cell) for side, cell in group if not _side(x, b, side).is_nondegenerate(cell)]
            if not degenerate:
                side, cell = group[0]
                faces = ()
                if k > 0:
                    source_set = _side(x, b, side)
                    faces = tuple(normal[(k - 1, side, source_set.face(cell, (k,), 0, i))] for i in range(k + 1))
                index = len(generators)
                label = (side, _side(x, b, side).generators[cell[1]].label)
                generators.append(Generator((k,), (faces,), label))
                provenance.append((side, cell))
                nf = ((identity(k),), index)
            else:
                side, ((sigma,), h) = degenerate[0]
                h_degree = _side(x, b, side).generators[h].degree[0]
                (tau,), p = normal[(h_degree, side, ((identity(h_degree),), h))]
                nf = ((compose(tau, sigma),), p)
            for side, cell in group:
                normal[(k, side, cell)] = nf
    result = SimplicialSet(generators, name or f"{x.name}∪{b.name}")
    left = PresheafMap(x, result, tuple(normal[(gen.degree[0], 0, x.generator_cell(i))]
                                        for i, gen in enumerate(x.generators)))
    right = PresheafMap(b, result, tuple(normal[(gen.degree[0], 1, b.generator_cell(i))]
                                         for i, gen in enumerate(b.generators)))
    logger.debug(f"Recollement {result.name}: {result.nondegenerate_counts()}")
    return Pushout(result, left, right, tuple(provenance))


def _side(x: SimplicialSet, b: SimplicialSet, side: int) -> SimplicialSet:
    return x if side == 0 else b
