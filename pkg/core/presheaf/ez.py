"""
Préfaisceaux finis sur Δ (1 axe) ou Δ×Δ (2 axes).

Un préfaisceau fini est présenté par ses générateurs non dégénérés. Chaque
cellule est codée en forme normale d'Eilenberg-Zilber ``(surjections, g)``:
une surjection croissante par axe, appliquée au générateur d'indice ``g``.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from core.presheaf.monotone import (
    Monotone,
    codegeneracy,
    coface,
    compose,
    factor,
    identity,
    is_identity,
    surjections,
)
from core.utils.errors import ParameterError, ValidationError

logger = logging.getLogger(__name__)

Degree = Tuple[int, ...]
Ops = Tuple[Monotone, ...]
Cell = Tuple[Ops, int]


@dataclass(frozen=True)
class Generator:
    """
    Générateur non dégénéré.

    Attributes:
        degree: Degré par axe, ex: ``(2,)`` ou ``(1, 0)``
        faces: Pour chaque axe, les faces ``d_0 .. d_n`` en forme normale
        label: Étiquette canonique (unique dans le préfaisceau)
    """
    degree: Degree
    faces: Tuple[Tuple[Cell, ...], ...]
    label: Hashable


class Presheaf(ABC):
    """
    Interface commune des préfaisceaux présentés et des vues paresseuses.

    Les opérateurs agissent à droite: ``act(x, degree, ops)`` renvoie
    ``x·ops`` où ``ops`` contient une application croissante par axe.
    """

    axes: int = 1
    name: str = ""

    @abstractmethod
    def cells(self, degree: Degree) -> Sequence[Hashable]:
        """Cellules de degré donné, en ordre canonique."""

    @abstractmethod
    def act(self, cell: Hashable, degree: Degree, ops: Ops) -> Hashable:
        """Action d'une application croissante par axe."""

    def _memo(self, name: str) -> dict:
        # caches rangés à part pour ne jamais masquer une méthode
        return self.__dict__.setdefault("_memos", {}).setdefault(name, {})

    def face(self, cell: Hashable, degree: Degree, axis: int, i: int) -> Hashable:
        ops = tuple(coface(d, i) if a == axis else identity(d) for a, d in enumerate(degree))
        return self.act(cell, degree, ops)

    def degeneracy(self, cell: Hashable, degree: Degree, axis: int, j: int) -> Hashable:
        ops = tuple(codegeneracy(d, j) if a == axis else identity(d) for a, d in enumerate(degree))
        return self.act(cell, degree, ops)

    def vertex(self, cell: Hashable, degree: Degree, coords: Tuple[int, ...]) -> Hashable:
        return self.act(cell, degree, tuple((c,) for c in coords))

    def is_degenerate_along(self, cell: Hashable, degree: Degree, axis: int) -> bool:
        lower = tuple(d - 1 if a == axis else d for a, d in enumerate(degree))
        for j in range(degree[axis]):
            if self.degeneracy(self.face(cell, degree, axis, j), lower, axis, j) == cell:
                return True
        return False

    def is_marked(self, cell: Hashable, degree: Degree) -> bool:
        """Marquage plat: seules les cellules dégénérées le long de l'axe 0."""
        if degree[0] != 1:
            raise ParameterError(f"Marquage défini en degré horizontal 1, reçu {degree}")
        return self.is_degenerate_along(cell, degree, 0)

    def face_key(self, cell: Hashable, degree: Degree) -> Tuple:
        return tuple(
            self.face(cell, degree, a, i)
            for a in range(self.axes)
            if degree[a] > 0
            for i in range(degree[a] + 1)
        )

    def face_index(self, degree: Degree) -> Dict[Tuple, List[Hashable]]:
        """Index ``faces -> cellules`` (cache écrit une seule fois)."""
        memo = self._memo("_face_indexes")
        if degree not in memo:
            index: Dict[Tuple, List[Hashable]] = {}
            for cell in self.cells(degree):
                index.setdefault(self.face_key(cell, degree), []).append(cell)
            memo.setdefault(degree, index)
        return memo[degree]

    def count(self, degree: Degree) -> int:
        return len(self.cells(degree))


class FinitePresheaf(Presheaf):
    """
    Préfaisceau fini présenté par générateurs (forme d'Eilenberg-Zilber).
    """

    def __init__(self, axes: int, generators: Sequence[Generator], name: str = "",
                 truncation: Optional[Tuple[int, ...]] = None):
        """
        Initialise et valide la présentation.

        Args:
            axes: Nombre d'axes (1 ou 2)
            generators: Générateurs, chaque face renvoyant à un indice antérieur
            name: Nom d'affichage
            truncation: Bornes au-delà desquelles la présentation est tronquée
        """
        if axes not in (1, 2):
            raise ParameterError(f"Nombre d'axes non supporté: {axes}")
        self.axes = axes
        self.generators: Tuple[Generator, ...] = tuple(generators)
        self.name = name
        self.truncation = truncation
        self._by_label: Dict[Hashable, int] = {}
        for index, gen in enumerate(self.generators):
            self._validate_generator(index, gen)
            if gen.label in self._by_label:
                raise ValidationError(f"Étiquette dupliquée: {gen.label!r}")
            self._by_label[gen.label] = index

    def _validate_generator(self, index: int, gen: Generator) -> None:
        if len(gen.degree) != self.axes or len(gen.faces) != self.axes:
            raise ValidationError(f"Générateur {gen.label!r}: arité incorrecte")
        for a, d in enumerate(gen.degree):
            expected = d + 1 if d > 0 else 0
            if len(gen.faces[a]) != expected:
                raise ValidationError(f"Générateur {gen.label!r}: {expected} faces attendues sur l'axe {a}")
            for ops, h in gen.faces[a]:
                if not 0 <= h < index:
                    raise ValidationError(f"Générateur {gen.label!r}: face vers un indice invalide {h}")

    def _spawn(self, generators: Sequence[Generator], name: str,
               truncation: Optional[Tuple[int, ...]] = None) -> "FinitePresheaf":
        return FinitePresheaf(self.axes, generators, name, truncation)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name or '?'}: {len(self.generators)} générateurs>"

    def index_of(self, label: Hashable) -> int:
        try:
            return self._by_label[label]
        except KeyError:
            raise ParameterError(f"Générateur inconnu dans {self.name}: {label!r}") from None

    def has_label(self, label: Hashable) -> bool:
        return label in self._by_label

    def generator_cell(self, g: int) -> Cell:
        return tuple(identity(d) for d in self.generators[g].degree), g

    def degree_of(self, cell: Cell) -> Degree:
        return tuple(len(s) - 1 for s in cell[0])

    def is_nondegenerate(self, cell: Cell) -> bool:
        return all(is_identity(s) for s in cell[0])

    def nondegenerate(self, degree: Degree) -> List[int]:
        return [g for g, gen in enumerate(self.generators) if gen.degree == degree]

    def max_degree(self) -> Tuple[int, ...]:
        if not self.generators:
            return tuple(-1 for _ in range(self.axes))
        return tuple(max(gen.degree[a] for gen in self.generators) for a in range(self.axes))

    def cells(self, degree: Degree) -> List[Cell]:
        memo = self._memo("_cells")
        if degree not in memo:
            found: List[Cell] = []
            for g, gen in enumerate(self.generators):
                if any(gen.degree[a] > degree[a] for a in range(self.axes)):
                    continue
                per_axis = [surjections(degree[a], gen.degree[a]) for a in range(self.axes)]
                for surjs in cartesian(*per_axis):
                    found.append((tuple(surjs), g))
            memo.setdefault(degree, found)
        return memo[degree]

    def act(self, cell: Cell, degree: Degree, ops: Ops) -> Cell:
        memo = self._memo("_act")
        key = (cell, ops)
        if key in memo:
            return memo[key]
        surjs, g = cell
        rhos, iotas = [], []
        for a in range(self.axes):
            rho, iota = factor(compose(surjs[a], ops[a]))
            rhos.append(rho)
            iotas.append(iota)
        inner, h = self._restrict(g, tuple(iotas))
        result = (tuple(compose(inner[a], rhos[a]) for a in range(self.axes)), h)
        memo.setdefault(key, result)
        return result

    def _restrict(self, g: int, iotas: Tuple[Monotone, ...]) -> Cell:
        """Forme normale de ``g·ι`` pour des injections ``ι`` (une par axe)."""
        memo = self._memo("_restrict")
        key = (g, iotas)
        if key in memo:
            return memo[key]
        gen = self.generators[g]
        axis = next((a for a in range(self.axes) if iotas[a] != identity(gen.degree[a])), None)
        if axis is None:
            result = self.generator_cell(g)
        else:
            # retire le plus grand indice absent de l'image
            image = set(iotas[axis])
            missing = max(i for i in range(gen.degree[axis] + 1) if i not in image)
            rest = tuple(v if v < missing else v - 1 for v in iotas[axis])
            face_cell = gen.faces[axis][missing]
            face_degree = tuple(d - 1 if a == axis else d for a, d in enumerate(gen.degree))
            reduced = tuple(rest if a == axis else iotas[a] for a in range(self.axes))
            result = self.act(face_cell, face_degree, reduced)
        memo.setdefault(key, result)
        return result


class SimplicialSet(FinitePresheaf):
    """
    Ensemble simplicial fini présenté par ses simplexes non dégénérés.
    """

    def __init__(self, generators: Sequence[Generator], name: str = "",
                 truncation: Optional[int] = None):
        super().__init__(1, generators, name, (truncation,) if truncation is not None else None)

    def _spawn(self, generators, name, truncation=None) -> "SimplicialSet":
        bound = truncation[0] if truncation else None
        return SimplicialSet(generators, name, bound)

    @property
    def truncated_at(self) -> Optional[int]:
        return self.truncation[0] if self.truncation else None

    @property
    def dimension_bound(self) -> int:
        return self.max_degree()[0]

    def simplices(self, k: int) -> List[Cell]:
        return self.cells((k,))

    def d(self, cell: Cell, i: int) -> Cell:
        return self.face(cell, self.degree_of(cell), 0, i)

    def s(self, cell: Cell, j: int) -> Cell:
        return self.degeneracy(cell, self.degree_of(cell), 0, j)

    def vertices(self) -> List[int]:
        return self.nondegenerate((0,))

    def vertex_of(self, cell: Cell, k: int) -> int:
        """Indice du générateur du k-ième sommet d'une cellule."""
        return self.act(cell, self.degree_of(cell), ((k,),))[1]

    def nondegenerate_counts(self) -> Tuple[int, ...]:
        top = self.dimension_bound
        return tuple(len(self.nondegenerate((k,))) for k in range(top + 1))


class PresheafBuilder:
    """
    Construit une présentation à partir d'étiquettes de faces.

    Les générateurs doivent être ajoutés après leurs faces.
    """

    def __init__(self, axes: int = 1):
        self.axes = axes
        self.generators: List[Generator] = []
        self.index: Dict[Hashable, int] = {}

    def add(self, label: Hashable, degree: Degree, faces: Sequence[Sequence[Tuple[Ops, Hashable]]]) -> int:
        """
        Ajoute un générateur.

        Args:
            label: Étiquette du générateur
            degree: Degré par axe
            faces: Pour chaque axe, les faces ``(surjections, étiquette)``

        Returns:
            Indice du générateur ajouté
        """
        resolved = tuple(
            tuple((tuple(ops), self.index[face_label]) for ops, face_label in axis_faces)
            for axis_faces in faces
        )
        self.generators.append(Generator(tuple(degree), resolved, label))
        self.index[label] = len(self.generators) - 1
        return self.index[label]

    def build(self, name: str = "", truncation: Optional[Tuple[int, ...]] = None) -> FinitePresheaf:
        if self.axes == 1:
            return SimplicialSet(self.generators, name, truncation[0] if truncation else None)
        return FinitePresheaf(self.axes, self.generators, name, truncation)


def materialize(view: Presheaf, bounds: Tuple[int, ...], name: str = "") -> Tuple[FinitePresheaf, Dict]:
    """
    Matérialise une vue paresseuse en présentation finie tronquée.

    Les générateurs sont les cellules non dégénérées de degré ``<= bounds``,
    étiquetées ``(degré, cellule de la vue)``.

    Args:
        view: Vue à matérialiser
        bounds: Borne par axe
        name: Nom du résultat

    Returns:
        Tuple (présentation, table ``(degré, cellule) -> forme normale``)
    """
    axes = view.axes
    degrees = sorted(cartesian(*[range(b + 1) for b in bounds]), key=lambda d: (sum(d), d))
    builder = PresheafBuilder(axes)
    normal: Dict[Tuple[Degree, Hashable], Cell] = {}
    for degree in degrees:
        for x in view.cells(degree):
            split = _degenerate_split(view, x, degree)
            if split is None:
                faces = []
                for a in range(axes):
                    lower = tuple(d - 1 if b == a else d for b, d in enumerate(degree))
                    axis_faces = []
                    for i in range(degree[a] + 1 if degree[a] > 0 else 0):
                        ops, h = normal[(lower, view.face(x, degree, a, i))]
                        axis_faces.append((ops, builder.generators[h].label))
                    faces.append(axis_faces)
                g = builder.add((degree, x), degree, faces)
                normal[(degree, x)] = (tuple(identity(d) for d in degree), g)
            else:
                axis, j, z = split
                lower = tuple(d - 1 if b == axis else d for b, d in enumerate(degree))
                ops, h = normal[(lower, z)]
                lifted = tuple(
                    compose(ops[b], codegeneracy(lower[b], j)) if b == axis else ops[b]
                    for b in range(axes)
                )
                normal[(degree, x)] = (lifted, h)
    presheaf = builder.build(name or getattr(view, "name", ""), tuple(bounds))
    logger.debug(f"Vue matérialisée {presheaf.name}: {len(presheaf.generators)} générateurs")
    return presheaf, normal


def _degenerate_split(view: Presheaf, x: Hashable, degree: Degree):
    for a in range(view.axes):
        lower = tuple(d - 1 if b == a else d for b, d in enumerate(degree))
        for j in range(degree[a]):
            z = view.face(x, degree, a, j)
            if view.degeneracy(z, lower, a, j) == x:
                return a, j, z
    return None


def check_simplicial_identities(presheaf: Presheaf, up_to: Tuple[int, ...]) -> List[str]:
    """
    Vérifie exhaustivement les identités simpliciales jusqu'au degré donné.

    Returns:
        Liste des violations (vide si tout est correct)
    """
    violations: List[str] = []
    axes = presheaf.axes

    def shift(degree, axis, delta):
        return tuple(d + delta if a == axis else d for a, d in enumerate(degree))

    for degree in cartesian(*[range(b + 1) for b in up_to]):
        for x in presheaf.cells(degree):
            for a in range(axes):
                n = degree[a]
                low = shift(degree, a, -1)
                high = shift(degree, a, 1)
                if n >= 2:
                    low2 = shift(degree, a, -2)
                    for j in range(n + 1):
                        for i in range(j):
                            lhs = presheaf.face(presheaf.face(x, degree, a, j), low, a, i)
                            rhs = presheaf.face(presheaf.face(x, degree, a, i), low, a, j - 1)
                            if lhs != rhs:
                                violations.append(f"d{i}d{j} axe {a} degré {degree}")
                for j in range(n + 1):
                    sx = presheaf.degeneracy(x, degree, a, j)
                    for i in range(n + 2):
                        lhs = presheaf.face(sx, high, a, i)
                        if i in (j, j + 1):
                            rhs = x
                        elif n == 0:
                            continue
                        elif i < j:
                            rhs = presheaf.degeneracy(presheaf.face(x, degree, a, i), low, a, j - 1)
                        else:
                            rhs = presheaf.degeneracy(presheaf.face(x, degree, a, i - 1), low, a, j)
                        if lhs != rhs:
                            violations.append(f"d{i}s{j} axe {a} degré {degree}")
                    for i in range(j + 1):
                        lhs = presheaf.degeneracy(sx, high, a, i)
                        rhs = presheaf.degeneracy(presheaf.degeneracy(x, degree, a, i), high, a, j + 1)
                        if lhs != rhs:
                            violations.append(f"s{i}s{j} axe {a} degré {degree}")
            if axes == 2 and degree[0] > 0 and degree[1] > 0:
                for i in range(degree[0] + 1):
                    for j in range(degree[1] + 1):
                        hv = presheaf.face(presheaf.face(x, degree, 0, i), shift(degree, 0, -1), 1, j)
                        vh = presheaf.face(presheaf.face(x, degree, 1, j), shift(degree, 1, -1), 0, i)
                        if hv != vh:
                            violations.append(f"d{i}^h d{j}^v degré {degree}")
    return violations


def _vertex_image(presheaf: FinitePresheaf, cell: Cell, degree: Degree) -> Dict[Tuple[int, ...], int]:
    """Générateur atteint par chaque sommet ``(c_0, .., c_k)`` d'une cellule."""
    return {
        coords: presheaf.vertex(cell, degree, coords)[1]
        for coords in cartesian(*[range(d + 1) for d in degree])
    }


def check_ez_uniqueness(presheaf: FinitePresheaf, up_to: Tuple[int, ...]) -> List[str]:
    """
    Vérifie l'unicité des formes normales et la cohérence des faces.

    Les sommets de chaque face stockée, calculés à partir de cette face,
    doivent coïncider avec les sommets du générateur privés de la
    coordonnée retirée, calculés à partir du générateur.

    Returns:
        Liste des violations (vide si tout est correct)
    """
    violations: List[str] = []
    for g, gen in enumerate(presheaf.generators):
        image = _vertex_image(presheaf, presheaf.generator_cell(g), gen.degree)
        for a in range(presheaf.axes):
            lower = tuple(d - 1 if b == a else d for b, d in enumerate(gen.degree))
            for i, stored in enumerate(gen.faces[a]):
                expected = {
                    coords: image[tuple(c if b != a or c < i else c + 1 for b, c in enumerate(coords))]
                    for coords in cartesian(*[range(d + 1) for d in lower])
                }
                if _vertex_image(presheaf, stored, lower) != expected:
                    violations.append(f"face {i} axe {a} de {gen.label!r}")
    for degree in cartesian(*[range(b + 1) for b in up_to]):
        seen = set()
        for cell in presheaf.cells(degree):
            if cell in seen:
                violations.append(f"doublon {cell!r}")
            seen.add(cell)
            surjs, g = cell
            rebuilt = presheaf.act(presheaf.generator_cell(g), presheaf.generators[g].degree, surjs)
            if rebuilt != cell:
                violations.append(f"forme normale instable {cell!r}")
        for a in range(presheaf.axes):
            if degree[a] == 0:
                continue
            lower = tuple(d - 1 if b == a else d for b, d in enumerate(degree))
            known = set(presheaf.cells(lower))
            for cell in presheaf.cells(degree):
                for i in range(degree[a] + 1):
                    if presheaf.face(cell, degree, a, i) not in known:
                        violations.append(f"face hors énumération {cell!r}")
    return violations
