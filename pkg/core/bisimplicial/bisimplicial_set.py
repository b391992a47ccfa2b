"""
Ensembles bisimpliciaux (marqués), présentés ou paresseux.

Le premier indice est horizontal (colonnes X_n = X_{n,*}), le second
vertical (lignes X_{*,m}). Le marquage est un sous-ensemble simplicial de
la colonne 1 contenant les cellules horizontalement dégénérées.
"""
import logging
from abc import abstractmethod
from typing import FrozenSet, Hashable, List, Optional, Tuple

from core.presheaf.ez import Cell, Degree, FinitePresheaf, Generator, Ops, Presheaf
from core.utils.errors import BoundsError, ValidationError

logger = logging.getLogger(__name__)


class BisimplicialSet(Presheaf):
    """
    Préfaisceau sur Δ×Δ, éventuellement borné en bidegré.
    """

    axes = 2

    def __init__(self, name: str = "", pbound: Optional[int] = None, qbound: Optional[int] = None):
        self.name = name
        self.pbound = pbound
        self.qbound = qbound

    def check_bounds(self, degree: Degree) -> None:
        n, m = degree
        if (self.pbound is not None and n > self.pbound) or (self.qbound is not None and m > self.qbound):
            raise BoundsError(
                f"Bidegré ({n},{m}) hors des bornes ({self.pbound},{self.qbound}) de {self.name}"
            )

    def marked_cells(self, q: int) -> List[Hashable]:
        return [c for c in self.cells((1, q)) if self.is_marked(c, (1, q))]

    @property
    def is_flat(self) -> bool:
        return True


class MarkedBisimplicialSet(BisimplicialSet):
    """Ensemble bisimplicial dont le marquage de la colonne 1 est explicite."""

    @abstractmethod
    def is_marked(self, cell: Hashable, degree: Degree) -> bool:
        """Appartenance de la cellule ``(1, q)`` au marquage."""

    @property
    def is_flat(self) -> bool:
        return False


class FiniteBisimplicialSet(MarkedBisimplicialSet):
    """
    Ensemble bisimplicial présenté par générateurs, avec générateurs marqués.

    Attributes:
        presentation: Préfaisceau présenté à deux axes
        marked: Générateurs de bidegré ``(1, q)`` marqués
    """

    def __init__(self, presentation: FinitePresheaf, marked: FrozenSet[int] = frozenset(), name: str = ""):
        if presentation.axes != 2:
            raise ValidationError("Une présentation à deux axes est requise")
        super().__init__(name or presentation.name)
        self.presentation = presentation
        self.marked = frozenset(marked)
        self._validate_marking()

    def _validate_marking(self) -> None:
        for g in self.marked:
            gen = self.presentation.generators[g]
            if gen.degree[0] != 1:
                raise ValidationError(f"Marquage hors de la colonne 1: {gen.label!r}")
            for (h_surj, _), h in gen.faces[1]:
                if h_surj != (0, 0) and h not in self.marked:
                    raise ValidationError(f"Marquage non stable par faces verticales: {gen.label!r}")

    @property
    def generators(self) -> Tuple[Generator, ...]:
        return self.presentation.generators

    def cells(self, degree: Degree) -> List[Cell]:
        return self.presentation.cells(degree)

    def act(self, cell: Cell, degree: Degree, ops: Ops) -> Cell:
        return self.presentation.act(cell, degree, ops)

    def is_marked(self, cell: Cell, degree: Degree) -> bool:
        surjs, g = cell
        if len(surjs[0]) != 2:
            raise BoundsError("Marquage défini en colonne 1 uniquement")
        return surjs[0] == (0, 0) or g in self.marked

    @property
    def is_flat(self) -> bool:
        return not self.marked


class BisimplicialView(BisimplicialSet):
    """
    Vue paresseuse bornée: les cellules sont calculées à la demande et
    mémorisées (caches écrits une seule fois).
    """

    def __init__(self, name: str, pbound: int, qbound: int):
        super().__init__(name, pbound, qbound)

    def cells(self, degree: Degree) -> List[Hashable]:
        self.check_bounds(degree)
        memo = self._memo("_cells")
        if degree not in memo:
            memo.setdefault(degree, self._compute_cells(degree))
        return memo[degree]

    def act(self, cell: Hashable, degree: Degree, ops: Ops) -> Hashable:
        memo = self._memo("_act")
        key = (cell, degree, ops)
        if key not in memo:
            memo.setdefault(key, self._compute_act(cell, degree, ops))
        return memo[key]

    @abstractmethod
    def _compute_cells(self, degree: Degree) -> List[Hashable]:
        """Énumération des cellules d'un bidegré."""

    @abstractmethod
    def _compute_act(self, cell: Hashable, degree: Degree, ops: Ops) -> Hashable:
        """Action des opérateurs."""


class MarkedView(BisimplicialView, MarkedBisimplicialSet):
    """Vue paresseuse dont le marquage est défini par la sous-classe."""

    @abstractmethod
    def is_marked(self, cell: Hashable, degree: Degree) -> bool:
        """Appartenance au marquage."""

    @property
    def is_flat(self) -> bool:
        return False


class FilteredView(BisimplicialView):
    """
    Sous-ensemble bisimplicial défini par un prédicat stable par opérateurs.
    Le marquage est hérité du parent.
    """

    def __init__(self, parent: Presheaf, predicate, name: str, pbound: Optional[int] = None,
                 qbound: Optional[int] = None):
        super().__init__(name,
                         pbound if pbound is not None else getattr(parent, "pbound", None),
                         qbound if qbound is not None else getattr(parent, "qbound", None))
        self.parent = parent
        self.predicate = predicate

    def _compute_cells(self, degree: Degree) -> List[Hashable]:
        return [c for c in self.parent.cells(degree) if self.predicate(c, degree)]

    def _compute_act(self, cell, degree, ops):
        return self.parent.act(cell, degree, ops)

    def is_marked(self, cell, degree) -> bool:
        return self.parent.is_marked(cell, degree)

    @property
    def is_flat(self) -> bool:
        return getattr(self.parent, "is_flat", True)


class UnmarkedView(BisimplicialView):
    """Oubli du marquage (marquage plat)."""

    def __init__(self, parent: Presheaf):
        super().__init__(f"unmark({parent.name})", getattr(parent, "pbound", None),
                         getattr(parent, "qbound", None))
        self.parent = parent

    def _compute_cells(self, degree):
        return self.parent.cells(degree)

    def _compute_act(self, cell, degree, ops):
        return self.parent.act(cell, degree, ops)


def marked_generators(presentation: FinitePresheaf, view: Presheaf) -> FrozenSet[int]:
    """Générateurs d'une matérialisation qui sont marqués dans la vue."""
    return frozenset(
        g for g, gen in enumerate(presentation.generators)
        if gen.degree[0] == 1 and view.is_marked(gen.label[1], gen.degree)
    )
