"""
Propriété de relèvement à droite contre les inclusions génératrices.

Les carrés sont énumérés exhaustivement, puis chaque relèvement est cherché
par retour arrière à images imposées. Contre un diagramme de classification
marqué, le problème est transposé par adjonction en un problème d'extension
d'ensembles simpliciaux marqués.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterator, List, Optional, Tuple, Union

from config.settings import Settings
from core.anodyne.generators import BoxInclusion, MarkedInclusion
from core.bisimplicial.bisimplicial_set import MarkedBisimplicialSet
from core.catkit.nerve import detect_nerve
from core.classification.diagram import MarkedClassificationDiagram
from core.marked.marked_set import MarkedMap, MarkedSimplicialSet, flat
from core.presheaf.constructions import point, to_point
from core.presheaf.ez import Presheaf, SimplicialSet
from core.presheaf.maps import MarkPredicate, PresheafMap, is_monomorphism, iter_maps
from core.presheaf.monotone import identity
from core.utils.errors import BoundsError, ParameterError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TerminalMap:
    """Morphisme d'un ensemble bisimplicial (vue ou présenté) vers le point."""
    source: Presheaf


def to_terminal(x):
    """
    Morphisme vers l'objet terminal de la catégorie de ``x``.

    Returns:
        MarkedMap vers (Δ⁰)♭, PresheafMap vers Δ⁰ ou TerminalMap
    """
    if isinstance(x, MarkedSimplicialSet):
        terminal = flat(point())
        return MarkedMap(to_point(x.underlying, terminal.underlying), x, terminal)
    if isinstance(x, SimplicialSet):
        return to_point(x)
    return TerminalMap(x)


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    """
    Carré commutatif ``top: A -> X``, ``bottom: B -> Y`` au-dessus de
    ``inclusion: A ⊂ B`` et ``projection: X -> Y``.

    Attributes:
        inclusion: Inclusion ``A ⊂ B``
        target: X
        top: Images des générateurs de A dans X
        projection: ``X -> Y`` (None: Y terminal)
        bottom: Images des générateurs de B dans Y
        marked: Générateurs marqués de B
        target_marked: Prédicat de marquage de X
    """
    inclusion: PresheafMap
    target: Presheaf
    top: Tuple[Hashable, ...]
    projection: Optional[PresheafMap] = None
    bottom: Optional[Tuple[Hashable, ...]] = None
    marked: FrozenSet[int] = frozenset()
    target_marked: Optional[MarkPredicate] = None

    def validate(self) -> None:
        if self.projection is None:
            return
        for g, image in enumerate(self.inclusion.images):
            if self.projection.apply(self.top[g]) != self.bottom[image[1]]:
                raise ValidationError(f"Carré non commutatif en {self.inclusion.source.generators[g].label!r}")

    def lifts(self) -> Iterator[Tuple[Hashable, ...]]:
        """Relèvements ``B -> X``, en ordre canonique."""
        fixed = {cell[1]: self.top[g] for g, cell in enumerate(self.inclusion.images)}
        constraint = None
        if self.projection is not None:
            projection, bottom = self.projection, self.bottom

            def constraint(g, cell, images):
                return projection.apply(cell) == bottom[g]

        return iter_maps(self.inclusion.target, self.target, fixed=fixed,
                         source_marked=self.marked, target_marked=self.target_marked,
                         constraint=constraint)

    def count_lifts(self, limit: Optional[int] = None) -> int:
        count = 0
        for _ in self.lifts():
            count += 1
            if limit is not None and count >= limit:
                break
        return count

    def describe(self) -> Dict:
        source = self.inclusion.source
        return {"top": {str(gen.label): str(self.top[g]) for g, gen in enumerate(source.generators)}}


@dataclass(frozen=True)
class LiftVerdict:
    """
    Attributes:
        status: ``holds``, ``fails`` ou ``unknown``
        lifts: Relèvements trouvés (au plus deux comptés par carré)
        squares: Nombre de carrés examinés
        unique: Chaque carré a exactement un relèvement
        witness: Premier carré sans relèvement
        truncation: Troncature de J utilisée, le cas échéant
        exact: Le verdict vaut pour le générateur non tronqué
        note: Précision (transposition, bornes insuffisantes...)
    """
    status: str
    lifts: int = 0
    squares: int = 0
    unique: bool = False
    witness: Optional[Dict] = None
    truncation: Optional[int] = None
    exact: bool = True
    note: str = ""

    def to_dict(self) -> Dict:
        return {
            "status": self.status,
            "lifts": self.lifts,
            "squares": self.squares,
            "unique": self.unique,
            "witness": self.witness,
            "truncation": self.truncation,
            "exact": self.exact,
            "note": self.note,
        }


def _degenerate_edges(x: Presheaf) -> MarkPredicate:
    """Marquage minimal d'une vue non marquée: cellules horizontalement dégénérées."""
    def predicate(cell, degree) -> bool:
        m = degree[1]
        return any(x.act(c, (0, m), ((0, 0), identity(m))) == cell for c in x.cells((0, m)))
    return predicate


def _count(problem: LiftingProblem) -> int:
    return problem.count_lifts(limit=2)


def _solve(problems: List[LiftingProblem]) -> List[int]:
    if Settings.THREADS > 1 and len(problems) > 1:
        with ThreadPoolExecutor(max_workers=Settings.THREADS) as pool:
            return list(pool.map(_count, problems))
    return [_count(p) for p in problems]


def _squares(inclusion: PresheafMap, x: Presheaf, a_marked: FrozenSet[int], x_pred: Optional[MarkPredicate],
             b_marked: FrozenSet[int], projection: Optional[PresheafMap] = None,
             y: Optional[Presheaf] = None, y_pred: Optional[MarkPredicate] = None) -> List[LiftingProblem]:
    problems = []
    for top in iter_maps(inclusion.source, x, source_marked=a_marked, target_marked=x_pred):
        if projection is None:
            problems.append(LiftingProblem(inclusion, x, top, marked=b_marked, target_marked=x_pred))
            continue
        fixed = {cell[1]: projection.apply(top[g]) for g, cell in enumerate(inclusion.images)}
        for bottom in iter_maps(inclusion.target, y, fixed=fixed, source_marked=b_marked, target_marked=y_pred):
            problem = LiftingProblem(inclusion, x, top, projection, bottom, b_marked, x_pred)
            problem.validate()
            problems.append(problem)
    return problems


def _verdict(problems: List[LiftingProblem], truncation: Optional[int], exact: bool, note: str) -> LiftVerdict:
    counts = _solve(problems)
    failing = next((p for p, c in zip(problems, counts) if c == 0), None)
    status = "holds" if failing is None else "fails"
    return LiftVerdict(
        status=status,
        lifts=sum(counts),
        squares=len(problems),
        unique=failing is None and all(c == 1 for c in counts),
        witness=failing.describe() if failing is not None else None,
        truncation=truncation,
        exact=exact,
        note=note,
    )


def _too_short(x: SimplicialSet, dimension: int) -> bool:
    return x.truncated_at is not None and x.truncated_at < dimension


def _simplicial(f: Union[PresheafMap, MarkedMap], i: Union[PresheafMap, MarkedInclusion],
                truncation: Optional[int], note: str) -> LiftVerdict:
    if isinstance(i, MarkedInclusion):
        inclusion, a_marked, b_marked = i.map, i.source.marked, i.target.marked
    else:
        inclusion, a_marked, b_marked = i, frozenset(), frozenset()
    if isinstance(f, MarkedMap):
        projection, x, y = f.map, f.source.underlying, f.target.underlying
        x_pred, y_pred = f.source.is_marked, f.target.is_marked
    else:
        projection, x, y = f, f.source, f.target
        x_pred, y_pred = None, None
        if b_marked:
            raise ParameterError("Inclusion marquée contre un morphisme non marqué")
    dimension = inclusion.target.dimension_bound
    if _too_short(x, dimension) or _too_short(y, dimension):
        logger.warning(f"⚠️ Troncature insuffisante pour des simplexes de dimension {dimension}")
        return LiftVerdict("unknown", truncation=truncation, exact=False,
                           note=f"{note}troncature de la cible < {dimension}".strip())
    problems = _squares(inclusion, x, a_marked, x_pred, b_marked, projection, y, y_pred)
    exact = truncation is None or (truncation >= 3 and detect_nerve(x).success)
    return _verdict(problems, truncation, exact, note)


def has_rlp(f, i, transpose: bool = True) -> LiftVerdict:
    """
    Décide si ``f`` a la propriété de relèvement à droite contre ``i``.

    Args:
        f: ``PresheafMap``/``MarkedMap`` simplicial, ou ``TerminalMap`` d'un
            ensemble bisimplicial
        i: Inclusion simpliciale, ``MarkedInclusion`` ou ``BoxInclusion``
        transpose: Transposer par adjonction contre ``(t⁺)^! X̄``

    Returns:
        LiftVerdict; ``unknown`` si les bornes matérialisées ne suffisent pas

    Raises:
        ParameterError: Combinaison de morphismes non prise en charge
    """
    if isinstance(i, PresheafMap) and not is_monomorphism(i):
        raise ParameterError("has_rlp: i doit être une inclusion")
    if not isinstance(i, BoxInclusion):
        if isinstance(f, TerminalMap):
            raise ParameterError("has_rlp: un morphisme bisimplicial requiert une inclusion en boîte")
        verdict = _simplicial(f, i, None, "")
        logger.info(f"Relèvement: {verdict.status} ({verdict.squares} carrés)")
        return verdict
    if not isinstance(f, TerminalMap):
        raise ParameterError("has_rlp: seuls les morphismes vers le point sont pris en charge en bisimplicial")
    truncation = i.truncation
    x = f.source
    if transpose and isinstance(x, MarkedClassificationDiagram):
        verdict = _simplicial(to_terminal(x.source), i.transpose(), truncation, "transposé ")
        logger.info(f"Relèvement {x.name} (transposé): {verdict.status} ({verdict.squares} carrés)")
        return verdict
    x_pred = x.is_marked if isinstance(x, MarkedBisimplicialSet) else _degenerate_edges(x)
    try:
        problems = _squares(i.map, x, i.source.marked, x_pred, i.target.marked)
        verdict = _verdict(problems, truncation, truncation is None, "")
    except BoundsError as exc:
        logger.warning(f"⚠️ Relèvement indécidé dans les bornes: {exc}")
        return LiftVerdict("unknown", truncation=truncation, exact=False, note=str(exc))
    logger.info(f"Relèvement {x.name}: {verdict.status} ({verdict.squares} carrés)")
    return verdict


def lifting_report(f, inclusions: Dict[str, object], transpose: bool = True) -> List[Dict]:
    """Verdicts de relèvement contre une famille nommée d'inclusions."""
    report = []
    for name, i in inclusions.items():
        verdict = has_rlp(f, i, transpose)
        report.append({"generator": name, **verdict.to_dict()})
    return report
