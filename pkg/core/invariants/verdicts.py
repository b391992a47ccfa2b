"""
Verdicts à trois valeurs: contractibilité, équivalences de colonnes
(homotopie faible) et de lignes (équivalence cartésienne).

Les verdicts sont corrects mais incomplets: ``unknown`` est une réponse
légitime.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

from config.settings import Settings
from core.bisimplicial.operations import marked_row_table
from core.catkit.category import FiniteCategory, Functor, is_equivalence
from core.catkit.nerve import detect_nerve
from core.classification.diagram import ClassificationMap, induced_slice_map
from core.invariants.homology import homology, homology_mismatch
from core.marked.marked_set import MarkedMap
from core.presheaf.ez import SimplicialSet
from core.presheaf.maps import PresheafMap, is_isomorphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContractibilityVerdict:
    """
    Attributes:
        status: ``holds``, ``fails`` ou ``unknown``
        reason: Règle appliquée
        certificate: Objet initial/terminal ou obstruction homologique
        truncation: Troncature de l'entrée (None: exact)
    """
    status: str
    reason: str
    certificate: Dict = field(default_factory=dict)
    truncation: Optional[int] = None

    def to_dict(self) -> Dict:
        return {"status": self.status, "reason": self.reason,
                "certificate": self.certificate, "truncation": self.truncation}


@dataclass(frozen=True)
class EquivalenceVerdict:
    """
    Attributes:
        status: ``equivalent``, ``not_equivalent`` ou ``unknown``
        reason: ``isomorphism``, ``contractible_pair``, ``category_equivalence``,
            ``homology_mismatch``...
        certificate: Certificat ou obstruction finie
        bound: Dimension matérialisée des tranches comparées
    """
    status: str
    reason: str
    certificate: Dict = field(default_factory=dict)
    bound: Optional[int] = None

    def to_dict(self) -> Dict:
        return {"status": self.status, "reason": self.reason,
                "certificate": self.certificate, "bound": self.bound}


def _extremal_object(category: FiniteCategory) -> Optional[Dict]:
    count = len(category.objects)
    for x in range(count):
        if all(len(category.hom(x, y)) == 1 for y in range(count)):
            return {"initial": str(category.objects[x])}
    for x in range(count):
        if all(len(category.hom(y, x)) == 1 for y in range(count)):
            return {"terminal": str(category.objects[x])}
    return None


def contractibility(x: SimplicialSet) -> ContractibilityVerdict:
    """
    Contractibilité d'un ensemble simplicial fini.

    ``holds`` pour le nerf d'une catégorie à objet initial ou final,
    ``fails`` si l'homologie diffère de celle d'un point, ``unknown`` sinon.
    """
    if not x.vertices():
        return ContractibilityVerdict("fails", "empty", {"vertices": 0}, x.truncated_at)
    detection = detect_nerve(x)
    if detection.success:
        extremal = _extremal_object(detection.category)
        if extremal is not None:
            return ContractibilityVerdict("holds", "extremal_object", extremal, x.truncated_at)
    profile = homology(x)
    if not profile.is_point():
        k = next(k for k in profile.exact_degrees()
                 if profile.ranks[k] != (1 if k == 0 else 0) or profile.torsion[k])
        return ContractibilityVerdict("fails", "homology",
                                      {"degree": k, "rank": profile.ranks[k], "torsion": list(profile.torsion[k])},
                                      x.truncated_at)
    return ContractibilityVerdict("unknown", "no_rule", {"homology": profile.to_dict()}, x.truncated_at)


def _induced_functor(f: PresheafMap, source: FiniteCategory, target: FiniteCategory,
                     source_edges: Dict, target_edges: Dict) -> Functor:
    arrow_edge = {a: e for e, a in source_edges.items()}
    vertex_object = {v: i for i, v in enumerate(f.target.vertices())}
    on_objects = tuple(vertex_object[f.images[v][1]] for v in f.source.vertices())
    on_arrows = tuple(target_edges[f.apply(arrow_edge[a])] for a in range(len(source.arrows)))
    return Functor(source, target, on_objects, on_arrows)


def _natural(marked: MarkedMap, which: str, detection) -> bool:
    side = marked.source if which == "source" else marked.target
    category = detection.category
    expected = frozenset(e[1] for e, a in detection.edge_arrow.items()
                         if side.underlying.is_nondegenerate(e) and category.is_iso(a))
    return expected == side.marked


def cartesian_verdict(f: MarkedMap, bound: Optional[int] = None) -> EquivalenceVerdict:
    """
    Verdict d'équivalence cartésienne pour un morphisme marqué fini.

    Règles (dans l'ordre): isomorphisme marqué; nerfs à marquage naturel et
    équivalence de catégories; obstruction homologique; sinon ``unknown``.
    """
    if is_isomorphism(f.map, f.source.marked, f.target.marked):
        return EquivalenceVerdict("equivalent", "isomorphism",
                                  {"generators": len(f.map.images)}, bound)
    left, right = detect_nerve(f.source.underlying), detect_nerve(f.target.underlying)
    if left.success and right.success and _natural(f, "source", left) and _natural(f, "target", right):
        functor = _induced_functor(f.map, left.category, right.category, left.edge_arrow, right.edge_arrow)
        decided = is_equivalence(functor)
        return EquivalenceVerdict("equivalent" if decided else "not_equivalent", "category_equivalence",
                                  {"objects": [len(left.category.objects), len(right.category.objects)],
                                   "arrows": [len(left.category.arrows), len(right.category.arrows)]},
                                  bound)
    obstruction = homology_mismatch(homology(f.source.underlying), homology(f.target.underlying))
    if obstruction is not None:
        return EquivalenceVerdict("not_equivalent", "homology_mismatch", obstruction, bound)
    return EquivalenceVerdict("unknown", "no_rule", {}, bound)


def weak_equivalence_verdict(f: PresheafMap, bound: Optional[int] = None) -> EquivalenceVerdict:
    """Verdict d'équivalence d'homotopie faible pour un morphisme simplicial fini."""
    if is_isomorphism(f):
        return EquivalenceVerdict("equivalent", "isomorphism", {"generators": len(f.images)}, bound)
    first, second = contractibility(f.source), contractibility(f.target)
    if first.status == "holds" and second.status == "holds":
        return EquivalenceVerdict("equivalent", "contractible_pair",
                                  {"source": first.certificate, "target": second.certificate}, bound)
    obstruction = homology_mismatch(homology(f.source), homology(f.target))
    if obstruction is not None:
        return EquivalenceVerdict("not_equivalent", "homology_mismatch", obstruction, bound)
    return EquivalenceVerdict("unknown", "no_rule", {}, bound)


def _slice_bound(f: ClassificationMap, axis: int, bound: Optional[int]) -> int:
    if bound is not None:
        return bound
    declared = getattr(f.source, "qbound" if axis == 0 else "pbound", None)
    if declared is not None:
        return declared
    return Settings.DEFAULT_QBOUND if axis == 0 else Settings.DEFAULT_PBOUND


def column_verdict(f: ClassificationMap, n: int, bound: Optional[int] = None) -> EquivalenceVerdict:
    """
    Compare les colonnes n de la source et de la cible de ``N(f)``.

    Args:
        f: Morphisme de diagrammes de classification
        n: Indice de colonne
        bound: Dimension matérialisée des colonnes (défaut: qbound)

    Returns:
        EquivalenceVerdict valable jusqu'à la dimension ``bound``
    """
    bound = _slice_bound(f, 0, bound)
    induced, _, _ = induced_slice_map(f, "column", n, bound)
    verdict = weak_equivalence_verdict(induced, bound)
    logger.info(f"Colonne {n} de {f.source.name} -> {f.target.name}: {verdict.status}")
    return verdict


def row_verdict(f: ClassificationMap, m: int, bound: Optional[int] = None) -> EquivalenceVerdict:
    """Compare les lignes marquées m de la source et de la cible de ``N(f)``."""
    bound = _slice_bound(f, 1, bound)
    source, _ = marked_row_table(f.source, m, bound)
    target, table = marked_row_table(f.target, m, bound)
    images = tuple(table[((k,), f.apply(cell, (k, m)))]
                   for (k,), cell in (gen.label for gen in source.underlying.generators))
    marked = MarkedMap(PresheafMap(source.underlying, target.underlying, images), source, target)
    verdict = cartesian_verdict(marked, bound)
    logger.info(f"Ligne {m} de {f.source.name} -> {f.target.name}: {verdict.status}")
    return verdict
