"""
Exécution des commandes d'un atelier: chaque commande produit un rapport
déterministe (données JSON-compatibles) et un drapeau ``ok``.
"""
import logging
from dataclasses import replace
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.anodyne.generators import BoxInclusion, MarkedInclusion, marked_inclusion
from core.anodyne.lifting import TerminalMap, has_rlp
from core.bisimplicial.bisimplicial_set import BisimplicialSet
from core.bisimplicial.operations import bidegree_table, marked_row, slice
from core.catkit.category import RelativeCategory
from core.catkit.nerve import detect_nerve
from core.classification.constant import categorically_constant_check
from core.classification.diagram import (
    ClassificationMap,
    classification_diagram,
    classification_map,
    constant_map,
)
from core.classification.relative import cross_check
from core.dsl.syntax import Binding, Call, Command, Expr, Ref, print_expr, print_statement
from core.dsl.workspace import Bounds, Workspace, kind_of
from core.invariants.fundamental_group import pi1_presentation
from core.invariants.homology import homology
from core.invariants.verdicts import column_verdict, contractibility, row_verdict
from core.marked.marked_set import (
    MarkedMap,
    MarkedSimplicialSet,
    enumerate_marked_maps,
    flat,
    two_out_of_three_violations,
)
from core.presheaf.constructions import point, skeleton
from core.presheaf.ez import SimplicialSet
from core.presheaf.maps import PresheafMap, identity_map, iter_maps
from core.presheaf.shapes import shape_inclusion
from core.utils.errors import DSLSemanticError, WorkbenchError
from core.utils.helpers import describe

logger = logging.getLogger(__name__)

EXPECTATIONS = {
    "contractible": ("holds", "fails", "unknown"),
    "lift": ("holds", "fails", "unknown"),
    "constant": ("holds", "fails", "unknown"),
    "column-verdict": ("equivalent", "not_equivalent", "unknown"),
    "row-verdict": ("equivalent", "not_equivalent", "unknown"),
}
FAILING = {
    "contractible": "fails",
    "lift": "fails",
    "constant": "fails",
    "column-verdict": "not_equivalent",
    "row-verdict": "not_equivalent",
}
SIMPLICIAL = ("sset", "msset")
DIAGRAM = ("msset", "bsset")


def command_bounds(workspace: Workspace, command: Command) -> Bounds:
    """
    Bornes d'évaluation d'une commande: ``bound p q`` remplace les bornes
    globales; pour une tranche, les bornes couvrent l'indice et la dimension
    matérialisée.
    """
    base = workspace.bounds
    verb, bounds = command.verb, command.bounds
    if verb in ("classify", "table", "crosscheck") and bounds:
        return replace(base, pbound=bounds[0], qbound=bounds[1])
    if verb in ("column", "column-verdict"):
        n = command.operands[1]
        depth = bounds[0] if bounds else base.qbound
        return replace(base, pbound=max(base.pbound, n), qbound=max(base.qbound, depth))
    if verb in ("row", "row-verdict"):
        m = command.operands[1]
        depth = bounds[0] if bounds else base.pbound
        return replace(base, pbound=max(base.pbound, depth), qbound=max(base.qbound, m))
    if verb == "constant":
        rows = command.upto if command.upto is not None else base.qbound
        depth = bounds[0] if bounds else base.pbound
        return replace(base, pbound=max(base.pbound, depth), qbound=max(base.qbound, rows))
    return base


def _resolve(workspace: Workspace, expr: Expr) -> Expr:
    """Suit les références jusqu'à l'expression qui les définit."""
    seen = set()
    while isinstance(expr, Ref) and expr.name not in seen:
        seen.add(expr.name)
        statement = workspace.definition(expr.name)
        if not isinstance(statement, Binding):
            break
        expr = statement.expr
    return expr


def _unwrap_marking(expr: Expr) -> Tuple[Optional[str], Expr]:
    if isinstance(expr, Call) and expr.func in ("flat", "sharp") and len(expr.args) == 1:
        return expr.func, expr.args[0]
    return None, expr


def canonical_inclusion(workspace: Workspace, source: Expr, target: Expr, bounds: Bounds):
    """
    Inclusion canonique ``source ⊂ target`` reconnue sur les expressions:
    cornet ou bord dans le simplexe, squelette dans l'ensemble, identité,
    éventuellement sous ``flat``/``sharp``.

    Returns:
        PresheafMap, ou MarkedInclusion si un marquage est précisé
    """
    source_mode, inner_source = _unwrap_marking(_resolve(workspace, source))
    target_mode, inner_target = _unwrap_marking(_resolve(workspace, target))
    inner_source, inner_target = _resolve(workspace, inner_source), _resolve(workspace, inner_target)
    inclusion = None
    if inner_source == inner_target:
        inclusion = identity_map(workspace.evaluate(inner_target, bounds))
    elif isinstance(inner_source, Call) and isinstance(inner_target, Call):
        args = [workspace.evaluate(a, bounds) for a in inner_source.args]
        if inner_source.func in ("horn", "boundary") and inner_target == Call("simplex", (inner_source.args[0],)):
            inclusion = shape_inclusion(inner_source.func, *args)
        elif inner_source.func == "skeleton" and _resolve(workspace, inner_source.args[0]) == inner_target:
            inclusion = skeleton(workspace.evaluate(inner_target, bounds), args[1])[1]
    if inclusion is None:
        raise DSLSemanticError(
            f"pas d'inclusion canonique {print_expr(source)} ⊂ {print_expr(target)}",
            workspace.current_line, print_expr(source),
        )
    if source_mode is None and target_mode is None:
        return inclusion
    return marked_inclusion(inclusion, source_mode or "flat", target_mode or "flat")


def _as_diagram(value: Any, bounds: Bounds) -> BisimplicialSet:
    if isinstance(value, MarkedSimplicialSet):
        return classification_diagram(value, bounds.pbound, bounds.qbound)
    return value


def _as_classification_map(value: Any, bounds: Bounds) -> ClassificationMap:
    if isinstance(value, MarkedSimplicialSet):
        return classification_map(constant_map(value, flat(point())), bounds.pbound, bounds.qbound)
    return value


def _underlying(value: Any) -> SimplicialSet:
    return value.underlying if isinstance(value, MarkedSimplicialSet) else value


def _check_kind(workspace: Workspace, command: Command, value: Any, kinds: Tuple[str, ...], position: int) -> None:
    if kind_of(value) not in kinds:
        raise DSLSemanticError(
            f"{command.verb}: l'opérande {position + 1} doit être de sorte {' ou '.join(kinds)}, "
            f"reçu {kind_of(value)}",
            command.line, print_expr(command.operands[position]),
        )


def check_operands(workspace: Workspace, command: Command) -> None:
    """
    Validation sémantique d'une commande: noms définis, sortes des
    opérandes, attente reconnue.

    Raises:
        DSLSemanticError: Avec le jeton fautif
    """
    verb = command.verb
    if command.expect is not None and command.expect not in EXPECTATIONS.get(verb, ()):
        raise DSLSemanticError(f"{verb}: attente inconnue {command.expect!r}", command.line, command.expect)
    bounds = command_bounds(workspace, command)
    if verb == "gen":
        family, *params = command.operands
        workspace.evaluate(Call("gen", (family, *params)), bounds)
        return
    if verb == "lift":
        f = workspace.evaluate(command.operands[0], bounds)
        if not isinstance(f, (PresheafMap, MarkedMap, TerminalMap)):
            raise DSLSemanticError("lift: le premier opérande doit être un morphisme simplicial ou vers le point",
                                   command.line, print_expr(command.operands[0]))
        if len(command.operands) == 2:
            generator = workspace.evaluate(command.operands[1], bounds)
            if not isinstance(generator, (BoxInclusion, MarkedInclusion)):
                raise DSLSemanticError("lift ... against attend un générateur gen(...)",
                                       command.line, print_expr(command.operands[1]))
        else:
            canonical_inclusion(workspace, command.operands[1], command.operands[2], bounds)
        return
    expected = {
        "classify": DIAGRAM, "table": DIAGRAM, "column": DIAGRAM, "row": DIAGRAM,
        "homology": SIMPLICIAL, "pi1": SIMPLICIAL, "contractible": SIMPLICIAL, "counts": SIMPLICIAL,
        "nervecheck": SIMPLICIAL, "closure": ("msset",), "maps": SIMPLICIAL,
        "column-verdict": ("map", "msset"), "row-verdict": ("map", "msset"),
        "constant": ("bsset",), "crosscheck": ("rel",),
    }[verb]
    value = workspace.evaluate(command.operands[0], bounds)
    _check_kind(workspace, command, value, expected, 0)
    if verb == "maps":
        other = workspace.evaluate(command.operands[1], bounds)
        _check_kind(workspace, command, other, (kind_of(value),), 1)
    if verb in ("column-verdict", "row-verdict") and kind_of(value) == "map" \
            and not isinstance(value, ClassificationMap):
        raise DSLSemanticError(f"{verb}: morphisme de classification attendu (classmap)",
                               command.line, print_expr(command.operands[0]))


def _counts(value: Any) -> Dict:
    x = _underlying(value)
    report = {"name": x.name, "nondegenerate": list(x.nondegenerate_counts()), "truncation": x.truncated_at}
    if isinstance(value, MarkedSimplicialSet):
        report["marked"] = value.nondegenerate_marked()
    return report


def _stage(name: str, upto: Optional[int], value: Any) -> Dict:
    x = _underlying(value)
    if name == "homology":
        return homology(x, upto).to_dict()
    if name == "pi1":
        return pi1_presentation(x).to_dict()
    if name == "contractible":
        return contractibility(x).to_dict()
    if name == "nervecheck":
        return detect_nerve(x).to_dict()
    return _counts(value)


def _generator_summary(generator) -> Dict:
    if isinstance(generator, MarkedInclusion):
        return {"source": _counts(generator.source), "target": _counts(generator.target)}

    def profile(presentation, marked):
        degrees: Dict[str, int] = {}
        for gen in presentation.generators:
            key = ",".join(str(d) for d in gen.degree)
            degrees[key] = degrees.get(key, 0) + 1
        return {"generators": degrees, "marked": len(marked)}

    return {
        "spec": generator.spec.to_dict() if generator.spec else None,
        "source": profile(generator.source.presentation, generator.source.marked),
        "target": profile(generator.target.presentation, generator.target.marked),
    }


def _status_ok(command: Command, status: str) -> bool:
    if command.expect is not None:
        return status == command.expect
    return status != FAILING[command.verb]


def _run_classify(ws, command, bounds, operator_tables: bool) -> Tuple[Dict, bool]:
    x = _as_diagram(ws.evaluate(command.operands[0], bounds), bounds)
    table = bidegree_table(x, bounds.pbound, bounds.qbound, operators=operator_tables)
    return {"name": x.name, "pbound": bounds.pbound, "qbound": bounds.qbound, "table": table}, True


def _run_slice(ws, command, bounds) -> Tuple[Dict, bool]:
    x = _as_diagram(ws.evaluate(command.operands[0], bounds), bounds)
    index = command.operands[1]
    depth = command.bounds[0] if command.bounds else None
    if command.verb == "column":
        value = slice(x, "column", index, depth if depth is not None else bounds.qbound)
    else:
        value = marked_row(x, index, depth if depth is not None else bounds.pbound)
    stages = [{"stage": s.name, "upto": s.upto, "result": _stage(s.name, s.upto, value)} for s in command.stages]
    return {"slice": _counts(value), "stages": stages}, True


def _run_lift(ws, command, bounds) -> Tuple[Dict, bool]:
    f = ws.evaluate(command.operands[0], bounds)
    if len(command.operands) == 2:
        inclusion = ws.evaluate(command.operands[1], bounds)
        against = print_expr(command.operands[1])
    else:
        inclusion = canonical_inclusion(ws, command.operands[1], command.operands[2], bounds)
        against = f"{print_expr(command.operands[1])} ⊂ {print_expr(command.operands[2])}"
    verdict = has_rlp(f, inclusion)
    return {"against": against, **verdict.to_dict()}, _status_ok(command, verdict.status)


def _run_maps(ws, command, bounds) -> Tuple[Dict, bool]:
    x = ws.evaluate(command.operands[0], bounds)
    y = ws.evaluate(command.operands[1], bounds)
    if isinstance(x, MarkedSimplicialSet):
        count = len(enumerate_marked_maps(x, y))
    else:
        count = sum(1 for _ in iter_maps(x, y))
    return {"source": _underlying(x).name, "target": _underlying(y).name, "count": count}, True


def _run_verdict(ws, command, bounds) -> Tuple[Dict, bool]:
    f = _as_classification_map(ws.evaluate(command.operands[0], bounds), bounds)
    index = command.operands[1]
    depth = command.bounds[0] if command.bounds else None
    check = column_verdict if command.verb == "column-verdict" else row_verdict
    verdict = check(f, index, depth)
    return {"index": index, **verdict.to_dict()}, _status_ok(command, verdict.status)


def _run_constant(ws, command, bounds) -> Tuple[Dict, bool]:
    x = ws.evaluate(command.operands[0], bounds)
    depth = command.bounds[0] if command.bounds else bounds.pbound
    rows = categorically_constant_check(x, command.upto if command.upto is not None else bounds.qbound, depth)
    statuses = {r["status"] for r in rows}
    status = "fails" if "fails" in statuses else ("unknown" if "unknown" in statuses else "holds")
    return {"status": status, "rows": rows}, _status_ok(command, status)


def _run_simplicial(ws, command, bounds) -> Tuple[Dict, bool]:
    value = ws.evaluate(command.operands[0], bounds)
    verb = command.verb
    if verb == "homology":
        return homology(_underlying(value), command.upto).to_dict(), True
    if verb == "contractible":
        verdict = contractibility(_underlying(value))
        return verdict.to_dict(), _status_ok(command, verdict.status)
    if verb == "closure":
        violations = two_out_of_three_violations(value)
        return {"violations": violations, "closed": not violations}, not violations
    return _stage(verb, None, value), True


def _run_gen(ws, command, bounds) -> Tuple[Dict, bool]:
    family, *params = command.operands
    return _generator_summary(ws.evaluate(Call("gen", (family, *params)), bounds)), True


def _run_crosscheck(ws, command, bounds) -> Tuple[Dict, bool]:
    relative: RelativeCategory = ws.evaluate(command.operands[0], bounds)
    result = cross_check(relative, bounds.pbound, bounds.qbound)
    return result, result["agrees"]


RUNNERS: Dict[str, Callable] = {
    "classify": lambda ws, c, b: _run_classify(ws, c, b, False),
    "table": lambda ws, c, b: _run_classify(ws, c, b, True),
    "column": _run_slice,
    "row": _run_slice,
    "homology": _run_simplicial,
    "pi1": _run_simplicial,
    "contractible": _run_simplicial,
    "counts": _run_simplicial,
    "nervecheck": _run_simplicial,
    "closure": _run_simplicial,
    "maps": _run_maps,
    "lift": _run_lift,
    "gen": _run_gen,
    "column-verdict": _run_verdict,
    "row-verdict": _run_verdict,
    "constant": _run_constant,
    "crosscheck": _run_crosscheck,
}


def run(workspace: Workspace, command: Command) -> Dict:
    """
    Exécute une commande.

    Args:
        workspace: Atelier validé
        command: Commande de l'atelier

    Returns:
        Rapport ``{"command", "line", "verb", "ok", "result"}``

    Raises:
        DSLSemanticError: Erreur d'un module, avec le contexte de la commande
    """
    bounds = command_bounds(workspace, command)
    text = print_statement(command)
    workspace.current_line = command.line
    try:
        result, ok = RUNNERS[command.verb](workspace, command, bounds)
    except DSLSemanticError:
        raise
    except WorkbenchError as exc:
        raise DSLSemanticError(f"{text}: {exc}", command.line, command.verb) from exc
    if not ok:
        logger.warning(f"⚠️ Vérification en échec: {text}")
    return {"command": text, "line": command.line, "verb": command.verb, "ok": ok, "result": describe(result)}


def run_all(workspace: Workspace) -> List[Dict]:
    """Exécute les commandes dans l'ordre du fichier."""
    reports = [run(workspace, command) for command in workspace.commands]
    logger.info(f"✅ {len(reports)} commandes exécutées")
    return reports
