"""
Atelier: liaisons nommées, évaluation des expressions et validation
sémantique.
"""
import inspect
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional, Tuple

from config.settings import Settings
from core.anodyne.generators import FAMILIES, GeneratorSpec, make_generator
from core.anodyne.lifting import to_terminal
from core.bisimplicial.bisimplicial_set import BisimplicialSet
from core.bisimplicial.operations import box_product, diagonal, marked_row, slice
from core.catkit.category import (
    FiniteCategory,
    RelativeCategory,
    build_category,
    chain_category,
    core,
    functor_category,
    indiscrete_category,
    relative_category,
    terminal_category,
)
from core.catkit.nerve import nerve
from core.classification.diagram import (
    classification_diagram,
    classification_map,
    constant_map,
    marked_classification,
)
from core.classification.reindex import i1_star, p1_star, t_lower
from core.classification.relative import relative_classification
from core.dsl.grammar import parse_statements
from core.dsl.syntax import (
    Binding,
    Call,
    CategoryBlock,
    Command,
    Expr,
    NameList,
    Ref,
    RelBinding,
    Statement,
    print_statement,
)
from core.marked.marked_set import MarkedSimplicialSet, flat, natural_marking, remark
from core.marked.operations import marked_product
from core.presheaf.constructions import coproduct, point, product, skeleton
from core.presheaf.ez import SimplicialSet
from core.presheaf.shapes import boundary, horn, j_truncated, simplex
from core.utils.errors import DSLSemanticError, WorkbenchError

logger = logging.getLogger(__name__)

KINDS = {
    "sset": "ensemble simplicial",
    "msset": "ensemble simplicial marqué",
    "bsset": "ensemble bisimplicial",
    "map": "morphisme",
    "cat": "catégorie",
    "rel": "catégorie relative",
}


@dataclass(frozen=True)
class Bounds:
    """Bornes en vigueur pour une commande."""
    pbound: int
    qbound: int
    jtrunc: int

    @classmethod
    def defaults(cls) -> "Bounds":
        return cls(*Settings.default_bounds())

    @property
    def nerve_dimension(self) -> int:
        return max(3, self.pbound + self.qbound)


def edge_name(label: Hashable) -> str:
    """Nom d'une arête tel qu'écrit dans les listes de marquage."""
    if isinstance(label, tuple) and label and all(isinstance(v, int) and 0 <= v < 10 for v in label):
        return "".join(str(v) for v in label)
    if isinstance(label, tuple) and len(label) == 2 and label[0] == "ch":
        arrow = label[1]
        return "<=".join(str(v) for v in arrow) if isinstance(arrow, tuple) else str(arrow)
    return str(label)


def kind_of(value: Any) -> str:
    if isinstance(value, MarkedSimplicialSet):
        return "msset"
    if isinstance(value, SimplicialSet):
        return "sset"
    if isinstance(value, FiniteCategory):
        return "cat"
    if isinstance(value, RelativeCategory):
        return "rel"
    if isinstance(value, BisimplicialSet):
        return "bsset"
    return "map"


class Evaluator:
    """
    Évalue les expressions d'un atelier sous des bornes données.
    """

    def __init__(self, workspace: "Workspace", bounds: Bounds):
        self.workspace = workspace
        self.bounds = bounds

    def fail(self, message: str, token: Optional[str] = None) -> DSLSemanticError:
        return DSLSemanticError(message, self.workspace.current_line, token)

    def eval(self, expr: Expr) -> Any:
        if isinstance(expr, int):
            return expr
        if isinstance(expr, Ref):
            return self.workspace.value(expr.name, self.bounds)
        if isinstance(expr, NameList):
            return expr.items
        handler = getattr(self, f"_f_{expr.func}", None)
        if handler is None:
            raise self.fail(f"fonction inconnue {expr.func!r}", expr.func)
        try:
            inspect.signature(handler).bind(expr, *expr.args)
        except TypeError:
            raise self.fail(f"mauvaise arité pour {expr.func} ({len(expr.args)} argument(s))", expr.func) from None
        args = [self.eval(a) for a in expr.args] if expr.func != "gen" else list(expr.args)
        try:
            return handler(expr, *args)
        except DSLSemanticError:
            raise
        except WorkbenchError as exc:
            raise self.fail(str(exc), expr.func) from None

    def expect(self, value: Any, kinds: Tuple[str, ...], call: Call) -> Any:
        if kind_of(value) not in kinds:
            wanted = " ou ".join(KINDS[k] for k in kinds)
            raise self.fail(f"{call.func} attend un(e) {wanted}, reçu {KINDS[kind_of(value)]}", call.func)
        return value

    def integer(self, value: Any, call: Call) -> int:
        if not isinstance(value, int):
            raise self.fail(f"{call.func} attend un entier", call.func)
        return value

    # formes
    def _f_simplex(self, call, n):
        return simplex(self.integer(n, call))

    def _f_boundary(self, call, n):
        return boundary(self.integer(n, call))

    def _f_horn(self, call, n, k):
        return horn(self.integer(n, call), self.integer(k, call))

    def _f_jtrunc(self, call, d):
        return j_truncated(self.integer(d, call))

    def _f_point(self, call):
        return point()

    # constructions simpliciales
    def _f_product(self, call, x, y):
        if isinstance(x, MarkedSimplicialSet) and isinstance(y, MarkedSimplicialSet):
            return marked_product(x, y)
        return product(self.expect(x, ("sset",), call), self.expect(y, ("sset",), call))

    def _f_coproduct(self, call, x, y):
        return coproduct(self.expect(x, ("sset",), call), self.expect(y, ("sset",), call)).object

    def _f_skeleton(self, call, x, p):
        return skeleton(self.expect(x, ("sset",), call), self.integer(p, call))[0]

    def _f_nerve(self, call, c, d=None):
        dimension = self.bounds.nerve_dimension if d is None else self.integer(d, call)
        return nerve(self.expect(c, ("cat",), call), dimension)

    # catégories
    def _f_chain(self, call, n):
        return chain_category(self.integer(n, call))

    def _f_indiscrete(self, call, n):
        return indiscrete_category(list(range(self.integer(n, call))), f"I{n}")

    def _f_terminal(self, call, x=None):
        if x is None:
            return terminal_category()
        return to_terminal(x)

    def _f_core(self, call, c):
        return core(self.expect(c, ("cat",), call))

    def _f_fun(self, call, n, c):
        return functor_category(self.integer(n, call), self.expect(c, ("cat",), call))

    # marquages
    def _f_flat(self, call, x):
        return remark(self.expect(x, ("sset", "msset"), call), "flat")

    def _f_sharp(self, call, x):
        return remark(self.expect(x, ("sset", "msset"), call), "sharp")

    def _f_unmark(self, call, x):
        return remark(self.expect(x, ("sset", "msset"), call), "unmark")

    def _f_natural(self, call, x):
        return natural_marking(self.expect(x, ("sset",), call))

    def _f_mark(self, call, x, names):
        x = self.expect(x, ("sset",), call)
        if not isinstance(names, tuple):
            raise self.fail("mark attend une liste d'arêtes", call.func)
        by_name = {edge_name(x.generators[g].label): g for g in x.nondegenerate((1,))}
        unknown = [n for n in names if n not in by_name]
        if unknown:
            raise self.fail(f"arête inconnue dans {x.name}: {unknown[0]}", unknown[0])
        return MarkedSimplicialSet(x, frozenset(by_name[n] for n in names))

    # bisimplicial
    def _f_classify(self, call, m):
        return classification_diagram(self.expect(m, ("msset",), call), self.bounds.pbound, self.bounds.qbound)

    def _f_mclassify(self, call, m):
        return marked_classification(self.expect(m, ("msset",), call), self.bounds.pbound, self.bounds.qbound)

    def _f_relclassify(self, call, r):
        return relative_classification(self.expect(r, ("rel",), call), self.bounds.pbound, self.bounds.qbound)

    def _f_box(self, call, x, y):
        return box_product(self.expect(x, ("sset", "msset"), call), self.expect(y, ("sset",), call))

    def _f_p1(self, call, m):
        return p1_star(self.expect(m, ("msset",), call))

    def _f_diagonal(self, call, b):
        return diagonal(self.expect(b, ("bsset",), call))

    def _f_column(self, call, b, n):
        return slice(self.expect(b, ("bsset",), call), "column", self.integer(n, call))

    def _f_row(self, call, b, m):
        return marked_row(self.expect(b, ("bsset",), call), self.integer(m, call))

    def _f_i1(self, call, b):
        return i1_star(self.expect(b, ("bsset",), call))

    def _f_tlower(self, call, b):
        return t_lower(self.expect(b, ("bsset",), call))

    # morphismes
    def _f_classmap(self, call, m):
        m = self.expect(m, ("msset",), call)
        return classification_map(constant_map(m, flat(point())), self.bounds.pbound, self.bounds.qbound)

    def _f_mclassmap(self, call, m):
        m = self.expect(m, ("msset",), call)
        return classification_map(constant_map(m, flat(point())), self.bounds.pbound, self.bounds.qbound,
                                  marked=True)

    def _f_gen(self, call, family, *params):
        if not isinstance(family, Ref) or family.name not in FAMILIES:
            raise self.fail(f"famille génératrice inconnue (attendu: {', '.join(FAMILIES)})", str(family))
        values = [self.integer(p, call) for p in params]
        if not 1 <= len(values) <= 4:
            raise self.fail("gen attend 1 à 4 paramètres entiers", call.func)
        spec = generator_spec(family.name, values, self.bounds)
        return make_generator(spec)


def generator_spec(family: str, values: List[int], bounds: Bounds) -> GeneratorSpec:
    """Paramètres ``n m k [d]`` complétés par des zéros et la troncature par défaut."""
    n, m, k, d = (list(values) + [0, 0, 0, None])[:4]
    return GeneratorSpec(family, n, m, k, bounds.jtrunc if d is None else d)


@dataclass
class Workspace:
    """
    Liaisons nommées (ordonnées) et commandes d'un fichier d'atelier.

    Attributes:
        statements: Instructions dans l'ordre du fichier
        bounds: Bornes globales (remplacées commande par commande)
    """
    statements: List[Statement] = field(default_factory=list)
    bounds: Bounds = field(default_factory=Bounds.defaults, compare=False)
    current_line: int = field(default=0, compare=False)
    _definitions: Dict[str, Statement] = field(default_factory=dict, compare=False, repr=False)
    _cache: Dict[Tuple[str, Bounds], Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def bindings(self) -> List[Statement]:
        return [s for s in self.statements if not isinstance(s, Command)]

    @property
    def commands(self) -> List[Command]:
        return [s for s in self.statements if isinstance(s, Command)]

    def define(self, statement: Statement) -> None:
        self.current_line = statement.line
        if isinstance(statement, Command):
            self.statements.append(statement)
            self.check_command(statement)
            return
        if statement.name in self._definitions:
            raise DSLSemanticError(f"nom déjà défini: {statement.name}", statement.line, statement.name)
        self._definitions[statement.name] = statement
        self.statements.append(statement)
        value = self.value(statement.name, self.bounds)
        if isinstance(statement, Binding) and kind_of(value) != statement.kind:
            raise DSLSemanticError(
                f"{statement.name} est déclaré {statement.kind} mais vaut un(e) {KINDS[kind_of(value)]}",
                statement.line, statement.name,
            )

    def value(self, name: str, bounds: Bounds) -> Any:
        """Valeur d'une liaison sous des bornes données (mise en cache)."""
        if name not in self._definitions:
            raise DSLSemanticError(f"nom inconnu: {name}", self.current_line, name)
        key = (name, bounds)
        if key not in self._cache:
            self._cache[key] = self._build(self._definitions[name], bounds)
        return self._cache[key]

    def _build(self, statement: Statement, bounds: Bounds) -> Any:
        saved, self.current_line = self.current_line, statement.line
        try:
            if isinstance(statement, CategoryBlock):
                return self._build_category(statement)
            if isinstance(statement, RelBinding):
                base = self.value(statement.category, bounds)
                if not isinstance(base, FiniteCategory):
                    raise DSLSemanticError(f"{statement.category} n'est pas une catégorie", statement.line,
                                           statement.category)
                try:
                    if isinstance(statement.weak, NameList):
                        return relative_category(base, statement.weak.items, name=statement.name)
                    return relative_category(base, mode=statement.weak, name=statement.name)
                except WorkbenchError as exc:
                    raise DSLSemanticError(str(exc), statement.line, statement.name) from None
            return Evaluator(self, bounds).eval(statement.expr)
        finally:
            self.current_line = saved

    def _build_category(self, block: CategoryBlock) -> FiniteCategory:
        kinds = {"cat": "table", "poset": "poset", "freecat": "free"}
        presentation = {
            "kind": kinds[block.kind],
            "name": block.name,
            "objects": list(block.objects),
            "arrows": [tuple(a) for a in block.arrows],
            "composites": {(g, f): h for g, f, h in block.composites},
            "relations": list(block.relations),
        }
        try:
            return build_category(presentation)
        except WorkbenchError as exc:
            raise DSLSemanticError(str(exc), block.line, block.name) from None

    def evaluate(self, expr: Expr, bounds: Optional[Bounds] = None) -> Any:
        return Evaluator(self, bounds or self.bounds).eval(expr)

    def check_command(self, command: Command) -> None:
        """Vérifie les noms et les types des opérandes d'une commande."""
        from core.dsl.runner import check_operands

        try:
            check_operands(self, command)
        except DSLSemanticError:
            raise
        except WorkbenchError as exc:
            raise DSLSemanticError(str(exc), command.line, command.verb) from None

    def definition(self, name: str) -> Optional[Statement]:
        return self._definitions.get(name)

    def to_text(self) -> str:
        return "".join(print_statement(s) + "\n" for s in self.statements)


def parse(text: str, bounds: Optional[Bounds] = None) -> Workspace:
    """
    Analyse et valide un texte d'atelier.

    Args:
        text: Source UTF-8
        bounds: Bornes globales (défaut: ``Settings``)

    Returns:
        Workspace validé

    Raises:
        DSLSyntaxError: Erreur lexicale ou syntaxique (ligne, colonne)
        DSLSemanticError: Nom inconnu, mauvaise arité, marquage invalide...
    """
    workspace = Workspace(bounds=bounds or Bounds.defaults())
    for statement in parse_statements(text):
        workspace.define(statement)
    logger.info(f"✅ Atelier analysé: {len(workspace.bindings)} liaisons, {len(workspace.commands)} commandes")
    return workspace


def print_workspace(workspace: Workspace) -> str:
    return workspace.to_text()
