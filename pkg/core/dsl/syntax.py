"""
Arbre syntaxique du langage d'atelier et impression canonique.

L'impression est l'inverse de l'analyse: ``parse(print_workspace(ws)) == ws``
(les numéros de ligne ne participent pas à l'égalité).
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class NameList:
    items: Tuple[str, ...]


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Expr", ...] = ()


Expr = Union[Ref, NameList, Call, int]


@dataclass(frozen=True)
class Binding:
    """``sset X = expr`` (et msset, bsset, map, cat)."""
    kind: str
    name: str
    expr: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CategoryBlock:
    """
    Bloc ``cat``/``poset``/``freecat``.

    Attributes:
        kind: ``cat``, ``poset`` ou ``freecat``
        objects: Noms des objets
        arrows: Générateurs ``(nom, source, cible)``
        composites: ``(g, f, g∘f)`` (tables ``cat`` seulement)
        relations: Paires ``a <= b`` (``poset`` seulement)
    """
    kind: str
    name: str
    objects: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...] = ()
    composites: Tuple[Tuple[str, str, str], ...] = ()
    relations: Tuple[Tuple[str, str], ...] = ()
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class RelBinding:
    """``rel R = (C, [f, g])``, ``(C, isos)`` ou ``(C, all)``."""
    name: str
    category: str
    weak: Union[NameList, str]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Stage:
    """Étape de pipeline après ``column``/``row``."""
    name: str
    upto: Optional[int] = None


@dataclass(frozen=True)
class Command:
    verb: str
    operands: Tuple[Expr, ...]
    bounds: Tuple[int, ...] = ()
    upto: Optional[int] = None
    stages: Tuple[Stage, ...] = ()
    expect: Optional[str] = None
    line: int = field(default=0, compare=False)


Statement = Union[Binding, CategoryBlock, RelBinding, Command]


def print_expr(expr: Expr) -> str:
    if isinstance(expr, bool):
        raise TypeError("Booléen inattendu dans une expression")
    if isinstance(expr, int):
        return str(expr)
    if isinstance(expr, Ref):
        return expr.name
    if isinstance(expr, NameList):
        return "[" + ", ".join(expr.items) + "]"
    return f"{expr.func}(" + ", ".join(print_expr(a) for a in expr.args) + ")"


def _print_block(block: CategoryBlock) -> str:
    items = ["ob " + " ".join(block.objects)]
    items += [f"gen {name} : {src} -> {tgt}" for name, src, tgt in block.arrows]
    items += [f"comp {g} {f} = {h}" for g, f, h in block.composites]
    items += [f"le {a} {b}" for a, b in block.relations]
    return f"{block.kind} {block.name} {{ " + " ; ".join(items) + " }"


def _print_command(command: Command) -> str:
    parts = [command.verb]
    operands = [print_expr(o) for o in command.operands]
    if command.verb == "lift" and len(operands) == 2:
        parts += [operands[0], "against", operands[1]]
    else:
        parts += operands
    if command.upto is not None:
        parts += ["upto", str(command.upto)]
    if command.bounds:
        parts += ["bound"] + [str(b) for b in command.bounds]
    for stage in command.stages:
        parts.append("|")
        parts.append(stage.name)
        if stage.upto is not None:
            parts += ["upto", str(stage.upto)]
    if command.expect:
        parts += ["expect", command.expect]
    return " ".join(parts)


def print_statement(statement: Statement) -> str:
    """Forme textuelle canonique d'une instruction."""
    if isinstance(statement, Binding):
        return f"{statement.kind} {statement.name} = {print_expr(statement.expr)}"
    if isinstance(statement, CategoryBlock):
        return _print_block(statement)
    if isinstance(statement, RelBinding):
        weak = print_expr(statement.weak) if isinstance(statement.weak, NameList) else statement.weak
        return f"rel {statement.name} = ({statement.category}, {weak})"
    return _print_command(statement)
