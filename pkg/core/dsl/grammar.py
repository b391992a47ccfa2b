"""
Grammaire pyparsing du langage d'atelier (orienté ligne).

Une instruction occupe une ligne; un bloc entre accolades peut s'étendre
sur plusieurs lignes. ``#`` introduit un commentaire.
"""
import logging
from typing import List, Tuple

import pyparsing as pp

from core.dsl.syntax import (
    Binding,
    Call,
    CategoryBlock,
    Command,
    NameList,
    Ref,
    RelBinding,
    Stage,
    Statement,
)
from core.utils.errors import DSLSyntaxError

logger = logging.getLogger(__name__)

BINDING_KINDS = ("sset", "msset", "bsset", "map", "cat")
VERBS = (
    "classify", "table", "column-verdict", "row-verdict", "column", "row", "homology", "pi1",
    "contractible", "counts", "maps", "nervecheck", "closure", "lift", "gen", "constant", "crosscheck",
)
STAGES = ("homology", "pi1", "contractible", "counts", "nervecheck")
RESERVED = ("bound", "upto", "expect", "against")

_IDENT_CHARS = pp.identbodychars + "-"


def _keyword(word: str) -> pp.Keyword:
    return pp.Keyword(word, ident_chars=_IDENT_CHARS)


IDENT = pp.Regex(r"(?!(?:" + "|".join(RESERVED) + r")(?![A-Za-z0-9_\-]))[A-Za-z_](?:[A-Za-z0-9_]|-(?!>))*").set_name("identifiant")
INT = pp.Regex(r"-?\d+").set_parse_action(lambda t: int(t[0])).set_name("entier")
ITEM = pp.Regex(r"[^\s,;:\[\](){}|]+").set_name("élément")

LBRACK, RBRACK, LPAR, RPAR, LBRACE, RBRACE = map(pp.Suppress, "[]()" + "{}")
COMMA, SEMI, COLON, EQUALS, PIPE = map(pp.Suppress, ",;:=|")
ARROW = pp.Suppress("->")

expr = pp.Forward().set_name("expression")
name_list = (LBRACK + pp.Opt(pp.DelimitedList(ITEM)) + RBRACK).set_parse_action(
    lambda t: NameList(tuple(t)))
call = (IDENT("func") + LPAR + pp.Group(pp.Opt(pp.DelimitedList(expr)))("args") + RPAR).set_parse_action(
    lambda t: Call(t.func, tuple(t.args)))
ref = IDENT.copy().set_parse_action(lambda t: Ref(t[0]))
expr <<= call | name_list | INT | ref

binding = (pp.MatchFirst([_keyword(k) for k in BINDING_KINDS])("kind") + IDENT("name") + EQUALS
           + pp.Group(expr)("expr"))

ob_item = _keyword("ob") + pp.Group(pp.OneOrMore(ITEM))("objects")
gen_item = _keyword("gen") + pp.Group(ITEM + COLON + ITEM + ARROW + ITEM)("arrow")
comp_item = _keyword("comp") + pp.Group(ITEM + ITEM + EQUALS + ITEM)("composite")
le_item = _keyword("le") + pp.Group(ITEM + ITEM)("relation")
block_item = pp.Group(ob_item | gen_item | comp_item | le_item)
block = (pp.MatchFirst([_keyword(k) for k in ("cat", "poset", "freecat")])("kind") + IDENT("name")
         + LBRACE + pp.Group(pp.Opt(pp.DelimitedList(block_item, delim=";")))("items") + RBRACE)

rel = (_keyword("rel") + IDENT("name") + EQUALS + LPAR + IDENT("category") + COMMA
       + pp.Group(name_list | _keyword("isos") | _keyword("all"))("weak") + RPAR)

bound_1 = _keyword("bound") + INT("b1")
bound_2 = _keyword("bound") + INT("b1") + INT("b2")
upto = _keyword("upto") + INT("upto")
expect = _keyword("expect") + pp.Regex(r"[a-z_]+")("expect")
stage = pp.Group(PIPE + pp.MatchFirst([_keyword(s) for s in STAGES])("stage")
                 + pp.Opt(_keyword("upto") + INT("stage_upto")))


def _verb(word: str) -> pp.ParserElement:
    return _keyword(word)("verb")


operand = pp.Group(expr)
commands = {
    "classify": operand("a") + pp.Opt(bound_2),
    "table": operand("a") + pp.Opt(bound_2),
    "column": operand("a") + INT("index") + pp.Opt(bound_1) + pp.Group(pp.ZeroOrMore(stage))("stages"),
    "row": operand("a") + INT("index") + pp.Opt(bound_1) + pp.Group(pp.ZeroOrMore(stage))("stages"),
    "homology": operand("a") + pp.Opt(upto),
    "pi1": operand("a"),
    "contractible": operand("a") + pp.Opt(expect),
    "counts": operand("a"),
    "maps": operand("a") + operand("b"),
    "nervecheck": operand("a"),
    "closure": operand("a"),
    "lift": ref("a") + ((_keyword("against") + operand("b")) | (operand("b") + operand("c"))) + pp.Opt(expect),
    "gen": ref("a") + INT("n") + INT("m") + INT("k") + pp.Opt(INT("d")),
    "column-verdict": ref("a") + INT("index") + pp.Opt(bound_1) + pp.Opt(expect),
    "row-verdict": ref("a") + INT("index") + pp.Opt(bound_1) + pp.Opt(expect),
    "constant": operand("a") + pp.Opt(upto) + pp.Opt(bound_1) + pp.Opt(expect),
    "crosscheck": ref("a") + pp.Opt(bound_2),
}
command = pp.MatchFirst([_verb(v) + commands[v] for v in VERBS])

statement = (block | rel | binding | command) + pp.StringEnd()


def _single(value):
    if isinstance(value, pp.ParseResults):
        return value[0]
    return value


def _to_block(result: pp.ParseResults, line: int) -> CategoryBlock:
    objects, arrows, composites, relations = [], [], [], []
    for item in result["items"]:
        if "objects" in item:
            objects.extend(item["objects"])
        elif "arrow" in item:
            arrows.append(tuple(item["arrow"]))
        elif "composite" in item:
            composites.append(tuple(item["composite"]))
        else:
            relations.append(tuple(item["relation"]))
    return CategoryBlock(result["kind"], result["name"], tuple(objects), tuple(arrows),
                         tuple(composites), tuple(relations), line)


def _to_command(result: pp.ParseResults, line: int) -> Command:
    verb = result["verb"]
    if verb == "gen":
        operands = [_single(result["a"]), result["n"], result["m"], result["k"]]
        if "d" in result:
            operands.append(result["d"])
    else:
        operands = [_single(result[key]) for key in ("a", "index", "b", "c") if key in result]
    bounds = tuple(result[key] for key in ("b1", "b2") if key in result)
    stages = tuple(Stage(s["stage"], s.get("stage_upto")) for s in result.get("stages", []))
    return Command(verb, tuple(operands), bounds, result.get("upto"), stages, result.get("expect"), line)


def _convert(result: pp.ParseResults, line: int) -> Statement:
    head = result[0]
    if head in ("cat", "poset", "freecat") and "items" in result:
        return _to_block(result, line)
    if head == "rel":
        weak = _single(result["weak"])
        return RelBinding(result["name"], result["category"], weak if isinstance(weak, NameList) else str(weak), line)
    if "verb" in result:
        return _to_command(result, line)
    return Binding(result["kind"], result["name"], _single(result["expr"]), line)


def logical_lines(text: str) -> List[Tuple[int, str]]:
    """
    Regroupe le texte en instructions logiques ``(ligne de début, texte)``.
    """
    statements = []
    buffer, start, depth = [], 0, 0
    for number, raw in enumerate(text.split("\n"), start=1):
        content = raw.split("#", 1)[0]
        if not buffer and not content.strip():
            continue
        if not buffer:
            start = number
        buffer.append(content)
        depth += content.count("{") - content.count("}")
        if depth <= 0:
            statements.append((start, "\n".join(buffer)))
            buffer, depth = [], 0
    if buffer:
        statements.append((start, "\n".join(buffer)))
    return statements


def parse_statement(source: str, line: int = 1) -> Statement:
    """
    Analyse une instruction.

    Raises:
        DSLSyntaxError: Avec ligne et colonne de l'erreur
    """
    try:
        result = statement.parse_string(source, parse_all=True)
    except pp.ParseBaseException as exc:
        raise DSLSyntaxError(f"syntaxe invalide ({exc.msg})", line + exc.lineno - 1, exc.col) from None
    return _convert(result, line)


def parse_statements(text: str) -> List[Statement]:
    parsed = [parse_statement(source, line) for line, source in logical_lines(text)]
    logger.debug(f"{len(parsed)} instructions analysées")
    return parsed
