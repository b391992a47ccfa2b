import pytest

from core.dsl.grammar import logical_lines, parse_statement
from core.dsl.runner import run_all
from core.dsl.syntax import Call, Command, Ref, Stage
from core.dsl.workspace import Bounds, parse, print_workspace
from core.utils.errors import DSLSemanticError, DSLSyntaxError

WORKSPACE = """\
# catégories
poset P { ob a b ; le a b }
cat C {
  ob x y ;
  gen f : x -> y
}
rel R = (C, isos)

msset A = sharp(simplex(1))
msset M = mark(simplex(2), [01, 12])
map T = terminal(nerve(P))
map B = terminal(mclassify(A))
map F = classmap(flat(simplex(1)))

classify A bound 2 2
column A 1 bound 2 | homology upto 2 | contractible
lift B against gen(mbe_A, 0, 1, 0)
lift T horn(2,1) simplex(2) expect holds
column-verdict F 1 expect not_equivalent
gen mbe_D 0 0 0 2
"""


def run_text(text, bounds):
    return run_all(parse(text, bounds))


class TestParsing:

    def test_statement_shapes(self):
        command = parse_statement("column A 1 bound 3 | homology upto 2 | pi1", 7)
        assert command == Command("column", (Ref("A"), 1), (3,), None,
                                  (Stage("homology", 2), Stage("pi1")))
        assert command.line == 7
        lift = parse_statement("lift T horn(2,1) simplex(2) expect holds")
        assert lift.operands[1] == Call("horn", (2, 1))
        assert lift.expect == "holds"

    def test_logical_lines_join_blocks_and_drop_comments(self):
        lines = logical_lines("# titre\n\ncat C {\n ob x ;\n}\ncounts simplex(1) # fin\n")
        assert [start for start, _ in lines] == [3, 6]
        assert "#" not in lines[1][1]

    def test_canonical_print_round_trips(self, small_bounds):
        workspace = parse(WORKSPACE, small_bounds)
        text = print_workspace(workspace)
        again = parse(text, small_bounds)
        assert again == workspace
        assert print_workspace(again) == text

    @pytest.mark.parametrize("text, line", [
        ("sset X = simplex(1", 1),
        ("sset A = simplex(1)\n\nsset B = = 2", 3),
        ("classify", 1),
        ("lift T against", 1),
    ])
    def test_syntax_errors_carry_position(self, text, line):
        with pytest.raises(DSLSyntaxError) as info:
            parse(text)
        assert info.value.line == line
        assert info.value.column >= 1

    @pytest.mark.parametrize("text, line, token", [
        ("sset A = simplex(1)\nsset Bad = horn(2,5)", 2, "horn"),
        ("sset A = simplex(1)\nsset A = simplex(2)", 2, "A"),
        ("counts B", 1, "B"),
        ("sset A = sharp(simplex(1))", 1, "A"),
        ("msset M = mark(simplex(2), [03])", 1, "03"),
        ("sset X = simplex(1, 2)", 1, "simplex"),
        ("contractible simplex(1) expect maybe", 1, "maybe"),
        ("homology classify(sharp(simplex(1)))", 1, "classify(sharp(simplex(1)))"),
        ("map T = terminal(simplex(1))\nlift T horn(2,1) simplex(3)", 2, None),
        ("sset S = simplex(1)\ncolumn-verdict S 1", 2, "S"),
    ])
    def test_semantic_errors_carry_line(self, text, line, token):
        with pytest.raises(DSLSemanticError) as info:
            parse(text)
        assert info.value.line == line
        if token is not None:
            assert info.value.token == token

    def test_unknown_generator_family(self):
        with pytest.raises(DSLSemanticError):
            parse("gen mbe_Z 0 1 0")


class TestRunner:

    def test_reports_follow_file_order(self, small_bounds):
        reports = run_text(WORKSPACE, small_bounds)
        assert [r["verb"] for r in reports] == ["classify", "column", "lift", "lift", "column-verdict", "gen"]
        assert [r["line"] for r in reports] == [15, 16, 17, 18, 19, 20]
        assert all(r["ok"] for r in reports)

    def test_classify_table(self, small_bounds):
        report = run_text("msset A = sharp(simplex(1))\nclassify A bound 2 2", small_bounds)[0]
        table = report["result"]["table"]
        assert len(table) == 9
        assert report["result"]["pbound"] == 2

    def test_column_pipeline(self, small_bounds):
        report = run_text("column classify(sharp(simplex(1))) 1 | homology upto 2 | contractible",
                          small_bounds)[0]
        homology_stage, contractible_stage = report["result"]["stages"]
        assert homology_stage["result"]["ranks"][0] == 1
        assert contractible_stage["result"]["status"] == "holds"

    def test_inner_horn_lift_in_a_poset_nerve(self, small_bounds):
        text = "poset P { ob a b ; le a b }\nmap T = terminal(nerve(P))\nlift T horn(2,1) simplex(2)"
        result = run_text(text, small_bounds)[0]["result"]
        assert result["status"] == "holds"
        assert result["lifts"] == result["squares"] == 4
        assert result["unique"]

    def test_expectations_decide_ok(self, small_bounds):
        base = "poset P { ob a b ; le a b }\nmap T = terminal(nerve(P))\n"
        failing, expected = run_text(base + "lift T horn(2,0) simplex(2)\n"
                                            "lift T horn(2,0) simplex(2) expect fails", small_bounds)
        assert failing["result"]["status"] == "fails"
        assert not failing["ok"]
        assert expected["ok"]

    def test_negative_control_without_expectation_fails(self, small_bounds):
        report = run_text("map F = classmap(flat(simplex(1)))\ncolumn-verdict F 1", small_bounds)[0]
        assert report["result"]["status"] == "not_equivalent"
        assert not report["ok"]

    def test_counts_and_marking(self, small_bounds):
        report = run_text("msset M = mark(simplex(2), [01, 12])\ncounts M", small_bounds)[0]
        assert report["result"]["nondegenerate"] == [3, 3, 1]
        assert report["result"]["marked"] == 2

    def test_generator_summary(self, small_bounds):
        result = run_text("gen mbe_A 0 1 0", small_bounds)[0]["result"]
        assert result["spec"]["family"] == "mbe_A"
        assert result["source"]["generators"] == {"0,0": 1}
        assert result["target"]["generators"] == {"0,0": 2, "0,1": 1}

    def test_closure_of_a_natural_marking(self, small_bounds):
        report = run_text("msset N = natural(nerve(indiscrete(2)))\nclosure N", small_bounds)[0]
        assert report["result"]["closed"]
        assert report["ok"]

    def test_command_bounds_override_globals(self):
        reports = run_text("msset A = sharp(simplex(1))\nclassify A bound 1 1", Bounds(3, 3, 3))
        assert len(reports[0]["result"]["table"]) == 4
