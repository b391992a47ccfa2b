import json

import pytest

from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from core.dsl.workspace import Bounds
from core.ingestion.load_workspace import WorkspaceLoader
from core.preprocessing.normalize_source import SourceNormalizer
from core.rendering.report_to_csv import COLUMNS, TABLE_COLUMNS, ReportToCSVConverter
from core.rendering.report_to_json import ReportToJSONConverter
from core.services.workbench_service import WorkbenchService
from core.utils.errors import UnsupportedInputError

GOOD = "msset A = sharp(simplex(1))\nclassify A bound 1 1\ncounts A\n"
FAILING = "poset P { ob a b ; le a b }\nmap T = terminal(nerve(P))\nlift T horn(2,0) simplex(2)\n"
RUNTIME_ERROR = "map T = terminal(simplex(1))\nlift T against gen(mbe_A, 0, 1, 0)\n"


@pytest.fixture
def service(small_bounds):
    return WorkbenchService(small_bounds, "json")


class TestWorkbenchService:

    def test_check_text(self, service):
        result = service.check_text(GOOD)
        assert result["success"]
        assert (result["bindings"], result["commands"]) == (1, 2)
        assert result["canonical"].startswith("msset A = sharp(simplex(1))\n")

    def test_check_text_reports_line(self, service):
        result = service.check_text("sset A = simplex(1)\nsset B = horn(2,5)\n")
        assert not result["success"]
        assert result["kind"] == "DSLSemanticError"
        assert result["line"] == 2

    def test_run_text_is_deterministic(self, service):
        first, second = service.run_text(GOOD), service.run_text(GOOD)
        assert first["success"] and first["ok"]
        assert first["content"] == second["content"]
        assert first["metadata"]["sha256"] == second["metadata"]["sha256"]
        payload = json.loads(first["content"])
        assert payload["bounds"] == {"pbound": 2, "qbound": 2, "jtrunc": 3}
        assert [r["verb"] for r in payload["reports"]] == ["classify", "counts"]

    def test_failed_property_is_not_an_error(self, service):
        result = service.run_text(FAILING)
        assert result["success"]
        assert not result["ok"]

    def test_runtime_error_keeps_line(self, service):
        result = service.run_text(RUNTIME_ERROR)
        assert not result["success"]
        assert result["line"] == 2

    def test_csv_rendering(self, small_bounds):
        content = WorkbenchService(small_bounds, "csv").run_text(GOOD)["content"]
        tables, entries = content.split("\n\n")
        assert tables.splitlines()[0] == ",".join(TABLE_COLUMNS)
        assert len(tables.splitlines()) == 1 + 4
        assert entries.splitlines()[0] == ",".join(COLUMNS)

    def test_verify_paper_subset(self, service):
        result = service.verify_paper(0, [8, 9])
        assert result["success"] and result["ok"]
        assert [r["id"] for r in result["reports"]] == [8, 9]
        assert json.loads(result["content"])["seed"] == 0

    def test_verify_paper_unknown_fixture(self, service):
        result = service.verify_paper(0, [42])
        assert not result["success"]
        assert "42" in result["error"]

    def test_invalid_output_format(self, small_bounds):
        with pytest.raises(ValueError):
            WorkbenchService(small_bounds, "xml")

    def test_save_report(self, service, tmp_path):
        target = tmp_path / "rapports" / "r.json"
        path = service.save_report("{}\n", str(target))
        assert path == str(target)
        assert target.read_text(encoding="utf-8") == "{}\n"


class TestLoaderAndNormalizer:

    def test_load_utf8_with_bom(self, tmp_path):
        path = tmp_path / "a.sb"
        path.write_bytes("\ufeffcounts simplex(1)\n".encode("utf-8"))
        loaded = WorkspaceLoader().load(str(path))
        assert loaded["text"] == "counts simplex(1)\n"
        assert loaded["metadata"]["total_lines"] == 1

    def test_rejections(self, tmp_path):
        wrong = tmp_path / "a.pdf"
        wrong.write_text("counts simplex(1)")
        with pytest.raises(UnsupportedInputError):
            WorkspaceLoader().load(str(wrong))
        latin = tmp_path / "b.sb"
        latin.write_bytes("# catégorie élémentaire\ncounts simplex(1)\n".encode("latin-1"))
        with pytest.raises(UnsupportedInputError):
            WorkspaceLoader().load(str(latin))
        big = tmp_path / "c.txt"
        big.write_text("counts simplex(1)\n")
        with pytest.raises(UnsupportedInputError):
            WorkspaceLoader(max_size_mb=0).load(str(big))

    def test_symbols_are_normalized(self):
        normalizer = SourceNormalizer()
        result = normalizer.normalize("counts Δ(2)\r\ncounts ∂Δ(1)  \ncounts Λ(2,1)\ncat C { ob x y ; gen f : x → y }")
        assert result["normalized_text"] == ("counts simplex(2)\ncounts boundary(1)\ncounts horn(2,1)\n"
                                             "cat C { ob x y ; gen f : x -> y }")
        assert "Symboles unicode remplacés" in result["normalization_steps"]

    def test_plain_text_is_untouched(self):
        text = "# Δ est un simplexe\ncounts simplex(1)\n"
        assert SourceNormalizer().normalize_text(text) == text


class TestRenderers:

    def test_json_is_canonical(self, tmp_path):
        converter = ReportToJSONConverter()
        text = converter.render([{"ok": True, "command": "counts A"}], {"seed": 0})
        assert text.endswith("\n")
        assert text.index('"reports"') < text.index('"seed"')
        assert text.index('"command"') < text.index('"ok"')
        written = converter.convert([], str(tmp_path / "out" / "r.json"))
        assert written["success"]

    def test_csv_flattens_nested_results(self):
        report = {"line": 3, "verb": "homology", "command": "homology A", "ok": True,
                  "result": {"ranks": [1, 0], "torsion": [[], []]}}
        frame = ReportToCSVConverter().frames([report])["entries"]
        assert list(frame["key"]) == ["ranks", "torsion[0]", "torsion[1]"]
        assert list(frame["value"]) == ["[1, 0]", "[]", "[]"]

    def test_empty_csv_has_header(self):
        assert ReportToCSVConverter().render([]) == ",".join(COLUMNS) + "\n"


class TestCommandLine:

    def test_check(self, workspace_file, capsys):
        assert main(["check", str(workspace_file(GOOD))]) == EXIT_OK
        assert capsys.readouterr().out.startswith("ok: 1 liaisons")

    def test_exit_codes(self, workspace_file):
        assert main(["run", str(workspace_file(GOOD)), "--pbound", "2", "--qbound", "2"]) == EXIT_OK
        assert main(["run", str(workspace_file(FAILING))]) == EXIT_FAILED
        assert main(["run", str(workspace_file(RUNTIME_ERROR))]) == EXIT_USAGE
        assert main(["check", str(workspace_file("sset A = simplex(1"))]) == EXIT_USAGE
        assert main(["check", str(workspace_file(GOOD, "a.md"))]) == EXIT_USAGE
        assert main(["run"]) == EXIT_USAGE
        assert main(["run", "x.sb", "--pbound", "-1"]) == EXIT_USAGE

    def test_run_to_file(self, workspace_file, tmp_path):
        output = tmp_path / "rapport.csv"
        code = main(["run", str(workspace_file(GOOD)), "--format", "csv", "--output", str(output)])
        assert code == EXIT_OK
        assert output.read_text(encoding="utf-8").startswith(",".join(TABLE_COLUMNS))

    def test_verify_paper(self, capsys):
        assert main(["verify-paper", "--seed", "0", "--fixture", "9"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert [r["name"] for r in payload["reports"]] == ["negative_control"]
        assert main(["verify-paper", "--fixture", "99"]) == EXIT_USAGE

    def test_verify_paper_output_is_byte_identical(self, capsys):
        outputs = []
        for _ in range(2):
            assert main(["verify-paper", "--fixture", "8", "--fixture", "9"]) == EXIT_OK
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]
