import os
import logging
from typing import Dict, Any, List, Optional
from datetime import datetime

from config.settings import Settings
from core.dsl.runner import run_all
from core.dsl.workspace import Bounds, Workspace, parse, print_workspace
from core.ingestion.load_workspace import WorkspaceLoader
from core.preprocessing.normalize_source import SourceNormalizer
from core.rendering.report_to_csv import ReportToCSVConverter
from core.rendering.report_to_json import ReportToJSONConverter
from core.services.acceptance import run_fixtures
from core.utils.errors import DSLSemanticError, DSLSyntaxError, WorkbenchError
from core.utils.helpers import ensure_directory_exists, get_text_hash

logger = logging.getLogger(__name__)


class WorkbenchService:
    """
    Service principal: chargement, analyse et exécution d'ateliers,
    fixtures de recette et rendu des rapports.
    """

    def __init__(self, bounds: Optional[Bounds] = None, output_format: Optional[str] = None):
        """
        Args:
            bounds: Bornes globales (défaut: ``Settings``)
            output_format: ``json`` ou ``csv`` (défaut: ``Settings.OUTPUT_FORMAT``)
        """
        if not Settings.validate_config():
            raise ValueError("Configuration SegalBench invalide. Vérifiez les variables d'environnement.")

        self.bounds = bounds or Bounds.defaults()
        self.output_format = output_format or Settings.OUTPUT_FORMAT
        if self.output_format not in Settings.OUTPUT_FORMATS:
            raise ValueError(f"Format de sortie inconnu: {self.output_format}")

        self.loader = WorkspaceLoader()
        self.normalizer = SourceNormalizer()
        self.json_converter = ReportToJSONConverter()
        self.csv_converter = ReportToCSVConverter()

        logger.debug("WorkbenchService initialisé")

    def load_text(self, file_path: str) -> str:
        """Charge et normalise un fichier d'atelier (lève en cas d'erreur)."""
        loaded = self.loader.load(file_path)
        return self.normalizer.normalize_text(loaded["text"])

    def check_text(self, text: str) -> Dict[str, Any]:
        """
        Analyse seulement (sous-commande ``check``).

        Returns:
            ``{"success", "workspace", "error", "kind", "line"}``
        """
        try:
            workspace = parse(self.normalizer.normalize_text(text), self.bounds)
            logger.info(f"✅ Atelier valide: {len(workspace.bindings)} liaisons, {len(workspace.commands)} commandes")
            return {
                "success": True,
                "workspace": workspace,
                "bindings": len(workspace.bindings),
                "commands": len(workspace.commands),
                "canonical": print_workspace(workspace),
            }
        except (DSLSyntaxError, DSLSemanticError) as e:
            logger.error(f"❌ Atelier invalide: {e}")
            return {"success": False, "error": str(e), "kind": type(e).__name__, "line": e.line}

    def run_text(self, text: str) -> Dict[str, Any]:
        """
        Analyse puis exécute toutes les commandes.

        Returns:
            ``{"success", "reports", "ok", "content", "metadata"}``; ``success``
            est faux pour une erreur d'analyse ou d'exécution
        """
        checked = self.check_text(text)
        if not checked["success"]:
            return {**checked, "reports": [], "ok": False, "content": ""}
        workspace: Workspace = checked["workspace"]
        try:
            reports = run_all(workspace)
        except WorkbenchError as e:
            logger.error(f"❌ Erreur d'exécution: {e}")
            return {"success": False, "error": str(e), "kind": type(e).__name__,
                    "line": getattr(e, "line", None), "reports": [], "ok": False, "content": ""}
        content = self.render(reports, {"bounds": self._bounds_header()})
        ok = all(r["ok"] for r in reports)
        logger.info(f"Exécution terminée le {datetime.now().isoformat()} ({len(reports)} commandes, ok={ok})")
        return {
            "success": True,
            "reports": reports,
            "ok": ok,
            "content": content,
            "metadata": {"commands": len(reports), "sha256": get_text_hash(content)},
        }

    def run_file(self, file_path: str) -> Dict[str, Any]:
        try:
            text = self.load_text(file_path)
        except (OSError, WorkbenchError) as e:
            logger.error(f"❌ Chargement impossible de {file_path}: {e}")
            return {"success": False, "error": str(e), "kind": type(e).__name__, "line": None,
                    "reports": [], "ok": False, "content": ""}
        return self.run_text(text)

    def verify_paper(self, seed: Optional[int] = None, ids: Optional[List[int]] = None) -> Dict[str, Any]:
        """
        Exécute les fixtures de recette.

        Returns:
            ``{"success", "reports", "ok", "content"}``
        """
        try:
            reports = run_fixtures(seed, ids)
        except WorkbenchError as e:
            logger.error(f"❌ Fixture interrompue: {e}")
            return {"success": False, "error": str(e), "reports": [], "ok": False, "content": ""}
        ok = all(r["ok"] for r in reports)
        seed = Settings.SEED if seed is None else seed
        if self.output_format == "csv":
            content = self.csv_converter.render(self._fixture_rows(reports))
        else:
            content = self.json_converter.render(reports, {"seed": seed, "bounds": self._bounds_header()})
        logger.info(f"Recette terminée le {datetime.now().isoformat()}: {sum(r['ok'] for r in reports)}/{len(reports)}")
        return {"success": True, "reports": reports, "ok": ok, "content": content}

    def render(self, reports: List[Dict[str, Any]], header: Optional[Dict[str, Any]] = None) -> str:
        if self.output_format == "csv":
            return self.csv_converter.render(reports)
        return self.json_converter.render(reports, header)

    def save_report(self, content: str, filename: Optional[str] = None) -> str:
        """
        Sauvegarde un rapport rendu dans ``Settings.REPORTS_DIR``.

        Returns:
            Chemin du fichier écrit
        """
        if not filename:
            filename = f"rapport_{datetime.now().strftime('%Y%m%d_%H%M%S')}.{self.output_format}"
        path = filename if os.path.isabs(filename) else os.path.join(Settings.get_reports_path(), filename)
        ensure_directory_exists(os.path.dirname(path))
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)
        logger.info(f"Rapport sauvegardé: {path}")
        return path

    def _bounds_header(self) -> Dict[str, int]:
        return {"pbound": self.bounds.pbound, "qbound": self.bounds.qbound, "jtrunc": self.bounds.jtrunc}

    @staticmethod
    def _fixture_rows(reports: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
        return [{"line": r["id"], "verb": "fixture", "command": r["name"], "ok": r["ok"],
                 "result": {"checks": r["checks"]}} for r in reports]
