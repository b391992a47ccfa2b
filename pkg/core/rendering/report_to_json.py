import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.utils.helpers import canonical_json, ensure_directory_exists, get_text_hash

logger = logging.getLogger(__name__)


class ReportToJSONConverter:
    """
    Rendu JSON canonique des rapports (clés triées, indentation de 2,
    saut de ligne final): deux exécutions identiques donnent les mêmes octets.
    """

    def render(self, reports: List[Dict[str, Any]], header: Optional[Dict[str, Any]] = None) -> str:
        """
        Args:
            reports: Rapports de commandes (ou de fixtures)
            header: Champs globaux (bornes, source...)

        Returns:
            Texte JSON
        """
        payload = {**(header or {}), "reports": reports}
        return canonical_json(payload)

    def convert(self, reports: List[Dict[str, Any]], output_path: str,
                header: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Écrit le rendu dans un fichier.

        Returns:
            Dictionnaire avec ``success``, ``output_path`` et l'empreinte du contenu
        """
        try:
            text = self.render(reports, header)
            ensure_directory_exists(str(Path(output_path).parent))
            Path(output_path).write_text(text, encoding="utf-8")
            logger.info(f"✅ Rapport JSON écrit: {output_path}")
            return {"success": True, "output_path": output_path, "sha256": get_text_hash(text)}
        except OSError as e:
            logger.error(f"❌ Écriture du rapport impossible: {e}")
            return {"success": False, "output_path": output_path, "error": str(e)}
