import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Tuple

import pandas as pd

from core.utils.helpers import ensure_directory_exists, get_text_hash

logger = logging.getLogger(__name__)

COLUMNS = ["line", "verb", "command", "ok", "key", "value"]
TABLE_COLUMNS = ["line", "verb", "command", "ok", "n", "m", "count"]


def _flatten(value: Any, prefix: str = "") -> Iterator[Tuple[str, Any]]:
    if isinstance(value, dict):
        for key in sorted(value):
            yield from _flatten(value[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for i, item in enumerate(value):
            yield from _flatten(item, f"{prefix}[{i}]")
    else:
        yield prefix, value


def _scalar(value: Any) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


class ReportToCSVConverter:
    """
    Rendu CSV des rapports.

    Les tables de bidegrés (``classify``, ``table``) donnent une ligne par
    bidegré; les autres rapports sont aplatis en paires ``clé, valeur``.
    """

    def frames(self, reports: List[Dict[str, Any]]) -> Dict[str, pd.DataFrame]:
        tables, entries = [], []
        for report in reports:
            head = [report.get("line"), report.get("verb"), report.get("command"), report.get("ok")]
            result = report.get("result", {})
            if report.get("verb") in ("classify", "table"):
                tables.extend(head + [row["n"], row["m"], row["count"]] for row in result.get("table", []))
                continue
            entries.extend(head + [key, _scalar(value)] for key, value in _flatten(result))
        return {
            "tables": pd.DataFrame(tables, columns=TABLE_COLUMNS),
            "entries": pd.DataFrame(entries, columns=COLUMNS),
        }

    def render(self, reports: List[Dict[str, Any]]) -> str:
        """
        Returns:
            Texte CSV: tables de bidegrés puis entrées aplaties, séparées
            par une ligne vide
        """
        frames = self.frames(reports)
        parts = [frame.to_csv(index=False, lineterminator="\n")
                 for frame in (frames["tables"], frames["entries"]) if not frame.empty]
        return "\n".join(parts) if parts else ",".join(COLUMNS) + "\n"

    def convert(self, reports: List[Dict[str, Any]], output_path: str) -> Dict[str, Any]:
        try:
            text = self.render(reports)
            ensure_directory_exists(str(Path(output_path).parent))
            Path(output_path).write_text(text, encoding="utf-8")
            logger.info(f"✅ Rapport CSV écrit: {output_path}")
            return {"success": True, "output_path": output_path, "sha256": get_text_hash(text)}
        except OSError as e:
            logger.error(f"❌ Écriture du rapport impossible: {e}")
            return {"success": False, "output_path": output_path, "error": str(e)}
