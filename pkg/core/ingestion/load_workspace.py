import logging
import chardet
from typing import Dict, Any
from pathlib import Path

from config.settings import Settings
from core.utils.errors import UnsupportedInputError
from core.utils.helpers import validate_file_extension

logger = logging.getLogger(__name__)


class WorkspaceLoader:
    """
    Charge le texte d'un fichier d'atelier (``.sb`` ou ``.txt``).

    Le langage d'atelier est en UTF-8; pour un autre encodage, ``chardet``
    sert seulement à produire un message d'erreur précis.
    """

    def __init__(self, max_size_mb: int = Settings.MAX_FILE_SIZE_MB):
        """
        Args:
            max_size_mb: Taille maximale acceptée
        """
        self.max_size_mb = max_size_mb

    def load(self, file_path: str) -> Dict[str, Any]:
        """
        Charge un fichier d'atelier.

        Args:
            file_path: Chemin du fichier

        Returns:
            Dictionnaire ``{"text", "metadata"}``

        Raises:
            UnsupportedInputError: Extension, taille ou encodage refusés
        """
        path = Path(file_path)
        if not validate_file_extension(path.name, Settings.SUPPORTED_FORMATS):
            raise UnsupportedInputError(
                f"Format de fichier non supporté: {path.name} (attendu: {', '.join(Settings.SUPPORTED_FORMATS)})"
            )
        raw = path.read_bytes()
        if len(raw) > self.max_size_mb * 1024 * 1024:
            raise UnsupportedInputError(f"Fichier trop volumineux: {path.name}")
        content = self.decode(raw, path.name)
        metadata = {
            "file_path": str(path),
            "encoding": "utf-8",
            "file_size_bytes": len(raw),
            "total_lines": len(content.splitlines()),
            "loader": "workspace",
        }
        logger.info(f"Atelier chargé: {path.name}, {metadata['total_lines']} lignes")
        return {"text": content, "metadata": metadata}

    def decode(self, raw: bytes, name: str = "<texte>") -> str:
        """Décode en UTF-8 (BOM toléré) ou lève une erreur explicite."""
        try:
            return raw.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            detected = chardet.detect(raw[:10000])
            encoding = detected.get("encoding") or "inconnu"
            confidence = detected.get("confidence") or 0
            logger.error(f"❌ {name} n'est pas en UTF-8 (détecté: {encoding}, confiance {confidence:.2f})")
            raise UnsupportedInputError(
                f"{name}: UTF-8 requis, encodage détecté {encoding} (octet {e.start})"
            ) from None
