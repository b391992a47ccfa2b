import re
import unicodedata
import logging
from typing import Dict, Any

logger = logging.getLogger(__name__)


class SourceNormalizer:
    """
    Normalise le texte d'un atelier avant l'analyse (fins de ligne, espaces,
    symboles unicode saisis à la main).
    """

    def __init__(self, normalize_symbols: bool = True, strip_trailing: bool = True):
        """
        Args:
            normalize_symbols: Remplacer les flèches et symboles unicode
            strip_trailing: Supprimer les espaces en fin de ligne
        """
        self.normalize_symbols = normalize_symbols
        self.strip_trailing = strip_trailing
        self._init_patterns()

    def _init_patterns(self):
        # Espaces spéciaux et tabulations
        self.special_spaces_pattern = re.compile(r'[\t\u00A0\u2000-\u200B\u202F\u205F\u3000]')
        self.trailing_pattern = re.compile(r'[ ]+$', re.MULTILINE)
        self.symbols = {
            '→': '->', '⟶': '->', '−': '-', '–': '-',
        }
        self.shape_names = {'Δ': 'simplex', '∂Δ': 'boundary', 'Λ': 'horn'}

    def normalize(self, text: str) -> Dict[str, Any]:
        """
        Args:
            text: Source brute

        Returns:
            Dictionnaire avec ``normalized_text`` et les étapes appliquées
        """
        steps = []
        normalized = text.replace('\r\n', '\n').replace('\r', '\n')
        if normalized != text:
            steps.append("Fins de ligne normalisées")

        before = normalized
        normalized = self.special_spaces_pattern.sub(' ', normalized)
        if normalized != before:
            steps.append("Espaces spéciaux normalisés")

        if self.normalize_symbols:
            before = normalized
            for symbol, replacement in self.symbols.items():
                normalized = normalized.replace(symbol, replacement)
            # ∂Δ avant Δ
            for symbol in sorted(self.shape_names, key=len, reverse=True):
                normalized = re.sub(re.escape(symbol) + r'(?=\s*\()', self.shape_names[symbol], normalized)
            normalized = unicodedata.normalize('NFC', normalized)
            if normalized != before:
                steps.append("Symboles unicode remplacés")

        if self.strip_trailing:
            before = normalized
            normalized = self.trailing_pattern.sub('', normalized)
            if normalized != before:
                steps.append("Espaces de fin de ligne supprimés")

        logger.debug(f"Source normalisée: {len(text)} -> {len(normalized)} caractères")
        return {"normalized_text": normalized, "normalization_steps": steps}

    def normalize_text(self, text: str) -> str:
        return self.normalize(text)["normalized_text"]
