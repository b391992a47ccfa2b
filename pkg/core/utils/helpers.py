import os
import json
import hashlib
from typing import Any, List


def canonical_json(payload: Any) -> str:
    """
    Sérialise un rapport en JSON canonique (clés triées, indentation fixe).

    Args:
        payload: Objet JSON-compatible

    Returns:
        Texte JSON terminé par un saut de ligne
    """
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def get_text_hash(text: str) -> str:
    """
    Calcule l'empreinte SHA-256 d'un texte (comparaison de rapports).

    Args:
        text: Texte à hacher

    Returns:
        Empreinte hexadécimale
    """
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def validate_file_extension(filename: str, allowed_extensions: List[str]) -> bool:
    """Vrai si ``filename`` porte une extension d'atelier acceptée (``sb``, ``txt``...)."""
    suffix = os.path.splitext(filename or "")[1].lstrip(".").lower()
    return bool(suffix) and suffix in {e.lower() for e in allowed_extensions}


def ensure_directory_exists(directory_path: str) -> None:
    """Crée le dossier de destination d'un rapport s'il manque."""
    if directory_path:
        os.makedirs(directory_path, exist_ok=True)


def format_counts(counts: List[int]) -> str:
    """Formate un profil de comptage, ex: ``(3,3,1)``."""
    return "(" + ",".join(str(c) for c in counts) + ")"


def describe(value: Any) -> Any:
    """
    Convertit une valeur interne (tuples imbriqués, frozensets) en données
    JSON-compatibles et déterministes.
    """
    if isinstance(value, (list, tuple)):
        return [describe(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((describe(v) for v in value), key=repr)
    if isinstance(value, dict):
        return {str(k): describe(v) for k, v in sorted(value.items(), key=lambda kv: repr(kv[0]))}
    return value
