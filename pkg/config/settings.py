import os
from typing import Any, Dict, Tuple

from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return default


class Settings:
    """
    Configuration centralisée pour l'application SegalBench.
    """

    # Bornes par défaut des calculs bisimpliciaux
    DEFAULT_PBOUND = _int_env("SEGALBENCH_PBOUND", 3)
    DEFAULT_QBOUND = _int_env("SEGALBENCH_QBOUND", 3)

    # Troncature de l'intervalle J
    J_TRUNCATION = _int_env("SEGALBENCH_JTRUNC", 3)

    # Parallélisme (1 = séquentiel)
    THREADS = _int_env("SEGALBENCH_THREADS", 1)

    # Graine des corpus aléatoires
    SEED = _int_env("SEGALBENCH_SEED", 0)

    # Rapports
    OUTPUT_FORMAT = os.getenv("SEGALBENCH_OUTPUT_FORMAT", "json")
    REPORTS_DIR = os.getenv("SEGALBENCH_REPORTS_DIR", "data/reports")
    LOG_LEVEL = os.getenv("SEGALBENCH_LOG_LEVEL", "WARNING")

    # Formats supportés
    SUPPORTED_FORMATS = ["sb", "txt"]
    OUTPUT_FORMATS = ["json", "csv"]

    # Taille maximale des fichiers d'atelier (en MB)
    MAX_FILE_SIZE_MB = 2

    # Configuration Streamlit
    STREAMLIT_CONFIG = {
        "page_title": "SegalBench",
        "page_icon": "🔷",
        "layout": "wide"
    }

    @classmethod
    def get_reports_path(cls) -> str:
        """Retourne le chemin absolu du dossier des rapports."""
        return os.path.abspath(cls.REPORTS_DIR)

    @classmethod
    def default_bounds(cls) -> Tuple[int, int, int]:
        """Bornes ``(pbound, qbound, jtrunc)`` par défaut."""
        return cls.DEFAULT_PBOUND, cls.DEFAULT_QBOUND, cls.J_TRUNCATION

    @classmethod
    def as_dict(cls) -> Dict[str, Any]:
        """Retourne la configuration effective (affichage, rapports)."""
        return {
            "pbound": cls.DEFAULT_PBOUND,
            "qbound": cls.DEFAULT_QBOUND,
            "j_truncation": cls.J_TRUNCATION,
            "threads": cls.THREADS,
            "seed": cls.SEED,
            "output_format": cls.OUTPUT_FORMAT,
        }

    @classmethod
    def validate_config(cls) -> bool:
        """Valide la configuration nécessaire."""
        if cls.DEFAULT_PBOUND < 0 or cls.DEFAULT_QBOUND < 0:
            return False
        if cls.J_TRUNCATION < 1 or cls.THREADS < 1:
            return False
        return cls.OUTPUT_FORMAT in cls.OUTPUT_FORMATS
