import streamlit as st
import os

from config.settings import Settings

ENV_VARS = [
    ("SEGALBENCH_PBOUND", "Borne horizontale par défaut"),
    ("SEGALBENCH_QBOUND", "Borne verticale par défaut"),
    ("SEGALBENCH_JTRUNC", "Troncature de l'intervalle J"),
    ("SEGALBENCH_THREADS", "Parallélisme"),
    ("SEGALBENCH_SEED", "Graine des corpus aléatoires"),
    ("SEGALBENCH_OUTPUT_FORMAT", "Format des rapports"),
    ("SEGALBENCH_REPORTS_DIR", "Dossier des rapports"),
    ("SEGALBENCH_LOG_LEVEL", "Niveau de journalisation"),
]


def show_settings_interface():
    """
    Interface des paramètres de l'application.
    """
    st.header("⚙️ Paramètres")

    show_bounds_settings()
    show_file_settings()
    show_system_info()


def show_bounds_settings():
    st.subheader("📐 Configuration des calculs")

    with st.expander("Configuration effective", expanded=True):
        st.json(Settings.as_dict())
        if Settings.validate_config():
            st.success("✅ Configuration valide")
        else:
            st.error("❌ Configuration invalide")

    with st.expander("Variables d'environnement"):
        for name, description in ENV_VARS:
            value = os.getenv(name)
            status = "✅" if value is not None else "➖"
            st.write(f"{status} `{name}`: {value if value is not None else 'défaut'} ({description})")
        st.info("""
        Les variables peuvent être définies dans l'environnement ou dans un fichier `.env`
        à la racine du projet. Les options `--pbound`, `--qbound` et `--jtrunc` de la ligne
        de commande les remplacent pour une exécution.
        """)


def show_file_settings():
    """
    Formats acceptés et dossier des rapports.
    """
    st.subheader("📁 Configuration des fichiers")

    with st.expander("Formats"):
        st.write(f"Ateliers: {', '.join('.' + fmt for fmt in Settings.SUPPORTED_FORMATS)} "
                 f"(max {Settings.MAX_FILE_SIZE_MB} MB)")
        st.write(f"Rapports: {', '.join(Settings.OUTPUT_FORMATS)}")

        path = Settings.get_reports_path()
        status = "✅" if os.path.isdir(path) else "➖"
        st.write(f"{status} Dossier des rapports: `{path}`")


def show_system_info():
    st.subheader("🔧 Informations système")
    try:
        from core.services.workbench_service import WorkbenchService
        service = WorkbenchService()
        st.success(f"✅ Service initialisé (bornes {service.bounds}, format {service.output_format})")
    except Exception as e:
        st.error(f"❌ Erreur d'initialisation: {str(e)}")
