import streamlit as st
import sys
from pathlib import Path

# Ajouter le répertoire racine au path pour les imports
sys.path.append(str(Path(__file__).parent))

from config.settings import Settings

st.set_page_config(**Settings.STREAMLIT_CONFIG, initial_sidebar_state="expanded")

st.markdown("""
<style>
    .main-header { font-size: 2.6rem; font-weight: 700; text-align: center; color: #1f3b57; margin-bottom: 0.5rem; }
    .sub-header { font-size: 1.2rem; text-align: center; color: #52667a; margin-bottom: 2rem; }
    .feature-box { background: #f3f6fa; padding: 1.2rem; border-radius: 8px; border-left: 4px solid #3b6ea5; margin: 0.8rem 0; }
    .success-box { background: #e3f4e8; color: #1d5c32; padding: 0.8rem; border-radius: 6px; }
    .error-box { background: #fbe4e4; color: #7a1f1f; padding: 0.8rem; border-radius: 6px; }
    @media (prefers-color-scheme: dark) {
        .main-header { color: #e8eef5; }
        .sub-header { color: #a9b7c6; }
        .feature-box { background: #263342; border-left-color: #6fa3da; }
    }
</style>
""", unsafe_allow_html=True)


def main():
    """
    Application principale SegalBench.
    """
    st.markdown('<h1 class="main-header">🔷 SegalBench</h1>', unsafe_allow_html=True)
    st.markdown('<p class="sub-header">Atelier d\'ensembles bisimpliciaux marqués et de leurs diagrammes de classification</p>',
                unsafe_allow_html=True)

    from components.sidebar import show_sidebar
    page = show_sidebar()

    if page == "🏠 Accueil":
        show_home_page()
    elif page == "🧮 Atelier":
        _show_module("atelier", "show_atelier_interface")
    elif page == "✅ Vérification":
        _show_module("verification", "show_verification_interface")
    elif page == "⚙️ Paramètres":
        _show_module("settings", "show_settings_interface")
    elif page == "ℹ️ À propos":
        _show_module("about", "show_about_interface")


def show_home_page():
    st.header("🚀 Bienvenue sur SegalBench")

    st.markdown("""
    <div class="feature-box">
        <strong>Un atelier textuel</strong> pour construire des ensembles simpliciaux marqués,
        calculer leurs diagrammes de classification bornés et vérifier colonne par colonne
        les propriétés de localisation, de Segal et de relèvement.
    </div>
    """, unsafe_allow_html=True)

    col1, col2 = st.columns(2)
    with col1:
        st.markdown("""
        <div class="feature-box">
            <h4>🧮 Atelier</h4>
            <p>Saisissez un fichier <code>.sb</code>: liaisons, catégories finies et commandes
            (<code>classify</code>, <code>column-verdict</code>, <code>lift</code>...).</p>
        </div>
        """, unsafe_allow_html=True)
    with col2:
        st.markdown("""
        <div class="feature-box">
            <h4>✅ Vérification</h4>
            <p>Exécutez les fixtures de recette: comptages, localisation, cœurs groupoïdaux,
            relèvements et contrôle négatif.</p>
        </div>
        """, unsafe_allow_html=True)

    st.subheader("🔧 Statut du système")
    try:
        from core.services.workbench_service import WorkbenchService
        service = WorkbenchService()
        st.markdown('<div class="success-box">✅ Service SegalBench initialisé avec succès</div>', unsafe_allow_html=True)
        st.json(Settings.as_dict())
        st.caption(f"Bornes actives: {service.bounds}")
    except Exception as e:
        st.markdown('<div class="error-box">❌ Impossible d\'initialiser le service</div>', unsafe_allow_html=True)
        st.error(f"Erreur: {str(e)}")


def _show_module(module: str, function: str) -> None:
    try:
        page = __import__(f"modules.{module}", fromlist=[function])
        getattr(page, function)()
    except ImportError as e:
        st.error(f"Erreur d'import de la page {module}: {str(e)}")


if __name__ == "__main__":
    main()
