import streamlit as st

PAGES = ["🏠 Accueil", "🧮 Atelier", "✅ Vérification", "⚙️ Paramètres", "ℹ️ À propos"]


def show_sidebar() -> str:
    """
    Navigation entre les pages et rappel des bornes en vigueur.

    Returns:
        str: Libellé de la page choisie
    """
    with st.sidebar:
        st.markdown("### 🔷 SegalBench")
        page = st.radio("📍 Navigation", PAGES, index=0)

        st.divider()
        st.markdown("**📐 Bornes par défaut**")
        _show_bounds_status()

    return page


def _show_bounds_status() -> None:
    try:
        from core.services.workbench_service import WorkbenchService
        service = WorkbenchService()
    except ValueError as e:
        st.error(f"❌ Configuration: {e}")
        return

    bounds = service.bounds
    st.caption(f"p ≤ {bounds.pbound}, q ≤ {bounds.qbound}, J tronqué en {bounds.jtrunc}")
    st.caption(f"Rapports: {service.output_format.upper()}")
