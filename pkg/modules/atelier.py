import streamlit as st
import logging
from datetime import datetime
from pathlib import Path

import pandas as pd

from config.settings import Settings
from core.dsl.workspace import Bounds
from core.services.workbench_service import WorkbenchService
from core.utils.errors import WorkbenchError

logger = logging.getLogger(__name__)

DEMO_PATH = Path(__file__).resolve().parent.parent / "docs" / "ateliers" / "demo.sb"


def _demo_text() -> str:
    try:
        return DEMO_PATH.read_text(encoding="utf-8")
    except OSError:
        return "msset A = sharp(simplex(1))\nclassify A bound 2 2\n"


def show_atelier_interface():
    """
    Interface d'édition et d'exécution d'un atelier ``.sb``.
    """
    st.header("🧮 Atelier")

    bounds = _show_bounds_section()
    output_format = st.radio("Format du rapport", Settings.OUTPUT_FORMATS, horizontal=True)

    try:
        service = WorkbenchService(bounds, output_format)
    except ValueError as e:
        st.error(f"❌ Erreur d'initialisation: {str(e)}")
        return

    text = _show_source_section(service)
    if text is None:
        return

    col1, col2 = st.columns(2)
    with col1:
        if st.button("🔍 Analyser", use_container_width=True):
            checked = service.check_text(text)
            if checked["success"]:
                st.success(f"✅ {checked['bindings']} liaisons, {checked['commands']} commandes")
                with st.expander("Forme canonique"):
                    st.code(checked["canonical"])
            else:
                st.error(f"❌ {checked['error']}")
    with col2:
        if st.button("🚀 Exécuter", type="primary", use_container_width=True):
            with st.spinner("Calcul en cours..."):
                st.session_state.atelier_result = service.run_text(text)
                st.session_state.atelier_format = output_format

    if st.session_state.get("atelier_result"):
        show_results_section(st.session_state.atelier_result, st.session_state.atelier_format)


def _show_bounds_section() -> Bounds:
    with st.expander("📐 Bornes", expanded=False):
        col1, col2, col3 = st.columns(3)
        with col1:
            pbound = st.number_input("pbound", min_value=0, max_value=6, value=Settings.DEFAULT_PBOUND)
        with col2:
            qbound = st.number_input("qbound", min_value=0, max_value=6, value=Settings.DEFAULT_QBOUND)
        with col3:
            jtrunc = st.number_input("Troncature de J", min_value=0, max_value=6, value=Settings.J_TRUNCATION)
    return Bounds(int(pbound), int(qbound), int(jtrunc))


def _show_source_section(service: WorkbenchService):
    tab1, tab2 = st.tabs(["✏️ Texte", "📁 Upload"])
    with tab1:
        text = st.text_area("Source de l'atelier", value=_demo_text(), height=320, key="atelier_text")
    with tab2:
        uploaded = st.file_uploader("Fichier d'atelier", type=Settings.SUPPORTED_FORMATS,
                                    help=f"max {Settings.MAX_FILE_SIZE_MB} MB")
    if uploaded is None:
        return text
    if uploaded.size > Settings.MAX_FILE_SIZE_MB * 1024 * 1024:
        st.error(f"❌ Fichier trop volumineux (max {Settings.MAX_FILE_SIZE_MB} MB)")
        return None
    try:
        return service.loader.decode(uploaded.getvalue(), uploaded.name)
    except WorkbenchError as e:
        st.error(f"❌ {str(e)}")
        return None


def show_results_section(result, output_format: str):
    """
    Section d'affichage et d'export des rapports.
    """
    st.markdown("---")
    st.subheader("📄 Rapports")

    if not result["success"]:
        line = f" (ligne {result['line']})" if result.get("line") else ""
        st.error(f"❌ {result['kind']}{line}: {result['error']}")
        return

    reports = result["reports"]
    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Commandes", len(reports))
    with col2:
        st.metric("En échec", sum(not r["ok"] for r in reports))
    with col3:
        st.metric("Empreinte", result["metadata"]["sha256"][:12])

    summary = pd.DataFrame([{"ligne": r["line"], "commande": r["command"], "ok": r["ok"]} for r in reports])
    st.dataframe(summary, use_container_width=True, hide_index=True)

    for report in reports:
        icon = "✅" if report["ok"] else "❌"
        with st.expander(f"{icon} {report['command']}"):
            table = report["result"].get("table") if isinstance(report["result"], dict) else None
            if table:
                st.dataframe(pd.DataFrame(table), hide_index=True)
            st.json(report["result"])

    st.download_button(
        label="💾 Télécharger le rapport",
        data=result["content"],
        file_name=f"rapport_{datetime.now().strftime('%Y%m%d_%H%M%S')}.{output_format}",
        mime="application/json" if output_format == "json" else "text/csv",
    )
