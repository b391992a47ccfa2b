import streamlit as st
import logging

import pandas as pd

from config.settings import Settings
from core.services.acceptance import FIXTURES
from core.services.workbench_service import WorkbenchService

logger = logging.getLogger(__name__)


def show_verification_interface():
    """
    Exécution des fixtures de recette depuis l'interface.
    """
    st.header("✅ Vérification")
    st.markdown("Chaque fixture recalcule une propriété connue et la compare à un oracle indépendant.")

    col1, col2 = st.columns([1, 3])
    with col1:
        seed = st.number_input("Graine", min_value=0, value=Settings.SEED, step=1)
    with col2:
        labels = {i: f"{i}. {fn.__name__.removeprefix('fixture_')}" for i, fn in FIXTURES.items()}
        selected = st.multiselect("Fixtures", list(FIXTURES), default=list(FIXTURES),
                                  format_func=labels.get)

    if not selected:
        st.info("Sélectionnez au moins une fixture.")
        return

    if st.button("▶️ Lancer la recette", type="primary"):
        try:
            service = WorkbenchService(output_format="json")
        except ValueError as e:
            st.error(f"❌ {str(e)}")
            return
        with st.spinner("Fixtures en cours..."):
            st.session_state.verification_result = service.verify_paper(int(seed), selected)

    result = st.session_state.get("verification_result")
    if not result:
        return
    if not result["success"]:
        st.error(f"❌ {result['error']}")
        return

    reports = result["reports"]
    passed = sum(r["ok"] for r in reports)
    if result["ok"]:
        st.success(f"✅ {passed}/{len(reports)} fixtures réussies")
    else:
        st.error(f"❌ {passed}/{len(reports)} fixtures réussies")

    st.dataframe(
        pd.DataFrame([{"id": r["id"], "fixture": r["name"], "vérifications": len(r["checks"]), "ok": r["ok"]}
                      for r in reports]),
        use_container_width=True, hide_index=True,
    )
    for report in reports:
        with st.expander(f"{'✅' if report['ok'] else '❌'} {report['id']}. {report['name']}"):
            st.dataframe(pd.DataFrame(report["checks"]).astype(str), hide_index=True)

    st.download_button("💾 Télécharger (JSON)", data=result["content"],
                       file_name=f"recette_{int(seed)}.json", mime="application/json")
