import streamlit as st


def show_about_interface():
    """
    Interface de la page À propos.
    """
    st.header("ℹ️ À propos de SegalBench")

    show_main_presentation()
    show_technical_info()
    show_usage_guide()


def show_main_presentation():
    st.markdown("""
    ## 🔷 SegalBench - Atelier de diagrammes de classification

    SegalBench manipule des **ensembles simpliciaux marqués finis** et calcule, à bornes
    finies, leurs **diagrammes de classification**: des ensembles bisimpliciaux dont la
    colonne n classe les diagrammes marqués de forme Δⁿ.

    ### 🎯 Ce que l'on peut vérifier

    - **Localisation par colonne**: chaque colonne d'un diagramme de classification est
      comparée à un oracle (nerf d'une chaîne, cœur d'une catégorie de foncteurs)
    - **Relèvements**: propriété de relèvement à droite contre les familles de
      générateurs anodins, bidegré par bidegré
    - **Invariants**: homologie entière, π₁, contractibilité, équivalences faibles
      de colonnes et de lignes
    """)

    col1, col2, col3 = st.columns(3)
    with col1:
        st.metric("Formats d'atelier", ".sb, .txt")
    with col2:
        st.metric("Rapports", "JSON, CSV")
    with col3:
        st.metric("Verdicts", "holds / fails / unknown")


def show_technical_info():
    st.subheader("🔧 Architecture technique")

    with st.expander("Stack technologique", expanded=False):
        st.markdown("""
        - **Python 3.10+**, **Streamlit** pour l'interface web
        - **pyparsing** pour le langage d'atelier
        - **NumPy** et **SymPy** pour l'homologie (forme normale de Smith) et les corpus aléatoires
        - **pandas** pour les rapports CSV et les tableaux
        - **chardet** pour diagnostiquer les fichiers mal encodés
        """)

    with st.expander("Architecture modulaire", expanded=False):
        st.markdown("""
        ```
        segalbench/
        ├── app.py                  # Application Streamlit
        ├── cli.py                  # Ligne de commande (check, run, verify-paper)
        ├── config/settings.py      # Configuration centralisée
        ├── core/
        │   ├── presheaf/           # Préfaisceaux finis, cellules EZ
        │   ├── marked/             # Ensembles simpliciaux marqués
        │   ├── bisimplicial/       # Ensembles bisimpliciaux, tranches
        │   ├── classification/     # Diagrammes de classification
        │   ├── catkit/             # Catégories finies et nerfs
        │   ├── anodyne/            # Générateurs et relèvements
        │   ├── invariants/         # Homologie, π₁, verdicts
        │   ├── dsl/                # Langage d'atelier
        │   ├── ingestion/          # Chargement des fichiers
        │   ├── preprocessing/      # Normalisation du source
        │   ├── rendering/          # Rapports JSON et CSV
        │   └── services/           # Service principal, recette
        └── tests/
        ```

        Toutes les constructions sont **bornées**: un résultat valable seulement
        jusqu'à une dimension donnée porte sa troncature, et un verdict que les
        bornes ne permettent pas de trancher vaut `unknown`.
        """)


def show_usage_guide():
    st.subheader("📖 Guide d'utilisation")

    with st.expander("🚀 Premier atelier", expanded=True):
        st.markdown("""
        ```
        msset A = sharp(simplex(1))
        classify A bound 2 2
        column A 1 | homology upto 2 | contractible
        ```

        1. Ouvrez la page **🧮 Atelier** et collez le texte
        2. **Analysez** pour valider la syntaxe et les types
        3. **Exécutez** puis téléchargez le rapport

        La grammaire complète est décrite dans `docs/grammaire_dsl.md`.
        """)

    with st.expander("💻 Ligne de commande"):
        st.markdown("""
        ```bash
        python cli.py check docs/ateliers/demo.sb
        python cli.py run docs/ateliers/demo.sb --format csv
        python cli.py verify-paper --seed 0
        ```

        Codes de sortie: `0` succès, `1` au moins une propriété en échec,
        `2` erreur d'usage, d'analyse ou d'exécution.
        """)
