#main.py
import streamlit as st
import pandas as pd
import sympy as sp
from src.config import configure_logging, settings
from src.algebra import parse_germ_text
from src.crosscap import TransversalityError, minimal_crosscap, sharp_pullback
from src.equivalence import DETERMINACY_MODES, codimension, complete_transversal, determinacy_bound
from src.classify import (
    SIMPLIFIED_PULLBACKS,
    applicable_forms,
    classify_codim2,
    family_necessity_counterexample,
    normal_form_germ,
    verify_scaling_family,
    verify_vector_fields,
    SCALING_GRID,
)

configure_logging()

# Page configuration
st.set_page_config(
    page_title="VK Cross Caps",
    page_icon="📐",
    layout="wide",
    initial_sidebar_state="expanded"
)

st.markdown("""
    <style>
    .main-header {
        background: linear-gradient(135deg, #667eea 0%, #764ba2 100%);
        color: white;
        padding: 1.5rem;
        border-radius: 15px;
        text-align: center;
    }
    .tab-header {
        background: #f1f5f9;
        padding: 1rem;
        border-radius: 12px;
        border-left: 5px solid #6366f1;
        margin-bottom: 1rem;
    }
    </style>
""", unsafe_allow_html=True)


def latex_of(polys):
    """LaTeX tuple for a list of Poly."""
    parts = [sp.latex(p.to_sympy()) for p in polys]
    return parts[0] if len(parts) == 1 else r"\left(" + ", ".join(parts) + r"\right)"


def reports_frame(reports):
    return pd.DataFrame([
        {
            "Claim": r.claim_id,
            "Status": "✅ pass" if r.passed else "❌ fail",
            "Note": r.note,
        }
        for r in reports
    ])


def germ_inputs(key, default_germ):
    col1, col2 = st.columns([1, 3])
    with col1:
        k = st.number_input("Multiplicity k", min_value=2, max_value=6, value=3, key=f"{key}_k")
    with col2:
        germ_text = st.text_input("Germ h (components comma-separated)", value=default_germ, key=f"{key}_germ")
    return int(k), germ_text


def main():
    st.markdown("<h1 class='main-header'>📐 VK-Equivalence on Minimal Cross Caps</h1>", unsafe_allow_html=True)

    with st.sidebar:
        st.markdown("### ⚙️ Settings")
        max_degree = st.slider("Max stabilisation degree", 2, 16, settings.max_degree)
        seed = st.number_input("Random seed", value=settings.random_seed)

    tab1, tab2, tab3, tab4, tab5 = st.tabs([
        "🧮 Codimension",
        "📏 Determinacy & Transversals",
        "🧭 Liftable Fields",
        "🔻 Pullbacks",
        "✅ Verification",
    ])

    with tab1:
        st.markdown("<div class='tab-header'><h2>🧮 Codimension</h2><p>VK_e-codimension and a normal space basis</p></div>", unsafe_allow_html=True)
        k, germ_text = germ_inputs("codim", "U1 + V2^2")

        if st.button("🚀 Compute codimension", type="primary"):
            try:
                ctx = minimal_crosscap(k)
                h = parse_germ_text(germ_text, ctx.target_vars)
                with st.spinner("🔄 Reducing the tangent space..."):
                    report = codimension(ctx, h, max_degree)
                st.latex("h = " + latex_of(h.components))
                if report.finite:
                    st.success(f"✅ Codimension {report.codim}, stable from degree {report.stabilization_degree}")
                    st.dataframe(pd.DataFrame({"Normal basis": [v.to_text() for v in report.normal_basis]}))
                else:
                    st.warning(f"⚠️ Not certified finite up to degree {max_degree}")
            except Exception as e:
                st.error(f"❌ Error computing codimension: {str(e)}")

    with tab2:
        st.markdown("<div class='tab-header'><h2>📏 Determinacy & Transversals</h2><p>Determinacy degree and complete transversals of jets</p></div>", unsafe_allow_html=True)
        k, germ_text = germ_inputs("det", "U1")
        col1, col2 = st.columns(2)
        with col1:
            mode = st.selectbox("Determinacy criterion", DETERMINACY_MODES, index=1)
        with col2:
            degree = st.number_input("Transversal degree d", min_value=2, max_value=8, value=2)

        if st.button("🔍 Analyse jet"):
            try:
                ctx = minimal_crosscap(k)
                h = parse_germ_text(germ_text, ctx.target_vars)
                bound = determinacy_bound(ctx, h, mode, max_degree)
                if bound is None:
                    st.warning(f"⚠️ No determinacy degree found up to {max_degree}")
                else:
                    st.info(f"📏 {bound}-determined ({mode})")
                if h.degree() is not None and h.degree() < degree:
                    transversal = complete_transversal(ctx, h, int(degree))
                    st.markdown(f"#### {int(degree)}-complete transversal")
                    if transversal:
                        for vector in transversal:
                            st.latex(latex_of(list(vector)))
                    else:
                        st.write("Empty: every degree-d extension is equivalent to the jet.")
            except Exception as e:
                st.error(f"❌ Error analysing jet: {str(e)}")

    with tab3:
        st.markdown("<div class='tab-header'><h2>🧭 Liftable Fields</h2><p>Generators of Θ_V for the minimal cross cap</p></div>", unsafe_allow_html=True)
        k = st.number_input("Multiplicity k", min_value=2, max_value=6, value=3, key="fields_k")

        try:
            ctx = minimal_crosscap(int(k))
            st.latex(r"\varphi_{%d} = " % ctx.k + latex_of(ctx.phi.components))
            st.dataframe(pd.DataFrame([
                {"Field": field.label, **{name: str(c) for name, c in zip(ctx.target_vars.names, field.components)}}
                for field in ctx.theta_V
            ]), use_container_width=True)
            if st.button("✅ Verify liftability"):
                with st.spinner("🔄 Lifting every field..."):
                    st.dataframe(reports_frame([verify_vector_fields(ctx.k)]))
        except Exception as e:
            st.error(f"❌ Error building fields: {str(e)}")

    with tab4:
        st.markdown("<div class='tab-header'><h2>🔻 Pullbacks</h2><p>The map h#(φ_k) for the codimension-2 normal forms</p></div>", unsafe_allow_html=True)
        k = st.number_input("Multiplicity k", min_value=2, max_value=6, value=3, key="pull_k")
        forms = applicable_forms(int(k))
        name = st.selectbox("Normal form", forms)

        if name and st.button("🔻 Pull back"):
            try:
                ctx = minimal_crosscap(int(k))
                h = normal_form_germ(int(k), name)
                st.latex("h = " + latex_of(h.components))
                pulled = sharp_pullback(ctx, h)
                st.latex(r"h^{\#}(\varphi) = " + latex_of(pulled.components))
                if name in SIMPLIFIED_PULLBACKS:
                    st.info(f"💡 Simplified form: {SIMPLIFIED_PULLBACKS[name]}")
            except TransversalityError as e:
                st.warning(f"⚠️ {str(e)}")
            except Exception as e:
                st.error(f"❌ Error computing pullback: {str(e)}")

    with tab5:
        st.markdown("<div class='tab-header'><h2>✅ Verification</h2><p>Recompute the classification claims</p></div>", unsafe_allow_html=True)
        col1, col2, col3 = st.columns(3)

        with col1:
            if st.button("📈 Scaling series"):
                try:
                    with st.spinner("🔄 Checking the scaling series..."):
                        st.dataframe(reports_frame([verify_scaling_family(*case) for case in SCALING_GRID]))
                except Exception as e:
                    st.error(f"❌ Error running scaling series: {str(e)}")
        with col2:
            k = st.number_input("k for classification", min_value=2, max_value=6, value=3)
            if st.button("🗂️ Codimension 2"):
                try:
                    with st.spinner("🔄 Classifying..."):
                        st.dataframe(reports_frame(classify_codim2(int(k), max_degree, seed=int(seed))))
                except Exception as e:
                    st.error(f"❌ Error classifying: {str(e)}")
        with col3:
            if st.button("🧪 Family necessity"):
                try:
                    report = family_necessity_counterexample()
                    st.dataframe(reports_frame([report]))
                    st.json(report.as_dict())
                except Exception as e:
                    st.error(f"❌ Error running counterexample: {str(e)}")


if __name__ == "__main__":
    main()
