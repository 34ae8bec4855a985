import os

import plotly.express as px
import streamlit as st

from config import APP_CONFIG, CHART_CONFIG, REPORTS_DIR
from data_utils import (
    format_percentage,
    list_report_files,
    load_report_frames,
    load_trace_frame,
    run_summary_metrics,
)
from drift_pipeline.evaluation.plots import accuracy_trace_figure, hadam_difference_heatmap

# Set page config
st.set_page_config(
    page_title=APP_CONFIG["page_title"],
    page_icon=APP_CONFIG["page_icon"],
    layout=APP_CONFIG["layout"],
    initial_sidebar_state=APP_CONFIG["initial_sidebar_state"]
)


@st.cache_data(ttl=APP_CONFIG["cache_ttl"])
def load_report(path, modified):
    """Load a report file; the modification time keys the cache"""
    return load_report_frames(path)


def show_runs(runs, summary):
    st.subheader("📊 Run Summary")
    metrics = run_summary_metrics(runs)
    col1, col2, col3, col4 = st.columns(4)
    with col1:
        st.metric("Runs", f"{metrics['runs']:,}")
    with col2:
        st.metric("Mean Accuracy", format_percentage(metrics["accuracy"]))
    with col3:
        st.metric("Mean Annotated", format_percentage(metrics["annotated_fraction"]))
    with col4:
        st.metric("Mean HADAM", f"{metrics['hadam']:.4f}")

    st.subheader("📄 Per-run Results")
    st.dataframe(runs, width='stretch')
    if summary is not None:
        st.dataframe(summary, width='stretch')

    fig_runs = px.bar(
        runs,
        x='repeat',
        y=['accuracy', 'hadam'],
        barmode='group',
        title='Accuracy and HADAM per Repeat',
        labels={'value': 'Score', 'repeat': 'Repeat', 'variable': 'Metric'},
    )
    fig_runs.update_layout(height=CHART_CONFIG["height"], yaxis={'range': [0, 1]})
    st.plotly_chart(fig_runs, use_container_width=True)


def show_sweep(sweep, difference):
    st.subheader("🧮 Sweep Summary")
    st.dataframe(sweep, width='stretch')

    if difference is not None and not difference.empty:
        st.subheader("🌡️ HADAM Difference (SUDS - Baseline)")
        col1, col2 = st.columns(2)
        with col1:
            st.metric("Mean Difference", f"{difference['difference'].mean():.4f}")
        with col2:
            better = int((difference['difference'] > 0).sum())
            st.metric("SUDS Better", f"{better} / {len(difference)}")
        st.plotly_chart(hadam_difference_heatmap(difference), use_container_width=True)
        st.dataframe(difference, width='stretch')


def show_trace(trace):
    st.subheader("📈 Prequential Accuracy")
    fired = int(trace["fired"].sum())
    col1, col2 = st.columns(2)
    with col1:
        st.metric("Drifts", f"{fired:,}")
    with col2:
        st.metric("Annotated", f"{int(trace['annotated_so_far'].iloc[-1]):,}")
    window = st.slider("Rolling window", 50, 2000, 500, step=50)
    st.plotly_chart(accuracy_trace_figure(trace, window=window), use_container_width=True)


def main():
    st.title("🌊 Drift Report Viewer")
    st.caption("Finished run and sweep reports written by drift_runner (tab-separated output).")

    st.sidebar.header("Report")
    files = list_report_files(REPORTS_DIR)
    uploaded = st.sidebar.file_uploader("Upload a report", type=["tsv", "txt"])
    trace_file = st.sidebar.file_uploader("Upload a trace (optional)", type=["csv"])

    if trace_file is not None:
        try:
            show_trace(load_trace_frame(trace_file))
        except ValueError as e:
            st.error(f"❌ {e}")

    if uploaded is not None:
        sections = load_report_frames(uploaded)
        st.sidebar.success(f"Loaded {uploaded.name}")
    elif files:
        choice = st.sidebar.selectbox("Report file", files, format_func=os.path.basename)
        sections = load_report(choice, os.path.getmtime(choice))
    else:
        st.info(f"No report files in '{REPORTS_DIR}'. Write one with "
                "`python -m drift_pipeline.drift_runner run ... --out reports/run.tsv` or upload a file.")
        return

    if not sections:
        st.warning("The report has no recognised sections")
        return

    if "runs" in sections:
        show_runs(sections["runs"], sections.get("summary"))
    if "sweep" in sections:
        show_sweep(sections["sweep"], sections.get("difference"))


main()
