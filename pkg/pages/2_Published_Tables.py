import plotly.express as px
import streamlit as st

from config import APP_CONFIG, CHART_CONFIG
from data_utils import format_percentage
from drift_pipeline.commands.recompute import annotation_summary, filter_group, load_tables, recompute_tables

st.set_page_config(
    page_title="Published Tables",
    page_icon=APP_CONFIG["page_icon"],
    layout=APP_CONFIG["layout"]
)


@st.cache_data(ttl=APP_CONFIG["cache_ttl"])
def load_published():
    return load_tables()


st.title("📚 Published Tables")
st.caption("HADAM and average difference recomputed from the shipped accuracy and annotation numbers.")

group = st.sidebar.selectbox("Dataset group", ["all", "real_world", "synthetic"])
tables = filter_group(load_published(), group)
cells, averages = recompute_tables(tables)

st.subheader("📈 Average Difference to the Best Method")
col1, col2, col3, col4 = st.columns(4)
for column, (_, row) in zip([col1, col2, col3, col4], averages.iterrows()):
    with column:
        st.metric(row["method"], f"{row['avg_diff_points']:.2f} pts")

fig_avg = px.bar(
    averages,
    x='method',
    y='avg_diff_points',
    title='Average Difference (percentage points, lower is better)',
    labels={'avg_diff_points': 'Percentage points', 'method': 'Method'},
    color='avg_diff_points',
    color_continuous_scale=CHART_CONFIG["diverging_scale"] + "_r",
)
fig_avg.update_layout(height=CHART_CONFIG["height"])
st.plotly_chart(fig_avg, use_container_width=True)

st.subheader("🏷️ Share of the Stream Annotated")
annotated = annotation_summary(tables)
fig_ann = px.bar(
    annotated,
    x='method',
    y='annotated_pct_mean',
    error_y='annotated_pct_std',
    title='Mean annotated percentage over datasets (± std)',
    labels={'annotated_pct_mean': 'Annotated %', 'method': 'Method'},
)
fig_ann.update_layout(height=CHART_CONFIG["height"])
st.plotly_chart(fig_ann, use_container_width=True)

st.subheader("🧾 HADAM per Dataset")
fig_hadam = px.bar(
    cells,
    x='dataset',
    y='hadam',
    color='method',
    barmode='group',
    title='Recomputed HADAM',
    labels={'hadam': 'HADAM', 'dataset': 'Dataset'},
)
fig_hadam.update_layout(height=CHART_CONFIG["height"], yaxis={'range': [0, 1]})
st.plotly_chart(fig_hadam, use_container_width=True)

if "deviation" in cells.columns:
    off = cells[cells["deviation"].abs() > 0.001]
    if off.empty:
        st.success("All recomputed HADAM values are within 0.001 of the published ones")
    else:
        st.warning(f"{len(off)} cell(s) differ from the published HADAM by more than 0.001")
        st.dataframe(off, width='stretch')

display = cells.copy()
display["accuracy"] = display["accuracy"].apply(format_percentage)
display["annotated_share"] = (cells["annotated"] / cells["total"]).apply(format_percentage)
st.dataframe(display, width='stretch')
