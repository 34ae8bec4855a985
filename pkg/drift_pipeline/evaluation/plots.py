import plotly.express as px

PLOT_HEIGHT = 400


def hadam_difference_heatmap(difference, title="Average difference in HADAM (SUDS - baseline)"):
    """
    Heatmap of SUDS-minus-baseline HADAM, one panel per window size.

    Args:
        difference: frame from hadam_difference()

    Returns:
        plotly Figure
    """
    frame = difference.copy()
    # categorical axes keep the grid values readable
    frame["rho"] = frame["rho"].map(lambda v: f"{v:g}")
    frame["tau_or_nu"] = frame["tau_or_nu"].map(lambda v: f"{v:g}")
    fig = px.density_heatmap(
        frame,
        x="tau_or_nu",
        y="rho",
        z="difference",
        facet_col="w",
        histfunc="avg",
        title=title,
        labels={"tau_or_nu": "tau / nu", "rho": "rho", "difference": "HADAM difference"},
        color_continuous_scale="RdYlGn",
        color_continuous_midpoint=0.0,
        text_auto=".3f",
    )
    fig.update_layout(height=PLOT_HEIGHT)
    return fig


def accuracy_trace_figure(trace, window=500, title="Prequential accuracy"):
    """
    Rolling accuracy over the scored part of a run, drift points marked.

    Args:
        trace: per-step trace frame from run_prequential(trace=True)
        window: rolling window in samples
    """
    scored = trace[trace["scored"]].copy()
    scored["rolling_accuracy"] = scored["correct"].astype(float).rolling(window, min_periods=1).mean()
    fig = px.line(
        scored,
        x="index",
        y="rolling_accuracy",
        title=title,
        labels={"index": "Stream index", "rolling_accuracy": f"Accuracy (last {window})"},
    )
    for index in trace.loc[trace["fired"], "index"]:
        fig.add_vline(x=index, line_width=1, line_dash="dot", line_color="#B22222")
    fig.update_layout(height=PLOT_HEIGHT, yaxis={'range': [0, 1]})
    return fig
