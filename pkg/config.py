import os

import streamlit as st


def get_secret(key, default=None):
    """Get a setting from Streamlit secrets or an environment variable"""
    try:
        return st.secrets[key]
    except Exception:
        return os.getenv(key, default)


# Directory the viewer lists report files from
REPORTS_DIR = get_secret("DRIFT_REPORTS_DIR", "reports")

# Application settings
APP_CONFIG = {
    "page_title": "Drift Report Viewer",
    "page_icon": "🌊",
    "layout": "wide",
    "initial_sidebar_state": "expanded",
    "cache_ttl": 300  # 5 minutes
}

# Chart settings
CHART_CONFIG = {
    "height": 400,
    "diverging_scale": "RdYlGn",
}
