import hashlib
import io
from decimal import Decimal, ROUND_HALF_UP

import pandas as pd

from drift_pipeline.drift_config import logger, FLOAT_FORMAT
from drift_pipeline.exceptions import ConfigError


def window_count(w, fraction):
    """
    Number of samples in a fraction of a window, round(w * fraction) half-up.

    The product is formed in Decimal so 100 * 0.1 is exactly 10.
    """
    product = Decimal(str(w)) * Decimal(str(fraction))
    return int(product.quantize(Decimal('1'), rounding=ROUND_HALF_UP))


def derive_seed(seed, repeat):
    """Per-repeat seed: seed + repeat index"""
    return int(seed) + int(repeat)


def report_digest(text):
    """SHA-256 of rendered report text, logged so repeated runs can be compared"""
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def render_table(frame, fmt="tsv", title=None):
    """
    Render a DataFrame as tab-separated text or a markdown table.

    Args:
        frame: DataFrame to render
        fmt: 'tsv' or 'md'
        title: optional heading (markdown only)

    Returns:
        str: rendered table ending with a newline
    """
    if fmt == "tsv":
        buffer = io.StringIO()
        frame.to_csv(buffer, sep='\t', index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        return buffer.getvalue()
    if fmt == "md":
        body = frame.to_markdown(index=False, floatfmt=".4f")
        heading = f"### {title}\n\n" if title else ""
        return f"{heading}{body}\n"
    raise ConfigError(f"Unknown output format: {fmt}")


def render_sections(sections, fmt="tsv"):
    """Render several (title, frame) sections separated by a blank line"""
    return "\n".join(render_table(frame, fmt, title) for title, frame in sections)


def write_output(text, out_path=None):
    """Write rendered report text to a file, or stdout when no path is given"""
    if out_path:
        with open(out_path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
        logger.info(f"📌 Report written to {out_path} (sha256 {report_digest(text)[:12]})")
    else:
        print(text, end='')


def parse_key_value_text(text, source="<config>"):
    """
    Parse plain-text key=value lines.

    Blank lines and '#' comments are skipped; keys are normalised so that
    'update-mode' and 'update_mode' are the same key.
    """
    values = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"{source}:{line_number}: expected key=value, got '{raw.strip()}'")
        key, value = line.split('=', 1)
        key = key.strip().replace('-', '_')
        if not key:
            raise ConfigError(f"{source}:{line_number}: empty key")
        values[key] = value.strip()
    return values


def load_key_value_file(path):
    """Read a key=value config file"""
    with open(path, 'r', encoding='utf-8') as handle:
        return parse_key_value_text(handle.read(), source=path)


def records_frame(rows, columns):
    """Build a DataFrame with a fixed column order"""
    return pd.DataFrame(list(rows), columns=columns)
