"""Batch renderer for threshold-ranking sweep CSVs.

Reads the harness CSV files (fixed ten-column header), draws mean-MSF or
mean-query charts with 95% CI bands and theory overlays, and writes a
plain-text sidecar next to each figure listing every plotted value. The
sidecar, not the image, is the verifiable output.
"""

from .figure import (
    CSV_HEADER,
    CsvFormatError,
    FigureSpec,
    Row,
    Series,
    parse_csv,
    render,
)

__all__ = [
    "CSV_HEADER",
    "CsvFormatError",
    "FigureSpec",
    "Row",
    "Series",
    "parse_csv",
    "render",
]
