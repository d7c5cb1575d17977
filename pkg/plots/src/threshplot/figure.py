"""CSV parsing and figure rendering.

The input contract is the sweep CSV of the simulation harness: the exact
ten-column header below, one row per (n, m) grid point, floats written with
full repr precision. Sidecar lines echo the CSV tokens verbatim, so sidecar
values equal input values exactly — no reformatting, resampling or smoothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

CSV_HEADER = (
    "n,m,seeds,mean_msf,ci95,mean_q_total,mean_q_search,"
    "mean_q_iso,mean_q_split,predicted_msf"
)

Y_COLUMNS = {"msf": "mean_msf", "queries": "mean_q_total"}

SIDECAR_VERSION = "threshplot sidecar v1"


class CsvFormatError(ValueError):
    """Malformed sweep CSV; carries the offending path and 1-based line."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


@dataclass(frozen=True)
class Row:
    """One parsed CSV row; `raw` keeps the original tokens for the sidecar."""

    n: int
    m: int
    seeds: int
    mean_msf: float
    ci95: float
    mean_q_total: float
    predicted_msf: float
    raw: tuple[str, ...]

    def token(self, column: str) -> str:
        return self.raw[CSV_HEADER.split(",").index(column)]


@dataclass(frozen=True)
class Series:
    label: str
    rows: tuple[Row, ...]


@dataclass(frozen=True)
class FigureSpec:
    """One figure: labelled CSV series, a y column, an overlay, an out path.

    overlay is None, "thm1" (prediction band center ± m/2), "thm2"
    (horizontal asymptote at the series' predicted MSF), or "nsqlog:C"
    (reference curve C·n²·ln n). Axis scales default to linear for MSF plots
    and log-log for query plots; x_log/y_log override per axis.
    """

    csv_paths: tuple[str, ...]
    labels: tuple[str, ...]
    y: str = "msf"
    overlay: str | None = None
    out_path: str = "figure.png"
    x_log: bool | None = None
    y_log: bool | None = None

    def __post_init__(self):
        if not self.csv_paths:
            raise ValueError("at least one input CSV is required")
        if len(self.labels) != len(self.csv_paths):
            raise ValueError("labels and csv paths must pair up")
        if self.y not in Y_COLUMNS:
            raise ValueError(f"y must be one of {sorted(Y_COLUMNS)}")
        if self.overlay is not None:
            self.overlay_params()

    def overlay_params(self) -> tuple[str, float | None]:
        """Split the overlay flag into (mode, constant)."""
        if self.overlay in ("thm1", "thm2"):
            return self.overlay, None
        mode, sep, constant = (self.overlay or "").partition(":")
        if mode == "nsqlog" and sep:
            try:
                return "nsqlog", float(constant)
            except ValueError:
                pass
        raise ValueError(f"unknown overlay {self.overlay!r}")

    def axis_scales(self) -> tuple[str, str]:
        loglog = self.y == "queries"
        x_log = loglog if self.x_log is None else self.x_log
        y_log = loglog if self.y_log is None else self.y_log
        return ("log" if x_log else "linear", "log" if y_log else "linear")


def parse_csv(path: str) -> tuple[Row, ...]:
    """Parse one sweep CSV; raise CsvFormatError with the bad line number."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise CsvFormatError(path, 0, f"cannot read: {exc}") from exc
    if not lines or lines[0] != CSV_HEADER:
        raise CsvFormatError(path, 1, "header does not match the sweep CSV contract")
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        tokens = tuple(line.split(","))
        if len(tokens) != len(CSV_HEADER.split(",")):
            raise CsvFormatError(
                path, line_no, f"expected {len(CSV_HEADER.split(','))} fields, got {len(tokens)}"
            )
        try:
            rows.append(
                Row(
                    n=int(tokens[0]),
                    m=int(tokens[1]),
                    seeds=int(tokens[2]),
                    mean_msf=float(tokens[3]),
                    ci95=float(tokens[4]),
                    mean_q_total=float(tokens[5]),
                    predicted_msf=float(tokens[9]),
                    raw=tokens,
                )
            )
        except ValueError as exc:
            raise CsvFormatError(path, line_no, f"bad field: {exc}") from exc
    if not rows:
        raise CsvFormatError(path, 1, "no data rows")
    return tuple(rows)


def _sidecar_lines(spec: FigureSpec, series: Sequence[Series]) -> list[str]:
    y_column = Y_COLUMNS[spec.y]
    lines = [f"# {SIDECAR_VERSION}", f"y={y_column}"]
    for s in series:
        lines.append(f"series={s.label}")
        for row in s.rows:
            # Query plots carry no CI column in the CSV; report ci=0.0.
            ci = row.token("ci95") if spec.y == "msf" else "0.0"
            lines.append(f"x={row.token('n')} y={row.token(y_column)} ci={ci}")
    if spec.overlay is not None:
        mode, constant = spec.overlay_params()
        for s in series:
            if mode == "thm2":
                lines.append(
                    f"overlay=thm2 series={s.label} "
                    f"value={s.rows[-1].token('predicted_msf')}"
                )
            elif mode == "thm1":
                for row in s.rows:
                    lines.append(
                        f"overlay=thm1 series={s.label} x={row.n} "
                        f"center={row.token('predicted_msf')} slack={row.m / 2!r}"
                    )
        if mode == "nsqlog":
            xs = sorted({row.n for s in series for row in s.rows})
            for n in xs:
                value = constant * n * n * math.log(n)
                lines.append(f"overlay=nsqlog c={constant!r} x={n} value={value!r}")
    return lines


def _draw(spec: FigureSpec, series: Sequence[Series]) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=100)
    y_column = Y_COLUMNS[spec.y]
    for s in series:
        xs = [row.n for row in s.rows]
        ys = [getattr(row, y_column) for row in s.rows]
        if spec.y == "msf":
            ax.errorbar(xs, ys, yerr=[row.ci95 for row in s.rows],
                        marker="o", capsize=3, label=s.label)
        else:
            ax.plot(xs, ys, marker="o", label=s.label)
    if spec.overlay is not None:
        mode, constant = spec.overlay_params()
        if mode == "thm2":
            for s in series:
                ax.axhline(s.rows[-1].predicted_msf, linestyle="--", color="gray")
        elif mode == "thm1":
            for s in series:
                xs = [row.n for row in s.rows]
                centers = [row.predicted_msf for row in s.rows]
                slacks = [row.m / 2 for row in s.rows]
                ax.fill_between(
                    xs,
                    [c - d for c, d in zip(centers, slacks)],
                    [c + d for c, d in zip(centers, slacks)],
                    alpha=0.2, color="gray", label="theory band",
                )
        else:
            xs = sorted({row.n for s in series for row in s.rows})
            ax.plot(xs, [constant * n * n * math.log(n) for n in xs],
                    linestyle="--", color="gray", label=f"{constant}·n²·ln n")
    x_scale, y_scale = spec.axis_scales()
    ax.set_xscale(x_scale)
    ax.set_yscale(y_scale)
    ax.set_xlabel("n")
    ax.set_ylabel("mean MSF" if spec.y == "msf" else "mean total queries")
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.out_path)
    plt.close(fig)


def render(spec: FigureSpec) -> tuple[str, str]:
    """Render the figure and its sidecar; return (image_path, sidecar_path).

    All CSVs are parsed and validated before anything is written, so a
    malformed or empty input leaves no output files behind. The sidecar lives
    next to the image at `<out_path>.txt`.
    """
    series = [
        Series(label, parse_csv(path))
        for label, path in zip(spec.labels, spec.csv_paths)
    ]
    lines = _sidecar_lines(spec, series)
    _draw(spec, series)
    sidecar_path = spec.out_path + ".txt"
    Path(sidecar_path).write_text("\n".join(lines) + "\n")
    return spec.out_path, sidecar_path
