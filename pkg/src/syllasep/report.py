"""Deterministic text, CSV, and SVG renderings of analysis results.

Every float is formatted with %.9g so identical inputs always render
identical bytes.
"""

from __future__ import annotations

import io
import csv

import numpy as np

from .separability import SeparabilityReport

FLOAT_FMT = ".9g"

# color-blind-safe categorical palette, cycled past ten classes
PALETTE = (
    "#0072b2", "#d55e00", "#009e73", "#cc79a7", "#e69f00",
    "#56b4e9", "#f0e442", "#000000", "#999999", "#8c510a",
)


def _f(value: float) -> str:
    return format(float(value), FLOAT_FMT)


def format_report(report: SeparabilityReport) -> str:
    """Human-readable summary, stable across reruns."""
    lines = []
    lines.append("syllable separability report")
    lines.append("============================")
    lines.append(f"classes: {len(report.class_labels)}")
    lines.append(f"samples: {sum(report.class_counts.values())}")
    lines.append(f"lda_dims: {report.num_dims}")
    lines.append(f"gamma_lda: {_f(report.gamma_lda)}")
    lines.append(f"gamma_cov: {_f(report.gamma_cov)}")
    lines.append(f"cov_mode: {report.cov_mode}")
    lines.append(f"bootstrap_n: {report.bootstrap_n}")
    lines.append(f"seed: {report.seed}")
    lines.append("eigenvalues: " + ", ".join(_f(v) for v in report.eigenvalues))
    lines.append("")
    lines.append(f"overall mean silhouette: {_f(report.overall_mean)}" + _ci_suffix(report.overall_ci))
    lines.append(f"macro mean silhouette: {_f(report.macro_mean)}")
    lines.append("")
    for label in report.class_labels:
        ci = report.per_class_ci.get(label) if report.per_class_ci else None
        lines.append(
            f"class {label} (n={report.class_counts[label]}): "
            f"{_f(report.per_class_mean[label])}" + _ci_suffix(ci)
        )
    return "\n".join(lines) + "\n"


def _ci_suffix(ci: tuple[float, float] | None) -> str:
    if ci is None:
        return ""
    return f"  ci95=[{_f(ci[0])}, {_f(ci[1])}]"


def format_report_csv(report: SeparabilityReport) -> str:
    """Machine-readable rows: scope, label, n, mean, ci bounds."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["scope", "label", "n", "mean_silhouette", "ci_low", "ci_high"])

    def bounds(ci):
        return ["", ""] if ci is None else [_f(ci[0]), _f(ci[1])]

    writer.writerow(["overall", "", sum(report.class_counts.values()),
                     _f(report.overall_mean)] + bounds(report.overall_ci))
    writer.writerow(["macro", "", sum(report.class_counts.values()),
                     _f(report.macro_mean), "", ""])
    for label in report.class_labels:
        ci = report.per_class_ci.get(label) if report.per_class_ci else None
        writer.writerow(["class", label, report.class_counts[label],
                         _f(report.per_class_mean[label])] + bounds(ci))
    return out.getvalue()


def format_scatter_csv(ids: list[str], labels: list[str], points: np.ndarray) -> str:
    """First two projected dimensions per syllable, as CSV."""
    points = np.asarray(points, dtype=np.float64)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["syllable_id", "label", "d1", "d2"])
    for sid, label, row in zip(ids, labels, points):
        d2 = row[1] if row.shape[0] > 1 else 0.0
        writer.writerow([sid, label, _f(row[0]), _f(d2)])
    return out.getvalue()


def render_scatter_svg(labels: list[str], points: np.ndarray, title: str = "discriminant scatter") -> str:
    """A self-contained SVG scatter of the first two projected dims."""
    points = np.asarray(points, dtype=np.float64)
    xs = points[:, 0]
    ys = points[:, 1] if points.shape[1] > 1 else np.zeros(points.shape[0])

    width, height = 640.0, 480.0
    left, right, top, bottom = 60.0, 150.0, 40.0, 50.0
    plot_w = width - left - right
    plot_h = height - top - bottom

    def span(v):
        lo, hi = float(v.min()), float(v.max())
        if hi <= lo:
            lo, hi = lo - 1.0, hi + 1.0
        pad = 0.05 * (hi - lo)
        return lo - pad, hi + pad

    x0, x1 = span(xs)
    y0, y1 = span(ys)
    px = left + (xs - x0) / (x1 - x0) * plot_w
    py = top + (y1 - ys) / (y1 - y0) * plot_h

    classes = sorted(set(labels))
    color = {lab: PALETTE[i % len(PALETTE)] for i, lab in enumerate(classes)}

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f'<rect x="0" y="0" width="{width:g}" height="{height:g}" fill="white"/>',
        f'<text x="{left + plot_w / 2:.2f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
        f'<rect x="{left:.2f}" y="{top:.2f}" width="{plot_w:.2f}" height="{plot_h:.2f}" '
        f'fill="none" stroke="#444" stroke-width="1"/>',
    ]
    for value, xpos in ((x0, left), (x1, left + plot_w)):
        parts.append(
            f'<text x="{xpos:.2f}" y="{height - 28:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{value:.3g}</text>'
        )
    for value, ypos in ((y0, top + plot_h), (y1, top)):
        parts.append(
            f'<text x="{left - 8:.2f}" y="{ypos + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{value:.3g}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 10:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">dim 1</text>'
    )
    parts.append(
        f'<text x="16" y="{top + plot_h / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {top + plot_h / 2:.2f})">dim 2</text>'
    )
    for xi, yi, lab in zip(px, py, labels):
        parts.append(f'<circle cx="{xi:.2f}" cy="{yi:.2f}" r="3" fill="{color[lab]}" fill-opacity="0.75"/>')
    for i, lab in enumerate(classes):
        ly = top + 12 + 18 * i
        lx = left + plot_w + 16
        parts.append(f'<circle cx="{lx:.2f}" cy="{ly - 4:.2f}" r="4" fill="{color[lab]}"/>')
        parts.append(
            f'<text x="{lx + 10:.2f}" y="{ly:.2f}" font-family="sans-serif" font-size="12">{lab}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
