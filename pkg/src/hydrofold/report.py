"""CSV/JSON serialization of energy reports and SVG renderings."""
from __future__ import annotations

import csv
import io
import json
from typing import Sequence as Seq
from xml.sax.saxutils import escape

from hydrofold.energy import (
    CompatResult,
    ConventionSet,
    EnergyReport,
    FoldEnergy,
    align_bits,
)
from hydrofold.fold import LatticeEmbedding

CSV_HEADER = ("fold_index", "energy", "self_avoiding")
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2")


def _fmt(value: float) -> str:
    return f"{value:.10f}"


def report_to_csv(report: EnergyReport) -> str:
    buf = io.StringIO()
    buf.write(f"# unfolded_energy,{_fmt(report.unfolded_energy)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for f in report.per_fold:
        writer.writerow((f.fold_index, _fmt(f.energy), "true" if f.self_avoiding else "false"))
    return buf.getvalue()


def report_from_csv(text: str, conventions: ConventionSet) -> EnergyReport:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# unfolded_energy,"):
        raise ValueError("missing '# unfolded_energy' header line")
    unfolded = float(lines[0].split(",", 1)[1])
    rows = list(csv.DictReader(lines[1:]))
    per_fold = tuple(
        FoldEnergy(int(r["fold_index"]), float(r["energy"]), r["self_avoiding"] == "true") for r in rows
    )
    return EnergyReport(per_fold, unfolded, conventions)


def report_to_dict(report: EnergyReport) -> dict:
    return {
        "conventions": report.conventions.to_dict(),
        "unfolded_energy": report.unfolded_energy,
        "folds": [
            {"fold_index": f.fold_index, "energy": f.energy, "self_avoiding": f.self_avoiding}
            for f in report.per_fold
        ],
    }


def report_to_json(report: EnergyReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_from_json(text: str) -> EnergyReport:
    data = json.loads(text)
    return EnergyReport(
        tuple(FoldEnergy(int(f["fold_index"]), float(f["energy"]), bool(f["self_avoiding"])) for f in data["folds"]),
        float(data["unfolded_energy"]),
        ConventionSet.from_dict(data["conventions"]),
    )


def compat_to_dict(result: CompatResult) -> dict:
    t = result.targets
    return {
        "targets": {"e": t.e, "E1": t.E1, "E2": t.E2},
        "best": result.best.to_dict(),
        "residuals": list(result.residuals),
        "exact_match": result.exact_match,
        "candidates": [
            {
                "conventions": c.conventions.to_dict(),
                "values": list(c.values),
                "residuals": list(c.residuals),
                "norm": c.norm,
            }
            for c in result.all_candidates
        ],
        "skipped": [{"conventions": conv.to_dict(), "reason": reason} for conv, reason in result.skipped],
    }


def compat_to_json(result: CompatResult) -> str:
    return json.dumps(compat_to_dict(result), indent=2) + "\n"


def compat_summary(result: CompatResult, limit: int = 10) -> str:
    lines = [
        f"targets: e={result.targets.e:g} E1={result.targets.E1:.10f} E2={result.targets.E2:.10f}",
        f"candidates evaluated: {len(result.all_candidates)} (skipped {len(result.skipped)} infeasible)",
        f"best: {result.best.label()}",
        "residuals: de={:+.4f} dE1={:+.4f} dE2={:+.4f}".format(*result.residuals),
        f"exact_match: {str(result.exact_match).lower()}",
        "",
        f"{'rank':>4}  {'L1':>12}  {'e':>14}  {'E1':>16}  {'E2':>16}  conventions",
    ]
    for rank, c in enumerate(result.all_candidates[:limit], 1):
        e, e1, e2 = c.values
        lines.append(f"{rank:>4}  {c.norm:>12.4f}  {e:>14.4f}  {e1:>16.10f}  {e2:>16.10f}  {c.conventions.label()}")
    return "\n".join(lines) + "\n"


def render_folds_svg(
    folds: Seq[tuple[str, LatticeEmbedding]],
    bits: Seq[int],
    mask_alignment: str = "align_equal",
    unit: int = 20,
) -> str:
    """One polyline per fold with hydrophobic vertices drawn as filled circles."""
    if not folds:
        raise ValueError("nothing to render")
    xs = [x for _, emb in folds for x, _ in emb.points]
    ys = [y for _, emb in folds for _, y in emb.points]
    # y grows downward in SVG
    min_x, max_x = min(xs) - 1, max(xs) + 1
    min_y, max_y = -max(ys) - 1, -min(ys) + 1
    width, height = (max_x - min_x) * unit, (max_y - min_y) * unit
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{min_x * unit} {min_y * unit} {width} {height}" '
        f'width="{width}" height="{height}">'
    ]
    for k, (label, emb) in enumerate(folds):
        color = PALETTE[k % len(PALETTE)]
        aligned = align_bits(bits, len(emb), mask_alignment)
        coords = " ".join(f"{x * unit},{-y * unit}" for x, y in emb.points)
        out.append(f'<g id="fold-{k + 1}"><title>{escape(label)}</title>')
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>')
        for (x, y), b in zip(emb.points, aligned):
            if b:
                out.append(f'<circle cx="{x * unit}" cy="{-y * unit}" r="{unit // 4}" fill="{color}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_energy_svg(report: EnergyReport, width: int = 640, height: int = 320, pad: int = 40) -> str:
    """Energy against fold index, with the unfolded energy as a dashed baseline."""
    energies = report.energies
    lo = min(min(energies), report.unfolded_energy)
    hi = max(max(energies), report.unfolded_energy)
    span = hi - lo or 1.0
    n = len(energies)

    def px(i):
        return pad + (width - 2 * pad) * (i / max(n - 1, 1))

    def py(e):
        return height - pad - (height - 2 * pad) * ((e - lo) / span)

    pts = " ".join(f"{px(i):.2f},{py(e):.2f}" for i, e in enumerate(energies))
    base = py(report.unfolded_energy)
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
        f'<line x1="{pad}" y1="{base:.2f}" x2="{width - pad}" y2="{base:.2f}" stroke="#888" stroke-dasharray="4 3"/>',
        f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>',
        f'<text x="{pad}" y="{pad - 12}" font-size="12">energy by fold index '
        f"(min {min(energies):.4f}, unfolded {report.unfolded_energy:.4f})</text>",
        "</svg>",
    ]) + "\n"
