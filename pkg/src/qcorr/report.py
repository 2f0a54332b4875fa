"""Report documents and their table/JSON emitters.

A ReportDocument is assembled once by the scenario runner and only formatted
here; emitters never recompute statistics. Tables round to six significant
digits and mark off-support outcomes with a dash; JSON keeps full float
precision so reports round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ValidationError
from .measure import DensityFunction, DiscreteMeasure, ProductSpace
from .tolerance import PRODUCT_RULE_TOL

__all__ = ["DecompositionBlock", "ReportDocument", "emit_report"]

OFF_SUPPORT = "—"


@dataclass
class DecompositionBlock:
    """Correlation split for one decomposition of the scenario state."""

    name: str
    source: str  # "explicit", "spectral", or "canonical" (classical mode)
    size: int | None
    classical_product: DiscreteMeasure
    rho_c: DensityFunction | None
    rho_e: DensityFunction | None
    rho_c_error: str | None = None
    rho_e_error: str | None = None
    product_rule_residual: float | None = None

    @property
    def product_rule_pass(self) -> bool | None:
        if self.product_rule_residual is None:
            return None
        return self.product_rule_residual < PRODUCT_RULE_TOL


@dataclass
class ReportDocument:
    """Everything a run produces: measures, densities, flags, and notes."""

    scenario: dict
    mode: str
    space: ProductSpace
    joint_measure: DiscreteMeasure
    marginal_1: DiscreteMeasure
    marginal_2: DiscreteMeasure
    product_measure: DiscreteMeasure
    rho_t: DensityFunction
    blocks: list[DecompositionBlock]
    flags: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_jsonable(self) -> dict:
        return {
            "schema": "qcorr/report/1",
            "scenario": self.scenario,
            "mode": self.mode,
            "outcomes": [list(point) for point in self.space.points],
            "measures": {
                "joint": _measure_values(self.joint_measure),
                "marginal_1": _measure_values(self.marginal_1),
                "marginal_2": _measure_values(self.marginal_2),
                "product_of_marginals": _measure_values(self.product_measure),
            },
            "total_correlation": _density_values(self.rho_t),
            "decompositions": [
                {
                    "name": block.name,
                    "source": block.source,
                    "size": block.size,
                    "classical_product_measure": _measure_values(block.classical_product),
                    "classical_correlation": _density_values(block.rho_c),
                    "entanglement": _density_values(block.rho_e),
                    "classical_correlation_error": block.rho_c_error,
                    "entanglement_error": block.rho_e_error,
                    "product_rule_residual": block.product_rule_residual,
                    "product_rule_pass": block.product_rule_pass,
                }
                for block in self.blocks
            ],
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }


def _measure_values(measure: DiscreteMeasure) -> list[float]:
    return [measure.weight(o) for o in measure.space.outcomes]


def _density_values(rho: DensityFunction | None) -> list[float | None] | None:
    if rho is None:
        return None
    return [rho.get(o) for o in rho.space.outcomes]


def _fmt(value: float | None) -> str:
    if value is None:
        return OFF_SUPPORT
    return f"{value:.6g}"


def _point_header(point: tuple[str, str]) -> str:
    return f"({point[0]},{point[1]})"


def emit_report(report: ReportDocument, format: str = "table") -> str:
    """Render a report as fixed-width text or as JSON."""
    if format == "json":
        return json.dumps(report.to_jsonable(), indent=2)
    if format != "table":
        raise ValidationError(f"format must be 'table' or 'json', got {format!r}")
    return _emit_table(report)


def _emit_table(report: ReportDocument) -> str:
    points = report.space.points
    headers = [_point_header(p) for p in points]

    rows: list[tuple[str, list[str]]] = []
    rows.append(("joint measure", [_fmt(report.joint_measure.weight(p)) for p in points]))
    rows.append(
        ("product of marginals", [_fmt(report.product_measure.weight(p)) for p in points])
    )
    rows.append(("rho_t (total)", [_fmt(report.rho_t.get(p)) for p in points]))
    block_rows: list[list[tuple[str, list[str]]]] = []
    for block in report.blocks:
        entries = [
            (
                "classical product",
                [_fmt(block.classical_product.weight(p)) for p in points],
            ),
            (
                "rho_c (classical)",
                [_fmt(block.rho_c.get(p)) if block.rho_c else OFF_SUPPORT for p in points],
            ),
            (
                "rho_e (entanglement)",
                [_fmt(block.rho_e.get(p)) if block.rho_e else OFF_SUPPORT for p in points],
            ),
        ]
        block_rows.append(entries)

    label_width = max(
        [len(label) for label, _ in rows]
        + [len(label) for entries in block_rows for label, _ in entries]
    ) + 2
    widths = []
    for index, header in enumerate(headers):
        cells = [cells[index] for _, cells in rows]
        cells += [entry[1][index] for entries in block_rows for entry in entries]
        widths.append(max(len(header), *(len(c) for c in cells)) + 2)

    def line(label: str, cells: list[str], indent: str = "") -> str:
        out = f"{indent}{label:<{label_width}}"
        for width, cell in zip(widths, cells):
            out += f"{cell:<{width}}"
        return out.rstrip()

    lines = []
    name = report.scenario.get("name", "")
    lines.append(f"scenario: {name}")
    lines.append(f"mode: {report.mode}")
    left = ",".join(report.space.left.labels)
    right = ",".join(report.space.right.labels)
    lines.append(f"outcome space: {{{left}}} x {{{right}}}")
    lines.append("")
    lines.append(line("", headers))
    for label, cells in rows:
        lines.append(line(label, cells))
    lines.append("")
    lines.append(
        "marginal 1: "
        + "  ".join(
            f"{label}={_fmt(report.marginal_1.weight(label))}"
            for label in report.space.left.labels
        )
    )
    lines.append(
        "marginal 2: "
        + "  ".join(
            f"{label}={_fmt(report.marginal_2.weight(label))}"
            for label in report.space.right.labels
        )
    )
    for block, entries in zip(report.blocks, block_rows):
        lines.append("")
        size = f", {block.size} components" if block.size is not None else ""
        lines.append(f"decomposition '{block.name}' ({block.source}{size}):")
        for label, cells in entries:
            lines.append(line(label, cells, indent="  "))
        if block.rho_c_error:
            lines.append(f"  classical correlation unavailable: {block.rho_c_error}")
        if block.rho_e_error:
            lines.append(f"  entanglement unavailable: {block.rho_e_error}")
        if block.product_rule_residual is not None:
            verdict = "PASS" if block.product_rule_pass else "FAIL"
            lines.append(
                f"  product_rule_residual: {block.product_rule_residual:.6g} "
                f"(<{PRODUCT_RULE_TOL:g}: {verdict})"
            )
    if report.flags:
        lines.append("")
        lines.append("flags:")
        for key, value in report.flags.items():
            lines.append(f"  {key}: {json.dumps(value)}")
    if report.notes:
        lines.append("")
        lines.append("notes:")
        for note in report.notes:
            lines.append(f"  - {note}")
    return "\n".join(lines) + "\n"
