"""CSV tables and matplotlib figures for CLI reports.

Every command can write a delimited table next to its JSON output;
commands with a natural picture (certificates on the line or in the
plane, measure decay, covering-number fits) also render a PNG.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _save(fig, path: Path):
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def _certificate_rows(report):
    cert = report.get("certificate")
    if not cert:
        return []
    return [[i, j] for i, j in cert["graph"]["edges"]]


def _plot_line_certificate(ax, instance, report):
    pts = instance["points"]
    a_set, b_set = set(instance["A"]), set(instance["B"])
    cert = report.get("certificate")
    if cert:
        for i, j in cert["graph"]["edges"]:
            ax.plot([pts[i], pts[j]], [0, 0], color="tab:gray", lw=3, zorder=1)
    for idx in a_set:
        ax.plot(pts[idx], 0.05, "v", color="tab:blue", zorder=2)
    for idx in b_set:
        ax.plot(pts[idx], -0.05, "^", color="tab:orange", zorder=2)
    ax.set_ylim(-0.5, 0.5)
    ax.set_yticks([])
    ax.set_xlabel("coordinate")


def _plot_plane_certificate(ax, instance, report):
    pts = instance["points"]
    a_set, b_set = set(instance["A"]), set(instance["B"])
    cert = report.get("certificate")
    if cert:
        for i, j in cert["graph"]["edges"]:
            ax.plot([pts[i][0], pts[j][0]], [pts[i][1], pts[j][1]], color="tab:gray", lw=1.5, zorder=1)
        extra = set(cert["graph"]["vertices"]) - a_set - b_set
        for idx in extra:
            ax.plot(pts[idx][0], pts[idx][1], "o", color="tab:green", ms=4, zorder=2)
    for idx in a_set:
        ax.plot(pts[idx][0], pts[idx][1], "v", color="tab:blue", zorder=3)
    for idx in b_set:
        ax.plot(pts[idx][0], pts[idx][1], "^", color="tab:orange", zorder=3)
    ax.set_aspect("equal", adjustable="datalim")


def write_report_artifacts(report: dict, instance, out_dir, stem: str) -> list[str]:
    """Write the CSV (always) and the PNG (when the command has a figure).

    Returns the list of file names created, relative to ``out_dir``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    command = report["command"]
    created = []

    def csv_path():
        p = out / f"{stem}.csv"
        created.append(p.name)
        return p

    def png_path():
        p = out / f"{stem}.png"
        created.append(p.name)
        return p

    if command == "hausdorff":
        _write_csv(csv_path(), ["value"], [[report["value"]]])
    elif command in ("d1-line", "d1-exact"):
        _write_csv(
            csv_path(),
            ["value", "component_count"],
            [[report["value"], report["certificate"]["component_count"]]],
        )
        kind = instance.get("type")
        if kind == "line" or (kind == "euclidean" and instance.get("dim") == 2):
            fig, ax = plt.subplots(figsize=(6, 3))
            if kind == "line":
                _plot_line_certificate(ax, instance, report)
            else:
                _plot_plane_certificate(ax, instance, report)
            ax.set_title(f"{command}: value = {report['value']:.6g}")
            _save(fig, png_path())
    elif command == "d1-bounds":
        _write_csv(
            csv_path(),
            ["hausdorff_lower", "value", "mst_upper"],
            [[report["hausdorff_lower"], report["value"], report["mst_upper"]]],
        )
        fig, ax = plt.subplots(figsize=(4, 3))
        names = ["Hausdorff", "exact", "MST-only"]
        vals = [report["hausdorff_lower"], report["value"], report["mst_upper"]]
        ax.bar(names, vals, color=["tab:blue", "tab:gray", "tab:orange"])
        ax.set_ylabel("distance")
        _save(fig, png_path())
    elif command == "walk":
        seq = report["sequence"]
        steps = report["step_lengths"]
        rows = [[k, seq[k], seq[k + 1], steps[k]] for k in range(len(steps))]
        _write_csv(csv_path(), ["step", "from", "to", "length"], rows)
        fig, ax = plt.subplots(figsize=(5, 3))
        cum = [0.0]
        for s in steps:
            cum.append(cum[-1] + s)
        ax.step(range(len(cum)), cum, where="post")
        ax.axhline(2 * report["tree_length"], ls="--", color="tab:red", label="2 x tree length")
        ax.set_xlabel("walk step")
        ax.set_ylabel("cumulative length")
        ax.legend()
        _save(fig, png_path())
    elif command == "dim-estimate":
        rows = [
            [e, n, x]
            for e, n, x in zip(report["ladder"], report["covering_numbers"], report["exact"])
        ]
        _write_csv(csv_path(), ["epsilon", "covering_number", "exact"], rows)
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.loglog(report["ladder"], report["covering_numbers"], "o-")
        ax.invert_xaxis()
        ax.set_xlabel("epsilon")
        ax.set_ylabel("covering number")
        ax.set_title(f"slope estimate: {report['estimate']:.3f}")
        _save(fig, png_path())
    elif command == "certify-zero-length":
        measures = report["level_measures"]
        _write_csv(csv_path(), ["level", "measure"], list(enumerate(measures)))
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.semilogy(range(len(measures)), [max(m, 1e-300) for m in measures], "o-")
        ax.set_xlabel("level")
        ax.set_ylabel("level measure")
        ax.set_title(
            "certified" if report["result"] == "certificate" else "refused (no decay)"
        )
        _save(fig, png_path())
    elif command == "d1-compact":
        _write_csv(
            csv_path(),
            ["depth", "lower", "upper", "line_distance", "error_a", "error_b"],
            [[
                report["depth"],
                report["lower"],
                report["upper"],
                report["line_distance"],
                report["error_a"],
                report["error_b"],
            ]],
        )
        fig, ax = plt.subplots(figsize=(4, 3))
        mid = report["line_distance"]
        ax.errorbar(
            [report["depth"]],
            [mid],
            yerr=[[mid - report["lower"]], [report["upper"] - mid]],
            fmt="o",
            capsize=6,
        )
        ax.set_xlabel("depth")
        ax.set_ylabel("distance bracket")
        _save(fig, png_path())
    elif command == "cauchy-demo":
        rows = [
            [s["depth_from"], s["depth_to"], s["distance"], s["envelope"]]
            for s in report["steps"]
        ]
        _write_csv(csv_path(), ["depth_from", "depth_to", "distance", "envelope"], rows)
        fig, ax = plt.subplots(figsize=(5, 4))
        xs = [s["depth_from"] for s in report["steps"]]
        ax.semilogy(xs, [max(s["distance"], 1e-300) for s in report["steps"]], "o-", label="distance")
        ax.semilogy(xs, [s["envelope"] for s in report["steps"]], "--", label="envelope")
        ax.set_xlabel("depth")
        ax.set_ylabel("successive sample distance")
        ax.legend()
        _save(fig, png_path())
    elif command == "selftest":
        rows = [[s["suite"], s["cases"], s["mismatches"]] for s in report["suites"]]
        _write_csv(csv_path(), ["suite", "cases", "mismatches"], rows)
    else:
        _write_csv(csv_path(), ["key", "value"], sorted(report.items()))
    return created
