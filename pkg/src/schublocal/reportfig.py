"""Render a scan into a delimited summary plus a few overview figures.

Reads the JSON-lines records a `scan` run writes, emits `summary.csv`
alongside PNG figures into the output directory.  Everything is static
file output; there is no interactive display.
"""

from __future__ import annotations

import csv
import json
from collections import Counter, defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render_report"]

CSV_FIELDS = ["w", "x", "lw", "lx", "feasible", "exact", "smooth", "mult"]


def _load_records(path: Path) -> list[dict]:
    records = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def _write_csv(records: list[dict], out: Path) -> None:
    with open(out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for rec in records:
            writer.writerow(
                {
                    "w": " ".join(map(str, rec["w"])),
                    "x": " ".join(map(str, rec["x"])),
                    "lw": rec.get("lw", ""),
                    "lx": rec.get("lx", ""),
                    "feasible": rec["feasible"],
                    "exact": rec.get("exact", ""),
                    "smooth": rec.get("smooth", ""),
                    "mult": rec.get("mult", ""),
                }
            )


def _fig_mult_histogram(records: list[dict], out: Path) -> None:
    mults = [rec["mult"] for rec in records if rec.get("mult") is not None]
    fig, ax = plt.subplots(figsize=(6, 4))
    if mults:
        counts = Counter(mults)
        xs = sorted(counts)
        ax.bar(xs, [counts[v] for v in xs], color="#34618c")
        ax.set_xticks(xs)
    else:
        ax.text(0.5, 0.5, "no multiplicities in scan\n(rerun with --with-mult)",
                ha="center", va="center", transform=ax.transAxes)
    ax.set_xlabel("multiplicity")
    ax.set_ylabel("number of (w, x) pairs")
    ax.set_title("Multiplicities at cominuscule points")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def _fig_feasible_by_length(records: list[dict], out: Path) -> None:
    by_gap: dict[int, list[int]] = defaultdict(list)
    for rec in records:
        gap = abs(rec["lx"] - rec["lw"])
        by_gap[gap].append(1 if rec["feasible"] else 0)
    gaps = sorted(by_gap)
    fractions = [sum(by_gap[gp]) / len(by_gap[gp]) for gp in gaps]
    totals = [len(by_gap[gp]) for gp in gaps]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(gaps, fractions, "o-", color="#8c3461")
    for gp, fr, n in zip(gaps, fractions, totals):
        ax.annotate(str(n), (gp, fr), textcoords="offset points", xytext=(0, 6), fontsize=7)
    ax.set_ylim(-0.05, 1.05)
    ax.set_xlabel("length gap |l(x) - l(w)|")
    ax.set_ylabel("fraction of feasible pairs")
    ax.set_title("Cominuscule feasibility by length gap")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def render_report(scan_path: Path, outdir: Path) -> list[Path]:
    """Write summary.csv and the overview figures; returns the paths."""
    records = _load_records(scan_path)
    if not records:
        raise ValueError(f"no records found in {scan_path}")
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    csv_path = outdir / "summary.csv"
    _write_csv(records, csv_path)
    written.append(csv_path)
    fig1 = outdir / "mult_histogram.png"
    _fig_mult_histogram(records, fig1)
    written.append(fig1)
    fig2 = outdir / "feasible_by_length.png"
    _fig_feasible_by_length(records, fig2)
    written.append(fig2)
    return written
