"""
Writers for campaign records, statistics, profiles and objective-space plots.

Output bytes depend only on the input: CSV goes through pandas, JSON is
written with sorted keys and SVG is rendered with a fixed hash salt and no
date stamp.
"""
import json
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .bench import ProfileCurve, RunRecord, stats_table  # noqa: E402
from .constants import (  # noqa: E402
    CSV,
    ITERATE_RECTANGLES,
    JSON,
    PROFILE_CURVES,
    REGION_SAMPLES,
    RUN_RECORDS,
    STATS_TABLE,
    SVG,
    VALID_ARTIFACTS,
    VALID_FORMATS,
)
from .exceptions import EmitError  # noqa: E402
from .problems import RegionSample  # noqa: E402
from .solver import SolveReport  # noqa: E402

logger = logging.getLogger(__name__)

SVG_STYLE = {
    "svg.hashsalt": "interval-newton",
    "svg.fonttype": "none",
    "path.simplify": False,
}

RUN_RECORD_COLUMNS = [
    "problem", "solver", "run_index", "x0", "iterations", "cpu_seconds", "status", "error",
]


def _validate_emit_params(artifact, fmt):
    if artifact not in VALID_ARTIFACTS:
        raise EmitError(
            "%s is not a valid artifact; must be one of %s" % (artifact, VALID_ARTIFACTS)
        )

    if fmt not in VALID_FORMATS:
        raise EmitError("%s is not a valid format; must be one of %s" % (fmt, VALID_FORMATS))

    if (artifact, fmt) not in _WRITERS:
        supported = sorted(f for a, f in _WRITERS if a == artifact)
        raise EmitError("%s cannot be written as %s; supported: %s" % (artifact, fmt, supported))


def _interval_columns(m: int) -> List[str]:
    return [name for i in range(1, m + 1) for name in ("G%s_lo" % i, "G%s_hi" % i)]


def _write_frame(frame: pd.DataFrame, path: Path) -> None:
    frame.to_csv(path, index=False, lineterminator="\n")


def _write_json(payload, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as outfile:
        json.dump(payload, outfile, indent=2, sort_keys=True)
        outfile.write("\n")


def _save_svg(fig, path: Path) -> None:
    try:
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)


def run_records_frame(records: Sequence[RunRecord]) -> pd.DataFrame:
    rows = [
        {
            "problem": r.problem,
            "solver": r.solver,
            "run_index": r.run_index,
            "x0": json.dumps(list(r.x0)),
            "iterations": r.iterations,
            "cpu_seconds": r.cpu_seconds,
            "status": r.status,
            "error": r.error or "",
        }
        for r in records
    ]
    return pd.DataFrame(rows, columns=RUN_RECORD_COLUMNS)


def iterate_frame(report: SolveReport) -> pd.DataFrame:
    """One row per iterate: k, x_1..x_n, G_i endpoints, xi and t."""
    n = len(report.x0)
    m = len(report.iterates[0].G_values)
    columns = ["k"] + ["x%s" % r for r in range(1, n + 1)] + _interval_columns(m) + ["xi", "t"]

    rows = []
    for record in report.iterates:
        row = [record.k] + [float(c) for c in record.x]
        for G in record.G_values:
            row.extend([G.lo, G.hi])
        row.extend([record.xi, record.t])
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def region_frame(samples: Sequence[RegionSample], n: Optional[int] = None,
                 m: Optional[int] = None) -> pd.DataFrame:
    """An empty sample still gets its header when n and m are given."""
    if samples:
        n, m = len(samples[0].x), len(samples[0].values)
    elif n is None or m is None:
        raise EmitError("an empty region sample needs n and m for its columns")
    columns = ["x%s" % r for r in range(1, n + 1)] + _interval_columns(m)
    rows = [
        [float(c) for c in sample.x] + [e for G in sample.values for e in (G.lo, G.hi)]
        for sample in samples
    ]
    return pd.DataFrame(rows, columns=columns)


def profile_frame(curves: Sequence[ProfileCurve]) -> pd.DataFrame:
    frames = [
        pd.DataFrame({
            "metric": curve.metric,
            "solver": curve.solver,
            "zeta": curve.zeta,
            "rho": curve.rho,
        })
        for curve in curves
    ]
    if not frames:
        return pd.DataFrame(columns=["metric", "solver", "zeta", "rho"])
    return pd.concat(frames, ignore_index=True)


def _rectangles(ax, values: Sequence, gid: str, facecolor: str, alpha: float) -> None:
    for index, (G1, G2) in enumerate(values):
        patch = Rectangle(
            (G1.lo, G2.lo), G1.width, G2.width,
            facecolor=facecolor, edgecolor="none", alpha=alpha,
        )
        patch.set_gid("%s-%s" % (gid, index))
        ax.add_patch(patch)


def _require_two_objectives(m: int, path: Path) -> None:
    if m != 2:
        raise EmitError("rectangle plots need exactly 2 objectives, got %s" % m, path)


def _region_svg(samples: Sequence[RegionSample], path: Path, title: str = "") -> None:
    if samples:
        _require_two_objectives(len(samples[0].values), path)

    with plt.rc_context(SVG_STYLE):
        fig, ax = plt.subplots(figsize=(6, 5))
        _rectangles(ax, [s.values for s in samples], "region", "#add8e6", 0.4)
        ax.autoscale_view()
        ax.set_xlabel("G1")
        ax.set_ylabel("G2")
        ax.set_title(title)
        _save_svg(fig, path)


def _iterates_svg(report: SolveReport, path: Path,
                  region: Optional[Sequence[RegionSample]] = None) -> None:
    _require_two_objectives(len(report.iterates[0].G_values), path)

    with plt.rc_context(SVG_STYLE):
        fig, ax = plt.subplots(figsize=(6, 5))
        if region:
            _rectangles(ax, [s.values for s in region], "region", "#add8e6", 0.3)

        values = [record.G_values for record in report.iterates]
        _rectangles(ax, values[:-1], "iterate", "#93c572", 0.6)
        _rectangles(ax, values[-1:], "final", "#ffc000", 0.9)

        centres = [(G1.midpoint, G2.midpoint) for G1, G2 in values]
        line, = ax.plot(
            [c[0] for c in centres], [c[1] for c in centres],
            color="#ff00ff", marker="o", markersize=3,
        )
        line.set_gid("trajectory")

        ax.autoscale_view()
        ax.set_xlabel("G1")
        ax.set_ylabel("G2")
        ax.set_title("%s (%s iterations)" % (report.problem, report.iterations))
        _save_svg(fig, path)


def _profile_svg(curves: Sequence[ProfileCurve], path: Path) -> None:
    metrics = sorted({curve.metric for curve in curves})

    with plt.rc_context(SVG_STYLE):
        fig, axes = plt.subplots(1, max(len(metrics), 1), figsize=(6 * max(len(metrics), 1), 4),
                                 squeeze=False)
        for ax, metric in zip(axes[0], metrics):
            for curve in curves:
                if curve.metric != metric:
                    continue
                line, = ax.step(curve.zeta, curve.rho, where="post", label=curve.solver)
                line.set_gid("profile-%s-%s" % (metric, curve.solver))
            ax.set_xlabel("performance ratio")
            ax.set_ylabel("fraction of problems")
            ax.set_ylim(0.0, 1.05)
            ax.set_title(metric)
            ax.legend(loc="lower right")
        _save_svg(fig, path)


def _payload_json(payload) -> object:
    if isinstance(payload, SolveReport):
        return payload.to_json()
    items = []
    for item in payload:
        if isinstance(item, RegionSample):
            items.append({
                "x": [float(c) for c in item.x],
                "G": [G.to_json() for G in item.values],
            })
        else:
            items.append(item.to_json())
    return items


_WRITERS: Dict[Tuple[str, str], Callable] = {
    (RUN_RECORDS, CSV): lambda records, path, **_: _write_frame(run_records_frame(records), path),
    (RUN_RECORDS, JSON): lambda records, path, **_: _write_json(_payload_json(records), path),
    (STATS_TABLE, CSV): lambda records, path, include_failed=True, **_: _write_frame(
        stats_table(records, include_failed), path
    ),
    (STATS_TABLE, JSON): lambda records, path, include_failed=True, **_: _write_json(
        stats_table(records, include_failed).to_dict(orient="records"), path
    ),
    (PROFILE_CURVES, CSV): lambda curves, path, **_: _write_frame(profile_frame(curves), path),
    (PROFILE_CURVES, JSON): lambda curves, path, **_: _write_json(_payload_json(curves), path),
    (PROFILE_CURVES, SVG): lambda curves, path, **_: _profile_svg(curves, path),
    (REGION_SAMPLES, CSV): lambda samples, path, n=None, m=None, **_: _write_frame(
        region_frame(samples, n, m), path
    ),
    (REGION_SAMPLES, JSON): lambda samples, path, **_: _write_json(_payload_json(samples), path),
    (REGION_SAMPLES, SVG): lambda samples, path, title="", **_: _region_svg(samples, path, title),
    (ITERATE_RECTANGLES, CSV): lambda report, path, **_: _write_frame(iterate_frame(report), path),
    (ITERATE_RECTANGLES, JSON): lambda report, path, **_: _write_json(report.to_json(), path),
    (ITERATE_RECTANGLES, SVG): lambda report, path, region=None, **_: _iterates_svg(
        report, path, region
    ),
}


def emit(artifact: str, fmt: str, payload, out_dir, name: Optional[str] = None,
         **options) -> Path:
    """
    Write one artifact to out_dir/<name or artifact>.<fmt> and return the
    path. The output directory is created when missing.
    """
    _validate_emit_params(artifact, fmt)

    out_dir = Path(out_dir)
    path = out_dir / ("%s.%s" % (name or artifact, fmt))
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        _WRITERS[(artifact, fmt)](payload, path, **options)
    except OSError as error:
        raise EmitError(str(error), path) from error

    logger.info("wrote %s", path)
    return path
