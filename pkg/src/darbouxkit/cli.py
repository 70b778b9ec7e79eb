"""Command-line front end.

Subcommands: frame, rectify, isometry, theorem, catalog. Exit codes:
0 when every requested check passes or is skipped, 1 when a check fails or a
fixture is degenerate for the requested analysis, 2 for configuration errors.
All outputs are deterministic for a fixed config and seed.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .numerics import (
    DEFAULT_POLICY,
    ConfigError,
    CurvatureDegenerateError,
    TolerancePolicy,
    ToolkitError,
)
from .surfaces import CATALOG_NAMES
from .frames import (
    CURVE_FIXTURE_NAMES,
    curve_fixture,
    darboux,
    embed,
    frame_relation_check,
    frenet,
    s_grid,
    unit_speed_check,
)
from .rectifying import (
    classify,
    decompose,
    fixture_rectifying,
    reconstruct,
    rectifying_summary,
)
from .isometry import (
    PAIR_NAMES,
    canonical_transfer_curves,
    geodesic_preservation_check,
    heatmap_rows,
    metric_deviation,
    pair_catalog,
    transfer_curve,
)
from .theorems import THEOREM_FIXTURE_NAMES, run_all

FORMATS = ("csv", "json", "svg")
FRAME_FIXTURES = CURVE_FIXTURE_NAMES + ("dilated-spherical",)


@dataclass(frozen=True)
class RunConfig:
    resolution: int = 33
    seed: int = 0
    n_coeffs: int = 6
    theorem_samples: int = 9
    strict: bool = False
    formats: tuple[str, ...] = ("csv", "json")
    out_dir: str = "."
    policy: TolerancePolicy = DEFAULT_POLICY
    fixture_params: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        if self.resolution < 8:
            raise ConfigError(f"resolution must be at least 8, got {self.resolution}")
        if self.theorem_samples < 3:
            raise ConfigError("theorem_samples must be at least 3")
        if self.n_coeffs < 1:
            raise ConfigError("n_coeffs must be at least 1")
        for f in self.formats:
            if f not in FORMATS:
                raise ConfigError(f"unknown format '{f}'")


_CONFIG_KEYS = {"resolution", "seed", "n_coeffs", "theorem_samples", "strict",
                "formats", "out_dir", "tolerances", "fixture_params"}


def load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    policy = DEFAULT_POLICY
    if "tolerances" in raw:
        tols = raw["tolerances"]
        if not isinstance(tols, dict):
            raise ConfigError("'tolerances' must be an object")
        valid = set(TolerancePolicy.__dataclass_fields__)
        bad = set(tols) - valid
        if bad:
            raise ConfigError(f"unknown tolerance names: {', '.join(sorted(bad))}")
        try:
            policy = replace(DEFAULT_POLICY, **{k: float(v) for k, v in tols.items()})
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad tolerance value: {exc}") from exc
    fixture_params = raw.get("fixture_params", {})
    if not isinstance(fixture_params, dict):
        raise ConfigError("'fixture_params' must be an object")
    try:
        return RunConfig(
            resolution=int(raw.get("resolution", 33)),
            seed=int(raw.get("seed", 0)),
            n_coeffs=int(raw.get("n_coeffs", 6)),
            theorem_samples=int(raw.get("theorem_samples", 9)),
            strict=bool(raw.get("strict", False)),
            formats=tuple(raw.get("formats", ("csv", "json"))),
            out_dir=str(raw.get("out_dir", ".")),
            policy=policy,
            fixture_params=tuple(sorted(
                (str(k), float(v)) for k, v in fixture_params.items())),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad config value: {exc}") from exc


def _merge_cli(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.out is not None:
        updates["out_dir"] = args.out
    if args.strict:
        updates["strict"] = True
    if args.format:
        updates["formats"] = tuple(args.format)
    return replace(cfg, **updates) if updates else cfg


# ---------------------------------------------------------------------------
# deterministic writers
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(x) for x in row) for row in rows]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _jsonable(obj):
    if isinstance(obj, float):
        return None if math.isnan(obj) else obj
    if isinstance(obj, (np.floating,)):
        return _jsonable(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    return obj


def write_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n")


def write_svg(path: str, series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
              title: str, width: int = 640, height: int = 360) -> None:
    """Minimal line chart: one polyline per (label, xs, ys) series."""
    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys if not math.isnan(y)]
    if not xs_all or not ys_all:
        xs_all, ys_all = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 - x0 < 1e-30:
        x1 = x0 + 1.0
    if y1 - y0 < 1e-30:
        y1 = y0 + 1.0
    pad = 40.0

    def sx(x: float) -> float:
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y: float) -> float:
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{pad}" y="20" font-family="monospace" font-size="13">{title}</text>',
    ]
    for i, (label, xs, ys) in enumerate(series):
        pts = " ".join(f"{sx(float(x)):.6g},{sy(float(y)):.6g}"
                       for x, y in zip(xs, ys) if not math.isnan(float(y)))
        color = colors[i % len(colors)]
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                     f'points="{pts}"/>')
        parts.append(f'<text x="{pad}" y="{34 + 14 * i}" fill="{color}" '
                     f'font-family="monospace" font-size="11">{label}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def _outpath(cfg: RunConfig, filename: str) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return os.path.join(cfg.out_dir, filename)


def _resolve_curve(name: str, cfg: RunConfig):
    if name == "dilated-spherical":
        return fixture_rectifying(dict(cfg.fixture_params))
    return curve_fixture(name)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_frame(args: argparse.Namespace, cfg: RunConfig) -> int:
    policy = cfg.policy
    curve, patch = _resolve_curve(args.fixture, cfg)
    samples = s_grid(curve, cfg.resolution, margin=0.02)
    rows = []
    max_orth = max_curv_rel = max_frame_rel = 0.0
    try:
        for s in samples:
            s = float(s)
            fr = frenet(curve, patch, s, policy)
            db = darboux(curve, patch, s, policy)
            theta = db.theta if db.theta is not None else float("nan")
            rows.append((s, *fr.T, *fr.N, *fr.B, *db.P, *db.U,
                         fr.kappa, fr.tau, db.k_n, db.k_g, theta))
            M = np.stack([fr.T, fr.N, fr.B])
            max_orth = max(max_orth, float(np.max(np.abs(M @ M.T - np.eye(3)))))
            max_curv_rel = max(max_curv_rel,
                               abs(db.k_n ** 2 + db.k_g ** 2 - fr.kappa ** 2))
            rel = frame_relation_check(fr, db, policy)
            if rel.status != "skipped":
                max_frame_rel = max(max_frame_rel, rel.max_dev)
    except CurvatureDegenerateError as exc:
        print(f"frame: degenerate fixture '{args.fixture}': {exc}", file=sys.stderr)
        return 1
    speed = unit_speed_check(curve, patch, samples.tolist(), policy)
    header = ["s",
              "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz",
              "Px", "Py", "Pz", "Ux", "Uy", "Uz",
              "kappa", "tau", "k_n", "k_g", "theta"]
    if "csv" in cfg.formats:
        write_csv(_outpath(cfg, f"frame_{args.fixture}.csv"), header, rows)
    if "json" in cfg.formats:
        write_json(_outpath(cfg, f"frame_{args.fixture}.json"), {
            "fixture": args.fixture,
            "curve": curve.name,
            "patch": patch.name,
            "samples": len(rows),
            "max_orthonormality_dev": max_orth,
            "max_curvature_relation_dev": max_curv_rel,
            "max_frame_rotation_dev": max_frame_rel,
            "max_unit_speed_dev": speed.max_dev,
        })
    if "svg" in cfg.formats:
        ss = [r[0] for r in rows]
        write_svg(_outpath(cfg, f"frame_{args.fixture}.svg"),
                  [("kappa", ss, [r[16] for r in rows]),
                   ("tau", ss, [r[17] for r in rows]),
                   ("k_n", ss, [r[18] for r in rows]),
                   ("k_g", ss, [r[19] for r in rows])],
                  title=f"frames along {curve.name}")
    print(f"frame: {args.fixture} ok "
          f"(orthonormality {max_orth:.3e}, rotation {max_frame_rel:.3e})")
    return 0


def cmd_rectify(args: argparse.Namespace, cfg: RunConfig) -> int:
    policy = cfg.policy
    curve, patch = _resolve_curve(args.fixture, cfg)
    samples = s_grid(curve, cfg.resolution, margin=0.02)
    rows = []
    try:
        for s in samples:
            s = float(s)
            dec = decompose(curve, patch, s, policy)
            db = darboux(curve, patch, s, policy)
            rows.append((s, dec.lam, dec.mu, dec.residual, db.k_n, db.k_g))
        summary = rectifying_summary(curve, patch, samples.tolist(), policy)
        cls = classify(curve, patch, samples.tolist(), policy)
        recon_dev = float("nan")
        if summary.rectifying:
            recon_dev = 0.0
            for s in samples[:: max(1, len(samples) // 8)]:
                rebuilt = reconstruct(curve, patch, float(s), cls, policy)
                recon_dev = max(recon_dev, float(np.max(np.abs(
                    rebuilt - embed(curve, patch, float(s))))))
    except CurvatureDegenerateError as exc:
        print(f"rectify: degenerate fixture '{args.fixture}': {exc}",
              file=sys.stderr)
        return 1
    if "csv" in cfg.formats:
        write_csv(_outpath(cfg, f"rectify_{args.fixture}.csv"),
                  ["s", "lambda", "mu", "residual", "k_n", "k_g"], rows)
    if "json" in cfg.formats:
        write_json(_outpath(cfg, f"rectify_{args.fixture}.json"), {
            "fixture": args.fixture,
            "curve": summary.curve_name,
            "rectifying": summary.rectifying,
            "max_abs_residual": summary.max_abs_residual,
            "residual_tolerance": summary.tol_rect,
            "class": cls.tag,
            "max_abs_k_g": cls.max_abs_k_g,
            "max_abs_k_n": cls.max_abs_k_n,
            "reconstruction_max_dev": recon_dev,
        })
    if "svg" in cfg.formats:
        ss = [r[0] for r in rows]
        write_svg(_outpath(cfg, f"rectify_{args.fixture}.svg"),
                  [("lambda", ss, [r[1] for r in rows]),
                   ("mu", ss, [r[2] for r in rows]),
                   ("residual", ss, [r[3] for r in rows])],
                  title=f"position decomposition along {curve.name}")
    verdict = "rectifying" if summary.rectifying else "not rectifying"
    print(f"rectify: {args.fixture} {verdict} "
          f"(max residual {summary.max_abs_residual:.3e}, class {cls.tag})")
    if cfg.strict and not summary.rectifying:
        return 1
    return 0


def cmd_isometry(args: argparse.Namespace, cfg: RunConfig) -> int:
    policy = cfg.policy
    pairs = pair_catalog()
    names = [args.pair] if args.pair else list(PAIR_NAMES)
    failures = 0
    summary = []
    for name in names:
        pair = pairs[name]
        md = metric_deviation(pair, cfg.resolution, policy)
        ok = md.isometric == pair.expect_isometric
        failures += 0 if ok else 1
        entry = {
            "pair": name,
            "expected_isometric": pair.expect_isometric,
            "metric_max_dev": md.max_dev,
            "metric_argmax": [md.arg_u, md.arg_v],
            "isometric": md.isometric,
            "as_expected": ok,
            "curves": [],
        }
        if "csv" in cfg.formats:
            write_csv(_outpath(cfg, f"isometry_{name}_heat.csv"),
                      ["u", "v", "dev"],
                      heatmap_rows(pair, cfg.resolution, policy))
        if md.isometric:
            svg_series = []
            for curve in canonical_transfer_curves(pair):
                rep = geodesic_preservation_check(pair, curve,
                                                  grid=min(cfg.resolution, 17),
                                                  policy=policy)
                entry["curves"].append({
                    "curve": curve.name,
                    "source_class": rep.source_class.tag,
                    "target_class": rep.target_class.tag,
                    "max_kg_dev": rep.max_kg_dev,
                    "preserved": rep.preserved,
                })
                if not rep.preserved:
                    failures += 1
                if "svg" in cfg.formats:
                    ss = s_grid(curve, min(cfg.resolution, 17), margin=0.02)
                    moved = transfer_curve(pair, curve, policy)
                    kgs = [darboux(curve, pair.source, float(s), policy).k_g
                           for s in ss]
                    kgt = [darboux(moved, pair.target, float(s), policy).k_g
                           for s in ss]
                    svg_series.append((f"{curve.name} src", ss.tolist(), kgs))
                    svg_series.append((f"{curve.name} tgt", ss.tolist(), kgt))
            if "svg" in cfg.formats and svg_series:
                write_svg(_outpath(cfg, f"isometry_{name}.svg"), svg_series,
                          title=f"geodesic curvature across {name}")
        summary.append(entry)
        state = "ok" if ok else "UNEXPECTED"
        print(f"isometry: {name} max metric dev {md.max_dev:.3e} "
              f"(isometric={md.isometric}, {state})")
    if "json" in cfg.formats:
        write_json(_outpath(cfg, "isometry_summary.json"), {"pairs": summary})
    return 1 if failures else 0


def cmd_theorem(args: argparse.Namespace, cfg: RunConfig) -> int:
    names = args.fixture if args.fixture else None
    reports = run_all(names=names, grid=cfg.theorem_samples,
                      n_coeffs=cfg.n_coeffs, seed=cfg.seed, policy=cfg.policy)
    payload = [{
        "theorem_id": r.theorem_id,
        "case_tag": r.case_tag,
        "hypothesis_status": r.hypothesis_status,
        "verdict": r.verdict,
        "max_dev": r.max_dev,
        "tol": r.tol,
        "fixture": r.fixture,
        "notes": r.notes,
        "samples": [{"s": row.s, "lhs": row.lhs, "rhs": row.rhs, "dev": row.dev}
                    for row in r.samples],
    } for r in reports]
    if "json" in cfg.formats:
        write_json(_outpath(cfg, "theorem_reports.json"), {"reports": payload})
    if "csv" in cfg.formats:
        write_csv(_outpath(cfg, "theorem_summary.csv"),
                  ["fixture", "theorem_id", "case_tag", "hypothesis_status",
                   "verdict", "max_dev", "tol"],
                  [(r.fixture, r.theorem_id, r.case_tag, r.hypothesis_status,
                    r.verdict, r.max_dev, r.tol) for r in reports])
    n_pass = sum(1 for r in reports if r.verdict == "pass")
    n_skip = sum(1 for r in reports if r.verdict == "skipped")
    n_fail = sum(1 for r in reports if r.verdict == "fail")
    for r in reports:
        dev = "-" if math.isnan(r.max_dev) else f"{r.max_dev:.3e}"
        print(f"theorem: {r.fixture:28s} {r.theorem_id:5s} case {r.case_tag:3s} "
              f"{r.verdict:7s} max_dev {dev}")
    print(f"theorem: {n_pass} pass, {n_skip} skipped, {n_fail} fail")
    return 1 if n_fail else 0


def cmd_catalog(args: argparse.Namespace, cfg: RunConfig) -> int:
    listing = {
        "surfaces": list(CATALOG_NAMES),
        "curve_fixtures": list(FRAME_FIXTURES),
        "isometry_pairs": list(PAIR_NAMES),
        "theorem_fixtures": list(THEOREM_FIXTURE_NAMES),
    }
    if "json" in cfg.formats:
        write_json(_outpath(cfg, "catalog.json"), listing)
    for section, names in listing.items():
        print(f"{section}:")
        for name in names:
            print(f"  {name}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darbouxkit",
        description="verification toolkit for curve frames, rectifying "
                    "decompositions, and isometry transfer identities")
    parser.add_argument("--config", default=None, help="JSON run configuration")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--strict", action="store_true",
                        help="treat findings (e.g. non-rectifying input) as failures")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for coefficient draws")
    parser.add_argument("--format", action="append", choices=FORMATS,
                        help="output format, repeatable")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("frame", help="Frenet and Darboux frames along a fixture")
    p.add_argument("fixture", choices=FRAME_FIXTURES)
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("rectify", help="position decomposition and class report")
    p.add_argument("fixture", nargs="?", default="dilated-spherical",
                   choices=FRAME_FIXTURES)
    p.set_defaults(func=cmd_rectify)

    p = sub.add_parser("isometry", help="metric comparison and curve transfer")
    p.add_argument("pair", nargs="?", default=None, choices=PAIR_NAMES)
    p.set_defaults(func=cmd_isometry)

    p = sub.add_parser("theorem", help="run the transfer-identity checkers")
    p.add_argument("--fixture", action="append", choices=THEOREM_FIXTURE_NAMES,
                   help="restrict to named fixtures, repeatable")
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("catalog", help="list built-in surfaces and fixtures")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_cli(load_config(args.config), args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
