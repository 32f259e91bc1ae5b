"""Command-line surface: config ingestion, CSV/SVG emission, oracle reports.

Subcommands
-----------
spectrum        particle numbers per mode -> spectrum.csv
grid            correlator map -> grid.csv + grid.svg
singularities   singular-line catalog -> singularities.csv
compare         analytic results vs brute-force oracles -> compare.csv/.txt
figure          presets fig2 | fig4a | fig4b | smooth

All numeric output uses 12 significant digits with "." decimals and LF
line endings, so identical configs produce byte-identical files.  The
environment variable QWAVE_OUT overrides the output directory.  Exit
codes: 0 ok, 1 validation error, 2 comparison failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import yaml

from . import oracle, smooth, sudden
from ._backend import backend_name
from .model import (
    SuddenStep,
    TanhStep,
    VelocityProfile,
    bogoliubov_sudden,
    bogoliubov_tanh,
    mode_frequency,
    particle_number,
    spectrum,
    tanh_log_particle_number,
)
from .sudden import SpacetimePoint
from .svg import write_heatmap_svg

__all__ = [
    "ConfigError",
    "RunConfig",
    "ReportRow",
    "parse_config",
    "cmd_spectrum",
    "cmd_grid",
    "cmd_singularities",
    "cmd_compare",
    "main",
]

MODES = ("sudden", "smooth-exact", "smooth-approx", "oracle")

FIGURE_PRESETS = {
    "fig2": {"profile": "sudden", "v0": 1.0, "v1": 1.0, "t1": -1.0, "t2": -1.0,
             "mode": "sudden"},
    "fig4a": {"profile": "sudden", "v0": 1.0, "v1": 0.8, "t1": 0.1, "t2": 0.1,
              "mode": "sudden"},
    "fig4b": {"profile": "sudden", "v0": 1.0, "v1": 0.8, "t1": 0.2, "t2": 0.2,
              "mode": "sudden"},
    "smooth": {"profile": "tanh", "v0": 1.0, "v1": 0.8, "tau": 0.3, "t1": 0.2,
               "t2": 0.2, "mode": "smooth-approx"},
}
# one scale across all presets so their colors are directly comparable
FIGURE_COLOR_MAX = 0.5


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending key path."""


@dataclass
class RunConfig:
    """Validated run configuration with defaults applied."""

    profile: VelocityProfile
    t1: float = 0.0
    t2: float = 0.0
    D: float = 1.0
    resolution: int = 256
    n_max: int = 10_000
    regulator: float = 0.999
    mode: str = "sudden"
    out_dir: Path = field(default_factory=lambda: Path("."))
    color_max: Optional[float] = None
    seed: Optional[int] = None  # reserved, not used by any command
    dt: Optional[float] = None  # oracle step override (compare)


def _fmt(x) -> str:
    """Fixed 12-significant-digit decimal formatting for CSV output."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def _require_number(raw, path, positive=False):
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {raw!r}")
    val = float(raw)
    if positive and not val > 0.0:
        raise ConfigError(f"{path}: must be positive, got {val}")
    return val


_TOP_KEYS = {
    "profile", "v0", "v1", "tau", "t1", "t2", "D", "resolution", "n_max",
    "regulator", "mode", "out", "color_max", "seed", "dt",
}


def parse_config(text: str) -> RunConfig:
    """Parse a YAML/JSON key-value document into a RunConfig.

    The profile may be given flat (profile: sudden, v0: ..., v1: ..., tau:
    ...) or nested (profile: {kind: sudden, v0: ...}).  Validation errors
    name the offending key path, e.g. "profile.v1".
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not well-formed YAML: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config must be a key-value mapping")

    for key in data:
        if key not in _TOP_KEYS:
            raise ConfigError(f"{key}: unknown configuration key")

    prof_raw = data.get("profile")
    if prof_raw is None:
        raise ConfigError("profile: required (sudden or tanh)")
    if isinstance(prof_raw, dict):
        kind = prof_raw.get("kind")
        prof_fields = dict(prof_raw)
        prof_fields.pop("kind", None)
    else:
        kind = prof_raw
        prof_fields = {k: data[k] for k in ("v0", "v1", "tau") if k in data}
    if kind not in ("sudden", "tanh"):
        raise ConfigError(f"profile.kind: expected 'sudden' or 'tanh', got {kind!r}")
    for key in prof_fields:
        if key not in ("v0", "v1", "tau"):
            raise ConfigError(f"profile.{key}: unknown profile key")
    if "v0" not in prof_fields:
        raise ConfigError("profile.v0: required")
    if "v1" not in prof_fields:
        raise ConfigError("profile.v1: required")
    v0 = _require_number(prof_fields["v0"], "profile.v0", positive=True)
    v1 = _require_number(prof_fields["v1"], "profile.v1", positive=True)
    if kind == "sudden":
        if "tau" in prof_fields:
            warnings.warn("profile.tau is ignored for the sudden profile")
        profile: VelocityProfile = SuddenStep(v0=v0, v1=v1)
    else:
        if "tau" not in prof_fields:
            raise ConfigError("profile.tau: required for the tanh profile")
        tau = _require_number(prof_fields["tau"], "profile.tau", positive=True)
        profile = TanhStep(v0=v0, v1=v1, tau=tau)

    cfg = RunConfig(profile=profile)
    cfg.t1 = _require_number(data.get("t1", 0.0), "t1")
    cfg.t2 = _require_number(data.get("t2", 0.0), "t2")
    cfg.D = _require_number(data.get("D", 1.0), "D", positive=True)
    resolution = data.get("resolution", 256)
    if not isinstance(resolution, int) or resolution < 2:
        raise ConfigError(f"resolution: must be an integer >= 2, got {resolution!r}")
    cfg.resolution = resolution
    n_max = data.get("n_max", 10_000)
    if not isinstance(n_max, int) or n_max < 1:
        raise ConfigError(f"n_max: must be a positive integer, got {n_max!r}")
    cfg.n_max = n_max
    cfg.regulator = _require_number(data.get("regulator", 0.999), "regulator")
    if not 0.0 < cfg.regulator < 1.0:
        raise ConfigError(f"regulator: must lie in (0, 1), got {cfg.regulator}")
    mode = data.get("mode")
    if mode is None:
        mode = "sudden" if isinstance(profile, SuddenStep) else "smooth-exact"
    if mode not in MODES:
        raise ConfigError(f"mode: expected one of {MODES}, got {mode!r}")
    if mode == "sudden" and not isinstance(profile, SuddenStep):
        raise ConfigError("mode: 'sudden' requires a sudden profile")
    if mode.startswith("smooth") and not isinstance(profile, TanhStep):
        raise ConfigError(f"mode: '{mode}' requires a tanh profile")
    cfg.mode = mode
    if "out" in data:
        if not isinstance(data["out"], str):
            raise ConfigError("out: must be a path string")
        cfg.out_dir = Path(data["out"])
    if "color_max" in data and data["color_max"] is not None:
        cfg.color_max = _require_number(data["color_max"], "color_max", positive=True)
    if "seed" in data and data["seed"] is not None:
        if not isinstance(data["seed"], int):
            raise ConfigError("seed: must be an integer")
        cfg.seed = data["seed"]
    if "dt" in data and data["dt"] is not None:
        cfg.dt = _require_number(data["dt"], "dt", positive=True)
    return cfg


def _write_csv(path: Path, header: List[str], rows) -> Path:
    lines = [",".join(header)]
    for row in rows:
        cells = [_fmt(v) if not isinstance(v, str) else v for v in row]
        if any("," in c for c in cells):
            raise ValueError("CSV cells must not contain commas")
        lines.append(",".join(cells))
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def cmd_spectrum(cfg: RunConfig, stem: str = "spectrum") -> Path:
    """Write n, omega0, omega1, particle_number for n = 1 .. n_max."""
    spec = spectrum(cfg.profile, cfg.D, cfg.n_max)
    rows = []
    for n, number in spec.entries:
        rows.append((
            n,
            mode_frequency(n, cfg.profile.v0, cfg.D),
            mode_frequency(n, cfg.profile.v1, cfg.D),
            number,
        ))
    return _write_csv(cfg.out_dir / f"{stem}.csv", ["n", "omega0", "omega1", "particle_number"], rows)


def _grid_for(cfg: RunConfig):
    if cfg.mode == "sudden":
        return sudden.grid_evaluate(
            cfg.t1, cfg.t2, cfg.resolution, cfg.profile.v0, cfg.profile.v1, cfg.D
        )
    if cfg.mode == "smooth-exact":
        return smooth.grid_evaluate_smooth(
            cfg.t1, cfg.t2, cfg.resolution, cfg.profile, cfg.D,
            mode="exact", n_max=cfg.n_max, p=cfg.regulator,
        )
    if cfg.mode == "smooth-approx":
        return smooth.grid_evaluate_smooth(
            cfg.t1, cfg.t2, cfg.resolution, cfg.profile, cfg.D, mode="approx"
        )
    raise ConfigError("mode: grid output requires sudden or smooth-* mode")


def cmd_grid(cfg: RunConfig, stem: str = "grid") -> Tuple[Path, Path]:
    """Write the correlator grid as CSV plus an SVG heatmap."""
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    grid = _grid_for(cfg)
    with_parts = grid.kappa_A is not None
    header = ["x1", "x2", "v0_kappa", "mask"]
    if with_parts:
        header += ["kappa_A", "kappa_B"]
    rows = []
    for i, x1 in enumerate(grid.x1):
        for j, x2 in enumerate(grid.x2):
            row = [x1, x2, grid.values[i, j], int(grid.mask[i, j])]
            if with_parts:
                row += [grid.kappa_A[i, j], grid.kappa_B[i, j]]
            rows.append(row)
    csv_path = _write_csv(cfg.out_dir / f"{stem}.csv", header, rows)
    svg_path = cfg.out_dir / f"{stem}.svg"
    title = (
        f"v0 kappa, {cfg.mode}, t1={cfg.t1:g}, t2={cfg.t2:g}, "
        f"v0={cfg.profile.v0:g}, v1={cfg.profile.v1:g}"
    )
    write_heatmap_svg(svg_path, grid, title, color_max=cfg.color_max)
    return csv_path, svg_path


def cmd_singularities(cfg: RunConfig, stem: str = "singularities") -> Path:
    """Write the singular-line catalog (plus sign-change lines for tanh)."""
    if isinstance(cfg.profile, SuddenStep):
        lines = sudden.singularity_lines(cfg.t1, cfg.t2, cfg.profile, cfg.D)
    else:
        lines = smooth.smooth_singularity_lines(cfg.t1, cfg.t2, cfg.profile, cfg.D)
        lines += smooth.sign_change_lines(cfg.t1, cfg.t2, cfg.profile, cfg.D)
    rows = [
        (L.kind, L.s1, L.s2, L.m, L.coeff_t1, L.coeff_t2, L.offset,
         int(np.sign(L.strength)))
        for L in lines
    ]
    return _write_csv(
        cfg.out_dir / f"{stem}.csv",
        ["kind", "s1", "s2", "m", "coeff_t1", "coeff_t2", "offset", "divergence_sign"],
        rows,
    )


def _dump_trajectory(traj, out_dir: Path, max_rows: int = 4000) -> Path:
    """Write one mode trajectory as CSV (t, re/im of f and f').

    Long runs are decimated to at most max_rows samples; endpoints are
    always kept.
    """
    stride = max(1, -(-len(traj.times) // max_rows))
    idx = list(range(0, len(traj.times), stride))
    if idx[-1] != len(traj.times) - 1:
        idx.append(len(traj.times) - 1)
    rows = [
        (traj.times[i], traj.values[i].real, traj.values[i].imag,
         traj.derivatives[i].real, traj.derivatives[i].imag)
        for i in idx
    ]
    return _write_csv(
        out_dir / f"trajectory_mode_{traj.n:02d}.csv",
        ["t", "re_f", "im_f", "re_df", "im_df"],
        rows,
    )


@dataclass
class ReportRow:
    """One comparison between an analytic value and an oracle value."""

    quantity: str
    analytic: float
    oracle: float
    tolerance: float

    @property
    def abs_error(self) -> float:
        return abs(self.analytic - self.oracle)

    @property
    def rel_error(self) -> float:
        scale = max(abs(self.analytic), abs(self.oracle))
        return self.abs_error / scale if scale > 0.0 else 0.0

    @property
    def passed(self) -> bool:
        return self.abs_error <= self.tolerance


def _offline_points(t1, t2, profile, D):
    """Two sample points at a healthy distance from every singular line."""
    lines = sudden.singularity_lines(t1, t2, SuddenStep(profile.v0, profile.v1), D) \
        if isinstance(profile, SuddenStep) else \
        smooth.smooth_singularity_lines(t1, t2, profile, D)
    candidates = [(0.23, 0.52), (0.71, 0.40), (0.11, 0.87), (0.57, 0.93),
                  (0.36, 0.18), (0.62, 0.77)]
    picked = []
    for (u1, u2) in candidates:
        x1, x2 = u1 * D, u2 * D
        dmin = min(
            (abs(L.offset - (x1 + L.s1 * x2)) for L in lines), default=1.0
        )
        if dmin > 0.03 * D:
            picked.append((x1, x2))
        if len(picked) == 2:
            break
    return picked


def _compare_sudden(cfg: RunConfig) -> List[ReportRow]:
    prof = cfg.profile
    D = cfg.D
    rows = []
    ref = bogoliubov_sudden(prof.v0, prof.v1)
    scale = D / prof.v0
    for n in range(1, 5):
        dt = cfg.dt if cfg.dt is not None else 0.01 * scale / n
        traj = oracle.integrate_mode(n, prof, D, -1.0 * scale, 1.0 * scale, dt)
        _dump_trajectory(traj, cfg.out_dir)
        pair = oracle.extract_bogoliubov(traj)
        rows.append(ReportRow(
            f"|zeta_plus| n={n}", abs(ref.zeta_plus), abs(pair.zeta_plus), 1e-10))
        rows.append(ReportRow(
            f"|zeta_minus| n={n}", abs(ref.zeta_minus), abs(pair.zeta_minus), 1e-10))
    n_exp = (prof.v1 - prof.v0) ** 2 / (4.0 * prof.v0 * prof.v1)
    rows.append(ReportRow("particle_number", n_exp, particle_number(ref), 1e-12))
    for (ta, tb) in ((-0.3 * scale, -0.1 * scale), (0.2 * scale, 0.3 * scale),
                     (-0.25 * scale, 0.2 * scale)):
        for (x1, x2) in _offline_points(ta, tb, prof, D):
            cf = sudden.kappa_sudden(SpacetimePoint(ta, x1), SpacetimePoint(tb, x2),
                                     prof.v0, prof.v1, D)
            ms = sudden.kappa_mode_sum(SpacetimePoint(ta, x1), SpacetimePoint(tb, x2),
                                       prof, D, cfg.n_max, cfg.regulator)
            rows.append(ReportRow(
                f"kappa(t1={ta:.3g} t2={tb:.3g} x1={x1:.3g} x2={x2:.3g})",
                cf, ms, 1e-3))
    return rows


def _compare_tanh(cfg: RunConfig) -> List[ReportRow]:
    prof = cfg.profile
    D = cfg.D
    rows = []
    span = 9.0 * prof.tau
    worst_drift = 0.0
    trajs = []
    for n in range(1, 9):
        w_max = mode_frequency(n, max(prof.v0, prof.v1), D)
        dt = cfg.dt if cfg.dt is not None else 4.0e-3 / w_max
        try:
            traj = oracle.integrate_mode(n, prof, D, -span, span, dt)
            pair = oracle.extract_bogoliubov(traj)
        except (oracle.StepSizeError, RuntimeError, ValueError) as exc:
            rows.append(ReportRow(f"|zeta_plus| n={n} ({exc})", 1.0, math.inf, 1e-6))
            continue
        trajs.append(traj)
        _dump_trajectory(traj, cfg.out_dir)
        worst_drift = max(worst_drift, traj.wronskian_drift())
        ref = bogoliubov_tanh(n, prof, D)
        norm = abs(ref.zeta_plus)
        rows.append(ReportRow(
            f"|zeta_plus| n={n}", abs(ref.zeta_plus) / norm,
            abs(pair.zeta_plus) / norm, 1e-6))
        rows.append(ReportRow(
            f"|zeta_minus| n={n}", abs(ref.zeta_minus) / norm,
            abs(pair.zeta_minus) / norm, 1e-6))
    rows.append(ReportRow("wronskian_drift", 0.0, worst_drift, 1e-8))
    for n in range(1, 11):
        via_gamma = particle_number(bogoliubov_tanh(n, prof, D))
        via_sinh = math.exp(tanh_log_particle_number(n, prof, D))
        tol = 1e-9 * max(via_sinh, 1e-300)
        rows.append(ReportRow(f"particle_number n={n}", via_sinh, via_gamma, tol))
    # correlator cross-check at matching truncation and regulator
    t_cmp = 5.0 * prof.tau
    n_modes, p_cmp = 24, 0.95
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", smooth.ValidityWarning)
        ktrajs = []
        for n in range(1, n_modes + 1):
            w_max = mode_frequency(n, max(prof.v0, prof.v1), D)
            dt = cfg.dt if cfg.dt is not None else 8.0e-3 / w_max
            try:
                ktrajs.append(oracle.integrate_mode(n, prof, D, -span, t_cmp + 0.5, dt))
            except (oracle.StepSizeError, ValueError):
                ktrajs = []
                break
        for (x1, x2) in _offline_points(t_cmp, t_cmp, prof, D):
            pa = SpacetimePoint(t_cmp, x1)
            pb = SpacetimePoint(t_cmp, x2)
            analytic = (
                smooth.kappa_stationary_exact(pa, pb, prof, D, n_modes, p_cmp)
                + smooth.kappa_pair_exact(pa, pb, prof, D, n_modes, p_cmp)
            )
            if ktrajs:
                num = oracle.kappa_from_trajectories(pa, pb, ktrajs, D, p_cmp)
            else:
                num = math.inf
            rows.append(ReportRow(
                f"kappa(t={t_cmp:.3g} x1={x1:.3g} x2={x2:.3g})", analytic, num, 1e-3))
    return rows


def cmd_compare(cfg: RunConfig, stem: str = "compare") -> Tuple[List[ReportRow], bool]:
    """Run oracle-vs-analytic comparisons; write table as text and CSV."""
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    if isinstance(cfg.profile, SuddenStep):
        rows = _compare_sudden(cfg)
    else:
        rows = _compare_tanh(cfg)
    all_pass = all(r.passed for r in rows)
    csv_rows = [
        (r.quantity, r.analytic, r.oracle, r.abs_error, r.rel_error, r.tolerance,
         "pass" if r.passed else "FAIL")
        for r in rows
    ]
    _write_csv(
        cfg.out_dir / f"{stem}.csv",
        ["quantity", "analytic", "oracle", "abs_error", "rel_error", "tolerance", "status"],
        csv_rows,
    )
    width = max(len(r.quantity) for r in rows)
    lines = [f"backend: {backend_name()}"]
    for r in rows:
        lines.append(
            f"{r.quantity:<{width}}  analytic={r.analytic: .12e}  "
            f"oracle={r.oracle: .12e}  abs={r.abs_error:.3e}  tol={r.tolerance:.1e}  "
            f"{'pass' if r.passed else 'FAIL'}"
        )
    lines.append("RESULT: " + ("all comparisons passed" if all_pass else "FAILURES present"))
    text = "\n".join(lines) + "\n"
    with open(cfg.out_dir / f"{stem}.txt", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(text, end="")
    return rows, all_pass


def _load_config(args) -> RunConfig:
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        cfg = parse_config(text)
    else:
        raise ConfigError("--config is required for this command")
    return _apply_flags(cfg, args)


def _apply_flags(cfg: RunConfig, args) -> RunConfig:
    if getattr(args, "resolution", None) is not None:
        if args.resolution < 2:
            raise ConfigError("resolution: must be >= 2")
        cfg = replace(cfg, resolution=args.resolution)
    if getattr(args, "nmax", None) is not None:
        if args.nmax < 1:
            raise ConfigError("n_max: must be >= 1")
        cfg = replace(cfg, n_max=args.nmax)
    if getattr(args, "regulator", None) is not None:
        if not 0.0 < args.regulator < 1.0:
            raise ConfigError("regulator: must lie in (0, 1)")
        cfg = replace(cfg, regulator=args.regulator)
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "dt", None) is not None:
        if not args.dt > 0.0:
            raise ConfigError("dt: must be positive")
        cfg = replace(cfg, dt=args.dt)
    out = os.environ.get("QWAVE_OUT")
    if out:
        cfg = replace(cfg, out_dir=Path(out))
    elif getattr(args, "out", None):
        cfg = replace(cfg, out_dir=Path(args.out))
    return cfg


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwave",
        description="Particle spectra and two-point correlators of a waveguide "
                    "with a time-dependent propagation speed.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument("--config", help="YAML/JSON configuration file",
                       required=False)
        p.add_argument("--out", help="output directory (QWAVE_OUT overrides)")
        p.add_argument("--resolution", type=int, help="grid resolution")
        p.add_argument("--nmax", type=int, help="number of modes")
        p.add_argument("--regulator", type=float, help="Abel regulator p in (0,1)")
        p.add_argument("--seed", type=int, help="reserved placeholder")

    common(sub.add_parser("spectrum", help="particle numbers per mode"))
    common(sub.add_parser("grid", help="correlator grid (CSV + SVG)"))
    common(sub.add_parser("singularities", help="singular-line catalog"))
    p_cmp = sub.add_parser("compare", help="analytic vs oracle report")
    common(p_cmp)
    p_cmp.add_argument("--dt", type=float,
                       help="override the oracle integration step")
    p_fig = sub.add_parser("figure", help="build a preset figure")
    p_fig.add_argument("name", choices=sorted(FIGURE_PRESETS))
    common(p_fig)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "figure":
            preset = dict(FIGURE_PRESETS[args.name])
            cfg = parse_config(yaml.safe_dump(preset))
            cfg.color_max = FIGURE_COLOR_MAX
            cfg = _apply_flags(cfg, args)
            csv_path, svg_path = cmd_grid(cfg, stem=args.name)
            print(f"wrote {csv_path} and {svg_path}")
            return 0
        cfg = _load_config(args)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "spectrum":
            path = cmd_spectrum(cfg)
            print(f"wrote {path}")
            return 0
        if args.command == "grid":
            csv_path, svg_path = cmd_grid(cfg)
            print(f"wrote {csv_path} and {svg_path}")
            return 0
        if args.command == "singularities":
            path = cmd_singularities(cfg)
            print(f"wrote {path}")
            return 0
        if args.command == "compare":
            _, all_pass = cmd_compare(cfg)
            return 0 if all_pass else 2
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
