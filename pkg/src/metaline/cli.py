"""Command-line driver emitting deterministic, plot-ready CSV files.

Every subcommand reads one flat config file, runs the corresponding
pipeline and writes CSVs with '#' provenance comments (tool version and
config hash).  Output bytes are identical across reruns of the same
config and independent of the worker-pool size.

Exit codes: 0 success, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import apply_disorder, build_matrices
from .config import GHZ, ConfigError, RunConfig, parse_config
from .dispersion import dom_approx, rhtl_background_dom
from .dynamics import build_rwa_hamiltonian, entropy_scan
from .modes import (CouplingSpectrum, IllConditionedCircuitError, ModeSet,
                    QubitSpec, coupling_spectrum, dom_numeric,
                    footprint_at_antinode, solve_modes)
from .spinboson import Phase, phase_diagram, sweep_coupling


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".11e")


def _write_csv(path: Path, columns: list[str], rows, comments: list[str],
               block_comments: dict[int, str] | None = None) -> None:
    """Write rows with deterministic formatting; 12 significant digits.

    ``block_comments`` maps a row index to a comment line emitted just
    before that row (used for the per-block entropy headers).
    """
    with open(path, "w", newline="\n") as f:
        for c in comments:
            f.write(f"# {c}\n")
        f.write(",".join(columns) + "\n")
        for i, row in enumerate(rows):
            if block_comments and i in block_comments:
                f.write(f"# {block_comments[i]}\n")
            f.write(",".join(_fmt(v) for v in row) + "\n")


def _comments(config: RunConfig, command: str) -> list[str]:
    return [
        f"metaline {__version__} {command}",
        f"config sha256={config.sha256}",
    ]


def _build_modes(config: RunConfig) -> tuple:
    spec = config.circuit_spec()
    modeset = solve_modes(build_matrices(spec), config.freq_window())
    return spec, modeset


def _qubit_and_couplings(config: RunConfig, spec, modeset: ModeSet):
    """Resolve footprint placement and the coupling scale from the config."""
    v = config.values
    extent = v["qubit.extent_m"]
    if v["qubit.position_m"] is not None:
        position = v["qubit.position_m"]
    else:
        position = footprint_at_antinode(
            modeset, spec, v["qubit.target_mode_ghz"] * GHZ, extent)
    probe = QubitSpec(delta0=v["qubit.freq_ghz"] * GHZ, position=position,
                      extent=extent, g_global=1.0)
    shape = coupling_spectrum(modeset, spec, probe, v["coupling.normalization"])
    if v["qubit.g_ghz"] is not None:
        g_global = v["qubit.g_ghz"] * GHZ
    else:
        n = int(np.argmin(np.abs(shape.frequencies - v["qubit.tune_mode_ghz"] * GHZ)))
        rel = shape.relative_profile[n]
        if rel == 0:
            raise ValueError("cannot tune coupling: target mode has zero profile")
        g_global = v["qubit.tune_g_ghz"] * GHZ / rel
    qubit = QubitSpec(delta0=probe.delta0, position=position,
                      extent=extent, g_global=g_global)
    couplings = CouplingSpectrum(frequencies=shape.frequencies,
                                 relative_profile=shape.relative_profile,
                                 g=g_global * shape.relative_profile,
                                 g_global=g_global)
    return qubit, couplings


def cmd_modes(config: RunConfig, out: Path, threads: int,
              profiles: bool = False) -> None:
    spec, modeset = _build_modes(config)
    stem = config["output.stem"]
    pre = f"{stem}_" if stem else ""
    comments = _comments(config, "modes")

    cols = ["n", "f_ghz"]
    if profiles and len(modeset):
        cols += [f"phi_{j}" for j in range(modeset.profiles.shape[0])]
    rows = []
    for n in range(len(modeset)):
        row = [n, modeset.frequencies[n] / GHZ]
        if profiles:
            row += list(modeset.profiles[:, n])
        rows.append(row)
    _write_csv(out / f"{pre}modes.csv", cols, rows, comments)

    dom_rows = []
    if len(modeset) >= 2:
        est = dom_numeric(modeset, config["modes.dom_bin_ghz"] * GHZ)
        approx = np.array([
            dom_approx(w, spec, include_rhtl_background=True)
            if w > spec.omega_ir else rhtl_background_dom(spec)
            for w in modeset.frequencies
        ])
        dom_rows = [
            (modeset.frequencies[n] / GHZ, est.spacing_density[n], approx[n])
            for n in range(len(modeset))
        ]
    _write_csv(out / f"{pre}dom.csv", ["f_ghz", "d_numeric", "d_approx"],
               dom_rows, comments)

    coup_rows = []
    if len(modeset):
        _, couplings = _qubit_and_couplings(config, spec, modeset)
        coup_rows = [
            (n, couplings.frequencies[n] / GHZ, couplings.relative_profile[n],
             couplings.g[n] / GHZ)
            for n in range(len(couplings))
        ]
    _write_csv(out / f"{pre}couplings.csv",
               ["n", "f_ghz", "relative_profile", "g_ghz"], coup_rows, comments)


def cmd_dynamics(config: RunConfig, out: Path, threads: int) -> None:
    spec, modeset = _build_modes(config)
    qubit, couplings = _qubit_and_couplings(config, spec, modeset)
    h = build_rwa_hamiltonian(couplings, qubit.delta0)
    tg_grid = config.grid("dynamics.tg")
    stem = config["output.stem"]
    pre = f"{stem}_" if stem else ""

    def scan(tg: float):
        t = tg / qubit.g_global if qubit.g_global > 0 else 0.0
        return entropy_scan(h, t, time_label=tg)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(scan, tg_grid))
    else:
        reports = [scan(tg) for tg in tg_grid]

    rows, blocks = [], {}
    for rep in reports:
        blocks[len(rows)] = f"tg={_fmt(rep.time)} e_q={_fmt(rep.e_qubit)}"
        for n in range(len(rep.e_per_mode)):
            rows.append((rep.time, n, couplings.frequencies[n] / GHZ,
                         rep.e_per_mode[n]))
    _write_csv(out / f"{pre}entropy.csv", ["tg", "n", "f_ghz", "e_n"],
               rows, _comments(config, "dynamics"), blocks)


def cmd_renorm(config: RunConfig, out: Path, threads: int) -> None:
    spec, modeset = _build_modes(config)
    qubit, couplings = _qubit_and_couplings(config, spec, modeset)
    g_grid = config.grid("renorm.g") * spec.omega_ir
    sweep = sweep_coupling(couplings, qubit.delta0, g_grid,
                           config["renorm.variant"])
    comments = _comments(config, "renorm")
    comments.append(f"delta0_ghz={_fmt(qubit.delta0 / GHZ)} "
                    f"variant={config['renorm.variant']}")
    for j in sweep.jumps:
        comments.append(
            f"jump g_star_over_omega_ir={_fmt(j.g_star / spec.omega_ir)} "
            f"drop_factor={_fmt(j.drop_factor)}")
    rows = [
        (g / spec.omega_ir, g / GHZ,
         sweep.delta_eff[i] / qubit.delta0,
         sweep.delta_eff_flat[i] / qubit.delta0)
        for i, g in enumerate(sweep.g_grid)
    ]
    stem = config["output.stem"]
    pre = f"{stem}_" if stem else ""
    _write_csv(out / f"{pre}renorm.csv",
               ["g_over_omega_ir", "g_ghz", "delta_eff_over_delta0",
                "delta_eff_flat_over_delta0"], rows, comments)


def cmd_phase(config: RunConfig, out: Path, threads: int) -> None:
    spec, modeset = _build_modes(config)
    qubit, couplings = _qubit_and_couplings(config, spec, modeset)
    g_grid = config.grid("phase.g") * spec.omega_ir
    delta0_grid = config.grid("phase.delta0") * spec.omega_ir
    diagram = phase_diagram(
        spec, qubit, g_grid, delta0_grid,
        freq_window=config.freq_window(),
        normalization=config["coupling.normalization"],
        variant=config["renorm.variant"],
        threads=threads,
    )
    comments = _comments(config, "phase")
    rows = []
    for i, d0 in enumerate(diagram.delta0_axis):
        for j, g in enumerate(diagram.g_axis):
            deff = diagram.delta_eff_grid[i, j]
            label = (Phase.LOCALIZED if deff / d0 < diagram.localization_threshold
                     else Phase.DELOCALIZED).value
            rows.append((d0 / spec.omega_ir, g / spec.omega_ir, deff / d0, label))
    stem = config["output.stem"]
    pre = f"{stem}_" if stem else ""
    _write_csv(out / f"{pre}phase.csv",
               ["delta0_over_omega_ir", "g_over_omega_ir",
                "delta_eff_over_delta0", "phase"], rows, comments)
    brows = [(g / spec.omega_ir, d0 / spec.omega_ir)
             for g, d0 in diagram.boundary]
    _write_csv(out / f"{pre}boundary.csv",
               ["g_star_over_omega_ir", "delta0_over_omega_ir"], brows, comments)


def cmd_disorder(config: RunConfig, out: Path, threads: int) -> None:
    spec = config.circuit_spec()
    window = config.freq_window()
    sigma = config["disorder.sigma"]
    seeds = list(range(config["disorder.seed0"],
                       config["disorder.seed0"] + config["disorder.seeds"]))
    lo = config["disorder.band_ghz_lo"] * GHZ
    hi = config["disorder.band_ghz_hi"] * GHZ

    def sample(seed: int):
        noisy = apply_disorder(spec, sigma, seed)
        modeset = solve_modes(build_matrices(noisy), window)
        if len(modeset) == 0:
            return seed, float("nan"), 0
        edge = modeset.frequencies[0] / GHZ
        count = int(np.sum((modeset.frequencies >= lo)
                           & (modeset.frequencies <= hi)))
        return seed, edge, count

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(sample, seeds))
    else:
        rows = [sample(s) for s in seeds]

    edges = np.array([r[1] for r in rows])
    counts = np.array([r[2] for r in rows], dtype=float)
    comments = _comments(config, "disorder")
    comments.append(f"sigma={_fmt(sigma)} seeds={len(seeds)}")
    comments.append(
        f"summary edge_ghz mean={_fmt(edges.mean())} std={_fmt(edges.std())}")
    comments.append(
        f"summary band_count mean={_fmt(counts.mean())} std={_fmt(counts.std())}")
    stem = config["output.stem"]
    pre = f"{stem}_" if stem else ""
    _write_csv(out / f"{pre}disorder.csv", ["seed", "edge_ghz", "band_count"],
               rows, comments)


_COMMANDS = {
    "modes": cmd_modes,
    "dynamics": cmd_dynamics,
    "renorm": cmd_renorm,
    "phase": cmd_phase,
    "disorder": cmd_disorder,
}


def _resolve_threads(arg: int | None) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get("METALINE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"METALINE_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="metaline",
        description="Hybrid metamaterial transmission-line simulator")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", required=True, help="path to a .cfg file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker pool size (default: METALINE_THREADS or CPU count)")
    parser.add_argument("--profiles", action="store_true",
                        help="include per-node mode profiles in modes.csv")
    args = parser.parse_args(argv)

    try:
        config = parse_config(args.config)
        threads = _resolve_threads(args.threads)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "modes":
            cmd_modes(config, out, threads, profiles=args.profiles)
        else:
            _COMMANDS[args.command](config, out, threads)
    except ConfigError as exc:
        print(f"metaline: config error: {exc}", file=sys.stderr)
        return 2
    except (IllConditionedCircuitError, ValueError, ArithmeticError,
            np.linalg.LinAlgError) as exc:
        print(f"metaline: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"metaline: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
