"""Adiabatic renormalization of the qubit splitting over the computed bath.

The ground and first excited states of the multimode model are
approximated by a multimode Schroedinger cat: the qubit dressed by
coherent displacements lambda_n of every mode fast enough to follow it
(omega_n > Delta_eff).  The renormalized splitting obeys

    Delta_eff = Delta_0 exp(-2 sum_n lambda_n^2),

a self-consistency condition solved by the monotone fixed-point iteration
from Delta_0 downward.  Because the active mode set can only grow along
the iteration, the fixed point is reached exactly after at most N+1
steps.  The drop of Delta_eff with the global coupling becomes
discontinuous once the fixed point falls through the dense band-edge
cluster; at finite size it lands at a small but nonzero value.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .circuit import CircuitSpec, build_matrices
from .modes import CouplingSpectrum, QubitSpec, coupling_spectrum, solve_modes

LOCALIZATION_THRESHOLD = 1e-3
JUMP_FACTOR = 10.0
MAX_ITERATIONS = 10_000


class Phase(str, Enum):
    DELOCALIZED = "delocalized"
    LOCALIZED = "localized"


@dataclass(frozen=True, eq=False)
class RenormResult:
    """Converged splitting, per-mode displacements and the iteration trace."""

    delta_eff: float
    lambdas: np.ndarray
    iterations: int
    converged: bool
    phase: Phase
    cat_size: float
    trace: np.ndarray


@dataclass(frozen=True)
class DetectedJump:
    """A confirmed discontinuity of Delta_eff(g) after bisection refinement."""

    g_star: float
    drop_factor: float
    delta_before: float
    delta_after: float


@dataclass(frozen=True, eq=False)
class CouplingSweep:
    """Delta_eff along a coupling grid, plus the flat-profile companion curve."""

    g_grid: np.ndarray
    delta_eff: np.ndarray
    cat_size: np.ndarray
    delta_eff_flat: np.ndarray
    cat_size_flat: np.ndarray
    jumps: list[DetectedJump]


@dataclass(frozen=True, eq=False)
class PhaseDiagram:
    """Delta_eff over a (coupling, bare-splitting) grid with the phase boundary."""

    g_axis: np.ndarray
    delta0_axis: np.ndarray
    delta_eff_grid: np.ndarray
    boundary: list[tuple[float, float]]
    localization_threshold: float


def _lambda_squared(g: np.ndarray, omega: np.ndarray, variant: str) -> np.ndarray:
    """Squared displacement per mode, before the adiabatic cut."""
    if variant == "standard":
        return (g / omega) ** 2
    if variant == "literal":
        return (g / omega) ** 4
    raise ValueError(f"unknown variant {variant!r}; use 'standard' or 'literal'")


def renormalize(couplings: CouplingSpectrum, delta0: float,
                variant: str = "standard") -> RenormResult:
    """Run the adiabatic-renormalization fixed point for one bath.

    Starting at Delta_0, each step re-evaluates the dressing sum over the
    currently-fast modes; the iterate is non-increasing and terminates at
    the largest self-consistent fixed point (or collapses below every
    mode).  ``variant`` selects lambda_n = g_n/omega_n ("standard") or the
    printed g_n^2/omega_n^2 ("literal").
    """
    if len(couplings) == 0:
        raise ValueError("empty coupling spectrum")
    if not delta0 > 0:
        raise ValueError("delta0 must be positive")
    omega = couplings.frequencies
    lam2 = _lambda_squared(couplings.g, omega, variant)

    delta = float(delta0)
    trace = [delta]
    converged = False
    for _ in range(MAX_ITERATIONS):
        s = float(lam2[omega > delta].sum())
        new = delta0 * np.exp(-2.0 * s)
        trace.append(new)
        if new == delta or abs(new - delta) <= 1e-10 * abs(delta):
            converged = True
            delta = new
            break
        delta = new

    active = omega > delta
    lam = np.sqrt(lam2) * active
    cat = float(lam2[active].sum())
    phase = Phase.LOCALIZED if delta / delta0 < LOCALIZATION_THRESHOLD \
        else Phase.DELOCALIZED
    return RenormResult(delta_eff=float(delta), lambdas=lam,
                        iterations=len(trace) - 1, converged=converged,
                        phase=phase, cat_size=cat, trace=np.array(trace))


def _cat_size_at(omega: np.ndarray, delta0: float, g_scale: float,
                 base_profile: np.ndarray, variant: str) -> float:
    """Converged dressing sum for one coupling value (log-domain safe)."""
    g = g_scale * base_profile
    lam2 = _lambda_squared(g, omega, variant) if g_scale > 0 else np.zeros_like(omega)
    delta = float(delta0)
    s = 0.0
    for _ in range(MAX_ITERATIONS):
        s = float(lam2[omega > delta].sum())
        new = delta0 * np.exp(-2.0 * s)
        if new == delta or abs(new - delta) <= 1e-10 * abs(delta):
            return s
        delta = new
    return s


def _curve(omega: np.ndarray, profile: np.ndarray, delta0: float,
           g_grid: np.ndarray, variant: str) -> tuple[np.ndarray, np.ndarray]:
    """(Delta_eff, cat_size) along a coupling grid for a fixed profile."""
    cats = np.array([
        _cat_size_at(omega, delta0, g, profile, variant) for g in g_grid
    ])
    return delta0 * np.exp(-2.0 * cats), cats


def _refine_jump(omega, profile, delta0, variant, g_lo, g_hi, cat_lo, cat_hi,
                 rel_tol=1e-4):
    """Shrink a candidate bracket onto the largest drop inside it."""
    while (g_hi - g_lo) > rel_tol * g_hi:
        g_mid = 0.5 * (g_lo + g_hi)
        cat_mid = _cat_size_at(omega, delta0, g_mid, profile, variant)
        # keep the half with the larger drop of Delta_eff, i.e. rise of cat
        if (cat_mid - cat_lo) >= (cat_hi - cat_mid):
            g_hi, cat_hi = g_mid, cat_mid
        else:
            g_lo, cat_lo = g_mid, cat_mid
    return g_lo, g_hi, cat_lo, cat_hi


def sweep_coupling(couplings: CouplingSpectrum, delta0: float, g_grid,
                   variant: str = "standard") -> CouplingSweep:
    """Delta_eff(g) over an ascending coupling grid, with jump detection.

    Candidate discontinuities (adjacent grid points whose Delta_eff differ
    by more than a factor 10) are refined by bisection to 1e-4 relative in
    g; only brackets that keep a factor > 10 drop after refinement are
    reported as jumps.  Drop factors are computed from the dressing sums,
    so they stay finite in log-domain even when Delta_eff underflows.  The
    companion curve repeats the sweep with the spatial profile forced to 1.
    """
    g_grid = np.asarray(g_grid, dtype=float)
    if len(g_grid) < 2 or np.any(np.diff(g_grid) <= 0):
        raise ValueError("g_grid must be ascending with at least two points")
    omega = couplings.frequencies
    profile = couplings.relative_profile
    delta_eff, cats = _curve(omega, profile, delta0, g_grid, variant)
    flat = np.ones_like(profile)
    delta_flat, cats_flat = _curve(omega, flat, delta0, g_grid, variant)

    jumps = []
    for i in range(len(g_grid) - 1):
        if 2.0 * (cats[i + 1] - cats[i]) > np.log(JUMP_FACTOR):
            g_lo, g_hi, cat_lo, cat_hi = _refine_jump(
                omega, profile, delta0, variant,
                g_grid[i], g_grid[i + 1], cats[i], cats[i + 1])
            log_drop = 2.0 * (cat_hi - cat_lo)
            if log_drop > np.log(JUMP_FACTOR):
                jumps.append(DetectedJump(
                    g_star=0.5 * (g_lo + g_hi),
                    drop_factor=float(np.exp(min(log_drop, 700.0))),
                    delta_before=float(delta0 * np.exp(-2.0 * cat_lo)),
                    delta_after=float(delta0 * np.exp(-2.0 * cat_hi)),
                ))
    return CouplingSweep(g_grid=g_grid, delta_eff=delta_eff, cat_size=cats,
                         delta_eff_flat=delta_flat, cat_size_flat=cats_flat,
                         jumps=jumps)


def _row_boundary(omega, profile, delta0, g_grid, cats, variant, threshold,
                  rel_tol=1e-4):
    """Smallest coupling with Delta_eff/Delta_0 below threshold, bisected."""
    log_thr = -0.5 * np.log(threshold)          # localized iff cat_size > log_thr
    localized = cats > log_thr
    if not np.any(localized):
        return None
    i = int(np.argmax(localized))
    if i == 0:
        return float(g_grid[0])
    g_lo, g_hi = g_grid[i - 1], g_grid[i]
    while (g_hi - g_lo) > rel_tol * g_hi:
        g_mid = 0.5 * (g_lo + g_hi)
        if _cat_size_at(omega, delta0, g_mid, profile, variant) > log_thr:
            g_hi = g_mid
        else:
            g_lo = g_mid
    return float(0.5 * (g_lo + g_hi))


def phase_diagram(spec: CircuitSpec, qubit: QubitSpec, g_grid, delta0_grid,
                  freq_window: tuple[float, float] | None = None,
                  normalization: str = "dom",
                  variant: str = "standard",
                  threads: int | None = None,
                  localization_threshold: float = LOCALIZATION_THRESHOLD) -> PhaseDiagram:
    """Delta_eff over a (g, Delta_0) grid for the circuit's computed bath.

    Each row reuses the same mode set and coupling profile (the bath does
    not depend on the qubit splitting) and is an independent sweep; rows
    may be evaluated by a small thread pool, assembled in grid order.  The
    boundary lists, per row, the bisection-refined coupling where the
    phase label flips to localized; rows that never localize are omitted.
    """
    g_grid = np.asarray(g_grid, dtype=float)
    delta0_grid = np.asarray(delta0_grid, dtype=float)
    if len(g_grid) < 2 or np.any(np.diff(g_grid) <= 0):
        raise ValueError("g_grid must be ascending with at least two points")
    if len(delta0_grid) == 0 or np.any(np.diff(delta0_grid) < 0):
        raise ValueError("delta0_grid must be non-empty and ascending")

    modeset = solve_modes(build_matrices(spec), freq_window)
    couplings = coupling_spectrum(modeset, spec, qubit, normalization)
    omega, profile = couplings.frequencies, couplings.relative_profile

    def row(delta0: float):
        delta_eff, cats = _curve(omega, profile, delta0, g_grid, variant)
        g_star = _row_boundary(omega, profile, delta0, g_grid, cats, variant,
                               localization_threshold)
        return delta_eff, g_star

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(row, delta0_grid))
    else:
        results = [row(d0) for d0 in delta0_grid]

    grid = np.vstack([r[0] for r in results])
    boundary = [(r[1], float(d0)) for r, d0 in zip(results, delta0_grid)
                if r[1] is not None]
    return PhaseDiagram(g_axis=g_grid, delta0_axis=delta0_grid,
                        delta_eff_grid=grid, boundary=boundary,
                        localization_threshold=localization_threshold)
