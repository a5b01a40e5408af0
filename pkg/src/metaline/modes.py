"""Normal modes of the quantized network and their coupling to a flux qubit.

Canonical quantization of the lumped circuit turns the node fluxes into a
generalized symmetric-definite eigenproblem

    inv_ind . v = omega^2 . cap . v,

solved here by Cholesky reduction of the capacitance matrix and a dense
symmetric eigensolver (LAPACK sygvd via scipy).  Eigenvectors are
normalized in the capacitance metric, v^T cap v = 1, which makes them the
flux profiles of independent harmonic oscillators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .circuit import CircuitSpec, NetworkMatrices
from .dispersion import dom_approx, rhtl_background_dom


class IllConditionedCircuitError(RuntimeError):
    """Capacitance matrix failed its Cholesky factorization."""


@dataclass(frozen=True, eq=False)
class ModeSet:
    """Eigenfrequencies and capacitance-orthonormal flux profiles.

    ``frequencies`` is strictly positive and ascending (near-zero gauge
    modes are dropped); column n of ``profiles`` is the node-flux
    eigenvector of mode n with its sign fixed at the interface node.
    """

    frequencies: np.ndarray
    profiles: np.ndarray
    node_positions: np.ndarray
    interface_index: int

    def __len__(self) -> int:
        return len(self.frequencies)


@dataclass(frozen=True)
class QubitSpec:
    """Bare splitting, footprint and global coupling scale of the probe qubit.

    ``position`` is the left edge of the footprint on the strip (m) and
    ``extent`` its length; ``g_global`` sets the overall coupling scale in
    rad/s, multiplied per mode by the dimensionless spatial profile.
    """

    delta0: float
    position: float
    extent: float
    g_global: float

    def __post_init__(self):
        if not self.delta0 > 0:
            raise ValueError("delta0 must be positive")
        if not self.extent > 0:
            raise ValueError("extent must be positive")
        if self.g_global < 0:
            raise ValueError("g_global must be non-negative")


@dataclass(frozen=True, eq=False)
class CouplingSpectrum:
    """Per-mode couplings g_n = g_global * relative_profile_n."""

    frequencies: np.ndarray
    relative_profile: np.ndarray
    g: np.ndarray
    g_global: float

    def __post_init__(self):
        if not (len(self.frequencies) == len(self.relative_profile) == len(self.g)):
            raise ValueError("couplings and frequencies must have matching lengths")

    def __len__(self) -> int:
        return len(self.frequencies)

    def truncated(self, min_relative_profile: float) -> "CouplingSpectrum":
        """Drop modes coupled below the given relative profile.

        Useful to shrink the dynamics sector; the default pipelines keep
        every mode.
        """
        keep = self.relative_profile >= min_relative_profile
        return CouplingSpectrum(frequencies=self.frequencies[keep],
                                relative_profile=self.relative_profile[keep],
                                g=self.g[keep], g_global=self.g_global)


@dataclass(frozen=True, eq=False)
class DomEstimate:
    """Numerical density of modes: binned histogram plus per-mode spacing dots."""

    bin_edges: np.ndarray
    bin_density: np.ndarray
    mode_frequencies: np.ndarray
    spacing_density: np.ndarray


def sign_changes(values: np.ndarray) -> int:
    """Number of sign alternations along a vector, ignoring exact zeros."""
    s = np.sign(values)
    s = s[s != 0]
    if len(s) < 2:
        return 0
    return int(np.sum(s[1:] != s[:-1]))


def solve_modes(mat: NetworkMatrices,
                freq_window: tuple[float, float] | None = None) -> ModeSet:
    """All positive-frequency normal modes of the network, ascending.

    Near-zero gauge modes (the inductive null space left by purely
    capacitive ends) are discarded below 1e-6 of the largest computed
    frequency.  Ties in frequency are broken by the ascending number of
    sign changes of the profile.  ``freq_window`` = (lo, hi) in rad/s
    restricts the returned modes.
    """
    cap, inv_ind = mat.cap, mat.inv_ind
    try:
        sla.cholesky(cap, lower=True)
    except sla.LinAlgError as exc:
        pivot = float(np.min(np.linalg.eigvalsh(0.5 * (cap + cap.T))))
        raise IllConditionedCircuitError(
            f"capacitance matrix is not positive definite "
            f"(smallest pivot {pivot:.3e} F)") from exc

    w2, vecs = sla.eigh(inv_ind, cap)
    omega = np.sqrt(np.clip(w2, 0.0, None))
    keep = omega > 1e-6 * omega.max()
    omega, vecs = omega[keep], vecs[:, keep]

    # reproducible sign: non-negative flux at the interface node, falling
    # back to the largest strip entry when the interface sits on a node
    iface = mat.interface_index
    ref = vecs[iface, :].copy()
    small = np.abs(ref) < 1e-9 * np.abs(vecs[iface:, :]).max(axis=0)
    if np.any(small):
        strip = vecs[iface:, :]
        picks = np.abs(strip).argmax(axis=0)
        ref[small] = strip[picks[small], np.where(small)[0]]
    vecs = vecs * np.where(ref < 0, -1.0, 1.0)

    changes = np.array([sign_changes(vecs[:, i]) for i in range(vecs.shape[1])])
    order = np.lexsort((changes, omega))
    omega, vecs = omega[order], vecs[:, order]

    if freq_window is not None:
        lo, hi = freq_window
        sel = (omega >= lo) & (omega <= hi)
        omega, vecs = omega[sel], vecs[:, sel]

    return ModeSet(frequencies=omega, profiles=vecs,
                   node_positions=mat.node_positions,
                   interface_index=mat.interface_index)


def voltage_profile(modes: ModeSet, n: int) -> np.ndarray:
    """Node-voltage shape of mode n, proportional to omega_n times the flux profile."""
    if not 0 <= n < len(modes):
        raise IndexError(f"mode index {n} out of range for {len(modes)} modes")
    return modes.frequencies[n] * modes.profiles[:, n]


def _branch_currents(modes: ModeSet, spec: CircuitSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Strip branch-current shape of mode n at the segment midpoints."""
    iface = modes.interface_index
    flux = modes.profiles[iface:, n]
    delta = spec.dx_right
    currents = (flux[:-1] - flux[1:]) / (spec.l_right_per_len * delta)
    midpoints = (np.arange(spec.n_right) + 0.5) * delta
    return midpoints, currents


def current_average(modes: ModeSet, spec: CircuitSpec, n: int,
                    x0: float, extent: float) -> float:
    """Magnitude of the mode-n strip current averaged over a qubit footprint.

    Branch currents live at segment midpoints and are interpolated
    linearly in between; the average is the exact integral mean of that
    piecewise-linear shape over [x0, x0+extent].  ``extent`` = 0 returns
    the pointwise magnitude at x0.
    """
    if not 0 <= n < len(modes):
        raise IndexError(f"mode index {n} out of range for {len(modes)} modes")
    if extent < 0:
        raise ValueError("extent must be non-negative")
    if x0 < 0 or x0 + extent > spec.rhtl_length:
        raise ValueError(
            f"footprint [{x0}, {x0 + extent}] m falls outside the strip "
            f"[0, {spec.rhtl_length}] m")
    mids, currents = _branch_currents(modes, spec, n)
    if extent == 0:
        return float(abs(np.interp(x0, mids, currents)))
    inner = mids[(mids > x0) & (mids < x0 + extent)]
    knots = np.concatenate([[x0], inner, [x0 + extent]])
    vals = np.interp(knots, mids, currents)
    return float(abs(np.trapezoid(vals, knots) / extent))


def find_current_antinode(modes: ModeSet, spec: CircuitSpec, n: int) -> float:
    """Position of the largest strip current magnitude of mode n (m)."""
    mids, currents = _branch_currents(modes, spec, n)
    return float(mids[np.argmax(np.abs(currents))])


def footprint_at_antinode(modes: ModeSet, spec: CircuitSpec,
                          target_omega: float, extent: float) -> float:
    """Left edge of a footprint centered on the current antinode of the
    mode nearest ``target_omega``, clipped into the strip."""
    n = int(np.argmin(np.abs(modes.frequencies - target_omega)))
    center = find_current_antinode(modes, spec, n)
    x0 = center - extent / 2.0
    return float(np.clip(x0, 0.0, spec.rhtl_length - extent))


def _dom_weight(omega: np.ndarray, spec: CircuitSpec) -> np.ndarray:
    """Total density-of-modes weight, finite for all positive frequencies."""
    out = np.full(omega.shape, rhtl_background_dom(spec))
    above = omega > spec.omega_ir
    if np.any(above):
        out[above] += dom_approx(omega[above], spec)
    return out


def coupling_spectrum(modes: ModeSet, spec: CircuitSpec, qubit: QubitSpec,
                      normalization: str = "dom") -> CouplingSpectrum:
    """Qubit-mode coupling spectrum over the given mode set.

    The spatial factor is the footprint-averaged current magnitude of each
    mode.  With the default ``normalization="dom"`` it is weighted by the
    density of modes at the mode frequency, which flattens the couplings
    of the quasi-degenerate band-edge modes (they share one strip profile
    but carry vanishing strip weight individually); ``"spatial"`` uses the
    bare average instead.  Either way the largest entry defines
    relative_profile = 1 and g_n = g_global * relative_profile_n.
    """
    if len(modes) == 0:
        raise ValueError("empty mode set")
    if normalization not in ("dom", "spatial"):
        raise ValueError(f"unknown normalization {normalization!r}")
    avg = np.array([
        current_average(modes, spec, n, qubit.position, qubit.extent)
        for n in range(len(modes))
    ])
    raw = avg * _dom_weight(modes.frequencies, spec) if normalization == "dom" else avg
    peak = raw.max()
    if peak == 0:
        relative = np.zeros_like(raw)
    else:
        relative = raw / peak
    return CouplingSpectrum(frequencies=modes.frequencies.copy(),
                            relative_profile=relative,
                            g=qubit.g_global * relative,
                            g_global=qubit.g_global)


def dom_numeric(modes: ModeSet, bin_width: float) -> DomEstimate:
    """Numerical density of modes from the computed spectrum.

    Returns a histogram (counts per bin divided by the bin width) plus a
    per-mode nearest-neighbor spacing estimate, 2/(omega_{n+1}-omega_{n-1})
    at interior modes and the one-sided 1/spacing at the two ends, for
    dot-level comparison against the closed-form density.
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    w = modes.frequencies
    if len(w) < 2:
        raise ValueError("need at least 2 modes to estimate a density")
    edges = np.arange(w[0], w[-1] + bin_width, bin_width)
    counts, edges = np.histogram(w, bins=edges)
    spacing = np.empty_like(w)
    spacing[1:-1] = 2.0 / (w[2:] - w[:-2])
    spacing[0] = 1.0 / (w[1] - w[0])
    spacing[-1] = 1.0 / (w[-1] - w[-2])
    return DomEstimate(bin_edges=edges, bin_density=counts / bin_width,
                       mode_frequencies=w.copy(), spacing_density=spacing)
