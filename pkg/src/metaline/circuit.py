"""Lumped-element description of the hybrid left/right-handed transmission line.

The device is a discrete left-handed ladder (series capacitors C_l, shunt
inductors L_l, N_l unit cells of pitch dx) galvanically joined to a regular
strip line treated as the continuum limit of an L-C ladder.  The strip is
discretized into n_right numerical cells for the eigensolver; the left
ladder's last node and the strip's first node are one and the same
interface node.

All quantities are SI; every frequency in this package is an angular
frequency in rad/s.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy import stats


@dataclass(frozen=True, eq=False)
class CircuitSpec:
    """Parametric description of the coupled-line network.

    Parameters
    ----------
    n_left : int
        Number of unit cells in the left-handed ladder (>= 1).
    c_left, l_left : float
        Series capacitance (F) and shunt inductance (H) of one ladder cell.
    cell_pitch : float
        Physical length of one ladder cell in meters.
    rhtl_length : float
        Length of the right-handed strip in meters.
    c_right_per_len, l_right_per_len : float
        Strip capacitance (F/m) and inductance (H/m) per unit length.
    n_right : int
        Number of numerical discretization cells for the strip (>= 2).
        This is a solver knob, not a physical parameter.
    c_end_left, c_end_right : float or None
        Optional terminating capacitances (F) on the outermost nodes.
        None means an open end.
    c_left_cells, l_left_cells : ndarray or None
        Optional per-cell element values (length n_left); used to model
        fabrication disorder.  None means every cell is nominal.
    """

    n_left: int
    c_left: float
    l_left: float
    cell_pitch: float
    rhtl_length: float
    c_right_per_len: float
    l_right_per_len: float
    n_right: int = 300
    c_end_left: float | None = None
    c_end_right: float | None = None
    c_left_cells: np.ndarray | None = None
    l_left_cells: np.ndarray | None = None

    def __post_init__(self):
        bad = []
        if self.n_left < 1:
            bad.append("n_left")
        if self.n_right < 2:
            bad.append("n_right")
        for name in ("c_left", "l_left", "cell_pitch", "rhtl_length",
                     "c_right_per_len", "l_right_per_len"):
            if not getattr(self, name) > 0:
                bad.append(name)
        for name in ("c_end_left", "c_end_right"):
            val = getattr(self, name)
            if val is not None and not val > 0:
                bad.append(name)
        for name in ("c_left_cells", "l_left_cells"):
            val = getattr(self, name)
            if val is not None:
                arr = np.asarray(val, dtype=float)
                if arr.shape != (self.n_left,) or not np.all(arr > 0):
                    bad.append(name)
                else:
                    object.__setattr__(self, name, arr)
        if bad:
            raise ValueError(f"invalid CircuitSpec fields: {', '.join(bad)}")

    @property
    def omega_ir(self) -> float:
        """Infrared cutoff 1/(2 sqrt(C_l L_l)) of the left-handed ladder (rad/s)."""
        return 1.0 / (2.0 * np.sqrt(self.c_left * self.l_left))

    @property
    def rhtl_impedance(self) -> float:
        """Characteristic impedance sqrt(l_r/c_r) of the strip (ohm)."""
        return np.sqrt(self.l_right_per_len / self.c_right_per_len)

    @property
    def rhtl_velocity(self) -> float:
        """Phase velocity 1/sqrt(l_r c_r) of the strip (m/s)."""
        return 1.0 / np.sqrt(self.l_right_per_len * self.c_right_per_len)

    @property
    def dx_right(self) -> float:
        """Numerical discretization step of the strip (m)."""
        return self.rhtl_length / self.n_right

    def cell_values(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-cell (C, L) arrays, falling back to the nominal values."""
        c = self.c_left_cells if self.c_left_cells is not None \
            else np.full(self.n_left, self.c_left)
        l = self.l_left_cells if self.l_left_cells is not None \
            else np.full(self.n_left, self.l_left)
        return c, l


@dataclass(frozen=True, eq=False)
class NetworkMatrices:
    """Charging and inductive energy matrices over the node fluxes.

    ``cap`` (F) is symmetric positive definite; ``inv_ind`` (1/H) is
    symmetric positive semidefinite.  ``node_positions`` holds one
    coordinate per node, the ladder occupying x < 0 and the strip
    x in [0, rhtl_length] with the shared interface node at x = 0,
    whose index is ``interface_index``.
    """

    cap: np.ndarray
    inv_ind: np.ndarray
    node_positions: np.ndarray
    interface_index: int

    @property
    def dim(self) -> int:
        return self.cap.shape[0]


def design_from_impedance(z0: float, omega_ir: float) -> tuple[float, float]:
    """Ladder cell values giving impedance ``z0`` and IR cutoff ``omega_ir``.

    Returns (C_l, L_l) = (1/(2 omega_ir z0), z0/(2 omega_ir)); the pair
    satisfies 1/(2 sqrt(C_l L_l)) = omega_ir identically.
    """
    if not z0 > 0:
        raise ValueError(f"impedance must be positive, got {z0}")
    if not omega_ir > 0:
        raise ValueError(f"cutoff frequency must be positive, got {omega_ir}")
    return 1.0 / (2.0 * omega_ir * z0), z0 / (2.0 * omega_ir)


def rhtl_from_impedance(z0: float, velocity: float) -> tuple[float, float]:
    """Per-length strip values (c_r, l_r) from impedance and phase velocity."""
    if not z0 > 0 or not velocity > 0:
        raise ValueError("impedance and velocity must be positive")
    return 1.0 / (z0 * velocity), z0 / velocity


def lhtl_ladder_matrices(c_cells: np.ndarray, l_cells: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of a bare left-handed ladder with N cells and N+1 nodes.

    Cell j places its series capacitor between nodes j and j+1 and its
    shunt inductor on node j+1, so the last node (the interface in the
    assembled network) carries an inductor while node 0 ends in a bare
    series capacitor.
    """
    n_cells = len(c_cells)
    dim = n_cells + 1
    cap = np.zeros((dim, dim))
    inv_ind = np.zeros((dim, dim))
    for j in range(n_cells):
        c = c_cells[j]
        cap[j, j] += c
        cap[j + 1, j + 1] += c
        cap[j, j + 1] -= c
        cap[j + 1, j] -= c
        inv_ind[j + 1, j + 1] += 1.0 / l_cells[j]
    return cap, inv_ind


def rhtl_ladder_matrices(c_per_len: float, l_per_len: float, length: float,
                         n_cells: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of a bare discretized strip with n_cells cells, open ends.

    The two end nodes take half a cell of shunt capacitance so the summed
    capacitance is exactly c_per_len*length and the open-open eigenmodes
    land on the ladder dispersion at k_m = m*pi/length.
    """
    delta = length / n_cells
    dim = n_cells + 1
    cap = np.zeros((dim, dim))
    inv_ind = np.zeros((dim, dim))
    y = 1.0 / (l_per_len * delta)
    for j in range(n_cells):
        inv_ind[j, j] += y
        inv_ind[j + 1, j + 1] += y
        inv_ind[j, j + 1] -= y
        inv_ind[j + 1, j] -= y
    weights = np.full(dim, c_per_len * delta)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    cap[np.diag_indices(dim)] += weights
    return cap, inv_ind


def build_matrices(spec: CircuitSpec) -> NetworkMatrices:
    """Assemble the full network matrices for the coupled device.

    The ladder block and the strip block are joined by identifying the
    ladder's last node with the strip's node 0; terminating capacitors,
    when present, add to the outermost diagonal entries.
    """
    c_cells, l_cells = spec.cell_values()
    nl, nr = spec.n_left, spec.n_right
    dim = nl + nr + 1
    cap = np.zeros((dim, dim))
    inv_ind = np.zeros((dim, dim))

    cap_l, ind_l = lhtl_ladder_matrices(c_cells, l_cells)
    cap[: nl + 1, : nl + 1] += cap_l
    inv_ind[: nl + 1, : nl + 1] += ind_l

    cap_r, ind_r = rhtl_ladder_matrices(
        spec.c_right_per_len, spec.l_right_per_len, spec.rhtl_length, nr)
    cap[nl:, nl:] += cap_r
    inv_ind[nl:, nl:] += ind_r

    if spec.c_end_left is not None:
        cap[0, 0] += spec.c_end_left
    if spec.c_end_right is not None:
        cap[-1, -1] += spec.c_end_right

    positions = np.concatenate([
        (np.arange(nl) - nl) * spec.cell_pitch,
        np.arange(nr + 1) * spec.dx_right,
    ])
    return NetworkMatrices(cap=cap, inv_ind=inv_ind,
                           node_positions=positions, interface_index=nl)


def apply_disorder(spec: CircuitSpec, relative_sigma: float, seed: int) -> CircuitSpec:
    """Scatter every ladder C and L independently by (1 + eps).

    eps is zero-mean normal with standard deviation ``relative_sigma``,
    truncated at +-3 sigma.  Deterministic for a fixed seed.
    """
    if not 0 <= relative_sigma < 0.5:
        raise ValueError(f"relative_sigma must lie in [0, 0.5), got {relative_sigma}")
    c_cells, l_cells = spec.cell_values()
    if relative_sigma == 0:
        return replace(spec, c_left_cells=c_cells, l_left_cells=l_cells)
    rng = np.random.default_rng(seed)
    eps = stats.truncnorm.rvs(-3.0, 3.0, scale=relative_sigma,
                              size=2 * spec.n_left, random_state=rng)
    return replace(
        spec,
        c_left_cells=c_cells * (1.0 + eps[: spec.n_left]),
        l_left_cells=l_cells * (1.0 + eps[spec.n_left:]),
    )
