"""Independent brute-force oracles the library code must agree with.

These deliberately avoid the closed forms and iteration schemes used by
the package: entropies come from explicit density matrices and partial
traces in the full qubit x modes tensor space, and the renormalization
fixed point from a dense scan over candidate splittings.
"""

import numpy as np


def embed_full_state(c0: complex, c: np.ndarray) -> np.ndarray:
    """One-excitation amplitudes -> vector in the 2^(N+1) tensor space.

    Subsystem 0 is the qubit, subsystems 1..N the modes, each truncated to
    two levels (enough for a single excitation).
    """
    n = len(c)
    vec = np.zeros(2 ** (n + 1), dtype=complex)
    # axis 0 is the most significant bit; basis |qubit, n_1, ..., n_N>
    vec[1 << n] = c0                      # qubit excited, all modes vacuum
    for m in range(n):
        vec[1 << (n - 1 - m)] = c[m]      # photon in mode m
    return vec


def entropy_after_tracing(c0: complex, c: np.ndarray, traced: list[int]) -> float:
    """Von Neumann entropy (nats) of the state left after tracing ``traced``.

    ``traced`` lists subsystem indices (0 = qubit, 1+m = mode m) of the
    parts traced out; the reduced density matrix of the remaining parts is
    formed explicitly and diagonalized.
    """
    n = len(c)
    dims = n + 1
    vec = embed_full_state(c0, c).reshape((2,) * dims)
    keep = [ax for ax in range(dims) if ax not in traced]
    # rho_keep[i, j] = sum_t psi[i, t] conj(psi[j, t])
    psi = np.transpose(vec, keep + sorted(traced))
    psi = psi.reshape(2 ** len(keep), 2 ** len(traced))
    rho = psi @ psi.conj().T
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-15]
    return float(-np.sum(evals * np.log(evals)))


def grid_search_fixed_point(omega: np.ndarray, g: np.ndarray, delta0: float,
                            variant: str = "standard", npts: int = 200_000) -> float:
    """Largest self-consistent splitting by dense scan, no iteration.

    The dressing sum is a step function of the candidate splitting, so on
    the bracketing grid interval the mapped value itself is the exact
    fixed point.
    """
    lam2 = (g / omega) ** 2 if variant == "standard" else (g / omega) ** 4
    order = np.argsort(omega)
    omega_sorted = omega[order]
    tail = np.concatenate([np.cumsum(lam2[order][::-1])[::-1], [0.0]])

    grid = np.linspace(delta0 * 1e-9, delta0, npts)
    s_of = tail[np.searchsorted(omega_sorted, grid, side="right")]
    mapped = delta0 * np.exp(-2.0 * s_of)
    feasible = mapped >= grid
    i = int(np.max(np.nonzero(feasible)[0]))
    return float(mapped[i])
