import numpy as np


def random_density_matrix(rng, n_qubits: int) -> np.ndarray:
    """Ginibre-sampled random mixed state on n_qubits."""
    dim = 2 ** n_qubits
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_ball_points(rng, m: int) -> np.ndarray:
    """Uniform points in the closed unit ball, shape (m, 3)."""
    out = np.empty((0, 3))
    while len(out) < m:
        cand = rng.uniform(-1.0, 1.0, (2 * m, 3))
        cand = cand[(cand ** 2).sum(axis=1) <= 1.0]
        out = np.vstack([out, cand])
    return out[:m]


def random_pure_ket(rng, n_qubits: int) -> np.ndarray:
    dim = 2 ** n_qubits
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
