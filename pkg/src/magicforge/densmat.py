"""Exact dense density-matrix engine for up to five qubits.

Implements the Clifford gates, one- and two-qubit depolarizing channels,
the five-qubit-code decoder used by the distillation round, stabilizer
projection, and the post-selected round itself.  Everything is computed as
exact channel evolution on dense complex matrices; there is no sampling
anywhere.

Qubit ordering
--------------
Qubit 0 is the most significant bit of the state index and corresponds to
the top wire of the decoder; qubit 4 (the bottom wire) carries the output
state.  Post-selection keeps the ``|0000>`` outcome of Z-basis measurements
on qubits 0-3.

Decoder layout
--------------
The decoder is a fixed sequence of 14 gates.  Multi-target controlled
columns are decomposed into two-qubit controlled-Pauli gates sharing the
control, applied bottom wire first; Pauli-product labels such as ``"XZ"``
list the factors in the order they act on the target (so the matrix is
Z @ X).  Layout, with (c) marking the control qubit:

    q0  ---------Z----Z--------(c)---Z---H-------  measure, keep |0>
    q1  ----------|----Z--(c)---|--------H-------  measure, keep |0>
    q2  ---------Z---(c)---|----|--------H-------  measure, keep |0>
    q3  --------(c)---|----|----|----Z---H-------  measure, keep |0>
    q4  ---------XZ---X----X----XZ---Z---H---Y---  output

Noise model: every two-qubit controlled gate is followed by a two-qubit
depolarizing channel of strength p2 on its (control, target) pair, and
every Hadamard by a one-qubit depolarizing channel of strength p1.  The
Pauli gates (Z, Y) carry no noise: they are frame updates that need not be
applied as physical pulses.  This placement is the one that reproduces the
known first-order error polynomials of the noisy round; attaching noise to
the Pauli gates as well does not.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .bloch import (HADAMARD, ID2, MAGIC_BASIS, PHASE_K, SIGMA_X, SIGMA_Y,
                    SIGMA_Z, T_ROTATION, as_bloch, bloch_to_density, dephase,
                    density_to_bloch)

PAULIS = {"I": ID2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}

_SINGLE_QUBIT = {
    "H": HADAMARD,
    "K": PHASE_K,
    "X": SIGMA_X,
    "Y": SIGMA_Y,
    "Z": SIGMA_Z,
    "T": T_ROTATION,
}

#: Stabilizer generators of the five-qubit code, qubit 0 leftmost.
STABILIZERS = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")


def pauli_product(label: str) -> np.ndarray:
    """Product of single-qubit Paulis, factors listed in application order.

    ``"XZ"`` means X acts first, then Z, i.e. the matrix Z @ X.  The
    relative sign matters inside controlled gates.
    """
    m = ID2
    for ch in label:
        m = PAULIS[ch] @ m
    return m


@dataclass(frozen=True, eq=False)
class GateOp:
    """A gate instance: name, qubit indices, unitary block, attached noise.

    ``noise_p`` is the strength of the depolarizing channel applied after
    the gate (two-qubit channel for two-qubit gates); 0 means noiseless.
    """

    name: str
    qubits: tuple
    matrix: np.ndarray
    noise_p: float = 0.0

    @property
    def is_two_qubit(self) -> bool:
        return len(self.qubits) == 2

    def dagger(self) -> "GateOp":
        return GateOp(self.name + "^", self.qubits, self.matrix.conj().T,
                      self.noise_p)


def one_qubit_gate(name: str, qubit: int, noise_p: float = 0.0) -> GateOp:
    if name in _SINGLE_QUBIT:
        m = _SINGLE_QUBIT[name]
    else:
        m = pauli_product(name)
    return GateOp(name, (qubit,), m, noise_p)


def controlled_pauli(control: int, target: int, product: str,
                     noise_p: float = 0.0) -> GateOp:
    """Controlled Pauli-product gate; ``product`` as in :func:`pauli_product`."""
    block = np.eye(4, dtype=complex)
    block[2:, 2:] = pauli_product(product)
    return GateOp(f"C{product}", (control, target), block, noise_p)


def expand_operator(op: np.ndarray, qubits, n: int) -> np.ndarray:
    """Embed an operator on the given qubits (in order) into n qubits."""
    qubits = tuple(qubits)
    k = len(qubits)
    if op.shape != (2 ** k, 2 ** k):
        raise ValueError(f"operator shape {op.shape} does not act on {k} qubits")
    if len(set(qubits)) != k or any(q < 0 or q >= n for q in qubits):
        raise IndexError(f"bad qubit indices {qubits} for n={n}")
    full = np.kron(op, np.eye(2 ** (n - k), dtype=complex))
    perm = list(qubits) + [q for q in range(n) if q not in qubits]
    inv = [0] * n
    for pos, q in enumerate(perm):
        inv[q] = pos
    t = full.reshape((2,) * (2 * n))
    t = np.transpose(t, inv + [n + i for i in inv])
    return np.ascontiguousarray(t.reshape(2 ** n, 2 ** n))


@functools.lru_cache(maxsize=None)
def _expanded_gate(name: str, qubits: tuple, n: int) -> np.ndarray:
    if len(qubits) == 1:
        return expand_operator(one_qubit_gate(name, qubits[0]).matrix, qubits, n)
    return expand_operator(controlled_pauli(qubits[0], qubits[1],
                                            name.lstrip("C")).matrix, qubits, n)


def apply_gate(rho: np.ndarray, gate: GateOp) -> np.ndarray:
    """Conjugate rho by the gate's unitary: rho -> U rho U^dag."""
    n = _num_qubits(rho)
    u = _expanded_gate(gate.name.rstrip("^"), gate.qubits, n)
    if gate.name.endswith("^"):
        u = u.conj().T
    return u @ rho @ u.conj().T


def _num_qubits(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if rho.shape != (dim, dim) or 2 ** n != dim:
        raise ValueError(f"not a qubit density matrix shape: {rho.shape}")
    return n


@functools.lru_cache(maxsize=None)
def _pauli_sandwiches_1q(qubit: int, n: int):
    return tuple(expand_operator(PAULIS[p], (qubit,), n) for p in "XYZ")


@functools.lru_cache(maxsize=None)
def _pauli_sandwiches_2q(qa: int, qb: int, n: int):
    labels = [a + b for a in "IXYZ" for b in "IXYZ" if a + b != "II"]
    return tuple(expand_operator(np.kron(PAULIS[l[0]], PAULIS[l[1]]), (qa, qb), n)
                 for l in labels)


def depolarize1(rho: np.ndarray, qubit: int, p1: float) -> np.ndarray:
    """One-qubit depolarizing channel (1-p1) rho + p1 * (I/2 marginal).

    Pauli-twirl form with weights (1 - 3 p1/4, p1/4, p1/4, p1/4).
    """
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"p1 must be in [0, 1], got {p1}")
    if p1 == 0.0:
        return rho
    n = _num_qubits(rho)
    out = (1 - 0.75 * p1) * rho
    for u in _pauli_sandwiches_1q(qubit, n):
        out = out + 0.25 * p1 * (u @ rho @ u)
    return out


def depolarize2(rho: np.ndarray, qubit_a: int, qubit_b: int, p2: float) -> np.ndarray:
    """Two-qubit depolarizing channel (1-p2) rho + p2 * (I/4 marginal).

    Pauli-twirl form: weight 1 - 15 p2/16 on identity, p2/16 on each of the
    other fifteen two-qubit Paulis.
    """
    if not 0.0 <= p2 <= 1.0:
        raise ValueError(f"p2 must be in [0, 1], got {p2}")
    if qubit_a == qubit_b:
        raise ValueError("two-qubit channel needs distinct qubits")
    if p2 == 0.0:
        return rho
    n = _num_qubits(rho)
    out = (1 - 15 * p2 / 16) * rho
    for u in _pauli_sandwiches_2q(qubit_a, qubit_b, n):
        out = out + (p2 / 16) * (u @ rho @ u)
    return out


@dataclass(frozen=True)
class NoiseParams:
    """Depolarizing strengths (p1, p2) of the one- and two-qubit channels.

    Gate errors E_i = 1 - F_i relate to the channel strengths by p1 = 2 E1
    and p2 = 4 E2 / 3.
    """

    p1: float = 0.0
    p2: float = 0.0

    def __post_init__(self):
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")

    @classmethod
    def from_gate_errors(cls, e1: float, e2: float) -> "NoiseParams":
        return cls(p1=2.0 * e1, p2=4.0 * e2 / 3.0)

    @classmethod
    def zero(cls) -> "NoiseParams":
        return cls(0.0, 0.0)

    @property
    def e1(self) -> float:
        return self.p1 / 2.0

    @property
    def e2(self) -> float:
        return 3.0 * self.p2 / 4.0

    @property
    def is_zero(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0


def decoder_circuit(noise: NoiseParams = NoiseParams.zero()) -> list:
    """The decoding circuit as a list of GateOps with attached noise.

    See the module docstring for the layout and the noise-placement
    rationale.  The two-qubit gate count of this decomposition is
    ``DECODER_TWO_QUBIT_GATES``.
    """
    p1, p2 = noise.p1, noise.p2
    gates = [
        controlled_pauli(3, 4, "XZ", p2),
        controlled_pauli(3, 2, "Z", p2),
        controlled_pauli(3, 0, "Z", p2),
        controlled_pauli(2, 4, "X", p2),
        controlled_pauli(2, 1, "Z", p2),
        controlled_pauli(2, 0, "Z", p2),
        controlled_pauli(1, 4, "X", p2),
        controlled_pauli(0, 4, "XZ", p2),
        one_qubit_gate("Z", 0),
        one_qubit_gate("Z", 3),
        one_qubit_gate("Z", 4),
    ]
    gates += [one_qubit_gate("H", q, p1) for q in range(5)]
    gates.append(one_qubit_gate("Y", 4))
    return gates


#: Two-qubit gates per round in the decoder decomposition.
DECODER_TWO_QUBIT_GATES = sum(g.is_two_qubit for g in decoder_circuit())
#: One-qubit gates that must be applied as physical pulses (the Hadamards);
#: the Pauli frame updates are excluded.
DECODER_ONE_QUBIT_GATES = sum(
    not g.is_two_qubit and g.name == "H" for g in decoder_circuit())


def encoder_circuit() -> list:
    """Noiseless inverse of the decoder (for tests and codeword construction)."""
    return [g.dagger() for g in reversed(decoder_circuit())]


@functools.lru_cache(maxsize=1)
def decoder_unitary() -> np.ndarray:
    """The full 32x32 noiseless decoder unitary."""
    u = np.eye(32, dtype=complex)
    for g in decoder_circuit():
        u = _expanded_gate(g.name, g.qubits, 5) @ u
    return u


def apply_decoder(rho: np.ndarray, noise: NoiseParams) -> np.ndarray:
    """Run the (noisy) decoder on a five-qubit state."""
    if noise.is_zero:
        u = decoder_unitary()
        return u @ rho @ u.conj().T
    for g in decoder_circuit(noise):
        rho = apply_gate(rho, g)
        if g.noise_p > 0.0:
            if g.is_two_qubit:
                rho = depolarize2(rho, g.qubits[0], g.qubits[1], g.noise_p)
            else:
                rho = depolarize1(rho, g.qubits[0], g.noise_p)
    return rho


@functools.lru_cache(maxsize=1)
def stabilizer_projector() -> np.ndarray:
    """Projector onto the code space: product of (I + S_i)/2 over generators."""
    proj = np.eye(32, dtype=complex)
    for s in STABILIZERS:
        m = np.array([[1]], dtype=complex)
        for ch in s:
            m = np.kron(m, PAULIS[ch])
        proj = proj @ (np.eye(32, dtype=complex) + m) / 2.0
    return proj


def project_stabilizers(rho5: np.ndarray) -> np.ndarray:
    """Project a five-qubit state onto the trivial-syndrome subspace.

    Returns the unnormalized state Pi rho Pi; its trace is the acceptance
    probability.  Equivalent to running the noiseless decoder and keeping
    the |0000> outcome on qubits 0-3.
    """
    if rho5.shape != (32, 32):
        raise ValueError("expected a five-qubit density matrix")
    pi = stabilizer_projector()
    return pi @ rho5 @ pi


@dataclass(frozen=True)
class RoundOutcome:
    """Post-selected output of one distillation round.

    ``state`` is the normalized 2x2 output density matrix (None when the
    acceptance probability underflows); ``p_accept`` the probability of the
    trivial syndrome.
    """

    state: np.ndarray | None
    p_accept: float

    @property
    def bloch(self):
        if self.state is None:
            raise ValueError("zero-probability outcome has no state")
        return density_to_bloch(self.state)


def distill_round(state, noise: NoiseParams = NoiseParams.zero(),
                  use_dephasing: bool = False) -> RoundOutcome:
    """One distillation round on five i.i.d. copies of a Bloch-ball state.

    Builds rho^(x5), optionally dephasing the source state onto the magic
    axis first, runs the (noisy) decoder, projects qubits 0-3 onto |0000>,
    and returns the normalized bottom-qubit state with the acceptance
    probability.
    """
    v = as_bloch(state)
    if use_dephasing:
        v = dephase(v)
    rho1 = bloch_to_density(v)
    rho = rho1
    for _ in range(4):
        rho = np.kron(rho, rho1)
    rho = apply_decoder(rho, noise)
    # qubits 0-3 projected to |0000>: the surviving block is the top-left 2x2
    out = rho[0:2, 0:2].copy()
    p_accept = float(np.trace(out).real)
    if p_accept < 1e-300:
        return RoundOutcome(state=None, p_accept=0.0)
    return RoundOutcome(state=out / p_accept, p_accept=p_accept)


def magic_basis_coefficients(rho: np.ndarray):
    """Matrix entries (c00, c11, c01) of a qubit operator in the magic basis."""
    t0, t1 = MAGIC_BASIS.t0_ket, MAGIC_BASIS.t1_ket
    return (complex(t0.conj() @ rho @ t0).real,
            complex(t1.conj() @ rho @ t1).real,
            complex(t0.conj() @ rho @ t1))


def is_density_matrix(rho: np.ndarray, trace: float = 1.0,
                      tol: float = 1e-12, eig_floor: float = -1e-10) -> bool:
    """Check Hermiticity, trace, and positivity within tolerances."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.abs(rho - rho.conj().T).max() > tol:
        return False
    if abs(np.trace(rho).real - trace) > tol:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= eig_floor)


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)
