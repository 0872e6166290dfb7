"""Distillation with depolarizing-noisy Clifford gates.

Couples the first-order analytic round coefficients to the exact channel
simulation, locates the noisy threshold and fidelity ceiling, produces
output-fidelity curves, and models the noisy-resource application of the
pi/12 phase gate.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .bloch import HADAMARD, MAGIC_BASIS, SQRT3
from .densmat import (NoiseParams, controlled_pauli, distill_round,
                      expand_operator, magic_basis_coefficients, PAULIS)


class InvalidRegimeError(ValueError):
    """Raised when the analytic round is evaluated outside its validity."""


class NoDistillationError(ValueError):
    """Raised when the noisy round map has no beneficial fixed points."""


#: Noise strength beyond which the first-order coefficients are flagged.
FIRST_ORDER_P_LIMIT = 0.05


@dataclass(frozen=True)
class NoisyRoundCoeffs:
    """Unnormalized output weights in the magic basis.

    c00 and c11 weigh |T0><T0| and |T1><T1|; c01 weighs |T0><T1|.  At zero
    noise c01 vanishes and the diagonal weights reduce to the noiseless
    round; c01 is first-order in p2 only.
    """

    c00: float
    c11: float
    c01: complex


@dataclass(frozen=True)
class AnalyticRound:
    eps_out: float
    p_accept: float
    coeffs: NoisyRoundCoeffs


def _coeff_c00(eps, p1, p2):
    return (1 - 5 * p1 - 8 * p2) / 6 * ((1 - eps) ** 5 + 5 * eps ** 3 * (1 - eps) ** 2) \
        + p1 / 36 * (19 - 87 * eps + 197 * eps ** 2 - 164 * eps ** 3
                     + 6 * eps ** 4 + 32 * eps ** 5) \
        + p2 / 54 * (20 - 44 * eps + 107 * eps ** 2 - 106 * eps ** 3
                     + 28 * eps ** 4 + 8 * eps ** 5)


def _coeff_c11(eps, p1, p2):
    return (1 - 5 * p1 - 8 * p2) / 6 * (eps ** 5 + 5 * eps ** 2 * (1 - eps) ** 3) \
        + p1 / 36 * (3 + eps + 61 * eps ** 2 - 180 * eps ** 3
                     + 166 * eps ** 4 - 32 * eps ** 5) \
        + p2 / 54 * (13 - 4 * eps + 37 * eps ** 2 - 86 * eps ** 3
                     + 68 * eps ** 4 - 8 * eps ** 5)


def _coeff_c01(eps, p2):
    s3 = SQRT3
    poly = ((-2 + 3j) - (1 + 5j) * s3
            + ((-2 - 9j) + (3 + 10j) * s3) * eps
            + ((6 + 9j) - (3 + 6j) * s3) * eps ** 2
            + ((-8 - 6j) + (2 - 8j) * s3) * eps ** 3
            + (4 + 4j * s3) * eps ** 4)
    return p2 * (1 + 1j) * (-1 + 2 * eps) / 432 * poly


def analytic_round(eps: float, noise: NoiseParams) -> AnalyticRound:
    """First-order-in-noise coefficients of one round on an on-axis state.

    Valid for small (p1, p2); strengths above FIRST_ORDER_P_LIMIT are
    flagged with a warning.  The off-diagonal weight is dropped from
    eps_out (it is O(p2) and negligible against the diagonal), so
    eps_out = c11 / (c00 + c11) and p_accept = c00 + c11.

    For small eps and noise, eps_out is approximately
    5 eps^2 + p1/2 + 13 p2 / 9.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    if max(noise.p1, noise.p2) > FIRST_ORDER_P_LIMIT:
        warnings.warn(
            f"noise strengths {noise.p1, noise.p2} exceed the first-order "
            f"validity limit {FIRST_ORDER_P_LIMIT}", stacklevel=2)
    c00 = _coeff_c00(eps, noise.p1, noise.p2)
    c11 = _coeff_c11(eps, noise.p1, noise.p2)
    c01 = _coeff_c01(eps, noise.p2)
    p_accept = c00 + c11
    if p_accept <= 0.0:
        raise InvalidRegimeError(
            f"acceptance weight {p_accept} <= 0 at eps={eps}, noise={noise}")
    return AnalyticRound(eps_out=c11 / p_accept, p_accept=p_accept,
                         coeffs=NoisyRoundCoeffs(c00, c11, c01))


@dataclass(frozen=True)
class SimulatedRound:
    """Exact-channel counterpart of :class:`AnalyticRound`.

    ``axis_deviation`` is the magnitude of the off-diagonal magic-basis
    entry of the unnormalized output, the amount the round pushed the state
    off the magic axis (bounded by a small multiple of p2).
    """

    eps_out: float
    p_accept: float
    axis_deviation: float


def simulated_round(eps: float, noise: NoiseParams) -> SimulatedRound:
    """One exact noisy round on the on-axis state with error eps.

    Agrees with :func:`analytic_round` exactly at zero noise and to first
    order in (p1, p2) elsewhere.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    t = (1.0 - 2.0 * eps) / SQRT3
    outcome = distill_round((t, t, t), noise)
    c00, c11, c01 = magic_basis_coefficients(outcome.state * outcome.p_accept)
    return SimulatedRound(eps_out=c11 / (c00 + c11),
                          p_accept=outcome.p_accept,
                          axis_deviation=abs(c01))


@dataclass(frozen=True)
class NoisyFixedPoint:
    """Fixed points of the noisy round map eps -> eps_out.

    ``epsilon_star`` is the stable limiting error of repeated distillation,
    ``f_ceiling`` = 1 - epsilon_star the best reachable fidelity, and
    ``threshold_f`` the minimal useful input fidelity (the unstable fixed
    point).
    """

    epsilon_star: float
    f_ceiling: float
    threshold_f: float


def noisy_fixed_points(noise: NoiseParams, xtol: float = 1e-12) -> NoisyFixedPoint:
    """Locate the stable and unstable fixed points of the analytic round map.

    Raises NoDistillationError when the map has no crossing, i.e. the noise
    is too strong for any input to be improved.
    """
    if noise.is_zero:
        gain = lambda e: analytic_round(e, noise).eps_out - e
        thr = bisect(gain, 1e-6, 0.49, xtol=xtol)
        return NoisyFixedPoint(epsilon_star=0.0, f_ceiling=1.0,
                               threshold_f=1.0 - thr)
    gain = lambda e: analytic_round(e, noise).eps_out - e
    grid = np.concatenate([np.geomspace(1e-8, 0.01, 60),
                           np.linspace(0.0105, 0.49, 960)])
    vals = np.array([gain(e) for e in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(bisect(gain, grid[i], grid[i + 1], xtol=xtol))
    if len(roots) < 2:
        raise NoDistillationError(
            f"round map has no beneficial fixed-point pair at noise {noise}")
    eps_star, threshold_eps = roots[0], roots[-1]
    return NoisyFixedPoint(epsilon_star=eps_star,
                           f_ceiling=1.0 - eps_star,
                           threshold_f=1.0 - threshold_eps)


def iterate_error(eps: float, noise: NoiseParams, rounds: int) -> list:
    """Errors [eps_0, eps_1, ...] under repeated analytic rounds."""
    out = [eps]
    for _ in range(rounds):
        out.append(analytic_round(out[-1], noise).eps_out)
    return out


def _limit_error(eps: float, noise: NoiseParams, max_rounds: int = 500,
                 tol: float = 1e-14) -> float:
    for _ in range(max_rounds):
        nxt = analytic_round(eps, noise).eps_out
        if abs(nxt - eps) < tol:
            return nxt
        eps = nxt
    return eps


@dataclass(frozen=True)
class FidelityCurve:
    """Per-round and iterated-limit output fidelities over an input grid."""

    noise: NoiseParams
    f_in: np.ndarray
    f_out_one_round: np.ndarray
    f_out_limit: np.ndarray


def fidelity_curve(noise: NoiseParams, f_in_grid) -> FidelityCurve:
    """Output fidelity after one round and in the iterated limit.

    The grid must lie in (0.5, 1].  Inputs below the noisy threshold
    degrade toward the maximally mixed state; inputs above it converge to
    the fidelity ceiling.
    """
    f_in = np.asarray(f_in_grid, dtype=float)
    if np.any(f_in <= 0.5) or np.any(f_in > 1.0):
        raise ValueError("input fidelity grid must lie in (0.5, 1]")
    one = np.empty_like(f_in)
    lim = np.empty_like(f_in)
    for i, f in enumerate(f_in):
        res = analytic_round(1.0 - f, noise)
        one[i] = 1.0 - res.eps_out
        lim[i] = 1.0 - _limit_error(1.0 - f, noise)
    return FidelityCurve(noise=noise, f_in=f_in, f_out_one_round=one,
                         f_out_limit=lim)


# --- pi/12 phase-gate application ----------------------------------------------

def lambda_phase(phi: float) -> np.ndarray:
    """The phase gate diag(e^{i phi}, e^{-i phi})."""
    return np.diag([np.exp(1j * phi), np.exp(-1j * phi)])


LAMBDA_PI12 = lambda_phase(math.pi / 12)


def universal_gate_fidelity(a_amp: float, eps_prime: float,
                            corrected: bool = False) -> float:
    """Fidelity of the pi/12 gate applied with noisy magic-state resources.

    ``a_amp`` is |a| for the input a|0> + b|1>; ``eps_prime`` the resource
    error.  Two exponent conventions of the closed form circulate; the
    default evaluates

        F = 1 - 12 eps' |a|^2 (1 - |a|)^2 / (3 + (1 - 2 eps')^2)

    while ``corrected=True`` replaces (1 - |a|)^2 by (1 - |a|^2), which is
    the form the exact simulation of the gate circuit reproduces (see
    :func:`simulated_gate_fidelity`); the default's exponent placement
    looks like a typo.  Both variants satisfy F >= 1 - eps'.
    """
    if not 0.0 <= a_amp <= 1.0:
        raise ValueError(f"|a| must be in [0, 1], got {a_amp}")
    if not 0.0 <= eps_prime < 0.5:
        raise ValueError(f"eps' must be in [0, 0.5), got {eps_prime}")
    weight = a_amp ** 2 * (1.0 - a_amp ** 2) if corrected \
        else a_amp ** 2 * (1.0 - a_amp) ** 2
    f = 1.0 - 12.0 * eps_prime * weight / (3.0 + (1.0 - 2.0 * eps_prime) ** 2)
    assert f >= 1.0 - eps_prime - 1e-12
    return f


@dataclass(frozen=True)
class PiGateBranch:
    """One parity branch of the final measurement.

    ``m2`` is the measured parity; ``gate_sign`` +1 when the realized gate
    is the +pi/12 rotation and -1 for -pi/12; ``probability`` is
    conditional on the accepted first measurement.
    """

    m2: int
    gate_sign: int
    probability: float
    state: np.ndarray


@dataclass(frozen=True)
class PiGateResult:
    """Channel-level outcome of the gate-application circuit.

    ``out_state`` is the output of the branch realizing the +pi/12 gate;
    ``p_accept`` the probability of the post-selected first measurement.
    Both branches are tracked exactly; no sampling is involved.
    """

    out_state: np.ndarray
    p_accept: float
    branches: tuple


def apply_pi12_gate(psi, magic: np.ndarray) -> PiGateResult:
    """Apply the pi/12 phase gate to a pure state using two magic resources.

    The three-qubit circuit measures the parity of the two resource qubits
    (post-selecting +1), entangles them, then measures the parity of the
    input against one resource; each parity branch realizes one of the
    +-pi/12 rotations on the input qubit.  With pure magic-state resources
    the realized gates are exact.
    """
    psi = np.asarray(psi, dtype=complex).reshape(2)
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ValueError("input state must be nonzero")
    psi = psi / nrm
    rho = np.kron(np.outer(psi, psi.conj()), np.kron(magic, magic))

    zz12 = expand_operator(np.kron(PAULIS["Z"], PAULIS["Z"]), (1, 2), 3)
    proj1 = (np.eye(8) + zz12) / 2.0
    rho = proj1 @ rho @ proj1
    p_accept = float(np.trace(rho).real)
    if p_accept < 1e-300:
        raise ValueError("zero acceptance probability in resource measurement")
    rho = rho / p_accept

    cnot12 = expand_operator(controlled_pauli(0, 1, "X").matrix, (1, 2), 3)
    rho = cnot12 @ rho @ cnot12.conj().T
    h1 = expand_operator(HADAMARD, (1,), 3)
    rho = h1 @ rho @ h1.conj().T

    zz01 = expand_operator(np.kron(PAULIS["Z"], PAULIS["Z"]), (0, 1), 3)
    cnot01 = expand_operator(controlled_pauli(0, 1, "X").matrix, (0, 1), 3)
    branches = []
    for m2 in (+1, -1):
        proj = (np.eye(8) + m2 * zz01) / 2.0
        br = proj @ rho @ proj
        br = cnot01 @ br @ cnot01.conj().T
        t = br.reshape(2, 2, 2, 2, 2, 2)
        red = np.einsum("iabjab->ij", t)
        prob = float(np.trace(red).real)
        state = red / prob if prob > 1e-300 else np.zeros((2, 2), dtype=complex)
        # the +1 parity branch realizes the +pi/12 rotation
        branches.append(PiGateBranch(m2=m2, gate_sign=+1 if m2 == 1 else -1,
                                     probability=prob, state=state))
    plus = next(b for b in branches if b.gate_sign == 1)
    return PiGateResult(out_state=plus.state, p_accept=p_accept,
                        branches=tuple(branches))


def simulated_gate_fidelity(a_amp: float, eps_prime: float) -> float:
    """Exact circuit fidelity of the realized gate, averaged over branches.

    Each branch is compared against its own ideal +-pi/12 output; the
    branch fidelities coincide, and the average equals the corrected
    closed-form variant.
    """
    b = math.sqrt(max(1.0 - a_amp ** 2, 0.0))
    psi = np.array([a_amp, b], dtype=complex)
    magic = (1.0 - eps_prime) * MAGIC_BASIS.t0 + eps_prime * MAGIC_BASIS.t1
    res = apply_pi12_gate(psi, magic)
    total = 0.0
    weight = 0.0
    for br in res.branches:
        target = lambda_phase(br.gate_sign * math.pi / 12) @ psi
        total += br.probability * float((target.conj() @ br.state @ target).real)
        weight += br.probability
    return total / weight
