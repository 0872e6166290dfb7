"""Expected two-qubit gate counts for faulty vs idealized distillation.

Accounting model
----------------
Producing one level-k state consumes five level-(k-1) states and one
decoding round; a round succeeds (trivial syndrome) with probability P(k),
the acceptance probability at that level's input error, so the round is
retried 1/P(k) times in expectation.  Expected gates therefore satisfy

    C(k) = 5 * C(k-1) + B2 / P(k),        C(0) = 0,

with B2 two-qubit gates per round.  This charges the retries to the round
that failed and keeps the characteristic factor-of-five growth per added
level, with the steps smeared by the trivial-syndrome probability.  An
accounting that also restarts the five input preparations on every retry,
C(k) = (5 C(k-1) + B2)/P(k), grows by 5/P per level, roughly a factor of
30, and is not used here.

The idealized branch runs the same recursion with zero noise; it is a
lower bound on the logical gates a fault-tolerant encoding would need, to
be multiplied by the encoding's physical-per-logical overhead for a
physical-gate comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densmat import (DECODER_ONE_QUBIT_GATES, DECODER_TWO_QUBIT_GATES,
                      NoiseParams)
from .noisy_distill import NoDistillationError, analytic_round, noisy_fixed_points


class UnreachableTargetError(ValueError):
    """Target fidelity cannot be reached from the given input."""


@dataclass(frozen=True)
class CostModel:
    """Parameters of the gate-count comparison.

    ``b2`` defaults to the decoder decomposition's two-qubit gate count;
    ``ft_overhead`` is the assumed physical-per-logical two-qubit factor of
    a fault-tolerant encoding (typically 100-1000).  With
    ``include_one_qubit`` the per-round cost also counts the one-qubit
    gates applied as physical pulses.
    """

    target_f: float
    noise: NoiseParams
    b2: int = DECODER_TWO_QUBIT_GATES
    ft_overhead: float = 100.0
    include_one_qubit: bool = False

    def __post_init__(self):
        if not 0.5 < self.target_f < 1.0:
            raise ValueError(f"target fidelity must be in (0.5, 1), got {self.target_f}")
        if self.b2 < 1 or self.ft_overhead < 1:
            raise ValueError("b2 and ft_overhead must be >= 1")

    @property
    def gates_per_round(self) -> float:
        if self.include_one_qubit:
            return float(self.b2 + DECODER_ONE_QUBIT_GATES)
        return float(self.b2)


def _branch_noise(model: CostModel, noisy: bool) -> NoiseParams:
    return model.noise if noisy else NoiseParams.zero()


def expected_gate_count(f_in: float, model: CostModel, noisy: bool = True):
    """Expected gates and rounds to reach the target from input fidelity f_in.

    Returns (gates, rounds); (0.0, 0) when f_in already meets the target.
    Raises UnreachableTargetError when f_in is at or below the branch
    threshold or the target is above the branch ceiling.
    """
    if not 0.5 < f_in <= 1.0:
        raise ValueError(f"input fidelity must be in (0.5, 1], got {f_in}")
    noise = _branch_noise(model, noisy)
    if f_in >= model.target_f:
        return 0.0, 0
    try:
        fp = noisy_fixed_points(noise)
    except NoDistillationError as exc:
        raise UnreachableTargetError(str(exc)) from exc
    if f_in <= fp.threshold_f:
        raise UnreachableTargetError(
            f"input fidelity {f_in} is not above the distillation threshold "
            f"{fp.threshold_f:.6f}")
    if model.target_f > fp.f_ceiling:
        raise UnreachableTargetError(
            f"target {model.target_f} exceeds the fidelity ceiling "
            f"{fp.f_ceiling:.6f}")
    eps = 1.0 - f_in
    cost = 0.0
    rounds = 0
    while 1.0 - eps < model.target_f:
        step = analytic_round(eps, noise)
        cost = 5.0 * cost + model.gates_per_round / step.p_accept
        rounds += 1
        eps = step.eps_out
        if rounds > 10_000:  # threshold/ceiling guards make this unreachable
            raise UnreachableTargetError("round iteration did not converge")
    return cost, rounds


@dataclass(frozen=True)
class CostCurvePoint:
    """Both branches of the comparison at one input fidelity.

    Unreachable branches carry gates None and rounds None (points are
    marked, not dropped).
    """

    f_in: float
    expected_gates_faulty: float | None
    expected_gates_ideal_logical: float | None
    rounds_faulty: int | None
    rounds_ideal: int | None


def comparison_curve(model: CostModel, f_in_grid) -> list:
    """Evaluate both branches over a grid of input fidelities."""
    out = []
    for f in np.asarray(f_in_grid, dtype=float):
        vals = {}
        for key, noisy in (("faulty", True), ("ideal", False)):
            try:
                vals[key] = expected_gate_count(float(f), model, noisy=noisy)
            except UnreachableTargetError:
                vals[key] = (None, None)
        out.append(CostCurvePoint(
            f_in=float(f),
            expected_gates_faulty=vals["faulty"][0],
            expected_gates_ideal_logical=vals["ideal"][0],
            rounds_faulty=vals["faulty"][1],
            rounds_ideal=vals["ideal"][1]))
    return out


def crossover_overhead(f_in: float, model: CostModel) -> float:
    """Break-even physical-per-logical overhead at one input fidelity.

    The ratio faulty/ideal-logical expected gates: a fault-tolerant
    encoding wins only if its physical-per-logical factor is below this.
    Stays within a small factor of five except at step boundaries, far
    below the typical 100-1000 overhead.
    """
    gates_f, _ = expected_gate_count(f_in, model, noisy=True)
    gates_i, _ = expected_gate_count(f_in, model, noisy=False)
    if gates_i == 0.0:
        return 1.0 if gates_f == 0.0 else math.inf
    return gates_f / gates_i
