"""magicforge: exact and closed-form analysis of magic state distillation.

Dense density-matrix simulation of the five-qubit distillation round under
perfect and depolarizing-noisy Clifford gates, the closed-form round map on
the Bloch ball with its basins and thresholds, noisy fixed points and
fidelity curves, the pi/12 gate application with noisy resources, and an
expected-gate-count comparison against idealized logical gates.
"""

__version__ = "0.1.0"

from .bloch import (BALL_TOL, MAGIC_AXIS, MAGIC_BASIS, MAGIC_STATE,
                    BlochVector, MagicBasis, PlaneCoords, as_bloch,
                    bloch_to_density, dephase, dephase_density,
                    density_to_bloch, fidelity_to_magic, from_plane,
                    max_plane_radius, plane_points, to_plane)
from .cost import (CostCurvePoint, CostModel, UnreachableTargetError,
                   comparison_curve, crossover_overhead, expected_gate_count)
from .densmat import (DECODER_ONE_QUBIT_GATES, DECODER_TWO_QUBIT_GATES,
                      STABILIZERS, GateOp, NoiseParams, RoundOutcome,
                      apply_gate, controlled_pauli, decoder_circuit,
                      decoder_unitary, depolarize1, depolarize2,
                      distill_round, encoder_circuit, expand_operator,
                      is_density_matrix, magic_basis_coefficients,
                      one_qubit_gate, project_stabilizers, purity,
                      stabilizer_projector)
from .ideal_map import (ON_AXIS_THRESHOLD, AttractorClass, BasinPoint,
                        IterationTrace, basin_grid, distill_map,
                        distill_map_xyz, fidelity_difference,
                        iterate_and_classify, off_axis_threshold,
                        on_axis_gain, on_axis_threshold)
from .noisy_distill import (FidelityCurve, InvalidRegimeError, LAMBDA_PI12,
                            NoDistillationError, NoisyFixedPoint,
                            NoisyRoundCoeffs, AnalyticRound, SimulatedRound,
                            PiGateResult, analytic_round, apply_pi12_gate,
                            fidelity_curve, iterate_error, lambda_phase,
                            noisy_fixed_points, simulated_gate_fidelity,
                            simulated_round, universal_gate_fidelity)
from .refdata import reference_bloch_vectors
