"""Is it worth encoding the Clifford gates fault-tolerantly?

Compares the expected number of two-qubit gates needed to distill to
F = 0.99 with faulty gates against the zero-noise count (a lower bound on
the logical gates any fault-tolerant encoding would need).  Since encoded
logical gates cost 100-1000 physical gates each, the faulty route wins.
"""
import numpy as np

from magicforge import (CostModel, NoiseParams, comparison_curve,
                        crossover_overhead, DECODER_TWO_QUBIT_GATES)

model = CostModel(target_f=0.99,
                  noise=NoiseParams.from_gate_errors(1e-3, 1e-3))
print(f"Decoder decomposition uses B2 = {DECODER_TWO_QUBIT_GATES} two-qubit "
      f"gates per round; gate errors E1 = E2 = 1e-3; target F = 0.99.\n")

grid = np.linspace(0.85, 0.9895, 12)
pts = comparison_curve(model, grid)
print("  F_in     faulty gates  rounds   ideal-logical  rounds   ratio")
for p in pts:
    ratio = p.expected_gates_faulty / p.expected_gates_ideal_logical
    print(f"  {p.f_in:.4f}   {p.expected_gates_faulty:12.1f}  {p.rounds_faulty:5d}"
          f"   {p.expected_gates_ideal_logical:13.1f}  {p.rounds_ideal:5d}"
          f"   {ratio:5.2f}")

worst = max(crossover_overhead(float(f), model) for f in grid)
print(f"\nBreak-even physical-per-logical overhead never exceeds "
      f"{worst:.1f} on this grid.")
print("A fault-tolerant encoding pays 100-1000 physical gates per logical")
print("gate, so faulty distillation is the cheaper route by a wide margin;")
print("encoding is only worth it for the final rounds, once the noisy")
print("ceiling blocks further improvement.")
