"""Applying the pi/12 phase gate with distilled magic states.

Two copies of the (possibly imperfect) magic state drive a three-qubit
measurement circuit that applies a +-pi/12 rotation to an arbitrary input
qubit.  With noisy resources the gate fidelity stays above 1 - eps', and
the exact simulation pins down the correct closed form.
"""
import math

import numpy as np

from magicforge import (MAGIC_BASIS, apply_pi12_gate, lambda_phase,
                        simulated_gate_fidelity, universal_gate_fidelity)

psi = np.array([0.6, 0.8])
res = apply_pi12_gate(psi, MAGIC_BASIS.t0)
target = lambda_phase(math.pi / 12) @ psi
fid = float((target.conj() @ res.out_state @ target).real)
print("With perfect resources the realized gate is exact:")
print(f"  fidelity to the ideal pi/12 output: {fid:.15f}")
print(f"  resource measurement accepts with p = {res.p_accept:.4f}; "
      f"each rotation sign occurs with p = "
      f"{res.branches[0].probability:.3f}")

print("\nWith noisy resources (error eps'), fidelity vs input amplitude |a|:")
print("  |a|     simulated   corrected form  default form")
ep = 0.05
for a in (0.0, 0.25, 0.5, 1 / math.sqrt(2), 0.9, 1.0):
    sim = simulated_gate_fidelity(a, ep)
    corr = universal_gate_fidelity(a, ep, corrected=True)
    printed = universal_gate_fidelity(a, ep)
    print(f"  {a:.3f}   {sim:.6f}    {corr:.6f}      {printed:.6f}")
print("\nThe simulation matches |a|^2 (1 - |a|^2) exactly; the commonly")
print("quoted placement |a|^2 (1 - |a|)^2 is a typo.  Both forms respect")
print(f"the 1 - eps' floor: worst simulated fidelity here is "
      f"{simulated_gate_fidelity(1 / math.sqrt(2), ep):.6f} >= {1 - ep:.6f}")
