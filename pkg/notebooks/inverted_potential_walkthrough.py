"""
Inverted potential: algebraic and continued-fraction levels
===========================================================

Run with ``python notebooks/inverted_potential_walkthrough.py``.
"""

# %%
import numpy as np

from heunbessel.inverted import (
    InvPotProblem,
    finite_eigenfunction,
    infinite_eigenfunction,
    infinite_spectrum,
    potential_term,
    qes_spectrum,
)
from heunbessel.residual import schrodinger_residual

# %% [markdown]
# The even and odd finite series give the same l levels.

# %%
prob = InvPotProblem(b=2.0, l=3)
res = qes_spectrum(prob)
for E, Eo in zip(res.energies, res.odd_spectrum.values):
    print(f"E = {E: .12f}   from the odd problem: {prob.energy(Eo): .12f}")
print("det A, det B:", res.degeneracy_report["detA"], res.degeneracy_report["detB"])

# %%
u = np.linspace(-6, 6, 400)
for E in res.energies:
    r = schrodinger_residual(lambda x: finite_eigenfunction(prob, E, "even", x), potential_term(prob, E), u)
    print(f"E = {E: .6f}  residual {r:.1e}")

# %% [markdown]
# Levels outside the algebraic part come from the continued fraction.
# psi_2 and psi_3 at the same root differ by a constant; the ratio is
# printed on u in [1, 3] to show how constant it is.

# %%
prob = InvPotProblem(b=2.0, l=2)
u = np.linspace(1.0, 3.0, 21)
for E, parity, resid, N in infinite_spectrum(prob, window=(-20.0, 0.0)):
    ratio = infinite_eigenfunction(prob, E, "psi3", parity, u) / infinite_eigenfunction(prob, E, "psi2", parity, u)
    spread = np.ptp(ratio) / abs(np.median(ratio))
    print(f"{parity:4s} E = {E: .10f}  cf residual {resid:.1e}  depth {N}  psi3/psi2 = {np.median(ratio):.8f} (spread {spread:.1e})")
