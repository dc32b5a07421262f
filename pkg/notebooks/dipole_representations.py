"""
Point dipole: three writings of one angular function
====================================================

Run with ``python notebooks/dipole_representations.py``.
"""

# %%
import numpy as np

from heunbessel.dipole import DipoleProblem, angular_eigenvalues, theta_bessel, theta_jacobi

# %% [markdown]
# Separation constants drift away from l(l+1) as beta grows.

# %%
for beta in (0.0, 0.5, 1.0, 2.0, 5.0):
    vals = angular_eigenvalues(DipoleProblem(m=1, beta=beta), 3).values
    print(f"beta = {beta:3.1f}  C = {np.array2string(np.asarray(vals, dtype=float), precision=8)}")

# %% [markdown]
# The real-argument Bessel series, the imaginary-argument one and the
# Jacobi series agree up to a constant.

# %%
prob = DipoleProblem(m=1, beta=2.0)
t = np.linspace(0.1, np.pi - 0.1, 7)
C = angular_eigenvalues(prob, 1).values[0]
t2 = theta_bessel(prob, C, t, "theta2")
t1 = theta_bessel(prob, C, t, "theta1")
tj = theta_jacobi(prob, C, t)
print("theta1/theta2:", t1 / t2)
print("jacobi/theta2:", tj / t2)
