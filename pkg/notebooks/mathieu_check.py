"""
Mathieu characteristic values from a Bessel-series recurrence
=============================================================

Run with ``python notebooks/mathieu_check.py``.  Compares with
scipy.special.mathieu_a.
"""

# %%
import numpy as np
from scipy.special import mathieu_a

from heunbessel.mathieu import MathieuProblem, characteristic_values, solution

# %%
for q in (0.5, 1.0, 2.0, 10.0):
    ours = characteristic_values(np.sqrt(q), 4).values
    ref = [mathieu_a(2 * r, q) for r in range(4)]
    print(f"q = {q:4.1f}  max |diff| = {np.max(np.abs(ours - ref)):.1e}")

# %% [markdown]
# In the modified equation both families are usable on u >= asinh(1).

# %%
p = MathieuProblem(1.0, "modified")
a = characteristic_values(1.0, 1).values[0]
u = np.linspace(1.0, 2.0, 5)
print("w1/w5 (J):", solution(p, a, "w1", "J", u) / solution(p, a, "w5", "J", u))
print("w1/w5 (Y):", (solution(p, a, "w1", "Y", u) / solution(p, a, "w5", "Y", u)).real)
