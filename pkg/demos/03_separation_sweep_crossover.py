"""How harvesting decays with separation, and where unequal gaps win.

Sweeping the separation at several gap ratios shows two things: the
harvested entanglement always decreases with distance, and close-in the
identical pair wins while beyond a crossover separation the unequal pair
extracts more.  The smaller the gap difference, the earlier the crossover.
"""

import numpy as np

from udwharvest import concurrence_values, find_crossover

OMEGA_A = 0.5
RATIOS = (0.2, 0.5, 1.0, 1.2)

ls = np.array([0.3, 0.5, 1.0, 1.5, 2.0, 2.5])
print("concurrence / coupling^2 at smaller gap", OMEGA_A)
header = "  l/sigma | identical " + " ".join(f"| ratio {r:3.1f}" for r in RATIOS)
print(header)
print("-" * len(header))
for l in ls:
    c0 = concurrence_values(OMEGA_A, 0.0, l, 1.0)
    row = [f"{c0:10.3e}"]
    for r in RATIOS:
        row.append(f"{concurrence_values(OMEGA_A, OMEGA_A * r, l, 1.0):10.3e}")
    print(f"  {l:7.2f} | " + " | ".join(row))

print("\ncrossover separations (unequal pair starts winning):")
for r in RATIOS:
    res = find_crossover(OMEGA_A, OMEGA_A * r)
    print(f"  gap ratio {r:3.1f}: l/sigma = {res.location:.4f}  {res.note}")

print("\nat a larger smaller-gap the crossovers move outward:")
for a in (0.5, 1.2):
    res = find_crossover(a, a * 0.5)
    print(f"  smaller gap {a}: crossover at l/sigma = {res.location:.4f}")
