# How close to minimum uncertainty are the coherent states?
# ==========================================================
# The periodic pair (J, sin Theta, cos Theta) obeys a product inequality
# whose relative slack delta_U lies in [0, 1] and vanishes exactly for
# minimum-uncertainty states.  The slack depends only on the angle label
# and on the family width.

import math

import numpy as np

from rotorphase import CoherentLabel, delta_U, moments, scan_delta_U
from rotorphase import RotorSpace, coherent_state, default_truncation

A = 1.0 / (2.0 * math.pi)

# %% Moments entering the product at the working width
space = RotorSpace(default_truncation(A) + 4)
state = coherent_state(space, CoherentLabel(0, 0.0, A))
mom = moments(state)
print("vacuum moments at the working width:")
print(f"  <J> = {mom.mean_J:+.6f}   <J^2> = {mom.mean_J2:.6f}")
print(f"  <sin> = {mom.mean_sin:+.6f}  <sin^2> = {mom.mean_sin2:.6f}  "
      f"<cos> = {mom.mean_cos:+.6f}")

# %% The slack at the distinguished angles
for theta in (0.0, math.pi / 4.0, math.pi / 2.0, math.pi - 1e-9):
    print(f"  delta_U({theta:5.3f}) = {delta_U(A, theta):.6f}")
print("the slack peaks at exactly 1 where <cos> vanishes (theta = pi/2)")

# %% Scans over the three published widths
print("\nwidth scans (256 points each):")
for a, tag in (
    (1.0 / (20.0 * math.pi), "1/(20 pi)  angle-peaked"),
    (A, "1/(2 pi)   working width"),
    (10.0 / (2.0 * math.pi), "10/(2 pi)  momentum-peaked"),
):
    rows = scan_delta_U(a, 256)
    thetas, values = rows[:, 0], rows[:, 1]
    at_zero = values[int(np.argmin(np.abs(thetas)))]
    print(
        f"  a = {tag:24s} delta_U(0) = {at_zero:.6f}   "
        f"mean = {values.mean():.4f}   max at theta = "
        f"{thetas[int(np.argmax(values))]:+.4f}"
    )
print("\nat the working width the minima sit near 3.9%: the family is")
print("close to, but not exactly, minimum uncertainty at theta = 0, +-pi")
