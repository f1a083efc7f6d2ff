# The smoothing hierarchy P -> W -> H
# ===================================
# Coarser distributions arise from finer ones by convolution with a
# fixed positive kernel; applied twice it reproduces the squared
# coherent-state overlap.  Everything happens on one shared lattice, so
# the arrows can be checked to near machine precision.

import math

import numpy as np

from rotorphase import (
    RotorSpace,
    build_kernel_table,
    diagonal_density,
    full_period_grid,
    glauber_sudarshan,
    husimi,
    husimi_from_glauber,
    smooth,
    smoothing_kernel,
    wigner,
)

A = 1.0 / (2.0 * math.pi)
space = RotorSpace(12)
grid = full_period_grid(64)
table = build_kernel_table(A, 31, 64)

# a thermal-like diagonal state has distributions at every order
rho = diagonal_density(space, np.exp(-2.0 * space.labels**2))

p = glauber_sudarshan(rho, A, grid, table=table)
w = wigner(rho, A, grid, table=table)
h = husimi(rho, A, grid)

# %% One smoothing step takes P to W, another takes W to H
w_from_p = smooth(p, 1.0, table)
h_from_w = smooth(w, 1.0, table)
print("hierarchy arrows on a thermal-like state:")
print(f"  |smooth(P) - W| = {np.max(np.abs(w_from_p.values - w.values)):.3e}")
print(f"  |smooth(W) - H| = {np.max(np.abs(h_from_w.values - h.values)):.3e}")
print(f"  s tags: P {p.s.real:+.0f} -> {w_from_p.s.real:+.0f} -> "
      f"{smooth(w_from_p, 1.0, table).s.real:+.0f}")

# %% Skipping the middle step: convolution with the squared overlap
h_direct = husimi_from_glauber(p, A)
print(f"  |P * |K|^2 - H|  = {np.max(np.abs(h_direct.values - h.values)):.3e}")

# %% The carrier kernel itself: positive at the origin, unit mass
print("\nsmoothing kernel values z(1)(dm, 0):")
for dm in range(4):
    val = smoothing_kernel(A, 1.0, dm, 0.0, table)
    print(f"  dm = {dm}: {val.real:+.8f}")

# %% Peakedness ordering: smoothing can only flatten
for name, dist in (("P", p), ("W", w), ("H", h)):
    print(f"  max {name} = {np.max(dist.values.real):.6f}")
