# Husimi, Wigner and Glauber-Sudarshan functions
# ==============================================
# One mapping-kernel family T(s) generates every distribution: s = -1
# projects onto coherent states (Husimi), s = 0 is the symmetric Wigner
# choice, s = +1 the diagonal-weight (Glauber-Sudarshan) function.

import math

import numpy as np

from rotorphase import (
    CoherentLabel,
    RotorSpace,
    basis_state,
    build_kernel_table,
    coherent_state,
    distribution_summary,
    full_period_grid,
    glauber_sudarshan,
    husimi,
    pure_density,
    normalized_state,
    wigner,
)

A = 1.0 / (2.0 * math.pi)
space = RotorSpace(12)
grid = full_period_grid(64)
table = build_kernel_table(A, min(2 * space.M, 31), 64)


def show(dist, name):
    summary = distribution_summary(dist)
    print(
        f"{name:28s} norm = {summary['normalization']:+.9f}  "
        f"range [{summary['min']:+.4f}, {summary['max']:+.4f}]  "
        f"negativity = {summary['negativity_volume']:.3e}"
    )


# %% An angular-momentum eigenstate: Wigner is a Kronecker ridge
rho_eig = pure_density(basis_state(space, 2))
w = wigner(rho_eig, A, grid, table=table)
show(w, "Wigner |m=2>")
ridge = w.values[np.nonzero(grid.m_values == 2)[0][0]]
print(f"   ridge row: min {ridge.real.min():.12f}, max {ridge.real.max():.12f}")

# %% Its Husimi function spreads the ridge over neighboring labels
h = husimi(rho_eig, A, grid)
show(h, "Husimi |m=2>")
for k in range(4):
    idx = np.nonzero(grid.m_values == 2 + k)[0][0]
    print(f"   H at offset {k}: {h.values[idx, 0].real:.10f}")

# %% A coherent state has a well-defined (mollified) diagonal weight
rho_coh = pure_density(coherent_state(space, CoherentLabel(1, 0.7, A)))
p = glauber_sudarshan(rho_coh, A, grid, table=table)
show(p, "Glauber-Sudarshan coherent")
peak = np.unravel_index(np.argmax(p.values.real), p.values.shape)
print(
    f"   weight concentrates at m = {grid.m_values[peak[0]]}, "
    f"theta = {grid.theta[peak[1]]:.3f}"
)

# %% Interference makes the Wigner function negative
cat = np.zeros(space.dim, dtype=complex)
cat[space.index_of(0)] = 1.0
cat[space.index_of(2)] = 1.0
w_cat = wigner(pure_density(normalized_state(space, cat)), A, grid, table=table)
show(w_cat, "Wigner (|0>+|2>)/sqrt(2)")
m1 = np.nonzero(grid.m_values == 1)[0][0]
print(
    "   the m = 1 row oscillates as cos(2 theta): "
    f"W(1, 0) = {w_cat.values[m1, 32].real:+.6f}, "
    f"W(1, pi/2) = {w_cat.values[m1, 48].real:+.6f}"
)
