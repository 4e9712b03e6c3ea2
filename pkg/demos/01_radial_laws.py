# %% [markdown]
# Radial laws of R-diagonal elements
#
# A Haagerup-Larsen element is determined by the law of |T|^2.  Here that law
# is the arcsine law on [0, 1], the corner spectrum of a free projection.
# We compute its S-transform, turn it into the radial CDF of the Brown
# measure and compare against the closed form F(s) = s^2 / (1 - s^2).

# %%
import numpy as np

from freespec import arcsine01, haagerup_larsen, s_transform, sup_distance

mu = arcsine01()
print("moments of |T|^2:", [round(mu.moment(k), 6) for k in range(1, 5)])

# S(w) = (w + 2) / (w + 1) for this law; compare on a few points
w = np.array([-0.9, -0.5, -0.1])
print("S(w)          :", np.round(s_transform(mu, w).real, 8))
print("(w + 2)/(w + 1):", np.round((w + 2) / (w + 1), 8))

# %%
nu = haagerup_larsen(mu)
print(f"support annulus: [{nu.r_inner:.6f}, {nu.r_outer:.6f}], atom at zero {nu.atom_at_zero}")

s = np.linspace(0, nu.r_outer, 2001)


def closed(x):
    x = np.minimum(x, np.sqrt(0.5))
    return x ** 2 / (1 - x ** 2)

print(f"sup |F - s^2/(1 - s^2)| = {sup_distance(nu, closed, s):.2e}")

# %% [markdown]
# The law touches zero with positive density, so the inner radius is zero
# and the outer radius is the L2 norm of |T|, that is 1/sqrt(2).

# %%
for r in (0.2, 0.4, 0.6, 0.7):
    print(f"F({r}) = {float(nu.cdf(r)):.6f}   closed form {r**2 / (1 - r**2):.6f}")
