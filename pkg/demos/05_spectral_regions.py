# %% [markdown]
# Spectral regions of products
#
# The spectrum of a product AB in the free product is the union of the
# spectra of pi(A) pi(B) over representations.  For 2x2 representations
# this union can be swept directly.  We compare the sweep with closed-form
# regions and then with a random-matrix cloud.

# %%
import numpy as np

from freespec import (ModelConfig, ellipse_families_equal, empirical_brown,
                      representation_spectrum_sampler, spectrum_example_66,
                      spectrum_product_traceless)

A = [[0, 1], [1, 0]]
B = [[0, 1], [2, 0]]
region = spectrum_product_traceless(A, B)
sweep = representation_spectrum_sampler(A, B, grid=360)
r = np.abs(sweep.points)
print(f"closed form: {region.kind} {region.params}")
print(f"sweep moduli: [{r.min():.6f}, {r.max():.6f}]")

# %% [markdown]
# The spectrum uses operator norms, so it is the annulus [1, 2].  The Brown
# measure of the same product (see 02_product_annulus.py) uses
# Hilbert-Schmidt norms and sits strictly inside, on [1.265, 1.581].

# %% [markdown]
# For invertible traceless factors the region is traced out by a family of
# centered ellipses.  Two different parametrizations of that family appear
# naturally; their unions are compared on a raster.

# %%
for b1, b2 in [(2.0, 3.0), (1.5, 1.5)]:
    cmp = ellipse_families_equal(b1, b2)
    print(f"beta = ({b1}, {b2}): equal={cmp.equal}, Hausdorff {cmp.hausdorff:.2e}"
          f" at pixel {cmp.pixel:.2e}")

# %% [markdown]
# Unipotent factors.  (1 + E12)(1 + F12) has spectrum
# |l - 1|^2 <= |l| / 2, a cardioid-like region through 1.  The eigenvalues
# of the random-matrix model should sit inside it up to finite-N spill.

# %%
R = spectrum_example_66(1, 1)
cloud = empirical_brown([[1, 1], [0, 1]], [[1, 1], [0, 1]], "product",
                        ModelConfig(N=256, trials=1, seed=4))
for margin in (0.0, 0.02, 0.05):
    frac = np.mean(R.contains(cloud.samples, margin=margin))
    print(f"fraction inside region + {margin:.2f}: {frac:.4f}")
