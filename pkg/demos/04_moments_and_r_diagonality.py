# %% [markdown]
# Exact mixed moments, R-diagonality and support classification
#
# Traces of words alternating between the two free copies of M_2 are exact:
# the engine reduces every word by freeness and never samples anything.
# We use it three ways below.

# %%
import numpy as np

from freespec import (classify_support, is_r_diagonal_product, is_r_diagonal_sum,
                      moment_sequence, r_diagonal_defect)

A = np.array([[0, 1], [1, 0]])
B = np.array([[0, 1], [2, 0]])
C = np.array([[1, 1], [0, 1]])

# %% [markdown]
# Moments.  A product of traceless factors has vanishing moments tau((AB)^k).
# Once one factor has nonzero trace, the even moments survive.

# %%
print("tau((AB)^k):", np.round(moment_sequence("product", A, B, 4), 10))
print("tau((AC)^k):", np.round(moment_sequence("product", A, C, 4), 10))
print("tau((A+B)^k):", np.round(moment_sequence("sum", A, B, 4), 10))

# %% [markdown]
# R-diagonality.  The trace criterion is cheap; the defect compares the
# *-moments of X with those of uX for a free Haar unitary u, which is the
# definition itself.  The two agree on every case below.

# %%
cases = [("product", A, B), ("product", A, C), ("product", C, C),
         ("sum", A, B), ("sum", np.eye(2), -np.eye(2))]
print(f"{'kind':8s} {'criterion':>10s} {'defect':>12s}")
for kind, P, Q in cases:
    crit = is_r_diagonal_product(P, Q) if kind == "product" else is_r_diagonal_sum(P, Q)
    print(f"{kind:8s} {str(crit):>10s} {r_diagonal_defect(kind, P, Q):12.3e}")

# %% [markdown]
# Support classification decides whether the Brown measure is a single
# point, and returns a moment witness when it is not.

# %%
for kind, P, Q in [("product", A, C), ("product", C, C),
                   ("sum", [[0, 1], [0, 0]], [[0, 1], [0, 0]]),
                   ("sum", 2 * np.eye(2), [[1, 0], [0, 1]])]:
    out = classify_support(kind, P, Q)
    print(f"{kind:8s} -> {out['classification']}: {out['reason']}")
