# %% [markdown]
# Writing the second copy of M_2 in the first copy's matrix units
#
# Inside the free product, a matrix B from the second copy can be written as
# a 2x2 matrix over the corner algebra of the first copy.  The entries are
# words in a positive contraction h, with the arcsine law of |cos|, and Haar
# unitaries u, v.  Traces of these entries are exact, so tau of any
# polynomial in B is computed symbolically; a random-matrix realization of
# the same entries gives an independent numerical check.

# %%
import numpy as np

from freespec import SymbolicMat2, decompose, evaluate_matrix_model, symbolic_trace

Bs = {
    "diag(2, 0)": [[2, 0], [0, 0]],
    "E12": [[0, 1], [0, 0]],
    "[[1, 2], [3, 4]]": [[1, 2], [3, 4]],
}
for name, B in Bs.items():
    print(f"--- {name}")
    print(decompose(B))

# %% [markdown]
# Check tau(B^k) against the ordinary normalized trace of B^k.  The symbolic
# side knows nothing about the matrix B itself once the entries are formed.

# %%
B = np.array([[1, 2], [3, 4]], dtype=complex)
M = decompose(B)
for k in (1, 2, 3):
    exact = np.trace(np.linalg.matrix_power(B, k)) / 2
    print(f"k={k}: symbolic {complex(symbolic_trace(M ** k)):.10f}   trace(B^k)/2 {exact:.10f}")

# %% [markdown]
# Anything built from B alone has an exact trace at every N.  A mixed
# element such as E11 B E11 B involves both copies, so its realization at
# size 2N only converges.  Its symbolic value is tau(b11^2) / 2 = 2 tau(h^4) = 3/4.

# %%
M = decompose([[2, 0], [0, 0]])
corner = SymbolicMat2.of(M[0][0], 0, 0, 0)
print(f"symbolic tau((E11 B)^2) = {complex(symbolic_trace(corner @ corner)).real:.10f}")
for N in (64, 256, 1024):
    X = evaluate_matrix_model(corner @ corner, N, seed=3)
    print(f"N={N:4d}: {np.trace(X).real / (2 * N):.4f}")
