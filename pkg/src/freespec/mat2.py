"""2x2 complex matrices with the trace functionals and norms used throughout.

The normalized trace is ``tau = Tr / 2``.  ``l2norm`` is the trace norm
``sqrt(tau(A* A))``; the operator norm is the largest singular value.  A
singular matrix has ``inv_opnorm == inv_l2norm == inf`` so that every radius
formula can use the convention ``1 / inf = 0``.
"""

from __future__ import annotations

import numpy as np

SINGULAR_TOL = 1e-14
ZERO_TOL = 1e-12


class Mat2:
    """Immutable 2x2 complex matrix.

    Parameters
    ----------
    entries : array_like
        Anything ``numpy.asarray`` turns into shape ``(2, 2)``.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        if isinstance(entries, Mat2):
            a = entries._a
        else:
            a = np.array(entries, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
        a = a.copy()
        a.flags.writeable = False
        self._a = a

    @classmethod
    def coerce(cls, x) -> "Mat2":
        return x if isinstance(x, Mat2) else cls(x)

    @classmethod
    def identity(cls, scale: complex = 1.0) -> "Mat2":
        return cls(np.eye(2) * scale)

    @property
    def a(self) -> np.ndarray:
        return self._a

    def __array__(self, dtype=None, copy=None):
        return self._a.astype(dtype) if dtype is not None else self._a.copy()

    def __repr__(self):
        return f"Mat2({self._a.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash(self._a.tobytes())

    def __matmul__(self, other):
        return Mat2(self._a @ Mat2.coerce(other)._a)

    def __add__(self, other):
        return Mat2(self._a + Mat2.coerce(other)._a)

    def __sub__(self, other):
        return Mat2(self._a - Mat2.coerce(other)._a)

    def __neg__(self):
        return Mat2(-self._a)

    def __mul__(self, c):
        return Mat2(self._a * complex(c))

    __rmul__ = __mul__

    # ------------------------------------------------------------------
    @property
    def H(self) -> "Mat2":
        return Mat2(self._a.conj().T)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self._a))

    @property
    def tau(self) -> complex:
        return self.trace / 2

    @property
    def det(self) -> complex:
        a = self._a
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])

    @property
    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self._a, compute_uv=False)

    @property
    def opnorm(self) -> float:
        return float(self.singular_values[0])

    @property
    def l2norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self._a) ** 2) / 2))

    @property
    def is_singular(self) -> bool:
        s = self.singular_values
        return bool(s[1] <= SINGULAR_TOL * max(1.0, s[0]))

    @property
    def inv_opnorm(self) -> float:
        """``||A^{-1}||``, or ``inf`` for a singular matrix."""
        if self.is_singular:
            return float("inf")
        return float(1.0 / self.singular_values[1])

    @property
    def inv_l2norm(self) -> float:
        """``||A^{-1}||_2``, or ``inf`` for a singular matrix."""
        if self.is_singular:
            return float("inf")
        s = self.singular_values
        return float(np.sqrt((s[0] ** -2 + s[1] ** -2) / 2))

    def tau_power(self, k: int) -> complex:
        return complex(np.trace(np.linalg.matrix_power(self._a, k)) / 2)

    @property
    def is_normal(self) -> bool:
        a = self._a
        return bool(np.allclose(a @ a.conj().T, a.conj().T @ a, atol=ZERO_TOL))

    @property
    def is_scalar(self) -> bool:
        a = self._a
        return bool(abs(a[0, 1]) <= ZERO_TOL and abs(a[1, 0]) <= ZERO_TOL
                    and abs(a[0, 0] - a[1, 1]) <= ZERO_TOL)

    @property
    def is_zero(self) -> bool:
        return bool(np.max(np.abs(self._a)) <= ZERO_TOL)

    def is_traceless(self, tol: float = ZERO_TOL) -> bool:
        return abs(self.tau) <= tol

    def centered(self) -> "Mat2":
        """``A - tau(A) 1``."""
        return Mat2(self._a - self.tau * np.eye(2))

    def gram_law(self) -> list[tuple[float, float]]:
        """Spectral law of ``A* A`` under ``tau``: atoms ``(eigenvalue, mass)``."""
        ev = np.clip(self.singular_values ** 2, 0.0, None)
        ev[np.abs(ev) <= SINGULAR_TOL * max(1.0, ev[0])] = 0.0
        if np.isclose(ev[0], ev[1], rtol=1e-13, atol=SINGULAR_TOL):
            return [(float(ev[0]), 1.0)]
        return sorted([(float(ev[0]), 0.5), (float(ev[1]), 0.5)])


E11 = Mat2([[1, 0], [0, 0]])
E12 = Mat2([[0, 1], [0, 0]])
E21 = Mat2([[0, 0], [1, 0]])
E22 = Mat2([[0, 0], [0, 1]])

# symmetries W_i of the first copy; the second copy's V_i have the same entries
W0 = Mat2([[1, 0], [0, 1]])
W1 = Mat2([[1, 0], [0, -1]])
W2 = Mat2([[0, -1], [1, 0]])
W3 = Mat2([[0, 1], [1, 0]])
