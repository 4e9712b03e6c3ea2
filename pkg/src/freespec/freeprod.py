"""Elements of the second matrix copy written over the free generators ``h, u, v``.

Relative to the matrix units of the first copy, every ``B`` in the second
copy is a 2x2 matrix whose entries are noncommutative polynomials in

* ``h``, a positive contraction with ``h^2`` arcsine distributed on ``[0, 1]``,
* ``u`` and ``v``, Haar unitaries,

the three being *-free.  Entries are :class:`WordExpr` values: finite sums
of words whose letters are ``h^a (1 - h^2)^(b/2)`` with ``b`` in ``{0, 1}``
or integer powers of ``u`` and ``v``.  Products are reduced to a normal
form (adjacent ``h`` letters fused, ``(1 - h^2)^(1/2)`` squared back into
``1 - h^2``, unitary powers added and cancelled), so two expressions that
agree as operators for these relations compare equal term by term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import ResourceError
from .mat2 import Mat2
from .moments import LAURENT_OPS, AlgebraOps, FreeTraceEngine

SYMBOLIC_MAX_LENGTH = 16
EQ_TOL = 1e-12

# letters: ("h", a, b) means h^a (1-h^2)^(b/2); ("u", n) and ("v", n) are powers


def _h_moment(a: int, b: int) -> float:
    # tau(h^a (1-h^2)^(b/2)) with h = |cos(phi)|, phi uniform
    return (math.gamma((a + 1) / 2) * math.gamma((b + 1) / 2)
            / (math.pi * math.gamma((a + b) / 2 + 1)))


def _hpoly_mul(x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    for (a1, b1), c1 in x.items():
        for (a2, b2), c2 in y.items():
            a, b, c = a1 + a2, b1 + b2, c1 * c2
            if b == 2:
                out[(a, 0)] = out.get((a, 0), 0) + c
                out[(a + 2, 0)] = out.get((a + 2, 0), 0) - c
            else:
                out[(a, b)] = out.get((a, b), 0) + c
    return {k: c for k, c in out.items() if c != 0}


def _hpoly_tau(x: Mapping) -> complex:
    return complex(sum(c * _h_moment(a, b) for (a, b), c in x.items()))


def _hpoly_center(x: Mapping) -> dict:
    out = dict(x)
    out[(0, 0)] = out.get((0, 0), 0) - _hpoly_tau(x)
    return {k: c for k, c in out.items() if c != 0}


HPOLY_OPS = AlgebraOps(
    mul=_hpoly_mul,
    tau=_hpoly_tau,
    center=_hpoly_center,
    key=lambda x: tuple(sorted(x.items())),
)


def _fuse(word: tuple, letter: tuple) -> list[tuple[complex, tuple]]:
    """Append ``letter`` to a normal-form ``word``; may split into two words."""
    if not word or word[-1][0] != letter[0]:
        return [(1.0, word + (letter,))]
    last = word[-1]
    head = word[:-1]
    if letter[0] == "h":
        a, b = last[1] + letter[1], last[2] + letter[2]
        if b == 2:
            # sqrt(1-h^2)^2 = 1 - h^2
            keep = head + (("h", a, 0),) if a > 0 else head
            return [(1.0, keep), (-1.0, head + (("h", a + 2, 0),))]
        return [(1.0, head + (("h", a, b),))]
    n = last[1] + letter[1]
    if n == 0:
        return [(1.0, head)]
    return [(1.0, head + ((letter[0], n),))]


def _normal_form(letters: Iterable[tuple]) -> list[tuple[complex, tuple]]:
    branches: list[tuple[complex, tuple]] = [(1.0, ())]
    for letter in letters:
        if letter[0] == "h" and letter[1] == 0 and letter[2] == 0:
            continue
        if letter[0] in ("u", "v") and letter[1] == 0:
            continue
        nxt = []
        for c, w in branches:
            for c2, w2 in _fuse(w, letter):
                nxt.append((c * c2, w2))
        branches = nxt
    return branches


def _letter_str(letter: tuple) -> str:
    if letter[0] == "h":
        a, b = letter[1], letter[2]
        parts = []
        if a == 1:
            parts.append("h")
        elif a > 1:
            parts.append(f"h^{a}")
        if b:
            parts.append("sqrt(1-h^2)")
        return " ".join(parts)
    name, n = letter
    if n == 1:
        return name
    if n == -1:
        return f"{name}*"
    return f"{name}^{n}" if n > 0 else f"{name}*^{-n}"


def _coef_str(c: complex) -> str:
    c = complex(c)
    if abs(c.imag) <= EQ_TOL:
        return f"{c.real:.12g}"
    if abs(c.real) <= EQ_TOL:
        return f"{c.imag:.12g}i"
    return f"({c.real:.12g}{c.imag:+.12g}i)"


class WordExpr:
    """Finite linear combination of normal-form words in ``h, u, v``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, complex] | None = None):
        clean: dict = {}
        for w, c in (terms or {}).items():
            if c != 0:
                clean[w] = clean.get(w, 0) + complex(c)
        self.terms = {w: c for w, c in clean.items() if c != 0}

    # constructors ------------------------------------------------------
    @classmethod
    def scalar(cls, c: complex) -> "WordExpr":
        return cls({(): c})

    @classmethod
    def word(cls, *letters: tuple, coef: complex = 1.0) -> "WordExpr":
        out: dict = {}
        for c, w in _normal_form(letters):
            out[w] = out.get(w, 0) + coef * c
        return cls(out)

    # algebra -----------------------------------------------------------
    def __add__(self, other) -> "WordExpr":
        other = _as_expr(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return WordExpr(out)

    __radd__ = __add__

    def __neg__(self) -> "WordExpr":
        return WordExpr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "WordExpr":
        return self + (-_as_expr(other))

    def __rsub__(self, other) -> "WordExpr":
        return _as_expr(other) - self

    def __mul__(self, other) -> "WordExpr":
        if not isinstance(other, WordExpr):
            return WordExpr({w: c * complex(other) for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                for c, w in _normal_form(w1 + w2):
                    out[w] = out.get(w, 0) + c1 * c2 * c
        return WordExpr(out)

    def __rmul__(self, c) -> "WordExpr":
        return WordExpr({w: complex(c) * v for w, v in self.terms.items()})

    def adjoint(self) -> "WordExpr":
        """Reverse words, conjugate coefficients, invert unitary powers."""
        out: dict = {}
        for w, c in self.terms.items():
            star = tuple(l if l[0] == "h" else (l[0], -l[1]) for l in reversed(w))
            for c2, w2 in _normal_form(star):
                out[w2] = out.get(w2, 0) + c.conjugate() * c2
        return WordExpr(out)

    # inspection --------------------------------------------------------
    def equals(self, other, tol: float = EQ_TOL) -> bool:
        diff = self - _as_expr(other)
        return all(abs(c) <= tol for c in diff.terms.values())

    def __eq__(self, other):
        if not isinstance(other, (WordExpr, int, float, complex)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __repr__(self):
        return f"WordExpr({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), str(w))):
            body = " ".join(_letter_str(l) for l in w)
            coef = _coef_str(self.terms[w])
            if body and coef in ("1", "-1"):
                coef = coef[:-1]
            parts.append(coef if not body else f"{coef} {body}".strip())
        return " + ".join(parts).replace(" + -", " - ")


def _as_expr(x) -> WordExpr:
    return x if isinstance(x, WordExpr) else WordExpr.scalar(complex(x))


# generator shorthands
ONE = WordExpr.scalar(1.0)
h = WordExpr.word(("h", 1, 0))
s = WordExpr.word(("h", 0, 1))  # sqrt(1 - h^2)
u = WordExpr.word(("u", 1))
us = WordExpr.word(("u", -1))
v = WordExpr.word(("v", 1))
vs = WordExpr.word(("v", -1))


@dataclass(frozen=True)
class SymbolicMat2:
    """2x2 matrix with :class:`WordExpr` entries, indexed ``m[i][j]``."""

    rows: tuple

    @classmethod
    def of(cls, m11, m12, m21, m22) -> "SymbolicMat2":
        return cls(((_as_expr(m11), _as_expr(m12)), (_as_expr(m21), _as_expr(m22))))

    @classmethod
    def identity(cls) -> "SymbolicMat2":
        return cls.of(1, 0, 0, 1)

    def __getitem__(self, i):
        return self.rows[i]

    def __matmul__(self, other: "SymbolicMat2") -> "SymbolicMat2":
        r = [[self[i][0] * other[0][j] + self[i][1] * other[1][j] for j in range(2)]
             for i in range(2)]
        return SymbolicMat2.of(r[0][0], r[0][1], r[1][0], r[1][1])

    def __add__(self, other: "SymbolicMat2") -> "SymbolicMat2":
        return SymbolicMat2(tuple(tuple(a + b for a, b in zip(r1, r2))
                                  for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other: "SymbolicMat2") -> "SymbolicMat2":
        return self + other * -1

    def __mul__(self, c) -> "SymbolicMat2":
        return SymbolicMat2(tuple(tuple(e * c for e in r) for r in self.rows))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymbolicMat2":
        out = SymbolicMat2.identity()
        for _ in range(k):
            out = out @ self
        return out

    def adjoint(self) -> "SymbolicMat2":
        r = self.rows
        return SymbolicMat2.of(r[0][0].adjoint(), r[1][0].adjoint(),
                               r[0][1].adjoint(), r[1][1].adjoint())

    def equals(self, other: "SymbolicMat2", tol: float = EQ_TOL) -> bool:
        return all(a.equals(b, tol) for r1, r2 in zip(self.rows, other.rows)
                   for a, b in zip(r1, r2))

    def __str__(self):
        names = ("b11", "b12", "b21", "b22")
        flat = [e for r in self.rows for e in r]
        return "\n".join(f"{n} = {e}" for n, e in zip(names, flat))


def decompose(B) -> SymbolicMat2:
    """Entries of the second-copy matrix ``B`` relative to the first copy.

    Parameters
    ----------
    B : array_like or Mat2
        ``[[alpha, beta], [gamma, sigma]]`` in the second copy's matrix units.

    Returns
    -------
    SymbolicMat2
        ``b11 = sigma + (alpha - sigma) h^2 + gamma s v h + beta h v* s`` and
        the three companion entries, where ``s = sqrt(1 - h^2)``.
    """
    a, be, ga, si = (complex(x) for x in np.asarray(Mat2.coerce(B)).ravel())
    h2 = h * h
    b11 = si * ONE + (a - si) * h2 + ga * (s * v * h) + be * (h * vs * s)
    b12 = (a - si) * (h * s * u) + ga * (s * v * s * u) - be * (h * vs * h * u)
    b21 = (a - si) * (us * h * s) - ga * (us * h * v * h) + be * (us * s * vs * s)
    b22 = (a * ONE + (si - a) * (us * h2 * u) - ga * (us * h * v * s * u)
           - be * (us * s * vs * h * u))
    return SymbolicMat2.of(b11, b12, b21, b22)


def v1_conjugations() -> tuple[SymbolicMat2, SymbolicMat2]:
    """The conjugates of ``E11`` and ``E12`` by the second-copy symmetry ``V1``.

    Written directly from their entry formulas, not via :func:`decompose`,
    so the two can be compared.
    """
    e11 = SymbolicMat2.of(h * h, s * h * u, us * h * s, us * (ONE - h * h) * u)
    e12 = SymbolicMat2.of(h * vs * s, -(h * vs * h * u),
                          us * s * vs * s, -(us * s * vs * h * u))
    return e11, e12


def _engine_letters(word: tuple):
    for l in word:
        if l[0] == "h":
            yield "h", {(l[1], l[2]): 1.0}
        else:
            yield l[0], {l[1]: 1.0}


def _new_engine(max_length: int) -> FreeTraceEngine:
    return FreeTraceEngine({"h": HPOLY_OPS, "u": LAURENT_OPS, "v": LAURENT_OPS},
                           max_length=max_length)


def trace_expr(x: WordExpr, engine: FreeTraceEngine | None = None,
               max_length: int = SYMBOLIC_MAX_LENGTH) -> complex:
    """Trace of a :class:`WordExpr` in the compressed algebra generated by h, u, v."""
    engine = engine or _new_engine(max_length)
    total = 0j
    for w, c in x.terms.items():
        if len(w) > max_length:
            raise ResourceError(f"word of length {len(w)} exceeds {max_length}")
        total += c * engine.trace(_engine_letters(w))
    return total


def symbolic_trace(M: SymbolicMat2, max_length: int = SYMBOLIC_MAX_LENGTH) -> complex:
    """``tau(M) = (tau(m11) + tau(m22)) / 2``, evaluated exactly by freeness."""
    engine = _new_engine(max_length)
    return (trace_expr(M[0][0], engine, max_length)
            + trace_expr(M[1][1], engine, max_length)) / 2


def evaluate_matrix_model(M: SymbolicMat2, N: int, seed=None) -> np.ndarray:
    """Realize ``M`` as a ``2N x 2N`` matrix.

    ``h`` becomes ``|H|`` for an i.i.d. diagonal ``H`` with the arcsine law on
    ``[-1, 1]``, and ``u``, ``v`` become independent Haar unitaries of size
    ``N``.  Asymptotic freeness makes normalized traces converge to
    :func:`symbolic_trace`.
    """
    from .matrixmodel import haar_unitary

    if N < 2:
        raise ValueError("N must be at least 2")
    rng = np.random.default_rng(seed)
    hd = np.abs(np.cos(2 * np.pi * rng.random(N)))
    sd = np.sqrt(np.clip(1 - hd * hd, 0.0, None))
    gens = {"u": haar_unitary(N, rng), "v": haar_unitary(N, rng)}
    cache: dict = {}

    def letter(l):
        if l not in cache:
            if l[0] == "h":
                cache[l] = np.diag(hd ** l[1] * sd ** l[2]).astype(complex)
            else:
                g = gens[l[0]]
                cache[l] = np.linalg.matrix_power(g if l[1] > 0 else g.conj().T, abs(l[1]))
        return cache[l]

    def entry(x: WordExpr) -> np.ndarray:
        out = np.zeros((N, N), dtype=complex)
        for w, c in x.terms.items():
            prod = np.eye(N, dtype=complex)
            for l in w:
                prod = prod @ letter(l)
            out += c * prod
        return out

    return np.block([[entry(M[0][0]), entry(M[0][1])],
                     [entry(M[1][0]), entry(M[1][1])]])
