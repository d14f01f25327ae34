"""Symbolic substitutions over a finite alphabet.

Letters are 1..m.  A substitution maps each letter to a nonempty word; its
matrix counts letter occurrences in the images.  This module provides the
primitivity / irreducibility / Pisot gates and the exact Perron data (the
expansion factor beta as an algebraic number and the exact left-eigenvector
interval lengths) that the tiling layer consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import Poly, Rational, Symbol, minimal_polynomial, real_roots

from .numberfield import AlgebraicReal, NumberField, is_pisot

_X = Symbol("x")


class SubstitutionError(ValueError):
    pass


class NotPisotError(SubstitutionError):
    """The Perron root of the substitution matrix is not a Pisot number."""


@dataclass(frozen=True)
class Substitution:
    """rules[i] is the image word of letter i+1, as a tuple of letters 1..m."""

    m: int
    rules: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rules) != self.m:
            raise SubstitutionError("need exactly one rule per letter")
        for i, word in enumerate(self.rules):
            if not word:
                raise SubstitutionError(f"empty rule for letter {i + 1}")
            for a in word:
                if not 1 <= a <= self.m:
                    raise SubstitutionError(f"letter {a} out of range in rule {i + 1}")

    def apply(self, word):
        out = []
        for a in word:
            out.extend(self.rules[a - 1])
        return tuple(out)

    def __str__(self):
        return ", ".join(
            f"{i + 1}->{''.join(map(str, w))}" for i, w in enumerate(self.rules)
        )


def matrix(s: Substitution) -> list[list[int]]:
    """M[i][j] = number of occurrences of letter i+1 in the image of j+1."""
    M = [[0] * s.m for _ in range(s.m)]
    for j, word in enumerate(s.rules):
        for a in word:
            M[a - 1][j] += 1
    return M


def _mat_mul(A, B):
    n = len(A)
    return [
        [sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def is_primitive(M: list[list[int]]) -> bool:
    """Some power up to the Wielandt bound (m-1)^2 + 1 is entrywise positive."""
    n = len(M)
    bound = (n - 1) ** 2 + 1
    P = [row[:] for row in M]
    for _ in range(bound):
        if all(all(e > 0 for e in row) for row in P):
            return True
        P = _mat_mul(P, M)
    return all(all(e > 0 for e in row) for row in P)


def char_poly(M: list[list[int]]) -> Poly:
    return sympy.Matrix(M).charpoly(_X)


def is_irreducible(s: Substitution) -> bool:
    return char_poly(matrix(s)).is_irreducible


def power(s: Substitution, n: int, word_cap: int = 10**6) -> Substitution:
    """The substitution sigma^n (rules composed n times)."""
    if n < 1:
        raise SubstitutionError("power requires n >= 1")
    rules = tuple((i + 1,) for i in range(s.m))
    for _ in range(n):
        rules = tuple(s.apply(w) for w in rules)
        if any(len(w) > word_cap for w in rules):
            raise SubstitutionError(f"rule words exceed cap {word_cap}")
    return Substitution(s.m, rules)


def _isolate_root(min_poly_coeffs, root) -> tuple[Fraction, Fraction]:
    """Rational interval around a sympy real root isolating it in its min poly."""
    p = Poly(list(reversed(min_poly_coeffs)), _X)
    if root.is_rational:
        r = Fraction(int(root.p), int(root.q))
        return r - Fraction(1, 4), r + Fraction(1, 4)
    tol = Rational(1, 2**24)
    while True:
        approx = root.eval_rational(tol)
        a = Fraction(int(approx.p), int(approx.q))
        lo, hi = a - Fraction(tol.p, tol.q), a + Fraction(tol.p, tol.q)
        if lo >= 1 and p.count_roots(lo, hi) == 1:
            return lo, hi
        tol /= 2**8


def perron_data(s: Substitution):
    """(NumberField, beta, lengths) for a primitive substitution.

    beta is the Perron-Frobenius root of the substitution matrix, expressed
    in the number field of its minimal polynomial; lengths is the exact left
    eigenvector (l M = beta l) normalized so the minimum entry is 1.

    Raises NotPisotError when beta is not a Pisot number.
    """
    M = matrix(s)
    if not is_primitive(M):
        raise SubstitutionError("substitution matrix is not primitive")
    chi = char_poly(M)
    roots = chi.real_roots(radicals=False)
    perron = roots[-1]
    mp = minimal_polynomial(perron, _X, polys=True)
    coeffs = [int(c) for c in reversed(mp.all_coeffs())]
    interval = _isolate_root(coeffs, perron)
    if not is_pisot(coeffs, interval):
        raise NotPisotError(
            f"Perron root of {s} (min poly {mp.as_expr()}) is not Pisot"
        )
    field = NumberField(coeffs, interval)
    beta = field.beta()
    lengths = _left_eigenvector(M, field, beta)
    return field, beta, lengths


def _left_eigenvector(M, field: NumberField, beta: AlgebraicReal):
    """Exact kernel vector of (M^T - beta I), normalized to min entry 1."""
    m = len(M)
    A = [
        [field.from_rational(M[j][i]) - (beta if i == j else 0) for j in range(m)]
        for i in range(m)
    ]
    vec = _kernel_vector(A, field)
    # Perron eigenvector: all entries share a sign; flip if negative.
    if any(v.sign() < 0 for v in vec):
        vec = [-v for v in vec]
    if any(v.sign() <= 0 for v in vec):
        raise SubstitutionError("left eigenvector is not strictly positive")
    smallest = vec[0]
    for v in vec[1:]:
        if v < smallest:
            smallest = v
    return [v / smallest for v in vec]


def _kernel_vector(A, field: NumberField):
    """A nonzero kernel vector of a square matrix over Q(beta), kernel dim 1."""
    n = len(A)
    rows = [row[:] for row in A]
    pivot_cols = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, n):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivot_cols]
    if not free:
        raise SubstitutionError("matrix has trivial kernel")
    fc = free[0]
    vec = [field.zero()] * n
    vec[fc] = field.one()
    for row, pc in zip(rows, pivot_cols):
        vec[pc] = -row[fc]
    return vec


def fixed_point_seed(s: Substitution) -> tuple[int, int, int]:
    """(k, left_letter, right_letter) seeding a two-sided fixed point of sigma^k.

    Picks the smallest k <= m*m such that some sigma^k(a) ends in a, some
    sigma^k(b) starts with b, and the two-letter word ab occurs in some
    sigma^j(c) with j <= m + k (so the seed pair is in the language).
    """
    M = matrix(s)
    if not is_primitive(M):
        raise SubstitutionError("fixed point seed requires primitivity")
    for k in range(1, s.m * s.m + 1):
        sk = power(s, k)
        enders = [a for a in range(1, s.m + 1) if sk.rules[a - 1][-1] == a]
        starters = [b for b in range(1, s.m + 1) if sk.rules[b - 1][0] == b]
        if not enders or not starters:
            continue
        legal = _legal_pairs(s, s.m + k)
        for a in enders:
            for b in starters:
                if (a, b) in legal:
                    return k, a, b
    raise SubstitutionError("no fixed point seed found (should not happen)")


def _legal_pairs(s: Substitution, jmax: int) -> set[tuple[int, int]]:
    pairs = set()
    for c in range(1, s.m + 1):
        word = (c,)
        for _ in range(jmax):
            word = s.apply(word)
        pairs.update(zip(word, word[1:]))
    return pairs


def dekking_column_check(s: Substitution) -> bool:
    """Classical coincidence test for constant-length substitutions.

    True iff some power of the column map collapses a position to a single
    letter.  Runs a BFS on letter sets: from S, position p leads to
    { sigma(a)[p] : a in S }; coincidence iff a singleton is reachable from
    the full alphabet.
    """
    q = len(s.rules[0])
    if any(len(w) != q for w in s.rules):
        raise SubstitutionError("dekking_column_check requires constant length")
    start = frozenset(range(1, s.m + 1))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for p in range(q):
                T = frozenset(s.rules[a - 1][p] for a in S)
                if len(T) == 1:
                    return True
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return False
