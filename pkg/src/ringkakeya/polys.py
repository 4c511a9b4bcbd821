"""Multivariate polynomials over F_p: Hasse derivatives, vanishing
multiplicities, the multiplicity Schwartz-Zippel check, evaluation-map
matrices, and line decoding matrices.

Monomials are exponent tuples ordered by weight then lexicographically;
the same order is used for derivative indices, which fixes every matrix
layout in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .gfp import GFpMatrix, solve_row_factor
from .rings import Line, RingSpec, line_points, point_index


def dim_homog(n: int, d: int) -> int:
    """Dimension of the homogeneous degree-d polynomials in n variables."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return math.comb(n + d - 1, n - 1)


def dim_leq(n: int, d: int) -> int:
    """Dimension of the polynomials of degree at most d in n variables."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return math.comb(n + d, n)


def monomials_homog(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of weight exactly d, lexicographic order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), d, n)
    return out


def monomials_leq(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent tuples of weight <= d, ordered by weight then lex."""
    out = []
    for w in range(d + 1):
        out.extend(monomials_homog(n, w))
    return out


def deriv_indices(n: int, m: int) -> list[tuple[int, ...]]:
    """Derivative indices of weight < m, ordered by weight then lex."""
    return monomials_leq(n, m - 1)


def binom_mod(a: int, b: int, p: int) -> int:
    """Binomial coefficient mod p via Lucas' theorem."""
    if b < 0 or b > a:
        return 0
    r = 1
    while b:
        a, ad = divmod(a, p)
        b, bd = divmod(b, p)
        if bd > ad:
            return 0
        r = r * math.comb(ad, bd) % p
    return r


@dataclass
class GFpPoly:
    """Polynomial over F_p in n variables, stored as exponent -> coefficient."""

    p: int
    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for exp, c in self.coeffs.items():
            c %= self.p
            if c:
                clean[tuple(exp)] = c
        self.coeffs = clean

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, point) -> int:
        total = 0
        for exp, c in self.coeffs.items():
            term = c
            for x, e in zip(point, exp):
                term = term * pow(int(x), e, self.p) % self.p
            total = (total + term) % self.p
        return total

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GFpPoly)
            and (self.p, self.n) == (other.p, other.n)
            and self.coeffs == other.coeffs
        )


def hasse_derivative(f: GFpPoly, i) -> GFpPoly:
    """The i-th Hasse derivative: the z^i coefficient of f(x + z)."""
    i = tuple(i)
    out = {}
    for exp, c in f.coeffs.items():
        if any(e < d for e, d in zip(exp, i)):
            continue
        factor = 1
        for e, d in zip(exp, i):
            factor = factor * binom_mod(e, d, f.p) % f.p
        if factor:
            new_exp = tuple(e - d for e, d in zip(exp, i))
            out[new_exp] = (out.get(new_exp, 0) + c * factor) % f.p
    return GFpPoly(f.p, f.n, out)


def multiplicity(f: GFpPoly, a):
    """Largest m such that every Hasse derivative of weight < m vanishes at a.

    Returns math.inf for the zero polynomial.
    """
    if f.is_zero():
        return math.inf
    w = 0
    while True:
        for i in monomials_homog(f.n, w):
            if hasse_derivative(f, i).evaluate(a):
                return w
        w += 1


def sz_mult_check(f: GFpPoly, U) -> tuple[int, int, bool]:
    """Sum of multiplicities of f over U^n against the degree bound.

    Returns (sum, d * |U|^{n-1}, sum <= bound).  The zero polynomial is
    rejected.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has unbounded multiplicity")
    U = list(U)
    total = sum(multiplicity(f, a) for a in product(U, repeat=f.n))
    bound = f.degree * len(U) ** (f.n - 1)
    return total, bound, total <= bound


@dataclass(frozen=True)
class EvalMapSpec:
    """Parameters of a Hasse-derivative evaluation map as a matrix.

    The map sends a polynomial (in the monomial basis of the chosen space)
    to the evaluations of all its Hasse derivatives of weight < m at the
    points of A.  Row index: point_index * dim_leq(n, m-1) + derivative
    index; column index: monomial index in the space basis.
    """

    p: int
    n: int
    points: tuple
    m: int
    degree: int
    homogeneous: bool


def eval_matrix(es: EvalMapSpec) -> GFpMatrix:
    """Matrix of the evaluation map described by es."""
    if es.homogeneous:
        basis = monomials_homog(es.n, es.degree)
    else:
        basis = monomials_leq(es.n, es.degree)
    derivs = deriv_indices(es.n, es.m)
    rows = []
    for x in es.points:
        for j in derivs:
            row = []
            for a in basis:
                if any(e < d for e, d in zip(a, j)):
                    row.append(0)
                    continue
                val = 1
                for e, d in zip(a, j):
                    val = val * binom_mod(e, d, es.p) % es.p
                for xc, e, d in zip(x, a, j):
                    val = val * pow(int(xc), e - d, es.p) % es.p
                row.append(val)
            rows.append(row)
    return GFpMatrix(es.p, rows)


@dataclass(frozen=True)
class DecodingMatrix:
    """Decode evaluations of order < m along a line into evaluations of
    order < k at the line's direction point, for homogeneous degree kp-1.

    matrix has extents dim_leq(n, k-1) x p^n * dim_leq(n, m-1); its only
    non-zero columns sit at tuples (x, j) with x on the line.
    """

    line: Line
    k: int
    m: int
    p: int
    n: int
    matrix: GFpMatrix


def decoding_matrix(line: Line, spec: RingSpec, k: int, m: int | None = None) -> DecodingMatrix:
    """Construct the decoding matrix of a line in F_p^n.

    Requires p | k; m defaults to 2k - k/p, the smallest order for which the
    underlying kernel containment is guaranteed.  With a smaller caller-
    supplied m, failure of the containment surfaces as RowFactorError.
    """
    if not spec.is_prime:
        raise ValueError("decoding matrices are defined over prime fields")
    p, n = spec.N, spec.n
    if k % p:
        raise ValueError(f"k = {k} must be divisible by p = {p}")
    if m is None:
        m = 2 * k - k // p
    d = k * p - 1
    pts = line_points(line, spec)
    src = eval_matrix(
        EvalMapSpec(p=p, n=n, points=tuple(pts), m=m, degree=d, homogeneous=True)
    )
    b = line.direction.rep
    dst = eval_matrix(
        EvalMapSpec(p=p, n=n, points=(b,), m=k, degree=d, homogeneous=True)
    )
    try:
        C = solve_row_factor(src, dst)
    except Exception as exc:
        raise type(exc)(
            f"decoding matrix for line base={line.base} direction={b} "
            f"k={k} m={m}: {exc}"
        ) from exc
    width = dim_leq(n, m - 1)
    full = GFpMatrix.zeros(p, C.rows, p**n * width)
    for t, x in enumerate(pts):
        col = point_index(x, spec) * width
        full.a[:, col : col + width] = C.a[:, t * width : (t + 1) * width]
    return DecodingMatrix(line=line, k=k, m=m, p=p, n=n, matrix=full)
