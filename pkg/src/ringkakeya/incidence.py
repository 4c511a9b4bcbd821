"""Point-hyperplane incidence matrices over Z/p^kZ, the line-action
identity, the rank formula for the prime case, and matching-vector
families as rank lower bounds.

The incidence matrix keeps its repeated rows and columns (one per ring
element, not per projective class), so row-set comparisons against
Fourier-derived matrices are literal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import GuardExceeded
from .gfp import GFpMatrix, rank
from .rings import Line, RingSpec, enumerate_points, line_points

DEFAULT_CELL_GUARD = 16_000_000


def _check_guard(rows: int, cols: int, guard: int):
    if rows * cols > guard:
        raise GuardExceeded(
            f"matrix of {rows} x {cols} = {rows * cols} cells exceeds the "
            f"guard of {guard}"
        )


def incidence_matrix(p: int, n: int, guard: int = DEFAULT_CELL_GUARD) -> GFpMatrix:
    """The p^n x p^n matrix with entry (x, b) = 1 iff <x, b> = 0 mod p.

    Rows are points, columns are hyperplane indicators, both in natural
    mixed-radix order.  The matrix is symmetric.
    """
    return incidence_matrix_pk(p, 1, n, guard=guard)


def incidence_matrix_pk(
    p: int, k: int, n: int, guard: int = DEFAULT_CELL_GUARD
) -> GFpMatrix:
    """0/1 matrix over F_p with entry (x, y) = 1 iff <x, y> = 0 mod p^k."""
    q = p**k
    size = q**n
    _check_guard(size, size, guard)
    pts = np.array(list(product(range(q), repeat=n)), dtype=np.int64)
    gram = pts @ pts.T % q
    return GFpMatrix(p, (gram == 0).astype(np.int64))


def hyperplane_indicator(b, spec: RingSpec) -> np.ndarray:
    """0/1 row of [<x, b> = 0 mod N] over points in natural order."""
    pts = np.array(enumerate_points(spec), dtype=np.int64)
    bv = np.array([c % spec.N for c in b], dtype=np.int64)
    return (pts @ bv % spec.N == 0).astype(np.int64)


def complement_indicator(b, spec: RingSpec) -> np.ndarray:
    """0/1 row of [<x, b> != 0 mod N] over points in natural order."""
    return 1 - hyperplane_indicator(b, spec)


def line_action_check(line: Line, spec: RingSpec) -> bool:
    """Check that the line indicator times the incidence matrix equals the
    complement-hyperplane indicator of the line's direction, over F_p."""
    if not spec.is_prime:
        raise ValueError("the line-action identity is over a prime field")
    p, n = spec.N, spec.n
    W = incidence_matrix(p, n)
    ind = np.zeros(p**n, dtype=np.int64)
    from .rings import point_index

    for pt in line_points(line, spec):
        ind[point_index(pt, spec)] = 1
    got = ind @ W.a % p
    want = complement_indicator(line.direction.rep, spec)
    return bool(np.array_equal(got, want))


def rank_formula(p: int, n: int) -> int:
    """Closed-form F_p-rank of the prime incidence matrix."""
    return math.comb(p + n - 2, n - 1) + 1


def rank_formula_check(
    p: int, n: int, guard: int = DEFAULT_CELL_GUARD
) -> tuple[int, int, bool]:
    """Computed rank of the prime incidence matrix against the closed form."""
    computed = rank(incidence_matrix(p, n, guard=guard))
    formula = rank_formula(p, n)
    return computed, formula, computed == formula


@dataclass(frozen=True)
class MVFamily:
    """A matching-vector family over (Z/qZ)^n, q = p^k.

    U and V have equal length and <u_i, v_j> = 0 mod q exactly when i = j.
    """

    p: int
    k: int
    n: int
    U: tuple
    V: tuple

    @property
    def modulus(self) -> int:
        return self.p**self.k

    @property
    def size(self) -> int:
        return len(self.U)


def mv_violations(fam: MVFamily) -> list[tuple[int, int, int]]:
    """All (i, j, <u_i, v_j> mod q) breaking the matching-vector property."""
    q = fam.modulus
    bad = []
    for i, u in enumerate(fam.U):
        for j, v in enumerate(fam.V):
            ip = sum(a * b for a, b in zip(u, v)) % q
            if (ip == 0) != (i == j):
                bad.append((i, j, ip))
    return bad


def mv_verify(fam: MVFamily) -> bool:
    """True iff the matching-vector property holds."""
    if len(fam.U) != len(fam.V):
        return False
    return not mv_violations(fam)


def mv_identity_submatrix_check(fam: MVFamily) -> bool:
    """The (U, V) submatrix of the incidence matrix is the identity."""
    q = fam.modulus
    size = len(fam.U)
    sub = [
        [1 if sum(a * b for a, b in zip(u, v)) % q == 0 else 0 for v in fam.V]
        for u in fam.U
    ]
    return sub == [[1 if i == j else 0 for j in range(size)] for i in range(size)]


def mv_rank_bound(fam: MVFamily) -> int:
    """Family size: a lower bound on the incidence-matrix rank over any field."""
    if not mv_verify(fam):
        raise ValueError(f"not a matching-vector family: {mv_violations(fam)[:3]}")
    return fam.size


def mv_search(
    p: int, k: int, n: int, target_size: int, budget: int = 200_000
) -> tuple[MVFamily, int]:
    """Deterministic backtracking search for a matching-vector family.

    Scans candidate (u, v) pairs in lexicographic order, depth-first, and
    stops at target_size or when the node budget runs out.  Returns the best
    family found and the number of nodes visited.  Never errors on an
    unreachable target; the best-found family is returned instead.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    q = p**k
    vectors = list(product(range(q), repeat=n))
    if target_size >= 2:
        # a zero vector forces a zero inner product off the diagonal, so it
        # cannot appear in any family of size >= 2
        vectors = [v for v in vectors if any(v)]
    pairs = [(u, v) for u in vectors for v in vectors]
    nodes = 0
    best: list[tuple] = []

    def ok_pair(u, v, U, V):
        if sum(a * b for a, b in zip(u, v)) % q:
            return False
        for w in V:
            if sum(a * b for a, b in zip(u, w)) % q == 0:
                return False
        for w in U:
            if sum(a * b for a, b in zip(w, v)) % q == 0:
                return False
        return True

    def dfs(U, V, start):
        # reordering a family preserves the property, so pairs are scanned
        # in non-decreasing lexicographic position only
        nonlocal nodes, best
        if len(U) > len(best):
            best = list(zip(U, V))
        if len(U) >= target_size or nodes >= budget:
            return len(U) >= target_size
        for idx in range(start, len(pairs)):
            u, v = pairs[idx]
            nodes += 1
            if nodes > budget:
                return False
            if ok_pair(u, v, U, V):
                if dfs(U + [u], V + [v], idx + 1):
                    return True
        return False

    dfs([], [], 0)
    U = tuple(best_u for best_u, _ in best)
    V = tuple(best_v for _, best_v in best)
    fam = MVFamily(p=p, k=k, n=n, U=U, V=V)
    if not mv_verify(fam):
        raise AssertionError("search produced an invalid family")
    return fam, nodes
