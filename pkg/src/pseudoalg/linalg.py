"""Exact linear algebra over Q, backed by sympy's DomainMatrix.

Matrices are lists of rows of Fractions.  Sparse-vector helpers turn dict
vectors into dense rows against an explicit key order.
"""

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .scalars import ZERO, skey

Matrix = List[List[Fraction]]


def _to_dm(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    data = [[QQ(int(x.numerator), int(x.denominator)) if isinstance(x, Fraction) else QQ(x) for x in r]
            for r in rows]
    return DomainMatrix(data, (nrows, ncols), QQ)


def _from_dm(M: DomainMatrix) -> Matrix:
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in M.to_list()]


def rref(rows: Matrix, ncols: Optional[int] = None):
    """(reduced rows without zero rows, pivot columns)."""
    if not rows:
        return [], ()
    R, piv = _to_dm(rows, ncols).rref()
    out = _from_dm(R)[:len(piv)]
    return out, tuple(piv)


def rank(rows: Matrix) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Matrix, ncols: int) -> Matrix:
    """Basis of {v : rows v = 0}, as a list of vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = Fraction(1)
        for r, p in zip(R, piv):
            v[p] = -r[f]
        basis.append(v)
    return basis


def solve(rows: Matrix, rhs: Sequence[Fraction], ncols: int) -> Optional[List[Fraction]]:
    """One solution of rows v = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [ZERO] * ncols
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    v = [ZERO] * ncols
    for r, p in zip(R, piv):
        v[p] = r[ncols]
    return v


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    m = len(B[0]) if B else 0
    return [[sum((a * B[k][j] for k, a in enumerate(row) if a), ZERO) for j in range(m)] for row in A]


def mat_add(A: Matrix, B: Matrix, c=1) -> Matrix:
    return [[a + c * b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[a * c for a in r] for r in A]


def identity(d: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def unit_matrix(d: int, i: int, j: int) -> Matrix:
    M = zeros(d, d)
    M[i][j] = Fraction(1)
    return M


def mat_vec(A: Matrix, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((a * x for a, x in zip(r, v) if a and x), ZERO) for r in A]


def transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)] if A else []


def inverse(A: Matrix) -> Optional[Matrix]:
    d = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(d))]
    R, piv = rref(aug, 2 * d)
    if tuple(piv[:d]) != tuple(range(d)) or len(piv) < d:
        return None
    return [r[d:] for r in R[:d]]


def kron(A: Matrix, B: Matrix) -> Matrix:
    out = []
    for ra in A:
        for rb in B:
            out.append([a * b for a in ra for b in rb])
    return out


def is_zero(A: Matrix) -> bool:
    return all(not x for r in A for x in r)


def flatten(A: Matrix) -> List[Fraction]:
    return [x for r in A for x in r]


# ------------------------------------------------------------ sparse vectors

def key_order(vecs: Sequence[Dict[Hashable, Fraction]]) -> List[Hashable]:
    keys = set()
    for v in vecs:
        keys.update(v)
    return sorted(keys, key=skey)


def dense(vec: Dict[Hashable, Fraction], keys: Sequence[Hashable]) -> List[Fraction]:
    return [vec.get(k, ZERO) for k in keys]


def span_basis(vecs: Sequence[Dict[Hashable, Fraction]]) -> List[Dict[Hashable, Fraction]]:
    """Row-reduced basis of the span of sparse vectors."""
    keys = key_order(vecs)
    R, _ = rref([dense(v, keys) for v in vecs], len(keys))
    return [{k: x for k, x in zip(keys, r) if x} for r in R]


def in_span(vec: Dict[Hashable, Fraction], basis: Sequence[Dict[Hashable, Fraction]]):
    """Coefficients expressing vec in basis, or None."""
    keys = key_order(list(basis) + [vec])
    cols = [dense(b, keys) for b in basis]
    rows = [[c[i] for c in cols] for i in range(len(keys))]
    return solve(rows, dense(vec, keys), len(basis))
