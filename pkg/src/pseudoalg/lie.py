"""Finite-dimensional Lie algebras over Q, 2-cocycles and central extensions.

Basis indices are 0-based internally and 1-based in JSON.  Only brackets
[d_i, d_j] with i < j are stored.
"""

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Tuple

from .errors import CocycleViolation, InputError, JacobiViolation, NotSubalgebra
from .scalars import Q, ZERO, vadd, vscale

Bracket = Dict[Tuple[int, int], Dict[int, Fraction]]


class LieAlgebra:
    __slots__ = ("dim", "_table", "_key")

    def __init__(self, dim: int, table: Bracket, check: bool = True):
        if not isinstance(dim, int) or dim < 0:
            raise InputError(f"dimension must be a nonnegative integer, got {dim!r}")
        clean: Bracket = {}
        for (i, j), vec in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InputError(f"bracket index out of range: ({i + 1},{j + 1})")
            vec = {k: Q(v) for k, v in vec.items() if Q(v)}
            for k in vec:
                if not 0 <= k < dim:
                    raise InputError(f"bracket output index out of range: {k + 1}")
            if i == j:
                if vec:
                    raise InputError(f"[d_{i + 1}, d_{i + 1}] must vanish")
                continue
            if i > j:
                i, j, vec = j, i, vscale(vec, -1)
            if (i, j) in clean and clean[(i, j)] != vec:
                raise InputError(f"conflicting entries for [d_{i + 1}, d_{j + 1}]")
            if vec:
                clean[(i, j)] = vec
        self.dim = dim
        self._table = clean
        self._key = (dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in clean.items())))
        if check:
            bad = self.jacobi_defect()
            if bad is not None:
                (i, j, k), vec = bad
                raise JacobiViolation(
                    f"Jacobi fails on ({i + 1},{j + 1},{k + 1})",
                    triple=[i + 1, j + 1, k + 1],
                    defect={str(a + 1): str(c) for a, c in sorted(vec.items())},
                )

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, bracket={self.to_json()['bracket']})"

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        """[d_i, d_j] as a sparse vector (a fresh dict)."""
        if i == j:
            return {}
        if i < j:
            return dict(self._table.get((i, j), {}))
        return vscale(self._table.get((j, i), {}), -1)

    def bracket_vec(self, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                vadd(out, self.bracket(i, j), a * b)
        return out

    @property
    def table(self) -> Bracket:
        return {k: dict(v) for k, v in self._table.items()}

    def is_abelian(self) -> bool:
        return not self._table

    def jacobi_defect(self):
        """First basis triple with a nonzero Jacobi sum, or None."""
        for i, j, k in combinations(range(self.dim), 3):
            tot: Dict[int, Fraction] = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                vadd(tot, self.bracket_vec(self.bracket(a, b), {c: Fraction(1)}))
            if tot:
                return (i, j, k), tot
        return None

    def restrict(self, indices: Iterable[int]) -> "LieAlgebra":
        """Subalgebra on the given basis indices, renumbered in increasing order."""
        idx = sorted(indices)
        pos = {old: new for new, old in enumerate(idx)}
        table: Bracket = {}
        for a, b in combinations(idx, 2):
            vec = self.bracket(a, b)
            if any(k not in pos for k in vec):
                raise NotSubalgebra(f"span of {[i + 1 for i in idx]} is not closed under the bracket")
            if vec:
                table[(pos[a], pos[b])] = {pos[k]: c for k, c in vec.items()}
        return LieAlgebra(len(idx), table)

    def opposite(self) -> "LieAlgebra":
        return LieAlgebra(self.dim, {k: vscale(v, -1) for k, v in self._table.items()}, check=False)

    def to_json(self) -> dict:
        rows = []
        for (i, j), vec in sorted(self._table.items()):
            rows.append([i + 1, j + 1, [[k + 1, str(c)] for k, c in sorted(vec.items())]])
        return {"dim": self.dim, "bracket": rows}

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        return validate_lie(data.get("dim"), data.get("bracket", []))


class Cocycle:
    __slots__ = ("phi",)

    def __init__(self, phi: Dict[Tuple[int, int], Fraction]):
        clean = {}
        for (i, j), v in phi.items():
            v = Q(v)
            if i == j:
                if v:
                    raise InputError("cocycle must be alternating")
                continue
            if i > j:
                i, j, v = j, i, -v
            if v:
                clean[(i, j)] = v
        self.phi = clean

    def __call__(self, i: int, j: int) -> Fraction:
        if i < j:
            return self.phi.get((i, j), ZERO)
        if i > j:
            return -self.phi.get((j, i), ZERO)
        return ZERO

    def value(self, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Fraction:
        return sum((a * b * self(i, j) for i, a in x.items() for j, b in y.items()), ZERO)

    def is_zero(self) -> bool:
        return not self.phi

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.phi == other.phi

    def __hash__(self):
        return hash(tuple(sorted(self.phi.items())))

    def __repr__(self):
        return f"Cocycle({self.to_json()['phi']})"

    def to_json(self) -> dict:
        return {"phi": [[i + 1, j + 1, str(v)] for (i, j), v in sorted(self.phi.items())]}

    @classmethod
    def from_json(cls, data: dict) -> "Cocycle":
        phi = {}
        try:
            for i, j, v in data.get("phi", []):
                phi[(int(i) - 1, int(j) - 1)] = Q(v)
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed cocycle: {exc}") from exc
        return cls(phi)


def validate_lie(dim, table) -> LieAlgebra:
    """Build a LieAlgebra from JSON-style rows [[i, j, [[k, "p/q"], ...]], ...] (1-based)."""
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError(f"dim must be a positive integer, got {dim!r}")
    if isinstance(table, dict):
        rows = [(i, j, list(v.items())) for (i, j), v in table.items()]
        base = 0
    else:
        rows = table
        base = 1
    parsed: Bracket = {}
    try:
        for i, j, vec in rows:
            i, j = int(i) - base, int(j) - base
            if not (0 <= i < dim and 0 <= j < dim):
                raise InputError(f"bracket index out of range: ({i + 1},{j + 1})")
            out = {}
            for k, c in vec:
                k = int(k) - base
                if not 0 <= k < dim:
                    raise InputError(f"bracket output index out of range: {k + 1}")
                out[k] = out.get(k, ZERO) + Q(c)
            parsed[(i, j)] = out
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed bracket table: {exc}") from exc
    return LieAlgebra(dim, parsed)


def cocycle_defect(g: LieAlgebra, phi: Cocycle):
    for i, j, k in combinations(range(g.dim), 3):
        d = (phi.value(g.bracket(i, j), {k: 1}) + phi.value(g.bracket(j, k), {i: 1})
             + phi.value(g.bracket(k, i), {j: 1}))
        if d:
            return (i, j, k), d
    return None


def central_extension(g: LieAlgebra, phi: Cocycle) -> LieAlgebra:
    """g + C c with [d_i, d_j] = old + phi(d_i, d_j) c; c is the last basis vector."""
    bad = cocycle_defect(g, phi)
    if bad is not None:
        (i, j, k), d = bad
        raise CocycleViolation(f"cocycle identity fails on ({i + 1},{j + 1},{k + 1})",
                               triple=[i + 1, j + 1, k + 1], defect=str(d))
    n = g.dim
    table = g.table
    for (i, j), v in phi.phi.items():
        if i >= n or j >= n:
            raise InputError("cocycle index out of range")
        table.setdefault((i, j), {})[n] = v
    return LieAlgebra(n + 1, table)


def is_subalgebra_span(g: LieAlgebra, indices) -> bool:
    idx = set(indices)
    if not idx:
        raise InputError("index set must be nonempty")
    if any(not 0 <= i < g.dim for i in idx):
        raise InputError("index out of range")
    for a, b in combinations(sorted(idx), 2):
        if any(k not in idx for k in g.bracket(a, b)):
            return False
    return True


# ----------------------------------------------------------------- zoo

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {})


def nonabelian2() -> LieAlgebra:
    """[d_1, d_2] = d_2."""
    return LieAlgebra(2, {(0, 1): {1: Fraction(1)}})


def heisenberg() -> LieAlgebra:
    """[d_1, d_2] = d_3, d_3 central."""
    return LieAlgebra(3, {(0, 1): {2: Fraction(1)}})


def zoo() -> Dict[str, LieAlgebra]:
    return {"ab1": abelian(1), "ab2": abelian(2), "nonab2": nonabelian2(), "heis": heisenberg()}
