"""Arithmetic in H = U(g) in the divided-power basis d^(I) = d_1^i1 ... d_n^in / I!.

Elements are dicts {I: Fraction}; tensors in H (x) H are dicts {(I, J): Fraction}.
Products go through ordinary PBW monomials m_I = I! d^(I) and a memoized
rewriting of d_k * m_I.
"""

from fractions import Fraction
from typing import Dict, Tuple

from .errors import InputError, ZeroElement
from .lie import LieAlgebra
from .scalars import (ONE, ZERO, MultiIndex, Q, iadd, ideg, ifact, indices_up_to, isub,
                      skey, sub_indices, unit_index, vadd, vscale, zero_index)

HElt = Dict[MultiIndex, Fraction]
HTensor = Dict[Tuple[MultiIndex, MultiIndex], Fraction]

_CACHE: Dict[LieAlgebra, "UEA"] = {}


def uea(g: LieAlgebra) -> "UEA":
    """Shared instance per Lie algebra, so memo tables are reused."""
    h = _CACHE.get(g)
    if h is None:
        h = _CACHE.setdefault(g, UEA(g))
    return h


class UEA:
    def __init__(self, g: LieAlgebra):
        self.g = g
        self.n = g.dim
        self._gen = {}
        self._mono = {}
        self._basis = {}
        self._anti = {}
        # [d_k, d_j] for k > j, used when moving d_k past d_j
        self._swap = {(k, j): g.bracket(k, j) for k in range(self.n) for j in range(k)}

    # ------------------------------------------------------------ constructors

    def one(self) -> HElt:
        return {zero_index(self.n): ONE}

    def zero_index(self) -> MultiIndex:
        return zero_index(self.n)

    def gen(self, i: int) -> HElt:
        return {unit_index(self.n, i): ONE}

    def basis(self, I) -> HElt:
        return {tuple(I): ONE}

    def check(self, a: HElt) -> HElt:
        for I in a:
            if len(I) != self.n or any(x < 0 for x in I):
                raise InputError(f"bad multi-index {I} for dim {self.n}")
        return a

    # ------------------------------------------------------------ straightening

    def _gen_times(self, k: int, I: MultiIndex) -> Dict[MultiIndex, Fraction]:
        """d_k * m_I in ordinary monomials."""
        key = (k, I)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        j = next((j for j in range(k) if I[j]), None)
        if j is None:
            out = {iadd(I, unit_index(self.n, k)): ONE}
        else:
            rest = isub(I, unit_index(self.n, j))
            out = {}
            for M, c in self._gen_times(k, rest).items():
                vadd(out, self._gen_times(j, M), c)
            for l, c in self._swap[(k, j)].items():
                vadd(out, self._gen_times(l, rest), c)
        self._gen[key] = out
        return out

    def _left_letters(self, letters, vec):
        """Left-multiply an ordinary-monomial vector by letters, rightmost first."""
        for k in reversed(letters):
            nxt = {}
            for M, c in vec.items():
                vadd(nxt, self._gen_times(k, M), c)
            vec = nxt
        return vec

    def mono_mul(self, I: MultiIndex, J: MultiIndex) -> Dict[MultiIndex, Fraction]:
        """m_I * m_J in ordinary monomials."""
        key = (I, J)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        if self.g.is_abelian():
            out = {iadd(I, J): ONE}
        else:
            letters = [k for k in range(self.n) for _ in range(I[k])]
            out = self._left_letters(letters, {J: ONE})
        self._mono[key] = out
        return out

    def basis_mul(self, I: MultiIndex, J: MultiIndex) -> HElt:
        """d^(I) * d^(J) in divided powers."""
        key = (I, J)
        hit = self._basis.get(key)
        if hit is not None:
            return hit
        scale = Fraction(1, ifact(I) * ifact(J))
        out = {}
        for K, c in self.mono_mul(I, J).items():
            out[K] = c * scale * ifact(K)
        self._basis[key] = out
        return out

    def mul(self, a: HElt, b: HElt) -> HElt:
        out: HElt = {}
        for I, x in a.items():
            for J, y in b.items():
                vadd(out, self.basis_mul(I, J), x * y)
        return out

    def mul_many(self, *elts: HElt) -> HElt:
        out = self.one()
        for e in elts:
            out = self.mul(out, e)
        return out

    def power(self, a: HElt, k: int) -> HElt:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    # ------------------------------------------------------------ Hopf structure

    def coproduct(self, a: HElt) -> HTensor:
        out: HTensor = {}
        for I, c in a.items():
            for J, K in sub_indices(I):
                key = (J, K)
                val = out.get(key, ZERO) + c
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return out

    def counit(self, a: HElt) -> Fraction:
        return a.get(zero_index(self.n), ZERO)

    def basis_antipode(self, I: MultiIndex) -> HElt:
        hit = self._anti.get(I)
        if hit is not None:
            return hit
        # S(m_I) = (-1)^|I| d_n^in ... d_1^i1: apply d_1's first, then d_2's, ...
        vec = {zero_index(self.n): ONE}
        for k in range(self.n):
            for _ in range(I[k]):
                nxt = {}
                for M, c in vec.items():
                    vadd(nxt, self._gen_times(k, M), c)
                vec = nxt
        sign = -1 if ideg(I) % 2 else 1
        scale = Fraction(sign, ifact(I))
        out = {K: c * scale * ifact(K) for K, c in vec.items()}
        self._anti[I] = out
        return out

    def antipode(self, a: HElt) -> HElt:
        out: HElt = {}
        for I, c in a.items():
            vadd(out, self.basis_antipode(I), c)
        return out

    def degree(self, a: HElt) -> int:
        if not a:
            raise ZeroElement("degree of the zero element")
        return max(ideg(I) for I in a)

    # ------------------------------------------------------------ tensors

    def tensor_mul(self, u: HTensor, v: HTensor) -> HTensor:
        out: HTensor = {}
        for (A, B), x in u.items():
            for (C, D), y in v.items():
                left = self.basis_mul(A, C)
                right = self.basis_mul(B, D)
                for P, p in left.items():
                    for R, r in right.items():
                        key = (P, R)
                        val = out.get(key, ZERO) + x * y * p * r
                        if val:
                            out[key] = val
                        else:
                            out.pop(key, None)
        return out

    def tensor(self, a: HElt, b: HElt) -> HTensor:
        return {(I, J): x * y for I, x in a.items() for J, y in b.items()}

    def flip(self, w: HTensor) -> HTensor:
        return {(J, I): c for (I, J), c in w.items()}

    def fourier_decompose(self, w: HTensor) -> Dict[MultiIndex, HElt]:
        """Unique {i: l_i} with w = sum_i (d^(i) (x) 1) Delta(l_i).

        Uses f (x) g = sum (f S(g_(1)) (x) 1) Delta(g_(2)).
        """
        parts: Dict[MultiIndex, HElt] = {}
        for (F, G), c in w.items():
            for G1, G2 in sub_indices(G):
                left = self.mul({F: ONE}, self.basis_antipode(G1))
                for i, x in left.items():
                    slot = parts.setdefault(i, {})
                    val = slot.get(G2, ZERO) + c * x
                    if val:
                        slot[G2] = val
                    else:
                        slot.pop(G2, None)
        return {i: l for i, l in parts.items() if l}

    def recompose(self, parts: Dict[MultiIndex, HElt]) -> HTensor:
        out: HTensor = {}
        for i, l in parts.items():
            for K, c in l.items():
                for A, B in sub_indices(K):
                    for P, p in self.basis_mul(i, A).items():
                        key = (P, B)
                        val = out.get(key, ZERO) + c * p
                        if val:
                            out[key] = val
                        else:
                            out.pop(key, None)
        return out

    # ------------------------------------------------------------ misc

    def basis_up_to(self, d: int):
        return indices_up_to(self.n, d)

    def scale(self, a: HElt, c) -> HElt:
        return vscale(a, c)

    def add(self, *elts: HElt) -> HElt:
        out: HElt = {}
        for e in elts:
            vadd(out, e)
        return out


def helt_to_json(a: HElt) -> dict:
    return {"terms": [[list(I), str(c)] for I, c in sorted(a.items(), key=lambda kv: skey(kv[0]))]}


def helt_from_json(data: dict, n: int) -> HElt:
    out: HElt = {}
    try:
        for I, c in data.get("terms", []):
            I = tuple(int(x) for x in I)
            if len(I) != n or any(x < 0 for x in I):
                raise InputError(f"bad multi-index {I}")
            vadd(out, {I: Q(c)})
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed element: {exc}") from exc
    return out
