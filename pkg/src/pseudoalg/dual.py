"""The dual algebra X = H* = C[[t_1..t_n]] and its actions.

X elements are finite dicts {I: Fraction} in the basis t^I dual to d^(I).
Since Delta(d^(K)) = sum_{A+B=K} d^(A) (x) d^(B) for every g, the product of X
is ordinary polynomial multiplication.  The H-actions on X and the antipode of
X are power series for nonabelian g; those operations take a degree bound D and
return the exact coefficients of all t^J with |J| <= D.
"""

from fractions import Fraction
from math import comb
from typing import Dict, Optional, Tuple

from .hopf import HElt, HTensor, UEA
from .scalars import (ONE, ZERO, MultiIndex, iadd, ideg, ile, indices_up_to, isub,
                      sub_indices, unit_index, vadd, zero_index)

XElt = Dict[MultiIndex, Fraction]
XTensor = Dict[Tuple[MultiIndex, MultiIndex], Fraction]


class DualX:
    def __init__(self, H: UEA):
        self.H = H
        self.n = H.n
        self._pairs = {}

    # ------------------------------------------------------------ basics

    def one(self) -> XElt:
        return {zero_index(self.n): ONE}

    def t(self, i: int) -> XElt:
        return {unit_index(self.n, i): ONE}

    def mono(self, I) -> XElt:
        return {tuple(I): ONE}

    def pair(self, x: XElt, h: HElt) -> Fraction:
        if len(x) > len(h):
            x, h = h, x
        return sum((c * h[I] for I, c in x.items() if I in h), ZERO)

    def degree(self, x: XElt) -> int:
        return max((ideg(I) for I in x), default=-1)

    def low_degree(self, x: XElt) -> Optional[int]:
        """Largest m with x in fil_{m-1} X, i.e. the smallest |I| in the support."""
        return min((ideg(I) for I in x), default=None)

    def in_fil(self, x: XElt, m: int) -> bool:
        """fil_m X = span{t^I : |I| > m}."""
        return all(ideg(I) > m for I in x)

    def truncate(self, x: XElt, D: int) -> XElt:
        return {I: c for I, c in x.items() if ideg(I) <= D}

    def mul(self, x: XElt, y: XElt) -> XElt:
        out: XElt = {}
        for I, a in x.items():
            for J, b in y.items():
                K = iadd(I, J)
                v = out.get(K, ZERO) + a * b
                if v:
                    out[K] = v
                else:
                    out.pop(K, None)
        return out

    def counit(self, x: XElt) -> Fraction:
        """<x, 1>."""
        return x.get(zero_index(self.n), ZERO)

    # ------------------------------------------------------------ coproduct

    def _pair_table(self, D: int):
        """[(A, B, d^(A) d^(B))] for |A| + |B| <= D."""
        hit = self._pairs.get(D)
        if hit is None:
            idx = indices_up_to(self.n, D)
            hit = [(A, B, self.H.basis_mul(A, B)) for A in idx for B in idx if ideg(A) + ideg(B) <= D]
            self._pairs[D] = hit
        return hit

    def coproduct(self, x: XElt, D: int) -> XTensor:
        """Delta(x) = sum c t^A (x) t^B, exact for |A| + |B| <= D."""
        out: XTensor = {}
        if not x:
            return out
        if self.H.g.is_abelian():
            # d^(A) d^(B) = binom(A + B, A) d^(A + B)
            for I, c in x.items():
                if ideg(I) > D:
                    continue
                for A, B in sub_indices(I):
                    coef = c
                    for i_, a_ in zip(I, A):
                        coef *= comb(i_, a_)
                    vadd(out, {(A, B): coef})
            return out
        for A, B, prod in self._pair_table(D):
            if ideg(A) + ideg(B) < self.low_degree(x):
                continue
            val = sum((c * prod[I] for I, c in x.items() if I in prod), ZERO)
            if val:
                out[(A, B)] = val
        return out

    def pair_tensor(self, w: XTensor, u: HTensor) -> Fraction:
        return sum((c * u[k] for k, c in w.items() if k in u), ZERO)

    # ------------------------------------------------------------ actions

    def _series(self, x: XElt, D: int, make) -> XElt:
        """Coefficient at t^J is <x, make(J)> for |J| <= D."""
        out: XElt = {}
        for J in indices_up_to(self.n, D):
            v = self.pair(x, make(J))
            if v:
                out[J] = v
        return out

    def h_act_x(self, h: HElt, x: XElt, D: Optional[int] = None) -> XElt:
        """<h x, f> = <x, S(h) f>.  Exact through degree D (default deg x)."""
        if D is None:
            D = self.degree(x)
        if not x or not h:
            return {}
        if self.H.g.is_abelian():
            return self.truncate(self._abelian_shift(x, self.H.antipode(h)), D)
        Sh = self.H.antipode(h)
        return self._series(x, D, lambda J: self.H.mul(Sh, {J: ONE}))

    def x_ract_h(self, x: XElt, h: HElt, D: Optional[int] = None) -> XElt:
        """<x h, f> = <x, f S(h)>.  Exact through degree D (default deg x)."""
        if D is None:
            D = self.degree(x)
        if not x or not h:
            return {}
        Sh = self.H.antipode(h)
        if self.H.g.is_abelian():
            return self.truncate(self._abelian_shift(x, Sh), D)
        return self._series(x, D, lambda J: self.H.mul({J: ONE}, Sh))

    def _abelian_shift(self, x: XElt, k: HElt) -> XElt:
        """For abelian g: coefficient at J is <x, k d^(J)> (finite)."""
        out: XElt = {}
        for I, c in x.items():
            for K, a in k.items():
                if ile(K, I):
                    J = isub(I, K)
                    # d^(K) d^(J) = binom(I, K) d^(I)
                    coef = Fraction(1)
                    for i_, k_ in zip(I, K):
                        coef *= comb(i_, k_)
                    vadd(out, {J: c * a * coef})
        return out

    def x_act_h(self, x: XElt, h: HElt) -> HElt:
        """x |> h = sum <x, S(h_(1))> h_(2); makes H an X^cop-algebra."""
        out: HElt = {}
        for I, c in h.items():
            for J, K in sub_indices(I):
                v = self.pair(x, self.H.basis_antipode(J))
                if v:
                    vadd(out, {K: c * v})
        return out

    def x_act_h_plain(self, x: XElt, h: HElt) -> HElt:
        """x(h) = sum <x, h_(1)> h_(2), the action used on H^op."""
        out: HElt = {}
        for I, c in h.items():
            for J, K in sub_indices(I):
                v = x.get(J)
                if v:
                    vadd(out, {K: c * v})
        return out

    def antipode(self, x: XElt, D: Optional[int] = None) -> XElt:
        """<S(x), h> = <x, S(h)>.  Exact through degree D (default deg x)."""
        if D is None:
            D = self.degree(x)
        if not x:
            return {}
        if self.H.g.is_abelian():
            return {I: (-c if ideg(I) % 2 else c) for I, c in x.items() if ideg(I) <= D}
        return self._series(x, D, self.H.basis_antipode)


def xelt_to_json(x: XElt) -> dict:
    from .hopf import helt_to_json
    out = helt_to_json(x)
    out["dual"] = True
    return out
