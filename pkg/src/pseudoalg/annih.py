"""The annihilation algebra coef(R) = X (x)_H R.

A coefficient is stored as {(I, label): c} meaning sum c t^I (x)_H label, with
the H-coefficients of R-elements absorbed into X by the right action.  For
nonabelian g that absorption yields power series, so each coefficient carries
a precision: terms are exact for |I| <= prec (None means exact and finite).
"""

from fractions import Fraction
from typing import Dict, Optional

from .pseudo import PElt, Report, parts_support, coef_degree
from .scalars import ONE, iadd, ideg, indices_up_to, vadd, zero_index, skey


def _min(*vals):
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


class CoefElt:
    __slots__ = ("terms", "prec")

    def __init__(self, terms=None, prec: Optional[int] = None):
        self.terms: Dict = {}
        self.prec = prec
        for key, c in (terms or {}).items():
            if c and (prec is None or ideg(key[0]) <= prec):
                self.terms[key] = Fraction(c)

    def __eq__(self, other):
        if not isinstance(other, CoefElt):
            return NotImplemented
        p = _min(self.prec, other.prec)
        diff = dict(self.terms)
        vadd(diff, other.terms, -ONE)
        return all(p is not None and ideg(I) > p for I, _ in diff)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: skey(kv[0]))
        body = " + ".join(f"{c}*t^{''.join(map(str, I))}(x){l}" for (I, l), c in items) or "0"
        return body + ("" if self.prec is None else f" + O(deg {self.prec + 1})")

    def add(self, other: "CoefElt", c=ONE) -> "CoefElt":
        out = dict(self.terms)
        vadd(out, other.terms, c)
        return CoefElt(out, _min(self.prec, other.prec))

    def to_json(self):
        from .xcop import _enc_label
        items = sorted(self.terms.items(), key=lambda kv: skey(kv[0]))
        return {"terms": [[list(I), _enc_label(l), str(c)] for (I, l), c in items], "prec": self.prec}


def basis_coef(I, label) -> CoefElt:
    return CoefElt({(tuple(I), label): ONE})


def _absorb(R, x, a: PElt, D: Optional[int]):
    """x (x)_H a with a's H-coefficients moved into X; returns (terms, prec)."""
    X = R.X
    abelian = R.g.is_abelian()
    out: Dict = {}
    prec = None
    for (P, l), c in a.items():
        if not any(P):
            for I, v in x.items():
                vadd(out, {(I, l): c * v})
            continue
        if abelian:
            y = X.x_ract_h(x, {P: ONE}, max(X.degree(x), 0))
        else:
            y = X.x_ract_h(x, {P: ONE}, D)
            prec = _min(prec, D)
        for I, v in y.items():
            vadd(out, {(I, l): c * v})
    return out, prec


def fourier_coefficient(R, a: PElt, x, D: Optional[int] = None) -> CoefElt:
    """Canonical form of x (x)_H a; for nonabelian g exact through degree D."""
    if D is None:
        D = max((ideg(I) for I in x), default=0) + coef_degree(a)
    terms, prec = _absorb(R, x, a, D)
    return CoefElt(terms, prec)


def h_act_coef(R, h, u: CoefElt, D: Optional[int] = None) -> CoefElt:
    """h (x (x)_H a) = (h x) (x)_H a."""
    out: Dict = {}
    prec = u.prec
    if not R.g.is_abelian():
        D = D if D is not None else max((ideg(I) for I, _ in u.terms), default=0)
        prec = _min(prec, D)
    for (I, l), c in u.terms.items():
        y = R.X.h_act_x(h, {I: ONE}, D if not R.g.is_abelian() else ideg(I))
        for J, v in y.items():
            vadd(out, {(J, l): c * v})
    return CoefElt(out, prec)


def _group(u: CoefElt):
    by: Dict = {}
    for (I, l), c in u.terms.items():
        by.setdefault(l, {})[I] = c
    return by


def coef_mul(R, u: CoefElt, v: CoefElt, D: Optional[int] = None) -> CoefElt:
    """(a_x)(b_y) = (a_{x_(2)} b)_{x_(1) y}.

    ``R`` is anything with ``H``, ``X``, ``g`` and ``product``; for nonabelian g
    the result is exact through min(D, input precisions adjusted by the
    degrees absorbed).
    """
    X = R.X
    abelian = R.g.is_abelian()
    if D is None:
        D = max((ideg(I) for I, _ in list(u.terms) + list(v.terms)), default=0)
    out: Dict = {}
    prec = None if abelian else D
    for la, xs in _group(u).items():
        for lb, ys in _group(v).items():
            parts = R.product({(zero_index(R.H.n), la): ONE}, {(zero_index(R.H.n), lb): ONE})
            if not parts:
                continue
            maxB = parts_support(parts)
            maxP = max((coef_degree(w) for w in parts.values()), default=0)
            if not abelian:
                if u.prec is not None:
                    prec = _min(prec, u.prec - maxP - maxB)
                if v.prec is not None:
                    prec = _min(prec, v.prec - maxP)
            for I, cx in xs.items():
                Dcop = ideg(I) if abelian else D + maxP + maxB
                cop = X.coproduct({I: ONE}, Dcop)
                for (A, B), c in cop.items():
                    w = parts.get(B)
                    if not w:
                        continue
                    for J, cy in ys.items():
                        if not abelian and ideg(A) + ideg(J) > D + maxP:
                            continue
                        z = {iadd(A, J): c * cx * cy}
                        terms, _ = _absorb(R, z, w, D)
                        vadd(out, terms)
    return CoefElt(out, prec)


def coef_mul_tensor(R, u: CoefElt, v: CoefElt, D: Optional[int] = None) -> CoefElt:
    """Same product from (x (x)_H a)(y (x)_H b) = sum_i (x S(d^(i))) y (x)_H c_i."""
    X = R.X
    H = R.H
    abelian = R.g.is_abelian()
    if D is None:
        D = max((ideg(I) for I, _ in list(u.terms) + list(v.terms)), default=0)
    out: Dict = {}
    prec = None if abelian else D
    for la, xs in _group(u).items():
        for lb, ys in _group(v).items():
            parts = R.product({(zero_index(H.n), la): ONE}, {(zero_index(H.n), lb): ONE})
            if not parts:
                continue
            maxB = parts_support(parts)
            maxP = max((coef_degree(w) for w in parts.values()), default=0)
            if not abelian:
                if u.prec is not None:
                    prec = _min(prec, u.prec - maxP - maxB)
                if v.prec is not None:
                    prec = _min(prec, v.prec - maxP)
            for B, w in parts.items():
                for I, cx in xs.items():
                    Dx = ideg(I) if abelian else D + maxP
                    xs_ = X.x_ract_h({I: ONE}, H.basis_antipode(B), Dx)
                    z = X.mul(xs_, {J: cy for J, cy in ys.items()})
                    z = {K: c * cx for K, c in z.items() if abelian or ideg(K) <= D + maxP}
                    terms, _ = _absorb(R, z, w, D)
                    vadd(out, terms)
    return CoefElt(out, prec)


def left_identity_check(R, e: PElt, samples, D: Optional[int] = None) -> Report:
    """e_1 . a_x = a_x for sampled coefficients a_x (given as CoefElt or (a, x) pairs)."""
    rep = Report("left identity")
    e1 = fourier_coefficient(R, e, {zero_index(R.H.n): ONE})
    for n, s in enumerate(samples):
        u = s if isinstance(s, CoefElt) else fourier_coefficient(R, s[0], s[1], D)
        got = coef_mul(R, e1, u, D)
        ok = got == u
        rep.record("left_identity", ok, **({} if ok else {"sample": n, "got": repr(got), "want": repr(u)}))
    return rep


def sample_coefs(R, labels, D: int):
    return [basis_coef(I, l) for l in labels for I in indices_up_to(R.H.n, D)]
