"""Associative algebras with an X^cop-action (the base algebras of Dif A).

Every algebra exposes labelled basis elements, a product ``mul(a, b)`` returning
a sparse vector of labels, the action ``t_gen(k, a)`` of the generator t_k of X
and the filtration degree ``deg(a)``.  Finite algebras are TableXcop; the
infinite ones (H^op, U(g^)/(1-c), Weyl, ...) are produced by normal-form rules.
"""

from fractions import Fraction
from itertools import product as iproduct
from math import comb, factorial
from typing import Dict, Hashable, List, Optional

from .dual import DualX
from .errors import InputError, InvalidBase, NotSmall
from .hopf import uea
from .lie import Cocycle, LieAlgebra, abelian, central_extension
from .scalars import (ONE, Q, ideg, indices_of_degree, indices_up_to, isub, skey, unit_index,
                      vadd, zero_index)

Label = Hashable
Vec = Dict[Label, Fraction]


class XcopAlgebra:
    """Base class.  Subclasses set ``g`` and implement the primitive methods."""

    kind = "abstract"
    finite = False

    def __init__(self, g: LieAlgebra):
        self.g = g
        self.n = g.dim
        self.H = uea(g)
        self.X = DualX(self.H)
        self._tact = {}
        self._mul = {}

    # primitives ---------------------------------------------------------
    def _mul_basis(self, a: Label, b: Label) -> Vec:
        raise NotImplementedError

    def t_gen(self, k: int, a: Label) -> Vec:
        raise NotImplementedError

    def deg(self, a: Label) -> int:
        raise NotImplementedError

    def unit(self) -> Optional[Vec]:
        return None

    def labels_up_to(self, d: int) -> List[Label]:
        """All basis labels of degree <= d (requires finite fil^d)."""
        raise NotImplementedError

    def fil0_dim(self) -> Optional[int]:
        """dim fil^0 A, or None when infinite."""
        return len(self.labels_up_to(0))

    def generators(self) -> List[Label]:
        """Labels generating A as a unital algebra."""
        raise NotImplementedError

    def word(self, a: Label):
        """a as [(coef, [generator labels in product order])]."""
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    # derived ------------------------------------------------------------
    def mul(self, a: Label, b: Label) -> Vec:
        key = (a, b)
        hit = self._mul.get(key)
        if hit is None:
            hit = self._mul[key] = self._mul_basis(a, b)
        return hit

    def mul_vec(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for a, x in u.items():
            for b, y in v.items():
                vadd(out, self.mul(a, b), x * y)
        return out

    def mul_many(self, *vecs: Vec) -> Vec:
        out = vecs[0]
        for v in vecs[1:]:
            out = self.mul_vec(out, v)
        return out

    def t_vec(self, k: int, v: Vec) -> Vec:
        out: Vec = {}
        for a, x in v.items():
            vadd(out, self.t_gen(k, a), x)
        return out

    def t_act(self, I, a: Label) -> Vec:
        """t^I(a) for a basis label."""
        I = tuple(I)
        key = (I, a)
        hit = self._tact.get(key)
        if hit is not None:
            return hit
        if not any(I):
            out = {a: ONE}
        elif ideg(I) > self.deg(a):
            out = {}
        else:
            k = next(i for i, x in enumerate(I) if x)
            out = self.t_vec(k, self.t_act(isub(I, unit_index(self.n, k)), a))
        self._tact[key] = out
        return out

    def t_act_vec(self, I, v: Vec) -> Vec:
        out: Vec = {}
        for a, x in v.items():
            vadd(out, self.t_act(I, a), x)
        return out

    def x_act(self, x, v: Vec) -> Vec:
        out: Vec = {}
        for I, c in x.items():
            vadd(out, self.t_act_vec(I, v), c)
        return out

    def deg_vec(self, v: Vec) -> int:
        """Filtration degree of a vector: largest |I| with t^I(v) != 0 (-1 for v = 0)."""
        if not v:
            return -1
        top = max(self.deg(a) for a in v)
        for d in range(top, -1, -1):
            for I in indices_of_degree(self.n, d):
                if self.t_act_vec(I, v):
                    return d
        return -1

    def unit_label_vec(self) -> Vec:
        u = self.unit()
        if u is None:
            raise InputError("algebra has no unit")
        return u

    # invariant checks ---------------------------------------------------
    def check_assoc(self, labels) -> Optional[tuple]:
        for a, b, c in iproduct(labels, repeat=3):
            left = self.mul_vec(self.mul(a, b), {c: ONE})
            right = self.mul_vec({a: ONE}, self.mul(b, c))
            if left != right:
                return ("associativity", a, b, c)
        return None

    def xcop_defect(self, I, a: Label, b: Label) -> Vec:
        """t^I(ab) - sum (x_(2) a)(x_(1) b) for x = t^I."""
        lhs = self.t_act_vec(I, self.mul(a, b))
        D = self.deg(a) + self.deg(b)
        rhs: Vec = {}
        for (A, B), c in self.X.coproduct({tuple(I): ONE}, D).items():
            if ideg(B) > self.deg(a) or ideg(A) > self.deg(b):
                continue
            vadd(rhs, self.mul_vec(self.t_act(B, a), self.t_act(A, b)), c)
        return vadd(dict(lhs), rhs, -ONE)

    def check_xcop(self, labels) -> Optional[tuple]:
        for a, b in iproduct(labels, repeat=2):
            top = self.deg(a) + self.deg(b)
            for I in indices_up_to(self.n, top + 1):
                bad = self.xcop_defect(I, a, b)
                if bad:
                    return ("xcop", I, a, b, bad)
        return None

    def check_nilpotent(self, labels) -> Optional[tuple]:
        for a in labels:
            for I in indices_up_to(self.n, self.deg(a) + 1):
                if ideg(I) > self.deg(a) and self.t_act(I, a):
                    return ("annihilator", I, a)
        return None

    def check_unit(self, labels) -> Optional[tuple]:
        u = self.unit()
        if u is None:
            return None
        for a in labels:
            if self.mul_vec(u, {a: ONE}) != {a: ONE} or self.mul_vec({a: ONE}, u) != {a: ONE}:
                return ("unit", a)
        for k in range(self.n):
            if self.t_vec(k, u):
                return ("unit-action", k)
        return None

    def validate(self, D: int = 2) -> "XcopAlgebra":
        """Check the algebra invariants on labels of degree <= D; raise InvalidBase."""
        labels = self.sample_labels(D)
        for check in (self.check_nilpotent, self.check_unit, self.check_assoc, self.check_xcop):
            bad = check(labels)
            if bad is not None:
                raise InvalidBase(f"{bad[0]} fails", detail=repr(bad[1:]))
        return self

    def sample_labels(self, D: int, cap: int = 12) -> List[Label]:
        labels = self.labels_up_to(D)
        return labels[:cap] if len(labels) > cap else labels


# ---------------------------------------------------------------- finite tables

class TableXcop(XcopAlgebra):
    kind = "table"
    finite = True

    def __init__(self, g: LieAlgebra, labels, mult, taction=None, unit=None, name=None):
        super().__init__(g)
        self.labels = list(labels)
        self._index = {l: i for i, l in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InputError("duplicate basis labels")
        self._table = {}
        for (a, b), v in mult.items():
            self._need(a), self._need(b)
            vec = {l: Q(c) for l, c in v.items() if Q(c)}
            for l in vec:
                self._need(l)
            self._table[(a, b)] = vec
        self._act = {}
        for (k, a), v in (taction or {}).items():
            if not 0 <= k < self.n:
                raise InputError(f"t_{k + 1} out of range")
            self._need(a)
            vec = {l: Q(c) for l, c in v.items() if Q(c)}
            for l in vec:
                self._need(l)
            if vec:
                self._act[(k, a)] = vec
        if unit is not None and not isinstance(unit, dict):
            unit = {unit: ONE}
        self._unit = {l: Q(c) for l, c in unit.items()} if unit is not None else None
        self.name = name
        self._deg = {}
        for a in self.labels:
            self._deg[a] = self._compute_deg(a)

    def _need(self, l):
        if l not in self._index:
            raise InputError(f"unknown basis label {l!r}")

    def _compute_deg(self, a):
        level = [{a: ONE}]
        d = 0
        while True:
            level = [w for v in level for k in range(self.n) for w in [self.t_vec(k, v)] if w]
            if not level:
                return d
            d += 1
            if d > len(self.labels):
                raise InvalidBase(f"t-action on {a!r} is not locally nilpotent")

    def _mul_basis(self, a, b):
        return dict(self._table.get((a, b), {}))

    def t_gen(self, k, a):
        return dict(self._act.get((k, a), {}))

    def deg(self, a):
        return self._deg[a]

    def unit(self):
        return dict(self._unit) if self._unit is not None else None

    def labels_up_to(self, d):
        return [l for l in self.labels if self._deg[l] <= d]

    def fil0_dim(self):
        return len(self.labels_up_to(0))

    def generators(self):
        return list(self.labels)

    def word(self, a):
        return [(ONE, [a])]

    def sample_labels(self, D, cap=12):
        return list(self.labels)

    def spec(self):
        return {"kind": "table", "table": self.to_json(), "lie": self.g.to_json()}

    def to_json(self) -> dict:
        enc = _enc_label
        basis = [{"label": enc(l), "degree": self._deg[l]} for l in self.labels]
        mult = [[enc(a), enc(b), [[enc(l), str(c)] for l, c in sorted(v.items(), key=lambda kv: skey(kv[0]))]]
                for (a, b), v in sorted(self._table.items(), key=lambda kv: skey(kv[0])) if v]
        tact = [[k + 1, enc(a), [[enc(l), str(c)] for l, c in sorted(v.items(), key=lambda kv: skey(kv[0]))]]
                for (k, a), v in sorted(self._act.items(), key=lambda kv: skey(kv[0]))]
        if self._unit is None:
            unit = None
        elif len(self._unit) == 1 and next(iter(self._unit.values())) == 1:
            unit = enc(next(iter(self._unit)))
        else:
            unit = [[enc(l), str(c)] for l, c in sorted(self._unit.items(), key=lambda kv: skey(kv[0]))]
        return {"basis": basis, "mult": mult, "taction": tact, "unit": unit}

    @classmethod
    def from_json(cls, data: dict, g: LieAlgebra) -> "TableXcop":
        dec = _dec_label
        try:
            labels = [dec(b["label"]) for b in data["basis"]]
            mult = {}
            for a, b, vec in data.get("mult", []):
                mult[(dec(a), dec(b))] = {dec(l): Q(c) for l, c in vec}
            tact = {}
            for k, a, vec in data.get("taction", []):
                tact[(int(k) - 1, dec(a))] = {dec(l): Q(c) for l, c in vec}
            unit = data.get("unit")
            if isinstance(unit, list) and unit and isinstance(unit[0], list) and len(unit[0]) == 2 \
                    and isinstance(unit[0][1], str):
                unit = {dec(l): Q(c) for l, c in unit}
            elif unit is not None:
                unit = dec(unit)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed algebra table: {exc!r}") from exc
        alg = cls(g, labels, mult, tact, unit)
        declared = {dec(b["label"]): b.get("degree") for b in data["basis"]}
        for l, d in declared.items():
            if d is not None and d != alg.deg(l):
                raise InvalidBase(f"declared degree of {l!r} is {d}, action gives {alg.deg(l)}")
        return alg


def _enc_label(l):
    if isinstance(l, tuple):
        return [_enc_label(x) for x in l]
    return l


def _dec_label(l):
    if isinstance(l, list):
        return tuple(_dec_label(x) for x in l)
    return l


def matrix_algebra(n: int, g: Optional[LieAlgebra] = None) -> TableXcop:
    """End_n with labels (i, j) for E_ij and trivial X-action."""
    g = g or abelian(1)
    labels = [(i, j) for i in range(n) for j in range(n)]
    mult = {((i, j), (k, l)): ({(i, l): ONE} if j == k else {}) for (i, j) in labels for (k, l) in labels}
    unit = {(i, i): ONE for i in range(n)}
    return TableXcop(g, labels, mult, {}, unit, name=f"End_{n}")


def scalar_algebra(g: Optional[LieAlgebra] = None) -> TableXcop:
    """C with basis label "e"."""
    return TableXcop(g or abelian(1), ["e"], {("e", "e"): {"e": ONE}}, {}, "e", name="C")


def null_algebra(g: Optional[LieAlgebra] = None) -> TableXcop:
    """span{z} with z z = 0."""
    return TableXcop(g or abelian(1), ["z"], {}, {}, None, name="null")


def poly_trivial(g: LieAlgebra, top: int) -> TableXcop:
    """C[x]/(x^{top+1}) with trivial action; labels are exponents."""
    labels = list(range(top + 1))
    mult = {(a, b): ({a + b: ONE} if a + b <= top else {}) for a in labels for b in labels}
    return TableXcop(g, labels, mult, {}, 0, name=f"C[x]/(x^{top + 1})")


# ---------------------------------------------------------------- H^op and U(g^op)/(1-c)

class HopXcop(XcopAlgebra):
    """H^op with t^A(d^(I)) = d^(I-A), i.e. x(h) = <x, h_(1)> h_(2).

    Labels are multi-indices; a o b = b a in H.
    """

    kind = "hop"

    def _mul_basis(self, a, b):
        return dict(self.H.basis_mul(b, a))

    def t_gen(self, k, a):
        if a[k]:
            return {isub(a, unit_index(self.n, k)): ONE}
        return {}

    def t_act(self, I, a):
        I = tuple(I)
        if all(x <= y for x, y in zip(I, a)):
            return {isub(a, I): ONE}
        return {}

    def deg(self, a):
        return ideg(a)

    def unit(self):
        return {zero_index(self.n): ONE}

    def labels_up_to(self, d):
        return indices_up_to(self.n, d)

    def fil0_dim(self):
        return 1

    def generators(self):
        return [unit_index(self.n, k) for k in range(self.n)]

    def word(self, a):
        letters = []
        for k in reversed(range(self.n)):
            letters += [unit_index(self.n, k)] * a[k]
        scale = ONE
        for x in a:
            scale /= factorial(x)
        return [(scale, letters)]

    def spec(self):
        return {"kind": "hop", "lie": self.g.to_json()}


class CentralQuotXcop(HopXcop):
    """U(g^op extended by phi)/(1 - c), labels are c-free multi-indices.

    Brackets: [d'_i, d'_j] = -[d_i, d_j] + phi(d_i, d_j).  For phi = 0 this is H^op.
    The X-action ignores the central direction.
    """

    kind = "centralquot"

    def __init__(self, g: LieAlgebra, phi: Cocycle):
        super().__init__(g)
        self.phi = phi
        neg = Cocycle({k: -v for k, v in phi.phi.items()})
        self.L = central_extension(g, neg)
        self.HL = uea(self.L)

    def _mul_basis(self, a, b):
        out = {}
        for K, c in self.HL.basis_mul(b + (0,), a + (0,)).items():
            vadd(out, {K[:-1]: c / factorial(K[-1])})
        return out

    def spec(self):
        return {"kind": "centralquot", "lie": self.g.to_json(), "cocycle": self.phi.to_json()}


# ---------------------------------------------------------------- End_n (x) B and extensions

class TensorEnd(XcopAlgebra):
    """End_n (x) B with labels (i, j, b)."""

    kind = "tensorend"

    def __init__(self, n: int, base: XcopAlgebra):
        super().__init__(base.g)
        if n < 1:
            raise InputError("matrix size must be >= 1")
        self.size = n
        self.base = base
        self.finite = base.finite

    def _mul_basis(self, a, b):
        i, j, x = a
        k, l, y = b
        if j != k:
            return {}
        return {(i, l, z): c for z, c in self.base.mul(x, y).items()}

    def t_gen(self, k, a):
        i, j, x = a
        return {(i, j, z): c for z, c in self.base.t_gen(k, x).items()}

    def t_act(self, I, a):
        i, j, x = a
        return {(i, j, z): c for z, c in self.base.t_act(I, x).items()}

    def deg(self, a):
        return self.base.deg(a[2])

    def unit(self):
        u = self.base.unit()
        if u is None:
            return None
        return {(i, i, z): c for i in range(self.size) for z, c in u.items()}

    def labels_up_to(self, d):
        return [(i, j, z) for z in self.base.labels_up_to(d) for i in range(self.size) for j in range(self.size)]

    def fil0_dim(self):
        f = self.base.fil0_dim()
        return None if f is None else f * self.size ** 2

    def generators(self):
        u = self.base.unit()
        if u is None or len(u) != 1:
            raise InputError("generators need a basis-label unit in the base")
        one = next(iter(u))
        gens = [(i, j, one) for i in range(self.size) for j in range(self.size)]
        gens += [(0, 0, z) for z in self.base.generators()]
        return gens

    def spec(self):
        return {"kind": "tensorend", "n": self.size, "base": self.base.spec()}


class ExtendedXcop(XcopAlgebra):
    """A base algebra over U(h), h = span{d_i : i in embed}, viewed over U(g).

    t_k for k outside embed acts as zero.
    """

    kind = "extended"

    def __init__(self, base: XcopAlgebra, g: LieAlgebra, embed):
        super().__init__(g)
        self.embed = sorted(embed)
        if len(self.embed) != base.n:
            raise InputError("embedding size does not match the base algebra")
        if g.restrict(self.embed) != base.g:
            raise InputError("embedded indices do not reproduce the base Lie algebra")
        self.base = base
        self.finite = base.finite
        self._pos = {k: i for i, k in enumerate(self.embed)}

    def _mul_basis(self, a, b):
        return self.base.mul(a, b)

    def t_gen(self, k, a):
        p = self._pos.get(k)
        return {} if p is None else self.base.t_gen(p, a)

    def t_act(self, I, a):
        if any(I[k] for k in range(self.n) if k not in self._pos):
            return {}
        return self.base.t_act(tuple(I[k] for k in self.embed), a)

    def deg(self, a):
        return self.base.deg(a)

    def unit(self):
        return self.base.unit()

    def labels_up_to(self, d):
        return self.base.labels_up_to(d)

    def fil0_dim(self):
        return self.base.fil0_dim()

    def generators(self):
        return self.base.generators()

    def word(self, a):
        return self.base.word(a)

    def spec(self):
        return {"kind": "extended", "lie": self.g.to_json(), "embed": [k + 1 for k in self.embed],
                "base": self.base.spec()}


# ---------------------------------------------------------------- Weyl and polynomial models

class WeylXcop(XcopAlgebra):
    """A_1 = <x, y | xy - yx = 1> over abelian dim 2, labels (a, b) = x^a y^b.

    t_1 = d/dx, t_2 = d/dy.
    """

    kind = "weyl"

    def __init__(self):
        super().__init__(abelian(2))

    def _mul_basis(self, p, q):
        a, b = p
        c, d = q
        out = {}
        for k in range(min(b, c) + 1):
            coef = (-1) ** k * factorial(k) * comb(b, k) * comb(c, k)
            vadd(out, {(a + c - k, b + d - k): Fraction(coef)})
        return out

    def t_gen(self, k, p):
        a, b = p
        if k == 0:
            return {(a - 1, b): Fraction(a)} if a else {}
        return {(a, b - 1): Fraction(b)} if b else {}

    def deg(self, p):
        return p[0] + p[1]

    def unit(self):
        return {(0, 0): ONE}

    def labels_up_to(self, d):
        return [(a, s - a) for s in range(d + 1) for a in range(s, -1, -1)]

    def fil0_dim(self):
        return 1

    def generators(self):
        return [(1, 0), (0, 1)]

    def word(self, p):
        return [(ONE, [(1, 0)] * p[0] + [(0, 1)] * p[1])]

    def spec(self):
        return {"kind": "weyl"}


class PolyDiffXcop(XcopAlgebra):
    """C[x, y] over abelian dim 3 with t_1 = d/dx and t_2 = t_3 = 0; labels (a, b)."""

    kind = "polydiff"

    def __init__(self):
        super().__init__(abelian(3))

    def _mul_basis(self, p, q):
        return {(p[0] + q[0], p[1] + q[1]): ONE}

    def t_gen(self, k, p):
        if k == 0 and p[0]:
            return {(p[0] - 1, p[1]): Fraction(p[0])}
        return {}

    def deg(self, p):
        return p[0]

    def unit(self):
        return {(0, 0): ONE}

    def labels_up_to(self, d, cap: Optional[int] = None):
        if cap is None:
            raise NotSmall("fil^0 = C[y] is infinite-dimensional", fil0="infinite")
        return [(a, b) for a in range(d + 1) for b in range(cap + 1)]

    def fil0_dim(self):
        return None

    def sample_labels(self, D, cap=12):
        return self.labels_up_to(D, 2)

    def generators(self):
        return [(1, 0), (0, 1)]

    def word(self, p):
        return [(ONE, [(1, 0)] * p[0] + [(0, 1)] * p[1])]

    def spec(self):
        return {"kind": "polydiff"}


# ---------------------------------------------------------------- builders

def hop_xcop(g: LieAlgebra) -> HopXcop:
    return HopXcop(g)


def central_quotient(g: LieAlgebra, phi: Cocycle) -> CentralQuotXcop:
    return CentralQuotXcop(g, phi)


def from_spec(data: dict) -> XcopAlgebra:
    kind = data.get("kind")
    if kind == "table":
        return TableXcop.from_json(data["table"], LieAlgebra.from_json(data["lie"]))
    if kind == "hop":
        return HopXcop(LieAlgebra.from_json(data["lie"]))
    if kind == "centralquot":
        return CentralQuotXcop(LieAlgebra.from_json(data["lie"]), Cocycle.from_json(data["cocycle"]))
    if kind == "tensorend":
        return TensorEnd(int(data["n"]), from_spec(data["base"]))
    if kind == "extended":
        return ExtendedXcop(from_spec(data["base"]), LieAlgebra.from_json(data["lie"]),
                            [int(k) - 1 for k in data["embed"]])
    if kind == "weyl":
        return WeylXcop()
    if kind == "polydiff":
        return PolyDiffXcop()
    raise InputError(f"unknown algebra kind {kind!r}")

