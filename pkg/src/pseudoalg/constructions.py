"""Concrete pseudoalgebras: Cur, current extensions, Dif, Cend_n, Cend_n^phi,
rank-1 classification and conformal n-products."""

from typing import Dict, Optional, Sequence

from .errors import InputError, NotSubalgebra, WrongBase
from .lie import Cocycle, LieAlgebra, abelian, cocycle_defect, is_subalgebra_span
from .pseudo import (DifAlgebra, Parts, PElt, PseudoAlgebra, TabularAlgebra, assemble, h_act,
                     parts_clean, xprod)
from .scalars import ONE, ZERO, indices_up_to, sub_indices, vadd, zero_index
from .xcop import (CentralQuotXcop, ExtendedXcop, HopXcop, TableXcop, TensorEnd, XcopAlgebra,
                   matrix_algebra, scalar_algebra)


class CurAlgebra(DifAlgebra):
    """Cur A: a_x b = eps(x) ab on generators."""

    kind = "cur"

    def spec(self):
        return {"kind": "cur", "base": self.A.spec(), "name": self.name}


def cur(A: XcopAlgebra, g: Optional[LieAlgebra] = None) -> CurAlgebra:
    """Current pseudoalgebra over an ordinary algebra A (a table with trivial action)."""
    if not isinstance(A, TableXcop):
        raise InputError("cur expects a finite table algebra")
    if A._act:
        raise InputError("cur expects an ordinary algebra (trivial X-action)")
    g = g or A.g
    if g != A.g:
        A = TableXcop(g, A.labels, A._table, {}, A.unit(), name=A.name)
    return CurAlgebra(A, name=f"Cur {A.name}" if A.name else "Cur")


def dif(A: XcopAlgebra, D: int = 2, check: bool = True) -> DifAlgebra:
    """Dif A; the invariants of A are checked up to degree D first."""
    if check:
        A.validate(D)
    return DifAlgebra(A, name=f"Dif {getattr(A, 'name', None) or A.kind}")


def current_extension(R: PseudoAlgebra, g: LieAlgebra, embed: Sequence[int]) -> PseudoAlgebra:
    """Cur^H_{H'} R for H' = U(span{d_k : k in embed}), embed 0-based."""
    embed = sorted(embed)
    if not is_subalgebra_span(g, embed):
        raise NotSubalgebra(f"span of {[k + 1 for k in embed]} is not a subalgebra")
    if isinstance(R, DifAlgebra):
        base = ExtendedXcop(R.A, g, embed)
        cls = CurAlgebra if isinstance(R, CurAlgebra) else DifAlgebra
        return cls(base, name=f"Cur^H {R.name or R.kind}")
    if isinstance(R, TabularAlgebra):
        if g.restrict(embed) != R.g:
            raise InputError("embedded indices do not reproduce the inner Lie algebra")

        def lift(I):
            out = [0] * g.dim
            for k, x in zip(embed, I):
                out[k] = x
            return tuple(out)

        table = {}
        for key, parts in R.xtable.items():
            table[key] = {lift(I): {(lift(P), l): c for (P, l), c in v.items()} for I, v in parts.items()}
        return TabularAlgebra(g, R.generators, table)
    raise InputError(f"cannot extend a {R.kind} pseudoalgebra")


# ---------------------------------------------------------------- Cend_n

class CendTensor(PseudoAlgebra):
    """Cend_n on V = H^n in the tensor picture.

    Generators (J, i, j) stand for 1 (x) d^(J) (x) E_ij, with
    (1 (x) d^(J) (x) A) * (1 (x) d^(K) (x) B)
      = sum_{J1 + J2 = J} (1 (x) d^(J1)) (x)_H (1 (x) d^(K) d^(J2) (x) AB).
    """

    kind = "cend"

    def __init__(self, n: int, g: LieAlgebra):
        super().__init__(g)
        if n < 1:
            raise InputError("matrix size must be >= 1")
        self.size = n
        self.name = f"Cend_{n}"

    def _gen_table(self, a, b):
        J, i, j = a
        K, k, l = b
        out: Parts = {}
        if j != k:
            return out
        z = zero_index(self.H.n)
        for J1, J2 in sub_indices(J):
            c = {(z, (M, i, l)): v for M, v in self.H.basis_mul(K, J2).items()}
            assemble(self.H, {(z, J1): ONE}, c, out)
        return out

    def has_label(self, l):
        return (isinstance(l, tuple) and len(l) == 3 and isinstance(l[0], tuple)
                and len(l[0]) == self.H.n and 0 <= l[1] < self.size and 0 <= l[2] < self.size)

    def gen_labels(self, d):
        return [(J, i, j) for J in indices_up_to(self.H.n, d) for i in range(self.size) for j in range(self.size)]

    def identity(self) -> PElt:
        z = zero_index(self.H.n)
        return {(z, (z, i, i)): ONE for i in range(self.size)}

    def spec(self):
        return {"kind": "cend", "n": self.size, "lie": self.g.to_json()}


def cend(n: int, g: LieAlgebra) -> DifAlgebra:
    """Cend_n realized as Dif(End_n (x) H^op); labels (i, j, J) for (E_ij (x) d'^(J))~."""
    R = DifAlgebra(TensorEnd(n, HopXcop(g)), name=f"Cend_{n}")
    return R


def cend_tensor(n: int, g: LieAlgebra) -> CendTensor:
    return CendTensor(n, g)


def dif_to_tensor(H, v: PElt) -> PElt:
    """Cend in the Dif picture -> tensor picture: (A (x) d'^(J))~ = sum_{K+L=J} d^(K) (1 (x) d^(L) (x) A)."""
    out: PElt = {}
    for (P, (i, j, J)), c in v.items():
        for K, L in sub_indices(J):
            vadd(out, h_act(H, {P: ONE}, {(K, (L, i, j)): ONE}), c)
    return out


def tensor_to_dif(H, v: PElt) -> PElt:
    """Inverse of dif_to_tensor: 1 (x) d^(J) (x) A = sum_{K+L=J} S(d^(K)) (A (x) d'^(L))~."""
    out: PElt = {}
    z = zero_index(H.n)
    for (P, (J, i, j)), c in v.items():
        for K, L in sub_indices(J):
            term = h_act(H, H.mul({P: ONE}, H.basis_antipode(K)), {(z, (i, j, L)): ONE})
            vadd(out, term, c)
    return out


def cend_phi(n: int, g: LieAlgebra, phi: Cocycle) -> DifAlgebra:
    cocycle_defect(g, phi)
    base = CentralQuotXcop(g, phi)
    return DifAlgebra(TensorEnd(n, base), name=f"Cend_{n}^phi")


def hop_xcop(g: LieAlgebra) -> HopXcop:
    return HopXcop(g)


# ---------------------------------------------------------------- rank one

def rank1_algebra(g: LieAlgebra, alpha: Dict) -> TabularAlgebra:
    """R = He with e * e = alpha (x)_H e, alpha = {(I, J): c} in H (x) H."""
    from .hopf import uea
    H = uea(g)
    out: Parts = {}
    z = zero_index(g.dim)
    assemble(H, dict(alpha), {(z, "e"): ONE}, out)
    return TabularAlgebra(g, ["e"], {("e", "e"): parts_clean(out)})


def _rk1_equations(g: LieAlgebra, Dmax: int):
    """Coefficients of (alpha (x) 1)(Delta (x) id)(alpha) - (1 (x) alpha)(id (x) Delta)(alpha)
    as quadratic forms in the unknowns c_IJ."""
    from .hopf import uea
    H = uea(g)
    idx = indices_up_to(g.dim, Dmax)
    unknowns = [(I, J) for I in idx for J in idx]
    eqs: Dict = {}

    def add(key, pair, c):
        slot = eqs.setdefault(key, {})
        pair = tuple(sorted(pair))
        val = slot.get(pair, ZERO) + c
        if val:
            slot[pair] = val
        else:
            slot.pop(pair, None)

    for u in unknowns:
        I, J = u
        for v in unknowns:
            I2, J2 = v
            # (d^I (x) d^J (x) 1)(d^K (x) d^L (x) d^J2), K + L = I2
            for K, L in sub_indices(I2):
                for A, a in H.basis_mul(I, K).items():
                    for B, b in H.basis_mul(J, L).items():
                        add((A, B, J2), (u, v), a * b)
            # (1 (x) d^I (x) d^J)(d^I2 (x) d^M (x) d^N), M + N = J2
            for M, N in sub_indices(J2):
                for B, b in H.basis_mul(I, M).items():
                    for C, c in H.basis_mul(J, N).items():
                        add((I2, B, C), (v, u), -b * c)
    return unknowns, [e for e in eqs.values() if e]


def rank1_classify(g: LieAlgebra, Dmax: int):
    """Solutions alpha of the rank-one associativity equation with |I|, |J| <= Dmax.

    Returns a list of families; each family maps (I, J) to a sympy expression in
    free parameters.  Unknowns forced to zero by a single-monomial equation are
    eliminated first (top-degree strata), the rest goes to sympy.
    """
    import sympy
    unknowns, eqs = _rk1_equations(g, Dmax)
    zero = set()
    changed = True
    while changed:
        changed = False
        for e in eqs:
            live = {p: c for p, c in e.items() if p[0] not in zero and p[1] not in zero}
            if len(live) == 1:
                (a, b), = live
                if a == b:
                    zero.add(a)
                    changed = True
    syms = {u: sympy.Symbol("c_" + "".join(map(str, u[0])) + "_" + "".join(map(str, u[1])))
            for u in unknowns if u not in zero}
    polys = []
    for e in eqs:
        expr = 0
        for (a, b), c in e.items():
            if a in syms and b in syms:
                expr += sympy.Rational(c.numerator, c.denominator) * syms[a] * syms[b]
        expr = sympy.expand(expr)
        if expr != 0:
            polys.append(expr)
    free = list(syms.values())
    sols = sympy.solve(polys, free, dict=True) if polys else [{}]
    families = []
    for s in sols:
        fam = {}
        for u, sym in syms.items():
            val = sympy.sympify(s.get(sym, sym))
            if val != 0:
                fam[u] = val
        families.append(fam)
    return families


def rank1_check(g: LieAlgebra, alpha: Dict) -> bool:
    """Direct associativity check of a numeric alpha (independent of the solver)."""
    from .hopf import uea
    H = uea(g)
    lhs = {}
    rhs = {}
    for (I, J), c in alpha.items():
        for (I2, J2), c2 in alpha.items():
            for K, L in sub_indices(I2):
                for A, a in H.basis_mul(I, K).items():
                    for B, b in H.basis_mul(J, L).items():
                        vadd(lhs, {(A, B, J2): c * c2 * a * b})
            for M, N in sub_indices(J2):
                for B, b in H.basis_mul(I, M).items():
                    for C, cc in H.basis_mul(J, N).items():
                        vadd(rhs, {(I2, B, C): c * c2 * b * cc})
    return lhs == rhs


# ---------------------------------------------------------------- conformal

def nprod(R: PseudoAlgebra, a: PElt, b: PElt, m: int) -> PElt:
    """a_(m) b = a_{t^m} b for H = C[d]."""
    if R.g.dim != 1 or not R.g.is_abelian():
        raise WrongBase("n-products need H = C[d] (one-dimensional g)")
    if m < 0:
        raise InputError("m must be >= 0")
    return xprod(R, a, b, {(m,): ONE})


def cur_scalar(g: Optional[LieAlgebra] = None) -> CurAlgebra:
    return cur(scalar_algebra(g or abelian(1)))


def cur_matrix(n: int, g: Optional[LieAlgebra] = None) -> CurAlgebra:
    return cur(matrix_algebra(n, g or abelian(1)))
