"""Pseudomodules and their reduction to modules over the base algebra.

A pseudomodule V over R is a left H-module generated by labels with a table
``gen_table(a, m) = {I: a_{t^I} m}``; actions of arbitrary elements follow by
the same sesquilinearity rules as for products.  For R = Dif A a unitary V
is H (x) M for an A-module M, so irreducibility and decomposability questions
reduce to finite-dimensional linear algebra on M.
"""

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import (DimTooLarge, InputError, NotClosed, NotIdempotentAction, ZeroComponentHit)
from .lie import LieAlgebra, abelian
from .linalg import (identity, in_span, inverse, is_zero, kron, mat_add, mat_mul, mat_scale,
                     nullspace, rank, rref, span_basis, unit_matrix, zeros, flatten)
from .pseudo import (DifAlgebra, Parts, PElt, PseudoAlgebra, Report, _eq, _in_c_span, check_assoc,
                     check_locality, check_sesqui, coef_degree, descend_with, fmt_elt, gen,
                     labels_of, parts_clean, parts_support, rule_product, tensor_product)
from .scalars import ONE, ZERO, indices_up_to, skey, vadd, zero_index
from .xcop import HopXcop, TensorEnd, XcopAlgebra

Matrix = List[List[Fraction]]


# ---------------------------------------------------------------- A-modules

class AModule:
    """Finite-dimensional module over an X^cop-differential algebra A."""

    def __init__(self, A: XcopAlgebra, dim: int):
        self.A = A
        self.dim = dim
        self._rho = {}

    def _matrix(self, label) -> Matrix:
        raise NotImplementedError

    def rho(self, label) -> Matrix:
        hit = self._rho.get(label)
        if hit is None:
            hit = self._rho[label] = self._matrix(label)
        return hit

    def rho_vec(self, avec) -> Matrix:
        out = zeros(self.dim, self.dim)
        for l, c in avec.items():
            out = mat_add(out, self.rho(l), c)
        return out

    def act(self, avec, m: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for l, c in avec.items():
            M = self.rho(l)
            for k, x in m.items():
                for i in range(self.dim):
                    if M[i][k]:
                        vadd(out, {i: c * x * M[i][k]})
        return out

    def known(self, label) -> bool:
        try:
            self.rho(label)
        except (NotClosed, KeyError, InputError):
            return False
        return True

    def check(self, labels) -> Optional[tuple]:
        """First failing identity among rho(a)rho(b) = rho(ab) and rho(1) = id, or None."""
        labels = list(labels)
        for a in labels:
            for b in labels:
                ab = self.A.mul(a, b)
                if not all(self.known(l) for l in ab):
                    continue
                if mat_mul(self.rho(a), self.rho(b)) != self.rho_vec(ab):
                    return ("multiplicativity", a, b)
        u = self.A.unit()
        if u is not None and all(self.known(l) for l in u):
            if self.rho_vec(u) != identity(self.dim):
                return ("unitary", u)
        return None

    def generator_labels(self) -> list:
        try:
            return list(self.A.generators())
        except (NotImplementedError, InputError):
            return list(self.A.labels_up_to(1))


class TableModule(AModule):
    """rho given explicitly on a set of labels (other labels raise NotClosed)."""

    def __init__(self, A: XcopAlgebra, dim: int, matrices: Dict):
        super().__init__(A, dim)
        for l, M in matrices.items():
            if len(M) != dim or any(len(r) != dim for r in M):
                raise InputError(f"matrix for {l!r} is not {dim}x{dim}")
        self.matrices = {l: [[Fraction(x) for x in r] for r in M] for l, M in matrices.items()}

    def _matrix(self, label):
        if label not in self.matrices:
            raise NotClosed(f"action of {label!r} unknown")
        return self.matrices[label]

    def generator_labels(self):
        return list(self.matrices)


class WordModule(AModule):
    """rho determined by matrices of algebra generators and A.word."""

    def __init__(self, A: XcopAlgebra, gens: Dict, dim: Optional[int] = None):
        if dim is None:
            dim = len(next(iter(gens.values()))) if gens else 0
        super().__init__(A, dim)
        self.gens = {l: [[Fraction(x) for x in r] for r in M] for l, M in gens.items()}

    def _matrix(self, label):
        out = zeros(self.dim, self.dim)
        for c, letters in self.A.word(label):
            M = identity(self.dim)
            for l in letters:
                if l not in self.gens:
                    raise NotClosed(f"no matrix for generator {l!r}")
                M = mat_mul(M, self.gens[l])
            out = mat_add(out, M, c)
        return out

    def generator_labels(self):
        return list(self.gens)


class TensorEndModule(AModule):
    """C^n (x) U over End_n (x) B: rho(i, j, b) = E_ij (x) rho_U(b)."""

    def __init__(self, A: TensorEnd, U: AModule):
        super().__init__(A, A.size * U.dim)
        self.U = U

    def _matrix(self, label):
        i, j, b = label
        return kron(unit_matrix(self.A.size, i, j), self.U.rho(b))

    def generator_labels(self):
        n = self.A.size
        u = self.A.base.unit()
        one = next(iter(u)) if u and len(u) == 1 else None
        out = [(i, j, one) for i in range(n) for j in range(n)] if one is not None else []
        return out + [(0, 0, b) for b in self.U.generator_labels()]


def zero_amodule(A: XcopAlgebra) -> TableModule:
    return TableModule(A, 0, {})


def direct_sum(M: AModule, N: AModule, labels) -> TableModule:
    d = M.dim + N.dim
    mats = {}
    for l in labels:
        out = zeros(d, d)
        for i, r in enumerate(M.rho(l)):
            out[i][:M.dim] = list(r)
        for i, r in enumerate(N.rho(l)):
            out[M.dim + i][M.dim:] = list(r)
        mats[l] = out
    return TableModule(M.A, d, mats)


# ---------------------------------------------------------------- pseudomodules

class PseudoModule:
    kind = "abstract"

    def __init__(self, R: PseudoAlgebra):
        self.R = R
        self.g = R.g
        self.H = R.H
        self.X = R.X
        self._gt = {}

    def _gen_table(self, a, m) -> Parts:
        raise NotImplementedError

    def has_label(self, m) -> bool:
        raise NotImplementedError

    def gen_labels(self, d: int = 0) -> list:
        raise NotImplementedError

    def gen_table(self, a, m) -> Parts:
        key = (a, m)
        hit = self._gt.get(key)
        if hit is None:
            hit = self._gt[key] = parts_clean(self._gen_table(a, m))
        return hit

    def gen(self, m) -> PElt:
        return gen(self.H, m)

    def check(self, v: PElt) -> PElt:
        for _, m in v:
            if not self.has_label(m):
                raise InputError(f"{m!r} is not a generator of this module")
        return v

    def product(self, a: PElt, v: PElt) -> Parts:
        """Fourier parts {I: a_{t^I} v} of the action."""
        return parts_clean(rule_product(self.H, self.gen_table, a, v))

    action = product

    def product_tensor(self, a: PElt, v: PElt) -> Parts:
        return parts_clean(tensor_product(self.H, self.gen_table, a, v))

    def locality_bound(self, a: PElt, v: PElt) -> int:
        top = max((parts_support(self.gen_table(x, y)) for x in labels_of(a) for y in labels_of(v)),
                  default=-1)
        if top < 0:
            return -1
        return top + coef_degree(a) + coef_degree(v)


class TabularModule(PseudoModule):
    kind = "tabular"

    def __init__(self, R: PseudoAlgebra, generators, xaction: Dict):
        super().__init__(R)
        self.generators = list(generators)
        self._labels = set(self.generators)
        self.xaction = {}
        for (a, m), parts in xaction.items():
            if not R.has_label(a) or m not in self._labels:
                raise InputError(f"action entry for unknown generators {(a, m)!r}")
            for v in parts.values():
                self.check(v)
            self.xaction[(a, m)] = parts_clean({tuple(I): dict(v) for I, v in parts.items()})

    def _gen_table(self, a, m):
        return self.xaction.get((a, m), {})

    def has_label(self, m):
        return m in self._labels

    def gen_labels(self, d=0):
        return list(self.generators)


class RegularModule(PseudoModule):
    """R as a module over itself."""

    kind = "regular"

    def _gen_table(self, a, m):
        return self.R.gen_table(a, m)

    def has_label(self, m):
        return self.R.has_label(m)

    def gen_labels(self, d=0):
        return self.R.gen_labels(d)


class TildeModule(PseudoModule):
    """M~ = H (x) M over Dif A: a~ * m~ = (1 (x) 1) (x)_H sum_I d^(I) (t^I(a) m)~."""

    kind = "tilde"

    def __init__(self, R: DifAlgebra, M: AModule):
        super().__init__(R)
        self.M = M

    def _gen_table(self, a, m):
        out: PElt = {}
        A = self.R.A
        for I in indices_up_to(self.H.n, A.deg(a)):
            ta = A.t_act(I, a)
            if not ta:
                continue
            for k, c in self.M.act(ta, {m: ONE}).items():
                vadd(out, {(I, k): c})
        return {zero_index(self.H.n): out} if out else {}

    def has_label(self, m):
        return isinstance(m, int) and 0 <= m < self.M.dim

    def gen_labels(self, d=0):
        return list(range(self.M.dim))


def tilde_module(A, M: AModule) -> TildeModule:
    R = A if isinstance(A, DifAlgebra) else DifAlgebra(A)
    return TildeModule(R, M)


def verify_module(V: PseudoModule, samples, Dcheck: int, strict: bool = False) -> Report:
    """Locality, sesquilinearity and associativity of the action on (a, b, v) triples."""
    R = V.R
    rep = Report(f"{V.kind} module")
    rep.info["Dcheck"] = Dcheck
    for n, (a, b, v) in enumerate(samples):
        R.check(a), R.check(b), V.check(v)
        tag = str(n)
        check_locality(V.H, V.gen_table, a, v, V.locality_bound(a, v), rep, tag)
        check_sesqui(V.H, V.X, V.gen_table, a, v, Dcheck, rep, tag)
        check_assoc(V.H, V.X, R.gen_table, V.gen_table, a, b, v, Dcheck, rep, tag)
    if strict:
        rep.raise_if_failed()
    return rep


# ---------------------------------------------------------------- Cur C decomposition

def e1(V, e: PElt, v: PElt) -> PElt:
    return V.product(e, v).get(zero_index(V.H.n), {})


def curc_decompose(V: PseudoModule, e: PElt, gens: Optional[Sequence] = None) -> dict:
    """V = V0 (+) V1 with V0 = ker e_1 and V1 = im e_1 (e_1 is H-linear)."""
    gens = list(gens) if gens is not None else [V.gen(m) for m in V.gen_labels()]
    V0, V1 = [], []
    for g in gens:
        p = e1(V, e, g)
        if not _eq(e1(V, e, p), p):
            raise NotIdempotentAction("e_1 is not idempotent on V", generator=fmt_elt(g))
        w = vadd(dict(g), p, -ONE)
        if w and not _in_c_span(w, V0):
            V0.append(w)
        if p and not _in_c_span(p, V1):
            V1.append(p)
    killed = all(not V.product(e, w) for w in V0)
    if not killed:
        raise NotIdempotentAction("e acts nontrivially on ker e_1")
    return {"V0": V0, "V1": V1, "checks": {"e_kills_V0": killed,
                                           "V1_torsion_free": _free_span(V, V1)}}


def _free_span(V, elts: List[PElt], D: int = 2) -> bool:
    """No H-relation sum h_k v_k = 0 with deg h_k <= D among the listed elements."""
    if not elts:
        return True
    cols = []
    for v in elts:
        for I in indices_up_to(V.H.n, D):
            from .pseudo import h_act
            cols.append(h_act(V.H, {I: ONE}, v))
    from .linalg import key_order
    keys = key_order(cols)
    rows = [[c.get(k, ZERO) for c in cols] for k in keys]
    return rank(rows) == len(cols) if rows else False


# ---------------------------------------------------------------- normalization

def normalize_module_generators(V: PseudoModule, e: PElt, gens: Sequence[PElt]) -> List[PElt]:
    """Generators v with e * v = (1 (x) 1) (x)_H v, spanning the same H-module."""
    z = zero_index(V.H.n)
    out: List[PElt] = []
    extra: List[PElt] = []
    queue = [dict(v) for v in gens]
    steps = 0
    while queue:
        steps += 1
        if steps > 500:
            raise NotClosed("module normalization did not stabilize")
        v = queue.pop(0)
        rem, pieces = descend_with(V.H, lambda w: V.product(e, w), v, False)
        if rem:
            p = V.product(e, rem)
            if not p:
                raise ZeroComponentHit("descent reached an element with e * v = 0", element=fmt_elt(rem))
            if set(p) != {z} or not _eq(p[z], rem):
                raise NotClosed("descent remainder is not normalized", element=fmt_elt(rem))
            if not _in_c_span(rem, out):
                out.append(rem)
        for _, vI in pieces:
            r2, more = descend_with(V.H, lambda w: V.product(e, w), vI, False)
            if more:
                queue.append(vI)
            elif r2:
                extra.append(vI)
    for v in extra:
        if not _in_c_span(v, out):
            out.append(v)
    return out


def _eps(v: PElt) -> Dict:
    return {l: c for (P, l), c in v.items() if not any(P)}


def extract_a_module(V: PseudoModule, e: PElt, gens: Optional[Sequence[PElt]] = None,
                     labels: Optional[Sequence] = None) -> TableModule:
    """A-module on V_0 = 1 (x)_H V: a . v = 1 (x)_H (a~_1 v) for normalized v."""
    R = V.R
    if not isinstance(R, DifAlgebra):
        raise InputError("extract_a_module needs a module over Dif A")
    A = R.A
    if gens is None:
        gens = [V.gen(m) for m in V.gen_labels()]
    normal = normalize_module_generators(V, e, gens) if gens else []
    basis = [_eps(v) for v in normal]
    if labels is None:
        labels = _default_labels(A)
    mats = {}
    d = len(basis)
    for a in labels:
        M = zeros(d, d)
        for k, v in enumerate(normal):
            w = _eps(V.product(R.gen(a), v).get(zero_index(V.H.n), {}))
            coeffs = in_span(w, basis) if w else [ZERO] * d
            if coeffs is None:
                raise NotClosed(f"a.v leaves V_0 for a = {a!r}")
            for i, c in enumerate(coeffs):
                M[i][k] = c
        mats[a] = M
    mod = TableModule(A, d, mats)
    mod.normal = normal
    bad = mod.check(labels)
    if bad is not None:
        raise NotClosed(f"extracted action fails {bad[0]}")
    return mod


def _default_labels(A: XcopAlgebra) -> list:
    labels = []
    u = A.unit()
    if u is not None:
        labels += [l for l in u if l not in labels]
    try:
        gens = A.generators()
    except (NotImplementedError, InputError):
        gens = []
    for l in list(gens) + list(A.sample_labels(1)):
        if l not in labels:
            labels.append(l)
    return labels


# ---------------------------------------------------------------- conformal E_n^alpha(U)

def _as_matrix(alpha) -> Matrix:
    if isinstance(alpha, (int, Fraction, str)):
        return [[Fraction(alpha)]]
    return [[Fraction(x) for x in r] for r in alpha]


def m_alpha(n: int, alpha, g: Optional[LieAlgebra] = None):
    """M_n^alpha(U) = C^n (x) U over End_n (x) C[d']: d' acts on U by alpha."""
    g = g or abelian(1)
    if g.dim != 1:
        raise InputError("conformal modules live over H = C[d]")
    a = _as_matrix(alpha)
    base = HopXcop(g)
    U = WordModule(base, {(1,): a}, len(a))
    A = TensorEnd(n, base)
    return TensorEndModule(A, U)


def conformal_module_E(n: int, alpha, U=None) -> TildeModule:
    """E_n^alpha(U) over Cend_n for H = C[d]; alpha is a scalar or an endomorphism of U."""
    if U is not None:
        alpha = U
    M = m_alpha(n, alpha)
    return TildeModule(DifAlgebra(M.A, name=f"Cend_{n}"), M)


# ---------------------------------------------------------------- lattice probe

def image_algebra(mats: List[Matrix], d: int) -> List[Matrix]:
    """Basis of the unital algebra generated by mats."""
    basis: List[Matrix] = []
    vecs: List[Dict] = []

    def add(M):
        v = {i: x for i, x in enumerate(flatten(M)) if x}
        if not v or (vecs and in_span(v, vecs) is not None):
            return False
        vecs.append(v)
        basis.append(M)
        return True

    add(identity(d))
    frontier = [M for M in mats if add(M)]
    gens = [M for M in mats]
    while frontier:
        nxt = []
        for M in frontier:
            for G in gens:
                P = mat_mul(M, G)
                if add(P):
                    nxt.append(P)
        frontier = nxt
    return basis


def trace_radical(basis: List[Matrix]) -> List[Matrix]:
    """{b in span : tr(b c) = 0 for all c in span}; in characteristic 0 this is the Jacobson radical."""
    if not basis:
        return []
    k = len(basis)
    gram = [[sum((mat_mul(basis[i], basis[j])[r][r] for r in range(len(basis[0]))), ZERO)
             for j in range(k)] for i in range(k)]
    out = []
    for v in nullspace(gram, k):
        M = zeros(len(basis[0]), len(basis[0]))
        for c, B in zip(v, basis):
            if c:
                M = mat_add(M, B, c)
        out.append(M)
    return out


def commutant(mats: List[Matrix], d: int) -> List[Matrix]:
    rows = []
    for M in mats:
        for i in range(d):
            for j in range(d):
                # (X M - M X)[i][j] in the unknowns X[p][q]
                row = [ZERO] * (d * d)
                for k in range(d):
                    row[i * d + k] += M[k][j]
                    row[k * d + j] -= M[i][k]
                rows.append(row)
    sols = nullspace(rows, d * d) if rows else nullspace([], d * d)
    return [[v[i * d:(i + 1) * d] for i in range(d)] for v in sols]


def _closure(basis_alg: List[Matrix], vecs: List[List[Fraction]], d: int) -> List[Dict]:
    out = []
    for B in basis_alg:
        for v in vecs:
            w = [sum((B[i][k] * v[k] for k in range(d)), ZERO) for i in range(d)]
            out.append({i: x for i, x in enumerate(w) if x})
    return span_basis([w for w in out if w])


def _key(space: List[Dict], d: int):
    R, _ = rref([[v.get(i, ZERO) for i in range(d)] for v in space], d) if space else ([], ())
    return tuple(tuple(r) for r in R)


def _intersect(U: List[Dict], W: List[Dict], d: int) -> List[Dict]:
    if not U or not W:
        return []
    cols = [[u.get(i, ZERO) for i in range(d)] for u in U] + [[-w.get(i, ZERO) for i in range(d)] for w in W]
    rows = [[c[i] for c in cols] for i in range(d)]
    out = []
    for s in nullspace(rows, len(cols)):
        v: Dict = {}
        for c, u in zip(s[:len(U)], U):
            vadd(v, u, c)
        if v:
            out.append(v)
    return span_basis(out)


def module_lattice_probe(M: AModule, labels: Optional[Sequence] = None, dim_bound: int = 6) -> dict:
    """Submodules found by cyclic generation plus sum/intersection closure, and structural flags.

    Flags come from the image algebra B of M: irreducible iff B = End(M);
    completely reducible iff rad B = 0; indecomposable iff End_B(M) is local.
    """
    d = M.dim
    if d == 0:
        return {"status": "ZeroModule", "dim": 0, "submodules": [], "irreducible": None,
                "indecomposable": None, "completely_reducible": None}
    if d > dim_bound:
        raise DimTooLarge(f"module dimension {d} exceeds bound {dim_bound}", dim=d, bound=dim_bound)
    labels = list(labels) if labels is not None else M.generator_labels()
    mats = [M.rho(l) for l in labels]
    B = image_algebra(mats, d)
    rad = trace_radical(B)
    rad = [X for X in rad if not is_zero(X)]
    C = commutant(mats, d)
    radC = [X for X in trace_radical(C) if not is_zero(X)]
    irreducible = len(B) == d * d
    completely_reducible = not rad
    indecomposable = len(C) - len(radC) == 1
    # socle = common kernel of the radical
    rows = [r for X in rad for r in X]
    socle = nullspace(rows, d) if rows else [list(r) for r in identity(d)]
    seeds = [list(r) for r in identity(d)] + socle
    found = {}
    for v in seeds:
        S = _closure(B, [v], d)
        found.setdefault(_key(S, d), S)
    changed = True
    while changed and len(found) < 256:
        changed = False
        spaces = list(found.values())
        for U in spaces:
            for W in spaces:
                for S in (span_basis(U + W), _intersect(U, W, d)):
                    k = _key(S, d)
                    if k not in found:
                        found[k] = S
                        changed = True
    proper = [S for S in found.values() if 0 < len(S) < d]
    proper.sort(key=lambda S: (len(S), skey(_key(S, d))))
    return {
        "status": "ok",
        "dim": d,
        "submodules": [[[str(v.get(i, ZERO)) for i in range(d)] for v in S] for S in proper],
        "proper_nonzero_found": len(proper),
        "irreducible": irreducible,
        "indecomposable": indecomposable,
        "completely_reducible": completely_reducible,
        "image_algebra_dim": len(B),
        "radical_dim": len(rad),
        "commutant_dim": len(C),
    }


def probe_pseudomodule(V: PseudoModule, e: PElt, dim_bound: int = 6, labels=None) -> dict:
    """Lattice report for a unitary module over Dif A via its base A-module."""
    M = extract_a_module(V, e, labels=labels)
    rep = module_lattice_probe(M, labels, dim_bound)
    if M.dim and rep["status"] == "ok":
        lifted = []
        for S in rep["submodules"]:
            gens = []
            for vec in S:
                v: PElt = {}
                for k, c in enumerate(vec):
                    vadd(v, M.normal[k], Fraction(c))
                gens.append(fmt_elt(v))
            lifted.append(gens)
        rep["pseudo_submodules"] = lifted
    return rep


# ---------------------------------------------------------------- random representations

def _rand_conj(rng: random.Random, d: int) -> Matrix:
    while True:
        P = [[Fraction(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)]
        if inverse(P) is not None:
            return P


def random_hop_rep(g: LieAlgebra, rng: random.Random) -> WordModule:
    """A finite-dimensional module over H^op = U(g^op), conjugated by a random matrix.

    Uses rho(d'_i) with [rho(d'_i), rho(d'_j)] = -rho([d_i, d_j]).
    """
    from .lie import heisenberg, nonabelian2
    base = HopXcop(g)
    n = g.dim
    if g.is_abelian():
        d = 2
        T = [[Fraction(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)]
        gens = [mat_add(mat_scale(T, rng.randint(-2, 2)), identity(d), rng.randint(-2, 2)) for _ in range(n)]
    elif g == nonabelian2():
        p = Fraction(rng.randint(-3, 3))
        gens = [[[p, ZERO], [ZERO, p + 1]], unit_matrix(2, 0, 1)]
    elif g == heisenberg():
        P, Qm = unit_matrix(3, 0, 1), unit_matrix(3, 1, 2)
        Z = mat_scale(mat_add(mat_mul(P, Qm), mat_mul(Qm, P), -1), -1)
        gens = [P, Qm, Z]
    else:
        raise InputError("random representations are provided for the test zoo only")
    d = len(gens[0])
    S = _rand_conj(rng, d)
    Si = inverse(S)
    gens = [mat_mul(mat_mul(S, G), Si) for G in gens]
    from .scalars import unit_index
    return WordModule(base, {unit_index(n, k): G for k, G in enumerate(gens)}, d)
