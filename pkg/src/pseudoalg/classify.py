"""Small X^cop-algebras: filtration, smallness, ideal closures and the
recognizer for simple small algebras (types star, starstar, starstarstar).

Vectors over an algebra are dicts {label: Fraction}.  Everything below works
inside the finite window span(labels_up_to(D)); answers that depend on that
window are reported as evidence.
"""

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .constructions import CurAlgebra
from .errors import (ConditionFailure, ModelMismatch, NoFirstComponent, NotSimpleEvidence, NotSmall,
                     NotSimpleZeroComponent, NotSubalgebra, ZeroComponentNotMatrix)
from .lie import Cocycle, LieAlgebra, is_subalgebra_span
from .linalg import dense, in_span, key_order, nullspace, rank, solve, span_basis
from .pseudo import DifAlgebra
from .scalars import ONE, ZERO, indices_of_degree, skey, vadd, vscale
from .xcop import CentralQuotXcop, ExtendedXcop, HopXcop, TableXcop, TensorEnd, XcopAlgebra

Vec = Dict


# ---------------------------------------------------------------- filtration

def _t_multi(A: XcopAlgebra, I, v: Vec) -> Vec:
    return A.t_act_vec(I, v)


def fil_basis(A: XcopAlgebra, m: int, D: Optional[int] = None) -> List[Vec]:
    """Basis of fil^m A = {a : t^I(a) = 0 for |I| > m} inside span(labels_up_to(D))."""
    D = m if D is None else D
    labels = A.labels_up_to(D)
    cols = []
    for l in labels:
        col = {}
        for I in indices_of_degree(A.n, m + 1):
            for k, c in A.t_act(I, l).items():
                col[(I, k)] = c
        cols.append(col)
    keys = key_order(cols)
    rows = [[c.get(k, ZERO) for c in cols] for k in keys]
    out = []
    for v in nullspace(rows, len(labels)):
        out.append({l: c for l, c in zip(labels, v) if c})
    return span_basis(out)


def a_filtration(A: XcopAlgebra, Dmax: int) -> dict:
    """dim fil^m A for m <= Dmax, degrees of basis labels, and the two filtration checks."""
    try:
        A.labels_up_to(0)
    except NotSmall:
        return {"dims": None, "fil0": "infinite", "degrees": {}, "nested": None, "subadditive": None}
    dims = []
    prev = None
    nested = True
    for m in range(Dmax + 1):
        B = fil_basis(A, m, Dmax)
        dims.append(len(B))
        if prev is not None:
            nested = nested and all(in_span(v, B) is not None for v in prev)
        prev = B
    labels = A.labels_up_to(Dmax)
    degrees = {repr(l): A.deg(l) for l in labels}
    sub = True
    for a in labels:
        for b in labels:
            if A.deg(a) + A.deg(b) <= Dmax:
                sub = sub and A.deg_vec(A.mul(a, b)) <= A.deg(a) + A.deg(b)
    return {"dims": dims, "fil0": dims[0], "degrees": degrees, "nested": nested, "subadditive": sub}


def is_small(A: XcopAlgebra, Dmax: int = 3) -> dict:
    """Smallness; a finite fil^0 makes every fil^m finite, so that case is proof-backed."""
    f0 = A.fil0_dim()
    if f0 is None:
        return {"small": False, "fil0": "infinite", "dims": None, "basis": "proof"}
    try:
        dims = [len(fil_basis(A, m, Dmax)) for m in range(Dmax + 1)]
    except NotSmall:
        return {"small": False, "fil0": "infinite", "dims": None, "basis": "proof"}
    return {"small": True, "fil0": f0, "dims": dims, "basis": "proof" if not A.finite else "finite"}


def degprop_check(A: XcopAlgebra, Dmax: int) -> dict:
    """deg a = m implies t^M(a) in fil^0 for |M| = m, and exactly one such M is nonzero."""
    unique = True
    lands = True
    for l in A.labels_up_to(Dmax):
        m = A.deg(l)
        hits = [M for M in indices_of_degree(A.n, m) if A.t_act(M, l)]
        lands = lands and all(A.deg_vec(A.t_act(M, l)) <= 0 for M in hits)
        unique = unique and len(hits) == 1
    return {"lands_in_fil0": lands, "unique_top": unique}


# ---------------------------------------------------------------- ideals

class _Echelon:
    """Incrementally reduced sparse basis."""

    def __init__(self):
        self.rows = {}  # pivot key -> row with coefficient 1 at the pivot

    def reduce(self, v: Vec) -> Vec:
        v = dict(v)
        for p, row in self.rows.items():
            c = v.get(p)
            if c:
                vadd(v, row, -c)
        return v

    def add(self, v: Vec) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = min(v, key=skey)
        v = vscale(v, 1 / v[p])
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                vadd(row, v, -c)
        self.rows[p] = v
        return True

    def __contains__(self, v):
        return not self.reduce(v)

    def basis(self):
        return list(self.rows.values())


def ideal_closure(A: XcopAlgebra, seeds: Sequence[Vec], Dmax: int, max_rounds: int = 12) -> dict:
    """X^cop-stable two-sided ideal generated by seeds, explored through degree Dmax.

    Once the unit is reached the ideal is all of A and the search stops.
    """
    mults = A.labels_up_to(Dmax)
    unit = A.unit()
    E = _Echelon()
    for s in seeds:
        E.add(s)
    frontier = E.basis()
    rounds = 0
    has_unit = unit is not None and unit in E
    while frontier and not has_unit and rounds < max_rounds:
        rounds += 1
        new = []
        for v in frontier:
            if A.deg_vec(v) > Dmax:
                continue
            cand = [A.t_vec(k, v) for k in range(A.n)]
            cand += [A.mul_vec({l: ONE}, v) for l in mults]
            cand += [A.mul_vec(v, {l: ONE}) for l in mults]
            for w in cand:
                if w and E.add(w):
                    new.append(w)
        frontier = new
        has_unit = unit is not None and unit in E
    covered = []
    for m in range(Dmax + 1):
        if has_unit:
            covered.append(True)
            continue
        try:
            F = fil_basis(A, m, Dmax)
        except NotSmall:
            break
        covered.append(all(v in E for v in F))
    return {"basis": E.basis(), "dim": len(E.rows), "contains_unit": has_unit, "covers_fil": covered,
            "simplicity_evidence": has_unit, "rounds": rounds}


# ---------------------------------------------------------------- fil^0 as End_n

def _sub_mul(A, x: Vec, y: Vec) -> Vec:
    return A.mul_vec(x, y)


def _coords(v: Vec, basis: List[Vec]):
    c = in_span(v, basis) if v else [ZERO] * len(basis)
    if c is None:
        raise NotSimpleZeroComponent("fil^0 is not closed under multiplication")
    return c


def _minpoly_roots(A, x: Vec, basis: List[Vec]):
    """Rational roots of the minimal polynomial of left multiplication by x, and its degree."""
    import sympy
    d = len(basis)
    L = [[ZERO] * d for _ in range(d)]
    for j, b in enumerate(basis):
        for i, c in enumerate(_coords(_sub_mul(A, x, b), basis)):
            L[i][j] = c
    M = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in L])
    lam = sympy.Symbol("lam")
    p = sympy.Poly(M.charpoly(lam).as_expr(), lam)
    sqf = sympy.Poly(sympy.quo(p.as_expr(), sympy.gcd(p.as_expr(), sympy.diff(p.as_expr(), lam))), lam)
    roots = [r for r in sympy.roots(sqf, filter="Q")]
    return [Fraction(int(r.p), int(r.q)) for r in roots], sqf.degree()


def matrix_units(A: XcopAlgebra, basis: List[Vec], seed: int = 0):
    """Matrix units {(i, j): vec} of fil^0 = span(basis) if it is End_n over Q."""
    d = len(basis)
    n = int(round(d ** 0.5))
    if n * n != d or d == 0:
        raise ZeroComponentNotMatrix(f"dim fil^0 = {d} is not a square")
    unit = A.unit()
    if unit is None:
        raise ZeroComponentNotMatrix("algebra has no unit")
    # center must be C
    cen_cols = []
    for z in basis:
        col = {}
        for k, b in enumerate(basis):
            comm = vadd(_sub_mul(A, z, b), _sub_mul(A, b, z), -ONE)
            for key, c in comm.items():
                col[(k, key)] = c
        cen_cols.append(col)
    keys = key_order(cen_cols)
    rows = [[c.get(k, ZERO) for c in cen_cols] for k in keys]
    center_dim = len(nullspace(rows, d)) if rows else d
    if center_dim != 1:
        raise NotSimpleZeroComponent(f"center of fil^0 has dimension {center_dim}")
    # trace form of the regular representation
    Ls = []
    for x in basis:
        L = [[ZERO] * d for _ in range(d)]
        for j, b in enumerate(basis):
            for i, c in enumerate(_coords(_sub_mul(A, x, b), basis)):
                L[i][j] = c
        Ls.append(L)
    gram = [[sum((sum((Ls[i][r][s] * Ls[j][s][r] for s in range(d)), ZERO) for r in range(d)), ZERO)
             for j in range(d)] for i in range(d)]
    if rank(gram) != d:
        raise NotSimpleZeroComponent("trace form of fil^0 is degenerate")
    if n == 1:
        return 1, {(0, 0): dict(unit)}
    rng = random.Random(seed)
    cands = list(basis) + [None] * 40
    for x in cands:
        if x is None:
            x = {}
            for b in basis:
                vadd(x, b, rng.randint(-3, 3))
        if not x:
            continue
        roots, deg = _minpoly_roots(A, x, basis)
        if deg == n and len(roots) == n:
            break
    else:
        raise NotSimpleZeroComponent("no splitting element found over Q")
    idem = []
    for lam in roots:
        e = dict(unit)
        for mu in roots:
            if mu != lam:
                f = vadd(dict(x), unit, -mu)
                e = vscale(_sub_mul(A, e, f), 1 / (lam - mu))
        idem.append(e)
    units = {(0, 0): idem[0]}
    for j in range(1, n):
        u = next((w for b in basis for w in [_sub_mul(A, _sub_mul(A, idem[0], b), idem[j])] if w), None)
        v = next((w for b in basis for w in [_sub_mul(A, _sub_mul(A, idem[j], b), idem[0])] if w), None)
        if u is None or v is None:
            raise NotSimpleZeroComponent("idempotents are not connected")
        found = in_span(_sub_mul(A, u, v), [idem[0]])
        alpha = found[0] if found is not None else ZERO
        if not alpha:
            raise NotSimpleZeroComponent("matrix-unit construction failed")
        units[(0, j)] = u
        units[(j, 0)] = vscale(v, 1 / alpha)
    for i in range(1, n):
        for j in range(n):
            if j == 0:
                continue
            units[(i, j)] = _sub_mul(A, units[(i, 0)], units[(0, j)])
    return n, units


# ---------------------------------------------------------------- current subalgebra

def max_current_subalgebra(R: DifAlgebra, D: int = 0) -> dict:
    """Cur(fil^0 A) inside R = Dif A, with the embedding of its basis."""
    A = R.A
    F = fil_basis(A, 0, max(D, 0))
    labels = list(range(len(F)))
    mult = {}
    for i, x in enumerate(F):
        for j, y in enumerate(F):
            c = _coords(A.mul_vec(x, y), F)
            mult[(i, j)] = {k: v for k, v in enumerate(c) if v}
    unit = A.unit()
    uc = None
    if unit is not None:
        cu = in_span(unit, F)
        uc = {k: v for k, v in enumerate(cu) if v} if cu is not None else None
    base = TableXcop(A.g, labels, mult, {}, uc, name="fil^0")
    C = CurAlgebra(base, name="Cur fil^0")
    same_e = uc is not None
    return {"algebra": C, "embedding": F, "same_pseudoidentity": same_e}


# ---------------------------------------------------------------- condition basis

def _solve_unit(A, fil0: List[Vec], y: Vec, unit: Vec):
    """sum_k s1_k y s2_k = 1 with s1, s2 from a fil^0 basis; returns the coefficient pairs."""
    pairs = [(p, q) for p in range(len(fil0)) for q in range(len(fil0))]
    cols = [A.mul_vec(A.mul_vec(fil0[p], y), fil0[q]) for p, q in pairs]
    keys = key_order(cols + [unit])
    rows = [[c.get(k, ZERO) for c in cols] for k in keys]
    sol = solve(rows, dense(unit, keys), len(cols))
    if sol is None:
        return None
    return [(pairs[i], c) for i, c in enumerate(sol) if c]


def condition_basis(A: XcopAlgebra, D: int = 2) -> dict:
    """Elements b_i with t_j(b_i) = delta_ij generating fil^1 over fil^0, with [b_i, fil^0] = 0."""
    unit = A.unit()
    if unit is None:
        raise ConditionFailure("algebra has no unit")
    F0 = fil_basis(A, 0, max(D, 1))
    F1 = fil_basis(A, 1, max(D, 1))
    matrix_units(A, F0)
    if len(F1) == len(F0):
        raise NoFirstComponent("fil^1 A = fil^0 A: no first component")
    chosen: List[int] = []
    bprime: List[Vec] = []
    N = list(F1)
    for k in range(A.n):
        img = [A.t_vec(k, v) for v in N]
        pick = next((v for v, w in zip(N, img) if w), None)
        if pick is None:
            continue
        y = A.t_vec(k, pick)
        sol = _solve_unit(A, F0, y, unit)
        if sol is None:
            raise ConditionFailure(f"t_{k + 1}(b) cannot be normalized to 1")
        b: Vec = {}
        for (p, q), c in sol:
            vadd(b, A.mul_vec(A.mul_vec(F0[p], pick), F0[q]), c)
        chosen.append(k)
        bprime.append(b)
        # N <- N intersect ker t_k
        cols = [A.t_vec(k, v) for v in N]
        keys = key_order(cols)
        rows = [[c.get(kk, ZERO) for c in cols] for kk in keys]
        ker = nullspace(rows, len(N)) if rows else [[Fraction(int(i == j)) for j in range(len(N))]
                                                     for i in range(len(N))]
        N = span_basis([_comb(N, v) for v in ker])
    r = len(chosen)
    # b_i = b'_i - sum_{j > i} t_j(b'_i) b_j
    bs: List[Optional[Vec]] = [None] * r
    for i in reversed(range(r)):
        b = dict(bprime[i])
        for j in range(i + 1, r):
            vadd(b, A.mul_vec(A.t_vec(chosen[j], bprime[i]), bs[j]), -ONE)
        bs[i] = b
    for i in range(r):
        for j in range(r):
            want = dict(unit) if i == j else {}
            if A.t_vec(chosen[j], bs[i]) != want:
                raise ConditionFailure("t_j(b_i) != delta_ij after descent")
    if len(F1) != len(F0) * (1 + r):
        raise ConditionFailure("fil^1 is not generated by 1 and the b_i over fil^0")
    # remove the inner part of ad b_i on fil^0
    for i in range(r):
        cols = []
        for c in F0:
            col = {}
            for s_idx, s in enumerate(F0):
                comm = vadd(A.mul_vec(c, s), A.mul_vec(s, c), -ONE)
                for key, v in comm.items():
                    col[(s_idx, key)] = v
            cols.append(col)
        target = {}
        for s_idx, s in enumerate(F0):
            comm = vadd(A.mul_vec(bs[i], s), A.mul_vec(s, bs[i]), -ONE)
            for key, v in comm.items():
                target[(s_idx, key)] = v
        keys = key_order(cols + [target])
        rows = [[c.get(k, ZERO) for c in cols] for k in keys]
        sol = solve(rows, dense(target, keys), len(cols)) if keys else [ZERO] * len(cols)
        if sol is None:
            raise ConditionFailure("ad b_i is not inner on fil^0")
        for c, f in zip(sol, F0):
            vadd(bs[i], f, -c)
    others = [k for k in range(A.n) if k not in chosen]
    tk_zero = all(not A.t_vec(k, {l: ONE}) for k in others for l in A.labels_up_to(D))
    return {"indices": chosen, "b": bs, "r": r, "fil0": F0, "fil1": F1, "tk_zero_outside": tk_zero}


def _comb(vecs: List[Vec], coeffs) -> Vec:
    out: Vec = {}
    for c, v in zip(coeffs, vecs):
        if c:
            vadd(out, v, c)
    return out


# ---------------------------------------------------------------- recognizer

def _commutator(A, x, y):
    return vadd(A.mul_vec(x, y), A.mul_vec(y, x), -ONE)


def structure_constants(A: XcopAlgebra, cb: dict):
    """c^k_ij and a_ij in [b_i, b_j] = sum_k c^k_ij b_k + a_ij."""
    unit = A.unit()
    idx, bs = cb["indices"], cb["b"]
    r = len(bs)
    c, a = {}, {}
    for i in range(r):
        for j in range(r):
            comm = _commutator(A, bs[i], bs[j])
            rest = dict(comm)
            for k in range(r):
                t = A.t_vec(idx[k], comm)
                coef = in_span(t, [unit]) if t else [ZERO]
                if coef is None:
                    raise ConditionFailure(f"t_k([b_{i + 1}, b_{j + 1}]) is not a scalar")
                if coef[0]:
                    c[(i, j, k)] = coef[0]
                    vadd(rest, bs[k], -coef[0])
            scal = in_span(rest, [unit]) if rest else [ZERO]
            if scal is None:
                raise ConditionFailure(f"[b_{i + 1}, b_{j + 1}] leaves span(b) + C")
            if scal[0]:
                a[(i, j)] = scal[0]
    return c, a


def _coboundary(r: int, c, a):
    """mu with a_ij = sum_k c^k_ij mu_k, or None."""
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    rows = [[c.get((i, j, k), ZERO) for k in range(r)] for i, j in pairs]
    rhs = [a.get((i, j), ZERO) for i, j in pairs]
    if not rows:
        return [ZERO] * r
    return solve(rows, rhs, r)


def _model(n: int, g: LieAlgebra, idx: List[int], phi: Optional[Cocycle]):
    h = g.restrict(idx)
    base = HopXcop(h) if phi is None else CentralQuotXcop(h, phi)
    if len(idx) != g.dim:
        base = ExtendedXcop(base, g, idx)
    return TensorEnd(n, base)


def _image(A, model, units, bs, label):
    """Canonical map model -> A on a basis label (p, q, I)."""
    p, q, I = label
    out: Vec = {}
    base = model.base
    for scale, letters in base.word(I):
        w = dict(A.unit())
        for l in letters:
            s = next(i for i, x in enumerate(l) if x)
            w = A.mul_vec(w, bs[s])
        vadd(out, w, scale)
    return A.mul_vec(units[(p, q)], out)


def model_check(A: XcopAlgebra, model: TensorEnd, units, bs, Dmax: int):
    labels = model.labels_up_to(Dmax)
    imgs = {l: _image(A, model, units, bs, l) for l in labels}
    for m in range(Dmax + 1):
        mine = [imgs[l] for l in labels if model.deg(l) <= m]
        if rank([dense(v, key_order(mine)) for v in mine]) != len(mine):
            raise ModelMismatch("images are linearly dependent", degree=m)
        dim_a = len(fil_basis(A, m, Dmax))
        if dim_a != len(mine):
            raise ModelMismatch(f"dim fil^{m} differs: {dim_a} vs {len(mine)}", degree=m)
    for x in labels:
        for k in range(A.n):
            lhs = A.t_vec(k, imgs[x])
            rhs: Vec = {}
            for l, c in model.t_gen(k, x).items():
                vadd(rhs, imgs[l], c)
            if lhs != rhs:
                raise ModelMismatch(f"t_{k + 1} does not commute with the model map", degree=model.deg(x))
        for y in labels:
            if model.deg(x) + model.deg(y) > Dmax:
                continue
            lhs = A.mul_vec(imgs[x], imgs[y])
            rhs = {}
            for l, c in model.mul(x, y).items():
                vadd(rhs, imgs[l] if l in imgs else _image(A, model, units, bs, l), c)
            if lhs != rhs:
                raise ModelMismatch("products differ", degree=model.deg(x) + model.deg(y))
    return True


def classify_small_simple(A: XcopAlgebra, Dmax: int = 3) -> dict:
    """ClassTag of a simple small X^cop-algebra with simple fil^0."""
    sm = is_small(A, Dmax)
    if not sm["small"]:
        raise NotSmall("fil^0 is infinite-dimensional", fil0="infinite")
    seeds = [{l: ONE} for l in A.labels_up_to(min(Dmax, 1))]
    for s in seeds:
        cl = ideal_closure(A, [s], Dmax)
        if not cl["contains_unit"]:
            raise NotSimpleEvidence(f"ideal generated by {s} is proper within degree {Dmax}",
                                    seed=repr(next(iter(s))))
    F0 = fil_basis(A, 0, Dmax)
    n, units = matrix_units(A, F0)
    evidence = {"small": sm, "simplicity_seeds": len(seeds), "Dmax": Dmax}
    if A.finite and len(A.labels_up_to(10 ** 6)) == len(F0):
        return {"variant": "star", "n": n, "h": None, "cocycle": None, "evidence": evidence}
    cb = condition_basis(A, Dmax)
    idx = cb["indices"]
    if not is_subalgebra_span(A.g, idx):
        raise NotSubalgebra("span of the chosen d_i is not a subalgebra")
    if not cb["tk_zero_outside"]:
        raise ConditionFailure("t_k outside the chosen indices acts nontrivially")
    c, a = structure_constants(A, cb)
    r = len(idx)
    for i in range(r):
        for j in range(r):
            d = A.g.bracket(idx[j], idx[i])
            for k in range(r):
                if c.get((i, j, k), ZERO) != d.get(idx[k], ZERO):
                    raise ConditionFailure("c^k_ij != d^k_ji", i=i + 1, j=j + 1, k=k + 1)
    mu = _coboundary(r, c, a)
    bs = [dict(b) for b in cb["b"]]
    if mu is not None:
        for i in range(r):
            vadd(bs[i], A.unit(), mu[i])
        phi = None
        variant = "starstar"
    else:
        phi = Cocycle({(i, j): a[(i, j)] for (i, j) in a if i < j})
        variant = "starstarstar"
    model = _model(n, A.g, idx, phi)
    model_check(A, model, units, bs, Dmax)
    h = A.g.restrict(idx)
    out = {"variant": variant, "n": n, "h": dict(h.to_json(), indices=[k + 1 for k in idx]),
           "cocycle": phi.to_json() if phi is not None else None,
           "structure_constants": [[i + 1, j + 1, k + 1, str(v)] for (i, j, k), v in sorted(c.items())],
           "evidence": evidence}
    return out


def tag_summary(tag: dict) -> str:
    stars = {"star": "*", "starstar": "**", "starstarstar": "***"}[tag["variant"]]
    text = f"type ({stars}), n = {tag['n']}"
    if tag.get("h"):
        text += f", h = span of d_{tag['h']['indices']}"
    if tag.get("cocycle"):
        text += ", nontrivial cocycle class"
    return text
