"""Pseudoalgebras as H-modules with x-products.

An element is a dict {(I, label): Fraction} meaning sum c d^(I) * label, where
labels name H-module generators.  A pseudoalgebra only has to supply the
generator table ``gen_table(a, b) = {I: a_{t^I} b}``; products of arbitrary
elements follow from sesquilinearity (the *rule* route) or from expanding
(h (x) k)(a * b) and re-normalizing with the Fourier decomposition of H (x) H
(the *tensor* route).  The two routes are computed independently and compared
by ``verify_axioms``.
"""

import random
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .dual import DualX
from .errors import (AnnihilatorHit, AxiomFailure, InputError, MixedAlgebra, NotClosed,
                     NotFound, NotIdempotent)
from .hopf import UEA, uea
from .lie import LieAlgebra
from .linalg import dense, key_order, nullspace, solve
from .scalars import (ONE, ZERO, MultiIndex, iadd, ideg, indices_up_to, skey, sub_indices,
                      vadd, vscale, zero_index)

Label = Hashable
PElt = Dict[Tuple[MultiIndex, Label], Fraction]
Parts = Dict[MultiIndex, PElt]


# ---------------------------------------------------------------- element helpers

def h_act(H: UEA, h, v: PElt) -> PElt:
    """Left H-action h * v."""
    out: PElt = {}
    for (P, l), c in v.items():
        for I, x in h.items():
            for K, y in H.basis_mul(I, P).items():
                key = (K, l)
                val = out.get(key, ZERO) + c * x * y
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def gen(H: UEA, label) -> PElt:
    return {(zero_index(H.n), label): ONE}


def coef_degree(v: PElt) -> int:
    return max((ideg(P) for P, _ in v), default=-1)


def labels_of(v: PElt):
    return {l for _, l in v}


def parts_add(acc: Parts, I, v: PElt, c=ONE):
    slot = acc.setdefault(I, {})
    vadd(slot, v, c)
    if not slot:
        del acc[I]


def parts_clean(p: Parts) -> Parts:
    return {I: v for I, v in p.items() if v}


def parts_support(p: Parts) -> int:
    return max((ideg(I) for I in p), default=-1)


def parts_x(p: Parts, x) -> PElt:
    """a_x b from the Fourier parts {I: a_{t^I} b}."""
    out: PElt = {}
    for I, c in x.items():
        if I in p:
            vadd(out, p[I], c)
    return out


def sort_elt(v: PElt):
    return sorted(v.items(), key=lambda kv: skey(kv[0]))


def elt_to_json(v: PElt) -> list:
    from .xcop import _enc_label
    return [[list(P), _enc_label(l), str(c)] for (P, l), c in sort_elt(v)]


def elt_from_json(data, n: int) -> PElt:
    from .xcop import _dec_label
    from .scalars import Q
    out: PElt = {}
    try:
        for P, l, c in data:
            P = tuple(int(x) for x in P)
            if len(P) != n or any(x < 0 for x in P):
                raise InputError(f"bad multi-index {P}")
            vadd(out, {(P, _dec_label(l)): Q(c)})
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed element: {exc}") from exc
    return out


def fmt_elt(v: PElt) -> str:
    if not v:
        return "0"
    terms = []
    for (P, l), c in sort_elt(v):
        h = "" if not any(P) else "d^" + "".join(str(x) for x in P) + "."
        terms.append(f"{c}*{h}{l}")
    return " + ".join(terms)


# ---------------------------------------------------------------- product routes

def rule_product(H: UEA, table: Callable, a: PElt, b: PElt) -> Parts:
    """Fourier parts of a * b from sesquilinearity.

    (h A)_{t^I}(k B) = sum_{(k)} sum_J <t^I, k_(1) d^(J) S(h)> k_(2) (A_{t^J} B).
    """
    out: Parts = {}
    for (P, ga), alpha in a.items():
        SP = H.basis_antipode(P)
        for (Q, gb), beta in b.items():
            T = table(ga, gb)
            if not T:
                continue
            for Q1, Q2 in sub_indices(Q):
                for J, cJ in T.items():
                    shifted = h_act(H, {Q2: ONE}, cJ)
                    if not shifted:
                        continue
                    prod = H.mul(H.basis_mul(Q1, J), SP)
                    for I, c in prod.items():
                        parts_add(out, I, shifted, alpha * beta * c)
    return out


def assemble(H: UEA, w, c: PElt, out: Parts, coef=ONE):
    """Add w (x)_H c to out, for w in H (x) H, normalized to sum (S(d^(B)) (x) 1) (x)_H c_B."""
    for i, l in H.fourier_decompose(w).items():
        y = h_act(H, l, c)
        if not y:
            continue
        for B, s in H.basis_antipode(i).items():
            parts_add(out, B, y, coef * s)


def tensor_product(H: UEA, table: Callable, a: PElt, b: PElt) -> Parts:
    """Fourier parts of a * b from (h (x) k) (A * B), re-normalized."""
    out: Parts = {}
    for (P, ga), alpha in a.items():
        for (Q, gb), beta in b.items():
            T = table(ga, gb)
            for J, cJ in T.items():
                f = H.mul({P: ONE}, H.basis_antipode(J))
                w = {(F, Q): x for F, x in f.items()}
                assemble(H, w, cJ, out, alpha * beta)
    return out


# ---------------------------------------------------------------- base classes

class PseudoAlgebra:
    """Common interface; subclasses implement ``_gen_table`` and ``has_label``."""

    kind = "abstract"

    def __init__(self, g: LieAlgebra):
        self.g = g
        self.H = uea(g)
        self.X = DualX(self.H)
        self._gt = {}

    def _gen_table(self, a, b) -> Parts:
        raise NotImplementedError

    def has_label(self, l) -> bool:
        raise NotImplementedError

    def gen_labels(self, d: int) -> List[Label]:
        """Generator labels of degree <= d (used for sampling and searches)."""
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def gen_table(self, a, b) -> Parts:
        key = (a, b)
        hit = self._gt.get(key)
        if hit is None:
            hit = self._gt[key] = parts_clean(self._gen_table(a, b))
        return hit

    def gen_bound(self, a, b) -> int:
        return parts_support(self.gen_table(a, b))

    def check(self, v: PElt) -> PElt:
        for P, l in v:
            if len(P) != self.H.n:
                raise MixedAlgebra(f"multi-index {P} does not match dim {self.H.n}")
            if not self.has_label(l):
                raise MixedAlgebra(f"label {l!r} is not a generator of this algebra")
        return v

    def gen(self, label) -> PElt:
        return gen(self.H, label)

    def product(self, a: PElt, b: PElt) -> Parts:
        return parts_clean(rule_product(self.H, self.gen_table, a, b))

    def product_tensor(self, a: PElt, b: PElt) -> Parts:
        return parts_clean(tensor_product(self.H, self.gen_table, a, b))

    def locality_bound(self, a: PElt, b: PElt) -> int:
        """Predicted N with a_{t^I} b = 0 for |I| > N."""
        top = max((self.gen_bound(x, y) for x in labels_of(a) for y in labels_of(b)), default=-1)
        if top < 0:
            return -1
        return top + coef_degree(a) + coef_degree(b)


class TabularAlgebra(PseudoAlgebra):
    kind = "tabular"

    def __init__(self, g: LieAlgebra, generators: Sequence[Label], xtable: Dict[Tuple[Label, Label], Parts]):
        super().__init__(g)
        self.generators = list(generators)
        self._labels = set(self.generators)
        if len(self._labels) != len(self.generators):
            raise InputError("duplicate generators")
        self.xtable = {}
        for (a, b), parts in xtable.items():
            if a not in self._labels or b not in self._labels:
                raise InputError(f"table entry for unknown generators {(a, b)!r}")
            for I, v in parts.items():
                if len(I) != g.dim:
                    raise InputError(f"bad multi-index {I}")
                self.check(v)
            self.xtable[(a, b)] = parts_clean({tuple(I): dict(v) for I, v in parts.items()})

    def _gen_table(self, a, b):
        return self.xtable.get((a, b), {})

    def has_label(self, l):
        return l in self._labels

    def gen_labels(self, d):
        return list(self.generators)

    def spec(self):
        from .xcop import _enc_label
        rows = []
        for (a, b), parts in sorted(self.xtable.items(), key=lambda kv: skey(kv[0])):
            for I, v in sorted(parts.items()):
                rows.append([_enc_label(a), _enc_label(b), list(I), elt_to_json(v)])
        return {"kind": "tabular", "lie": self.g.to_json(),
                "generators": [_enc_label(x) for x in self.generators], "xtable": rows}


class DifAlgebra(PseudoAlgebra):
    """Dif A = H (x) A with (1 (x) a)_x (1 (x) b) = 1 (x) a x(b)."""

    kind = "dif"

    def __init__(self, A, name: Optional[str] = None):
        super().__init__(A.g)
        self.A = A
        self.name = name

    def _gen_table(self, a, b):
        out: Parts = {}
        z = zero_index(self.H.n)
        for I in indices_up_to(self.H.n, self.A.deg(b)):
            v = self.A.mul_vec({a: ONE}, self.A.t_act(I, b))
            if v:
                out[I] = {(z, l): c for l, c in v.items()}
        return out

    def gen_bound(self, a, b):
        return self.A.deg(b)

    def has_label(self, l):
        try:
            self.A.deg(l)
        except Exception:
            return False
        return True

    def gen_labels(self, d):
        return self.A.sample_labels(d, cap=10 ** 6)

    def lift(self, v) -> PElt:
        """a in A  ->  a~ = 1 (x) a."""
        z = zero_index(self.H.n)
        return {(z, l): c for l, c in v.items()}

    def unit_element(self) -> Optional[PElt]:
        u = self.A.unit()
        return None if u is None else self.lift(u)

    def spec(self):
        return {"kind": "dif", "base": self.A.spec(), "name": self.name}


# ---------------------------------------------------------------- x-products

def xprod(R: PseudoAlgebra, a: PElt, b: PElt, x) -> PElt:
    R.check(a), R.check(b)
    return parts_x(R.product(a, b), x)


def pseudoproduct(R: PseudoAlgebra, a: PElt, b: PElt) -> Parts:
    """{I: a_{t^I} b}; a * b = sum_I (S(d^(I)) (x) 1) (x)_H parts[I]."""
    R.check(a), R.check(b)
    return R.product(a, b)


def recompose_parts(R: PseudoAlgebra, parts: Parts):
    """Back to the tensor form {((F, G), label-elt)}: sum (S(d^I) (x) 1) (x)_H c_I."""
    out = {}
    for I, c in parts.items():
        for F, s in R.H.basis_antipode(I).items():
            slot = out.setdefault(F, {})
            vadd(slot, c, s)
    return {F: v for F, v in out.items() if v}


# ---------------------------------------------------------------- verification

class Report:
    def __init__(self, subject: str):
        self.subject = subject
        self.counts: Dict[str, List[int]] = {}
        self.failures: List[dict] = []
        self.info: Dict[str, object] = {}

    def record(self, identity: str, ok: bool, **detail):
        c = self.counts.setdefault(identity, [0, 0])
        c[0 if ok else 1] += 1
        if not ok and len(self.failures) < 20:
            self.failures.append({"identity": identity, **detail})

    @property
    def passed(self) -> bool:
        return not any(c[1] for c in self.counts.values())

    def status(self, identity: str) -> str:
        c = self.counts.get(identity)
        if c is None:
            return "vacuous"
        return "fail" if c[1] else "pass"

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "status": "pass" if self.passed else "fail",
            "checks": {k: {"pass": v[0], "fail": v[1]} for k, v in sorted(self.counts.items())},
            "failures": self.failures,
            "info": self.info,
        }

    def raise_if_failed(self):
        if not self.passed:
            f = self.failures[0]
            raise AxiomFailure(f"{f['identity']} fails", **f)


def _eq(a: PElt, b: PElt) -> bool:
    return vadd(dict(a), b, -ONE) == {}


def _defect(a: PElt, b: PElt) -> str:
    return fmt_elt(vadd(dict(a), b, -ONE))


def check_assoc(H: UEA, X: DualX, left_table, right_table, a, b, v, D: int, rep: Report,
                tag: str = "", forms=("assoc1", "assoc2")):
    """Associativity a_x(b_y v) = (a_{x_(2)} b)_{x_(1) y} v and its second form.

    ``left_table`` multiplies algebra elements, ``right_table`` acts on v.
    """
    ab = parts_clean(rule_product(H, left_table, a, b))
    bv = parts_clean(tensor_product(H, right_table, b, v))
    idx = indices_up_to(H.n, D)
    # a_x(b_y v)
    lhs1 = {J: parts_clean(rule_product(H, right_table, a, w)) for J, w in bv.items()}
    # (a_{t^B} b) * v
    abv = {B: parts_clean(rule_product(H, right_table, w, v)) for B, w in ab.items()}
    Nab = parts_support(ab)
    Nabv = max((parts_support(p) for p in abv.values()), default=-1)
    if "assoc1" in forms:
        Dcop = max(Nab, 0) + max(Nabv, 0)
        for I in idx:
            cop = X.coproduct({I: ONE}, Dcop)
            for J in idx:
                lhs = lhs1.get(J, {}).get(I, {})
                rhs: PElt = {}
                for (A, B), c in cop.items():
                    if B in abv:
                        K = iadd(A, J)
                        piece = abv[B].get(K)
                        if piece:
                            vadd(rhs, piece, c)
                ok = _eq(lhs, rhs)
                rep.record("assoc1", ok, **({} if ok else {"x": list(I), "y": list(J), "triple": tag,
                                                           "defect": _defect(lhs, rhs)}))
    if "assoc2" in forms:
        Nbv = parts_support(bv)
        cdeg = max((coef_degree(w) for w in bv.values()), default=0)
        gb = max((parts_support(right_table(x, y)) for x in labels_of(a)
                  for w in bv.values() for y in labels_of(w)), default=0)
        Nau = max(gb, 0) + coef_degree(a) + max(cdeg, 0)
        Dcop = max(Nbv, 0) + max(Nau, 0)
        for I in idx:
            cop = X.coproduct({I: ONE}, Dcop)
            Sx = {}
            for J in idx:
                lhs = abv.get(I, {}).get(J, {})
                rhs: PElt = {}
                for (A, B), c in cop.items():
                    if ideg(A) + ideg(J) > Nbv:
                        continue
                    if A not in Sx:
                        Sx[A] = X.antipode({A: ONE}, max(Nbv, 0))
                    z = X.truncate(X.mul(Sx[A], {J: ONE}), max(Nbv, 0))
                    u = parts_x(bv, z)
                    if not u:
                        continue
                    piece = parts_clean(rule_product(H, right_table, a, u)).get(B)
                    if piece:
                        vadd(rhs, piece, c)
                ok = _eq(lhs, rhs)
                rep.record("assoc2", ok, **({} if ok else {"x": list(I), "y": list(J), "triple": tag,
                                                           "defect": _defect(lhs, rhs)}))


def check_sesqui(H: UEA, X: DualX, table, a, b, D: int, rep: Report, tag: str = ""):
    """Both H-sesquilinearity identities for h = d_1..d_n and x = t^I, |I| <= D."""
    ab = parts_clean(rule_product(H, table, a, b))
    N = max(parts_support(ab), 0)
    idx = indices_up_to(H.n, D)
    for k in range(H.n):
        h = H.gen(k)
        ha_b = parts_clean(tensor_product(H, table, h_act(H, h, a), b))
        a_hb = parts_clean(tensor_product(H, table, a, h_act(H, h, b)))
        for I in idx:
            x = {I: ONE}
            lhs = ha_b.get(I, {})
            rhs = parts_x(ab, X.x_ract_h(x, h, N))
            ok = _eq(lhs, rhs)
            rep.record("sesqui_left", ok, **({} if ok else {"x": list(I), "h": k + 1, "triple": tag,
                                                            "defect": _defect(lhs, rhs)}))
            lhs = a_hb.get(I, {})
            rhs = {}
            for (P, Q), c in H.coproduct(h).items():
                y = X.h_act_x(H.antipode({P: ONE}), x, N)
                vadd(rhs, h_act(H, {Q: ONE}, parts_x(ab, y)), c)
            ok = _eq(lhs, rhs)
            rep.record("sesqui_right", ok, **({} if ok else {"x": list(I), "h": k + 1, "triple": tag,
                                                             "defect": _defect(lhs, rhs)}))


def check_locality(H: UEA, table, a, b, bound: int, rep: Report, tag: str = ""):
    rule = parts_clean(rule_product(H, table, a, b))
    tens = parts_clean(tensor_product(H, table, a, b))
    support = parts_support(rule)
    ok = support <= bound
    rep.record("locality", ok, **({} if ok else {"triple": tag, "support": support, "bound": bound}))
    keys = set(rule) | set(tens)
    ok = all(_eq(rule.get(I, {}), tens.get(I, {})) for I in keys)
    rep.record("routes_agree", ok, **({} if ok else {"triple": tag}))
    rep.info["max_support"] = max(rep.info.get("max_support", -1), support)


def verify_axioms(R: PseudoAlgebra, samples: Sequence[Tuple[PElt, PElt, PElt]], Dcheck: int,
                  strict: bool = False) -> Report:
    """Locality, both sesquilinearity identities and both associativity forms."""
    rep = Report(getattr(R, "name", None) or R.kind)
    rep.info["Dcheck"] = Dcheck
    rep.info["samples"] = len(samples)
    for n, (a, b, c) in enumerate(samples):
        for v in (a, b, c):
            R.check(v)
        tag = str(n)
        for x, y in ((a, b), (b, c)):
            check_locality(R.H, R.gen_table, x, y, R.locality_bound(x, y), rep, tag)
        check_sesqui(R.H, R.X, R.gen_table, a, b, Dcheck, rep, tag)
        check_assoc(R.H, R.X, R.gen_table, R.gen_table, a, b, c, Dcheck, rep, tag)
    if strict:
        rep.raise_if_failed()
    return rep


def random_element(R: PseudoAlgebra, rng: random.Random, gen_deg: int = 2, coef_deg: int = 2,
                   terms: int = 2, labels: Optional[Sequence] = None) -> PElt:
    labels = list(labels) if labels is not None else R.gen_labels(gen_deg)
    if not labels:
        return {}
    idx = indices_up_to(R.H.n, coef_deg)
    out: PElt = {}
    for _ in range(terms):
        P = rng.choice(idx)
        l = rng.choice(labels)
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        vadd(out, {(P, l): c})
    return out


def sample_triples(R: PseudoAlgebra, k: int, seed: int = 0, gen_deg: int = 2, coef_deg: int = 1,
                   labels=None):
    rng = random.Random(seed)
    out = []
    for _ in range(k):
        out.append(tuple(random_element(R, rng, gen_deg, coef_deg, labels=labels) or {} for _ in range(3)))
    return out


# ---------------------------------------------------------------- unital machinery

def is_pseudoidentity(R: PseudoAlgebra, e: PElt) -> bool:
    p = R.product(e, e)
    z = zero_index(R.H.n)
    return bool(e) and set(p) == {z} and _eq(p[z], e)


def _basis_elts(R: PseudoAlgebra, gens, Dsearch: int):
    return [(P, l) for l in gens for P in indices_up_to(R.H.n, Dsearch)]


def _solve_kernel(columns: List[Dict]) -> List[List[Fraction]]:
    keys = key_order(columns)
    rows = [[col.get(k, ZERO) for col in columns] for k in keys]
    return nullspace(rows, len(columns))


def _flatten(parts: Parts) -> Dict:
    return {(I, key): c for I, v in parts.items() for key, c in v.items()}


def left_annihilator(R: PseudoAlgebra, e: Optional[PElt], Dsearch: int, gens: Sequence[Label],
                     against: Optional[Sequence[Label]] = None) -> List[PElt]:
    """Basis of {a = sum c d^P g : |P| <= Dsearch, g in gens} with a * e = 0.

    Without e, a * g = 0 is imposed for every g in ``against`` (default gens).
    """
    if e is not None and not is_pseudoidentity(R, e):
        raise NotIdempotent("e * e != (1 (x) 1) (x)_H e")
    basis = _basis_elts(R, gens, Dsearch)
    targets = [e] if e is not None else [R.gen(g) for g in (against or gens)]
    columns = []
    for P, l in basis:
        col = {}
        for n, t in enumerate(targets):
            for key, c in _flatten(R.product({(P, l): ONE}, t)).items():
                col[(n, key)] = c
        columns.append(col)
    out = []
    for vec in _solve_kernel(columns):
        out.append({b: c for b, c in zip(basis, vec) if c})
    return out


def e1_action(R: PseudoAlgebra, e: PElt, a: PElt) -> PElt:
    return R.product(e, a).get(zero_index(R.H.n), {})


def find_pseudoidentity(R: PseudoAlgebra, Dsearch: int, gens: Sequence[Label],
                        against: Optional[Sequence[Label]] = None) -> PElt:
    """Search e = sum c d^P g (|P| <= Dsearch, g in gens) with e * e = (1 (x) 1) (x)_H e
    and e_1 acting as the identity on ``against`` (so the zero component vanishes).

    The unitality condition is linear in e; the quadratic condition is then
    solved on the remaining affine family.
    """
    basis = _basis_elts(R, gens, Dsearch)
    against = list(against) if against is not None else list(gens)
    rows_cols = []
    rhs = {}
    for P, l in basis:
        col = {}
        for g in against:
            for key, c in e1_action(R, {(P, l): ONE}, R.gen(g)).items():
                col[(g, key)] = c
        rows_cols.append(col)
    for g in against:
        rhs[(g, (zero_index(R.H.n), g))] = ONE
    keys = key_order(rows_cols + [rhs])
    rows = [[col.get(k, ZERO) for col in rows_cols] for k in keys]
    sol = solve(rows, dense(rhs, keys), len(basis))
    if sol is None:
        raise NotFound(f"no pseudoidentity within degree {Dsearch}", Dsearch=Dsearch)
    kernel = nullspace(rows, len(basis)) if rows else []
    base = {b: c for b, c in zip(basis, sol) if c}
    if is_pseudoidentity(R, base):
        return base
    if not kernel:
        raise NotFound(f"no pseudoidentity within degree {Dsearch}", Dsearch=Dsearch)
    import sympy
    params = sympy.symbols(f"p0:{len(kernel)}")
    sym = {}
    for i, b in enumerate(basis):
        expr = sympy.Rational(sol[i].numerator, sol[i].denominator)
        for p, kv in zip(params, kernel):
            if kv[i]:
                expr += p * sympy.Rational(kv[i].numerator, kv[i].denominator)
        if expr != 0:
            sym[b] = expr
    eqs = _symbolic_idempotent_equations(R, sym)
    sols = sympy.solve(eqs, params, dict=True)
    for s in sols:
        cand = {}
        for b, expr in sym.items():
            val = expr.subs(s).subs({p: 0 for p in params})
            val = sympy.Rational(val)
            if val != 0:
                cand[b] = Fraction(int(val.p), int(val.q))
        if is_pseudoidentity(R, cand):
            return cand
    raise NotFound(f"no pseudoidentity within degree {Dsearch}", Dsearch=Dsearch)


def _symbolic_idempotent_equations(R: PseudoAlgebra, sym):
    import sympy
    acc = {}
    z = zero_index(R.H.n)
    items = list(sym.items())
    for b1, x in items:
        for b2, y in items:
            for I, v in R.product({b1: ONE}, {b2: ONE}).items():
                for key, c in v.items():
                    acc[(I, key)] = acc.get((I, key), 0) + x * y * sympy.Rational(c.numerator, c.denominator)
    for b, x in items:
        acc[(z, b)] = acc.get((z, b), 0) - x
    return [sympy.expand(v) for v in acc.values() if sympy.expand(v) != 0]


def _top_index(parts: Parts):
    nz = [I for I in parts if any(I)]
    if not nz:
        return None
    return max(nz, key=lambda I: (ideg(I), I))


def descend_with(H: UEA, parts_of: Callable, a: PElt, signed: bool, max_steps: int = 200):
    """Repeatedly strip the top Fourier part: a <- a - d^(I) a_I.

    ``parts_of(a)`` gives {I: e_{t^I}-type parts}; a_I carries (-1)^|I| when
    ``signed`` (algebra generators) and no sign for module generators.
    Returns (remainder, [(I, a_I), ...]).
    """
    pieces = []
    for _ in range(max_steps):
        parts = parts_of(a)
        I = _top_index(parts)
        if I is None:
            return a, pieces
        sign = -ONE if signed and ideg(I) % 2 else ONE
        aI = vscale(parts[I], sign)
        pieces.append((I, aI))
        a = vadd(dict(a), h_act(H, {I: ONE}, aI), -ONE)
    raise NotClosed("descent did not terminate")


def descend(R: PseudoAlgebra, e: PElt, a: PElt, max_steps: int = 200):
    """Algebra descent: a = remainder + sum d^(I) a_I with a_I = (-1)^|I| a_{t^I} e."""
    return descend_with(R.H, lambda v: R.product(v, e), a, True, max_steps)


def find_good_generators(R: PseudoAlgebra, e: PElt, gens: Sequence[PElt]) -> List[PElt]:
    """Generators a with a * e = (1 (x) 1) (x)_H a spanning the same H-module as gens."""
    z = zero_index(R.H.n)
    out: List[PElt] = []
    extra: List[PElt] = []
    queue = [dict(a) for a in gens]
    seen = 0
    while queue:
        seen += 1
        if seen > 500:
            raise NotClosed("generator normalization did not stabilize")
        a = queue.pop(0)
        rem, pieces = descend(R, e, a)
        if rem:
            p = R.product(rem, e)
            if not _eq(p.get(z, {}), rem) or set(p) - {z}:
                raise AnnihilatorHit("element with a_1 e != a: left annihilator is nonzero",
                                     element=fmt_elt(rem))
            out.append(rem)
        for _, aI in pieces:
            rem2, more = descend(R, e, aI)
            if more:
                queue.append(aI)
            elif rem2:
                extra.append(aI)
    result = _independent(out)
    for v in extra:
        if not _in_c_span(v, result):
            result.append(v)
    return result


def _in_c_span(v: PElt, vecs: List[PElt]) -> bool:
    if not v:
        return True
    from .linalg import in_span
    return in_span(v, vecs) is not None if vecs else False


def _independent(vecs: List[PElt]) -> List[PElt]:
    out: List[PElt] = []
    for v in vecs:
        if v and not _in_c_span(v, out):
            out.append(v)
    return out


def express(v: PElt, basis: List[PElt]):
    from .linalg import in_span
    if not v:
        return [ZERO] * len(basis)
    return in_span(v, basis)


def extract_base_algebra(R: PseudoAlgebra, e: PElt, good: List[PElt], strict: bool = True):
    """Structure of A = span(good) with a.b = (a * b)_0 and t_k(a) = e_{t_k} a.

    Returns (mult, taction) with mult[(i, j)] a coefficient list over ``good``
    (or None where the product leaves the span and strict is False).
    """
    from .scalars import unit_index
    z = zero_index(R.H.n)
    mult = {}
    for i, a in enumerate(good):
        for j, b in enumerate(good):
            p = R.product(a, b).get(z, {})
            coeffs = express(p, good)
            if coeffs is None and strict:
                raise NotClosed(f"product of generators {i} and {j} leaves the span")
            mult[(i, j)] = coeffs
    tact = {}
    for k in range(R.H.n):
        I = unit_index(R.H.n, k)
        for i, a in enumerate(good):
            p = R.product(e, a).get(I, {})
            coeffs = express(p, good)
            if coeffs is None and strict:
                raise NotClosed(f"t_{k + 1} of generator {i} leaves the span")
            tact[(k, i)] = coeffs
    return mult, tact


# ---------------------------------------------------------------- torsion

class HModule:
    """Finitely presented left H-module: free on ``generators`` modulo ``relations``."""

    def __init__(self, g: LieAlgebra, generators, relations: Sequence[PElt] = ()):
        self.g = g
        self.H = uea(g)
        self.X = DualX(self.H)
        self.generators = list(generators)
        self.relations = [dict(r) for r in relations]


def as_hmodule(M) -> HModule:
    if isinstance(M, HModule):
        return M
    if isinstance(M, PseudoAlgebra):
        return HModule(M.g, [], [])
    raise InputError("torsion detection needs a pseudoalgebra or an H-module presentation")


def fourier_coefficients_vanish(M: HModule, a: PElt, D: int) -> bool:
    """x (x)_H a = 0 in X (x)_H M for all |x| <= D, modulo fil_D X."""
    X = M.X
    rel_cols = []
    for r in M.relations:
        dr = coef_degree(r)
        for J in indices_up_to(M.H.n, D + dr):
            col = {}
            for (P, l), c in r.items():
                for K, v in X.x_ract_h({J: ONE}, {P: ONE}, D).items():
                    vadd(col, {(K, l): c * v})
            if col:
                rel_cols.append(col)
    for I in indices_up_to(M.H.n, D):
        target = {}
        for (P, l), c in a.items():
            for K, v in X.x_ract_h({I: ONE}, {P: ONE}, D).items():
                vadd(target, {(K, l): c * v})
        if not target:
            continue
        if not rel_cols:
            return False
        keys = key_order(rel_cols + [target])
        rows = [[col.get(k, ZERO) for col in rel_cols] for k in keys]
        if solve(rows, dense(target, keys), len(rel_cols)) is None:
            return False
    return True


def torsion_certificate(M: HModule, a: PElt, D: int) -> Optional[Dict]:
    """Nonzero h with h a in the relation submodule, degrees bounded by D."""
    if not a:
        return {zero_index(M.H.n): ONE}
    if not M.relations:
        return None
    hs = indices_up_to(M.H.n, D)
    cols = []
    for I in hs:
        cols.append(h_act(M.H, {I: ONE}, a))
    ks = []
    for r_i, r in enumerate(M.relations):
        for J in indices_up_to(M.H.n, D + coef_degree(a)):
            ks.append((r_i, J))
            cols.append(vscale(h_act(M.H, {J: ONE}, r), -1))
    for vec in _solve_kernel(cols):
        h = {I: c for I, c in zip(hs, vec[:len(hs)]) if c}
        if h:
            return h
    return None


def torsion_detect(M, a: PElt, Dcheck: int) -> bool:
    """True when every Fourier coefficient of a vanishes through degree Dcheck and
    a nonzero h with h a = 0 is found."""
    Mod = as_hmodule(M)
    if not a:
        return True
    if not Mod.relations:
        return False
    return fourier_coefficients_vanish(Mod, a, Dcheck) and torsion_certificate(Mod, a, Dcheck) is not None
