from fractions import Fraction
from itertools import product

import pytest

from pseudoalg.constructions import (CendTensor, cend, cend_phi, cur, cur_matrix, cur_scalar,
                                     current_extension, dif, nprod, rank1_check, rank1_classify)
from pseudoalg.errors import CocycleViolation, InvalidBase, NotSubalgebra, WrongBase
from pseudoalg.lie import Cocycle, LieAlgebra, abelian, heisenberg, nonabelian2, zoo
from pseudoalg.pseudo import pseudoproduct, sample_triples, verify_axioms, xprod
from pseudoalg.scalars import indices_up_to
from pseudoalg.xcop import CentralQuotXcop, HopXcop, TableXcop, WeylXcop, scalar_algebra

ZOO = list(zoo().items())


def test_cur_scalar_is_current():
    R = cur_scalar()
    e = R.gen("e")
    assert pseudoproduct(R, e, e) == {(0,): e}
    for m in range(1, 5):
        assert xprod(R, e, e, {(m,): 1}) == {}


@pytest.mark.parametrize("name,g", ZOO)
def test_current_products_vanish_on_fil0(name, g):
    R = cur_matrix(2, g)
    for a in R.gen_labels(0):
        for b in R.gen_labels(0):
            for I in indices_up_to(g.dim, 3):
                if any(I):
                    assert xprod(R, R.gen(a), R.gen(b), {I: 1}) == {}


def test_cur_end2_identity_acts_as_identity():
    R = cur_matrix(2)
    one = {((0,), (0, 0)): Fraction(1), ((0,), (1, 1)): Fraction(1)}
    for l in R.gen_labels(0):
        assert pseudoproduct(R, one, R.gen(l)) == {(0,): R.gen(l)}


def test_dif_of_trivial_scalar_is_current():
    Rd, Rc = dif(scalar_algebra()), cur_scalar()
    e = {((0,), "e"): Fraction(1)}
    assert Rd.product(e, e) == Rc.product(e, e)
    assert Rd.product({((2,), "e"): 1}, e) == Rc.product({((2,), "e"): 1}, e)


def test_dif_weyl_products():
    R = dif(WeylXcop())
    x, y = R.gen((1, 0)), R.gen((0, 1))
    assert xprod(R, x, y, {(1, 0): 1}) == {}
    # t_2 = d/dy: x . t_2(y) = x
    assert xprod(R, x, y, {(0, 1): 1}) == x
    assert xprod(R, x, x, {(0, 1): 1}) == {}
    assert xprod(R, x, x, {(1, 0): 1}) == x


def test_dif_rejects_bad_base():
    g = abelian(1)
    # t(a) = a never reaches zero
    with pytest.raises(InvalidBase):
        dif(TableXcop(g, ["a"], {("a", "a"): {"a": 1}}, {(0, "a"): {"a": 1}}, "a"))
    # not associative: a a = b, a b = a, b a = 0
    B = TableXcop(g, ["a", "b"], {("a", "a"): {"b": 1}, ("a", "b"): {"a": 1}})
    with pytest.raises(InvalidBase):
        dif(B)


def test_current_extension_trivial():
    R = current_extension(cur_scalar(), abelian(1), [0])
    e = R.gen("e")
    assert pseudoproduct(R, e, e) == {(0,): e}


def test_current_extension_of_cend1():
    R = current_extension(cend(1, abelian(1)), abelian(2), [0])
    small = cend(1, abelian(1))
    labels = [(0, 0, (k,)) for k in range(3)]
    for a in labels:
        for b in labels:
            for I in indices_up_to(2, 3):
                got = xprod(R, R.gen(a), R.gen(b), {I: 1})
                if I[1]:
                    assert got == {}
                else:
                    want = xprod(small, small.gen(a), small.gen(b), {(I[0],): 1})
                    assert got == {((P[0], 0), l): c for (P, l), c in want.items()}
    assert verify_axioms(R, sample_triples(R, 2, seed=0, gen_deg=2, coef_deg=1), 3).passed


def test_current_extension_needs_subalgebra():
    with pytest.raises(NotSubalgebra):
        current_extension(cend(1, abelian(2)), heisenberg(), [0, 1])


def test_cend_identity():
    for g in (abelian(1), nonabelian2()):
        R = cend(2, g)
        e = R.unit_element()
        assert pseudoproduct(R, e, e) == {(0,) * g.dim: e}
        T = CendTensor(2, g)
        e = T.identity()
        assert pseudoproduct(T, e, e) == {(0,) * g.dim: e}


def test_hop_product_and_action():
    A = HopXcop(nonabelian2())
    assert A.mul((1, 0), (0, 1)) == {(1, 1): 1, (0, 1): -1}
    assert A.t_act((1, 0), (0, 0)) == {}
    assert A.t_act((1, 0), (1, 1)) == {(0, 1): 1}
    for g in zoo().values():
        B = HopXcop(g)
        assert B.check_xcop(B.labels_up_to(2)) is None
        assert B.check_assoc(B.labels_up_to(2)) is None


def test_cend_phi_abelian_is_weyl():
    A = CentralQuotXcop(abelian(2), Cocycle({(0, 1): 1}))
    x, y = (1, 0), (0, 1)
    comm = dict(A.mul(x, y))
    for k, v in A.mul(y, x).items():
        comm[k] = comm.get(k, 0) - v
    assert {k: v for k, v in comm.items() if v} == {(0, 0): 1}
    assert A.t_gen(0, x) == {(0, 0): 1} and A.t_gen(1, x) == {}
    assert A.t_gen(1, y) == {(0, 0): 1} and A.t_gen(0, y) == {}
    # x^a y^b -> words in the quotient give an X-equivariant algebra map from the Weyl algebra
    W = WeylXcop()

    def image(p):
        out = A.unit()
        for _ in range(p[0]):
            out = A.mul_vec(out, {x: 1})
        for _ in range(p[1]):
            out = A.mul_vec(out, {y: 1})
        return out

    labels = W.labels_up_to(2)
    for p in labels:
        for q in labels:
            lhs = {}
            for r, c in W.mul(p, q).items():
                for k, v in image(r).items():
                    lhs[k] = lhs.get(k, 0) + c * v
            assert {k: v for k, v in lhs.items() if v} == A.mul_vec(image(p), image(q))
        for k in range(2):
            lhs = {}
            for r, c in W.t_gen(k, p).items():
                for kk, v in image(r).items():
                    lhs[kk] = lhs.get(kk, 0) + c * v
            assert {kk: v for kk, v in lhs.items() if v} == A.t_vec(k, image(p))


@pytest.mark.parametrize("name,g", ZOO)
def test_cend_phi_zero_matches_cend(name, g):
    R0, R = cend_phi(1, g, Cocycle({})), cend(1, g)
    labels = R.gen_labels(2)
    for a in labels:
        for b in labels:
            assert R0.product(R0.gen(a), R0.gen(b)) == R.product(R.gen(a), R.gen(b))


def test_cend_phi_rejects_non_cocycle():
    g = LieAlgebra(3, {(0, 1): {1: 1}})
    with pytest.raises(CocycleViolation):
        cend_phi(1, g, Cocycle({(1, 2): 1}))


def test_rank1_classify_abelian():
    fams = rank1_classify(abelian(1), 2)
    assert len(fams) == 1
    fam = fams[0]
    assert list(fam) == [((0,), (0,))]


def test_rank1_brute_force():
    # all alpha with coefficients in {-1, 0, 1} on |I|, |J| <= 1 plus scattered degree-2 terms
    g = abelian(1)
    keys = [((i,), (j,)) for i in range(3) for j in range(3)]
    found = []
    for vals in product((-1, 0, 1), repeat=4):
        alpha = {k: Fraction(v) for k, v in zip(keys[:2] + keys[3:5], vals) if v}
        if rank1_check(g, alpha):
            found.append(alpha)
    assert sorted(map(lambda a: sorted(a.items()), found)) == [[], [(((0,), (0,)), -1)], [(((0,), (0,)), 1)]]
    for k in keys[1:]:
        for c in (1, 2):
            assert not rank1_check(g, {((0,), (0,)): Fraction(1), k: Fraction(c)})


def test_rank1_solutions_satisfy_check():
    for g in (abelian(1), nonabelian2()):
        for fam in rank1_classify(g, 1):
            alpha = {k: Fraction(3) for k in fam}
            assert rank1_check(g, alpha)


def test_nprod():
    R = cur_scalar()
    e = R.gen("e")
    assert nprod(R, e, e, 0) == e
    T = CendTensor(1, abelian(1))
    u, e = {((0,), ((1,), 0, 0)): Fraction(1)}, T.identity()
    assert nprod(T, u, e, 1) == e
    for m in range(2, 6):
        assert nprod(T, u, e, m) == {}
    with pytest.raises(WrongBase):
        nprod(cur_matrix(1, nonabelian2()), {}, {}, 0)


def test_cend_tensor_verify():
    R = CendTensor(1, nonabelian2())
    assert verify_axioms(R, sample_triples(R, 2, seed=3, gen_deg=2, coef_deg=1), 3).passed


def test_cur_requires_trivial_action():
    A = HopXcop(abelian(1))
    with pytest.raises(Exception):
        cur(A)
