from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from pseudoalg.classify import (a_filtration, classify_small_simple, condition_basis, degprop_check,
                                ideal_closure, is_small, matrix_units, max_current_subalgebra, tag_summary)
from pseudoalg.constructions import cend, cend_phi, cur_matrix
from pseudoalg.errors import NoFirstComponent, NotSimpleEvidence, NotSmall, OutOfScope
from pseudoalg.lie import Cocycle, abelian, heisenberg, is_subalgebra_span, zoo
from pseudoalg.xcop import (CentralQuotXcop, ExtendedXcop, HopXcop, PolyDiffXcop, TableXcop, TensorEnd,
                            WeylXcop, matrix_algebra, poly_trivial)

ZOO = list(zoo().items())


def is_coboundary(g, idx, phi):
    """phi(d_i, d_j) = mu([d_i, d_j]) for some functional mu on span(idx)? (sympy oracle)"""
    mu = sympy.symbols(f"m0:{len(idx)}")
    eqs = []
    for a, b in combinations(range(len(idx)), 2):
        br = g.bracket(idx[a], idx[b])
        expr = sum(mu[idx.index(k)] * sympy.Rational(str(v)) for k, v in br.items())
        eqs.append(expr - phi.get((a, b), 0))
    return bool(sympy.solve(eqs, mu, dict=True)) or all(e == 0 for e in eqs)


def subalgebras(g):
    for r in range(1, g.dim):
        for idx in combinations(range(g.dim), r):
            if is_subalgebra_span(g, idx):
                yield list(idx)


# ------------------------------------------------------------ filtration and smallness

def test_filtration_of_matrix_algebra():
    rep = a_filtration(matrix_algebra(2), 3)
    assert rep["dims"] == [4, 4, 4, 4] and rep["nested"]


def test_filtration_of_hop():
    assert a_filtration(HopXcop(abelian(1)), 5)["dims"] == [1, 2, 3, 4, 5, 6]
    # n = 2: dim fil^m = number of monomials of degree <= m
    assert a_filtration(HopXcop(abelian(2)), 3)["dims"] == [1, 3, 6, 10]


def test_weyl_degrees():
    rep = a_filtration(WeylXcop(), 2)
    assert rep["degrees"]["(1, 0)"] == rep["degrees"]["(0, 1)"] == 1
    assert rep["degrees"]["(1, 1)"] == 2
    assert rep["subadditive"]


def test_smallness():
    assert is_small(WeylXcop())["small"]
    assert is_small(matrix_algebra(3))["small"]
    rep = is_small(PolyDiffXcop())
    assert not rep["small"] and rep["fil0"] == "infinite"
    with pytest.raises(NotSmall):
        classify_small_simple(PolyDiffXcop())


# ------------------------------------------------------------ ideals

def test_ideal_closures():
    A = matrix_algebra(3)
    cl = ideal_closure(A, [{(0, 1): 1}], 2)
    assert cl["contains_unit"] and cl["dim"] == 9
    assert ideal_closure(WeylXcop(), [{(1, 0): 1}], 2)["contains_unit"]
    P = poly_trivial(abelian(1), 3)
    cl = ideal_closure(P, [{1: 1}], 3)
    assert not cl["contains_unit"] and cl["dim"] == 3
    with pytest.raises(NotSimpleEvidence):
        classify_small_simple(P)


def test_direct_sum_not_simple():
    g = abelian(1)
    A = TableXcop(g, ["p", "q"], {("p", "p"): {"p": 1}, ("q", "q"): {"q": 1}}, {}, {"p": 1, "q": 1})
    with pytest.raises(OutOfScope):
        classify_small_simple(A)


# ------------------------------------------------------------ matrix units and condition basis

@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_units_multiply_like_matrix_units(n):
    A = matrix_algebra(n)
    basis = [{l: Fraction(1)} for l in A.labels]
    m, E = matrix_units(A, basis)
    assert m == n
    for (i, j), x in E.items():
        for (k, l), y in E.items():
            want = E[(i, l)] if j == k else {}
            assert A.mul_vec(x, y) == want


def test_condition_basis_examples():
    cb = condition_basis(WeylXcop())
    assert cb["b"] == [{(1, 0): 1}, {(0, 1): 1}]
    cb = condition_basis(HopXcop(abelian(1)))
    assert cb["b"] == [{(1,): 1}]
    with pytest.raises(NoFirstComponent):
        condition_basis(matrix_algebra(2))


@pytest.mark.parametrize("name,g", ZOO)
def test_condition_basis_dual(name, g):
    A = HopXcop(g)
    cb = condition_basis(A)
    for i, b in enumerate(cb["b"]):
        for j in range(len(cb["b"])):
            assert A.t_vec(cb["indices"][j], b) == ({(0,) * g.dim: 1} if i == j else {})
    assert cb["tk_zero_outside"]


@pytest.mark.parametrize("name,g", ZOO)
def test_degree_properties(name, g):
    rep = degprop_check(HopXcop(g), 3)
    assert rep["lands_in_fil0"] and rep["unique_top"]


# ------------------------------------------------------------ maximal current subalgebra

def test_max_current_of_cend():
    for n in (1, 2):
        out = max_current_subalgebra(cend(n, abelian(1)))
        assert len(out["algebra"].A.labels) == n * n and out["same_pseudoidentity"]


def test_max_current_of_cur():
    out = max_current_subalgebra(cur_matrix(2))
    assert len(out["algebra"].A.labels) == 4 and out["same_pseudoidentity"]


def test_max_current_of_weyl_type():
    out = max_current_subalgebra(cend_phi(1, abelian(2), Cocycle({(0, 1): 1})))
    assert len(out["algebra"].A.labels) == 1 and out["same_pseudoidentity"]


# ------------------------------------------------------------ recognizer

@pytest.mark.parametrize("n", [1, 2, 3])
def test_star(n):
    tag = classify_small_simple(matrix_algebra(n))
    assert tag["variant"] == "star" and tag["n"] == n and tag["h"] is None


@pytest.mark.parametrize("name,g", ZOO)
def test_starstar_hop(name, g):
    tag = classify_small_simple(HopXcop(g))
    assert tag["variant"] == "starstar" and tag["n"] == 1
    assert tag["h"]["indices"] == list(range(1, g.dim + 1))
    # c^k_ij = d^k_ji, read from g independently
    for i, j, k, v in tag["structure_constants"]:
        assert Fraction(v) == g.bracket(j - 1, i - 1).get(k - 1, 0)


@pytest.mark.parametrize("name,g", ZOO)
def test_starstar_subalgebras(name, g):
    for idx in subalgebras(g):
        A = ExtendedXcop(HopXcop(g.restrict(idx)), g, idx)
        tag = classify_small_simple(A)
        assert tag["variant"] == "starstar"
        assert tag["h"]["indices"] == [k + 1 for k in idx]


def test_starstarstar_weyl():
    tag = classify_small_simple(WeylXcop())
    assert tag["variant"] == "starstarstar" and tag["n"] == 1
    assert tag["h"]["indices"] == [1, 2]
    phi = {(i - 1, j - 1): Fraction(v) for i, j, v in tag["cocycle"]["phi"]}
    assert not is_coboundary(abelian(2), [0, 1], phi)
    assert "***" in tag_summary(tag)


@pytest.mark.parametrize("phi,variant", [({(0, 2): 1}, "starstarstar"), ({(1, 2): 1}, "starstarstar"),
                                         ({(0, 1): 1}, "starstar")])
def test_heisenberg_cocycles(phi, variant):
    g = heisenberg()
    assert is_coboundary(g, [0, 1, 2], phi) == (variant == "starstar")
    tag = classify_small_simple(TensorEnd(1, CentralQuotXcop(g, Cocycle(phi))))
    assert tag["variant"] == variant


def test_matrix_tensor_models():
    tag = classify_small_simple(TensorEnd(2, HopXcop(zoo()["nonab2"])), 2)
    assert tag["variant"] == "starstar" and tag["n"] == 2
    tag = classify_small_simple(TensorEnd(2, CentralQuotXcop(abelian(2), Cocycle({(0, 1): 1}))), 2)
    assert tag["variant"] == "starstarstar" and tag["n"] == 2


def test_rebuilt_model_has_same_filtration():
    A = WeylXcop()
    tag = classify_small_simple(A)
    phi = Cocycle({(i - 1, j - 1): Fraction(v) for i, j, v in tag["cocycle"]["phi"]})
    model = TensorEnd(tag["n"], CentralQuotXcop(abelian(2), phi))
    assert a_filtration(model, 3)["dims"] == a_filtration(A, 3)["dims"]


def test_finite_over_h_is_star():
    tag = classify_small_simple(cur_matrix(2).A)
    assert tag["variant"] == "star"
