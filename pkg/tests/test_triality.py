import numpy as np
import pytest

from mf_errors import TrialityFails, BaseNotAssociative, NotMoufangElement, OperatorDomainMismatch
from mf_linalg import eye
from mf_loop import cyclic, is_moufang, isomorphic, materialize, symmetric
from mf_products import GdLoop
from mf_ring import field
from mf_sema import default_generators
from mf_triality import (check_triality, loop_product, loop_mult, loop_materialize, moufang_elements, phi, chi,
                         centralizer_of_sigma, formula_general, formula_inverse, formula_abelian, ModuleOperators,
                         as_table_group, wreath_make, wreath_module_make, matrix_group)


def test_wreath_triality(wreath_s3):
    G = wreath_s3
    assert G.order == 216
    verdict = check_triality(G)
    assert verdict and verdict.exhaustive


def test_wreath_loop_is_the_base_group(wreath_s3):
    M = loop_materialize(wreath_s3)
    assert len(moufang_elements(wreath_s3)) == 6
    assert M.order == 6
    assert is_moufang(M)
    assert isomorphic(M, symmetric(3))


def test_automorphism_orders(wreath_s3):
    G = wreath_s3
    xs = G.elements()
    assert G.eq(G.rho(G.rho2(xs)), xs).all()
    assert G.eq(G.sigma(G.sigma(xs)), xs).all()
    assert G.eq(G.sigma(G.rho(G.sigma(G.rho(xs)))), xs).all()


def test_loop_product_closes_on_m(wreath_s3):
    G = wreath_s3
    E = G.loop.elems
    prods = loop_product(G, E[:, None], E[None, :])
    assert G.loop.contains(prods).all()


def test_loop_mult_rejects_outsiders(wreath_s3):
    G = wreath_s3
    outsider = np.array([0, 0, 1])
    with pytest.raises(NotMoufangElement):
        loop_mult(G, outsider, G.identity())


def test_phi_swaps_m_and_the_centralizer(wreath_s3):
    G = wreath_s3
    assert centralizer_of_sigma(G, phi(G, G.loop.elems)).all()
    xs = G.elements()
    H = xs[centralizer_of_sigma(G, xs)]
    assert len(H) == 36
    assert G.loop.contains(phi(G, H)).all()
    # phi is not into the centralizer on all of G
    assert not centralizer_of_sigma(G, phi(G, xs)).all()


def test_chi_permutes_m(wreath_s3):
    G = wreath_s3
    for code in (0, 7, 100, 215):
        g = G.decode(np.array(code))
        p = chi(G, g)
        assert p.is_bijection()
        assert p(0) == int(G.loop.index(G.moufang_map(g)))


def test_product_and_inverse_formulas(wreath_s3):
    G = wreath_s3
    loop = G.loop
    E = loop.elems
    n = loop.order
    m, nn, u, w = (a.ravel() for a in np.indices((n,) * 4))
    x = formula_general(G, E[m], E[nn], E[u], E[w])
    mul = loop.mul_many
    assert np.array_equal(mul(mul(m, u), mul(nn, w)), mul(mul(m, nn), loop.index(x)))
    y = formula_inverse(G, E[m], E[u])
    assert np.array_equal(loop.inv_many(mul(m, u)), mul(loop.inv_many(m), loop.index(y)))


def test_table_group_has_the_same_loop(wreath_s3):
    T = as_table_group(wreath_s3)
    assert T.order == 216
    assert check_triality(T)
    assert isomorphic(materialize(T.loop), materialize(wreath_s3.loop))


def test_base_must_be_a_group(m2):
    with pytest.raises(BaseNotAssociative):
        wreath_make(m2)


def test_matrix_group(F3):
    mats, table, inverse = matrix_group(F3, [np.array([[1, 1], [0, 1]])])
    assert len(mats) == 3
    assert (table[np.arange(3), inverse] == 0).all()


def test_module_group_over_f2(module_group):
    A = module_group
    assert A.gorder == 6
    assert A.dim == 8
    verdict = check_triality(A, budget=2000, seed=1)
    assert verdict and not verdict.exhaustive
    assert A.cond_tri_witness() is None
    assert len(A.abelian_part()) == 4


def test_samples_are_distinct(module_group):
    A = module_group
    xs, exhaustive = A.sample(budget=3000, seed=2)
    assert not exhaustive
    assert len(np.unique(A.codes(xs))) == 3000
    xs, exhaustive = A.sample(budget=A.order)
    assert exhaustive and len(xs) == A.order


def test_module_loop_is_gd(module_group, F2):
    M = materialize(module_group.loop)
    assert M.order == 24
    gd = materialize(GdLoop(F2, module_group.mats))
    assert isomorphic(M, gd)


def test_triality_fails_in_dimension_three(F2):
    with pytest.raises(TrialityFails) as info:
        wreath_module_make(F2, 3, default_generators(F2, 3))
    assert 'triality fails at n=3' in str(info.value)


@pytest.mark.parametrize('q', [3, 5])
def test_triality_holds_in_dimension_one(q):
    r = field(q)
    A = wreath_module_make(r, 1, default_generators(r, 1))
    verdict = check_triality(A)
    assert verdict and verdict.exhaustive
    # W is one-dimensional and M(W) is trivial, so M(A) is GL_1
    assert isomorphic(materialize(A.loop), cyclic(q - 1))


def test_abelian_formula_agrees(module_group):
    A = module_group
    ops = ModuleOperators(A)
    assert ops.dim == 2
    loop = A.loop
    E = loop.elems
    U = A.abelian_part()
    for mi in (1, 5, 11):
        for ni in (2, 7, 23):
            for ui in U:
                for wi in U:
                    general = formula_general(A, E[mi], E[ni], E[ui], E[wi])
                    x, y = formula_abelian(ops.D, ops.L, ops.T, E[mi], E[ni], ops.coords(E[ui]),
                                           ops.coords(E[wi]), A.ring)
                    assert np.array_equal(ops.coords(general), x)
                    inverse = formula_inverse(A, E[mi], E[ui])
                    assert np.array_equal(ops.coords(inverse), y)


def test_operator_shapes_are_checked(F2):
    three = lambda *args: eye(3)
    with pytest.raises(OperatorDomainMismatch):
        formula_abelian(three, three, three, None, None, np.array([1, 0]), np.array([0, 1]), F2)
