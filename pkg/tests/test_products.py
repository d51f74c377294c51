import numpy as np
import pytest
from hypothesis import given, strategies as st

from mf_errors import OutOfCatalog, InvarianceNotEstablished, NotAGroup, TooLargeToMaterialize
from mf_linalg import Mat2, Vec, Subspace, gl2_enumerate
from mf_loop import is_moufang, is_associative, materialize, is_normal
from mf_products import (GdPair, GdLoop, gd_product, gd_inverse, gd_loop, diagonal_group, sl2_group,
                         binary_icosahedral, gd_to_parabolic, module_to_gd, SdLoop, sd_loop, sd_product,
                         sd_inverse, sd_invariance_check, sd_base, sd_module, catalog)
from mf_ring import field
from mf_zorn import DIM, ZornModule, parabolic_subloop, sl_loop


def test_worked_product_over_f2(F2):
    g = Mat2(F2, ((1, 1), (0, 1)))
    h = Mat2(F2, ((0, 1), (1, 0)))
    p = gd_product(GdPair(g, Vec(F2, (1, 0))), GdPair(h, Vec(F2, (0, 1))))
    assert p == GdPair(Mat2(F2, ((1, 1), (1, 0))), Vec(F2, (0, 0)))


def test_lazy_loop_agrees_with_pairs(gd24, F2):
    g = Mat2(F2, ((1, 1), (0, 1)))
    h = Mat2(F2, ((0, 1), (1, 0)))
    x = gd24.index_of(GdPair(g, Vec(F2, (1, 0))))
    y = gd24.index_of(GdPair(h, Vec(F2, (0, 1))))
    assert gd24.pair(gd24.mul(x, y)) == GdPair(Mat2(F2, ((1, 1), (1, 0))), Vec(F2, (0, 0)))


def test_gd_over_f2(gd24):
    assert gd24.order == 24
    t = materialize(gd24)
    verdict = is_moufang(t)
    assert verdict and verdict.exhaustive
    assert not is_associative(t)
    assert is_normal(t, gd24.kernel())


def test_gd_over_f3(F3):
    t = gd_loop(F3, gl2_enumerate(F3))
    assert t.order == 432
    assert is_moufang(t, threshold=0, budget=5000)
    assert not is_associative(t, threshold=t.order)


def test_gd_over_the_cap(F3):
    with pytest.raises(TooLargeToMaterialize) as info:
        gd_loop(F3, gl2_enumerate(F3), cap=100)
    assert info.value.handle.order == 432


@given(st.integers(0, 47), st.integers(0, 2), st.integers(0, 2))
def test_pair_inverse(i, u1, u2):
    r = field(3)
    p = GdPair(gl2_enumerate(r)[i], Vec(r, (u1, u2)))
    one = GdPair(Mat2.identity(r), Vec(r, (0, 0)))
    assert gd_product(p, gd_inverse(p)) == one
    assert gd_product(gd_inverse(p), p) == one


def test_subgroups_of_gl2(F3):
    assert len(diagonal_group(F3)) == 4
    assert len(sl2_group(F3)) == 24
    assert GdLoop(F3, diagonal_group(F3)).order == 36
    with pytest.raises(NotAGroup):
        GdLoop(F3, [Mat2.identity(F3), Mat2(F3, ((1, 1), (0, 1)))])


def test_projective_quotient():
    r = field(5)
    loop = GdLoop(r, sl2_group(r), projective=True)
    # SL_2(5) has the scalars +-1
    assert len(loop.scalars) == 2
    assert loop.order == 60 * 25
    assert len(loop.scalar_subloop()) == 1


def test_binary_icosahedral():
    group = binary_icosahedral(field(11))
    assert len(group) == 120


@pytest.mark.parametrize('q', [2, 3])
def test_gd_is_the_parabolic_subloop(q):
    r = field(q)
    gd = GdLoop(r, gl2_enumerate(r))
    f = gd_to_parabolic(r)
    P = parabolic_subloop(r)
    assert sorted(f.tolist()) == list(range(gd.order))
    T = materialize(gd).table
    assert np.array_equal(P.mul_many(f[:, None], f[None, :]), f[T])


def test_module_loop_maps_onto_gd(module_group):
    f = module_to_gd(module_group)
    M = materialize(module_group.loop).table
    gd = GdLoop(module_group.ring, module_group.mats)
    assert sorted(f.tolist()) == list(range(24))
    assert np.array_equal(gd.mul_many(f[:, None], f[None, :]), f[M])


def test_sd_order_and_cached_paths():
    c = catalog('paige-semidirect', q=2)
    loop = c.loop
    assert loop.order == 7680
    assert loop.block == 64
    rng = np.random.default_rng(0)
    for x, y in rng.integers(loop.order, size=(25, 2)).tolist():
        p, q = loop.pair(x), loop.pair(y)
        assert sd_product(loop, p, q) == loop.pair(loop.mul(x, y))
        assert sd_inverse(loop, p) == loop.pair(loop.inv(x))


def test_sd_is_moufang():
    loop = sd_loop(sd_base('sl', field(2)), sd_module('full', field(2)))
    assert loop.order == 120 * 256
    assert is_moufang(loop, budget=2000, seed=4)


def test_sd_needs_an_invariant_module(F2):
    base = sl_loop(F2)
    line = ZornModule(F2, Subspace(F2, [[1, 0, 0, 0, 0, 0, 0, 0]], DIM), name='a')
    verdict = sd_invariance_check(F2, base.elems, line)
    assert not verdict
    assert verdict.witness[0] in ('T', 'L')
    with pytest.raises(InvarianceNotEstablished):
        SdLoop(base, line)


def test_perp6_needs_characteristic_two():
    with pytest.raises(OutOfCatalog):
        sd_module('perp6', field(3))
    with pytest.raises(OutOfCatalog):
        sd_base('octonions', field(3))


def test_catalog_orders():
    assert catalog('gl2-semidirect', q=2).loop.order == 24
    assert catalog('gl2-semidirect', q=3).loop.order == 432
    assert catalog('psl2-semidirect', q=4).loop.order == 960
    assert catalog('paige-times-cyclic', n=4).loop.order == 480


def test_catalog_errors():
    with pytest.raises(OutOfCatalog):
        catalog('nosuch')
    with pytest.raises(OutOfCatalog):
        catalog('psl2-semidirect', q=3)
    with pytest.raises(OutOfCatalog):
        catalog('gl2-semidirect')
    with pytest.raises(OutOfCatalog):
        catalog('a5-semidirect', p=5)
