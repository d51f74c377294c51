import numpy as np
import pytest
from hypothesis import given, strategies as st

from mf_errors import (NotLatinSquare, NoIdentity, IndexOutOfRange, MissingSecondArgument, MissingThirdArgument,
                       NotASubloop, NotNormal, TooLargeToMaterialize, TableFormatError)
from mf_loop import (Perm, PsAutPair, LoopTable, DirectProduct, build_table, loop_eval, translation, assoc_comm,
                     is_moufang, is_associative, subloop_generate, is_subloop, inner_mappings, is_normal,
                     small_normal_subloop, cosets, quotient, is_pseudoautomorphism, psaut_compose, psaut_inverse,
                     isomorphic, center_bound, materialize, cyclic, write_table, write_handle, read_loop_file,
                     parse_loop_text, dump_table)
from mf_ring import field
from mf_zorn import paige_loop

A3 = [0, 3, 4]


def test_identity_moved_to_zero():
    t = build_table(3, lambda x, y: (x + y - 1) % 3)
    assert t.table[0].tolist() == [0, 1, 2]
    assert t.table[:, 0].tolist() == [0, 1, 2]


def test_bad_tables():
    with pytest.raises(NotLatinSquare):
        build_table(3, [[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    with pytest.raises(NoIdentity):
        build_table(3, lambda x, y: (x - y) % 3)
    with pytest.raises(NotLatinSquare):
        build_table(2, [[0, 1]])


def test_loop_eval_errors():
    t = cyclic(4)
    assert loop_eval(t, 'mul', 3, 3) == 2
    assert loop_eval(t, 'inv', 1) == 3
    assert loop_eval(t, 'ldiv', 1, 0) == 3
    with pytest.raises(MissingSecondArgument):
        loop_eval(t, 'mul', 1)
    with pytest.raises(IndexOutOfRange):
        loop_eval(t, 'mul', 1, 4)
    with pytest.raises(MissingThirdArgument):
        assoc_comm(t, 'associator', 1, 2)


def test_groups_are_moufang(s3):
    assert is_moufang(s3)
    assert is_associative(s3)
    assert is_moufang(s3).exhaustive


def test_m2_is_moufang_and_not_associative(m2):
    assert m2.order == 120
    assert is_moufang(m2)
    verdict = is_associative(m2)
    assert not verdict
    x, y, z = verdict.witness
    assert assoc_comm(m2, 'associator', x, y, z) != 0


def test_moufang_witness(broken5):
    verdict = is_moufang(broken5)
    assert not verdict
    x, y, z = verdict.witness
    t = broken5
    assert t.mul(t.mul(x, y), t.mul(z, x)) != t.mul(t.mul(x, t.mul(y, z)), x)


def test_sampled_check_on_a_lazy_loop():
    lazy = paige_loop(field(2))
    verdict = is_moufang(lazy, budget=2000, seed=3, threshold=10)
    assert verdict and not verdict.exhaustive


def test_translations(s3):
    for x in range(6):
        assert translation(s3, 'L', x).is_bijection()
        # T_x is conjugation m -> x^-1 m x in a group
        T = translation(s3, 'T', x)
        assert all(T(m) == s3.mul(s3.ldiv(x, m), x) for m in range(6))
    with pytest.raises(MissingSecondArgument):
        translation(s3, 'Lxy', 1)


def test_perm_composition_applies_left_first():
    p = Perm([1, 2, 0])
    q = Perm([0, 2, 1])
    assert (p * q)(0) == q(p(0))
    assert (p * p.inverse()).is_identity()


def test_commutator_is_left_normed(s3):
    for x in range(6):
        for y in range(6):
            c = assoc_comm(s3, 'commutator', x, y)
            assert s3.mul(s3.mul(y, x), c) == s3.mul(x, y)


def test_inner_mappings_of_an_abelian_group():
    maps = inner_mappings(cyclic(4))
    assert len(maps) == 1 and maps[0].is_identity()


def test_subloops():
    assert subloop_generate(cyclic(6), [2]) == [0, 2, 4]
    assert subloop_generate(cyclic(6), [1], cap=3) is None
    assert is_subloop(cyclic(6), [0, 3])
    assert not is_subloop(cyclic(6), [0, 1])


def test_normal_subgroups(s3):
    assert is_normal(s3, A3)
    assert not is_normal(s3, [0, 1])
    with pytest.raises(NotASubloop):
        is_normal(s3, [0, 1, 3])


def test_quotient(s3):
    reps, label = cosets(s3, A3)
    assert len(reps) == 2
    assert all(label[a] == 0 for a in A3)
    q = quotient(s3, A3)
    assert q.order == 2
    assert isomorphic(q, cyclic(2))
    with pytest.raises(NotNormal):
        quotient(s3, [0, 1])


def test_pseudoautomorphisms(m2):
    for x in (1, 17, 55, 119):
        cube = m2.inv(m2.mul(m2.mul(x, x), x))
        p = PsAutPair(translation(m2, 'T', x), cube)
        assert is_pseudoautomorphism(m2, p)
        inv = psaut_inverse(p, m2)
        assert is_pseudoautomorphism(m2, inv)
        ident = psaut_compose(p, inv, m2)
        assert ident.perm.is_identity() and ident.companion == 0


def test_not_a_pseudoautomorphism():
    t = cyclic(5)
    swap = Perm([0, 2, 1, 3, 4])
    assert not is_pseudoautomorphism(t, PsAutPair(swap, 0))
    assert not is_pseudoautomorphism(t, PsAutPair(Perm([0, 0, 1, 2, 3]), 0))
    double = Perm([0, 2, 4, 1, 3])
    assert is_pseudoautomorphism(t, PsAutPair(double, 0))


def test_isomorphism():
    klein = DirectProduct(cyclic(2), cyclic(2))
    assert not isomorphic(cyclic(4), klein)
    verdict = isomorphic(materialize(DirectProduct(cyclic(2), cyclic(3))), cyclic(6))
    assert verdict
    f = verdict.witness
    T1 = materialize(DirectProduct(cyclic(2), cyclic(3))).table
    assert np.array_equal(f[T1], cyclic(6).table[f[:, None], f[None, :]])
    assert not isomorphic(cyclic(6), cyclic(5))


def test_center_bound():
    assert center_bound(cyclic(6)) == 6


def test_materialize_cap():
    lazy = paige_loop(field(2))
    with pytest.raises(TooLargeToMaterialize) as info:
        materialize(lazy, cap=100)
    assert info.value.handle is lazy


def test_direct_product_factors():
    d = DirectProduct(cyclic(3), cyclic(4))
    assert d.order == 12
    assert d.second_factor() == [0, 1, 2, 3]
    assert d.first_factor() == [0, 4, 8]
    # (1, 1)(2, 3) = (0, 0)
    assert d.mul(5, 11) == 0
    assert is_associative(d)


@given(st.integers(0, 119), st.integers(0, 119))
def test_inverse_property(m2, x, y):
    t = m2
    assert t.mul(t.inv(x), t.mul(x, y)) == y
    assert t.ldiv(x, t.mul(x, y)) == y
    assert t.rdiv(t.mul(y, x), x) == y


def test_table_files(tmp_path, s3):
    path = tmp_path / 's3.loop'
    write_table(s3, str(path))
    back = read_loop_file(str(path))
    assert back == s3
    assert back.names == s3.names
    assert dump_table(back) == path.read_text()


def test_handle_files(tmp_path):
    path = tmp_path / 'big.loop'
    write_handle(str(path), 'paige:q=3', 1080)
    assert read_loop_file(str(path)) == ('paige:q=3', 1080)


@pytest.mark.parametrize('text', [
    '',
    'loop-table v2\norder 1\n0\n',
    'loop-table v1\nsize 1\n0\n',
    'loop-table v1\norder 2\n0 1\n',
    'loop-table v1\norder 2\n0 1\n1 x\n',
    'loop-table v1\norder 2\nnames a\n0 1\n1 0\n',
])
def test_malformed_files(text):
    with pytest.raises(TableFormatError):
        parse_loop_text(text)


def test_small_normal_subloops(s3, m2):
    assert small_normal_subloop(s3) == A3
    assert small_normal_subloop(cyclic(5)) is None
    # M(2) is simple
    assert small_normal_subloop(m2) is None
