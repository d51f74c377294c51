import numpy as np
import pytest
from hypothesis import given, strategies as st

from mf_errors import SingularMatrix, RingMismatch
from mf_linalg import (Mat2, Vec, mat_mul, mat_inv, mat_det, vec_act, commutator_mat, gl2_enumerate,
                       sl2_generators, group_closure, mat_prod, vec_mat, mat_inverse, kernel, rank, eye,
                       Subspace, spin, pack, unpack)
from mf_ring import field


def test_gl2_orders():
    assert len(gl2_enumerate(field(2))) == 6
    assert len(gl2_enumerate(field(3))) == 48
    assert gl2_enumerate(field(4))[0] == Mat2.identity(field(4))


def test_sl2_closure():
    assert len(group_closure(sl2_generators(field(3)))) == 24
    assert len(group_closure(sl2_generators(field(4)))) == 60


def test_inverse_and_commutator(F3):
    g = Mat2(F3, ((1, 2), (0, 1)))
    h = Mat2(F3, ((0, 1), (2, 0)))
    assert mat_mul(g, mat_inv(g)) == Mat2.identity(F3)
    assert mat_det(h) == 1
    # [g, h] = g^-1 h^-1 g h
    expected = mat_mul(mat_mul(mat_inv(g), mat_inv(h)), mat_mul(g, h))
    assert commutator_mat(g, h) == expected


def test_row_vectors_act_on_the_right(F3):
    a = Mat2(F3, ((1, 1), (0, 1)))
    assert vec_act(Vec(F3, (0, 1)), a) == Vec(F3, (0, 1))
    assert vec_act(Vec(F3, (1, 0)), a) == Vec(F3, (1, 1))


def test_vector_ops(F3):
    u, v = Vec(F3, (1, 2, 0)), Vec(F3, (0, 1, 1))
    assert (u + v) == Vec(F3, (1, 0, 1))
    assert u.dot(v) == 2
    assert u.cross(v).dot(u) == 0
    assert Vec.from_code(F3, 3, u.code()) == u
    with pytest.raises(RingMismatch):
        u + Vec(field(5), (1, 2, 0))


def test_dense_inverse():
    r = field(5)
    M = np.array([[1, 2, 0], [0, 1, 4], [3, 0, 2]])
    assert np.array_equal(mat_prod(r, M, mat_inverse(r, M)), eye(3))
    with pytest.raises(SingularMatrix):
        mat_inverse(r, np.array([[1, 2], [2, 4]]))


def test_extension_field_products():
    r = field(4)
    M = np.array([[2, 1], [1, 0]])
    Mi = mat_inverse(r, M)
    assert np.array_equal(mat_prod(r, M, Mi), eye(2))
    assert np.array_equal(vec_mat(r, np.array([1, 0]), M), [2, 1])


def test_kernel_is_left_nullspace(F3):
    A = np.array([[1], [2], [0], [1]])
    K = kernel(F3, A)
    assert K.shape == (3, 4)
    assert not vec_mat(F3, K, A).any()
    assert rank(F3, K) == 3


def test_subspace_membership(F2):
    S = Subspace(F2, [[1, 1, 0], [0, 1, 1]], 3)
    assert S.dim == 2
    assert S.contains([1, 0, 1])
    assert not S.contains([1, 0, 0])
    assert S.contains_each(np.array([[0, 0, 0], [1, 1, 1]])).tolist() == [True, False]


def test_spin(F2, F3):
    gens = [m.array() for m in gl2_enumerate(F2)]
    assert spin(F2, gens, [1, 0]).dim == 2
    diag = [np.array([[2, 0], [0, 1]])]
    assert spin(F3, diag, [1, 0]).dim == 1
    assert spin(F3, diag, [1, 1]).dim == 2


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_pack_unpack(coords):
    r = field(3)
    assert unpack(r, pack(r, coords), 4).tolist() == coords
