import numpy as np
import pytest

from mf_config import settings
from mf_errors import KernelNotClosed, KernelNotAbelian, KernelNotNormal
from mf_extensions import (extension_make, from_construction, is_nontrivial, is_minimal, kernel_associators,
                           subgroups, survey_row, survey_small)
from mf_loop import LoopTable, cyclic, isomorphic
from mf_products import catalog

A3 = [0, 3, 4]


@pytest.fixture(scope='module')
def gl2_f2():
    return from_construction(catalog('gl2-semidirect', q=2))


def test_gl2_over_f2_is_minimal(gl2_f2):
    x = gl2_f2
    assert x.order == 24
    assert x.U.tolist() == [0, 1, 2, 3]
    for method in ('spinning', 'enumeration'):
        verdict = is_minimal(x, method)
        assert verdict
        assert verdict.detail == method
    assert is_minimal(x).detail == 'spinning'
    assert is_nontrivial(x)


def test_kernel_associators(gl2_f2):
    verdict = kernel_associators(gl2_f2)
    assert verdict and verdict.exhaustive


def test_central_kernel_is_not_minimal():
    x = from_construction(catalog('paige-times-cyclic', n=4))
    verdict = is_minimal(x)
    assert not verdict
    assert verdict.witness == (0, 2)
    assert verdict.detail == 'enumeration'
    assert verdict.exhaustive


def test_survey_marks_unchecked_witnesses(monkeypatch):
    monkeypatch.setitem(settings, 'table_cap', 200)
    line = survey_row('catalog:paige-times-cyclic,n=4', lambda: catalog('paige-times-cyclic', n=4), seed=0)
    assert line.startswith('catalog:paige-times-cyclic,n=4 480 4 ')
    assert line.endswith('minimal=n witness=sampled:{0,2}')


@pytest.fixture(scope='module')
def paige_f2_semidirect():
    return from_construction(catalog('paige-semidirect', q=2))


def test_paige_semidirect_is_minimal(paige_f2_semidirect):
    x = paige_f2_semidirect
    assert len(x.U) == 64
    verdict = is_minimal(x, 'spinning')
    assert verdict
    assert kernel_associators(x, budget=2000, seed=1)


def test_minimality_methods_agree_on_paige_semidirect(paige_f2_semidirect):
    verdict = is_minimal(paige_f2_semidirect, 'enumeration')
    assert verdict and verdict.detail == 'enumeration'


def test_kernel_errors(s3):
    with pytest.raises(KernelNotClosed):
        extension_make(s3, [1, 2])
    with pytest.raises(KernelNotAbelian):
        extension_make(s3, range(6))
    with pytest.raises(KernelNotNormal):
        extension_make(s3, [0, 1])


# commutative with x^2 = 1 throughout; no group of order 6 has exponent 2
EXPONENT_TWO_6 = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 4, 2, 5, 3],
    [2, 4, 0, 5, 3, 1],
    [3, 2, 5, 0, 1, 4],
    [4, 5, 3, 1, 0, 2],
    [5, 3, 1, 4, 2, 0],
]


def test_kernel_associativity_is_checked_on_every_triple():
    t = LoopTable(np.array(EXPONENT_TWO_6))
    for seed in range(3):
        with pytest.raises(KernelNotAbelian, match='not associative') as info:
            extension_make(t, range(6), seed=seed)
        x, y, z = info.value.witness
        assert t.mul(t.mul(x, y), z) != t.mul(x, t.mul(y, z))


def test_group_extension(s3):
    x = extension_make(s3, A3)
    assert x.U.tolist() == A3
    assert x.quotient.order == 2
    assert isomorphic(x.kernel_loop(), cyclic(3))
    verdict = is_minimal(x)
    assert verdict and verdict.detail == 'enumeration'
    # S3 is associative
    assert not is_nontrivial(x)


def test_subgroups_of_a_cyclic_group():
    assert [S.tolist() for S in subgroups(cyclic(4).table)] == [[0], [0, 2], [0, 1, 2, 3]]
    assert len(subgroups(cyclic(6).table)) == 4


def test_survey_below_every_row():
    assert survey_small(10) == []


def test_survey_rows():
    lines = survey_small(30, (2,), seed=0, jobs=1)
    assert lines == ['catalog:gl2-semidirect,q=2 24 4 nontrivial=y minimal=y witness=spinning']


def test_survey_is_deterministic():
    one = survey_small(500, (2, 3), seed=0, jobs=1)
    assert [line.split()[0] for line in one] == ['catalog:gl2-semidirect,q=2', 'gd:F3,diag',
                                                 'catalog:gl2-semidirect,q=3']
    # a diagonal group acts by scalars: every line is invariant
    assert one[1].startswith('gd:F3,diag 36 9 nontrivial=n minimal=n')
    assert 'minimal=y witness=spinning' in one[2]
    assert survey_small(500, (2, 3), seed=0, jobs=2) == one
