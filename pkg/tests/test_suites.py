import pytest

from mf_errors import UnknownSuite, SuiteNotApplicable
from mf_linalg import gl2_enumerate
from mf_loop import cyclic
from mf_products import GdLoop
from mf_ring import field
from mf_suites import SuiteResult, Target, run_suites
from mf_zorn import paige_loop


def test_loop_suites_on_m2(m2):
    results = run_suites(Target(m2, name='m2'), ['moufang', 'dxy', 'psaut'], budget=2000, seed=0)
    assert [r.name for r in results] == ['moufang', 'dxy', 'psaut']
    for r in results:
        assert r, r.line()


def test_moufang_suite_finds_a_witness(broken5):
    [result] = run_suites(Target(broken5, name='broken'), ['moufang'])
    assert not result
    assert result.witness is not None
    assert result.line().startswith('suite moufang: FAIL Moufang law')


def test_psaut_on_a_small_loop(gd24):
    [result] = run_suites(Target(gd24), ['psaut'])
    assert result and result.exhaustive


def test_triality_suites(wreath_s3):
    results = run_suites(Target(wreath_s3.loop, wreath_s3), ['gzt', 'formulas'], jobs=2)
    assert all(results)
    assert results[0].exhaustive and results[1].exhaustive


def test_formulas_on_a_module_group(module_group):
    [result] = run_suites(Target(module_group.loop, module_group), ['formulas'], budget=3000, seed=1)
    assert result, result.line()


def test_operator_identities():
    r = field(2)
    [result] = run_suites(Target(paige_loop(r), algebra=r), ['altop'], budget=500)
    assert result
    assert result.line() == 'suite altop: PASS (sampled; 500 triples)'


def test_unknown_and_inapplicable_suites():
    t = Target(cyclic(3))
    with pytest.raises(UnknownSuite):
        run_suites(t, ['moufang', 'nosuch'])
    with pytest.raises(SuiteNotApplicable):
        run_suites(t, ['gzt'])
    with pytest.raises(SuiteNotApplicable):
        run_suites(t, ['altop'])


def test_result_lines():
    assert SuiteResult('moufang', True, detail='3 checks').line() == 'suite moufang: PASS (exhaustive; 3 checks)'
    failed = SuiteResult('dxy', False, (1, 2), 'R_{x,y} identity', exhaustive=False)
    assert failed.line() == 'suite dxy: FAIL R_{x,y} identity witness=(1, 2)'


def test_gzt_covers_the_order_24_loop(module_group):
    # |A| = 55296 and |C(sigma)| = 2304, both within the budget
    [result] = run_suites(Target(module_group.loop, module_group), ['gzt'], budget=60000, seed=0)
    assert result, result.line()
    assert result.exhaustive
    [small] = run_suites(Target(module_group.loop, module_group), ['gzt'], budget=2000, seed=0)
    assert small and not small.exhaustive


@pytest.mark.parametrize('q', [3, 5])
def test_operator_identities_on_invertible_triples(q):
    r = field(q)
    # not a Zorn loop, so triples are drawn from all invertible elements
    target = Target(GdLoop(r, gl2_enumerate(r)), algebra=r)
    [result] = run_suites(target, ['altop'], budget=20000, seed=q)
    assert result.line() == 'suite altop: PASS (sampled; 20000 triples)'
