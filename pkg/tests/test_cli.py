import pytest

from mf import main, OK, FAILED, USAGE
from mf_config import settings
from mf_loop import read_loop_file


def test_build(capsys):
    assert main(['build', 'gd:F2,all']) == OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == 'gd:F2,all order 24'
    assert 'moufang: PASS (exhaustive)' in out
    assert 'associative: FAIL' in out


def test_build_writes_a_table(tmp_path, capsys):
    path = tmp_path / 'gd.loop'
    assert main(['build', 'gd:F2,all', '-o', str(path)]) == OK
    assert read_loop_file(str(path)).order == 24
    assert 'wrote table of order 24' in capsys.readouterr().out


def test_check_a_table_file(tmp_path, capsys, s3):
    from mf_loop import write_table
    path = tmp_path / 's3.loop'
    write_table(s3, str(path))
    assert main(['check', str(path), '-s', 'moufang,dxy']) == OK
    out = capsys.readouterr().out.splitlines()
    assert out == ['suite moufang: PASS (exhaustive; 4 checks)', 'suite dxy: PASS (exhaustive; 7 checks)']


def test_check_a_corrupted_table(broken5_file, capsys):
    assert main(['check', broken5_file]) == FAILED
    assert 'suite moufang: FAIL' in capsys.readouterr().out


def test_unknown_suite(capsys):
    assert main(['check', 'gd:F2,all', '-s', 'moufang,nosuch']) == USAGE
    assert 'unknown suite nosuch' in capsys.readouterr().err


def test_suite_that_does_not_apply(capsys):
    assert main(['check', 'gd:F2,all', '-s', 'gzt']) == USAGE
    assert 'needs a group with triality' in capsys.readouterr().err


def test_bad_descriptor(capsys):
    assert main(['build', 'gd:F2,,all']) == USAGE
    assert 'Parser Error' in capsys.readouterr().err


def test_check_triality(capsys):
    assert main(['check-triality', 'wreath:S3']) == OK
    assert 'triality: PASS (exhaustive)' in capsys.readouterr().out


def test_triality_fails_in_dimension_three(capsys):
    assert main(['check-triality', 'wreathmod:F2,3']) == FAILED
    assert 'triality fails at n=3' in capsys.readouterr().err


def test_minimal_with_a_central_kernel(capsys):
    assert main(['minimal', 'catalog:paige-times-cyclic,n=4', '--cap', '200']) == FAILED
    out = capsys.readouterr().out
    assert 'nontrivial: undecided' in out
    assert 'invariant subgroup {0,2}' in out


def test_minimal_by_enumeration(capsys):
    assert main(['minimal', 'catalog:gl2-semidirect,q=2', '-m', 'enumeration']) == OK
    out = capsys.readouterr().out.splitlines()
    assert out == ['catalog:gl2-semidirect,q=2 |E| = 24 |U| = 4', 'nontrivial: yes', 'minimal: yes (enumeration)']


def test_minimal_needs_a_kernel(capsys):
    assert main(['minimal', 'paige:q=2']) == USAGE


def test_survey_below_every_row(capsys, tmp_path):
    path = tmp_path / 'survey.txt'
    assert main(['survey', '--bound', '10', '-o', str(path)]) == OK
    assert capsys.readouterr().out == ''
    assert path.read_text() == ''


def test_usage_errors(capsys):
    assert main(['frobnicate']) == USAGE
    assert main(['export', 'gd:F2,all']) == USAGE
    assert 'export needs --out' in capsys.readouterr().err


def test_export_handle_and_rebuild(tmp_path, capsys):
    path = tmp_path / 'paige3.loop'
    assert main(['export', 'paige:q=3', '--cap', '100', '-o', str(path)]) == OK
    assert read_loop_file(str(path)) == ('paige:q=3', 1080)
    assert main(['build', str(path), '--budget', '500']) == OK
    out = capsys.readouterr().out
    assert 'paige:q=3 order 1080' in out
    assert 'moufang: PASS (sampled)' in out


def test_settings_are_restored():
    before = dict(settings)
    main(['build', 'gd:F2,all', '--seed', '7', '--cap', '10'])
    assert dict(settings) == before


@pytest.mark.parametrize('flag', ['-d', '--allow-failing'])
def test_common_flags(flag, capsys):
    assert main(['build', 'parabolic:F2', flag]) == OK
