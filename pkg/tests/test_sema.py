import io
import logging

import pytest

from mf_errors import DescriptorError, NonPrimeCharacteristic, NotInvertible, subscribe_errors
from mf_loop import isomorphic, materialize, symmetric, write_table, write_handle
from mf_sema import parse_descriptor, ring_from_descriptor, ring_from_name, ring_label, build
from objects import IntLit, Name, MatrixLit, PathLit, ZornLit


def test_parse_tree():
    node = parse_descriptor('gd:F3,[[1,1],[0,1]],projective=1')
    assert node.kind == 'gd'
    first, second = node.positional()
    assert isinstance(first, Name) and first.value == 'F3'
    assert isinstance(second, MatrixLit) and second.rows == [[1, 1], [0, 1]]
    assert isinstance(node.keywords()['projective'], IntLit)
    path = parse_descriptor('file:data/m2.loop').positional()[0]
    assert isinstance(path, PathLit) and path.value == 'data/m2.loop'
    assert parse_descriptor('catalog:gl2-semidirect,q=2').positional()[0].value == 'gl2-semidirect'


@pytest.mark.parametrize('text, order', [
    ('paige:q=2', 120),
    ('sl:q=2', 120),
    ('parabolic:F2', 24),
    ('subloop:F2,zorn(1;1,0,0;0,0,0;1),zorn(1;0,0,0;1,0,0;1)', 6),
    ('subloop:F3,zorn(1;1,0,0;0,0,0;1),zorn(1;0,0,0;1,0,0;1),projective=1', 12),
    ('gd:F2,all', 24),
    ('gd:F3,diag', 36),
    ('gd:F2,[[1,1],[0,1]]', 8),
    ('sd:psl,F2,perp6', 7680),
    ('catalog:gl2-semidirect,q=2', 24),
    ('wreath:S3', 6),
    ('wreathmod:F2,2', 24),
])
def test_descriptor_orders(text, order):
    assert build(text).loop.order == order


@pytest.mark.parametrize('text', ['paige:q=2', 'gd:F2,[[1,1],[0,1]]', 'gd:F3,sl,projective=1', 'sd:psl,F2,perp6',
                                  'subloop:F3,zorn(1;1,0,0;0,0,0;1),projective=1'])
def test_names_reparse(text):
    c = build(text)
    assert c.name == text
    assert build(c.name).loop.order == c.loop.order


def test_group_constructions_keep_the_group():
    c = build('wreath:S3')
    assert c.group is not None
    assert isomorphic(materialize(c.loop), symmetric(3))
    c = build('wreathmod:F2,2')
    assert len(c.kernel) == 4
    assert c.linear is not None


@pytest.mark.parametrize('text', [
    'nosuch:1',
    'gd:F2,nosuch',
    'gd:F2',
    'gd:F2,[[1,2],[0,1]]',
    'gd:F2,[[1,0,0],[0,1,0],[0,0,1]]',
    'sd:sl,F2',
    'paige',
    'paige:q=x',
    'wreath:Q8',
    'gd:',
    'gd:F2,,all',
    'subloop:F2',
    'subloop:F2,all',
    'subloop:F2,zorn(1;1,0;0,0,0;1)',
    'subloop:F2,zorn(2;0,0,0;0,0,0;1)',
])
def test_descriptor_errors_are_reported(text):
    errors = []
    with subscribe_errors(errors.append):
        with pytest.raises(DescriptorError):
            build(text)
    assert errors


def test_ring_descriptors():
    assert ring_from_descriptor('Fp:5').order == 5
    assert ring_from_descriptor('Zn:6').order == 6
    assert not ring_from_descriptor('Zn:6').is_field
    f4 = ring_from_descriptor('Fpk:2,2,1,1')
    assert f4.order == 4 and f4.is_field
    assert ring_from_descriptor('F9').order == 9
    assert ring_label(ring_from_name('F4')) == 'F4'
    assert ring_label(ring_from_name('Z6')) == 'Z6'
    with pytest.raises(NonPrimeCharacteristic):
        ring_from_descriptor('Fp:4')
    with pytest.raises(DescriptorError):
        ring_from_descriptor('Fpk:2,2,1')
    with pytest.raises(DescriptorError):
        ring_from_name('Q5')


def test_table_files(tmp_path, s3):
    path = tmp_path / 's3.loop'
    write_table(s3, str(path))
    c = build('file:%s' % path)
    assert c.loop == s3
    c = build('wreath:%s' % path)
    assert c.loop.order == 6


def test_handle_files_are_rebuilt(tmp_path):
    path = tmp_path / 'm2.handle'
    write_handle(str(path), 'paige:q=2', 120)
    c = build('file:%s' % path)
    assert c.name == 'paige:q=2'
    assert c.loop.order == 120


def test_zorn_literals():
    node = parse_descriptor('subloop:F3,zorn(1;2,0,0;0,0,1;1)')
    z = node.positional()[1]
    assert isinstance(z, ZornLit)
    assert (z.a, z.v, z.w, z.b) == (1, [2, 0, 0], [0, 0, 1], 1)
    with pytest.raises(NotInvertible):
        build('subloop:F2,zorn(0;0,0,0;0,0,0;0)')


def test_show_descriptor_tree():
    buf = io.StringIO()
    parse_descriptor('gd:F2,all,projective=1').show(buf, attrnames=True)
    assert buf.getvalue().splitlines() == [
        'Descriptor: kind=gd',
        '    Arg: ',
        '        Name: value=F2',
        '    Arg: ',
        '        Name: value=all',
        '    Arg: key=projective',
        '        IntLit: value=1',
    ]


def test_debug_log_shows_the_tree(caplog):
    with caplog.at_level(logging.DEBUG, logger='mf_sema'):
        build('parabolic:F2')
    assert 'Descriptor: kind=parabolic' in caplog.text
