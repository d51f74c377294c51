import pytest

from mf_lexer import MFLexer


@pytest.fixture
def lexer():
    errors = []
    m = MFLexer(error_func=lambda msg, line, column: errors.append((msg, line, column))).build()
    m.errors = errors
    return m


def tokens(lexer, text):
    return [line.split('(', 1)[1].split(',', 1)[0] for line in lexer.scan(text).splitlines()]


def test_descriptor_tokens(lexer):
    assert lexer.scan('gd:F2') == "LexToken(ID,'gd',1,0)\nLexToken(COLON,':',1,2)\nLexToken(ID,'F2',1,3)\n"
    assert tokens(lexer, 'catalog:gl2-semidirect,q=2') == ['ID', 'COLON', 'ID', 'COMMA', 'ID', 'EQUALS', 'INT']
    assert tokens(lexer, 'file:data/m2.loop') == ['ID', 'COLON', 'PATH']


def test_keywords(lexer):
    assert tokens(lexer, 'zorn(1;0,0,0;0,0,0;1)')[:3] == ['ZORN', 'LPAREN', 'INT']
    assert tokens(lexer, 'rho^sigma rho2') == ['RHO', 'CARET', 'SIGMA', 'RHO2']


def test_illegal_character(lexer):
    assert tokens(lexer, 'gd:F2 @') == ['ID', 'COLON', 'ID']
    assert lexer.errors == [("Illegal character '@'", 1, 7)]


def test_lines_are_counted(lexer):
    lexer.scan('x\n\n@')
    assert lexer.errors[0][1:] == (3, 1)
