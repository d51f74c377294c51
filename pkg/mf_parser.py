import ply.yacc as yacc

from functools import partial as bind

from mf_errors import DescriptorError, error
from mf_lexer import MFLexer
from objects import *


class MFParser:
    """ PLY parser for construction descriptors and group words.  Build one
        with the start symbol you need ('descriptor' or 'word'), then call
        parse().  Syntax errors are reported to the error subscribers and
        raised as DescriptorError.
    """

    tokens = ()

    start = 'descriptor'

    def __init__(self, error_func=None):
        """ Create a new Parser.
        """
        self.error_func = error_func if error_func else self.error
        self.parser = None
        self.lexer = None
        self.errors = []

        self.last_generated_tree = None

        self.lexer = MFLexer(error_func=bind(self.error_func, lexer=True)).build()
        self.tokens = self.lexer.tokens
        self.parser = yacc.yacc(module=self, start=self.start, write_tables=False, debug=False,
                                tabmodule='mf_%s_tab' % self.start, errorlog=yacc.NullLogger())

    def error(self, msg, lineno=None, colno=None, lexer=False):
        kind = 'Lexer' if lexer else 'Parser'
        if lineno and colno:
            text = '%s Error: [%d,%d] %s' % (kind, lineno, colno, msg)
        else:
            text = '%s Error: %s' % (kind, msg)
        self.errors.append(text)
        error(text)

    def parse(self, source, debug=False):
        self.errors = []
        self.last_generated_tree = None
        self.lexer.input(source)
        tree = self.parser.parse(source, lexer=self.lexer.lexer, debug=debug)
        if self.errors or tree is None:
            raise DescriptorError('; '.join(self.errors) or 'cannot parse %r' % source, witness=source)
        self.last_generated_tree = tree
        return tree

    def _token_coord(self, p, token_idx):
        last_cr = p.lexer.lexdata.rfind('\n', 0, p.lexpos(token_idx))
        if last_cr < 0:
            last_cr = -1
        column = (p.lexpos(token_idx) - last_cr)
        return Coord(p.lineno(token_idx), column)

    #
    # Descriptors
    #
    def p_descriptor(self, p):
        """ descriptor : ID COLON arglist
                       | ID
        """
        if len(p) == 4:
            p[0] = Descriptor(p[1], p[3], coord=self._token_coord(p, 1))
        else:
            p[0] = Descriptor(p[1], [], coord=self._token_coord(p, 1))

    def p_arglist(self, p):
        """ arglist : arg
                    | arglist COMMA arg
        """
        if len(p) == 2:
            p[0] = [p[1]]
        else:
            p[0] = p[1] + [p[3]]

    def p_arg_0(self, p):
        """ arg : value
        """
        p[0] = Arg(None, p[1], coord=p[1].coord)

    def p_arg_1(self, p):
        """ arg : ID EQUALS value
        """
        p[0] = Arg(p[1], p[3], coord=self._token_coord(p, 1))

    def p_value_int(self, p):
        """ value : INT
        """
        p[0] = IntLit(p[1], coord=self._token_coord(p, 1))

    def p_value_id(self, p):
        """ value : ID
        """
        p[0] = Name(p[1], coord=self._token_coord(p, 1))

    def p_value_path(self, p):
        """ value : PATH
        """
        p[0] = PathLit(p[1], coord=self._token_coord(p, 1))

    def p_value_matrix(self, p):
        """ value : LBRACKET rowlist RBRACKET
        """
        p[0] = MatrixLit(p[2], coord=self._token_coord(p, 1))

    def p_value_zorn(self, p):
        """ value : ZORN LPAREN INT SEMI intlist SEMI intlist SEMI INT RPAREN
        """
        p[0] = ZornLit(p[3], p[5], p[7], p[9], coord=self._token_coord(p, 1))

    def p_rowlist(self, p):
        """ rowlist : row
                    | rowlist COMMA row
        """
        if len(p) == 2:
            p[0] = [p[1]]
        else:
            p[0] = p[1] + [p[3]]

    def p_row(self, p):
        """ row : LBRACKET intlist RBRACKET
        """
        p[0] = p[2]

    def p_intlist(self, p):
        """ intlist : INT
                    | intlist COMMA INT
        """
        if len(p) == 2:
            p[0] = [p[1]]
        else:
            p[0] = p[1] + [p[3]]

    #
    # Group words
    #
    def p_word(self, p):
        """ word : factor
                 | word factor
        """
        if len(p) == 2:
            p[0] = Word([p[1]], coord=p[1].coord)
        else:
            p[1].factors.append(p[2])
            p[0] = p[1]

    def p_factor(self, p):
        """ factor : primary
                   | primary CARET exponent
                   | primary CARET LBRACE exponent_list RBRACE
        """
        if len(p) == 2:
            p[0] = Factor(p[1], [], coord=p[1].coord)
        elif len(p) == 4:
            p[0] = Factor(p[1], [p[3]], coord=p[1].coord)
        else:
            p[0] = Factor(p[1], p[4], coord=p[1].coord)

    def p_primary_one(self, p):
        """ primary : INT
        """
        coord = self._token_coord(p, 1)
        if p[1] != 1:
            self.error_func('only 1 may stand as a group element', coord.line, coord.column)
        p[0] = One(coord=coord)

    def p_primary_atom(self, p):
        """ primary : atom
        """
        p[0] = p[1]

    def p_atom_symbol(self, p):
        """ atom : ID
        """
        p[0] = Symbol(p[1], coord=self._token_coord(p, 1))

    def p_atom_group(self, p):
        """ atom : LPAREN word RPAREN
        """
        p[0] = p[2]

    def p_atom_commutator(self, p):
        """ atom : LBRACKET word COMMA word RBRACKET
        """
        p[0] = Commutator(p[2], p[4], coord=self._token_coord(p, 1))

    def p_exponent_list(self, p):
        """ exponent_list : exponent
                          | exponent_list exponent
        """
        if len(p) == 2:
            p[0] = [p[1]]
        else:
            p[0] = p[1] + [p[2]]

    def p_exponent_auto(self, p):
        """ exponent : RHO
                     | RHO2
                     | SIGMA
        """
        p[0] = Auto(p[1], False, coord=self._token_coord(p, 1))

    def p_exponent_auto_inv(self, p):
        """ exponent : MINUS RHO
                     | MINUS RHO2
                     | MINUS SIGMA
        """
        p[0] = Auto(p[2], True, coord=self._token_coord(p, 1))

    def p_exponent_power(self, p):
        """ exponent : INT
                     | MINUS INT
        """
        if len(p) == 2:
            p[0] = Power(p[1], coord=self._token_coord(p, 1))
        else:
            p[0] = Power(-p[2], coord=self._token_coord(p, 1))

    def p_exponent_conj(self, p):
        """ exponent : conj
        """
        p[0] = Conj(p[1], coord=p[1].coord)

    def p_conj(self, p):
        """ conj : atom
                 | atom CARET exponent
                 | atom CARET LBRACE exponent_list RBRACE
        """
        if len(p) == 2:
            p[0] = Factor(p[1], [], coord=p[1].coord)
        elif len(p) == 4:
            p[0] = Factor(p[1], [p[3]], coord=p[1].coord)
        else:
            p[0] = Factor(p[1], p[4], coord=p[1].coord)

    def p_error(self, p):
        if p is None:
            self.error_func('Unexpected end of input')
        else:
            self.error_func('Invalid token %r' % (p.value,), p.lineno, self.find_tok_column(p))

    def find_tok_column(self, token):
        """ Find the column of the token in its line.
        """
        last_cr = self.lexer.lexer.lexdata.rfind('\n', 0, token.lexpos)
        return token.lexpos - last_cr


class DescriptorParser(MFParser):
    start = 'descriptor'


class WordParser(MFParser):
    start = 'word'
