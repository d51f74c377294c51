"""
Evaluation of group words in a group with triality.

A word such as  u^{-rho n^{-rho} m^{rho2}} w^{[n^{rho2}, m^{-rho}]}  is parsed
once by WordParser and evaluated by WordEvaluator against a group and an
environment binding the symbols.  Exponent items act left to right:

    x^{a b} = (x^a)^b,    x^y = y^-1 x y,    x^-rho = (x^-1)^rho,
    [x, y] = x^-1 y^-1 x y

Elements are whatever the group uses (numpy rows), so binding symbols to
batches of elements evaluates the word on the whole batch at once.
"""

from functools import lru_cache

from mf_errors import DescriptorError
from mf_parser import WordParser
from objects import NodeVisitor

_parser = None


def _word_parser():
    global _parser
    if _parser is None:
        _parser = WordParser()
    return _parser


@lru_cache(maxsize=64)
def compile_word(text):
    return _word_parser().parse(text)


class WordEvaluator(NodeVisitor):

    def __init__(self, group, env):
        self.group = group
        self.env = env

    def visit_Word(self, node):
        acc = None
        for factor in node.factors:
            value = self.visit(factor)
            acc = value if acc is None else self.group.mul(acc, value)
        return acc

    def visit_Factor(self, node):
        x = self.visit(node.base)
        for item in node.exponents:
            x = self.visit(item)(x)
        return x

    def visit_Symbol(self, node):
        try:
            return self.env[node.name]
        except KeyError:
            raise DescriptorError("unbound symbol %r in group word%s" % (node.name, node.coord or ''))

    def visit_One(self, node):
        return self.group.identity()

    def visit_Commutator(self, node):
        return self.group.comm(self.visit(node.left), self.visit(node.right))

    # Exponent items evaluate to the map they apply
    def visit_Auto(self, node):
        g = self.group
        auto = {'rho': g.rho, 'rho2': g.rho2, 'sigma': g.sigma}[node.kind]
        if node.inverse:
            return lambda x: auto(g.inv(x))
        return auto

    def visit_Power(self, node):
        return lambda x: self.group.power(x, node.exponent)

    def visit_Conj(self, node):
        by = self.visit(node.by)
        return lambda x: self.group.conj(x, by)


def evaluate(group, text, **env):
    """ Value of the group word text with the given symbol bindings. """
    return WordEvaluator(group, env).visit(compile_word(text))
