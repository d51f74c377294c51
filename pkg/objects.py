import sys


class Coord(object):
    """ Coordinates of a syntactic element. Consists of:
            - Line number
            - (optional) column number, for the Lexer
    """
    __slots__ = ('line', 'column')

    def __init__(self, line, column=None):
        self.line = line
        self.column = column

    def __str__(self):
        if self.line:
            coord_str = "   @ %s:%s" % (self.line, self.column)
        else:
            coord_str = ""
        return coord_str


class Node(object):
    """
    Base class for the AST nodes of descriptors and group words.
    Every subclass declares __slots__ and lists its printable attributes
    in attr_names.
    """
    __slots__ = ()
    attr_names = ()

    def children(self):
        """ A sequence of all children that are Nodes. """
        return []

    def _repr(self, obj):
        """
        Get the representation of an object, with dedicated pprint-like format for lists.
        """
        if isinstance(obj, list):
            return '[' + (',\n '.join((self._repr(e).replace('\n', '\n ') for e in obj))) + '\n]'
        else:
            return repr(obj)

    def __repr__(self):
        """ Generates a python representation of the current node
        """
        result = self.__class__.__name__ + '('
        indent = ''
        separator = ''
        for name in self.__slots__:
            if name == 'coord':
                continue
            result += separator
            result += indent
            result += name + '=' + (
                self._repr(getattr(self, name)).replace('\n',
                                                        '\n  ' + (' ' * (len(name) + len(self.__class__.__name__)))))
            separator = ','
            indent = ' ' * len(self.__class__.__name__)
        result += indent + ')'
        return result

    def show(self, buf=sys.stdout, offset=0, attrnames=False, nodenames=False, showcoord=False, _my_node_name=None):
        """ Pretty print the Node and all its attributes and children (recursively) to a buffer.
            buf:
                Open IO buffer into which the Node is printed.
            offset:
                Initial offset (amount of leading spaces)
            attrnames:
                True if you want to see the attribute names in name=value pairs. False to only see the values.
            nodenames:
                True if you want to see the actual node names within their parents.
            showcoord:
                Do you want the coordinates of each Node to be displayed.
        """

        lead = ' ' * offset
        if nodenames and _my_node_name is not None:
            buf.write(lead + self.__class__.__name__ + ' <' + _my_node_name + '>:')
        else:
            buf.write(lead + self.__class__.__name__ + ': ')

        if self.attr_names:
            if attrnames:
                nvlist = [(n, getattr(self, n)) for n in self.attr_names if getattr(self, n) is not None]
                attrstr = ', '.join('%s=%s' % nv for nv in nvlist)
            else:
                vlist = [getattr(self, n) for n in self.attr_names]
                attrstr = ', '.join('%s' % v for v in vlist)
            buf.write(attrstr)

        coord = getattr(self, 'coord', None)
        if showcoord and coord:
            buf.write('%s' % coord)
        buf.write('\n')

        for (child_name, child) in self.children():
            child.show(buf, offset + 4, attrnames, nodenames, showcoord, child_name)


class NodeVisitor(object):
    """ A base NodeVisitor class for visiting AST nodes.
        Subclass it and define your own visit_XXX methods, where
        XXX is the class name you want to visit with these
        methods.

        Notes:

        *   generic_visit() will be called for AST nodes for which
            no visit_XXX method was defined.
        *   The children of nodes for which a visit_XXX was
            defined will not be visited - if you need this, call
            generic_visit() on the node.
    """

    _method_cache = None

    def visit(self, node: Node):
        """ Visit a node.
        """

        if self._method_cache is None:
            self._method_cache = {}

        visitor = self._method_cache.get(node.__class__.__name__, None)
        if visitor is None:
            method = 'visit_' + node.__class__.__name__
            visitor = getattr(self, method, self.generic_visit)
            self._method_cache[node.__class__.__name__] = visitor

        return visitor(node)

    def generic_visit(self, node: Node):
        """ Called if no explicit visitor function exists for a
            node. Implements preorder visiting of the node.
        """
        for i, c in node.children():
            self.visit(c)


#
# Descriptors:  kind:arg,arg,key=value,...
#
class Descriptor(Node):
    __slots__ = ('kind', 'args', 'coord')

    def __init__(self, kind, args, coord: Coord = None):
        self.kind = kind
        self.args = args
        self.coord = coord

    def positional(self):
        return [a.value for a in self.args if a.key is None]

    def keywords(self):
        return {a.key: a.value for a in self.args if a.key is not None}

    def children(self):
        for i, child in enumerate(self.args or []):
            yield 'args[%d]' % i, child

    attr_names = ('kind',)


class Arg(Node):
    __slots__ = ('key', 'value', 'coord')

    def __init__(self, key, value, coord: Coord = None):
        self.key = key
        self.value = value
        self.coord = coord

    def children(self):
        yield 'value', self.value

    attr_names = ('key',)


class IntLit(Node):
    __slots__ = ('value', 'coord')

    def __init__(self, value, coord: Coord = None):
        self.value = value
        self.coord = coord

    attr_names = ('value',)


class Name(Node):
    __slots__ = ('value', 'coord')

    def __init__(self, value, coord: Coord = None):
        self.value = value
        self.coord = coord

    attr_names = ('value',)


class PathLit(Node):
    __slots__ = ('value', 'coord')

    def __init__(self, value, coord: Coord = None):
        self.value = value
        self.coord = coord

    attr_names = ('value',)


class MatrixLit(Node):
    __slots__ = ('rows', 'coord')

    def __init__(self, rows, coord: Coord = None):
        self.rows = rows
        self.coord = coord

    attr_names = ('rows',)


class ZornLit(Node):
    __slots__ = ('a', 'v', 'w', 'b', 'coord')

    def __init__(self, a, v, w, b, coord: Coord = None):
        self.a = a
        self.v = v
        self.w = w
        self.b = b
        self.coord = coord

    attr_names = ('a', 'v', 'w', 'b')


#
# Group words:  u^{-rho n^{-rho} m^{rho2}} [a,b] (x y)^-1 ...
#
class Word(Node):
    __slots__ = ('factors', 'coord')

    def __init__(self, factors, coord: Coord = None):
        self.factors = factors
        self.coord = coord

    def children(self):
        for i, child in enumerate(self.factors):
            yield 'factors[%d]' % i, child


class Factor(Node):
    """ A base raised to a list of exponent items, applied left to right. """
    __slots__ = ('base', 'exponents', 'coord')

    def __init__(self, base, exponents, coord: Coord = None):
        self.base = base
        self.exponents = exponents
        self.coord = coord

    def children(self):
        yield 'base', self.base
        for i, child in enumerate(self.exponents):
            yield 'exponents[%d]' % i, child


class Symbol(Node):
    __slots__ = ('name', 'coord')

    def __init__(self, name, coord: Coord = None):
        self.name = name
        self.coord = coord

    attr_names = ('name',)


class One(Node):
    __slots__ = ('coord',)

    def __init__(self, coord: Coord = None):
        self.coord = coord


class Commutator(Node):
    """ [x, y] = x^-1 y^-1 x y """
    __slots__ = ('left', 'right', 'coord')

    def __init__(self, left, right, coord: Coord = None):
        self.left = left
        self.right = right
        self.coord = coord

    def children(self):
        yield 'left', self.left
        yield 'right', self.right


class Auto(Node):
    """ rho, rho2 or sigma; with inverse set the element is inverted first. """
    __slots__ = ('kind', 'inverse', 'coord')

    def __init__(self, kind, inverse=False, coord: Coord = None):
        self.kind = kind
        self.inverse = inverse
        self.coord = coord

    attr_names = ('kind', 'inverse')


class Power(Node):
    __slots__ = ('exponent', 'coord')

    def __init__(self, exponent, coord: Coord = None):
        self.exponent = exponent
        self.coord = coord

    attr_names = ('exponent',)


class Conj(Node):
    """ Conjugation by the value of a factor: x^y = y^-1 x y. """
    __slots__ = ('by', 'coord')

    def __init__(self, by, coord: Coord = None):
        self.by = by
        self.coord = coord

    def children(self):
        yield 'by', self.by
