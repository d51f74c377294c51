"""
Construction descriptors.

A descriptor names a loop and how to build it:

    paige:q=<q>  psl:q=<q>  sl:q=<q>     loops of norm-one Zorn matrices
    parabolic:<ring>                      the parabolic subloop of O(R)
    subloop:<ring>,zorn(a;v1,v2,v3;w1,w2,w3;b),...[,projective=1]
    gd:<ring>,<all|diag|sl|[[a,b],[c,d]],...>[,projective=1]
    sd:<sl|psl|parabolic>,<ring>,<full|perp|perp6>
    catalog:<name>,<key>=<value>,...
    wreath:<S<k>|Z<n>|loop file>
    wreathmod:<ring>,<n>[,[[...]],...]
    file:<loop file>

Rings are written F<q> or Z<n> inside a descriptor; on their own they may
also be given as Fp:<p>, Fpk:<p>,<k>,<c0>,...,<c_{k-1}> or Zn:<n>.
Builder checks a parsed descriptor and returns the Construction.
"""

import io
import logging
import re

import numpy as np

from mf_errors import DescriptorError, error
from mf_linalg import gl2_enumerate, eye
from mf_loop import LoopTable, cyclic, symmetric, read_loop_file
from mf_parser import DescriptorParser
from mf_products import (Construction, gd_construction, sd_construction, sd_base, sd_module, catalog,
                         diagonal_group, sl2_group)
from mf_ring import RingSpec, ring_make, field, integers_mod, prime_field
from mf_triality import matrix_group, wreath_make, wreath_module_make
from mf_zorn import sl_loop, paige_loop, parabolic_subloop, zorn_subloop
from objects import NodeVisitor, Descriptor, IntLit, Name, PathLit, MatrixLit, ZornLit

log = logging.getLogger(__name__)

_RING_NAME = re.compile(r'^([FZ])(\d+)$')
_GROUP_NAME = re.compile(r'^([SZ])(\d+)$')

_parser = None


def _descriptor_parser():
    global _parser
    if _parser is None:
        _parser = DescriptorParser()
    return _parser


def parse_descriptor(text) -> Descriptor:
    return _descriptor_parser().parse(text)


def ring_from_name(name):
    """ F<q> is the field with q elements, Z<n> the integers modulo n. """
    m = _RING_NAME.match(name)
    if not m:
        raise DescriptorError("%r is not a ring (write F<q> or Z<n>)" % name, witness=name)
    kind, n = m.group(1), int(m.group(2))
    return field(n) if kind == 'F' else integers_mod(n)


def ring_label(ring):
    """ The short name of a ring, as written inside descriptors. """
    return ('F%d' if ring.is_field else 'Z%d') % ring.order


def ring_from_descriptor(text):
    """ Fp:<p>, Fpk:<p>,<k>,<coefficients>, Zn:<n> or the short forms F<q>, Z<n>. """
    if _RING_NAME.match(text.strip()):
        return ring_from_name(text.strip())
    node = parse_descriptor(text)
    args = [a.value for a in node.args]
    if not all(isinstance(a, IntLit) for a in args):
        raise DescriptorError("ring descriptor %r takes integers only" % text, witness=text)
    ints = [a.value for a in args]
    if node.kind == 'Fp' and len(ints) == 1:
        return prime_field(ints[0])
    if node.kind == 'Zn' and len(ints) == 1:
        return integers_mod(ints[0])
    if node.kind == 'Fpk' and len(ints) >= 2 and len(ints) == 2 + ints[1]:
        return ring_make(RingSpec.extension_field(ints[0], ints[1], ints[2:]))
    raise DescriptorError("malformed ring descriptor %r" % text, witness=text)


class Builder(NodeVisitor):
    """ Builds the construction a descriptor names.  Problems with the
        descriptor itself are reported through error() and raised as
        DescriptorError; failures of the construction propagate unchanged.
    """

    def __init__(self, allow_failing=False, cap=None):
        self.allow_failing = allow_failing
        self.cap = cap

    def fail(self, node, msg):
        coord = getattr(node, 'coord', None)
        text = '%s: %s' % (coord, msg) if coord else msg
        error(text)
        raise DescriptorError(text)

    # Argument helpers
    def _arity(self, node, low, high=None):
        pos = node.positional()
        high = low if high is None else high
        if not low <= len(pos) <= high:
            want = str(low) if low == high else '%d to %d' % (low, high)
            self.fail(node, "%s takes %s positional arguments, got %d" % (node.kind, want, len(pos)))
        return pos

    def _int(self, node, value, what):
        if not isinstance(value, IntLit):
            self.fail(node, "%s must be an integer" % what)
        return value.value

    def _name(self, node, value, what):
        if not isinstance(value, Name):
            self.fail(node, "%s must be a name" % what)
        return value.value

    def _keyword_int(self, node, key, default=None):
        kw = node.keywords()
        if key not in kw:
            if default is None:
                self.fail(node, "%s needs %s=<integer>" % (node.kind, key))
            return default
        return self._int(node, kw[key], key)

    def _ring(self, node, value):
        if isinstance(value, Name):
            return ring_from_name(value.value)
        if isinstance(value, IntLit):
            return field(value.value)
        self.fail(node, "expected a ring such as F4 or Z6")

    def _matrices(self, node, ring, values, n):
        mats = []
        for v in values:
            if not isinstance(v, MatrixLit):
                self.fail(node, "expected a matrix literal, got %s" % v.__class__.__name__)
            rows = v.rows
            if len(rows) != n or any(len(r) != n for r in rows):
                self.fail(v, "generators must be %dx%d" % (n, n))
            mat = np.array(rows, dtype=np.int64)
            if (mat >= ring.order).any():
                self.fail(v, "matrix entries must be ring codes below %d" % ring.order)
            mats.append(mat)
        return mats

    # Descriptors
    def visit_Descriptor(self, node: Descriptor):
        method = getattr(self, 'build_' + node.kind.replace('-', '_'), None)
        if method is None:
            self.fail(node, "unknown construction %r" % node.kind)
        c = method(node)
        log.info("built %s (order %d)", c.name, c.loop.order)
        return c

    def _zorn(self, node, make):
        q = self._keyword_int(node, 'q')
        ring = field(q)
        loop = make(ring)
        return Construction('%s:q=%d' % (node.kind, q), loop, algebra=ring)

    def build_paige(self, node):
        return self._zorn(node, paige_loop)

    build_psl = build_paige

    def build_sl(self, node):
        return self._zorn(node, sl_loop)

    def build_parabolic(self, node):
        ring = self._ring(node, self._arity(node, 1)[0])
        return Construction('parabolic:%s' % ring_label(ring), parabolic_subloop(ring), algebra=ring)

    def build_subloop(self, node):
        pos = node.positional()
        if len(pos) < 2:
            self.fail(node, "subloop takes a ring and Zorn generators")
        ring = self._ring(node, pos[0])
        projective = bool(self._keyword_int(node, 'projective', 0))
        gens = []
        for v in pos[1:]:
            if not isinstance(v, ZornLit):
                self.fail(node, "expected zorn(a;v1,v2,v3;w1,w2,w3;b), got %s" % v.__class__.__name__)
            if len(v.v) != 3 or len(v.w) != 3:
                self.fail(v, "the vector parts of a Zorn matrix have three entries")
            coords = [v.a] + list(v.v) + list(v.w) + [v.b]
            if max(coords) >= ring.order:
                self.fail(v, "Zorn entries must be ring codes below %d" % ring.order)
            gens.append(coords)
        label = ','.join('zorn(%d;%s;%s;%d)' % (g[0], ','.join(map(str, g[1:4])), ','.join(map(str, g[4:7])), g[7])
                         for g in gens)
        name = 'subloop:%s,%s%s' % (ring_label(ring), label, ',projective=1' if projective else '')
        loop = zorn_subloop(ring, gens, projective, cap=self.cap, descriptor=name)
        return Construction(name, loop, algebra=ring)

    def build_gd(self, node):
        pos = node.positional()
        if len(pos) < 2:
            self.fail(node, "gd takes a ring and a group")
        ring = self._ring(node, pos[0])
        projective = bool(self._keyword_int(node, 'projective', 0))
        if len(pos) == 2 and isinstance(pos[1], Name):
            which = pos[1].value
            if which == 'all':
                mats = gl2_enumerate(ring)
            elif which == 'diag':
                mats = diagonal_group(ring)
            elif which == 'sl':
                mats = sl2_group(ring)
            else:
                self.fail(node, "unknown matrix group %r (all, diag, sl or generators)" % which)
            label = which
        else:
            gens = self._matrices(node, ring, pos[1:], 2)
            mats = matrix_group(ring, gens, self.cap)[0]
            label = ','.join('[%s]' % ','.join('[%s]' % ','.join(str(int(c)) for c in row) for row in g) for g in gens)
        name = 'gd:%s,%s%s' % (ring_label(ring), label, ',projective=1' if projective else '')
        return gd_construction(ring, mats, projective, name=name)

    def build_sd(self, node):
        base, ring, module = self._arity(node, 3)
        base = self._name(node, base, 'the base loop')
        module = self._name(node, module, 'the module')
        ring = self._ring(node, ring)
        return sd_construction(sd_base(base, ring), sd_module(module, ring),
                               name='sd:%s,%s,%s' % (base, ring_label(ring), module))

    def build_catalog(self, node):
        name = self._name(node, self._arity(node, 1)[0], 'the catalog entry')
        params = {k: self._int(node, v, k) for k, v in node.keywords().items()}
        return catalog(name, **params)

    def build_wreath(self, node):
        arg = self._arity(node, 1)[0]
        if isinstance(arg, PathLit):
            base = read_loop_file(arg.value)
            label = arg.value
        else:
            label = self._name(node, arg, 'the base group')
            m = _GROUP_NAME.match(label)
            if not m:
                self.fail(node, "base group must be S<k>, Z<n> or a loop file")
            k = int(m.group(2))
            base = symmetric(k) if m.group(1) == 'S' else cyclic(k)
        G = wreath_make(base)
        return Construction('wreath:%s' % label, G.loop, group=G)

    def build_wreathmod(self, node):
        pos = node.positional()
        if len(pos) < 2:
            self.fail(node, "wreathmod takes a ring, a dimension and optional generators")
        ring = self._ring(node, pos[0])
        n = self._int(node, pos[1], 'the dimension')
        if len(pos) > 2:
            gens = self._matrices(node, ring, pos[2:], n)
        else:
            gens = default_generators(ring, n)
        G = wreath_module_make(ring, n, gens, allow_failing=self.allow_failing, cap=self.cap)
        kernel = G.abelian_part() if ring.is_field else None
        return Construction('wreathmod:%s,%d' % (ring_label(ring), n), G.loop, kernel=kernel, group=G,
                            linear=ring if ring.spec.k == 1 and ring.is_field else None)

    def build_file(self, node):
        arg = self._arity(node, 1)[0]
        if not isinstance(arg, (PathLit, Name)):
            self.fail(node, "file takes a path")
        t = read_loop_file(arg.value)
        if not isinstance(t, LoopTable):
            # a loop-handle file: rebuild from its descriptor
            return build(t[0], allow_failing=self.allow_failing, cap=self.cap)
        return Construction('file:%s' % arg.value, t)


def default_generators(ring, n):
    """ GL_n(R) generators: all of GL_2 for n = 2, otherwise the elementary
        transvections and diag(u, 1, ..., 1) for the units u.
    """
    if n == 2:
        return [m.array() for m in gl2_enumerate(ring)]
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                t = eye(n)
                t[i, j] = 1
                gens.append(t)
    for u in ring.units():
        if u != 1:
            d = eye(n)
            d[0, 0] = u
            gens.append(d)
    return gens or [eye(n)]


def build(text, allow_failing=False, cap=None) -> Construction:
    """ Parse and build a descriptor. """
    node = parse_descriptor(text)
    if log.isEnabledFor(logging.DEBUG):
        buf = io.StringIO()
        node.show(buf, attrnames=True, showcoord=True)
        log.debug("descriptor %s:\n%s", text, buf.getvalue().rstrip())
    return Builder(allow_failing, cap).visit(node)
