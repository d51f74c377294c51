"""
The split Cayley algebra O(R) of Zorn vector matrices

        ( a  v )
        ( w  b )      a, b in R,  v, w in R^3

with coordinates ordered (a, v1, v2, v3, w1, w2, w3, b) and product

        a = a1 a2 + v1.w2            v = a1 v2 + b2 v1 - w1 x w2
        w = a2 w1 + b1 w2 + v1 x v2  b = w1.v2 + b1 b2

N(x) = ab - v.w is multiplicative and x conj(x) = N(x) 1 for
conj(x) = (b, -v, -w, a).  Everything here works on numpy arrays of ring
codes whose last axis has length 8, so products of whole batches are one
call.  Linear operators are 8x8 matrices acting on coordinate rows:
row i of the matrix of L_x is x e_i.
"""

import logging
from functools import lru_cache

import numpy as np

from mf_config import settings
from mf_errors import NotInvertible, UnsupportedSize, NotASubloop, TooLarge, TooLargeToMaterialize, RingMismatch
from mf_linalg import Mat2, Vec, Subspace, gl2_enumerate, kernel, vec_mat, mat_prod, eye, unpack
from mf_loop import Loop, materialize
from mf_ring import Ring

log = logging.getLogger(__name__)

DIM = 8
ENUM_CHUNK = 1 << 18

ONE = np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=np.int64)


# Batched arithmetic on coordinate rows
def _dot(r, x, y):
    return r.add(r.add(r.mul(x[..., 0], y[..., 0]), r.mul(x[..., 1], y[..., 1])), r.mul(x[..., 2], y[..., 2]))


def _cross(r, x, y):
    return np.stack([r.sub(r.mul(x[..., 1], y[..., 2]), r.mul(x[..., 2], y[..., 1])),
                     r.sub(r.mul(x[..., 2], y[..., 0]), r.mul(x[..., 0], y[..., 2])),
                     r.sub(r.mul(x[..., 0], y[..., 1]), r.mul(x[..., 1], y[..., 0]))], axis=-1)


def _scale(r, s, v):
    return r.mul(np.asarray(s)[..., None], v)


def zorn_mul_codes(ring: Ring, x, y):
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    r = ring
    a1, v1, w1, b1 = x[..., 0], x[..., 1:4], x[..., 4:7], x[..., 7]
    a2, v2, w2, b2 = y[..., 0], y[..., 1:4], y[..., 4:7], y[..., 7]
    a = r.add(r.mul(a1, a2), _dot(r, v1, w2))
    v = r.sub(r.add(_scale(r, a1, v2), _scale(r, b2, v1)), _cross(r, w1, w2))
    w = r.add(r.add(_scale(r, a2, w1), _scale(r, b1, w2)), _cross(r, v1, v2))
    b = r.add(_dot(r, w1, v2), r.mul(b1, b2))
    lead = np.broadcast_shapes(x.shape[:-1], y.shape[:-1])
    a, b = (np.broadcast_to(np.asarray(s, dtype=np.int64), lead)[..., None] for s in (a, b))
    v, w = (np.broadcast_to(np.asarray(t, dtype=np.int64), lead + (3,)) for t in (v, w))
    return np.concatenate([a, v, w, b], axis=-1)


def norm_codes(ring: Ring, x):
    x = np.asarray(x, dtype=np.int64)
    return ring.sub(ring.mul(x[..., 0], x[..., 7]), _dot(ring, x[..., 1:4], x[..., 4:7]))


def conj_codes(ring: Ring, x):
    x = np.asarray(x, dtype=np.int64)
    return np.concatenate([x[..., 7:8], ring.neg(x[..., 1:7]), x[..., 0:1]], axis=-1)


def inv_codes(ring: Ring, x):
    n = norm_codes(ring, x)
    return _scale(ring, ring.inv(n), conj_codes(ring, x))


def polar_codes(ring: Ring, x, y):
    """ B(x, y) = N(x + y) - N(x) - N(y) """
    s = ring.add(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
    return ring.sub(ring.sub(norm_codes(ring, s), norm_codes(ring, x)), norm_codes(ring, y))


class ZornElem(object):
    """ An element of O(R). """
    __slots__ = ('ring', 'coords')

    def __init__(self, ring: Ring, a, v=(0, 0, 0), w=(0, 0, 0), b=0):
        self.ring = ring
        self.coords = np.array([ring.check(c) for c in (a,) + tuple(v) + tuple(w) + (b,)], dtype=np.int64)

    @classmethod
    def from_coords(cls, ring, coords):
        c = [int(x) for x in np.asarray(coords).ravel()]
        return cls(ring, c[0], c[1:4], c[4:7], c[7])

    @classmethod
    def identity(cls, ring):
        return cls.from_coords(ring, ONE)

    @property
    def a(self):
        return int(self.coords[0])

    @property
    def v(self):
        return Vec(self.ring, self.coords[1:4].tolist())

    @property
    def w(self):
        return Vec(self.ring, self.coords[4:7].tolist())

    @property
    def b(self):
        return int(self.coords[7])

    def _same(self, other):
        if not isinstance(other, ZornElem) or other.ring != self.ring:
            raise RingMismatch("Zorn matrices over different rings")

    def __mul__(self, other):
        return zorn_mul(self, other)

    def __add__(self, other):
        return zorn_add(self, other)

    def __neg__(self):
        return zorn_neg(self)

    def __eq__(self, other):
        return isinstance(other, ZornElem) and self.ring == other.ring and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.coords.tobytes())

    def __str__(self):
        return format_zorn(self.ring, self.coords)

    __repr__ = __str__


def format_zorn(ring, coords):
    f = ring.format
    c = [int(x) for x in np.asarray(coords).ravel()]
    return 'zorn(%s;%s;%s;%s)' % (f(c[0]), ','.join(f(x) for x in c[1:4]), ','.join(f(x) for x in c[4:7]), f(c[7]))


def zorn_mul(x: ZornElem, y: ZornElem) -> ZornElem:
    x._same(y)
    return ZornElem.from_coords(x.ring, zorn_mul_codes(x.ring, x.coords, y.coords))


def zorn_add(x: ZornElem, y: ZornElem) -> ZornElem:
    x._same(y)
    return ZornElem.from_coords(x.ring, x.ring.add(x.coords, y.coords))


def zorn_neg(x: ZornElem) -> ZornElem:
    return ZornElem.from_coords(x.ring, x.ring.neg(x.coords))


def zorn_norm(x: ZornElem):
    return int(norm_codes(x.ring, x.coords))


def zorn_conj(x: ZornElem) -> ZornElem:
    return ZornElem.from_coords(x.ring, conj_codes(x.ring, x.coords))


def zorn_inv(x: ZornElem) -> ZornElem:
    n = zorn_norm(x)
    if not x.ring.is_unit(n):
        raise NotInvertible("%s has norm %s" % (x, x.ring.format(n)), witness=str(x))
    y = ZornElem.from_coords(x.ring, inv_codes(x.ring, x.coords))
    if zorn_mul(x, y) != ZornElem.identity(x.ring):
        raise NotInvertible("inverse of %s failed to verify" % x, witness=str(x))
    return y


# Operators
def left_matrix(ring, x):
    """ Rows x e_i; batched over leading axes of x. """
    x = np.asarray(x, dtype=np.int64)
    return zorn_mul_codes(ring, x[..., None, :], eye(DIM))


def right_matrix(ring, x):
    x = np.asarray(x, dtype=np.int64)
    return zorn_mul_codes(ring, eye(DIM), x[..., None, :])


def _require_unit(ring, x, what):
    n = np.asarray(norm_codes(ring, x))
    units = ring.is_unit(n)
    if not np.all(units):
        raise NotInvertible("%s is not invertible" % what, witness=what)


def operator_codes(ring, kind, x, y=None):
    """ 8x8 matrix of L_x, R_x, T_x = L_x^-1 R_x, L_{x,y} = L_x L_y L_{yx}^-1 or
        D_{x,y} = L_x R_y L_{xy}^-1.
    """
    x = np.asarray(x, dtype=np.int64)
    if kind == 'L':
        return left_matrix(ring, x)
    if kind == 'R':
        return right_matrix(ring, x)
    _require_unit(ring, x, 'x')
    if kind == 'T':
        return mat_prod(ring, left_matrix(ring, inv_codes(ring, x)), right_matrix(ring, x))
    if y is None:
        raise ValueError("operator %s needs two elements" % kind)
    y = np.asarray(y, dtype=np.int64)
    _require_unit(ring, y, 'y')
    if kind == 'Lxy':
        yx = zorn_mul_codes(ring, y, x)
        return mat_prod(ring, mat_prod(ring, left_matrix(ring, x), left_matrix(ring, y)),
                        left_matrix(ring, inv_codes(ring, yx)))
    if kind == 'Dxy':
        xy = zorn_mul_codes(ring, x, y)
        return mat_prod(ring, mat_prod(ring, left_matrix(ring, x), right_matrix(ring, y)),
                        left_matrix(ring, inv_codes(ring, xy)))
    raise ValueError("unknown operator %r" % kind)


def operator(kind, x: ZornElem, y: ZornElem = None):
    return operator_codes(x.ring, kind, x.coords, None if y is None else y.coords)


@lru_cache(maxsize=settings.cache_size)
def cached_operator(ring, kind, x_key, y_key=None):
    """ operator_codes keyed by packed coordinates; x_key and y_key are bytes. """
    x = np.frombuffer(x_key, dtype=np.int64)
    y = None if y_key is None else np.frombuffer(y_key, dtype=np.int64)
    mat = operator_codes(ring, kind, x, y)
    mat.setflags(write=False)
    return mat


# Loops of invertible Zorn matrices
def lex_key(ring, x):
    """ Order-preserving code of the coordinate tuple (a first). """
    q = ring.order
    weights = q ** np.arange(DIM - 1, -1, -1, dtype=np.int64)
    return (np.asarray(x, dtype=np.int64) * weights).sum(axis=-1)


def from_key(ring, keys):
    q = ring.order
    weights = q ** np.arange(DIM - 1, -1, -1, dtype=np.int64)
    return (np.asarray(keys, dtype=np.int64)[..., None] // weights) % q


def canonical(ring, x):
    """ Representative of x modulo the norm-one scalars +-1: the lexicographically
        least of x and -x.
    """
    x = np.asarray(x, dtype=np.int64)
    neg = ring.neg(x)
    take = lex_key(ring, neg) < lex_key(ring, x)
    return np.where(take[..., None], neg, x)


class ZornLoop(Loop):
    """ A loop of invertible Zorn matrices given by its element list, identity
        first.  With projective set, products are taken modulo +-1.
    """

    def __init__(self, ring, elems, projective=False, descriptor=None):
        self.ring = ring
        self.elems = np.ascontiguousarray(elems, dtype=np.int64)
        self.order = len(self.elems)
        self.projective = projective
        self.descriptor = descriptor
        keys = lex_key(ring, self.elems)
        self._by_key = np.argsort(keys, kind='stable')
        self._keys = keys[self._by_key]

    def index(self, x):
        if self.projective:
            x = canonical(self.ring, x)
        keys = lex_key(self.ring, x)
        pos = np.clip(np.searchsorted(self._keys, keys), 0, self.order - 1)
        found = self._keys[pos] == keys
        if not np.all(found):
            bad = np.asarray(x).reshape(-1, DIM)[int(np.argmin(np.ravel(found)))]
            raise NotASubloop("%s lies outside the loop" % format_zorn(self.ring, bad),
                              witness=format_zorn(self.ring, bad))
        return self._by_key[pos]

    def mul_many(self, x, y):
        return self.index(zorn_mul_codes(self.ring, self.elems[np.asarray(x)], self.elems[np.asarray(y)]))

    def mul(self, x, y):
        return int(self.mul_many(x, y))

    def inv_many(self, x):
        return self.index(inv_codes(self.ring, self.elems[np.asarray(x)]))

    def inv(self, x):
        return int(self.inv_many(x))

    def element(self, x) -> ZornElem:
        return ZornElem.from_coords(self.ring, self.elems[int(x)])

    def name(self, x):
        return format_zorn(self.ring, self.elems[int(x)])

    def __repr__(self):
        return 'ZornLoop(order=%d, ring=%s%s)' % (self.order, self.ring.spec, ', projective' if self.projective else '')


def _identity_first(ring, elems):
    ident = np.nonzero(np.all(elems == ONE, axis=1))[0]
    rest = np.delete(elems, ident, axis=0)
    return np.concatenate([ONE[None, :], rest], axis=0)


def norm_one_elements(ring):
    """ All x with N(x) = 1, in lexicographic order. """
    if not ring.is_field:
        raise UnsupportedSize("the Paige loop needs a finite field, not %s" % ring.spec)
    total = ring.order ** DIM
    if total >= 1 << 40:
        raise TooLarge("enumerating O(F_%d) needs %d elements" % (ring.order, total))
    found = []
    for start in range(0, total, ENUM_CHUNK):
        x = from_key(ring, np.arange(start, min(total, start + ENUM_CHUNK), dtype=np.int64))
        found.append(x[norm_codes(ring, x) == 1])
    elems = np.concatenate(found)
    log.debug("O(%s) has %d elements of norm one", ring.spec, len(elems))
    return elems


def sl_loop(ring) -> ZornLoop:
    """ The Moufang loop of norm-one Zorn matrices, lazily. """
    return ZornLoop(ring, _identity_first(ring, norm_one_elements(ring)), descriptor='sl:q=%d' % ring.order)


def paige_loop(ring) -> ZornLoop:
    """ The norm-one Zorn matrices modulo +-1, lazily; canonical representatives. """
    elems = norm_one_elements(ring)
    elems = elems[np.all(canonical(ring, elems) == elems, axis=1)]
    return ZornLoop(ring, _identity_first(ring, elems), projective=True, descriptor='paige:q=%d' % ring.order)


def psl_loop(ring, cap=None):
    """ The Paige loop M(q) as a Cayley table.  When it is too large, the raised
        TooLargeToMaterialize carries the lazy loop as its handle.
    """
    lazy = paige_loop(ring)
    cap = settings.table_cap if cap is None else cap
    if lazy.order > cap:
        raise TooLargeToMaterialize("M(%d) has order %d, above the table cap %d" % (ring.order, lazy.order, cap),
                                    handle=lazy)
    return materialize(lazy, cap)


def parabolic_element(ring, g: Mat2, r) -> np.ndarray:
    """ (a11, (0, a12, r1), (r2, a21, 0), a22) for a = g. """
    a11, a12, a21, a22 = g.entries
    r1, r2 = (int(c) for c in (r.comps if isinstance(r, Vec) else r))
    return np.array([a11, 0, a12, r1, r2, a21, 0, a22], dtype=np.int64)


def parabolic_subloop(ring) -> ZornLoop:
    """ The parabolic elements over GL_2(R) x R^2, in the order of GL_2 enumeration
        then r, identity first.  Closure under products is checked.
    """
    mats = gl2_enumerate(ring)
    q = ring.order
    rs = unpack(ring, np.arange(q * q), 2)
    elems = np.array([parabolic_element(ring, g, r) for g in mats for r in rs], dtype=np.int64)
    loop = ZornLoop(ring, elems, descriptor='parabolic:%s' % ring.spec)
    if loop.order <= settings.table_cap:
        materialize(loop)
    else:
        rng = np.random.default_rng(settings.seed)
        x, y = rng.integers(loop.order, size=(2, settings.budget))
        loop.mul_many(x, y)
    return loop


def zorn_subloop(ring, gens, projective=False, cap=None, descriptor=None) -> ZornLoop:
    """ Subloop of the invertible Zorn matrices generated by gens, taken
        modulo +-1 when projective.  Products of the current elements are
        added until nothing new appears; a finite set closed under products
        is a subloop.
    """
    cap = settings.table_cap if cap is None else cap
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, DIM)
    _require_unit(ring, gens, 'generator')
    fix = (lambda x: canonical(ring, x)) if projective else (lambda x: x)
    elems = np.unique(np.concatenate([ONE[None, :], fix(gens)]), axis=0)
    fresh = elems
    while len(fresh):
        rows = max(1, ENUM_CHUNK // len(elems))
        found = [elems]
        for start in range(0, len(fresh), rows):
            part = fresh[start:start + rows, None]
            found.append(fix(zorn_mul_codes(ring, part, elems[None, :])).reshape(-1, DIM))
            found.append(fix(zorn_mul_codes(ring, elems[None, :], part)).reshape(-1, DIM))
        grown = np.unique(np.concatenate(found), axis=0)
        if len(grown) > cap:
            raise TooLarge("subloop generated by %d elements exceeds %d elements" % (len(gens), cap))
        fresh = grown[~np.isin(lex_key(ring, grown), lex_key(ring, elems))]
        elems = grown
    log.debug("closure of %d generators has %d elements", len(gens), len(elems))
    return ZornLoop(ring, _identity_first(ring, elems), projective, descriptor)


# Subspaces and modules of O(R)
def gram_matrix(ring):
    """ Matrix of the polar form B in the standard coordinates. """
    G = np.zeros((DIM, DIM), dtype=np.int64)
    G[0, 7] = G[7, 0] = 1
    minus = ring.neg(1)
    for k in range(3):
        G[1 + k, 4 + k] = G[4 + k, 1 + k] = minus
    return G


class ZornModule(object):
    """ A subspace U of O(R), or a quotient U/U0, with coordinates.  lift()
        returns representatives in O(R); coords() reads coordinates back.
    """

    def __init__(self, ring, space: Subspace, sub: Subspace = None, name='full'):
        self.ring = ring
        self.space = space
        self.sub = sub
        self.name = name
        self.rep = space if sub is None else Subspace(ring, sub.reduce(space.basis), DIM)
        self.dim = self.rep.dim

    @classmethod
    def full(cls, ring):
        return cls(ring, Subspace(ring, eye(DIM), DIM), name='full')

    def coords(self, v):
        v = np.asarray(v, dtype=np.int64)
        lead = v.shape[:-1]
        flat = v.reshape(-1, DIM)
        if self.sub is not None:
            flat = self.sub.reduce(flat)
        return self.rep.coords(flat).reshape(lead + (self.dim,))

    def lift(self, c):
        c = np.asarray(c, dtype=np.int64)
        if not self.dim:
            return np.zeros(c.shape[:-1] + (DIM,), dtype=np.int64)
        return vec_mat(self.ring, c, self.rep.basis)

    def contains(self, v):
        v = np.asarray(v, dtype=np.int64)
        return self.space.contains_each(v.reshape(-1, DIM)).reshape(v.shape[:-1])

    def __repr__(self):
        return 'ZornModule(%s, dim=%d)' % (self.name, self.dim)


class Perp(object):
    """ U = 1^perp; in characteristic 2 also the line U0 = <1> and U/U0. """
    __slots__ = ('space', 'line', 'quotient', 'module')

    def __init__(self, space, line, quotient, module):
        self.space = space
        self.line = line
        self.quotient = quotient
        self.module = module


def one_perp(ring) -> Perp:
    if not ring.is_field:
        raise UnsupportedSize("1^perp needs a field, not %s" % ring.spec)
    g = vec_mat(ring, ONE, gram_matrix(ring))
    space = Subspace(ring, kernel(ring, g[:, None]), DIM)
    module = ZornModule(ring, space, name='perp')
    line = quotient = None
    if space.contains(ONE):
        line = Subspace(ring, ONE[None, :], DIM)
        quotient = ZornModule(ring, space, line, name='perp6')
    log.debug("1^perp over %s has dimension %d%s", ring.spec, space.dim, ' and contains 1' if line else '')
    return Perp(space, line, quotient, module)
