"""
Groups with triality and their Moufang loops.

A TrialityGroup is a finite group together with automorphisms rho and sigma.
Group elements are numpy integer rows whose last axis has the carrier's
width; every operation broadcasts over leading axes, so a batch of elements
is multiplied, inverted or twisted in one call.  Elements are numbered by a
mixed-radix code with the identity at code 0.

Three carriers are provided:

    TableTrialityGroup   a group given by its Cayley table, rho and sigma
                         given as permutations of its elements
    WreathGroup          G x G x G with rho cycling and sigma swapping the
                         first two coordinates
    WreathModuleGroup    A = T semidirect W for T = G x G x G, G <= GL_n(R)
                         acting on W = V (x) V (x) V, n = dim V

M(G) = { x^-1 x^sigma } is a Moufang loop under m.n = m^-rho n m^-rho2
(MoufangLoop, a lazy loop over the sorted codes of M(G)).
"""

import itertools
import logging
from functools import cached_property

import numpy as np

from mf_config import settings
from mf_errors import (AutomorphismOrderViolation, NotMoufangElement, BaseNotAssociative, TrialityFails,
                       OperatorDomainMismatch, NotAGroup, TooLarge)
from mf_linalg import Subspace, mat_prod, vec_mat, mat_inverse, eye, unpack
from mf_loop import Loop, LoopTable, Perm, Verdict, is_associative, materialize
from mf_words import evaluate

log = logging.getLogger(__name__)

CODE_LIMIT = 1 << 62
BATCH = 1 << 14

#: Multiplication formula: (m.u).(n.w) = (m.n).x
FORMULA_PRODUCT = 'u^{-rho n^{-rho} m^{rho2}} w^{[n^{rho2}, m^{-rho}]} u^{-rho2 n^{rho2} m^{-rho}}'
#: Inversion formula: (m.u)^-1 = m^-1.y
FORMULA_INVERSE = 'u^{rho m^{-1}} u^{rho2 m}'

# The pieces of the product formula that are linear in u and w
OPERATOR_D = 'u^{-rho n^{-rho} m^{rho2}} u^{-rho2 n^{rho2} m^{-rho}}'
OPERATOR_L = 'w^{[n^{rho2}, m^{-rho}]}'


class TrialityGroup(object):
    """ Common interface of the triality carriers.  Subclasses define width,
        radix, mul, inv, rho, sigma and format.
    """
    width = 1
    radix = ()
    descriptor = None

    def __init__(self):
        radix = np.asarray(self.radix, dtype=np.int64)
        total = 1
        for r in radix.tolist():
            total *= r
        if total >= CODE_LIMIT:
            raise TooLarge("group of order %d is too large to number" % total)
        self.order = total
        self._radix = radix
        self._weights = np.concatenate([[1], np.cumprod(radix[:-1])]).astype(np.int64)

    # Group structure
    def identity(self):
        return np.zeros(self.width, dtype=np.int64)

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def rho(self, a):
        raise NotImplementedError

    def rho2(self, a):
        return self.rho(self.rho(a))

    def sigma(self, a):
        raise NotImplementedError

    def power(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            a, e = self.inv(a), -e
        result = np.broadcast_to(self.identity(), a.shape).copy()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def conj(self, x, y):
        """ x^y = y^-1 x y """
        return self.mul(self.mul(self.inv(y), x), y)

    def comm(self, x, y):
        """ [x, y] = x^-1 y^-1 x y """
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def eq(self, a, b):
        return np.all(np.asarray(a) == np.asarray(b), axis=-1)

    def is_identity(self, a):
        return ~np.any(np.asarray(a), axis=-1)

    # Numbering
    def codes(self, a):
        return (np.asarray(a, dtype=np.int64) * self._weights).sum(axis=-1)

    def decode(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self._weights) % self._radix

    def elements(self, cap=None):
        cap = settings.table_cap * 64 if cap is None else cap
        if self.order > cap:
            raise TooLarge("group of order %d exceeds the enumeration cap %d" % (self.order, cap))
        return self.decode(np.arange(self.order, dtype=np.int64))

    def sample(self, budget=None, seed=None):
        """ All elements when there are at most max(budget, triality_exhaustive)
            of them, else ``budget`` distinct elements drawn with a seeded rng.
            Returns (elements, exhaustive).
        """
        budget = settings.budget if budget is None else budget
        if self.order <= max(settings.triality_exhaustive, budget):
            return self.elements(cap=self.order), True
        rng = np.random.default_rng(settings.seed if seed is None else seed)
        codes = rng.choice(self.order, size=budget, replace=False)
        return self.decode(np.sort(codes)), False

    def format(self, a):
        return '(%s)' % ','.join(str(int(c)) for c in np.asarray(a).ravel())

    # The Moufang loop
    def moufang_map(self, x):
        """ x -> x^-1 x^sigma """
        return self.mul(self.inv(x), self.sigma(x))

    def moufang_codes(self):
        """ Sorted codes of M(G). """
        found = []
        for start in range(0, self.order, BATCH):
            x = self.decode(np.arange(start, min(self.order, start + BATCH), dtype=np.int64))
            found.append(np.unique(self.codes(self.moufang_map(x))))
        return np.unique(np.concatenate(found))

    @cached_property
    def loop(self):
        return MoufangLoop(self)

    def __repr__(self):
        return '%s(order=%d)' % (self.__class__.__name__, self.order)


class TableTrialityGroup(TrialityGroup):
    """ A group given by a Cayley table; rho and sigma are permutations of its
        element indices.
    """

    def __init__(self, table: LoopTable, rho, sigma):
        self.table = table
        self.radix = (table.order,)
        super().__init__()
        self._T = table.table
        self._inv = table._inv
        self._rho = np.asarray(rho.image if isinstance(rho, Perm) else rho, dtype=np.int64)
        self._sigma = np.asarray(sigma.image if isinstance(sigma, Perm) else sigma, dtype=np.int64)

    def mul(self, a, b):
        return self._T[np.asarray(a)[..., 0], np.asarray(b)[..., 0]][..., None]

    def inv(self, a):
        return self._inv[np.asarray(a)[..., 0]][..., None]

    def rho(self, a):
        return self._rho[np.asarray(a)[..., 0]][..., None]

    def sigma(self, a):
        return self._sigma[np.asarray(a)[..., 0]][..., None]

    def format(self, a):
        return self.table.name(int(np.asarray(a).ravel()[0]))


class WreathGroup(TrialityGroup):
    """ G x G x G with (g1,g2,g3)^rho = (g3,g1,g2) and (g1,g2,g3)^sigma = (g2,g1,g3). """
    width = 3

    def __init__(self, base: LoopTable):
        self.base = base
        self.radix = (base.order,) * 3
        super().__init__()
        self._T = base.table
        self._inv = base._inv

    def mul(self, a, b):
        return self._T[np.asarray(a), np.asarray(b)]

    def inv(self, a):
        return self._inv[np.asarray(a)]

    def rho(self, a):
        return np.asarray(a)[..., [2, 0, 1]]

    def sigma(self, a):
        return np.asarray(a)[..., [1, 0, 2]]

    def moufang_codes(self):
        # M = { (g^-1, g, 1) }
        g = np.arange(self.base.order, dtype=np.int64)
        return np.unique(self.codes(np.stack([self._inv[g], g, np.zeros_like(g)], axis=-1)))

    def format(self, a):
        return '(%s)' % ','.join(self.base.name(int(c)) for c in np.asarray(a).ravel())


def matrix_group(ring, gens, cap=None):
    """ Closure of n x n code matrices under products; identity first.
        Returns (elements, product table, inverse table).
    """
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0] if gens else 1
    cap = settings.table_cap if cap is None else cap
    ident = eye(n)
    index = {ident.tobytes(): 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_prod(ring, x, g)
                key = y.tobytes()
                if key not in index:
                    index[key] = len(elems)
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        raise TooLarge("matrix group exceeds %d elements" % cap)
        frontier = nxt
    mats = np.array(elems, dtype=np.int64).reshape(len(elems), n, n)
    k = len(elems)
    prods = mat_prod(ring, mats[:, None], mats[None, :])
    table = np.array([index.get(p.tobytes(), -1) for p in prods.reshape(k * k, n, n)],
                     dtype=np.int64).reshape(k, k)
    if (table < 0).any():
        raise NotAGroup("generated matrices are not closed under products")
    has_inv = (table == 0).any(axis=1)
    if not has_inv.all():
        raise NotAGroup("matrix %s has no inverse in the generated set" % mats[np.argmin(has_inv)].tolist(),
                        witness=int(np.argmin(has_inv)))
    inverse = np.argmax(table == 0, axis=1)
    return mats, table, inverse


def _basis_index(n, i, j, k):
    return (i * n + j) * n + k


class WreathModuleGroup(TrialityGroup):
    """ A = T semidirect W.  An element is the row (g1, g2, g3, w_0, ..., w_{d-1})
        of three indices into G and the coordinates of w in the basis
        e_ijk = e_i (x) e_j (x) e_k, e_ijk at position i n^2 + j n + k.

        (t1, w1)(t2, w2) = (t1 t2, w1 t2 + w2), where t = (g1, g2, g3) acts on
        W by the Kronecker product g1 (x) g2 (x) g3.  rho sends e_ijk to e_kij
        and sigma sends e_ijk to e_jik.
    """

    def __init__(self, ring, n, gens, cap=None):
        self.ring = ring
        self.n = n
        self.dim = n ** 3
        self.mats, self.gtable, self.ginv = matrix_group(ring, gens or [eye(n)], cap)
        self.gorder = len(self.mats)
        self.width = 3 + self.dim
        self.radix = (self.gorder,) * 3 + (ring.order,) * self.dim
        super().__init__()

        d = self.dim
        self._rho_src = np.empty(d, dtype=np.int64)
        self._sigma_src = np.empty(d, dtype=np.int64)
        for i, j, k in itertools.product(range(n), repeat=3):
            self._rho_src[_basis_index(n, k, i, j)] = _basis_index(n, i, j, k)
            self._sigma_src[_basis_index(n, j, i, k)] = _basis_index(n, i, j, k)

        self._kron = None
        if self.gorder ** 3 * d * d <= settings.dense_operator_cap * 64:
            g = np.arange(self.gorder)
            triples = np.stack(np.meshgrid(g, g, g, indexing='ij'), axis=-1).reshape(-1, 3)
            self._kron = self._kron_of(triples)
        log.debug("module group over %s: |G| = %d, n = %d, order %d", ring.spec, self.gorder, n, self.order)

    def _kron_of(self, t):
        r, n = self.ring, self.n
        g1, g2, g3 = self.mats[t[..., 0]], self.mats[t[..., 1]], self.mats[t[..., 2]]
        lead = g1.shape[:-2]
        k = r.mul(g1[..., :, None, :, None], g2[..., None, :, None, :]).reshape(lead + (n * n, n * n))
        k = r.mul(k[..., :, None, :, None], g3[..., None, :, None, :])
        return k.reshape(lead + (self.dim, self.dim))

    def kron(self, t):
        """ Matrix of the action of t = (g1, g2, g3) on W. """
        t = np.asarray(t, dtype=np.int64)
        if self._kron is not None:
            G = self.gorder
            return self._kron[(t[..., 0] * G + t[..., 1]) * G + t[..., 2]]
        return self._kron_of(t)

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        ta, wa = a[..., :3], a[..., 3:]
        tb, wb = b[..., :3], b[..., 3:]
        t = self.gtable[ta, tb]
        w = self.ring.add(vec_mat(self.ring, wa, self.kron(tb)), wb)
        lead = np.broadcast_shapes(t.shape[:-1], w.shape[:-1])
        return np.concatenate([np.broadcast_to(t, lead + (3,)), np.broadcast_to(w, lead + (self.dim,))], axis=-1)

    def inv(self, a):
        a = np.asarray(a)
        ti = self.ginv[a[..., :3]]
        w = self.ring.neg(vec_mat(self.ring, a[..., 3:], self.kron(ti)))
        return np.concatenate([ti, w], axis=-1)

    def rho(self, a):
        a = np.asarray(a)
        return np.concatenate([a[..., [2, 0, 1]], a[..., 3:][..., self._rho_src]], axis=-1)

    def sigma(self, a):
        a = np.asarray(a)
        return np.concatenate([a[..., [1, 0, 2]], a[..., 3:][..., self._sigma_src]], axis=-1)

    def sigma_matrix(self):
        d = self.dim
        P = np.zeros((d, d), dtype=np.int64)
        P[self._sigma_src, np.arange(d)] = 1
        return P

    def module_element(self, w):
        """ The element (1, w) of A for coordinate row(s) w. """
        w = np.asarray(w, dtype=np.int64)
        return np.concatenate([np.zeros(w.shape[:-1] + (3,), dtype=np.int64), w], axis=-1)

    def moufang_subspace(self, t):
        """ The w-parts of M(A) above m = (t, .): the image of P_sigma - K(t). """
        r = self.ring
        M = r.sub(self.sigma_matrix(), self.kron(np.asarray(t, dtype=np.int64)))
        return Subspace(r, M, self.dim)

    def moufang_codes(self):
        if not self.ring.is_field:
            return super().moufang_codes()
        found = []
        g = np.arange(self.gorder, dtype=np.int64)
        for t in np.stack([self.ginv[g], g, np.zeros_like(g)], axis=-1):
            space = self.moufang_subspace(t)
            coeffs = unpack(self.ring, np.arange(self.ring.order ** space.dim), space.dim)
            if space.dim:
                ws = vec_mat(self.ring, coeffs, space.basis)
            else:
                ws = np.zeros((1, self.dim), dtype=np.int64)
            rows = np.concatenate([np.broadcast_to(t, (len(ws), 3)), ws], axis=-1)
            found.append(self.codes(rows))
        return np.unique(np.concatenate(found))

    def abelian_part(self):
        """ Loop indices of M(W) = M(A) n W. """
        elems = self.loop.elems
        return np.nonzero(~np.any(elems[:, :3], axis=1))[0]

    def cond_tri_witness(self):
        """ First (g, i, j, k), 1-based indices, for which
            sum_s g_ks (e_ijs - e_jis + e_sij - e_sji + e_jsi - e_isj) is nonzero.
        """
        r, n = self.ring, self.n
        for gi, g in enumerate(self.mats):
            for i, j, k in itertools.product(range(n), repeat=3):
                vec = np.zeros(self.dim, dtype=np.int64)
                for s in range(n):
                    c = int(g[k, s])
                    if not c:
                        continue
                    for (a, b, e), sign in (((i, j, s), 1), ((j, i, s), -1), ((s, i, j), 1),
                                            ((s, j, i), -1), ((j, s, i), 1), ((i, s, j), -1)):
                        pos = _basis_index(n, a, b, e)
                        term = c if sign > 0 else r.neg(c)
                        vec[pos] = r.add(int(vec[pos]), term)
                if vec.any():
                    return gi, i + 1, j + 1, k + 1
        return None

    def format(self, a):
        a = np.asarray(a).ravel()
        return '((%d,%d,%d);%s)' % (a[0], a[1], a[2], ','.join(self.ring.format(int(c)) for c in a[3:]))


class MoufangLoop(Loop):
    """ M(G) under m.n = m^-rho n m^-rho2.  Loop index i is the i-th smallest code
        of M(G), so the identity is index 0.
    """

    def __init__(self, group: TrialityGroup):
        self.group = group
        self.codes = group.moufang_codes()
        self.elems = group.decode(self.codes)
        self.order = len(self.codes)
        self.descriptor = group.descriptor
        log.debug("M(G) of %r has %d elements", group, self.order)

    def contains(self, elems):
        codes = self.group.codes(elems)
        pos = np.clip(np.searchsorted(self.codes, codes), 0, self.order - 1)
        return self.codes[pos] == codes

    def index(self, elems):
        codes = self.group.codes(elems)
        pos = np.clip(np.searchsorted(self.codes, codes), 0, self.order - 1)
        found = self.codes[pos] == codes
        if not np.all(found):
            flat = np.asarray(elems).reshape(-1, self.group.width)
            bad = self.group.format(flat[int(np.argmin(np.ravel(found)))])
            raise NotMoufangElement("%s is not in M(G)" % bad, witness=bad)
        return pos

    def mul_many(self, x, y):
        g = self.group
        return self.index(loop_product(g, self.elems[np.asarray(x)], self.elems[np.asarray(y)]))

    def mul(self, x, y):
        return int(self.mul_many(x, y))

    def inv_many(self, x):
        return self.index(self.group.inv(self.elems[np.asarray(x)]))

    def inv(self, x):
        return int(self.inv_many(x))

    def name(self, x):
        return self.group.format(self.elems[int(x)])

    def __repr__(self):
        return 'MoufangLoop(order=%d)' % self.order


def loop_product(G: TrialityGroup, m, n):
    """ m.n = m^-rho n m^-rho2 on group elements, without membership checks. """
    mi = G.inv(m)
    return G.mul(G.mul(G.rho(mi), n), G.rho2(mi))


def _require_moufang(G, *elems):
    for e in elems:
        G.loop.index(e)


def check_triality(G: TrialityGroup, budget=None, seed=None) -> Verdict:
    """ Check the automorphism orders, then the axiom
        (x^-1 x^sigma)(x^-1 x^sigma)^rho (x^-1 x^sigma)^rho2 = 1.
        Module groups are also checked symbolically on basis vectors first.
    """
    xs, exhaustive = G.sample(budget, seed)
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    ys = xs[rng.permutation(len(xs))]

    checks = (
        ('rho^3', lambda x: G.rho(G.rho2(x)), lambda x: x),
        ('sigma^2', lambda x: G.sigma(G.sigma(x)), lambda x: x),
        ('(rho sigma)^2', lambda x: G.sigma(G.rho(G.sigma(G.rho(x)))), lambda x: x),
    )
    for name, lhs, rhs in checks:
        bad = ~G.eq(lhs(xs), rhs(xs))
        if bad.any():
            x = xs[np.argmax(bad)]
            raise AutomorphismOrderViolation("%s is not the identity at %s" % (name, G.format(x)),
                                             witness=G.format(x))
    for name, auto in (('rho', G.rho), ('sigma', G.sigma)):
        bad = ~G.eq(auto(G.mul(xs, ys)), G.mul(auto(xs), auto(ys)))
        if bad.any():
            i = int(np.argmax(bad))
            raise AutomorphismOrderViolation("%s is not a homomorphism at (%s, %s)"
                                             % (name, G.format(xs[i]), G.format(ys[i])),
                                             witness=(G.format(xs[i]), G.format(ys[i])))

    if isinstance(G, WreathModuleGroup):
        witness = G.cond_tri_witness()
        if witness is not None:
            return Verdict(False, witness, True, detail='basis condition fails at g=%d, (i,j,k)=(%d,%d,%d)' % witness)

    for start in range(0, len(xs), BATCH):
        x = xs[start:start + BATCH]
        m = G.moufang_map(x)
        bad = ~G.is_identity(G.mul(G.mul(m, G.rho(m)), G.rho2(m)))
        if bad.any():
            w = x[np.argmax(bad)]
            return Verdict(False, G.format(w), exhaustive)
    log.info("triality holds on %d elements%s", len(xs), '' if exhaustive else ' (sampled)')
    return Verdict(True, None, exhaustive, detail='%d elements' % len(xs))


def moufang_elements(G: TrialityGroup):
    return G.loop.elems


def loop_mult(G: TrialityGroup, m, n):
    _require_moufang(G, m, n)
    return loop_product(G, np.asarray(m), np.asarray(n))


def loop_materialize(G: TrialityGroup) -> LoopTable:
    return materialize(G.loop)


def phi(G: TrialityGroup, g):
    """ g^-rho g^rho2 """
    return G.mul(G.rho(G.inv(g)), G.rho2(g))


def chi(G: TrialityGroup, g) -> Perm:
    """ m -> g^-1 m g^sigma as a permutation of M(G). """
    loop = G.loop
    g = np.asarray(g)
    return Perm(loop.index(G.mul(G.mul(G.inv(g), loop.elems), G.sigma(g))))


def centralizer_of_sigma(G: TrialityGroup, elems):
    """ Mask of the elements fixed by sigma. """
    return G.eq(G.sigma(elems), elems)


def formula_general(G: TrialityGroup, m, n, u, w, check=True):
    """ The x with (m.u).(n.w) = (m.n).x, evaluated as a group word. """
    if check:
        _require_moufang(G, m, n, u, w)
    x = evaluate(G, FORMULA_PRODUCT, m=np.asarray(m), n=np.asarray(n), u=np.asarray(u), w=np.asarray(w))
    if check:
        _require_moufang(G, x)
    return x


def formula_inverse(G: TrialityGroup, m, u, check=True):
    """ The y with (m.u)^-1 = m^-1.y """
    if check:
        _require_moufang(G, m, u)
    y = evaluate(G, FORMULA_INVERSE, m=np.asarray(m), u=np.asarray(u))
    if check:
        _require_moufang(G, y)
    return y


def formula_abelian(D_op, L_op, T_op, m, n, u, w, ring):
    """ x = u D_{m,n} + w L_{n,m} and the inversion companion y = -u T_m^-1,
        for operators given as callables returning matrices on the abelian part.
    """
    u = np.asarray(u, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    D, L, T = (np.asarray(op, dtype=np.int64) for op in (D_op(m, n), L_op(n, m), T_op(m)))
    dim = u.shape[-1]
    for name, mat in (('D', D), ('L', L), ('T', T)):
        if mat.shape[-2:] != (dim, dim) or w.shape[-1] != dim:
            raise OperatorDomainMismatch("operator %s of shape %s on vectors of length %d"
                                         % (name, mat.shape, dim), witness=name)
    x = ring.add(vec_mat(ring, u, D), vec_mat(ring, w, L))
    y = ring.neg(vec_mat(ring, u, mat_inverse(ring, T)))
    return x, y


class ModuleOperators(object):
    """ The linear operators of the product formula on M(W), read off the group
        words on a basis of M(W).  Matrices act on coordinate rows.
    """

    def __init__(self, A: WreathModuleGroup):
        self.group = A
        self.ring = A.ring
        self.space = A.moufang_subspace(A.identity()[:3])
        self.dim = self.space.dim
        self._basis = A.module_element(self.space.basis)

    def coords(self, elems):
        """ Coordinates of elements of M(W) in the basis. """
        return self.space.coords(np.asarray(elems)[..., 3:])

    def element(self, coords):
        return self.group.module_element(vec_mat(self.ring, coords, self.space.basis))

    def _matrix(self, word, **env):
        return self.coords(evaluate(self.group, word, **env))

    def D(self, m, n):
        return self._matrix(OPERATOR_D, m=np.asarray(m), n=np.asarray(n), u=self._basis)

    def L(self, n, m):
        return self._matrix(OPERATOR_L, m=np.asarray(m), n=np.asarray(n), w=self._basis)

    def T_inverse(self, m):
        return self.ring.neg(self._matrix(FORMULA_INVERSE, m=np.asarray(m), u=self._basis))

    def T(self, m):
        return mat_inverse(self.ring, self.T_inverse(m))


def as_table_group(G: TrialityGroup) -> TableTrialityGroup:
    """ The same group with triality on explicit element indices. """
    elems = G.elements()
    n = len(elems)
    codes = G.codes(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        table[i] = np.searchsorted(codes, G.codes(G.mul(elems[i], elems)))
    names = [G.format(e) for e in elems]
    t = LoopTable(table, names)
    rho = np.searchsorted(codes, G.codes(G.rho(elems)))
    sigma = np.searchsorted(codes, G.codes(G.sigma(elems)))
    return TableTrialityGroup(t, rho, sigma)


def wreath_make(base: Loop) -> WreathGroup:
    table = materialize(base)
    verdict = is_associative(table, threshold=max(settings.moufang_exhaustive, table.order))
    if not verdict:
        raise BaseNotAssociative("base loop is not a group", witness=verdict.witness)
    return WreathGroup(table)


def wreath_module_make(ring, n, gens, allow_failing=False, cap=None) -> WreathModuleGroup:
    A = WreathModuleGroup(ring, n, gens, cap)
    if not allow_failing:
        witness = A.cond_tri_witness()
        if witness is not None:
            raise TrialityFails("triality fails at n=%d: basis condition breaks at g=%d, (i,j,k)=(%d,%d,%d)"
                                % ((n,) + witness), witness=witness)
    return A
