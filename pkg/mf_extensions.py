"""
Extensions 1 -> U -> E -> M -> 1 of Moufang loops with abelian kernel U.

An Extension holds E, the sorted kernel indices U, the quotient loop M and a
projection E -> M.  Minimality asks whether some proper nontrivial subgroup
of U is normal in E.  Every inner mapping of E fixes U setwise, so this is
a question about the restrictions of the inner mappings to U:

  * spinning: when U is F_p^k with packed coordinates and every restriction
    is linear, each projective point is spun under the restrictions; U is
    minimal iff every spin is all of U.
  * enumeration: all subgroups of U are listed and tested for invariance.

The restrictions are taken for inner mappings at a transversal of M (all of
E when E is small), so a "minimal" answer is certified by the sample while a
proper invariant subgroup is re-checked with is_normal when E fits a table.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from mf_config import settings
from mf_errors import (KernelNotAbelian, KernelNotNormal, KernelNotClosed, TooLarge, TooLargeToDecide,
                       Timeout)
from mf_linalg import spin, pack, unpack
from mf_loop import (Loop, LoopTable, Verdict, DirectProduct, materialize, normality_witness, quotient,
                     cosets, is_associative, isomorphic, center_bound)

log = logging.getLogger(__name__)

SMALL_E = 128
MAP_PAIRS = 1 << 15
MAP_CHUNK = 1 << 18
SPIN_POINTS = 1 << 15
ENUM_KERNEL = 256
NORMAL_SAMPLES = 256


class Extension(object):
    """ A validated extension.  projection maps E indices to quotient indices. """

    def __init__(self, E: Loop, U, quotient_loop: Loop, projection, linear=None, lifts=None,
                 name=None, normal_exhaustive=True):
        self.E = E
        self.U = U
        self.quotient = quotient_loop
        self.projection = projection
        self.linear = linear
        self.lifts = lifts
        self.name = name or getattr(E, 'descriptor', None) or repr(E)
        self.normal_exhaustive = normal_exhaustive

    @property
    def order(self):
        return self.E.order

    def kernel_table(self):
        """ Cayley table of U on positions 0..|U|-1. """
        U = self.U
        return np.searchsorted(U, self.E.mul_many(U[:, None], U[None, :]))

    def kernel_loop(self) -> LoopTable:
        return LoopTable(self.kernel_table(), [self.E.name(u) for u in self.U])

    def __repr__(self):
        return 'Extension(%s, |E|=%d, |U|=%d)' % (self.name, self.E.order, len(self.U))


def _check_closed_abelian(E, U, seed):
    n = len(U)
    mask = np.zeros(E.order, dtype=bool)
    mask[U] = True
    if n * n <= MAP_CHUNK:
        x, y = np.meshgrid(U, U, indexing='ij')
        x, y = x.ravel(), y.ravel()
    else:
        rng = np.random.default_rng(seed)
        x, y = rng.choice(U, size=(2, MAP_CHUNK))
    xy, yx = E.mul_many(x, y), E.mul_many(y, x)
    bad = ~mask[xy]
    if bad.any():
        i = int(np.argmax(bad))
        raise KernelNotClosed("%s * %s leaves the kernel" % (E.name(x[i]), E.name(y[i])),
                              witness=(int(x[i]), int(y[i])))
    bad = xy != yx
    if bad.any():
        i = int(np.argmax(bad))
        raise KernelNotAbelian("%s and %s do not commute" % (E.name(x[i]), E.name(y[i])),
                               witness=(int(x[i]), int(y[i])))
    if n ** 3 <= settings.budget:
        x, y, z = (g.ravel() for g in np.meshgrid(U, U, U, indexing='ij'))
    else:
        rng = np.random.default_rng(seed)
        x, y, z = rng.choice(U, size=(3, settings.budget))
    bad = E.mul_many(E.mul_many(x, y), z) != E.mul_many(x, E.mul_many(y, z))
    if bad.any():
        i = int(np.argmax(bad))
        raise KernelNotAbelian("kernel is not associative", witness=(int(x[i]), int(y[i]), int(z[i])))


def _images(E, kind, x, y, U):
    """ Images of U under the inner mapping kind at (x, y); one row per pair. """
    x = np.asarray(x)[:, None]
    u = U[None, :]
    if kind == 'T':
        return E.ldiv_many(x, E.mul_many(u, x))
    y = np.asarray(y)[:, None]
    if kind == 'Lxy':
        return E.ldiv_many(E.mul_many(y, x), E.mul_many(y, E.mul_many(x, u)))
    return E.rdiv_many(E.mul_many(E.mul_many(u, x), y), E.mul_many(x, y))


def _sampled_normal(E, U, seed):
    """ First (kind, x, y, u) moving u out of U for seeded x, y, or None. """
    mask = np.zeros(E.order, dtype=bool)
    mask[U] = True
    rng = np.random.default_rng(seed)
    xs, ys = rng.integers(E.order, size=(2, NORMAL_SAMPLES))
    for kind in ('T', 'Lxy', 'Rxy'):
        img = _images(E, kind, xs, ys, U)
        bad = np.argwhere(~mask[img])
        if len(bad):
            i, j = bad[0]
            return kind, int(xs[i]), None if kind == 'T' else int(ys[i]), int(U[j])
    return None


def extension_make(E: Loop, U, base: Loop = None, block=None, linear=None, lifts=None, name=None,
                   seed=None) -> Extension:
    """ Validate U as an abelian normal subgroup of E and build the quotient.
        A known base loop with block size gives the projection x // block;
        otherwise the quotient is computed from the cosets of U.
    """
    seed = settings.seed if seed is None else seed
    U = np.unique(np.asarray(U, dtype=np.int64))
    if not len(U) or U[0] != 0:
        raise KernelNotClosed("kernel does not contain the identity")
    if U[-1] >= E.order:
        raise KernelNotClosed("kernel index %d outside E" % U[-1], witness=int(U[-1]))
    _check_closed_abelian(E, U, seed)

    exhaustive = E.order <= settings.table_cap
    if exhaustive:
        table = materialize(E)
        witness = normality_witness(table, U)
    else:
        witness = _sampled_normal(E, U, seed)
    if witness is not None:
        raise KernelNotNormal("kernel is moved out of itself by %s" % (witness,), witness=witness)

    if base is not None:
        if base.order * len(U) != E.order:
            raise KernelNotNormal("|E| = %d is not |U| |M| = %d * %d" % (E.order, len(U), base.order))
        projection = lambda x: np.asarray(x, dtype=np.int64) // block
        quotient_loop = base
    elif exhaustive:
        quotient_loop = quotient(table, U)
        _, label = cosets(table, U)
        projection = lambda x: label[np.asarray(x, dtype=np.int64)]
    else:
        raise TooLarge("E of order %d needs a known quotient loop" % E.order)
    log.debug("extension of order %d over kernel of order %d", E.order, len(U))
    return Extension(E, U, quotient_loop, projection, linear, lifts, name, exhaustive)


def from_construction(c, seed=None) -> Extension:
    if c.kernel is None:
        raise KernelNotClosed("construction %s has no abelian kernel" % c.name)
    return extension_make(c.loop, c.kernel, c.base, c.block, c.linear, c.lifts, c.name, seed)


#
# Nontriviality
#
def is_nontrivial(x: Extension, seed=None) -> bool:
    """ E nonassociative and not isomorphic to U x E/U. """
    E = x.E
    seed = settings.seed if seed is None else seed
    if is_associative(E, seed=seed):
        return False
    bound = center_bound(E, seed=seed)
    if bound < len(x.U):
        log.debug("center of %s has fewer than %d elements", x.name, len(x.U))
        return True
    if E.order > settings.table_cap:
        raise TooLargeToDecide("center bound %d does not decide an extension of order %d" % (bound, E.order))
    product = DirectProduct(materialize(x.quotient), x.kernel_loop())
    try:
        return not isomorphic(E, product)
    except Timeout:
        raise TooLargeToDecide("isomorphism with U x E/U undecided for %s" % x.name)


def kernel_associators(x: Extension, budget=None, seed=None) -> Verdict:
    """ (l, u, w) = 1 for l in E and u, w in U. """
    E, U = x.E, x.U
    n = E.order * len(U) ** 2
    budget = settings.budget if budget is None else budget
    if n <= budget:
        l, u, w = (a.ravel() for a in np.meshgrid(E.elements(), U, U, indexing='ij'))
        exhaustive = True
    else:
        rng = np.random.default_rng(settings.seed if seed is None else seed)
        l = rng.integers(E.order, size=budget)
        u, w = rng.choice(U, size=(2, budget))
        exhaustive = False
    bad = E.mul_many(E.mul_many(l, u), w) != E.mul_many(l, E.mul_many(u, w))
    if bad.any():
        i = int(np.argmax(bad))
        return Verdict(False, (int(l[i]), int(u[i]), int(w[i])), exhaustive)
    return Verdict(True, None, exhaustive)


#
# Minimality
#
def _transversal(x: Extension, seed):
    if x.E.order <= SMALL_E or x.lifts is None:
        if x.E.order <= SMALL_E:
            return x.E.elements()
        rng = np.random.default_rng(seed)
        return rng.choice(x.E.order, size=SMALL_E, replace=False)
    return np.asarray(x.lifts, dtype=np.int64)


def kernel_maps(x: Extension, seed=None):
    """ Restrictions to U of T_a, L_{a,b}, R_{a,b} for a, b in a transversal,
        as distinct permutations of kernel positions.
    """
    seed = settings.seed if seed is None else seed
    E, U = x.E, x.U
    X = _transversal(x, seed)
    if len(X) ** 2 <= MAP_PAIRS:
        a, b = (v.ravel() for v in np.meshgrid(X, X, indexing='ij'))
    else:
        rng = np.random.default_rng(seed)
        a, b = rng.choice(X, size=(2, MAP_PAIRS))
    step = max(1, MAP_CHUNK // len(U))
    found = []
    for kind, xs, ys in (('T', X, X), ('Lxy', a, b), ('Rxy', a, b)):
        for start in range(0, len(xs), step):
            img = _images(E, kind, xs[start:start + step], ys[start:start + step], U)
            pos = np.clip(np.searchsorted(U, img), 0, len(U) - 1)
            if not (U[pos] == img).all():
                raise KernelNotNormal("%s at a transversal element leaves the kernel" % kind)
            found.append(np.unique(pos, axis=0))
    maps = np.unique(np.concatenate(found), axis=0)
    log.debug("%d distinct inner mappings on a kernel of order %d", len(maps), len(U))
    return maps


def _linear_matrices(x: Extension, maps):
    """ The maps as matrices on F_p^k, or None when U is not coordinatized
        or some map is not linear.
    """
    ring = x.linear
    if ring is None:
        return None
    p, n = ring.order, len(x.U)
    k = int(round(np.log(n) / np.log(p)))
    if p ** k != n or not np.array_equal(x.U, np.arange(n)):
        return None
    basis = p ** np.arange(k, dtype=np.int64)
    mats = unpack(ring, maps[:, basis], k)
    coords = unpack(ring, np.arange(n, dtype=np.int64), k)
    for M, perm in zip(mats, maps):
        if not np.array_equal(pack(ring, ring.reduce(coords @ M)), perm):
            return None
    return mats


def _certify(x: Extension, S):
    """ Is the subgroup S (E indices) normal in E?  None when E is too large. """
    if x.E.order > settings.table_cap:
        return None
    return normality_witness(materialize(x.E), S) is None


def _spinning(x: Extension, mats):
    ring = x.linear
    p = ring.order
    k = mats.shape[-1]
    points = (p ** k - 1) // (p - 1)
    if points > SPIN_POINTS:
        raise TooLarge("%d projective points to spin" % points)
    coords = unpack(ring, np.arange(1, p ** k, dtype=np.int64), k)
    lead = coords[np.arange(len(coords)), np.argmax(coords != 0, axis=1)]
    for v in coords[lead == 1]:
        S = spin(ring, list(mats), v)
        if S.dim < k:
            combos = unpack(ring, np.arange(p ** S.dim, dtype=np.int64), S.dim)
            members = np.unique(pack(ring, ring.reduce(combos @ S.basis)))
            return x.U[members]
    return None


def subgroups(table):
    """ All subgroups of the abelian group with Cayley table on 0..n-1, as
        sorted position arrays, ordered by size and then lexicographically.
    """
    n = len(table)
    cyclic = []
    for u in range(n):
        cyc, c = [0], u
        while c != 0:
            cyc.append(c)
            c = int(table[c, u])
        cyclic.append(np.unique(cyc))
    seen = {}
    frontier = [np.array([0], dtype=np.int64)]
    while frontier:
        nxt = []
        for S in frontier:
            key = S.tobytes()
            if key in seen:
                continue
            seen[key] = S
            inside = np.zeros(n, dtype=bool)
            inside[S] = True
            for u in np.nonzero(~inside)[0]:
                T = np.unique(table[S[:, None], cyclic[u][None, :]])
                if T.tobytes() not in seen:
                    nxt.append(T)
        frontier = nxt
    return sorted(seen.values(), key=lambda S: (len(S), S.tolist()))


def _enumeration(x: Extension, maps):
    n = len(x.U)
    if n > ENUM_KERNEL:
        raise TooLarge("kernel of order %d is too large to enumerate subgroups" % n)
    for S in subgroups(x.kernel_table()):
        if len(S) in (1, n):
            continue
        mask = np.zeros(n, dtype=bool)
        mask[S] = True
        if mask[maps[:, S]].all():
            return x.U[S]
    return None


def is_minimal(x: Extension, method=None, seed=None) -> Verdict:
    """ Minimal iff no proper nontrivial subgroup of U is normal in E.  The
        witness of a negative verdict is that subgroup as E indices; detail
        names the method used.
    """
    maps = kernel_maps(x, seed)
    mats = _linear_matrices(x, maps) if method in (None, 'spinning') else None
    if method == 'spinning' and mats is None:
        raise TooLarge("kernel of %s is not a linear module over a prime field" % x.name)
    used = 'spinning' if mats is not None else 'enumeration'
    S = _spinning(x, mats) if mats is not None else _enumeration(x, maps)
    if S is None:
        return Verdict(True, None, True, detail=used)
    certified = _certify(x, S)
    if certified is False:
        raise TooLargeToDecide("subgroup invariant under the sampled inner mappings is not normal in %s" % x.name,
                               witness=tuple(int(s) for s in S))
    return Verdict(False, tuple(int(s) for s in S), certified is not None, detail=used)


#
# Survey
#
def _gl2_order(q):
    return (q * q - 1) * (q * q - q)


def _paige_order(q):
    return (q ** 7 - q ** 3) // (1 if q % 2 == 0 else 2)


def _survey_rows(qs):
    """ (label, expected order, builder) for every catalog row at the field sizes. """
    from mf_products import catalog, gd_construction, diagonal_group
    from mf_ring import field, is_prime, prime_power
    rows = []
    for q in qs:
        if prime_power(q) is None:
            continue
        if q > 2:
            rows.append(('gd:F%d,diag' % q, (q - 1) ** 2 * q * q,
                         lambda q=q: gd_construction(field(q), diagonal_group(field(q)), name='gd:F%d,diag' % q)))
        rows.append(('catalog:gl2-semidirect,q=%d' % q, _gl2_order(q) * q * q,
                     lambda q=q: catalog('gl2-semidirect', q=q)))
        if q >= 4:
            psl = _gl2_order(q) // (q - 1) // (1 if q % 2 == 0 else 2)
            rows.append(('catalog:psl2-semidirect,q=%d' % q, psl * q * q,
                         lambda q=q: catalog('psl2-semidirect', q=q)))
        if is_prime(q) and q not in (2, 5):
            f = q if q % 10 in (1, 9) else q * q
            rows.append(('catalog:a5-semidirect,p=%d' % q, 60 * f * f, lambda q=q: catalog('a5-semidirect', p=q)))
        rows.append(('catalog:paige-semidirect,q=%d' % q, _paige_order(q) * q ** (6 if q % 2 == 0 else 7),
                     lambda q=q: catalog('paige-semidirect', q=q)))
        if is_prime(q) and q != 2:
            rows.append(('catalog:m2-over-p,p=%d' % q, 120 * q ** 7, lambda q=q: catalog('m2-over-p', p=q)))
    return rows


def _yn(flag):
    return {True: 'y', False: 'n', None: '?'}[flag]


def survey_row(label, build, seed=None):
    c = build()
    x = from_construction(c, seed)
    try:
        nontrivial = is_nontrivial(x, seed)
    except TooLargeToDecide:
        nontrivial = None
    try:
        verdict = is_minimal(x, seed=seed)
        minimal = bool(verdict)
        if verdict:
            witness = verdict.detail
        else:
            witness = '{%s}' % ','.join(str(s) for s in verdict.witness)
            if not verdict.exhaustive:
                # normality of the witness was not re-checked on the full table
                witness = 'sampled:' + witness
    except (TooLarge, TooLargeToDecide) as e:
        minimal, witness = None, type(e).__name__
    return '%s %d %d nontrivial=%s minimal=%s witness=%s' % (label, x.order, len(x.U), _yn(nontrivial),
                                                             _yn(minimal), witness)


def survey_small(bound=10 ** 4, qs=(2, 3), seed=None, jobs=None):
    """ One report line per catalog row with |E| <= bound, in catalog order. """
    rows = [(label, build) for label, order, build in _survey_rows(qs) if order <= bound]
    jobs = max(1, jobs or settings.jobs)
    if jobs == 1 or len(rows) <= 1:
        return [survey_row(label, build, seed) for label, build in rows]
    with ThreadPoolExecutor(max_workers=min(jobs, len(rows))) as pool:
        return list(pool.map(lambda row: survey_row(row[0], row[1], seed), rows))
