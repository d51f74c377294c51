"""
Property suites.

A suite runs a family of identities against a target and reports the first
failure with a witness.  Targets carry a loop and, when the construction has
them, the group with triality it came from and the ring of the Zorn algebra
it lives in:

    moufang    Moufang law, two-sided inverses, (xy)^-1 = y^-1 x^-1
    dxy        the D_{x,y} and R_{x,y} identities of a Moufang loop
    psaut      (T_x, x^-3), (R_{x,y}, [[x,y]]) and (D_{x,y}, y^-1 x y^-2 x^-1)
               are pseudoautomorphisms, and D_{x,y} factors through L and T
    gzt        identities between M(G), rho, sigma and C_G(sigma)    (group)
    formulas   the multiplication and inversion formulas             (group)
    altop      operator identities in the Zorn algebra               (algebra)

Tuples are checked exhaustively when there are at most ``budget`` of them,
otherwise a seeded sample of ``budget`` tuples is drawn.  A check that
costs a pass over the loop per tuple counts as that many: gzt checks
budget // |M| conjugations.  psaut covers every pair up to PSAUT_EXHAUSTIVE
elements and at most PSAUT_SAMPLES pairs above.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from mf_config import settings
from mf_errors import UnknownSuite, SuiteNotApplicable, NotPseudoautomorphism, TooLarge
from mf_linalg import mat_prod
from mf_loop import (Loop, Perm, PsAutPair, translation, assoc_comm, is_moufang, is_pseudoautomorphism,
                     psaut_compose, materialize)
from mf_triality import (TrialityGroup, WreathModuleGroup, ModuleOperators, phi, centralizer_of_sigma,
                         formula_general, formula_inverse, formula_abelian)
from mf_zorn import DIM, ZornLoop, zorn_mul_codes, inv_codes, norm_codes, operator_codes

log = logging.getLogger(__name__)

PSAUT_EXHAUSTIVE = 32
PSAUT_SAMPLES = 200
ALTOP_CHUNK = 1 << 12


class SuiteResult(object):
    __slots__ = ('name', 'ok', 'witness', 'detail', 'exhaustive')

    def __init__(self, name, ok, witness=None, detail='', exhaustive=True):
        self.name = name
        self.ok = ok
        self.witness = witness
        self.detail = detail
        self.exhaustive = exhaustive

    def __bool__(self):
        return bool(self.ok)

    def line(self):
        mode = 'exhaustive' if self.exhaustive else 'sampled'
        if self.ok:
            return 'suite %s: PASS (%s; %s)' % (self.name, mode, self.detail)
        return 'suite %s: FAIL %s witness=%s' % (self.name, self.detail, self.witness)

    def __repr__(self):
        return 'SuiteResult(%s, %s)' % (self.name, 'pass' if self.ok else 'fail')


class Target(object):
    """ What a suite runs against.  ``algebra`` is the ring of the Zorn algebra. """

    def __init__(self, loop: Loop, group: TrialityGroup = None, algebra=None, name=None):
        self.loop = loop
        self.group = group
        self.algebra = algebra
        self.name = name or getattr(loop, 'descriptor', None) or repr(loop)

    @classmethod
    def from_construction(cls, c):
        return cls(c.loop, c.group, c.algebra, c.name)

    def __repr__(self):
        return 'Target(%s)' % self.name


class _Run(object):
    """ Collects checks of one suite and keeps the first failure. """

    def __init__(self, name):
        self.name = name
        self.failure = None
        self.checks = 0
        self.exhaustive = True

    def sampled(self, exhaustive):
        self.exhaustive = self.exhaustive and exhaustive

    def expect(self, label, ok, witness):
        """ ok is a bool array; witness(i) names the i-th tuple. """
        ok = np.ravel(np.asarray(ok, dtype=bool))
        self.checks += 1
        if self.failure is None and not ok.all():
            self.failure = (label, witness(int(np.argmin(ok))))
            log.debug("suite %s: %s fails at %s", self.name, label, self.failure[1])
        return ok.all()

    @property
    def failed(self):
        return self.failure is not None

    def result(self):
        if self.failure is None:
            return SuiteResult(self.name, True, None, '%d checks' % self.checks, self.exhaustive)
        label, witness = self.failure
        return SuiteResult(self.name, False, witness, label, self.exhaustive)


def _tuples(n, arity, budget, rng):
    if n ** arity <= budget:
        return np.indices((n,) * arity).reshape(arity, -1).T, True
    return rng.integers(n, size=(budget, arity)), False


def _names(t, *cols):
    return lambda i: tuple(t.name(int(c[i])) for c in cols)


def _need_group(target, suite):
    if target.group is None:
        raise SuiteNotApplicable("suite %s needs a group with triality; %s has none" % (suite, target.name))
    return target.group


#
# Loop suites
#
def suite_moufang(target: Target, budget, seed):
    t, run = target.loop, _Run('moufang')
    rng = np.random.default_rng(seed)
    verdict = is_moufang(t, budget=budget, seed=seed)
    run.sampled(verdict.exhaustive)
    run.expect('Moufang law xy.zx = (x.yz)x', [verdict.ok], lambda i: verdict.witness)

    idx, exhaustive = _tuples(t.order, 2, budget, rng)
    run.sampled(exhaustive)
    x, y = idx[:, 0], idx[:, 1]
    xi = t.inv_many(x)
    run.expect('x x^-1 = x^-1 x = 1', (t.mul_many(x, xi) == 0) & (t.mul_many(xi, x) == 0), _names(t, x))
    run.expect('x^-1 (x y) = y = (y x) x^-1',
               (t.mul_many(xi, t.mul_many(x, y)) == y) & (t.mul_many(t.mul_many(y, x), xi) == y),
               _names(t, x, y))
    run.expect('(xy)^-1 = y^-1 x^-1', t.inv_many(t.mul_many(x, y)) == t.mul_many(t.inv_many(y), xi),
               _names(t, x, y))
    return run.result()


def suite_dxy(target: Target, budget, seed):
    t, run = target.loop, _Run('dxy')
    rng = np.random.default_rng(seed)
    idx, exhaustive = _tuples(t.order, 3, budget, rng)
    run.sampled(exhaustive)
    x, y, m = idx[:, 0], idx[:, 1], idx[:, 2]
    mul, inv = t.mul_many, t.inv_many
    xi, yi, mi = inv(x), inv(y), inv(m)
    w = _names(t, x, y, m)

    a = mul(mi, mul(mul(m, x), y))
    b = mul(mul(x, mi), mul(m, y))
    c = mul(mul(x, mul(y, mi)), m)
    run.expect('m^-1(mx.y) = xm^-1.my', a == b, w)
    run.expect('xm^-1.my = (x.ym^-1)m', b == c, w)

    r = t.rdiv_many(mul(mul(m, x), y), mul(x, y))
    l = t.ldiv_many(mul(yi, xi), mul(yi, mul(xi, m)))
    s = mul(y, t.rdiv_many(t.ldiv_many(y, mul(m, x)), x))
    run.expect('R_{x,y} = L_{x^-1,y^-1}', r == l, w)
    run.expect('R_{x,y} = R_x L_y^-1 R_x^-1 L_y', r == s, w)

    d1 = mul(xi, mul(mul(mul(x, yi), m), y))
    d2 = mul(mul(yi, xi), mul(mul(x, m), y))
    d3 = mul(mul(yi, mul(m, xi)), mul(x, y))
    d4 = mul(mul(yi, mul(m, mul(y, xi))), x)
    run.expect('D_{x,y} second form', d1 == d2, w)
    run.expect('D_{x,y} third form', d1 == d3, w)
    run.expect('D_{x,y} fourth form', d1 == d4, w)
    return run.result()


def _word(t, *xs):
    """ Left-normed product of loop elements. """
    acc = xs[0]
    for x in xs[1:]:
        acc = t.mul(acc, x)
    return acc


def suite_psaut(target: Target, budget, seed):
    t, run = target.loop, _Run('psaut')
    try:
        t = materialize(t)
    except TooLarge:
        raise SuiteNotApplicable("suite psaut needs a loop within the table cap; %s has order %d"
                                 % (target.name, target.loop.order))
    n = t.order
    rng = np.random.default_rng(seed)
    if n <= PSAUT_EXHAUSTIVE:
        pairs = np.indices((n, n)).reshape(2, -1).T
    else:
        run.sampled(False)
        pairs = rng.integers(n, size=(min(PSAUT_SAMPLES, budget), 2))

    def comm(a, b):
        return assoc_comm(t, 'commutator', a, b)

    for x in np.unique(pairs[:, 0]).tolist():
        cube = t.inv(_word(t, x, x, x))
        run.expect('(T_x, x^-3) is a pseudoautomorphism',
                   [is_pseudoautomorphism(t, PsAutPair(translation(t, 'T', x), cube))], lambda i: (t.name(x),))
        if run.failed:
            return run.result()

    for x, y in pairs.tolist():
        w = lambda i: (t.name(x), t.name(y))
        xi, yi = t.inv(x), t.inv(y)
        rxy = PsAutPair(translation(t, 'Rxy', x, y), comm(x, y))
        run.expect('(R_{x,y}, [[x,y]]) is a pseudoautomorphism', [is_pseudoautomorphism(t, rxy)], w)
        dxy = PsAutPair(translation(t, 'Dxy', x, y), _word(t, yi, x, yi, yi, xi))
        run.expect('(D_{x,y}, y^-1 x y^-2 x^-1) is a pseudoautomorphism', [is_pseudoautomorphism(t, dxy)], w)
        try:
            first = PsAutPair(translation(t, 'Lxy', x, yi), comm(xi, y))
            second = PsAutPair(translation(t, 'T', y), t.inv(_word(t, y, y, y)))
            third = PsAutPair(translation(t, 'Lxy', y, x), comm(yi, xi))
            product = psaut_compose(psaut_compose(first, second, t), third, t)
        except NotPseudoautomorphism:
            product = None
        run.expect('D_{x,y} = L_{x,y^-1} T_y L_{y,x}', [product == dxy], w)
        if run.failed:
            break
    return run.result()


#
# Triality suites
#
def _subgroup_H(G, budget, seed):
    xs, exhaustive = G.sample(budget, seed)
    return xs[centralizer_of_sigma(G, xs)], exhaustive


def _conj_perm(G, loop, E, k):
    """ Index images of M under J_k, or None when M^k leaves M. """
    img = G.conj(E, k)
    if not loop.contains(img).all():
        return None
    return loop.index(img)


def suite_gzt(target: Target, budget, seed):
    G = _need_group(target, 'gzt')
    run = _Run('gzt')
    loop = G.loop
    E = loop.elems
    N = loop.order
    fmt = G.format
    rng = np.random.default_rng(seed)
    try:
        table = materialize(loop)
    except TooLarge:
        table = loop

    idx, exhaustive = _tuples(N, 2, budget, rng)
    run.sampled(exhaustive)
    i, j = idx[:, 0], idx[:, 1]
    m, n = E[i], E[j]
    w2 = lambda k: (fmt(m[k]), fmt(n[k]))

    a, b, c = m, G.rho(m), G.rho2(m)
    run.expect('m, m^rho, m^rho2 commute',
               G.eq(G.mul(a, b), G.mul(b, a)) & G.eq(G.mul(a, c), G.mul(c, a)) & G.eq(G.mul(b, c), G.mul(c, b)),
               w2)
    mi, ni = G.inv(m), G.inv(n)
    run.expect('m^-rho n m^-rho2 = n^-rho2 m n^-rho',
               G.eq(G.mul(G.mul(G.rho(mi), n), G.rho2(mi)), G.mul(G.mul(G.rho2(ni), m), G.rho(ni))), w2)
    k1 = G.comm(G.rho2(n), G.rho(mi))
    k2 = G.comm(G.rho(ni), G.rho2(m))
    run.expect('[n^rho2, m^-rho] = [n^-rho, m^rho2] in C(sigma)', G.eq(k1, k2) & G.eq(G.sigma(k1), k1), w2)
    mnm = loop.mul_many(loop.mul_many(i, j), i)
    run.expect('m.n.m = mnm', G.eq(E[mnm], G.mul(G.mul(m, n), m)), w2)

    run.expect('phi(M) lies in C(sigma)', centralizer_of_sigma(G, phi(G, E)), lambda k: (fmt(E[k]),))
    hs, h_exhaustive = _subgroup_H(G, budget, seed)
    run.sampled(h_exhaustive)
    run.expect('phi(C(sigma)) lies in M', loop.contains(phi(G, hs)), lambda k: (fmt(hs[k]),))
    if run.failed:
        return run.result()

    # each h and each pair below costs a pass over M
    per_pass = max(1, budget // N)
    if len(hs) > per_pass:
        run.sampled(False)
        hs = hs[rng.choice(len(hs), per_pass, replace=False)]
    for h in hs:
        perm = _conj_perm(G, loop, E, h)
        run.expect('M^h = M', [perm is not None], lambda k: (fmt(h),))
        if run.failed:
            return run.result()
        ok = is_pseudoautomorphism(table, PsAutPair(Perm(perm), int(loop.index(phi(G, h)))))
        run.expect('(J_h, phi(h)) is a pseudoautomorphism', [ok], lambda k: (fmt(h),))
        if run.failed:
            return run.result()

    few = idx if len(idx) <= per_pass else idx[rng.choice(len(idx), per_pass, replace=False)]
    if len(few) < len(idx):
        run.sampled(False)
    for x, y in few.tolist():
        w = lambda k: (fmt(E[x]), fmt(E[y]))
        k = G.comm(G.rho(E[x]), G.rho2(G.inv(E[y])))
        perm = _conj_perm(G, loop, E, k)
        rxy = translation(table, 'Rxy', x, y).image
        ok = perm is not None and np.array_equal(perm, rxy) \
            and loop.contains(phi(G, k)) and int(loop.index(phi(G, k))) == assoc_comm(table, 'commutator', x, y)
        run.expect('(J_k, phi(k)) = (R_{m,n}, [[m,n]]) for k = [m^rho, n^-rho2]', [ok], w)
        if run.failed:
            return run.result()

    if N > per_pass:
        run.sampled(False)
    for x in range(N) if N <= per_pass else rng.choice(N, per_pass, replace=False).tolist():
        k = phi(G, E[x])
        perm = _conj_perm(G, loop, E, k)
        cube = table.inv(_word(table, x, x, x))
        ok = perm is not None and np.array_equal(perm, translation(table, 'T', x).image) \
            and loop.contains(phi(G, k)) and int(loop.index(phi(G, k))) == cube
        run.expect('(J_k, phi(k)) = (T_m, m^-3) for k = phi(m)', [ok], lambda _: (fmt(E[x]),))
        if run.failed:
            return run.result()

    idx, exhaustive = _tuples(N, 3, budget, rng)
    run.sampled(exhaustive)
    l, m, n = idx[:, 0], idx[:, 1], idx[:, 2]
    mul = loop.mul_many
    assoc = mul(loop.inv_many(mul(l, mul(m, n))), mul(mul(l, m), n))
    L, M, Nn = E[l], E[m], E[n]
    k = G.comm(G.rho(G.inv(Nn)), G.rho2(M))
    run.expect('(l,m,n) = [k,l]^(l^rho2) for k = [n^-rho, m^rho2]',
               G.eq(E[assoc], G.conj(G.comm(k, L), G.rho2(L))),
               lambda q: (fmt(L[q]), fmt(M[q]), fmt(Nn[q])))
    return run.result()


def _abelian_check(G: WreathModuleGroup, run, budget, rng):
    loop, ops, r = G.loop, ModuleOperators(G), G.ring
    A = G.abelian_part()
    E = loop.elems
    pairs, exhaustive = _tuples(loop.order, 2, max(1, budget // max(1, len(A) ** 2)), rng)
    run.sampled(exhaustive)
    ua, wa = np.meshgrid(A, A, indexing='ij')
    ua, wa = ua.ravel(), wa.ravel()
    uc, wc = ops.coords(E[ua]), ops.coords(E[wa])
    for x, y in pairs.tolist():
        general = formula_general(G, E[x], E[y], E[ua], E[wa], check=False)
        expected, _ = formula_abelian(ops.D, ops.L, ops.T, E[x], E[y], uc, wc, r)
        ok = loop.contains(general).all() and np.array_equal(ops.coords(general), expected)
        run.expect('u D_{m,n} + w L_{n,m} agrees with the group word', [ok],
                   lambda _: (G.format(E[x]), G.format(E[y])))
        if run.failed:
            return


def _identification_check(G: WreathModuleGroup, run):
    from mf_products import GdLoop, module_to_gd
    loop = G.loop
    try:
        table = materialize(loop).table
    except TooLarge:
        return
    gd = GdLoop(G.ring, G.mats)
    f = module_to_gd(G)
    run.expect('m.u -> (g, u) is a bijection', [len(np.unique(f)) == loop.order == gd.order],
               lambda _: (loop.order, gd.order))
    ok = gd.mul_many(f[:, None], f[None, :]) == f[table]
    run.expect('m.u -> (g, u) is a homomorphism onto G semidirect V', ok,
               lambda k: (loop.name(k // loop.order), loop.name(k % loop.order)))


def suite_formulas(target: Target, budget, seed):
    G = _need_group(target, 'formulas')
    run = _Run('formulas')
    loop = G.loop
    E = loop.elems
    rng = np.random.default_rng(seed)

    idx, exhaustive = _tuples(loop.order, 4, budget, rng)
    run.sampled(exhaustive)
    m, n, u, w = idx.T
    names = lambda k: tuple(G.format(E[c[k]]) for c in (m, n, u, w))
    x = formula_general(G, E[m], E[n], E[u], E[w], check=False)
    inside = loop.contains(x)
    run.expect('x lies in M', inside, names)
    if inside.all():
        mul = loop.mul_many
        run.expect('(m.u).(n.w) = (m.n).x', mul(mul(m, u), mul(n, w)) == mul(mul(m, n), loop.index(x)), names)

    y = formula_inverse(G, E[m], E[u], check=False)
    inside = loop.contains(y)
    run.expect('y lies in M', inside, names)
    if inside.all():
        run.expect('(m.u)^-1 = m^-1.y',
                   loop.inv_many(loop.mul_many(m, u)) == loop.mul_many(loop.inv_many(m), loop.index(y)), names)

    if isinstance(G, WreathModuleGroup) and G.ring.is_field and not run.failed:
        _abelian_check(G, run, budget, rng)
        if G.n == 2 and not run.failed:
            _identification_check(G, run)
    return run.result()


#
# Zorn algebra
#
def _invertible_triples(ring, loop, k, rng):
    if isinstance(loop, ZornLoop) and loop.ring == ring:
        return loop.elems[rng.integers(loop.order, size=(3, k))]
    found = np.empty((0, DIM), dtype=np.int64)
    while len(found) < 3 * k:
        cand = rng.integers(ring.order, size=(4 * k, DIM))
        found = np.concatenate([found, cand[ring.is_unit(norm_codes(ring, cand))]])
    return found[:3 * k].reshape(3, k, DIM)


def suite_altop(target: Target, budget, seed):
    ring = target.algebra
    if ring is None:
        raise SuiteNotApplicable("suite altop needs a Zorn algebra; %s has none" % target.name)
    run = _Run('altop')
    run.sampled(False)
    rng = np.random.default_rng(seed)
    r = ring

    def op(kind, x, y=None):
        return operator_codes(r, kind, x, y)

    def prod(*mats):
        acc = mats[0]
        for mat in mats[1:]:
            acc = mat_prod(r, acc, mat)
        return acc

    def mul(a, b):
        return zorn_mul_codes(r, a, b)

    done = 0
    while done < budget and not run.failed:
        size = min(ALTOP_CHUNK, budget - done)
        m, n, k = _invertible_triples(r, target.loop, size, rng)
        w = lambda i: tuple(' '.join(str(int(c)) for c in v[i]) for v in (m, n, k))
        eq = lambda a, b: np.all(a == b, axis=(-2, -1))

        mn, km, nk = mul(m, n), mul(k, m), mul(n, k)
        m_nk = mul(m, nk)
        run.expect('D_{m,n} = L_{m,n^-1} T_n L_{n,m}',
                   eq(op('Dxy', m, n), prod(op('Lxy', m, inv_codes(r, n)), op('T', n), op('Lxy', n, m))), w)
        run.expect('L_{n,m} D_{mn,km} = D_{n,k} L_{nk,m} D_{m.nk,m}',
                   eq(prod(op('Lxy', n, m), op('Dxy', mn, km)),
                      prod(op('Dxy', n, k), op('Lxy', nk, m), op('Dxy', m_nk, m))), w)
        run.expect('D_{k,m} L_{km,mn} = L_{k,n} L_{nk,m} D_{m.nk,m}',
                   eq(prod(op('Dxy', k, m), op('Lxy', km, mn)),
                      prod(op('Lxy', k, n), op('Lxy', nk, m), op('Dxy', m_nk, m))), w)
        lhs = r.add(prod(op('Dxy', m, n), op('Dxy', mn, km)), prod(op('Lxy', m, k), op('Lxy', km, mn)))
        rhs = r.add(prod(op('Dxy', m, nk), op('Dxy', m_nk, m)), op('Lxy', m, m_nk))
        run.expect('D_{m,n} D_{mn,km} + L_{m,k} L_{km,mn} = D_{m,nk} D_{m.nk,m} + L_{m,m.nk}', eq(lhs, rhs), w)
        done += size
    result = run.result()
    if result.ok:
        result.detail = '%d triples' % done
    return result


SUITES = {
    'moufang': suite_moufang,
    'dxy': suite_dxy,
    'psaut': suite_psaut,
    'gzt': suite_gzt,
    'formulas': suite_formulas,
    'altop': suite_altop,
}


def run_suites(target: Target, names, budget=None, seed=None, jobs=None):
    """ Run the named suites; results come back in the order asked for. """
    names = list(names)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UnknownSuite("unknown suite %s (known: %s)" % (unknown[0], ', '.join(SUITES)), witness=unknown[0])
    budget = settings.budget if budget is None else budget
    seed = settings.seed if seed is None else seed
    jobs = max(1, jobs or settings.jobs)
    for name in names:
        if name in ('gzt', 'formulas'):
            _need_group(target, name)
        if name == 'altop' and target.algebra is None:
            raise SuiteNotApplicable("suite altop needs a Zorn algebra; %s has none" % target.name)

    def one(name):
        result = SUITES[name](target, budget, seed)
        log.info("%s", result.line())
        return result

    if jobs == 1 or len(names) == 1:
        return [one(name) for name in names]
    with ThreadPoolExecutor(max_workers=min(jobs, len(names))) as pool:
        return list(pool.map(one, names))
