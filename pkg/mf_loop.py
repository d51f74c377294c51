"""
Finite loops.

Every loop in the package speaks the same protocol (class Loop): elements
are the integers 0..order-1, element 0 is the identity, and products are
available one at a time (mul) or for whole numpy index arrays (mul_many).
LoopTable stores a validated Cayley table; the lazy handles of the other
modules compute products on demand and can be turned into a table with
materialize() while they fit the configured cap.

Translations act on the right, like permutations:  y L_x = x.y,
y R_x = y.x, and p * q applies p first.
"""

import logging
import time
from itertools import chain, combinations
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from mf_config import settings
from mf_errors import (NotLatinSquare, NoIdentity, IndexOutOfRange, MissingSecondArgument,
                       MissingThirdArgument, NotMoufang, NotASubloop, NotNormal, IllDefined,
                       NotPseudoautomorphism, Timeout, TableFormatError, TooLargeToMaterialize)

log = logging.getLogger(__name__)

TABLE_MAGIC = 'loop-table v1'
HANDLE_MAGIC = 'loop-handle v1'
CHUNK = 1 << 16


class Verdict(object):
    """ Outcome of a check.  A failing verdict always carries a witness. """
    __slots__ = ('ok', 'witness', 'exhaustive', 'detail')

    def __init__(self, ok, witness=None, exhaustive=True, detail=''):
        self.ok = ok
        self.witness = witness
        self.exhaustive = exhaustive
        self.detail = detail

    def __bool__(self):
        return bool(self.ok)

    def __repr__(self):
        mode = 'exhaustive' if self.exhaustive else 'sampled'
        if self.ok:
            return 'Verdict(pass, %s)' % mode
        return 'Verdict(fail, %s, witness=%r)' % (mode, self.witness)


class Perm(object):
    """ Permutation of 0..n-1 acting on the right. """
    __slots__ = ('image',)

    def __init__(self, image):
        self.image = np.asarray(image, dtype=np.int64)

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))

    def __call__(self, i):
        return int(self.image[i])

    def __mul__(self, other):
        return Perm(other.image[self.image])

    def inverse(self):
        return Perm(np.argsort(self.image))

    def is_identity(self):
        return bool(np.array_equal(self.image, np.arange(len(self.image))))

    def is_bijection(self):
        return bool(np.array_equal(np.sort(self.image), np.arange(len(self.image))))

    def __len__(self):
        return len(self.image)

    def __eq__(self, other):
        return isinstance(other, Perm) and np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash(self.image.tobytes())

    def __repr__(self):
        return 'Perm(%s)' % self.image.tolist()


class PsAutPair(object):
    """ A permutation together with its candidate companion element. """
    __slots__ = ('perm', 'companion')

    def __init__(self, perm, companion):
        self.perm = perm
        self.companion = int(companion)

    def __eq__(self, other):
        return isinstance(other, PsAutPair) and self.perm == other.perm and self.companion == other.companion

    def __hash__(self):
        return hash((self.perm, self.companion))

    def __repr__(self):
        return 'PsAutPair(%r, %d)' % (self.perm, self.companion)


class Loop(object):
    """ Protocol shared by Cayley tables and lazy loop handles.  The default
        divisions go through inverses, which is valid for the inverse
        property loops (Moufang loops) built by this package.
    """
    order = 0
    identity = 0
    descriptor = None

    def mul(self, x, y):
        raise NotImplementedError

    def mul_many(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
        out = np.empty(x.shape, dtype=np.int64)
        for idx in np.ndindex(x.shape):
            out[idx] = self.mul(int(x[idx]), int(y[idx]))
        return out

    def inv(self, x):
        raise NotImplementedError

    def inv_many(self, x):
        x = np.asarray(x, dtype=np.int64)
        return np.array([self.inv(int(a)) for a in x.ravel()], dtype=np.int64).reshape(x.shape)

    def ldiv(self, x, y):
        return self.mul(self.inv(x), y)

    def ldiv_many(self, x, y):
        return self.mul_many(self.inv_many(x), y)

    def rdiv(self, x, y):
        return self.mul(x, self.inv(y))

    def rdiv_many(self, x, y):
        return self.mul_many(x, self.inv_many(y))

    def name(self, x):
        return str(int(x))

    def elements(self):
        return np.arange(self.order, dtype=np.int64)

    def check_index(self, x):
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.order:
            raise IndexOutOfRange("element %r not in 0..%d" % (x, self.order - 1), witness=x)
        return int(x)

    def __len__(self):
        return self.order


class LoopTable(Loop):
    """ A finite loop given by its validated Cayley table. """

    def __init__(self, table, names=None, validate=True):
        self.table = np.ascontiguousarray(table, dtype=np.int64)
        self.order = self.table.shape[0]
        self.names = list(names) if names else None
        if validate:
            validate_table(self.table)
        self._ldiv = np.argsort(self.table, axis=1)
        self._rdiv = np.argsort(self.table, axis=0)
        self._inv = self._ldiv[:, 0].copy()

    def mul(self, x, y):
        return int(self.table[x, y])

    def mul_many(self, x, y):
        return self.table[x, y]

    def inv(self, x):
        return int(self._inv[x])

    def inv_many(self, x):
        return self._inv[x]

    def ldiv(self, x, y):
        return int(self._ldiv[x, y])

    def ldiv_many(self, x, y):
        return self._ldiv[x, y]

    def rdiv(self, x, y):
        return int(self._rdiv[x, y])

    def rdiv_many(self, x, y):
        return self._rdiv[x, y]

    def name(self, x):
        return self.names[x] if self.names else str(int(x))

    def __eq__(self, other):
        return isinstance(other, LoopTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return 'LoopTable(order=%d)' % self.order


def validate_table(table):
    n = table.shape[0]
    if table.ndim != 2 or table.shape[1] != n:
        raise NotLatinSquare("table is not square")
    if n == 0:
        raise NoIdentity("empty table")
    if table.min() < 0 or table.max() >= n:
        raise NotLatinSquare("table entries outside 0..%d" % (n - 1))
    ref = np.arange(n)
    bad_rows = np.nonzero(np.any(np.sort(table, axis=1) != ref, axis=1))[0]
    if len(bad_rows):
        raise NotLatinSquare("row %d repeats an element" % bad_rows[0], witness=('row', int(bad_rows[0])))
    bad_cols = np.nonzero(np.any(np.sort(table, axis=0) != ref[:, None], axis=0))[0]
    if len(bad_cols):
        raise NotLatinSquare("column %d repeats an element" % bad_cols[0], witness=('col', int(bad_cols[0])))
    if not (np.array_equal(table[0], ref) and np.array_equal(table[:, 0], ref)):
        raise NoIdentity("element 0 is not a two-sided identity")


def relabel(table, perm, names=None):
    """ The table transported along the bijection x -> perm[x]. """
    perm = np.asarray(perm, dtype=np.int64)
    new = np.empty_like(table)
    new[perm[:, None], perm[None, :]] = perm[table]
    new_names = None
    if names:
        new_names = [None] * len(names)
        for i, nm in enumerate(names):
            new_names[perm[i]] = nm
    return new, new_names


def build_table(n, mul, names=None) -> LoopTable:
    """ Validate a product map on 0..n-1.  mul is a callable or an n x n array.
        An identity found elsewhere is moved to index 0.
    """
    if callable(mul):
        table = np.array([[mul(x, y) for y in range(n)] for x in range(n)], dtype=np.int64)
    else:
        table = np.asarray(mul, dtype=np.int64)
    if table.shape != (n, n):
        raise NotLatinSquare("product map is not defined on all %d x %d pairs" % (n, n))
    ref = np.arange(n)
    if table.min() < 0 or table.max() >= n:
        raise NotLatinSquare("product map leaves 0..%d" % (n - 1))
    for kind, arr in (('row', table), ('col', table.T)):
        bad = np.nonzero(np.any(np.sort(arr, axis=1) != ref, axis=1))[0]
        if len(bad):
            raise NotLatinSquare("%s %d repeats an element" % (kind, bad[0]), witness=(kind, int(bad[0])))
    ident = [e for e in range(n) if np.array_equal(table[e], ref) and np.array_equal(table[:, e], ref)]
    if not ident:
        raise NoIdentity("no two-sided identity")
    e = ident[0]
    if e != 0:
        log.debug("moving identity %d to index 0", e)
        perm = ref.copy()
        perm[0], perm[e] = e, 0
        table, names = relabel(table, perm, names)
    return LoopTable(table, names)


def loop_eval(t: Loop, op, x, y=None):
    x = t.check_index(x)
    if op == 'inv':
        return t.inv(x)
    if y is None:
        raise MissingSecondArgument("%s needs two arguments" % op)
    y = t.check_index(y)
    if op == 'mul':
        return t.mul(x, y)
    if op == 'ldiv':
        return t.ldiv(x, y)
    if op == 'rdiv':
        return t.rdiv(x, y)
    raise ValueError("unknown loop operation %r" % op)


def translation(t: Loop, kind, x, y=None) -> Perm:
    """ The permutations L_x, R_x, P_x, T_x, L_{x,y}, R_{x,y}, D_{x,y}. """
    x = t.check_index(x)
    if kind in ('Lxy', 'Rxy', 'Dxy'):
        if y is None:
            raise MissingSecondArgument("%s needs a second element" % kind)
        y = t.check_index(y)
    m = t.elements()
    if kind == 'L':
        img = t.mul_many(x, m)
    elif kind == 'R':
        img = t.mul_many(m, x)
    elif kind == 'P':
        img = t.rdiv_many(t.ldiv_many(x, m), x)
    elif kind == 'T':
        img = t.mul_many(t.ldiv_many(x, m), x)
    elif kind == 'Lxy':
        img = t.ldiv_many(t.mul(y, x), t.mul_many(y, t.mul_many(x, m)))
    elif kind == 'Rxy':
        img = t.rdiv_many(t.mul_many(t.mul_many(m, x), y), t.mul(x, y))
    elif kind == 'Dxy':
        xy_ = t.mul(x, t.inv(y))
        img = t.mul_many(t.inv(x), t.mul_many(t.mul_many(xy_, m), y))
    else:
        raise ValueError("unknown translation %r" % kind)
    return Perm(img)


def assoc_comm(t: Loop, kind, x, y, z=None):
    x, y = t.check_index(x), t.check_index(y)
    if kind == 'commutator':
        return t.mul(t.mul(t.mul(t.inv(x), t.inv(y)), x), y)
    if z is None:
        raise MissingThirdArgument("the associator needs three elements")
    z = t.check_index(z)
    return t.mul(t.inv(t.mul(x, t.mul(y, z))), t.mul(t.mul(x, y), z))


def _scan_table(table, xs, law):
    """ First (x, y, z) with x in xs, in lexicographic order, that breaks law. """
    T = table
    for x in xs:
        if law == 'moufang':
            lhs = T[T[x][:, None], T[:, x][None, :]]
            rhs = T[T[x][T], x]
        else:
            lhs = T[T[x][:, None], np.arange(len(T))[None, :]]
            rhs = T[x][T]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return int(x), int(bad[0][0]), int(bad[0][1])
    return None


def _holds_many(t, x, y, z, law):
    if law == 'moufang':
        lhs = t.mul_many(t.mul_many(x, y), t.mul_many(z, x))
        rhs = t.mul_many(t.mul_many(x, t.mul_many(y, z)), x)
    else:
        lhs = t.mul_many(t.mul_many(x, y), z)
        rhs = t.mul_many(x, t.mul_many(y, z))
    return lhs == rhs


def _check_law(t: Loop, law, budget=None, seed=None, jobs=None, threshold=None):
    n = t.order
    threshold = settings.moufang_exhaustive if threshold is None else threshold
    if n <= threshold:
        table = materialize(t).table
        jobs = max(1, jobs or settings.jobs)
        chunks = [c for c in np.array_split(np.arange(n), min(jobs, n)) if len(c)]
        if len(chunks) == 1:
            results = [_scan_table(table, chunks[0], law)]
        else:
            with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
                results = list(pool.map(lambda c: _scan_table(table, c, law), chunks))
        witness = next((w for w in results if w is not None), None)
        return Verdict(witness is None, witness, True)

    budget = settings.budget if budget is None else budget
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    done = 0
    while done < budget:
        k = min(CHUNK, budget - done)
        x, y, z = rng.integers(n, size=(3, k))
        ok = _holds_many(t, x, y, z, law)
        if not ok.all():
            i = int(np.argmin(ok))
            return Verdict(False, (int(x[i]), int(y[i]), int(z[i])), False)
        done += k
    return Verdict(True, None, False, detail='%d triples' % budget)


def is_moufang(t: Loop, budget=None, seed=None, jobs=None, threshold=None) -> Verdict:
    """ Check xy.zx = (x.yz)x; exhaustive up to the threshold, else sampled. """
    return _check_law(t, 'moufang', budget, seed, jobs, threshold)


def is_associative(t: Loop, budget=None, seed=None, jobs=None, threshold=None) -> Verdict:
    return _check_law(t, 'assoc', budget, seed, jobs, threshold)


def subloop_generate(t: Loop, gens, cap=None):
    """ Smallest subloop containing gens, as a sorted list of indices.  With a
        cap, None is returned as soon as the closure grows past it.
    """
    S = np.union1d(np.asarray(list(gens), dtype=np.int64), [0])
    while True:
        if cap is not None and len(S) > cap:
            return None
        grown = np.union1d(S, t.mul_many(S[:, None], S[None, :]).ravel())
        if len(grown) == len(S):
            return [int(s) for s in S]
        S = grown


def _mask(t, s):
    S = np.unique(np.asarray(list(s), dtype=np.int64))
    mask = np.zeros(t.order, dtype=bool)
    mask[S] = True
    return S, mask


def is_subloop(t: Loop, s):
    S, mask = _mask(t, s)
    return bool(mask[0]) and bool(mask[t.mul_many(S[:, None], S[None, :])].all())


def inner_mappings(t: Loop, check=True):
    """ Generators {L_{x,y}, R_{x,y}, T_x} of the inner mapping group, deduplicated. """
    if check:
        verdict = is_moufang(t)
        if not verdict:
            raise NotMoufang("loop is not Moufang", witness=verdict.witness)
    seen = {}
    for x in range(t.order):
        seen.setdefault(translation(t, 'T', x), None)
        for y in range(t.order):
            seen.setdefault(translation(t, 'Lxy', x, y), None)
            seen.setdefault(translation(t, 'Rxy', x, y), None)
    return list(seen)


def normality_witness(t: Loop, s):
    """ First (kind, x, y, m) whose inner mapping moves m out of s, or None. """
    S, mask = _mask(t, s)
    ys = t.elements()
    for x in range(t.order):
        img = t.mul_many(t.ldiv_many(x, S), x)
        if not mask[img].all():
            return 'T', x, None, int(S[np.argmin(mask[img])])
        xm = t.mul_many(x, S)
        lxy = t.ldiv_many(t.mul_many(ys, x)[:, None], t.mul_many(ys[:, None], xm[None, :]))
        rxy = t.rdiv_many(t.mul_many(t.mul_many(S, x)[None, :], ys[:, None]), t.mul_many(x, ys)[:, None])
        for kind, img in (('Lxy', lxy), ('Rxy', rxy)):
            bad = np.argwhere(~mask[img])
            if len(bad):
                y, i = bad[0]
                return kind, x, int(y), int(S[i])
    return None


def is_normal(t: Loop, s) -> bool:
    """ True iff s is invariant under every generator of the inner mapping group. """
    if not is_subloop(t, s):
        raise NotASubloop("element set is not closed under multiplication")
    return normality_witness(t, s) is None


def small_normal_subloop(t: Loop, rank=2):
    """ First proper nontrivial normal subloop generated by at most rank
        elements, as a sorted index list, or None.
    """
    t = materialize(t)
    n = t.order
    seen = set()
    for gens in chain.from_iterable(combinations(range(1, n), k) for k in range(1, rank + 1)):
        S = subloop_generate(t, gens, cap=n - 1)
        if S is None or tuple(S) in seen:
            continue
        seen.add(tuple(S))
        if normality_witness(t, S) is None:
            return S
    log.debug("%d subloops generated by at most %d elements, none normal", len(seen), rank)
    return None


def cosets(t: Loop, s):
    """ Left coset label of every element: the coset of s is 0, the others are
        numbered by their least element in ascending order.
    """
    S, _ = _mask(t, s)
    elems = t.elements()
    members = t.mul_many(elems[:, None], S[None, :])
    least = members.min(axis=1)
    reps, label = np.unique(least, return_inverse=True)
    return reps, label.reshape(-1)


def quotient(t: Loop, s) -> LoopTable:
    """ The loop of left cosets of the normal subloop s. """
    if not is_normal(t, s):
        raise NotNormal("subloop is not normal", witness=normality_witness(t, s))
    table = materialize(t).table
    reps, label = cosets(t, s)
    q = label[table[reps[:, None], reps[None, :]]]
    if not np.array_equal(label[table], q[label[:, None], label[None, :]]):
        raise IllDefined("coset product depends on the representatives")
    names = ['[%s]' % t.name(r) for r in reps]
    return LoopTable(q, names)


def is_pseudoautomorphism(t: Loop, p: PsAutPair) -> bool:
    """ xA.(yA.a) = (x.y)A.a for all x, y. """
    A = p.perm.image
    if not p.perm.is_bijection() or len(A) != t.order:
        return False
    a = p.companion
    elems = t.elements()
    right = t.mul_many(A, a)
    for start in range(0, t.order, max(1, CHUNK // t.order)):
        xs = elems[start:start + max(1, CHUNK // t.order)]
        lhs = t.mul_many(A[xs][:, None], right[None, :])
        rhs = t.mul_many(A[t.mul_many(xs[:, None], elems[None, :])], a)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def psaut_compose(p: PsAutPair, q: PsAutPair, t: Loop) -> PsAutPair:
    """ (A,a)(B,b) = (AB, aB.b), re-validated. """
    res = PsAutPair(p.perm * q.perm, t.mul(q.perm(p.companion), q.companion))
    if not is_pseudoautomorphism(t, res):
        raise NotPseudoautomorphism("composition is not a pseudoautomorphism", witness=res)
    return res


def psaut_inverse(p: PsAutPair, t: Loop) -> PsAutPair:
    inv = p.perm.inverse()
    return PsAutPair(inv, t.inv(inv(p.companion)))


# Invariants used by the isomorphism search
def element_orders(t: Loop):
    n = t.order
    elems = t.elements()
    orders = np.zeros(n, dtype=np.int64)
    power = elems.copy()
    for k in range(1, n + 1):
        orders[(power == 0) & (orders == 0)] = k
        if orders.all():
            break
        power = t.mul_many(elems, power)
    return orders


def commuting_counts(t: Loop):
    table = materialize(t).table
    return (table == table.T).sum(axis=1)


def _invariants(t):
    return np.stack([element_orders(t), commuting_counts(t)], axis=1)


def _generators(t, classes):
    """ Greedy generating set, rarest invariant class first. """
    counts = {}
    for c in map(tuple, classes):
        counts[c] = counts.get(c, 0) + 1
    candidates = sorted(range(1, t.order), key=lambda x: (counts[tuple(classes[x])], x))
    gens, span = [], {0}
    for x in candidates:
        if x not in span:
            gens.append(x)
            span = set(subloop_generate(t, gens))
            if len(span) == t.order:
                break
    return gens


def _extend(T1, T2, f, used, inv1, inv2):
    """ Close the partial map f under products; False on any conflict. """
    while True:
        dom = np.nonzero(f >= 0)[0]
        P = T1[dom[:, None], dom[None, :]].ravel()
        Q = T2[f[dom][:, None], f[dom][None, :]].ravel()
        known = f[P] >= 0
        if not np.array_equal(f[P[known]], Q[known]):
            return False
        fresh = ~known
        if not fresh.any():
            return True
        Pn, Qn = P[fresh], Q[fresh]
        if not np.array_equal(inv1[Pn], inv2[Qn]):
            return False
        f[Pn] = Qn
        if not np.array_equal(f[Pn], Qn):
            return False
        if used[Qn].any():
            return False
        used[Qn] = True
        newdom = np.nonzero(f >= 0)[0]
        if len(np.unique(f[newdom])) != len(newdom):
            return False


def isomorphic(t1: Loop, t2: Loop, timeout=None) -> Verdict:
    """ Backtracking on generator images.  The witness of a positive verdict
        is the bijection as an array: x in t1 maps to witness[x] in t2.
    """
    if t1.order != t2.order:
        return Verdict(False, ('order', t1.order, t2.order))
    n = t1.order
    T1, T2 = materialize(t1).table, materialize(t2).table
    inv1, inv2 = _invariants(t1), _invariants(t2)
    code1 = inv1[:, 0] * (n + 1) + inv1[:, 1]
    code2 = inv2[:, 0] * (n + 1) + inv2[:, 1]
    if not np.array_equal(np.sort(code1), np.sort(code2)):
        return Verdict(False, ('invariants',))
    timeout = settings.iso_timeout if timeout is None else timeout
    deadline = None if n <= settings.iso_complete else time.monotonic() + timeout

    gens = _generators(t1, inv1)
    cands = [np.nonzero(code2 == code1[g])[0] for g in gens]

    def search(k, f, used):
        if deadline is not None and time.monotonic() > deadline:
            raise Timeout("isomorphism search undecided after %.1fs" % timeout)
        if k == len(gens):
            return f if (f >= 0).all() else None
        g = gens[k]
        for c in cands[k]:
            if used[c]:
                continue
            f2, used2 = f.copy(), used.copy()
            f2[g] = c
            used2[c] = True
            if _extend(T1, T2, f2, used2, code1, code2):
                res = search(k + 1, f2, used2)
                if res is not None:
                    return res
        return None

    f0 = np.full(n, -1, dtype=np.int64)
    f0[0] = 0
    used0 = np.zeros(n, dtype=bool)
    used0[0] = True
    found = search(0, f0, used0)
    if found is None:
        return Verdict(False, ('exhausted',))
    if not np.array_equal(found[T1], T2[found[:, None], found[None, :]]):
        raise IllDefined("isomorphism search produced a non-homomorphism")
    return Verdict(True, found)


def center_bound(t: Loop, samples=64, seed=None):
    """ Number of elements that commute and associate with seeded test elements.
        The true center is never larger.
    """
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    alive = np.ones(t.order, dtype=bool)
    z = t.elements()
    tests = rng.integers(t.order, size=(samples, 2))
    for a, b in tests:
        cand = z[alive]
        ok = t.mul_many(cand, a) == t.mul_many(a, cand)
        ok &= t.mul_many(t.mul_many(cand, a), b) == t.mul_many(cand, t.mul(a, b))
        ok &= t.mul_many(t.mul_many(a, cand), b) == t.mul_many(a, t.mul_many(cand, b))
        alive[cand[~ok]] = False
    return int(alive.sum())


def materialize(loop: Loop, cap=None) -> LoopTable:
    if isinstance(loop, LoopTable):
        return loop
    cap = settings.table_cap if cap is None else cap
    n = loop.order
    if n > cap:
        raise TooLargeToMaterialize("loop of order %d exceeds the table cap %d" % (n, cap), handle=loop)
    elems = loop.elements()
    rows = max(1, CHUNK // n)
    table = np.empty((n, n), dtype=np.int64)
    for start in range(0, n, rows):
        table[start:start + rows] = loop.mul_many(elems[start:start + rows, None], elems[None, :])
    log.debug("materialized loop of order %d", n)
    return LoopTable(table, [loop.name(i) for i in range(n)])


class DirectProduct(Loop):
    """ The direct product of two loops; (a, b) has index a * |B| + b. """

    def __init__(self, a: Loop, b: Loop):
        self.a, self.b = a, b
        self.order = a.order * b.order

    def _split(self, x):
        return np.divmod(np.asarray(x, dtype=np.int64), self.b.order)

    def mul(self, x, y):
        return int(self.mul_many(x, y))

    def mul_many(self, x, y):
        xa, xb = self._split(x)
        ya, yb = self._split(y)
        return self.a.mul_many(xa, ya) * self.b.order + self.b.mul_many(xb, yb)

    def inv(self, x):
        return int(self.inv_many(x))

    def inv_many(self, x):
        xa, xb = self._split(x)
        return self.a.inv_many(xa) * self.b.order + self.b.inv_many(xb)

    def first_factor(self):
        return [a * self.b.order for a in range(self.a.order)]

    def second_factor(self):
        return list(range(self.b.order))

    def name(self, x):
        a, b = divmod(int(x), self.b.order)
        return '(%s,%s)' % (self.a.name(a), self.b.name(b))


def cyclic(n) -> LoopTable:
    r = np.arange(n)
    return LoopTable((r[:, None] + r[None, :]) % n, [str(i) for i in range(n)])


def permutation_group(perms, names=None) -> LoopTable:
    """ Cayley table of a list of permutations closed under composition. """
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[p * q] for q in perms] for p in perms]
    return build_table(len(perms), np.array(table), names)


def symmetric(k) -> LoopTable:
    import itertools
    perms = [Perm(p) for p in itertools.permutations(range(k))]
    return permutation_group(perms, [''.join(str(i) for i in p.image) for p in perms])


# Cayley-table files
def _split_names(line):
    """ Split on commas outside brackets. """
    parts, depth, cur = [], 0, []
    for ch in line:
        if ch in '([{':
            depth += 1
        elif ch in ')]}':
            depth -= 1
        if ch == ',' and depth == 0:
            parts.append(''.join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append(''.join(cur))
    return parts


def write_table(t: LoopTable, path):
    with open(path, 'w') as f:
        f.write(dump_table(t))


def dump_table(t: LoopTable):
    lines = [TABLE_MAGIC, 'order %d' % t.order]
    if t.names:
        lines.append('names ' + ','.join(t.names))
    lines.extend(' '.join(str(v) for v in row) for row in t.table.tolist())
    return '\n'.join(lines) + '\n'


def write_handle(path, descriptor, order):
    with open(path, 'w') as f:
        f.write('%s\ndescriptor %s\norder %d\n' % (HANDLE_MAGIC, descriptor, order))


def parse_loop_text(text):
    """ Parse a loop-table v1 or loop-handle v1 document.  A handle comes back
        as the pair (descriptor, order).
    """
    lines = [ln.rstrip('\r') for ln in text.split('\n')]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise TableFormatError("empty loop file")
    if lines[0] == HANDLE_MAGIC:
        try:
            desc = lines[1].split(' ', 1)[1]
            order = int(lines[2].split()[1])
        except (IndexError, ValueError):
            raise TableFormatError("malformed loop-handle header")
        return desc, order
    if lines[0] != TABLE_MAGIC:
        raise TableFormatError("unknown header %r" % lines[0])
    try:
        key, value = lines[1].split()
        assert key == 'order'
        n = int(value)
    except (ValueError, AssertionError):
        raise TableFormatError("line 2 must be 'order <n>'")
    body = lines[2:]
    names = None
    if body and body[0].startswith('names'):
        names = _split_names(body[0][len('names '):])
        body = body[1:]
        if len(names) != n:
            raise TableFormatError("%d names for order %d" % (len(names), n))
    if len(body) != n:
        raise TableFormatError("expected %d table rows, found %d" % (n, len(body)))
    try:
        rows = [[int(v) for v in ln.split()] for ln in body]
    except ValueError:
        raise TableFormatError("table rows must hold integers")
    if any(len(r) != n for r in rows):
        raise TableFormatError("every row must hold %d entries" % n)
    return LoopTable(np.array(rows, dtype=np.int64).reshape(n, n), names)


def read_loop_file(path):
    with open(path) as f:
        return parse_loop_text(f.read())
