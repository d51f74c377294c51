"""
Exact arithmetic in the finite commutative unital rings used everywhere
else: prime fields F_p, extension fields F_{p^k} and integers modulo n.

Elements are handled internally as canonical integer codes.  For F_p and
Z/n the code is the residue in [0, n); for F_{p^k} it is the packed
coefficient vector c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  Every operation of
Ring accepts either Python ints or numpy integer arrays of codes, so the
same code path serves single elements and whole batches.
RingElem wraps a code for user-facing arithmetic.
"""

import logging

import numpy as np

from mf_errors import (NonPrimeCharacteristic, ReduciblePolynomial, UnsupportedSize, ElementOutOfRing,
                       NotInvertible, RingMismatch)

log = logging.getLogger(__name__)

MAX_ORDER = 1 << 16
MAX_DEGREE = 4
TABLE_ORDER = 256

PRIME, EXTENSION, MODULAR = 'Fp', 'Fpk', 'Zn'


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q):
    """ Return (p, k) with q = p^k, or None. """
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _poly_rem(num, den, p):
    """ Remainder of num by the monic polynomial den over F_p (low degree first). """
    num = list(num)
    dd = len(den) - 1
    for deg in range(len(num) - 1, dd - 1, -1):
        c = num[deg] % p
        if c:
            for t in range(dd + 1):
                num[deg - dd + t] = (num[deg - dd + t] - c * den[t]) % p
    return [c % p for c in num[:dd]]


def find_factor(poly, p):
    """ Exhaustive search for a monic factor of degree 1..k//2; None if irreducible. """
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for code in range(p ** d):
            cand = [(code // p ** i) % p for i in range(d)] + [1]
            if not any(_poly_rem(poly, cand, p)):
                return cand
    return None


class RingSpec(object):
    """ Description of a coefficient ring: kind, characteristic, order. """
    __slots__ = ('kind', 'p', 'k', 'poly', 'modulus')

    def __init__(self, kind, p, k=1, poly=()):
        self.kind = kind
        self.p = p
        self.k = k
        self.poly = tuple(poly)
        self.modulus = p

    @classmethod
    def prime_field(cls, p):
        return cls(PRIME, p)

    @classmethod
    def extension_field(cls, p, k, coeffs):
        return cls(EXTENSION, p, k, coeffs)

    @classmethod
    def integers_mod(cls, n):
        return cls(MODULAR, n)

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p ** self.k

    def _key(self):
        return self.kind, self.p, self.k, self.poly

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        if self.kind == EXTENSION:
            return 'Fpk:%d,%d,%s' % (self.p, self.k, ','.join(str(c) for c in self.poly))
        return '%s:%d' % (self.kind, self.p)

    __repr__ = __str__


class Ring(object):
    """ A finite commutative unital ring with verified invariants.
        Build it with ring_make(spec) or the field()/integers_mod() helpers.
    """

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.order = spec.order
        self.characteristic = spec.characteristic
        self.zero = 0
        self.one = 1
        self._mod = None
        self._tabled = False
        self._validate()

        if spec.kind == EXTENSION:
            self._pows = [spec.p ** i for i in range(spec.k)]
            self._tabled = self.order <= TABLE_ORDER
            if self._tabled:
                self._build_tables()
        else:
            self._mod = spec.p
        self.is_field = spec.kind != MODULAR or is_prime(spec.p)
        self._inv_table = self._build_inverses()
        log.debug("ring %s ready (order %d)", spec, self.order)

    def _validate(self):
        spec = self.spec
        if spec.kind not in (PRIME, EXTENSION, MODULAR):
            raise UnsupportedSize("unknown ring kind %r" % spec.kind)
        if spec.p < 2:
            raise UnsupportedSize("ring order must be at least 2")
        if spec.kind in (PRIME, EXTENSION) and not is_prime(spec.p):
            raise NonPrimeCharacteristic("characteristic %d is not prime" % spec.p, witness=spec.p)
        if spec.kind == EXTENSION:
            if not 2 <= spec.k <= MAX_DEGREE or len(spec.poly) != spec.k:
                raise UnsupportedSize("extension degree must be 2..%d with k coefficients" % MAX_DEGREE)
            if any(not 0 <= c < spec.p for c in spec.poly):
                raise ReduciblePolynomial("polynomial coefficients must lie in [0, %d)" % spec.p)
        if spec.order > MAX_ORDER:
            raise UnsupportedSize("ring order %d exceeds %d" % (spec.order, MAX_ORDER))
        if spec.kind == EXTENSION:
            factor = find_factor(list(spec.poly) + [1], spec.p)
            if factor is not None:
                raise ReduciblePolynomial("x^%d + %s is reducible over F_%d" % (spec.k, spec.poly, spec.p),
                                          witness=tuple(factor))

    # Extension-field helpers
    def coeffs(self, code):
        if self.spec.kind != EXTENSION:
            return (int(code),)
        p = self.spec.p
        return tuple((int(code) // q) % p for q in self._pows)

    def from_coeffs(self, coeffs):
        if self.spec.kind != EXTENSION:
            return int(coeffs[0]) % self.spec.p
        p = self.spec.p
        return sum((int(c) % p) * q for c, q in zip(coeffs, self._pows))

    def _poly_mul(self, a, b):
        p, k, poly = self.spec.p, self.spec.k, self.spec.poly
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * k - 1)
        for i in range(k):
            if ca[i]:
                for j in range(k):
                    prod[i + j] += ca[i] * cb[j]
        return self.from_coeffs(_poly_rem(prod, list(poly) + [1], p))

    def _poly_add(self, a, b):
        return self.from_coeffs([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def _poly_neg(self, a):
        return self.from_coeffs([-c for c in self.coeffs(a)])

    def _build_tables(self):
        p, k, n = self.spec.p, self.spec.k, self.order
        codes = np.arange(n)
        digits = np.stack([(codes // q) % p for q in self._pows], axis=1)
        weights = np.array(self._pows)

        add = (digits[:, None, :] + digits[None, :, :]) % p
        self._add_table = (add * weights).sum(axis=2)

        conv = np.zeros((n, n, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                conv[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        for deg in range(2 * k - 2, k - 1, -1):
            c = conv[:, :, deg] % p
            for t in range(k):
                conv[:, :, deg - k + t] -= c * self.spec.poly[t]
        self._mul_table = ((conv[:, :, :k] % p) * weights).sum(axis=2)
        self._neg_table = (((-digits) % p) * weights).sum(axis=1)

        self._add_rows = self._add_table.tolist()
        self._mul_rows = self._mul_table.tolist()
        self._neg_list = self._neg_table.tolist()

    def _build_inverses(self):
        n = self.order
        table = np.full(n, -1, dtype=np.int64)
        if self._mod is not None:
            for a in range(1, n):
                try:
                    table[a] = pow(a, -1, n)
                except ValueError:
                    pass
        elif self._tabled:
            rows, cols = np.nonzero(self._mul_table == 1)
            table[rows] = cols
        else:
            for a in range(1, n):
                table[a] = self._power_scalar(a, n - 2)
        return table

    # Arithmetic on codes (ints or arrays)
    def add(self, a, b):
        if self._mod is not None:
            return (a + b) % self._mod
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            if self._tabled:
                return self._add_table[a, b]
            return np.vectorize(self._poly_add, otypes=[np.int64])(a, b)
        if self._tabled:
            return self._add_rows[a][b]
        return self._poly_add(a, b)

    def neg(self, a):
        if self._mod is not None:
            return (-a) % self._mod
        if isinstance(a, np.ndarray):
            if self._tabled:
                return self._neg_table[a]
            return np.vectorize(self._poly_neg, otypes=[np.int64])(a)
        if self._tabled:
            return self._neg_list[a]
        return self._poly_neg(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mod is not None:
            return (a * b) % self._mod
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            if self._tabled:
                return self._mul_table[a, b]
            return np.vectorize(self._poly_mul, otypes=[np.int64])(a, b)
        if self._tabled:
            return self._mul_rows[a][b]
        return self._poly_mul(a, b)

    def inv(self, a):
        if isinstance(a, np.ndarray):
            res = self._inv_table[a]
            if (res < 0).any():
                raise NotInvertible("array contains a non-unit")
            return res
        res = int(self._inv_table[a])
        if res < 0:
            raise NotInvertible("%s is not invertible in %s" % (self.format(a), self.spec), witness=a)
        return res

    def is_unit(self, a):
        return self._inv_table[a] >= 0

    def units(self):
        return [int(a) for a in np.nonzero(self._inv_table >= 0)[0]]

    def _power_scalar(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def power(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        return self._power_scalar(a, e)

    def from_int(self, z):
        """ Image of the integer z under Z -> ring. """
        if self._mod is not None:
            return z % self._mod
        return self.from_coeffs([z % self.spec.p] + [0] * (self.spec.k - 1))

    def reduce(self, arr):
        """ Reduce an integer array of sums/products back to codes (modular kinds only). """
        return arr % self._mod

    @property
    def modular(self):
        return self._mod is not None

    def check(self, code):
        if isinstance(code, RingElem):
            if code.ring != self:
                raise RingMismatch("element of %s used in %s" % (code.ring.spec, self.spec))
            return code.code
        if not isinstance(code, (int, np.integer)) or not 0 <= code < self.order:
            raise ElementOutOfRing("%r is not an element of %s" % (code, self.spec), witness=code)
        return int(code)

    def elements(self):
        return range(self.order)

    def format(self, code):
        """ Human readable form: residues as integers, F_{p^k} as polynomials in x. """
        if self.spec.kind != EXTENSION:
            return str(int(code))
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs(code)))):
            if not c:
                continue
            mono = '' if i == 0 else ('x' if i == 1 else 'x^%d' % i)
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else '%d%s' % (c, mono))
        return '+'.join(terms) or '0'

    def __call__(self, code):
        return RingElem(self, self.check(code))

    def __eq__(self, other):
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return 'Ring(%s)' % self.spec


class RingElem(object):
    """ An element of a Ring, compared bit-exactly on its canonical code. """
    __slots__ = ('ring', 'code')

    def __init__(self, ring, code):
        self.ring = ring
        self.code = code

    def _other(self, other):
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingMismatch("%s and %s" % (self.ring.spec, other.ring.spec))
            return other.code
        return self.ring.from_int(other)

    def __add__(self, other):
        return RingElem(self.ring, self.ring.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ring, self.ring.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return RingElem(self.ring, self.ring.sub(self._other(other), self.code))

    def __mul__(self, other):
        return RingElem(self.ring, self.ring.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.code))

    def __truediv__(self, other):
        return RingElem(self.ring, self.ring.mul(self.code, self.ring.inv(self._other(other))))

    def inverse(self):
        return RingElem(self.ring, self.ring.inv(self.code))

    @property
    def coeffs(self):
        return self.ring.coeffs(self.code)

    def __int__(self):
        return self.code

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.spec, self.code))

    def __str__(self):
        return self.ring.format(self.code)

    def __repr__(self):
        return 'RingElem(%s, %s)' % (self.ring.spec, self.ring.format(self.code))


def ring_make(spec: RingSpec) -> Ring:
    return Ring(spec)


def arith(ring: Ring, op, a, b) -> RingElem:
    a, b = ring.check(a), ring.check(b)
    fn = {'add': ring.add, 'sub': ring.sub, 'mul': ring.mul}[op]
    return RingElem(ring, fn(a, b))


def inverse(ring: Ring, a) -> RingElem:
    return RingElem(ring, ring.inv(ring.check(a)))


def enumerate_ring(ring: Ring):
    """ Every element once, in code order: 0 first, then 1. """
    return [RingElem(ring, a) for a in ring.elements()]


_cache = {}


def _cached(spec):
    ring = _cache.get(spec)
    if ring is None:
        ring = _cache[spec] = Ring(spec)
    return ring


def prime_field(p):
    return _cached(RingSpec.prime_field(p))


def integers_mod(n):
    return _cached(RingSpec.integers_mod(n))


def conway_like(p, k):
    """ Least monic irreducible polynomial of degree k over F_p (coefficient order). """
    for code in range(p ** k):
        coeffs = [(code // p ** i) % p for i in range(k)]
        if coeffs[0] and find_factor(coeffs + [1], p) is None:
            return tuple(coeffs)
    raise ReduciblePolynomial("no irreducible polynomial of degree %d over F_%d" % (k, p))


def field(q):
    """ The finite field with q elements. """
    pk = prime_power(q)
    if pk is None:
        raise NonPrimeCharacteristic("%d is not a prime power" % q, witness=q)
    p, k = pk
    if k == 1:
        return prime_field(p)
    return _cached(RingSpec.extension_field(p, k, conway_like(p, k)))
