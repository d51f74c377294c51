"""
2x2 matrices and row vectors over a Ring, GL_2 enumeration, and the small
dense linear algebra (products, row reduction, kernels, subspaces,
spinning) that the Zorn algebra and the extension checks are built on.

Vectors are row vectors acted on the right: (v a)_j = sum_i v_i a_ij.
Matrices and vectors are stored as integer codes of their Ring.
"""

import itertools
import logging

import numpy as np

from mf_errors import SingularMatrix, RingMismatch, TooLarge
from mf_ring import Ring

log = logging.getLogger(__name__)

GL2_SCAN_CAP = 1 << 12


class Mat2(object):
    """ Immutable 2x2 matrix; entries are stored row by row as ring codes. """
    __slots__ = ('ring', 'entries')

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        (a, b), (c, d) = rows
        self.entries = tuple(ring.check(x) for x in (a, b, c, d))

    @classmethod
    def identity(cls, ring):
        return cls(ring, ((1, 0), (0, 1)))

    @classmethod
    def scalar(cls, ring, lam):
        return cls(ring, ((lam, 0), (0, lam)))

    @classmethod
    def from_array(cls, ring, arr):
        arr = np.asarray(arr).reshape(2, 2)
        return cls(ring, ((int(arr[0, 0]), int(arr[0, 1])), (int(arr[1, 0]), int(arr[1, 1]))))

    def array(self):
        return np.array(self.entries, dtype=np.int64).reshape(2, 2)

    def rows(self):
        a, b, c, d = self.entries
        return (a, b), (c, d)

    def entry(self, i, j):
        return self.ring(self.entries[2 * i + j])

    def __mul__(self, other):
        return mat_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        f = self.ring.format
        a, b, c, d = self.entries
        return '[[%s,%s],[%s,%s]]' % (f(a), f(b), f(c), f(d))

    __repr__ = __str__


class Vec(object):
    """ Immutable row vector of ring codes (length 2 for Vec2, 3 for Vec3). """
    __slots__ = ('ring', 'comps')

    def __init__(self, ring: Ring, comps):
        self.ring = ring
        self.comps = tuple(ring.check(x) for x in comps)

    @classmethod
    def zero(cls, ring, n):
        return cls(ring, (0,) * n)

    def __len__(self):
        return len(self.comps)

    def _same(self, other):
        if self.ring != other.ring or len(self) != len(other):
            raise RingMismatch("vectors over %s and %s" % (self.ring.spec, other.ring.spec))

    def __add__(self, other):
        self._same(other)
        return Vec(self.ring, [self.ring.add(x, y) for x, y in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._same(other)
        return Vec(self.ring, [self.ring.sub(x, y) for x, y in zip(self.comps, other.comps)])

    def __neg__(self):
        return Vec(self.ring, [self.ring.neg(x) for x in self.comps])

    def dot(self, other):
        self._same(other)
        acc = 0
        for x, y in zip(self.comps, other.comps):
            acc = self.ring.add(acc, self.ring.mul(x, y))
        return acc

    def cross(self, other):
        self._same(other)
        r = self.ring
        (a1, a2, a3), (b1, b2, b3) = self.comps, other.comps
        return Vec(r, (r.sub(r.mul(a2, b3), r.mul(a3, b2)),
                       r.sub(r.mul(a3, b1), r.mul(a1, b3)),
                       r.sub(r.mul(a1, b2), r.mul(a2, b1))))

    def code(self):
        """ Packed index sum v_i q^i, used to number module elements. """
        q = self.ring.order
        return sum(c * q ** i for i, c in enumerate(self.comps))

    @classmethod
    def from_code(cls, ring, n, code):
        q = ring.order
        return cls(ring, [(code // q ** i) % q for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, Vec) and self.ring == other.ring and self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __str__(self):
        return '(%s)' % ','.join(self.ring.format(c) for c in self.comps)

    __repr__ = __str__


def _check_same(a, b):
    if a.ring != b.ring:
        raise RingMismatch("operands over %s and %s" % (a.ring.spec, b.ring.spec))


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    _check_same(a, b)
    r = a.ring
    a11, a12, a21, a22 = a.entries
    b11, b12, b21, b22 = b.entries
    return Mat2(r, ((r.add(r.mul(a11, b11), r.mul(a12, b21)), r.add(r.mul(a11, b12), r.mul(a12, b22))),
                    (r.add(r.mul(a21, b11), r.mul(a22, b21)), r.add(r.mul(a21, b12), r.mul(a22, b22)))))


def mat_det(a: Mat2):
    r = a.ring
    a11, a12, a21, a22 = a.entries
    return r.sub(r.mul(a11, a22), r.mul(a12, a21))


def mat_adjoint(a: Mat2) -> Mat2:
    r = a.ring
    a11, a12, a21, a22 = a.entries
    return Mat2(r, ((a22, r.neg(a12)), (r.neg(a21), a11)))


def mat_scale(a: Mat2, lam) -> Mat2:
    r = a.ring
    return Mat2(r, ((r.mul(lam, a.entries[0]), r.mul(lam, a.entries[1])),
                    (r.mul(lam, a.entries[2]), r.mul(lam, a.entries[3]))))


def mat_inv(a: Mat2) -> Mat2:
    det = mat_det(a)
    if not a.ring.is_unit(det):
        raise SingularMatrix("matrix %s has determinant %s" % (a, a.ring.format(det)), witness=a)
    return mat_scale(mat_adjoint(a), a.ring.inv(det))


def vec_act(v: Vec, a: Mat2) -> Vec:
    _check_same(v, a)
    r = a.ring
    a11, a12, a21, a22 = a.entries
    v1, v2 = v.comps
    return Vec(r, (r.add(r.mul(v1, a11), r.mul(v2, a21)), r.add(r.mul(v1, a12), r.mul(v2, a22))))


def commutator_mat(g: Mat2, h: Mat2) -> Mat2:
    return mat_mul(mat_mul(mat_inv(g), mat_inv(h)), mat_mul(g, h))


def gl2_enumerate(ring: Ring):
    """ All invertible 2x2 matrices, identity first, the rest in code order. """
    if ring.order ** 4 > GL2_SCAN_CAP:
        raise TooLarge("GL_2 over a ring of order %d needs %d matrices scanned" % (ring.order, ring.order ** 4))
    ident = Mat2.identity(ring)
    result = [ident]
    for a, b, c, d in itertools.product(range(ring.order), repeat=4):
        m = Mat2(ring, ((a, b), (c, d)))
        if m != ident and ring.is_unit(mat_det(m)):
            result.append(m)
    log.debug("GL_2(%s) has %d elements", ring.spec, len(result))
    return result


def sl2_generators(ring: Ring):
    """ Elementary matrices generating SL_2 of a finite field. """
    gens = []
    k = ring.spec.k
    for i in range(k):
        c = ring.from_coeffs([1 if j == i else 0 for j in range(k)])
        gens.append(Mat2(ring, ((1, c), (0, 1))))
        gens.append(Mat2(ring, ((1, 0), (c, 1))))
    return gens


def group_closure(gens, cap=None):
    """ The matrix group generated by gens: breadth-first, identity first. """
    ring = gens[0].ring
    ident = Mat2.identity(ring)
    seen = {ident: 0}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(x, g)
                if y not in seen:
                    seen[y] = len(order)
                    order.append(y)
                    nxt.append(y)
                    if cap is not None and len(order) > cap:
                        raise TooLarge("generated group exceeds %d elements" % cap)
        frontier = nxt
    return order


# Dense matrices of codes
def mat_prod(ring: Ring, A, B):
    """ Product of (batched) code matrices over the ring. """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if ring.modular:
        return np.matmul(A, B) % ring.order
    acc = None
    for k in range(A.shape[-1]):
        term = ring.mul(A[..., :, k:k + 1], B[..., k:k + 1, :])
        acc = term if acc is None else ring.add(acc, term)
    return acc


def vec_mat(ring: Ring, v, M):
    """ Row vector(s) v (shape (..., d)) times matrix M (shape (..., d, e)). """
    v = np.asarray(v, dtype=np.int64)
    return mat_prod(ring, v[..., None, :], M)[..., 0, :]


def eye(n):
    return np.eye(n, dtype=np.int64)


def kron(ring: Ring, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    prod = ring.mul(A[:, None, :, None], B[None, :, None, :])
    return prod.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def row_reduce(ring: Ring, M):
    """ Reduced row echelon form over a field.  Returns (R, pivots) with the
        nonzero rows of R first; pivot entries are 1.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim == 1:
        R = R[None, :]
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if not len(nz):
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = ring.mul(R[r], ring.inv(int(R[r, c])))
        for i2 in range(rows):
            if i2 != r and R[i2, c]:
                R[i2] = ring.sub(R[i2], ring.mul(R[r], int(R[i2, c])))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(ring, M):
    return len(row_reduce(ring, M)[1])


def kernel(ring: Ring, A):
    """ Basis (as rows) of { x : x A = 0 }. """
    A = np.asarray(A, dtype=np.int64)
    d = A.shape[0]
    R, piv = row_reduce(ring, A.T)
    basis = []
    for f in range(d):
        if f in piv:
            continue
        x = np.zeros(d, dtype=np.int64)
        x[f] = 1
        for r, c in enumerate(piv):
            x[c] = ring.neg(int(R[r, f]))
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), d)


def mat_inverse(ring: Ring, M):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = row_reduce(ring, np.hstack([M, eye(n)]))
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular", witness=M)
    return R[:, n:]


class Subspace(object):
    """ A subspace of F^d held as a reduced echelon basis.  Coordinates of a
        member are read off the pivot columns.
    """

    def __init__(self, ring: Ring, vectors, dim):
        self.ring = ring
        self.ambient = dim
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, dim)
        R, piv = row_reduce(ring, vectors) if len(vectors) else (vectors, [])
        self.basis = R[:len(piv)]
        self.pivots = list(piv)

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, v):
        """ Remainder of v (or of each row of a batch) modulo the subspace. """
        v = np.array(v, dtype=np.int64, copy=True)
        batch = v.ndim > 1
        for row, c in zip(self.basis, self.pivots):
            coef = v[..., c].copy()
            if batch:
                v = self.ring.sub(v, self.ring.mul(coef[:, None], row[None, :]))
            elif coef:
                v = self.ring.sub(v, self.ring.mul(int(coef), row))
        return v

    def contains(self, v):
        return not np.any(self.reduce(v))

    def contains_each(self, vectors):
        return ~np.any(self.reduce(vectors), axis=-1)

    def coords(self, v):
        return np.asarray(v, dtype=np.int64)[..., self.pivots]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient == other.ambient and \
            self.pivots == other.pivots and np.array_equal(self.basis, other.basis)

    def __repr__(self):
        return 'Subspace(dim=%d of %d)' % (self.dim, self.ambient)


def spin(ring: Ring, gens, v):
    """ Smallest subspace containing v and invariant under every matrix in gens. """
    v = np.asarray(v, dtype=np.int64)
    d = v.shape[-1]
    span = Subspace(ring, v, d)
    while True:
        images = [vec_mat(ring, span.basis, g) for g in gens]
        grown = Subspace(ring, np.vstack([span.basis] + images), d)
        if grown.dim == span.dim:
            return span
        span = grown


def pack(ring, vectors):
    """ Packed codes sum v_i q^i of a batch of coordinate vectors. """
    vectors = np.asarray(vectors, dtype=np.int64)
    weights = ring.order ** np.arange(vectors.shape[-1], dtype=np.int64)
    return (vectors * weights).sum(axis=-1)


def unpack(ring, codes, dim):
    codes = np.asarray(codes, dtype=np.int64)
    weights = ring.order ** np.arange(dim, dtype=np.int64)
    return (codes[..., None] // weights) % ring.order
