# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels.

Same contract as the pure-Python module.  Coefficients that fit in 64 bits
take a native path with overflow checks; anything else falls back to
arbitrary-precision Python integers.
"""

from libc.stdint cimport uint64_t, int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.map cimport map as cmap
from cython.operator cimport dereference as deref, preincrement as inc, predecrement as dec

cdef extern from *:
    """
    static inline int osp_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int osp_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int osp_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int osp_popdeg(unsigned long long k) {
        int s = 0;
        for (int i = 0; i < 8; ++i) { s += (int)((k >> (8 * i)) & 0xFF); }
        return s;
    }
    """
    int osp_mul_ovf(long long a, long long b, long long *r) nogil
    int osp_add_ovf(long long a, long long b, long long *r) nogil
    int osp_sub_ovf(long long a, long long b, long long *r) nogil
    int osp_popdeg(unsigned long long k) nogil

cdef uint64_t GUARD = 0x8080808080808080ULL
cdef object PY_LO = -(1 << 62)
cdef object PY_HI = 1 << 62


cdef bint _load(dict p, vector[uint64_t]& keys, vector[long long]& coeffs):
    """Copy p into C vectors; False if a coefficient is too large."""
    keys.reserve(len(p))
    coeffs.reserve(len(p))
    for k, c in p.items():
        if c < PY_LO or c > PY_HI:
            return False
        keys.push_back(<uint64_t>k)
        coeffs.push_back(<long long>c)
    return True


def degree(key):
    return osp_popdeg(<uint64_t>key)


cdef dict _mul_object(dict a, dict b):
    cdef dict out = {}
    cdef uint64_t ka, kb, s
    bitems = list(b.items())
    for pka, ca in a.items():
        ka = <uint64_t>pka
        for pkb, cb in bitems:
            kb = <uint64_t>pkb
            s = ka + kb
            if s & GUARD:
                raise OverflowError("exponent exceeds 127 in polynomial product")
            ps = s
            v = out.get(ps, 0) + ca * cb
            out[ps] = v
    return {k: c for k, c in out.items() if c}


def mul(dict a, dict b):
    """Product of two sparse polynomials."""
    if not a or not b:
        return {}
    cdef vector[uint64_t] ak, bk
    cdef vector[long long] ac, bc
    if not (_load(a, ak, ac) and _load(b, bk, bc)):
        return _mul_object(a, b)
    cdef unordered_map[uint64_t, long long] acc
    acc.reserve(ak.size() * bk.size())
    cdef size_t i, j
    cdef uint64_t s
    cdef long long prod, tot
    cdef bint bad = False
    for i in range(ak.size()):
        for j in range(bk.size()):
            s = ak[i] + bk[j]
            if s & GUARD:
                raise OverflowError("exponent exceeds 127 in polynomial product")
            if osp_mul_ovf(ac[i], bc[j], &prod):
                bad = True
                break
            tot = acc[s]
            if osp_add_ovf(tot, prod, &tot):
                bad = True
                break
            acc[s] = tot
        if bad:
            break
    if bad:
        return _mul_object(a, b)
    cdef dict out = {}
    cdef unordered_map[uint64_t, long long].iterator it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[deref(it).first] = deref(it).second
        inc(it)
    return out


ctypedef pair[int, uint64_t] gkey


def divexact(dict a, dict b):
    """Return a/b if b divides a exactly over the integers, else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    cdef vector[uint64_t] ak, bk
    cdef vector[long long] ac, bc
    if not (_load(a, ak, ac) and _load(b, bk, bc)):
        return _divexact_object(a, b)
    cdef size_t i, lbi = 0
    cdef int dbest = -1, d
    for i in range(bk.size()):
        d = osp_popdeg(bk[i])
        if d > dbest or (d == dbest and bk[i] > bk[lbi]):
            dbest = d
            lbi = i
    cdef uint64_t lb = bk[lbi]
    cdef long long cb = bc[lbi]
    cdef cmap[gkey, long long] r
    for i in range(ak.size()):
        r[gkey(osp_popdeg(ak[i]), ak[i])] = ac[i]
    cdef dict q = {}
    cdef cmap[gkey, long long].iterator top
    cdef uint64_t k, m, kk
    cdef long long c, v, prod, nv
    cdef gkey g
    while not r.empty():
        top = r.end()
        dec(top)
        k = deref(top).first.second
        v = deref(top).second
        r.erase(top)
        if ((k | GUARD) - lb) & GUARD != GUARD:
            return None
        if v % cb != 0:
            return None
        c = v // cb
        m = k - lb
        q[m] = c
        for i in range(bk.size()):
            if i == lbi:
                continue
            kk = bk[i] + m
            if osp_mul_ovf(c, bc[i], &prod):
                return _divexact_object(a, b)
            g = gkey(osp_popdeg(kk), kk)
            nv = r[g]
            if osp_sub_ovf(nv, prod, &nv):
                return _divexact_object(a, b)
            if nv == 0:
                r.erase(g)
            else:
                r[g] = nv
    return q


cdef object _divexact_object(dict a, dict b):
    from ._pykernel import divexact as pydiv
    return pydiv(a, b)
