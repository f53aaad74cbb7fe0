"""Pure-Python sparse polynomial kernels.

Polynomials are dicts mapping a packed exponent key to a nonzero int.
Each variable owns one byte of the key; bit 7 of every byte is a guard
that must stay clear, so single exponents are capped at 127.
"""

import heapq

GUARD = 0x8080808080808080
NBYTES = 8


def degree(key):
    return sum(key.to_bytes(NBYTES, "little"))


def _maxbytes(p):
    top = [0] * NBYTES
    for k in p:
        for i, b in enumerate(k.to_bytes(NBYTES, "little")):
            if b > top[i]:
                top[i] = b
    return top


def mul(a, b):
    """Product of two sparse polynomials."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    ta, tb = _maxbytes(a), _maxbytes(b)
    if any(x + y > 127 for x, y in zip(ta, tb)):
        raise OverflowError("exponent exceeds 127 in polynomial product")
    out = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def divexact(a, b):
    """Return a/b if b divides a exactly over the integers, else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    lb = max(b, key=lambda k: (degree(k), k))
    cb = b[lb]
    rest = [(k, c) for k, c in b.items() if k != lb]
    r = dict(a)
    heap = [(-degree(k), -k) for k in r]
    heapq.heapify(heap)
    q = {}
    dlb = degree(lb)
    while r:
        while True:
            nd, nk = heapq.heappop(heap)
            k = -nk
            if k in r:
                break
        if ((k | GUARD) - lb) & GUARD != GUARD:
            return None
        c, rem = divmod(r.pop(k), cb)
        if rem:
            return None
        m = k - lb
        q[m] = c
        dm = -nd - dlb
        for kb, v in rest:
            kk = kb + m
            nv = r.get(kk, 0) - c * v
            if nv:
                if kk not in r:
                    heapq.heappush(heap, (-(degree(kb) + dm), -kk))
                r[kk] = nv
            else:
                r.pop(kk, None)
    return q
