# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled orbit kernels; same contract as ``_kernels_py``.

All arithmetic is int64.  Inputs that do not fit raise ``OverflowError``;
intermediates beyond 2**40 stop with status ``OVERFLOW`` so the caller can
redo the point with Python integers.
"""
from libcpp.vector cimport vector
from libcpp.map cimport map as cmap
from libcpp.pair cimport pair
from libc.stdint cimport int64_t

ctypedef pair[int64_t, int64_t] pt_t

OK, OVERFLOW, CAPPED = 0, 1, 2

cdef int64_t LIMIT = (<int64_t>1) << 40


cdef inline int64_t floordiv(int64_t a, int64_t b) nogil:
    # b > 0
    cdef int64_t q = a // b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


cdef inline int64_t iabs(int64_t a) nogil:
    return -a if a < 0 else a


def bfs_orbit(seed, pmat, int max_len, int64_t den_cap):
    cdef int64_t a = pmat[0], b = pmat[1], c = pmat[2], d = pmat[3]
    cdef int64_t det = a * d - b * c
    cdef int64_t g[4][4]
    g[0][:] = [-1, 0, 0, 1]
    g[1][:] = [-1, 2, 0, 1]
    g[2][:] = [a, b, c, d]
    g[3][:] = [det * d, -det * b, -det * c, det * a]
    cdef cmap[pt_t, int] seen
    cdef vector[pt_t] frontier, nxt
    cdef pt_t s0 = pt_t(seed[0], seed[1])
    seen[s0] = 0
    frontier.push_back(s0)
    cdef int depth, k
    cdef size_t i
    cdef int64_t x, y
    cdef pt_t cur, new
    for depth in range(1, max_len + 1):
        nxt.clear()
        for i in range(frontier.size()):
            cur = frontier[i]
            for k in range(4):
                x = g[k][0] * cur.first + g[k][1] * cur.second
                y = g[k][2] * cur.first + g[k][3] * cur.second
                if y < 0:
                    x = -x
                    y = -y
                elif y == 0:
                    x = 1
                new = pt_t(x, y)
                if seen.count(new):
                    continue
                if den_cap > 0 and y > den_cap:
                    continue
                seen[new] = depth
                nxt.push_back(new)
        if nxt.size() == 0:
            break
        frontier.swap(nxt)
    out = {}
    for item in seen:
        out[(item.first.first, item.first.second)] = item.second
    return out


cdef int reduce_one(int64_t n, int64_t e, int64_t q, int64_t p, int64_t qq,
                    int64_t pp, int64_t j, int64_t m, int64_t cap,
                    int64_t* res) nogil:
    cdef int64_t r1n = qq + j * q, r1d = pp + j * p
    cdef int64_t r2n = qq + (j + m) * q, r2d = pp + (j + m) * p
    cdef int64_t t, k, xn, xd, letters = 0, rounds = 0
    if r1d < 0:
        r1n = -r1n
        r1d = -r1d
    if r2d < 0:
        r2n = -r2n
        r2d = -r2d
    while True:
        if e == 0:
            res[0] = 1; res[1] = 0; res[2] = letters; res[3] = rounds
            return 0
        if iabs(n) > LIMIT or e > LIMIT:
            return 1
        t = n - 2 * e * floordiv(n, 2 * e)
        k = (n - t) // (2 * e)
        letters += 2 * iabs(k)
        if t > e:
            t = 2 * e - t
            letters += 1
        n = t
        if n * p == q * e:
            res[0] = n; res[1] = e; res[2] = letters; res[3] = rounds
            return 0
        if r1n * e < n * r1d and n * r2d <= r2n * e:
            rounds += 1
            if rounds > cap:
                res[0] = n; res[1] = e; res[2] = letters; res[3] = rounds
                return 2
            xn = pp * n - qq * e
            xd = q * e - p * n
            if xd < 0:
                xn = -xn
                xd = -xd
            if iabs(xn) > LIMIT or xd > LIMIT:
                return 1
            k = floordiv(xn - j * xd, m * xd)
            xn -= k * m * xd
            letters += iabs(k)
            n = q * xn + qq * xd
            e = p * xn + pp * xd
            if e < 0:
                n = -n
                e = -e
            continue
        res[0] = n; res[1] = e; res[2] = letters; res[3] = rounds
        return 0


cdef inline int64_t bit_length(int64_t x) nogil:
    cdef int64_t k = 0
    while x > 0:
        x >>= 1
        k += 1
    return k


def reduce_point(int64_t n, int64_t e, int64_t q, int64_t p, int64_t qq,
                 int64_t pp, int64_t j, int64_t m, int64_t cap):
    cdef int64_t res[4]
    cdef int status = reduce_one(n, e, q, p, qq, pp, j, m, cap, res)
    if status == 1:
        return n, e, 0, 0, OVERFLOW
    return res[0], res[1], res[2], res[3], status


def reduce_batch(points, int64_t q, int64_t p, int64_t qq, int64_t pp,
                 int64_t j, int64_t m, int64_t cap_base):
    cdef int64_t res[4]
    cdef int64_t n, e, cap
    cdef int status
    out = []
    for n, e in points:
        cap = cap_base + 4 * bit_length(e if e > 1 else 1)
        status = reduce_one(n, e, q, p, qq, pp, j, m, cap, res)
        if status == 1:
            out.append((n, e, 0, 0, OVERFLOW))
        else:
            out.append((res[0], res[1], res[2], res[3], status))
    return out
