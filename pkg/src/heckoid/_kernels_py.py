"""Pure-Python versions of the orbit kernels.

Slopes travel as ``(num, den)`` integer pairs with ``den >= 0`` and infinity
as ``(1, 0)``.  The compiled module ``_kernels`` exposes the same functions;
``heckoid.kernels`` picks one at import.
"""

OK, OVERFLOW, CAPPED = 0, 1, 2


def _act(a, b, c, d, n, e):
    # determinant +-1 keeps the image reduced; only the sign needs fixing
    x, y = a * n + b * e, c * n + d * e
    if y < 0:
        return -x, -y
    if y == 0:
        return 1, 0
    return x, y


def bfs_orbit(seed, pmat, max_len, den_cap):
    """Breadth-first closure of ``seed`` under s -> -s, s -> 2 - s, P, P^-1.

    Points whose denominator exceeds ``den_cap`` are dropped and not expanded
    (``den_cap <= 0`` disables pruning).  Returns ``{point: word_length}``.
    """
    a, b, c, d = pmat
    det = a * d - b * c
    ia, ib, ic, id_ = det * d, -det * b, -det * c, det * a
    gens = ((-1, 0, 0, 1), (-1, 2, 0, 1), (a, b, c, d), (ia, ib, ic, id_))
    seen = {tuple(seed): 0}
    frontier = [tuple(seed)]
    for depth in range(1, max_len + 1):
        nxt = []
        for n, e in frontier:
            for g in gens:
                pt = _act(*g, n, e)
                if pt in seen:
                    continue
                if den_cap > 0 and pt[1] > den_cap:
                    continue
                seen[pt] = depth
                nxt.append(pt)
        if not nxt:
            break
        frontier = nxt
    return seen


def reduce_point(n, e, q, p, qq, pp, j, m, cap):
    """Reduce ``n/e`` into the fundamental set of the group generated by
    s -> 2k +- s and the parabolic fixing ``q/p``.

    ``(pp, qq)`` are the canonical parents and ``j`` the index of the kept
    endpoint ``u_j``; ``u_{j+m}`` is the dropped one.  Returns
    ``(num, den, letters, rounds, status)``.
    """
    # kept endpoint r1 = u_j and dropped endpoint r2 = u_{j+m}, as positive-den pairs
    r1n, r1d = qq + j * q, pp + j * p
    if r1d < 0:
        r1n, r1d = -r1n, -r1d
    r2n, r2d = qq + (j + m) * q, pp + (j + m) * p
    if r2d < 0:
        r2n, r2d = -r2n, -r2d
    letters = 0
    rounds = 0
    while True:
        if e == 0:
            return 1, 0, letters, rounds, OK
        # fold into [0, 1] with translations by 2 and the reflection s -> 2 - s
        t = n % (2 * e)
        k = (n - t) // (2 * e)
        letters += 2 * abs(k)
        if t > e:
            t = 2 * e - t
            letters += 1
        n = t
        if n * p == q * e:
            return n, e, letters, rounds, OK
        # inside (r1, r2]?  (r1 < r < r2 by the indexing convention)
        if r1n * e < n * r1d and n * r2d <= r2n * e:
            rounds += 1
            if rounds > cap:
                return n, e, letters, rounds, CAPPED
            # frame coordinates x = F^-1(s), F = [[q, qq], [p, pp]]
            xn, xd = pp * n - qq * e, q * e - p * n
            if xd < 0:
                xn, xd = -xn, -xd
            k = (xn - j * xd) // (m * xd)
            xn -= k * m * xd
            letters += abs(k)
            n, e = q * xn + qq * xd, p * xn + pp * xd
            if e < 0:
                n, e = -n, -e
            continue
        return n, e, letters, rounds, OK


def reduce_batch(points, q, p, qq, pp, j, m, cap_base):
    out = []
    for n, e in points:
        cap = cap_base + 4 * max(e, 1).bit_length()
        out.append(reduce_point(n, e, q, p, qq, pp, j, m, cap))
    return out
