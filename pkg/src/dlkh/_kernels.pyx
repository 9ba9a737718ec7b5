# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled twins of the loops in ``_pykernels``."""
from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef i64 LIMIT = 1 << 30


cdef inline i64 iabs(i64 v) nogil:
    return -v if v < 0 else v


def diagonalize(const i64[::1] flat, int m, int n):
    """Same contract as the Python version; ``ok`` is false on overflow."""
    cdef i64 *A = <i64 *> malloc(max(m * n, 1) * sizeof(i64))
    cdef int i, j, t, bi, bj
    cdef i64 best, v, p, q, tmp
    cdef bint clean
    diag = []
    if A == NULL:
        raise MemoryError()
    try:
        for i in range(m * n):
            if iabs(flat[i]) > LIMIT:
                return False, []
            A[i] = flat[i]
        for t in range(min(m, n)):
            while True:
                best = 0
                bi = -1
                bj = -1
                for i in range(t, m):
                    for j in range(t, n):
                        v = iabs(A[i * n + j])
                        if v and (best == 0 or v < best):
                            best = v
                            bi = i
                            bj = j
                if best == 0:
                    return True, diag
                if bi != t:
                    for j in range(n):
                        tmp = A[t * n + j]
                        A[t * n + j] = A[bi * n + j]
                        A[bi * n + j] = tmp
                if bj != t:
                    for i in range(m):
                        tmp = A[i * n + t]
                        A[i * n + t] = A[i * n + bj]
                        A[i * n + bj] = tmp
                p = A[t * n + t]
                clean = True
                for i in range(t + 1, m):
                    q = A[i * n + t] // p
                    if q:
                        for j in range(t, n):
                            if A[t * n + j]:
                                A[i * n + j] -= q * A[t * n + j]
                                if iabs(A[i * n + j]) > LIMIT:
                                    return False, []
                    if A[i * n + t]:
                        clean = False
                for j in range(t + 1, n):
                    q = A[t * n + j] // p
                    if q:
                        for i in range(t, m):
                            if A[i * n + t]:
                                A[i * n + j] -= q * A[i * n + t]
                                if iabs(A[i * n + j]) > LIMIT:
                                    return False, []
                    if A[t * n + j]:
                        clean = False
                if clean:
                    diag.append(iabs(p))
                    break
        return True, diag
    finally:
        free(A)


cdef inline int orient(i64 ax, i64 ay, i64 bx, i64 by, i64 cx, i64 cy) nogil:
    cdef i64 v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


cdef inline bint on_box(i64 ax, i64 ay, i64 bx, i64 by, i64 cx, i64 cy) nogil:
    return (min(ax, bx) <= cx <= max(ax, bx)) and (min(ay, by) <= cy <= max(ay, by))


def segment_crossings(const i64[::1] a, int na, const i64[::1] b, int nb):
    cdef int i, j, o1, o2, o3, o4
    cdef i64 ax1, ay1, ax2, ay2, bx1, by1, bx2, by2, lox, hix, loy, hiy
    out = []
    for i in range(na):
        ax1 = a[4 * i]; ay1 = a[4 * i + 1]; ax2 = a[4 * i + 2]; ay2 = a[4 * i + 3]
        lox = min(ax1, ax2); hix = max(ax1, ax2)
        loy = min(ay1, ay2); hiy = max(ay1, ay2)
        for j in range(nb):
            bx1 = b[4 * j]; by1 = b[4 * j + 1]; bx2 = b[4 * j + 2]; by2 = b[4 * j + 3]
            if max(bx1, bx2) < lox or min(bx1, bx2) > hix:
                continue
            if max(by1, by2) < loy or min(by1, by2) > hiy:
                continue
            o1 = orient(ax1, ay1, ax2, ay2, bx1, by1)
            o2 = orient(ax1, ay1, ax2, ay2, bx2, by2)
            o3 = orient(bx1, by1, bx2, by2, ax1, ay1)
            o4 = orient(bx1, by1, bx2, by2, ax2, ay2)
            if o1 * o2 < 0 and o3 * o4 < 0:
                out.append((i, j))
                continue
            if ((o1 == 0 and on_box(ax1, ay1, ax2, ay2, bx1, by1))
                    or (o2 == 0 and on_box(ax1, ay1, ax2, ay2, bx2, by2))
                    or (o3 == 0 and on_box(bx1, by1, bx2, by2, ax1, ay1))
                    or (o4 == 0 and on_box(bx1, by1, bx2, by2, ax2, ay2))):
                return True, out
    return False, out
