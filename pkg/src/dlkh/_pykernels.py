"""Pure-Python versions of the hot loops.

Both functions take flat integer buffers so that the compiled twin in
``_kernels.pyx`` can share the calling convention.
"""
from __future__ import annotations

from typing import Sequence


def diagonalize(flat: Sequence[int], m: int, n: int) -> tuple[bool, list[int]]:
    """Reduce an m x n integer matrix to diagonal form by unimodular moves.

    Returns ``(ok, diagonal)`` where ``diagonal`` holds the absolute values
    of the nonzero pivots.  They need not form a divisibility chain.  The
    Python version never overflows, so ``ok`` is always true.
    """
    A = [list(flat[i * n:(i + 1) * n]) for i in range(m)]
    diag = []
    for t in range(min(m, n)):
        while True:
            best = 0
            bi = bj = -1
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best == 0 or abs(v) < best):
                        best, bi, bj = abs(v), i, j
                        if best == 1:
                            break
                if best == 1:
                    break
            if best == 0:
                return True, diag
            A[t], A[bi] = A[bi], A[t]
            if bj != t:
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
            p = A[t][t]
            clean = True
            pivot_row = A[t]
            for i in range(t + 1, m):
                row = A[i]
                q = row[t] // p
                if q:
                    for j in range(t, n):
                        if pivot_row[j]:
                            row[j] -= q * pivot_row[j]
                if row[t]:
                    clean = False
            for j in range(t + 1, n):
                q = pivot_row[j] // p
                if q:
                    for i in range(t, m):
                        if A[i][t]:
                            A[i][j] -= q * A[i][t]
                if pivot_row[j]:
                    clean = False
            if clean:
                diag.append(abs(p))
                break
    return True, diag


def _orient(ax: int, ay: int, bx: int, by: int, cx: int, cy: int) -> int:
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (v > 0) - (v < 0)


def _on(ax, ay, bx, by, cx, cy) -> bool:
    return min(ax, bx) <= cx <= max(ax, bx) and min(ay, by) <= cy <= max(ay, by)


def segment_crossings(a: Sequence[int], na: int, b: Sequence[int], nb: int
                      ) -> tuple[bool, list[tuple[int, int]]]:
    """Proper crossings between two families of plane segments.

    ``a`` and ``b`` are flat (x1, y1, x2, y2) records.  Returns
    ``(degenerate, pairs)``; ``degenerate`` is set when some pair touches
    without crossing transversally, in which case ``pairs`` is incomplete.
    """
    out = []
    for i in range(na):
        ax1, ay1, ax2, ay2 = a[4 * i:4 * i + 4]
        lox, hix = min(ax1, ax2), max(ax1, ax2)
        loy, hiy = min(ay1, ay2), max(ay1, ay2)
        for j in range(nb):
            bx1, by1, bx2, by2 = b[4 * j:4 * j + 4]
            if max(bx1, bx2) < lox or min(bx1, bx2) > hix:
                continue
            if max(by1, by2) < loy or min(by1, by2) > hiy:
                continue
            o1 = _orient(ax1, ay1, ax2, ay2, bx1, by1)
            o2 = _orient(ax1, ay1, ax2, ay2, bx2, by2)
            o3 = _orient(bx1, by1, bx2, by2, ax1, ay1)
            o4 = _orient(bx1, by1, bx2, by2, ax2, ay2)
            if o1 * o2 < 0 and o3 * o4 < 0:
                out.append((i, j))
                continue
            if ((o1 == 0 and _on(ax1, ay1, ax2, ay2, bx1, by1))
                    or (o2 == 0 and _on(ax1, ay1, ax2, ay2, bx2, by2))
                    or (o3 == 0 and _on(bx1, by1, bx2, by2, ax1, ay1))
                    or (o4 == 0 and _on(bx1, by1, bx2, by2, ax2, ay2))):
                return True, out
    return False, out
