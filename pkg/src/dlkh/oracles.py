"""Independent reference computations.

Nothing here uses the state or surface machinery: circles are counted by
union-find on arc labels, the checkerboard form is built from the region
adjacency of the diagram, and signatures are read off floating-point
eigenvalues of small integer matrices.
"""
from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Sequence

import numpy as np

from .diagram import LinkDiagram

Laurent = dict[int, int]

_JOIN = {True: ((0, 1), (2, 3)), False: ((1, 2), (3, 0))}


def count_circles(d: LinkDiagram, markers: Sequence[bool]) -> int:
    """Circles of a complete smoothing, from the PD labels alone."""
    parent = {a: a for c in d.crossings for a in c.slots}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c, m in zip(d.crossings, markers):
        for s, t in _JOIN[bool(m)]:
            parent[find(c.slots[s])] = find(c.slots[t])
    return len({find(a) for a in parent}) + len(d.loops)


def _add(p: dict[int, int], e: int, c: int) -> None:
    p[e] = p.get(e, 0) + c


def _binomial_power(n: int, step: int) -> Laurent:
    """(x^step + x^-step)^n as exponent -> coefficient."""
    out = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for e, c in out.items():
            _add(nxt, e + step, c)
            _add(nxt, e - step, c)
        out = nxt
    return out


def khovanov_euler(d: LinkDiagram, normalize: bool = True) -> Laurent:
    """Graded Euler characteristic of Khovanov homology by a direct state sum.

    Each state contributes (-1)^r q^r (q + 1/q)^c, where r counts negative
    markers and c counts circles; the normalized version multiplies by
    (-1)^n- q^(n+ - 2 n-).
    """
    out: dict[int, int] = {}
    for m in product((True, False), repeat=d.k):
        r = sum(1 for v in m if not v)
        for e, c in _binomial_power(count_circles(d, m), 1).items():
            _add(out, e + r, c * (-1) ** r)
    if normalize:
        shift = d.n_plus - 2 * d.n_minus
        sign = (-1) ** d.n_minus
        out = {e + shift: sign * c for e, c in out.items()}
    return {e: c for e, c in sorted(out.items()) if c}


def kauffman_bracket(d: LinkDiagram) -> Laurent:
    """<D> in the variable A, normalized so that a crossingless circle is 1."""
    out: dict[int, int] = {}
    for m in product((True, False), repeat=d.k):
        a = sum(1 for v in m if v)
        b = d.k - a
        loops = count_circles(d, m) - 1
        for e, c in _binomial_power(loops, 2).items():
            _add(out, e + a - b, c * (-1) ** loops)
    return {e: c for e, c in sorted(out.items()) if c}


def jones_polynomial(d: LinkDiagram) -> dict[float, int]:
    """V(t) as a map from (possibly half-integer) exponent of t to coefficient."""
    w = d.writhe
    out = {}
    for e, c in kauffman_bracket(d).items():
        # (-A^3)^(-w) <D>, then A = t^(-1/4)
        ea = e - 3 * w
        out[-ea / 4] = int(c * (-1) ** w)
    return {e: c for e, c in sorted(out.items()) if c}


# --- checkerboard surfaces -----------------------------------------------------


def is_alternating(d: LinkDiagram) -> bool:
    """Every strand alternates over and under along its length."""
    for strand in d.strands:
        kinds = [d.partner[dart][1] % 2 for dart in strand]
        if len(kinds) > 1 and any(kinds[i] == kinds[i - 1] for i in range(len(kinds))):
            return False
    return True


def checkerboard_goeritz(d: LinkDiagram, marker: bool) -> list[list[int]] | None:
    """Reduced Goeritz matrix of the checkerboard surface selected by ``marker``.

    The surface is made of the faces in corners 0 and 2 of each crossing
    for ``True`` (corners 1 and 3 otherwise).  Its first homology is carried
    by loops around the other faces, which index the matrix; each crossing
    adds weight -1 (``True``) or +1 (``False``) to the Laplacian of the graph
    on those faces.  Returns ``None`` if the corners do not give a
    consistent colouring.
    """
    if not d.k:
        return []
    first = 0 if marker else 1
    shaded, plain = set(), set()
    edges = []
    for p in range(d.k):
        cf = d.corner_face[p]
        shaded.update((cf[first], cf[first + 2]))
        plain.update((cf[1 - first], cf[3 - first]))
        edges.append((cf[1 - first], cf[3 - first]))
    if shaded & plain:
        return None
    regions = sorted(plain)
    idx = {f: i for i, f in enumerate(regions)}
    w = -1 if marker else 1
    n = len(regions)
    G = [[0] * n for _ in range(n)]
    for a, b in edges:
        i, j = idx[a], idx[b]
        if i == j:
            continue
        G[i][j] -= w
        G[j][i] -= w
        G[i][i] += w
        G[j][j] += w
    # one region per split component is redundant
    drop = set()
    comps = defaultdict(list)
    for r in regions:
        comps[_component_of(d, r)].append(idx[r])
    for rs in comps.values():
        drop.add(rs[0])
    keep = [i for i in range(n) if i not in drop]
    return [[G[i][j] for j in keep] for i in keep]


def _component_of(d: LinkDiagram, face: int) -> int:
    p = d.faces[face][0][0]
    return next(i for i, comp in enumerate(d.graph_components) if p in comp)


def float_signature(M: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix from its eigenvalues."""
    if not len(M):
        return 0
    ev = np.linalg.eigvalsh(np.array(M, dtype=float))
    tol = 1e-7 * max(1.0, float(np.max(np.abs(ev))))
    return int(np.sum(ev > tol) - np.sum(ev < -tol))
