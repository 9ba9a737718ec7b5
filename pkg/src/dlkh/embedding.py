"""An explicit polyhedral embedding of state surfaces, used as an oracle.

The diagram is drawn with straight edges on an integer grid.  Each
crossing becomes a small gadget: a center vertex and four ports, one per
slot.  A circle of the smoothing is then a simple polygon, and its disk is
a prism hanging below the plane, deeper for circles that contain more
circles.  The band at a crossing is the ruled surface between its two
long edges, the over edge rising above the center and the under edge
dropping below it by the height of the band.  Band heights scale with the
size of the crossing gadget so that the twist is spread along the band.

Cycle curves run along bands at a fixed fraction of the band width, drop
down the walls and cross the disk bottoms through a triangulation.  Their
pushoffs are offset along the surface normal, which is carried along the
curve and flips sign when the curve is one-sided.  Linking numbers are
counted in a randomly tilted projection with exact integer arithmetic.
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from . import kernels
from .diagram import Dart, LinkDiagram
from .surface import Cycle, StateSurface, cycle_basis, surface_of_markers

Point2 = tuple[int, int]
Point3 = tuple[int, int, int]
Polyline = list[Point3]

S = 3 * 4096          # grid unit; divisible by everything the routes divide by
EPS = 4               # pushoff distance (sup norm)
FRAC = 64             # band fractions are multiples of 1/FRAC

_PAIR = {True: (1, 0, 3, 2), False: (3, 2, 1, 0)}
_WEIGHTS = [(6, 5, 5), (5, 6, 5), (5, 5, 6), (7, 5, 4), (4, 7, 5), (5, 4, 7),
            (7, 4, 5), (4, 5, 7), (5, 7, 4), (6, 6, 4), (4, 6, 6), (6, 4, 6)]


class EmbeddingError(RuntimeError):
    pass


# --- plane drawing --------------------------------------------------------


@dataclass
class Drawing:
    diagram: LinkDiagram = field(repr=False)
    center: list[Point2]
    port: dict[Dart, Point2]
    path: dict[Dart, list[Point2]]   # port(dart) ... port(partner), inclusive
    outer: tuple[int, ...]           # unbounded face of each split component
    height: list[int]                # band height at each crossing

    @property
    def step(self) -> int:
        """Depth step between nested disks, below every band."""
        return max(self.height, default=0) + S


def _cross(o: Point2, a: Point2, b: Point2) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _area2(poly: Sequence[Point2]) -> int:
    return sum(poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
               for i in range(len(poly)))


def _arc_key(d: LinkDiagram, dart: Dart) -> Dart:
    return min(dart, d.partner[dart])


def _tutte(data: dict[int, list[int]], grid: int) -> dict[int, Point2]:
    """Barycentric layout of a planar rotation system, rounded to a grid.

    Every face except the largest gets an extra vertex joined to its
    corners, the largest face is pinned to a circle, and each free vertex
    sits at the average of its neighbours.  Crossing centers therefore
    land in the middle of their ports, which keeps the gadgets fat.
    """
    emb = nx.PlanarEmbedding()
    emb.set_data(data)
    emb.check_structure()
    seen: set[tuple[int, int]] = set()
    faces = []
    for v in sorted(data):
        for w in data[v]:
            if (v, w) not in seen:
                faces.append(emb.traverse_face(v, w, mark_half_edges=seen))
    outer = max(faces, key=lambda f: (len(f), sorted(f)))
    nbrs = {v: list(ws) for v, ws in data.items()}
    extra = max(data) + 1
    for f in faces:
        if f is outer or len(f) == 3:
            continue
        nbrs[extra] = list(f)
        for v in f:
            nbrs[v].append(extra)
        extra += 1
    fixed = {}
    for i, v in enumerate(outer):
        ang = 2 * math.pi * i / len(outer)
        fixed[v] = (math.cos(ang), math.sin(ang))
    free = [v for v in nbrs if v not in fixed]
    index = {v: i for i, v in enumerate(free)}
    A = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for v in free:
        i = index[v]
        A[i, i] = len(nbrs[v])
        for w in nbrs[v]:
            if w in fixed:
                rhs[i] += fixed[w]
            else:
                A[i, index[w]] -= 1
    sol = np.linalg.solve(A, rhs) if free else rhs
    pos = {}
    for v in data:
        x, y = fixed[v] if v in fixed else sol[index[v]]
        pos[v] = (int(round(x * grid)), int(round(y * grid)))
    return pos


def draw(d: LinkDiagram) -> Drawing:
    """Straight-line grid drawing realizing the rotation system of ``d``."""
    if d.genus != 0:
        raise EmbeddingError("only spherical diagrams can be drawn")
    cache = d.__dict__.get("_drawing")
    if cache is not None:
        return cache
    grid = 32
    while True:
        try:
            out = _draw(d, grid)
            _check_planar(out)
            break
        except EmbeddingError:
            grid *= 2
            if grid > 1 << 14:
                raise
    d.__dict__["_drawing"] = out
    return out


def _draw(d: LinkDiagram, grid: int) -> Drawing:
    def port(dart):
        return ("c",) + tuple(dart)

    def arc_node(dart):
        key = _arc_key(d, dart)
        return ("a", key, 0 if dart == key else 1)

    center: list[Point2] = [(0, 0)] * d.k
    ports: dict[Dart, Point2] = {}
    sub: dict[tuple, Point2] = {}
    shift = 0
    for comp in d.graph_components:
        data: dict[tuple, list[tuple]] = {}
        for p in comp:
            v = ("v", p)
            data[v] = [port((p, s)) for s in (3, 2, 1, 0)]  # clockwise
            for s in range(4):
                ccw = [arc_node((p, s)), port((p, (s + 1) % 4)), v, port((p, (s - 1) % 4))]
                data[port((p, s))] = ccw[::-1]
                key = _arc_key(d, (p, s))
                if key == (p, s):
                    other = d.partner[key]
                    data[("a", key, 0)] = [port(key), ("a", key, 1)]
                    data[("a", key, 1)] = [("a", key, 0), port(other)]
        # integer node names keep the layout independent of string hashing
        names = sorted(data)
        num = {v: i for i, v in enumerate(names)}
        raw = _tutte({num[v]: [num[w] for w in nb] for v, nb in data.items()}, grid)
        pos = {names[i]: xy for i, xy in raw.items()}
        p0 = comp[0]
        quad = [pos[port((p0, s))] for s in range(4)]
        flip = -1 if _area2(quad) < 0 else 1
        xs = [flip * x for x, _ in pos.values()]
        lo, hi = min(xs), max(xs)
        for node, (x, y) in pos.items():
            q = ((flip * x - lo + shift) * S, y * S)
            if node[0] == "v":
                center[node[1]] = q
            elif node[0] == "c":
                ports[(node[1], node[2])] = q
            else:
                sub[node] = q
        shift += hi - lo + 2

    path: dict[Dart, list[Point2]] = {}
    for dart in d.partner:
        key = _arc_key(d, dart)
        mid = [sub[("a", key, 0)], sub[("a", key, 1)]]
        seq = [ports[key]] + mid + [ports[d.partner[key]]]
        path[dart] = seq if dart == key else seq[::-1]

    for p in range(d.k):
        if _area2([ports[(p, s)] for s in range(4)]) <= 0:
            raise EmbeddingError(f"crossing {p + 1} drawn with the wrong orientation")

    outer = []
    for comp in d.graph_components:
        cs = set(comp)
        found = None
        for f, cyc in enumerate(d.faces):
            if cyc[0][0] not in cs:
                continue
            poly = []
            for dart in cyc:
                poly += path[dart]
                poly.append(center[d.partner[dart][0]])
            if _area2(poly) < 0:
                found = f
        if found is None:
            raise EmbeddingError("no unbounded face found")
        outer.append(found)
    height = []
    for p in range(d.k):
        span = max(abs(ports[(p, s)][i] - ports[(p, (s + 1) % 4)][i])
                   for s in range(4) for i in range(2))
        height.append(S * max(1, -(-span // S)))
    return Drawing(d, center, ports, path, tuple(outer), height)


def _check_planar(D: Drawing) -> None:
    d = D.diagram
    nodes = list(D.center) + list(D.port.values())
    nodes += [q for dart, pts in D.path.items() if dart == _arc_key(d, dart) for q in pts[1:-1]]
    if len(set(nodes)) != len(nodes):
        raise EmbeddingError("drawing merges vertices")
    segs = []
    for dart, pts in D.path.items():
        if dart == _arc_key(d, dart):
            segs += list(zip(pts, pts[1:]))
    for p in range(d.k):
        c = [D.port[(p, s)] for s in range(4)]
        segs += [(D.center[p], c[s]) for s in range(4)]
        segs += [(c[s], c[(s + 1) % 4]) for s in range(4)]
    for i in range(len(segs)):
        a, b = segs[i]
        for j in range(i):
            u, v = segs[j]
            shared = {a, b} & {u, v}
            o1, o2 = _cross(a, b, u), _cross(a, b, v)
            o3, o4 = _cross(u, v, a), _cross(u, v, b)
            if o1 * o2 < 0 and o3 * o4 < 0:
                raise EmbeddingError("drawing is not planar")
            if not shared and 0 in (o1, o2, o3, o4):
                for (s, t), r, o in (((a, b), u, o1), ((a, b), v, o2), ((u, v), a, o3), ((u, v), b, o4)):
                    if o == 0 and min(s[0], t[0]) <= r[0] <= max(s[0], t[0]) \
                            and min(s[1], t[1]) <= r[1] <= max(s[1], t[1]):
                        raise EmbeddingError("drawing has touching edges")


# --- polygons --------------------------------------------------------------


def _inside(pt: Point2, poly: Sequence[Point2]) -> bool:
    """Even-odd test; ``pt`` must not lie on the boundary."""
    x, y = pt
    inside = False
    n = len(poly)
    for i in range(n):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            # x coordinate of the edge at height y, compared exactly
            lhs = (x - x1) * (y2 - y1)
            rhs = (x2 - x1) * (y - y1)
            if (lhs < rhs) == (y2 > y1):
                inside = not inside
    return inside


def _on_segment(p: Point2, a: Point2, b: Point2) -> bool:
    return _cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def triangulate(poly: Sequence[Point2]) -> list[tuple[Point2, Point2, Point2]]:
    """Ear clipping of a simple polygon with integer vertices."""
    pts = list(poly)
    if _area2(pts) < 0:
        pts.reverse()
    # drop straight-through vertices, they make degenerate ears
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if _cross(a, b, c) == 0:
                del pts[i]
                changed = True
                break
    tris = []
    while len(pts) > 3:
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if _cross(a, b, c) <= 0:
                continue
            blocked = False
            for q in pts:
                if q in (a, b, c):
                    continue
                if _cross(a, b, q) >= 0 and _cross(b, c, q) >= 0 and _cross(c, a, q) >= 0:
                    blocked = True
                    break
            if not blocked:
                tris.append((a, b, c))
                del pts[i]
                break
        else:
            raise EmbeddingError("ear clipping stalled")
    tris.append(tuple(pts))
    return tris


@dataclass
class _Facet:
    poly: list[Point2]
    depth: int
    tris: list[tuple[Point2, Point2, Point2]]
    adj: dict[int, list[int]]


def _facet(poly: list[Point2], depth: int) -> _Facet:
    tris = triangulate(poly)
    adj: dict[int, list[int]] = {i: [] for i in range(len(tris))}
    for i in range(len(tris)):
        for j in range(i):
            if len(set(tris[i]) & set(tris[j])) == 2:
                adj[i].append(j)
                adj[j].append(i)
    return _Facet(poly, depth, tris, adj)


# --- surface geometry --------------------------------------------------------


def _lift(p: Point2, z: int) -> Point3:
    return (p[0], p[1], z)


def _exact(v: Sequence[Fraction]) -> Point3:
    out = []
    for c in v:
        if c.denominator != 1:
            raise EmbeddingError("grid is too coarse for an exact route")
        out.append(int(c))
    return tuple(out)


@dataclass
class Geometry:
    drawing: Drawing = field(repr=False)
    markers: tuple[bool, ...]
    surface: StateSurface = field(repr=False)
    facets: list[_Facet] = field(repr=False)

    def under_slot(self, p: int, end: int) -> int:
        return _PAIR[self.markers[p]][1 if end == 0 else 3]

    def edges(self, p: int) -> tuple[list[tuple[Fraction, ...]], list[tuple[Fraction, ...]]]:
        """Control points (start, middle, end) of the over and under edges."""
        D = self.drawing
        V = D.center[p]
        c = [D.port[(p, s)] for s in range(4)]
        a, b = self.under_slot(p, 0), self.under_slot(p, 1)
        F = Fraction
        over = [(F(c[1][0]), F(c[1][1]), F(0)), (F(V[0]), F(V[1]), F(D.height[p])),
                (F(c[3][0]), F(c[3][1]), F(0))]
        under = [(F(c[a][0]), F(c[a][1]), F(0)), (F(V[0]), F(V[1]), F(-D.height[p])),
                 (F(c[b][0]), F(c[b][1]), F(0))]
        return over, under


def _edge_at(ctrl, tau: Fraction) -> tuple[Fraction, ...]:
    if tau <= Fraction(1, 2):
        u = 2 * tau
        return tuple((1 - u) * x + u * y for x, y in zip(ctrl[0], ctrl[1]))
    u = 2 * tau - 1
    return tuple((1 - u) * x + u * y for x, y in zip(ctrl[1], ctrl[2]))


def _edge_speed(ctrl, tau: Fraction) -> tuple[Fraction, ...]:
    if tau < Fraction(1, 2):
        return tuple(2 * (y - x) for x, y in zip(ctrl[0], ctrl[1]))
    return tuple(2 * (y - x) for x, y in zip(ctrl[1], ctrl[2]))


def geometry(F: StateSurface) -> Geometry:
    d = F.smoothing.diagram
    D = draw(d)
    circles = F.smoothing.circles
    polys: list[list[Point2] | None] = []
    for c in circles:
        if not c.darts:
            polys.append(None)
            continue
        poly: list[Point2] = []
        for dart in c.darts:
            poly += D.path[dart]
        polys.append(poly)
    facets = []
    for i, poly in enumerate(polys):
        if poly is None:
            facets.append(None)
            continue
        inner = sum(1 for j, q in enumerate(polys)
                    if j != i and q is not None and _inside(q[0], poly))
        facets.append(_facet(poly, D.step * (1 + inner)))
    return Geometry(D, F.markers, F, facets)


# --- curves with normal data ----------------------------------------------


@dataclass
class _Pt:
    at: Point3
    crease: bool
    vec: tuple[float, float, float]   # normal, or crease direction


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _unit(v):
    n = math.sqrt(_dot(v, v))
    if n == 0:
        raise EmbeddingError("zero normal")
    return tuple(x / n for x in v)


def _band_points(G: Geometry, p: int, x: Fraction, start_end: int) -> list[_Pt]:
    over, under = G.edges(p)
    taus = [Fraction(i, 32) for i in range(33)]
    if start_end == 1:
        taus.reverse()
    out = []
    for tau in taus:
        eo, eu = _edge_at(over, tau), _edge_at(under, tau)
        pt = _exact([(1 - x) * a + x * b for a, b in zip(eo, eu)])
        across = tuple(float(b - a) for a, b in zip(eo, eu))
        if tau in (0, 1, Fraction(1, 2)):
            out.append(_Pt(pt, True, across))
        else:
            so, su = _edge_speed(over, tau), _edge_speed(under, tau)
            along = tuple(float((1 - x) * a + x * b) for a, b in zip(so, su))
            out.append(_Pt(pt, False, _cross3(along, across)))
    return out


def _route(G: Geometry, facet: int, a: Point2, b: Point2, tag: int) -> list[Point2]:
    """Interior path across a facet bottom from boundary point ``a`` to ``b``."""
    f = G.facets[facet]

    def holder(pt):
        for i, t in enumerate(f.tris):
            if any(_on_segment(pt, t[j], t[(j + 1) % 3]) for j in range(3)):
                return i
        raise EmbeddingError("boundary point not on any triangle")

    s, t = holder(a), holder(b)
    prev = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in f.adj[u]:
            if v not in prev:
                prev[v] = u
                queue.append(v)
    chain = [t]
    while prev[chain[-1]] is not None:
        chain.append(prev[chain[-1]])
    chain.reverse()
    w = _WEIGHTS[tag % len(_WEIGHTS)]
    frac = Fraction(5 + tag % 7, 16)
    out = []
    for k, ti in enumerate(chain):
        tri = f.tris[ti]
        out.append(tuple(sum(Fraction(wi, 16) * v[c] for wi, v in zip(w, tri)) for c in range(2)))
        if k + 1 < len(chain):
            u, v = sorted(set(tri) & set(f.tris[chain[k + 1]]))
            out.append(tuple(u[c] + frac * (v[c] - u[c]) for c in range(2)))
    return [_exact(q) for q in out]


def curve(G: Geometry, cyc: Cycle, x: Fraction, tag: int) -> list[_Pt]:
    """Polyline of a basis cycle at band fraction ``x``."""
    F = G.surface
    pts: list[_Pt] = []
    visits: dict[int, int] = {}
    m = len(cyc)
    for j in range(m):
        p, fwd = cyc[j]
        band = _band_points(G, p, x, 0 if fwd else 1)
        pts += band
        leave_end = 1 if fwd else 0
        q, fq = cyc[(j + 1) % m]
        enter_end = 0 if fq else 1
        facet = F.bands[p].ends[leave_end][0]
        if F.bands[q].ends[enter_end][0] != facet:
            raise EmbeddingError("cycle steps do not meet on a facet")
        depth = -G.facets[facet].depth
        P = band[-1].at
        Q = _band_points(G, q, x, enter_end)[0].at
        seg_p = band[-1].vec
        seg_q = _band_points(G, q, x, enter_end)[0].vec
        k = visits.get(facet, 0)
        visits[facet] = k + 1
        pts.append(_Pt((P[0], P[1], depth), True, seg_p))
        for r in _route(G, facet, P[:2], Q[:2], 5 * tag + k):
            pts.append(_Pt((r[0], r[1], depth), False, (0.0, 0.0, 1.0)))
        pts.append(_Pt((Q[0], Q[1], depth), True, seg_q))
    return pts


def _offset(v, eps: int = EPS) -> Point3:
    big = max(abs(c) for c in v)
    return tuple(int(round(c * eps / big)) for c in v)


def pushoff(pts: list[_Pt], eps: int = EPS) -> list[Polyline]:
    """Double pushoff along the surface normal: two curves, or one if one-sided."""
    start = next(i for i, p in enumerate(pts) if not p.crease)
    pts = pts[start:] + pts[:start]
    n = len(pts)
    offs = []
    cur = _unit(pts[0].vec)
    first = cur
    for i, p in enumerate(pts):
        if not p.crease:
            nv = _unit(p.vec)
            if _dot(nv, cur) < 0:
                nv = tuple(-c for c in nv)
            if i and _dot(nv, cur) < 0.2:
                raise EmbeddingError("normal turns too fast between samples")
            offs.append(_offset(nv, eps))
            cur = nv
        else:
            t_in = _sub(p.at, pts[i - 1].at)
            t_out = _sub(pts[(i + 1) % n].at, p.at)
            n1 = _unit(_cross3(t_in, p.vec))
            s = 1 if _dot(n1, cur) > 0 else -1
            if abs(_dot(n1, cur)) < 0.2:
                raise EmbeddingError("crease rule is ambiguous")
            n1 = tuple(s * c for c in n1)
            n2 = tuple(s * c for c in _unit(_cross3(t_out, p.vec)))
            offs.append(_offset(tuple(a + b for a, b in zip(n1, n2)), eps))
            cur = n2
    plus = [tuple(a + b for a, b in zip(p.at, o)) for p, o in zip(pts, offs)]
    minus = [tuple(a - b for a, b in zip(p.at, o)) for p, o in zip(pts, offs)]
    if _dot(cur, first) > 0:
        return [plus, minus]
    return [plus + minus]


# --- linking numbers ---------------------------------------------------------


def _segments(curves: Sequence[Polyline]) -> list[tuple[Point3, Point3]]:
    out = []
    for c in curves:
        for i in range(len(c)):
            a, b = c[i], c[(i + 1) % len(c)]
            if a != b:
                out.append((a, b))
    return out


def linking_number(a: Polyline | Sequence[Polyline], b: Polyline | Sequence[Polyline],
                   seed: int = 0, tries: int = 25) -> int:
    """Signed crossings of ``a`` over ``b`` in a generic projection.

    ``a`` and ``b`` are closed polylines (or lists of them) with integer
    coordinates.  Degenerate projections are retried with a new tilt.
    """
    if a and isinstance(a[0][0], int):
        a = [a]
    if b and isinstance(b[0][0], int):
        b = [b]
    sa, sb = _segments(a), _segments(b)
    rng = random.Random(seed)
    for _ in range(tries):
        w = rng.randint(5, 9)
        u, v = rng.randint(-7, 7), rng.randint(-7, 7)

        def proj(pt):
            return (w * pt[0] - u * pt[2], w * pt[1] - v * pt[2])

        pa = [proj(s) + proj(t) for s, t in sa]
        pb = [proj(s) + proj(t) for s, t in sb]
        deg, pairs = kernels.crossings([c for r in pa for c in r], [c for r in pb for c in r])
        if deg:
            continue
        ab = ba = 0
        for i, j in pairs:
            (P1, P2), (Q1, Q2) = sa[i], sb[j]
            a1, a2 = pa[i][:2], pa[i][2:]
            b1, b2 = pb[j][:2], pb[j][2:]
            da = (a2[0] - a1[0], a2[1] - a1[1])
            db = (b2[0] - b1[0], b2[1] - b1[1])
            den = da[0] * db[1] - da[1] * db[0]
            w0 = (b1[0] - a1[0], b1[1] - a1[1])
            s_num = w0[0] * db[1] - w0[1] * db[0]
            t_num = w0[0] * da[1] - w0[1] * da[0]
            za = P1[2] * den + s_num * (P2[2] - P1[2])
            zb = Q1[2] * den + t_num * (Q2[2] - Q1[2])
            if za == zb:
                raise EmbeddingError("curves meet in space")
            a_over = (za > zb) == (den > 0)
            sign = 1 if den > 0 else -1
            if a_over:
                ab += sign
            else:
                ba -= sign
        if ab != ba:
            raise EmbeddingError("inconsistent crossing count; curves are not closed")
        return ab
    raise EmbeddingError("no generic projection found")


# --- public oracle ---------------------------------------------------------


@dataclass
class EmbeddedCurves:
    curves: list[Polyline]
    pushoffs: list[list[Polyline]]
    fractions: list[Fraction]


def _fraction(i: int) -> Fraction:
    num = 2 + 6 * i
    if num >= FRAC:
        raise EmbeddingError("too many basis curves for the band grid")
    return Fraction(num, FRAC)


def aligned_surface(d: LinkDiagram, markers: Sequence[bool]) -> StateSurface:
    """State surface whose inside data uses the drawing's unbounded faces."""
    return surface_of_markers(d, markers, draw(d).outer)


def embed(F: StateSurface, basis: Sequence[Cycle] | None = None) -> EmbeddedCurves:
    if basis is None:
        basis = cycle_basis(F)
    G = geometry(F)
    curves, offs, fr = [], [], []
    for i, cyc in enumerate(basis):
        x = _fraction(i)
        pts = curve(G, cyc, x, i)
        curves.append([p.at for p in pts])
        offs.append(pushoff(pts))
        fr.append(x)
    return EmbeddedCurves(curves, offs, fr)


def oracle_goeritz(F: StateSurface, basis: Sequence[Cycle] | None = None
                   ) -> list[list[int]]:
    """Matrix of lk(a_i, tau a_j) measured on the explicit embedding."""
    if basis is None:
        basis = cycle_basis(F)
    E = embed(F, basis)
    n = len(basis)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            M[i][j] = linking_number(E.curves[i], E.pushoffs[j], seed=31 * i + j)
    return M


def boundary(F: StateSurface) -> tuple[list[Polyline], list[Polyline]]:
    """The link bounding ``F`` and a parallel copy drawn on ``F``.

    The copy runs along each band at a small fraction of its width from the
    boundary edge, and along each arc on the disk wall just below it.  On a
    half band such a curve is a straight segment, so both polylines are exact.
    """
    d = F.smoothing.diagram
    G = geometry(F)
    D = G.drawing
    x = Fraction(1, FRAC)
    low = -(S // FRAC)
    L, Lp = [], []
    for strand in d.strands:
        pts: list[Point3] = []
        par: list[Point3] = []
        for dart in strand:
            p, s = dart
            q, t = d.partner[dart]
            path = D.path[dart]
            r0, r1 = path[0], path[-1]
            o0 = D.port[(p, _PAIR[F.markers[p]][s])]
            o1 = D.port[(q, _PAIR[F.markers[q]][t])]
            e0 = _exact([c + x * (o - c) for c, o in zip(r0, o0)])
            e1 = _exact([c + x * (o - c) for c, o in zip(r1, o1)])
            pts += [_lift(r, 0) for r in path]
            par += [_lift(e0, 0), _lift(e0, low)] + [_lift(r, low) for r in path]
            par += [_lift(e1, low), _lift(e1, 0)]
            over, under = G.edges(q)
            mine, other = (over, under) if t in (1, 3) else (under, over)
            pts.append(_exact(mine[1]))
            par.append(_exact([(1 - x) * a + x * b for a, b in zip(mine[1], other[1])]))
        L.append(pts)
        Lp.append(par)
    return L, Lp


def boundary_slope(F: StateSurface) -> int:
    """lk of the boundary link with its surface-framed pushoff."""
    if not F.smoothing.diagram.k:
        return 0
    L, Lp = boundary(F)
    return linking_number(L, Lp)
