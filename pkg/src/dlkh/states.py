"""Kauffman states, their circles, and Viro's local differential.

A marker ``True`` (positive) pairs slots (0,1) and (2,3) of a crossing; a
marker ``False`` (negative) pairs (1,2) and (3,0).  Crossing indices in the
public functions are 1-based, as in the PD record.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .diagram import Dart, LinkDiagram

Markers = tuple[bool, ...]

_PAIR = {True: (1, 0, 3, 2), False: (3, 2, 1, 0)}


@dataclass(frozen=True)
class Site:
    """Where a circle runs along one smoothing arc of a crossing."""

    crossing: int  # 0-based position
    enter: int
    leave: int

    @property
    def end(self) -> int:
        # end 0 of a band is the smoothing arc touching slot 1
        return 0 if 1 in (self.enter, self.leave) else 1

    @property
    def band_left(self) -> bool:
        return self.leave == (self.enter + 1) % 4

    @property
    def over_slot(self) -> int:
        return self.enter if self.enter in (1, 3) else self.leave


@dataclass(frozen=True)
class Circle:
    darts: tuple[Dart, ...]  # site i is traversed right after darts[i]
    sites: tuple[Site, ...]
    arcs: frozenset[int]
    inside_left: bool
    parent: int | None = None

    @property
    def key(self) -> int:
        return min(self.arcs)


@dataclass(frozen=True)
class CompleteSmoothing:
    diagram: LinkDiagram = field(repr=False, compare=False)
    markers: Markers
    circles: tuple[Circle, ...]

    @property
    def site_index(self) -> dict[tuple[int, int], tuple[int, int]]:
        """(crossing, band end) -> (circle, position in that circle's sites)."""
        out = {}
        for ci, c in enumerate(self.circles):
            for j, s in enumerate(c.sites):
                out[(s.crossing, s.end)] = (ci, j)
        return out

    def circle_with_arc(self, arc: int) -> int:
        for i, c in enumerate(self.circles):
            if arc in c.arcs:
                return i
        raise KeyError(arc)


def enumerate_states(d: LinkDiagram) -> list[Markers]:
    """All marker vectors, all-positive first, in lexicographic order."""
    return [tuple(m) for m in itertools.product((True, False), repeat=d.k)]


def _cache(d: LinkDiagram) -> dict:
    c = d.__dict__.get("_smoothing_cache")
    if c is None:
        c = {}
        d.__dict__["_smoothing_cache"] = c
    return c


def resolve(d: LinkDiagram, m: Sequence[bool],
            infinity: int | tuple[int, ...] = 0) -> CompleteSmoothing:
    """Smooth every crossing of ``d`` according to ``m``.

    ``infinity`` names the face of ``d`` treated as the outside when
    deciding which side of each circle is its inside.  A tuple names one
    face per split component; components without one use their first face.
    """
    m = tuple(bool(v) for v in m)
    if len(m) != d.k:
        raise ValueError(f"expected {d.k} markers, got {len(m)}")
    cache = _cache(d)
    key = (m, infinity)
    if key not in cache:
        cache[key] = _resolve(d, m, infinity)
    return cache[key]


def _resolve(d: LinkDiagram, m: Markers, infinity: int | tuple[int, ...]) -> CompleteSmoothing:
    raw = []
    seen: set[Dart] = set()
    for p in range(d.k):
        for s in range(4):
            if (p, s) in seen:
                continue
            darts, sites = [], []
            dart = (p, s)
            while dart not in seen:
                seen.add(dart)
                seen.add(d.partner[dart])
                darts.append(dart)
                q, t = d.partner[dart]
                t2 = _PAIR[m[q]][t]
                sites.append(Site(q, t, t2))
                dart = (q, t2)
            raw.append((darts, sites))

    # regions: faces glued through the open channel at each crossing
    nf = len(d.faces)
    nloop = len(d.loops)
    parent = list(range(nf + nloop + 1))
    sea = nf + nloop

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for p in range(d.k):
        cf = d.corner_face[p]
        if m[p]:
            union(cf[1], cf[3])
        else:
            union(cf[0], cf[2])
    wanted = (infinity,) if isinstance(infinity, int) else tuple(infinity)
    for comp in d.graph_components:
        cs = set(comp)
        faces = [f for f, cyc in enumerate(d.faces) if cyc[0][0] in cs]
        inf = next((f for f in wanted if f in faces), faces[0])
        union(inf, sea)

    sides = []  # (left region, right region) per circle
    for darts, _ in raw:
        left = {find(d.face_of[x]) for x in darts}
        right = {find(d.face_of[d.partner[x]]) for x in darts}
        assert len(left) == 1 and len(right) == 1 and left != right
        sides.append((left.pop(), right.pop()))
    for j, host in enumerate(d.loop_faces):
        outer = sea if host is None else find(host)
        sides.append((find(nf + j), outer))

    # walk the region tree from the sea; the far side of a circle is inside
    adj: dict[int, list[tuple[int, int]]] = {}
    for ci, (l, r) in enumerate(sides):
        adj.setdefault(l, []).append((ci, r))
        adj.setdefault(r, []).append((ci, l))
    depth_side: dict[int, bool] = {}
    up: dict[int, int | None] = {find(sea): None}
    circle_parent: dict[int, int | None] = {}
    stack = [find(sea)]
    while stack:
        reg = stack.pop()
        for ci, other in adj.get(reg, []):
            if other in up:
                continue
            up[other] = ci
            circle_parent[ci] = up[reg]
            depth_side[ci] = other == sides[ci][0]
            stack.append(other)
    assert len(depth_side) == len(sides), "region graph is not a tree"

    circles = []
    for ci, (darts, sites) in enumerate(raw):
        arcs = frozenset(d.arc(x) for x in darts)
        circles.append((ci, Circle(tuple(darts), tuple(sites), arcs, depth_side[ci])))
    for j, label in enumerate(d.loops):
        ci = len(raw) + j
        circles.append((ci, Circle((), (), frozenset([label]), depth_side[ci])))
    order = sorted(range(len(circles)), key=lambda i: circles[i][1].key)
    rank = {old: new for new, old in enumerate(order)}
    out = []
    for old in order:
        c = circles[old][1]
        par = circle_parent[old]
        out.append(Circle(c.darts, c.sites, c.arcs, c.inside_left,
                          None if par is None else rank[par]))
    return CompleteSmoothing(d, m, tuple(out))


@dataclass(frozen=True)
class EnhancedState:
    diagram: LinkDiagram = field(repr=False, compare=False, hash=False)
    markers: Markers
    signs: tuple[int, ...]  # +1 / -1 per circle, canonical circle order

    def __post_init__(self):
        n = len(resolve(self.diagram, self.markers).circles)
        if len(self.signs) != n:
            raise ValueError(f"expected {n} circle signs, got {len(self.signs)}")

    @classmethod
    def trusted(cls, diagram: LinkDiagram, markers: Markers, signs: tuple[int, ...]
                ) -> "EnhancedState":
        """Construct without re-resolving the smoothing to check the sign count."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "diagram", diagram)
        object.__setattr__(obj, "markers", markers)
        object.__setattr__(obj, "signs", signs)
        return obj

    @property
    def smoothing(self) -> CompleteSmoothing:
        return resolve(self.diagram, self.markers)

    @property
    def key(self) -> tuple[Markers, tuple[int, ...]]:
        return (self.markers, self.signs)

    def to_json(self) -> str:
        circles = self.smoothing.circles
        return json.dumps({
            "markers": "".join("+" if v else "-" for v in self.markers),
            "circles": [
                {"arcs": sorted(c.arcs), "sign": "+" if s > 0 else "-"}
                for c, s in zip(circles, self.signs)
            ],
        })


def enhanced_states(d: LinkDiagram) -> Iterator[EnhancedState]:
    for m in enumerate_states(d):
        n = len(resolve(d, m).circles)
        for signs in itertools.product((-1, 1), repeat=n):
            yield EnhancedState(d, m, signs)


@dataclass(frozen=True)
class EdgeMap:
    """Circle bookkeeping for switching one marker from + to -.

    ``kind`` is ``"merge"`` or ``"split"``.  ``src``/``tgt`` list the
    circles touching the crossing before and after; ``carry`` maps every
    other source circle to its target index.
    """

    kind: str
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    carry: tuple[tuple[int, int], ...]
    target_markers: Markers


def edge_map(d: LinkDiagram, m: Markers, p: int) -> EdgeMap:
    """Cube edge leaving ``m`` at 0-based crossing ``p`` (marker must be +)."""
    if not m[p]:
        raise ValueError(f"marker at crossing {p + 1} is already negative")
    cache = _cache(d)
    key = ("edge", m, p)
    if key in cache:
        return cache[key]
    m2 = m[:p] + (False,) + m[p + 1:]
    a, b = resolve(d, m), resolve(d, m2)
    src = tuple(i for i, c in enumerate(a.circles) if any(s.crossing == p for s in c.sites))
    tgt = tuple(i for i, c in enumerate(b.circles) if any(s.crossing == p for s in c.sites))
    by_arcs = {c.arcs: i for i, c in enumerate(b.circles)}
    carry = tuple((i, by_arcs[c.arcs]) for i, c in enumerate(a.circles) if i not in src)
    kind = "merge" if len(src) == 2 else "split"
    assert (len(src), len(tgt)) in ((2, 1), (1, 2))
    out = EdgeMap(kind, src, tgt, carry, m2)
    cache[key] = out
    return out


def viro_partial(s: EnhancedState, i: int) -> dict[EnhancedState, int]:
    """Local differential at crossing ``i`` (1-based), without the sign."""
    p = i - 1
    if not 0 <= p < len(s.markers):
        raise IndexError(i)
    if not s.markers[p]:
        raise ValueError(f"marker at crossing {i} is negative")
    e = edge_map(s.diagram, s.markers, p)
    n = len(resolve(s.diagram, e.target_markers).circles)
    base = [0] * n
    for a, b in e.carry:
        base[b] = s.signs[a]
    out = {}
    if e.kind == "merge":
        u, v = (s.signs[c] for c in e.src)
        if u > 0 and v > 0:
            return {}
        base[e.tgt[0]] = 1 if (u > 0 or v > 0) else -1
        out[EnhancedState(s.diagram, e.target_markers, tuple(base))] = 1
    else:
        (u,) = (s.signs[c] for c in e.src)
        t0, t1 = e.tgt
        if u > 0:
            base[t0] = base[t1] = 1
            out[EnhancedState(s.diagram, e.target_markers, tuple(base))] = 1
        else:
            for x, y in ((-1, 1), (1, -1)):
                base[t0], base[t1] = x, y
                out[EnhancedState(s.diagram, e.target_markers, tuple(base))] = 1
    return out


def khovanov_sign(s: EnhancedState | Markers, i: int) -> int:
    """(-1) to the number of positive markers before crossing ``i``."""
    m = s.markers if isinstance(s, EnhancedState) else s
    if not m[i - 1]:
        raise ValueError(f"marker at crossing {i} is negative")
    return -1 if sum(m[: i - 1]) % 2 else 1


def alpha_sign(s: EnhancedState | Markers, i: int) -> int:
    """(-1) to the number of negative markers (inactive crosscuts) before ``i``."""
    m = s.markers if isinstance(s, EnhancedState) else s
    if not m[i - 1]:
        raise ValueError(f"marker at crossing {i} is negative")
    return -1 if (i - 1 - sum(m[: i - 1])) % 2 else 1


SIGN_RULES = {"sigma": khovanov_sign, "alpha": alpha_sign}
