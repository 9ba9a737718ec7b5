"""State surfaces and their gradings.

The state surface of an enhanced state has one disk per circle and one
half-twisted band per crossing.  A band is *active* when its marker is
positive.  The Gordon-Litherland form is evaluated on a spanning-tree
cycle basis by a combinatorial linking count:

* every band both curves run along contributes -1 (active) or +1
  (inactive), times +1 when they run the same way and -1 otherwise;
* on each disk X, a chord of one curve and an excursion of the other
  that leaves X into its inside contribute -1, 0 or +1 according to how
  their endpoints interleave on the circle.

Same-disk chord crossings cancel against the two sheets of the pushoff and
never contribute.  The geometric oracle in :mod:`dlkh.embedding` checks
this count against honest linking numbers.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .states import CompleteSmoothing, EnhancedState, Markers, resolve
from .diagram import LinkDiagram

Step = tuple[int, bool]  # (band = crossing position, runs from end 0 to end 1)
Cycle = tuple[Step, ...]


@dataclass(frozen=True)
class Band:
    crossing: int
    active: bool
    ends: tuple[tuple[int, int], tuple[int, int]]  # (facet, site position) per end
    orientation: str = "toward B-"

    @property
    def weight(self) -> int:
        """Half-twist contribution to a curve that runs along the band once."""
        return -1 if self.active else 1


@dataclass(frozen=True)
class StateSurface:
    smoothing: CompleteSmoothing = field(repr=False)
    dots: tuple[bool, ...]
    bands: tuple[Band, ...]

    @property
    def markers(self) -> Markers:
        return self.smoothing.markers

    @property
    def facets(self) -> int:
        return len(self.smoothing.circles)

    @property
    def k(self) -> int:
        return len(self.bands)

    @property
    def delta(self) -> int:
        return sum(self.dots)

    @property
    def active(self) -> int:
        return sum(b.active for b in self.bands)

    @property
    def components(self) -> int:
        parent = list(range(self.facets))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in self.bands:
            parent[find(b.ends[0][0])] = find(b.ends[1][0])
        return len({find(i) for i in range(self.facets)})

    @property
    def betti(self) -> int:
        return self.k - self.facets + self.components


def _surface_for(sm: CompleteSmoothing, dots: tuple[bool, ...]) -> StateSurface:
    idx = sm.site_index
    bands = tuple(
        Band(p, sm.markers[p], (idx[(p, 0)], idx[(p, 1)]))
        for p in range(len(sm.markers))
    )
    return StateSurface(sm, dots, bands)


def build_state_surface(s: EnhancedState, infinity: int | tuple[int, ...] = 0) -> StateSurface:
    sm = resolve(s.diagram, s.markers, infinity)
    return _surface_for(sm, tuple(v > 0 for v in s.signs))


def surface_of_markers(d: LinkDiagram, m: Sequence[bool], infinity: int | tuple[int, ...] = 0) -> StateSurface:
    """Undotted state surface of a Kauffman state."""
    sm = resolve(d, m, infinity)
    return _surface_for(sm, (False,) * len(sm.circles))


def euler_characteristic(F: StateSurface) -> int:
    return F.facets - F.k


# --- cycle basis ------------------------------------------------------


def cycle_basis(F: StateSurface, rng: random.Random | None = None) -> list[Cycle]:
    """One cycle per band outside a spanning forest of the facet graph.

    With ``rng`` the forest is grown from a random band order, which gives
    a different but equally valid basis.
    """
    order = list(range(F.k))
    roots = list(range(F.facets))
    if rng is not None:
        rng.shuffle(order)
        rng.shuffle(roots)
    adj: dict[int, list[tuple[int, int, bool]]] = {}
    for p in order:
        u, v = F.bands[p].ends[0][0], F.bands[p].ends[1][0]
        adj.setdefault(u, []).append((p, v, True))
        adj.setdefault(v, []).append((p, u, False))
    up: dict[int, tuple[int, int, bool] | None] = {}
    depth: dict[int, int] = {}
    tree: set[int] = set()
    for r in roots:
        if r in up:
            continue
        up[r] = None
        depth[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for p, v, fwd in adj.get(u, []):
                if v in up or p in tree:
                    continue
                up[v] = (p, u, fwd)  # band p leads from u to v when fwd
                depth[v] = depth[u] + 1
                tree.add(p)
                queue.append(v)

    def climb(v: int) -> list[Step]:
        """Steps from the root down to v."""
        steps = []
        while up[v] is not None:
            p, u, fwd = up[v]
            steps.append((p, fwd))
            v = u
        return steps[::-1]

    basis = []
    for p in range(F.k):
        if p in tree:
            continue
        u, v = F.bands[p].ends[0][0], F.bands[p].ends[1][0]
        pu, pv = climb(u), climb(v)
        i = 0
        while i < min(len(pu), len(pv)) and pu[i] == pv[i]:
            i += 1
        down_u, down_v = pu[i:], pv[i:]
        # u --p--> v, then back up from v to the common ancestor, then down to u
        cyc = [(p, True)]
        cyc += [(q, not f) for q, f in reversed(down_v)]
        cyc += down_u
        basis.append(tuple(cyc))
    return basis


# --- Goeritz form ------------------------------------------------------


@dataclass(frozen=True)
class GoeritzMatrix:
    entries: tuple[tuple[int, ...], ...]
    basis: tuple[Cycle, ...]

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass
class _Trace:
    bands: dict[int, int]
    chords: dict[int, list[tuple[Fraction, Fraction]]]
    excursions: dict[int, list[tuple[Fraction, Fraction]]]


def _site_point(F: StateSurface, band: int, end: int, x: Fraction) -> tuple[int, Fraction]:
    """Facet and counterclockwise coordinate of a curve at fraction ``x``."""
    ci, j = F.bands[band].ends[end]
    circ = F.smoothing.circles[ci]
    site = circ.sites[j]
    pos = j + (x if site.enter == site.over_slot else 1 - x)
    if not circ.inside_left:
        pos = -pos
    return ci, pos % len(circ.sites)


def _inside(F: StateSurface, band: int, end: int) -> bool:
    ci, j = F.bands[band].ends[end]
    circ = F.smoothing.circles[ci]
    return circ.sites[j].band_left == circ.inside_left


def _trace(F: StateSurface, cyc: Cycle, x: Fraction) -> _Trace:
    bands = {p: (1 if fwd else -1) for p, fwd in cyc}
    visits: dict[int, list[tuple[Fraction, Fraction, bool]]] = {}
    m = len(cyc)
    for j in range(m):
        p_in, f_in = cyc[j - 1]
        p_out, f_out = cyc[j]
        ci, a = _site_point(F, p_in, 1 if f_in else 0, x)
        cj, b = _site_point(F, p_out, 0 if f_out else 1, x)
        assert ci == cj, "cycle steps do not meet on a facet"
        visits.setdefault(ci, []).append((a, b, _inside(F, p_out, 0 if f_out else 1)))
    chords = {c: [(a, b) for a, b, _ in v] for c, v in visits.items()}
    excursions: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for c, v in visits.items():
        exc = []
        for i, (_, b, inside) in enumerate(v):
            if inside:
                exc.append((b, v[(i + 1) % len(v)][0]))
        excursions[c] = exc
    return _Trace(bands, chords, excursions)


def _interleave(chord: tuple[Fraction, Fraction], exc: tuple[Fraction, Fraction], n: int) -> int:
    p, q = chord
    u, v = exc
    rq = (q - p) % n
    ru = (u - p) % n
    rv = (v - p) % n
    u_first = 0 < ru < rq
    v_first = 0 < rv < rq
    if u_first and not v_first:
        return -1
    if v_first and not u_first:
        return 1
    return 0


def _pairing(F: StateSurface, a: _Trace, b: _Trace) -> int:
    total = 0
    for p, da in a.bands.items():
        db = b.bands.get(p)
        if db is not None:
            total += F.bands[p].weight * da * db
    for first, second in ((a, b), (b, a)):
        for ci, chords in first.chords.items():
            excs = second.excursions.get(ci)
            if not excs:
                continue
            n = len(F.smoothing.circles[ci].sites)
            for ch in chords:
                for ex in excs:
                    total += _interleave(ch, ex, n)
    return total


def goeritz_matrix(F: StateSurface, basis: Sequence[Cycle] | None = None) -> GoeritzMatrix:
    """Gordon-Litherland form lk(a_i, tau a_j) on a cycle basis."""
    if basis is None:
        basis = cycle_basis(F)
    n = len(basis)
    denom = 4 * (n + 2)
    traces = [_trace(F, c, Fraction(4 * (i + 1), denom)) for i, c in enumerate(basis)]
    ents = [[0] * n for _ in range(n)]
    for i in range(n):
        shifted = _trace(F, basis[i], Fraction(4 * (i + 1) + 1, denom))
        ents[i][i] = _pairing(F, traces[i], shifted)
        for j in range(i + 1, n):
            ents[i][j] = ents[j][i] = _pairing(F, traces[i], traces[j])
    return GoeritzMatrix(tuple(tuple(r) for r in ents), tuple(basis))


def signature(G: GoeritzMatrix | Sequence[Sequence[int]]) -> int:
    """Exact signature by symmetric congruence over the rationals."""
    rows = G.entries if isinstance(G, GoeritzMatrix) else G
    A = [[Fraction(v) for v in r] for r in rows]
    n = len(A)
    for r in A:
        if len(r) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    sig = 0
    live = list(range(n))
    while live:
        piv = next((i for i in live if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in live for j in live if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j, making the diagonal entry 2 A_ij
            for r in range(n):
                A[r][i] += A[r][j]
            for c in range(n):
                A[i][c] += A[j][c]
            piv = i
        d = A[piv][piv]
        sig += 1 if d > 0 else -1
        live.remove(piv)
        for r in live:
            f = A[r][piv] / d
            if f:
                for c in live:
                    A[r][c] -= f * A[piv][c]
                A[r][piv] = Fraction(0)
        for c in live:
            A[piv][c] = Fraction(0)
    return sig


# --- gradings ---------------------------------------------------------


@dataclass(frozen=True)
class Gradings:
    I: int
    J: int
    K: int
    B: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.I, self.J, self.K, self.B)


def state_signature(d: LinkDiagram, m: Sequence[bool]) -> int:
    """Signature of the state surface of a Kauffman state (cached)."""
    m = tuple(bool(v) for v in m)
    cache = d.__dict__.setdefault("_signature_cache", {})
    if m not in cache:
        cache[m] = signature(goeritz_matrix(surface_of_markers(d, m)))
    return cache[m]


def gradings(F: StateSurface) -> Gradings:
    I = state_signature(F.smoothing.diagram, F.markers)
    chi = euler_characteristic(F)
    return Gradings(I, -chi - I + 2 * F.delta, F.k, I + F.active)


def state_gradings(s: EnhancedState) -> Gradings:
    n = len(s.signs)
    I = state_signature(s.diagram, s.markers)
    chi = n - len(s.markers)
    delta = sum(1 for v in s.signs if v > 0)
    return Gradings(I, -chi - I + 2 * delta, len(s.markers), I + sum(s.markers))


def boundary_slope(F: StateSurface) -> int:
    """Linking number of the boundary with its pushoff along the surface."""
    from .embedding import boundary_slope as geometric

    return geometric(F)
