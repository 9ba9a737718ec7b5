"""Graded chain complexes of enhanced states and their integer homology.

Generators are the enhanced states of a diagram, in the order of
:func:`dlkh.states.enhanced_states`.  The differential is stored sparsely
as ``{(source, target): coefficient}`` over generator indices and is
binned by the grading tuple (I, J, K, B).
"""
from __future__ import annotations

import json
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import kernels
from .diagram import LinkDiagram
from .frobenius import F1, FrobeniusSystem
from .states import (SIGN_RULES, EnhancedState, Markers, edge_map, enumerate_states,
                     resolve)
from .surface import state_signature

Grading = tuple[int, int, int, int]


class GenusError(ValueError):
    """The diagram's rotation system does not lie on the sphere."""


class GradingError(AssertionError):
    """A differential entry joins bins that differ by something other than (+1, 0, 0, 0)."""


@dataclass
class GradedComplex:
    diagram: LinkDiagram = field(repr=False)
    sign_rule: str
    generators: list[EnhancedState] = field(repr=False)
    gradings: list[Grading] = field(repr=False)
    differential: dict[tuple[int, int], int] = field(repr=False)
    system: str = "F1"

    @property
    def size(self) -> int:
        return len(self.generators)

    @property
    def bins(self) -> dict[Grading, list[int]]:
        out: dict[Grading, list[int]] = defaultdict(list)
        for i, g in enumerate(self.gradings):
            out[g].append(i)
        return dict(sorted(out.items()))

    def matrix(self, source: Grading) -> tuple[Grading, list[list[int]]]:
        """Matrix of d from ``source`` into the next bin, rows indexed by targets."""
        bins = self.bins
        target = (source[0] + 1,) + source[1:]
        src = bins.get(source, [])
        tgt = bins.get(target, [])
        col = {g: c for c, g in enumerate(src)}
        row = {g: r for r, g in enumerate(tgt)}
        M = [[0] * len(src) for _ in tgt]
        for (a, b), v in self.differential.items():
            if a in col and b in row:
                M[row[b]][col[a]] += v
        return target, M

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        by = self._by_source()
        for a, c in vec.items():
            for b, v in by.get(a, ()):
                out[b] += c * v
        return {k: v for k, v in out.items() if v}

    def _by_source(self) -> dict[int, list[tuple[int, int]]]:
        cache = self.__dict__.get("_by_src")
        if cache is None:
            cache = defaultdict(list)
            for (a, b), v in self.differential.items():
                cache[a].append((b, v))
            self.__dict__["_by_src"] = cache
        return cache


def _generator_layout(d: LinkDiagram) -> tuple[list[Markers], dict[Markers, int], dict[Markers, int]]:
    states = enumerate_states(d)
    offset, ncirc = {}, {}
    pos = 0
    for m in states:
        n = len(resolve(d, m).circles)
        offset[m] = pos
        ncirc[m] = n
        pos += 1 << n
    return states, offset, ncirc


def _signs_of(local: int, n: int) -> tuple[int, ...]:
    return tuple(1 if (local >> (n - 1 - c)) & 1 else -1 for c in range(n))


def _local_of(signs: Sequence[int]) -> int:
    v = 0
    for s in signs:
        v = (v << 1) | (s > 0)
    return v


def differential(d: LinkDiagram, sign_rule: str | Callable = "sigma"
                 ) -> tuple[list[EnhancedState], dict[tuple[int, int], int]]:
    """Generators and sparse signed differential over F1.

    A generator's circle signs are packed into an integer, first circle in
    the highest bit, with 1 for + and 0 for -.
    """
    rule = SIGN_RULES[sign_rule] if isinstance(sign_rule, str) else sign_rule
    states, offset, ncirc = _generator_layout(d)
    table: dict[int, list[tuple[int, ...]]] = {}
    gens = []
    for m in states:
        n = ncirc[m]
        if n not in table:
            table[n] = [_signs_of(l, n) for l in range(1 << n)]
        gens += [EnhancedState.trusted(d, m, s) for s in table[n]]
    D: dict[tuple[int, int], int] = {}
    for m in states:
        n = ncirc[m]
        for p in range(d.k):
            if not m[p]:
                continue
            e = edge_map(d, m, p)
            m2 = e.target_markers
            n2 = ncirc[m2]
            sgn = rule(m, p + 1)
            carry = [(n - 1 - a, 1 << (n2 - 1 - b)) for a, b in e.carry]
            src0, tgt0 = offset[m], offset[m2]
            if e.kind == "merge":
                su, sv = n - 1 - e.src[0], n - 1 - e.src[1]
                t = 1 << (n2 - 1 - e.tgt[0])
            else:
                su = n - 1 - e.src[0]
                t0, t1 = 1 << (n2 - 1 - e.tgt[0]), 1 << (n2 - 1 - e.tgt[1])
            for l in range(1 << n):
                base = 0
                for sh, bit in carry:
                    if (l >> sh) & 1:
                        base |= bit
                if e.kind == "merge":
                    u, v = (l >> su) & 1, (l >> sv) & 1
                    if u and v:
                        continue
                    outs = (base | t,) if (u or v) else (base,)
                elif (l >> su) & 1:
                    outs = (base | t0 | t1,)
                else:
                    outs = (base | t1, base | t0)
                for o in outs:
                    key = (src0 + l, tgt0 + o)
                    D[key] = D.get(key, 0) + sgn
    return gens, {k: v for k, v in D.items() if v}


def assemble(d: LinkDiagram, sys: FrobeniusSystem = F1, sign_rule: str = "sigma",
             check: bool = True) -> GradedComplex:
    """Chain complex of all enhanced states of a spherical diagram.

    Only the integral system F1 is supported here; F5 structure constants
    live in a polynomial ring where the Smith form is not available.
    """
    if d.genus != 0:
        raise GenusError(f"diagram has genus {d.genus}; homology needs a spherical diagram")
    if sys.name != "F1":
        raise ValueError(f"homology is computed over F1 only, not {sys.name}")
    gens, D = differential(d, sign_rule)
    sig = {m: state_signature(d, m) for m in enumerate_states(d)}
    grads = []
    for g in gens:
        n = len(g.signs)
        chi = n - d.k
        I = sig[g.markers]
        delta = sum(1 for v in g.signs if v > 0)
        grads.append((I, -chi - I + 2 * delta, d.k, I + sum(g.markers)))
    c = GradedComplex(d, sign_rule, gens, grads, D, sys.name)
    if check:
        check_gradings(c)
    return c


def viro_complex(d: LinkDiagram, sign_rule: str = "sigma", normalize: bool = False
                 ) -> GradedComplex:
    """The Khovanov complex graded directly by (r, q), without surfaces.

    ``r`` counts negative markers and ``q = r + #(-) - #(+)`` over circles;
    gradings are stored as (r, q, k, 0) so that the homology machinery
    applies unchanged.  With ``normalize`` the writhe shift is applied.
    """
    if d.genus != 0:
        raise GenusError(f"diagram has genus {d.genus}; homology needs a spherical diagram")
    gens, D = differential(d, sign_rule)
    shift_i = -d.n_minus if normalize else 0
    shift_q = d.n_plus - 2 * d.n_minus if normalize else 0
    grads = []
    for g in gens:
        r = sum(1 for v in g.markers if not v)
        q = r + sum(-v for v in g.signs)
        grads.append((r + shift_i, q + shift_q, d.k, 0))
    c = GradedComplex(d, sign_rule, gens, grads, D, "F1")
    check_gradings(c)
    return c


def check_gradings(c: GradedComplex) -> None:
    for (a, b), v in c.differential.items():
        ga, gb = c.gradings[a], c.gradings[b]
        if (gb[0] - ga[0], gb[1] - ga[1], gb[2] - ga[2], gb[3] - ga[3]) != (1, 0, 0, 0):
            raise GradingError(f"edge {c.generators[a].key} -> {c.generators[b].key}: {ga} -> {gb}")


@dataclass(frozen=True)
class DSquaredReport:
    ok: bool
    witnesses: tuple[tuple[EnhancedState, EnhancedState, int], ...] = ()


def verify_d_squared(c: GradedComplex | tuple[list[EnhancedState], Mapping[tuple[int, int], int]],
                     limit: int = 10) -> DSquaredReport:
    """Compose the differential with itself and list nonzero entries.

    Accepts an assembled complex or the ``(generators, differential)`` pair
    returned by :func:`differential`.
    """
    if isinstance(c, GradedComplex):
        gens, by = c.generators, c._by_source()
    else:
        gens, D = c
        by = defaultdict(list)
        for (a, b), v in D.items():
            by[a].append((b, v))
    bad = []
    for a in range(len(gens)):
        acc: dict[int, int] = defaultdict(int)
        for b, v in by.get(a, ()):
            for e, w in by.get(b, ()):
                acc[e] += v * w
        for e, v in acc.items():
            if v:
                bad.append((gens[a], gens[e], v))
                if len(bad) >= limit:
                    return DSquaredReport(False, tuple(bad))
    return DSquaredReport(not bad, tuple(bad))


# --- Smith normal form ------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]
                      ) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, S, V)`` with ``S = U M V`` diagonal and d1 | d2 | ...

    Pivots are chosen greedily by least absolute value; all arithmetic is
    on Python integers.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row_dst += f row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        cand = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not cand:
            break
        _, i, j = min(cand)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        changed = True
            if changed:
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # the pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, A, V


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    cols = list(zip(*B)) if B else []
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in A]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    M = [list(r) for r in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def invariant_factors(M: Sequence[Sequence[int]], backend: str | None = None) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    if not M or not M[0]:
        return []
    diag = kernels.diagonal(M, backend)
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            d[i], d[j] = g, d[i] // g * d[j]
    return d


# --- homology ---------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __bool__(self):
        return bool(self.rank or self.torsion)

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def homology(c: GradedComplex, backend: str | None = None) -> dict[Grading, HomologyGroup]:
    """Homology in every grading bin; zero groups are omitted."""
    bins = c.bins
    rank: dict[Grading, int] = {}
    factors: dict[Grading, list[int]] = {}
    for g in bins:
        tgt, M = c.matrix(g)
        inv = invariant_factors(M, backend) if M else []
        rank[g] = len(inv)
        factors[tgt] = inv
    out = {}
    for g, gens in bins.items():
        incoming = factors.get(g, [])
        free = len(gens) - rank[g] - len(incoming)
        tors = tuple(t for t in incoming if t > 1)
        H = HomologyGroup(free, tors)
        if H:
            out[g] = H
    return out


def homology_over_field(c: GradedComplex, p: int) -> dict[Grading, int]:
    """Betti numbers over the prime field F_p (p = 0 for the rationals)."""
    from fractions import Fraction

    def rank(M):
        if not M or not M[0]:
            return 0
        A = [[(Fraction(v) if p == 0 else v % p) for v in r] for r in M]
        rk, cols, rows = 0, len(A[0]), len(A)
        for col in range(cols):
            piv = next((r for r in range(rk, rows) if A[r][col]), None)
            if piv is None:
                continue
            A[rk], A[piv] = A[piv], A[rk]
            inv = (1 / A[rk][col]) if p == 0 else pow(A[rk][col], p - 2, p)
            A[rk] = [(v * inv) if p == 0 else (v * inv) % p for v in A[rk]]
            for r in range(rows):
                if r != rk and A[r][col]:
                    f = A[r][col]
                    A[r] = [(a - f * b) if p == 0 else (a - f * b) % p for a, b in zip(A[r], A[rk])]
            rk += 1
        return rk

    bins = c.bins
    rk = {g: rank(c.matrix(g)[1]) for g in bins}
    out = {}
    for g, gens in bins.items():
        prev = (g[0] - 1,) + g[1:]
        b = len(gens) - rk[g] - rk.get(prev, 0)
        if b:
            out[g] = b
    return out


# --- Euler characteristic ---------------------------------------------------


Laurent = dict[int, int]


def _clean(p: Mapping[int, int]) -> Laurent:
    return {k: v for k, v in sorted(p.items()) if v}


def graded_euler_characteristic(c: GradedComplex | Mapping[Grading, HomologyGroup | int]
                                ) -> Laurent:
    """Sum of (-1)^I q^J over generators, or over homology ranks."""
    out: dict[int, int] = defaultdict(int)
    if isinstance(c, GradedComplex):
        for g in c.gradings:
            out[g[1]] += -1 if g[0] % 2 else 1
    else:
        for g, h in c.items():
            r = h.rank if isinstance(h, HomologyGroup) else h
            out[g[1]] += -r if g[0] % 2 else r
    return _clean(out)


# --- Khovanov gradings ------------------------------------------------------


def khovanov_bidegree(g: Grading, d: LinkDiagram, normalize: bool = False) -> tuple[int, int]:
    """Khovanov (i, q) of a generator with surface gradings ``g`` on ``d``.

    Unnormalized, i counts negative markers and q = #(-) - #(+) + i.  The
    normalized version shifts by the writhe data of the oriented diagram.
    """
    I, J, K, B = g
    r = I - B + K
    q = 2 * K - B - J
    if normalize:
        return r - d.n_minus, q + d.n_plus - 2 * d.n_minus
    return r, q


def khovanov_homology(c: GradedComplex, normalize: bool = False,
                      H: Mapping[Grading, HomologyGroup] | None = None
                      ) -> dict[tuple[int, int], HomologyGroup]:
    H = homology(c) if H is None else H
    out: dict[tuple[int, int], list] = {}
    for g, h in H.items():
        key = khovanov_bidegree(g, c.diagram, normalize)
        if key in out:  # bins in one diagram never collide, but be safe
            r, t = out[key]
            out[key] = [r + h.rank, t + list(h.torsion)]
        else:
            out[key] = [h.rank, list(h.torsion)]
    return {k: HomologyGroup(r, tuple(sorted(t))) for k, (r, t) in sorted(out.items())}


# --- sign rules --------------------------------------------------------------


def sign_bridge(d: LinkDiagram) -> dict[Markers, int]:
    """Per-state signs e with e(m') alpha(m, i) = sigma(m, i) e(m) on every edge.

    Found by search over the cube, starting from the all-positive state.
    Raises ``ValueError`` if no consistent choice exists.
    """
    sigma, alpha = SIGN_RULES["sigma"], SIGN_RULES["alpha"]
    start = (True,) * d.k
    eps = {start: 1}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for p in range(d.k):
            if not m[p]:
                continue
            m2 = m[:p] + (False,) + m[p + 1:]
            want = sigma(m, p + 1) * eps[m] * alpha(m, p + 1)
            if m2 in eps:
                if eps[m2] != want:
                    raise ValueError(f"no consistent sign bridge at {m2}")
            else:
                eps[m2] = want
                queue.append(m2)
    return eps


def bridge_closed_form(m: Markers) -> int:
    """(-1) to the sum of (i - 1) over negative positions i (1-based)."""
    return -1 if sum(i for i, v in enumerate(m) if not v) % 2 else 1


# --- dumps -------------------------------------------------------------------


def homology_json(H: Mapping[Grading, HomologyGroup], extra: Mapping | None = None) -> str:
    rows = [
        {"gradings": dict(zip("ijkb", g)), "rank": h.rank, "torsion": list(h.torsion)}
        for g, h in sorted(H.items())
    ]
    payload = {"homology": rows}
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2, sort_keys=True)


def to_dot(c: GradedComplex) -> str:
    """Graphviz picture of the cube; negative edges get a hollow dot at the tail."""
    lines = ["digraph cube {", "  rankdir=LR;"]
    for i, (g, s) in enumerate(zip(c.gradings, c.generators)):
        marks = "".join("+" if v else "-" for v in s.markers)
        signs = "".join("+" if v > 0 else "-" for v in s.signs)
        lines.append(f'  n{i} [label="{marks}|{signs}\\n({g[0]},{g[1]},{g[2]},{g[3]})"];')
    for (a, b), v in sorted(c.differential.items()):
        attrs = ' [dir=both, arrowtail=odot]' if v < 0 else ""
        if abs(v) != 1:
            attrs = attrs[:-1] + f', label="{v}"]' if attrs else f' [label="{v}"]'
        lines.append(f"  n{a} -> n{b}{attrs};")
    lines.append("}")
    return "\n".join(lines)
