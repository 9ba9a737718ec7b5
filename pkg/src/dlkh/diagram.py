"""Planar diagram records.

A crossing ``X[a,b,c,d]`` lists its four arcs counterclockwise, starting
from the incoming under-strand.  The under-strand runs ``a -> c``; the
over-strand joins ``b`` and ``d``.  Crossings keep the order in which they
were written, and that order becomes the crosscut order of every state
surface built from the diagram.

A *dart* ``(p, s)`` is the arc leaving crossing ``p`` (0-based position)
through slot ``s``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Dart = tuple[int, int]


class PDSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class IncidenceError(ValueError):
    def __init__(self, message: str, arcs: Sequence[int]):
        super().__init__(message)
        self.arcs = tuple(arcs)


class OrientationError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    index: int
    slots: tuple[int, int, int, int]

    def __str__(self) -> str:
        return "X[{},{},{},{}]".format(*self.slots)


@dataclass(frozen=True)
class ValidationReport:
    crossings: int
    arcs: int
    free_loops: int
    faces: int
    genus: int
    components: int
    warnings: tuple[str, ...] = ()

    @property
    def spherical(self) -> bool:
        return self.genus == 0

    def as_dict(self) -> dict:
        return {
            "crossings": self.crossings,
            "arcs": self.arcs,
            "free_loops": self.free_loops,
            "faces": self.faces,
            "genus": self.genus,
            "components": self.components,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable PD record.

    ``loops`` holds the labels of crossing-free circles and ``loop_faces``
    records, for each of them, the face of the rest of the diagram it sits
    in (``None`` for the face at infinity).
    """

    crossings: tuple[Crossing, ...]
    loops: tuple[int, ...] = ()
    loop_faces: tuple[int | None, ...] = field(default=(), compare=True)

    def __post_init__(self):
        if len(self.loop_faces) != len(self.loops):
            object.__setattr__(self, "loop_faces", tuple(None for _ in self.loops))
        _check_incidence(self)

    # --- basic counts -------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.crossings)

    @property
    def free_loops(self) -> int:
        return len(self.loops)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    @cached_property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted({a for c in self.crossings for a in c.slots}))

    def arc(self, dart: Dart) -> int:
        p, s = dart
        return self.crossings[p].slots[s]

    # --- combinatorial structure -------------------------------------

    @cached_property
    def partner(self) -> dict[Dart, Dart]:
        """The other end of the arc leaving through each dart."""
        ends: dict[int, list[Dart]] = {}
        for p, c in enumerate(self.crossings):
            for s, a in enumerate(c.slots):
                ends.setdefault(a, []).append((p, s))
        out = {}
        for d0, d1 in ends.values():
            out[d0] = d1
            out[d1] = d0
        return out

    @cached_property
    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        """Faces as dart cycles; each dart lies on the face to its left."""
        seen: set[Dart] = set()
        faces = []
        for p in range(self.k):
            for s in range(4):
                if (p, s) in seen:
                    continue
                cyc = []
                d = (p, s)
                while d not in seen:
                    seen.add(d)
                    cyc.append(d)
                    q, t = self.partner[d]
                    d = (q, (t - 1) % 4)
                faces.append(tuple(cyc))
        return tuple(faces)

    @cached_property
    def face_of(self) -> dict[Dart, int]:
        return {d: f for f, cyc in enumerate(self.faces) for d in cyc}

    @cached_property
    def corner_face(self) -> tuple[tuple[int, int, int, int], ...]:
        """``corner_face[p][s]`` is the face in the corner between slots s and s+1."""
        # leaving along slot s, the corner (s, s+1) is on the left
        return tuple(tuple(self.face_of[(p, s)] for s in range(4)) for p in range(self.k))

    @cached_property
    def graph_components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the 4-valent crossing graph."""
        parent = list(range(self.k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (p, _), (q, _) in self.partner.items():
            parent[find(p)] = find(q)
        groups: dict[int, list[int]] = {}
        for p in range(self.k):
            groups.setdefault(find(p), []).append(p)
        return tuple(tuple(g) for g in groups.values())

    @cached_property
    def genus(self) -> int:
        g = 0
        for comp in self.graph_components:
            cs = set(comp)
            f = sum(1 for cyc in self.faces if cyc[0][0] in cs)
            v, e = len(comp), 2 * len(comp)
            g += (2 - v + e - f) // 2
        return g

    @cached_property
    def strands(self) -> tuple[tuple[Dart, ...], ...]:
        """Link components as oriented dart sequences.

        Each entry lists the darts by which the component leaves its
        crossings, in order of travel.
        """
        seen: set[Dart] = set()
        out = []
        for p in range(self.k):
            for s in range(4):
                if (p, s) in seen:
                    continue
                path = []
                d = (p, s)
                while d not in seen:
                    seen.add(d)
                    path.append(d)
                    q, t = self.partner[d]
                    seen.add((q, t))
                    d = (q, (t + 2) % 4)
                out.append(self._orient(path))
        return tuple(out)

    def _orient(self, path: list[Dart]) -> tuple[Dart, ...]:
        votes = set()
        for d in path:
            q, t = self.partner[d]
            if t in (0, 2):
                votes.add(t == 0)
        if len(votes) == 2:
            raise OrientationError("under-strands of one component point both ways")
        if votes:
            forward = votes.pop()
        else:
            q, t = self.partner[path[0]]
            j, l = self.crossings[q].slots[1], self.crossings[q].slots[3]
            incoming = 3 if (j == l + 1 or l > j + 1) else 1
            forward = t == incoming
        if forward:
            return tuple(path)
        rev = [self.partner[d] for d in reversed(path)]
        return tuple(rev)

    @cached_property
    def over_incoming(self) -> tuple[int, ...]:
        """Slot (1 or 3) through which the over-strand enters each crossing."""
        inc = [0] * self.k
        for path in self.strands:
            for d in path:
                q, t = self.partner[d]
                if t in (1, 3):
                    inc[q] = t
        return tuple(inc)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(1 if t == 3 else -1 for t in self.over_incoming)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def link_components(self) -> int:
        return len(self.strands) + len(self.loops)

    def __str__(self) -> str:
        return serialize(self)


def _check_incidence(d: LinkDiagram) -> None:
    counts: dict[int, int] = {}
    for c in d.crossings:
        if len(c.slots) != 4:
            raise IncidenceError(f"crossing {c.index} does not have 4 slots", ())
        for a in c.slots:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        raise IncidenceError(
            "arcs not used exactly twice: " + ", ".join(map(str, bad)), bad)
    clash = sorted(set(d.loops) & set(counts))
    if clash or len(set(d.loops)) != len(d.loops):
        raise IncidenceError("free-loop labels must be unused elsewhere", clash)


def make_diagram(slots: Iterable[Sequence[int]], loops: Sequence[int] = ()) -> LinkDiagram:
    xs = tuple(Crossing(i + 1, tuple(int(a) for a in s)) for i, s in enumerate(slots))
    return LinkDiagram(xs, tuple(loops))


_TOKEN = re.compile(r"\s*(?:(X)\s*\[([^\]]*)\]|(O)\s*\[([^\]]*)\])\s*,?")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X[a,b,c,d]`` and ``O[n]`` terms separated by commas or spaces."""
    pos = 0
    slots: list[tuple[int, ...]] = []
    loops: list[int] = []
    body = text
    m = re.fullmatch(r"\s*PD\s*\[(.*)\]\s*", text, re.S)
    offset = 0
    if m:
        body, offset = m.group(1), m.start(1)
    while pos < len(body):
        if body[pos:].strip() == "":
            break
        m = _TOKEN.match(body, pos)
        if not m:
            raise PDSyntaxError("expected X[a,b,c,d] or O[n]", offset + pos + _skip_ws(body, pos))
        inner = m.group(2) if m.group(1) else m.group(4)
        start = m.start(2) if m.group(1) else m.start(4)
        try:
            nums = tuple(int(v) for v in inner.split(","))
        except ValueError:
            raise PDSyntaxError("non-integer arc label", offset + start) from None
        if any(v <= 0 for v in nums):
            raise PDSyntaxError("arc labels must be positive", offset + start)
        if m.group(1):
            if len(nums) != 4:
                raise PDSyntaxError("a crossing needs exactly 4 arcs", offset + start)
            slots.append(nums)
        else:
            if len(nums) != 1:
                raise PDSyntaxError("a free loop takes one label", offset + start)
            loops.append(nums[0])
        pos = m.end()
    return make_diagram(slots, loops)


def _skip_ws(s: str, pos: int) -> int:
    n = 0
    while pos + n < len(s) and s[pos + n].isspace():
        n += 1
    return n


def serialize(d: LinkDiagram) -> str:
    parts = [str(c) for c in d.crossings]
    parts += [f"O[{n}]" for n in d.loops]
    return " ".join(parts)


def validate(d: LinkDiagram) -> ValidationReport:
    warnings = []
    g = d.genus
    if g > 0:
        warnings.append(f"rotation system has genus {g}; the diagram is not spherical")
    faces = 1 + sum(
        sum(1 for cyc in d.faces if cyc[0][0] in set(comp)) - 1
        for comp in d.graph_components
    ) + d.free_loops
    try:
        comps = d.link_components
    except OrientationError as e:
        warnings.append(str(e))
        comps = -1
    return ValidationReport(
        crossings=d.k,
        arcs=d.arc_count,
        free_loops=d.free_loops,
        faces=faces,
        genus=g,
        components=comps,
        warnings=tuple(warnings),
    )


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing, keeping the plane picture."""
    out = []
    for c, inc in zip(d.crossings, d.over_incoming):
        a, b, cc, dd = c.slots
        out.append((dd, a, b, cc) if inc == 3 else (b, cc, dd, a))
    new = make_diagram(out, d.loops)
    return LinkDiagram(new.crossings, d.loops, d.loop_faces)


def reorder(d: LinkDiagram, order: Sequence[int]) -> LinkDiagram:
    """Diagram whose i-th crossing is ``d.crossings[order[i]]`` (0-based)."""
    if sorted(order) != list(range(d.k)):
        raise ValueError("order must be a permutation of crossing positions")
    return LinkDiagram(
        tuple(Crossing(i + 1, d.crossings[p].slots) for i, p in enumerate(order)),
        d.loops,
        d.loop_faces,
    )


def swap_adjacent(d: LinkDiagram, i: int) -> LinkDiagram:
    """Exchange the crossings at 0-based positions i and i+1."""
    order = list(range(d.k))
    order[i], order[i + 1] = order[i + 1], order[i]
    return reorder(d, order)


def relabel(d: LinkDiagram) -> LinkDiagram:
    """Renumber arcs 1, 2, ... consecutively along each oriented component."""
    new: dict[int, int] = {}
    nxt = 1
    for path in d.strands:
        for dart in path:
            a = d.arc(dart)
            if a not in new:
                new[a] = nxt
                nxt += 1
    loops = tuple(range(nxt, nxt + d.free_loops))
    xs = [tuple(new[a] for a in c.slots) for c in d.crossings]
    out = make_diagram(xs, loops)
    return LinkDiagram(out.crossings, loops, d.loop_faces)


def braid_closure(word: Sequence[int], strands: int | None = None) -> LinkDiagram:
    """Closure of a braid word; ``i`` is the generator sigma_i, ``-i`` its inverse.

    Strands run upward.  sigma_i carries the strand at position i over the
    one at position i+1 and gives a positive crossing.
    """
    n = strands if strands is not None else max([abs(g) for g in word] + [0]) + 1
    if any(g == 0 or abs(g) >= n for g in word):
        raise ValueError("generator index out of range")
    label = list(range(1, n + 1))
    nxt = n + 1
    raw = []
    for g in word:
        i = abs(g) - 1
        in_l, in_r = label[i], label[i + 1]
        out_l, out_r = nxt, nxt + 1
        nxt += 2
        if g > 0:
            raw.append([in_r, out_r, out_l, in_l])
        else:
            raw.append([in_l, in_r, out_r, out_l])
        label[i], label[i + 1] = out_l, out_r
    # closing: the top arc at each position is the bottom arc there
    ident = {label[j]: j + 1 for j in range(n) if label[j] != j + 1}
    xs = [[ident.get(a, a) for a in s] for s in raw]
    used = {a for s in xs for a in s}
    loops = [j + 1 for j in range(n) if j + 1 not in used]
    return relabel(make_diagram(xs, loops)) if xs else make_diagram([], loops)


_GAUSS = re.compile(r"([OoUu])(\d+)([+-])")


def parse_gauss(text: str) -> LinkDiagram:
    """Convert a signed Gauss code such as ``O1+U2+O3+U1+O2+U3+`` to PD.

    Components are separated by ``;``.  An empty component is a free loop.
    """
    comps = [c.strip() for c in text.split(";")]
    passes: dict[int, dict[str, tuple[int, int]]] = {}
    sign: dict[int, int] = {}
    arc = 1
    loops = []
    for comp in comps:
        toks = []
        pos = 0
        while pos < len(comp):
            if comp[pos].isspace() or comp[pos] == ",":
                pos += 1
                continue
            m = _GAUSS.match(comp, pos)
            if not m:
                raise PDSyntaxError("expected O<n>± or U<n>±", pos)
            toks.append((m.group(1).upper(), int(m.group(2)), 1 if m.group(3) == "+" else -1))
            pos = m.end()
        if not toks:
            loops.append(None)
            continue
        n = len(toks)
        first = arc
        for i, (ou, c, sg) in enumerate(toks):
            a_in = first + (i - 1) % n
            a_out = first + i
            if sign.setdefault(c, sg) != sg:
                raise ValueError(f"crossing {c} has inconsistent signs")
            slot = passes.setdefault(c, {})
            if ou in slot:
                raise ValueError(f"crossing {c} passed {ou} twice")
            slot[ou] = (a_in, a_out)
        arc += n
    xs = []
    for c in sorted(passes):
        if set(passes[c]) != {"O", "U"}:
            raise ValueError(f"crossing {c} needs one over and one under pass")
        u_in, u_out = passes[c]["U"]
        o_in, o_out = passes[c]["O"]
        if sign[c] > 0:
            xs.append((u_in, o_out, u_out, o_in))
        else:
            xs.append((u_in, o_in, u_out, o_out))
    loop_labels = list(range(arc, arc + len(loops)))
    return make_diagram(xs, loop_labels)
