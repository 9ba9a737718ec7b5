"""The diagramless complex of a link from a set of diagram classes.

Each supplied diagram contributes its whole cube of state surfaces with
surface gradings (I, J, K, B) and the inactive-crosscut sign rule.  The
complex of the link is the direct sum over the classes; its homology is
compared bidegree by bidegree against Khovanov homology computed
separately from the Viro-graded complex of the first diagram.
"""
from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .complex import (GenusError, GradedComplex, Grading, HomologyGroup, assemble, homology,
                      khovanov_bidegree, viro_complex)
from .diagram import LinkDiagram, parse_pd, reorder, swap_adjacent
from .states import EnhancedState, resolve


class MixedCrossingError(ValueError):
    """Diagrams of one class set must share the crossing count k."""


class DecompositionError(RuntimeError):
    """Diagramless homology is not a whole number of Khovanov copies."""

    def __init__(self, message: str, details: Mapping):
        super().__init__(message)
        self.details = dict(details)


class InvariantError(AssertionError):
    """An internal chain-level identity failed."""


# --- class sets --------------------------------------------------------------


@dataclass
class DiagramClassSet:
    diagrams: list[LinkDiagram]
    labels: list[str]
    name: str = "L"

    def __post_init__(self):
        if len(self.labels) != len(self.diagrams):
            raise ValueError("one label per diagram")
        ks = {d.k for d in self.diagrams}
        if len(ks) > 1:
            raise MixedCrossingError(f"diagrams have different crossing counts {sorted(ks)}")

    @property
    def k(self) -> int:
        return self.diagrams[0].k if self.diagrams else 0

    def __len__(self) -> int:
        return len(self.diagrams)


_LINE = re.compile(r"^\s*([^:#]+?)\s*:\s*(.+?)\s*$")


def parse_manifest(text: str, name: str = "L") -> DiagramClassSet:
    """Read ``label: PD`` lines; blank lines and ``#`` comments are skipped."""
    diagrams, labels = [], []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ValueError(f"manifest line {no}: expected 'label: PD'")
        labels.append(m.group(1))
        diagrams.append(parse_pd(m.group(2)))
    if not diagrams:
        raise ValueError("manifest lists no diagrams")
    return DiagramClassSet(diagrams, labels, name)


# --- B pieces and i-irreducible components ----------------------------------------


def subcomplex(c: GradedComplex, gens: Sequence[int]) -> GradedComplex:
    """Restriction of ``c`` to the generators ``gens`` (in the given order)."""
    pos = {g: i for i, g in enumerate(gens)}
    D = {(pos[a], pos[b]): v for (a, b), v in c.differential.items() if a in pos and b in pos}
    return GradedComplex(c.diagram, c.sign_rule, [c.generators[g] for g in gens],
                         [c.gradings[g] for g in gens], D, c.system)


def b_decompose(c: GradedComplex) -> dict[int, list[int]]:
    """Generator indices grouped by B."""
    out: dict[int, list[int]] = defaultdict(list)
    for i, g in enumerate(c.gradings):
        out[g[3]].append(i)
    return dict(sorted(out.items()))


def iirreducible_split(c: GradedComplex, gens: Sequence[int] | None = None) -> list[list[int]]:
    """Components of the graph whose edges are nonzero differential entries."""
    gens = list(range(c.size)) if gens is None else list(gens)
    parent = {g: g for g in gens}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b), v in c.differential.items():
        if v and a in parent and b in parent:
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = defaultdict(list)
    for g in gens:
        groups[find(g)].append(g)
    return sorted(groups.values(), key=lambda grp: grp[0])


# --- reordering crosscuts -----------------------------------------------------


@dataclass
class PsiMap:
    source: GradedComplex = field(repr=False)
    target: GradedComplex = field(repr=False)
    position: int                      # swaps crosscuts position and position + 1 (1-based)
    image: list[tuple[int, int]]       # generator -> (target generator, weight)

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for a, c in vec.items():
            b, w = self.image[a]
            out[b] += w * c
        return {k: v for k, v in out.items() if v}


def psi_weight(markers: Sequence[bool], position: int, sign_rule: str = "alpha") -> int:
    """-1 when both swapped crosscuts are inactive (alpha rule) or both positive (sigma)."""
    a, b = markers[position - 1], markers[position]
    if sign_rule == "alpha":
        return -1 if not a and not b else 1
    return -1 if a and b else 1


def _swapped(s: EnhancedState, d2: LinkDiagram, p: int) -> EnhancedState:
    m = list(s.markers)
    m[p], m[p + 1] = m[p + 1], m[p]
    m2 = tuple(m)
    old = resolve(s.diagram, s.markers).circles
    new = resolve(d2, m2).circles
    sign = {c.arcs: v for c, v in zip(old, s.signs)}
    return EnhancedState(d2, m2, tuple(sign[c.arcs] for c in new))


def psi_sigma(c: GradedComplex, position: int, target: GradedComplex | None = None,
              verify: bool = True) -> PsiMap:
    """Chain isomorphism to the complex with crosscuts ``position``, ``position+1`` swapped."""
    d = c.diagram
    if not 1 <= position < d.k:
        raise IndexError(f"no adjacent transposition ({position}, {position + 1}) for k = {d.k}")
    p = position - 1
    if target is None:
        target = assemble(swap_adjacent(d, p), sign_rule=c.sign_rule, check=False)
    index = {g.key: i for i, g in enumerate(target.generators)}
    image = []
    for s in c.generators:
        t = _swapped(s, target.diagram, p)
        image.append((index[t.key], psi_weight(s.markers, position, c.sign_rule)))
    psi = PsiMap(c, target, position, image)
    if verify:
        bad = check_chain_map(psi)
        if bad:
            raise InvariantError(f"psi fails to commute with d at generators {bad[:5]}")
    return psi


def check_chain_map(psi: PsiMap) -> list[int]:
    """Generators a with psi(d a) != d'(psi a)."""
    bad = []
    for a in range(psi.source.size):
        lhs = psi.apply(psi.source.apply({a: 1}))
        rhs = psi.target.apply(psi.apply({a: 1}))
        if lhs != rhs:
            bad.append(a)
    return bad


# --- torsion bookkeeping ---------------------------------------------------------


def prime_powers(torsion: Sequence[int]) -> list[int]:
    """Primary decomposition of a list of cyclic orders, sorted."""
    out = []
    for t in torsion:
        n, f = t, 2
        while f * f <= n:
            if n % f == 0:
                q = 1
                while n % f == 0:
                    n //= f
                    q *= f
                out.append(q)
            f += 1
        if n > 1:
            out.append(n)
    return sorted(out)


def invariant_form(torsion: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups."""
    by_prime: dict[int, list[int]] = defaultdict(list)
    for q in prime_powers(torsion):
        f = 2
        while q % f:
            f += 1
        by_prime[f].append(q)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * width
    for powers in by_prime.values():
        for j, q in enumerate(sorted(powers, reverse=True)):
            factors[width - 1 - j] *= q
    return tuple(f for f in factors if f > 1)


def direct_sum(groups: Sequence[Mapping[Grading, HomologyGroup]]) -> dict[Grading, HomologyGroup]:
    rank: dict[Grading, int] = defaultdict(int)
    tors: dict[Grading, list[int]] = defaultdict(list)
    for H in groups:
        for g, h in H.items():
            rank[g] += h.rank
            tors[g] += list(h.torsion)
    return {g: HomologyGroup(rank[g], invariant_form(tors[g])) for g in sorted(rank)}


# --- diagramless homology -----------------------------------------------------------


@dataclass
class DiagramlessHomology:
    homology: dict[Grading, HomologyGroup]
    N: int
    per_class: dict[str, dict[Grading, HomologyGroup]]
    khovanov: dict[tuple[int, int], HomologyGroup]
    warnings: list[str]

    def to_json(self) -> str:
        def rows(H):
            return [{"gradings": dict(zip("ijkb", g)), "rank": h.rank, "torsion": list(h.torsion)}
                    for g, h in sorted(H.items())]

        payload = {
            "homology": rows(self.homology),
            "N": self.N,
            "per_class_contributions": {k: rows(v) for k, v in self.per_class.items()},
            "warnings": list(self.warnings),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def fingerprint(d: LinkDiagram) -> tuple:
    """Grading census used to flag possible duplicate classes."""
    c = assemble(d, check=False)
    sigs = Counter(g[0] for g in c.gradings)
    return (tuple(sorted(Counter(c.gradings).items())), tuple(sorted(sigs.items())))


def _same_up_to_order(a: LinkDiagram, b: LinkDiagram) -> bool:
    return (a.k == b.k and a.loops == b.loops
            and sorted(c.slots for c in a.crossings) == sorted(c.slots for c in b.crossings))


def duplicate_warnings(ds: DiagramClassSet) -> list[str]:
    out = []
    prints = [fingerprint(d) for d in ds.diagrams]
    for j in range(len(ds)):
        for i in range(j):
            a, b = ds.labels[i], ds.labels[j]
            if _same_up_to_order(ds.diagrams[i], ds.diagrams[j]):
                out.append(f"{a} and {b} differ only by crosscut order; "
                           f"their subcomplexes are psi-equivalent")
            elif prints[i] == prints[j]:
                out.append(f"{a} and {b} have identical grading censuses; "
                           f"equivalence of the classes is unresolved")
    return out


def _kh_view(H: Mapping[Grading, HomologyGroup], d: LinkDiagram
             ) -> dict[tuple[int, int], tuple[int, list[int]]]:
    out: dict[tuple[int, int], tuple[int, list[int]]] = {}
    for g, h in H.items():
        key = khovanov_bidegree(g, d, normalize=True)
        r, t = out.get(key, (0, []))
        out[key] = (r + h.rank, t + list(h.torsion))
    return out


def copy_count(total: Mapping[tuple[int, int], tuple[int, list[int]]],
               reference: Mapping[tuple[int, int], HomologyGroup]) -> int:
    """The N with total = N copies of reference, or ``DecompositionError``."""
    keys = set(total) | set(reference)
    ratios = set()
    for key in keys:
        r, t = total.get(key, (0, []))
        ref = reference.get(key, HomologyGroup(0, ()))
        if ref.rank:
            if r % ref.rank:
                raise DecompositionError("rank is not a multiple of the Khovanov rank",
                                         {"bidegree": key, "rank": r, "khovanov": ref.rank})
            ratios.add(r // ref.rank)
        elif r:
            raise DecompositionError("rank where Khovanov homology is zero",
                                     {"bidegree": key, "rank": r})
        pt, pr = prime_powers(t), prime_powers(ref.torsion)
        if pr:
            n, rem = divmod(len(pt), len(pr))
            if rem or sorted(pr * n) != pt:
                raise DecompositionError("torsion is not a multiple of Khovanov torsion",
                                         {"bidegree": key, "torsion": t, "khovanov": list(ref.torsion)})
            ratios.add(n)
        elif pt:
            raise DecompositionError("torsion where Khovanov homology has none",
                                     {"bidegree": key, "torsion": t})
    if len(ratios) > 1:
        raise DecompositionError("copy count differs between bidegrees", {"ratios": sorted(ratios)})
    return ratios.pop() if ratios else 0


def diagramless_homology(ds: DiagramClassSet, sign_rule: str = "alpha") -> DiagramlessHomology:
    """Homology of the direct sum of the class complexes, with its copy count."""
    if not len(ds):
        return DiagramlessHomology({}, 0, {}, {}, [])
    for label, d in zip(ds.labels, ds.diagrams):
        if d.genus != 0:
            raise GenusError(f"{label}: diagram has genus {d.genus}")
    per_class = {}
    total: dict[tuple[int, int], tuple[int, list[int]]] = {}
    for label, d in zip(ds.labels, ds.diagrams):
        H = homology(assemble(d, sign_rule=sign_rule))
        per_class[label] = H
        for key, (r, t) in _kh_view(H, d).items():
            r0, t0 = total.get(key, (0, []))
            total[key] = (r0 + r, t0 + t)
    ref_c = viro_complex(ds.diagrams[0], normalize=True)
    reference = {g[:2]: h for g, h in homology(ref_c).items()}
    N = copy_count(total, reference)
    merged = direct_sum(list(per_class.values()))
    return DiagramlessHomology(merged, N, per_class, reference, duplicate_warnings(ds))


def crosscut_order_invariance(d: LinkDiagram, order: Sequence[int], sign_rule: str = "alpha") -> bool:
    """Homology (ranks and torsion per grading) is unchanged by reordering crosscuts."""
    return homology(assemble(d, sign_rule=sign_rule)) == \
        homology(assemble(reorder(d, order), sign_rule=sign_rule))


def exploratory_report(ds: DiagramClassSet, n_k: int | None = None) -> dict:
    """Copy count next to a user-supplied diagram count; informational only."""
    N = diagramless_homology(ds).N
    out = {"k": ds.k, "N": N, "classes": len(ds)}
    if n_k is not None:
        out["n_k"] = n_k
        out["within_bounds"] = n_k / 2 <= N <= n_k
    return out
