"""Diagram collections and invariant checks shared by the CLI and the tests."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import oracles
from .complex import (assemble, differential, graded_euler_characteristic, homology,
                      khovanov_homology, verify_d_squared)
from .diagram import LinkDiagram, braid_closure, mirror, parse_pd, reorder
from .diagramless import check_chain_map, psi_sigma
from .embedding import aligned_surface, boundary_slope, oracle_goeritz
from .frobenius import SYSTEMS, check_axioms
from .states import enhanced_states, enumerate_states, viro_partial
from .surface import cycle_basis, goeritz_matrix, state_gradings, state_signature

STANDARD = {
    "unknot": "O[1]",
    "curl-a": "X[1,2,2,1]",
    "curl-b": "X[2,2,1,1]",
    "hopf": "X[4,1,3,2] X[2,3,1,4]",
    "trefoil": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "figure-eight": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
}

# two-crossing unknot diagrams: pairs of curls, same or opposite turning
UNKNOT_K2 = {
    "pp-same": "X[1,2,2,3] X[3,4,4,1]",
    "pp-opp": "X[1,2,2,3] X[4,3,1,4]",
    "qq-same": "X[2,2,3,1] X[4,4,1,3]",
    "qq-opp": "X[2,2,3,1] X[3,1,4,4]",
    "pq-same": "X[1,2,2,3] X[4,4,1,3]",
    "pq-opp": "X[1,2,2,3] X[3,1,4,4]",
}

UNKNOT_K1 = {"curl-a": STANDARD["curl-a"], "curl-b": STANDARD["curl-b"]}

# named braid words (generator i, negative for the inverse) and strand counts
BRAIDS = {
    "trefoil-braid": ([1, 1, 1], 2),
    "torus-2-4": ([1, 1, 1, 1], 2),
    "cinquefoil": ([1, 1, 1, 1, 1], 2),
    "figure-eight-braid": ([1, -2, 1, -2], 3),
    "three-twist": ([1, 1, 1, 2, -1, 2], 3),
    "granny-piece": ([1, 1, -2, -2], 3),
    "borromean-like": ([1, -2, 1, -2, 1], 3),
}


def standard(name: str) -> LinkDiagram:
    if name in STANDARD:
        return parse_pd(STANDARD[name])
    if name in UNKNOT_K2:
        return parse_pd(UNKNOT_K2[name])
    word, n = BRAIDS[name]
    return braid_closure(word, n)


def random_diagram(rng: random.Random, max_k: int, min_k: int = 1) -> LinkDiagram:
    """Braid closure with 1..max_k crossings, random crossing order, maybe mirrored."""
    while True:
        n = rng.randint(2, 5)
        length = rng.randint(min_k, max_k)
        word = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)]
        d = braid_closure(word, n)
        if min_k <= d.k <= max_k and len(d.graph_components) == 1 and not d.loops:
            break
    order = list(range(d.k))
    rng.shuffle(order)
    d = reorder(d, order)
    return mirror(d) if rng.random() < 0.5 else d


def random_diagrams(count: int, max_k: int, seed: int = 0, min_k: int = 1) -> list[LinkDiagram]:
    rng = random.Random(seed)
    return [random_diagram(rng, max_k, min_k) for _ in range(count)]


def census(max_k: int, extra: int = 0, seed: int = 0) -> list[tuple[str, LinkDiagram]]:
    """Named diagrams with at most ``max_k`` crossings.

    The census holds the standard diagrams, the one- and two-crossing unknot
    diagrams, every two-strand braid closure up to rotation of the word,
    the named braids, and ``extra`` seeded random braid closures.
    """
    out: list[tuple[str, LinkDiagram]] = []
    for name in list(STANDARD) + list(UNKNOT_K2) + list(BRAIDS):
        d = standard(name)
        if d.k <= max_k:
            out.append((name, d))
    seen = set()
    for length in range(1, max_k + 1):
        for bits in range(1 << length):
            word = tuple(1 if (bits >> j) & 1 else -1 for j in range(length))
            canon = min(word[j:] + word[:j] for j in range(length))
            if canon in seen:
                continue
            seen.add(canon)
            out.append(("braid2" + "".join("+" if g > 0 else "-" for g in canon),
                        braid_closure(list(canon), 2)))
    for j, d in enumerate(random_diagrams(extra, max_k, seed)):
        out.append((f"random-{j}", d))
    return out


# --- checks ------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    count: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        msg = f"{status} {self.name}: {self.count} checked in {self.seconds:.1f}s"
        if self.failures:
            msg += "; first failure: " + self.failures[0]
        return msg


def _run(name: str, items: Iterable, fn: Callable[[object], list[str]]) -> CheckResult:
    t = time.perf_counter()
    fails: list[str] = []
    n = 0
    for item in items:
        n += 1
        fails += fn(item)
    return CheckResult(name, not fails, n, fails, time.perf_counter() - t)


def _named(ds: Sequence) -> list[tuple[str, LinkDiagram]]:
    return [x if isinstance(x, tuple) else (str(x), x) for x in ds]


def check_d_squared(diagrams: Sequence, rules: Sequence[str] = ("sigma", "alpha")) -> CheckResult:
    def one(item):
        name, d = item
        out = []
        for rule in rules:
            rep = verify_d_squared(differential(d, rule))
            if not rep.ok:
                out.append(f"{name} ({rule}): d^2 has {len(rep.witnesses)}+ nonzero entries")
        return out

    return _run("d^2 = 0", _named(diagrams), one)


def check_increments(diagrams: Sequence) -> CheckResult:
    """Every cube edge raises I by one and fixes J, K and B."""
    def one(item):
        name, d = item
        out = []
        for s in enhanced_states(d):
            g = state_gradings(s).as_tuple()
            for i, v in enumerate(s.markers, 1):
                if not v:
                    continue
                for t in viro_partial(s, i):
                    h = state_gradings(t).as_tuple()
                    if (h[0] - g[0], h[1:]) != (1, g[1:]):
                        out.append(f"{name}: {s.key} -> {t.key}: {g} -> {h}")
        return out

    return _run("grading increments", _named(diagrams), one)


def check_psi(diagrams: Sequence, rules: Sequence[str] = ("alpha", "sigma")) -> CheckResult:
    def one(item):
        name, d = item
        out = []
        for rule in rules:
            c = assemble(d, sign_rule=rule, check=False)
            for i in range(1, d.k):
                psi = psi_sigma(c, i, verify=False)
                bad = check_chain_map(psi)
                if bad:
                    out.append(f"{name} ({rule}) transposition {i}: {len(bad)} generators")
        return out

    return _run("psi commutes with d", _named(diagrams), one)


def check_goeritz_oracle(diagrams: Sequence, seed: int = 0) -> CheckResult:
    """Combinatorial Goeritz entries equal embedded linking numbers."""
    rng = random.Random(seed)

    def one(item):
        name, d = item
        out = []
        if not d.k:
            return out
        for m in enumerate_states(d):
            F = aligned_surface(d, m)
            basis = cycle_basis(F, rng)
            G = [list(r) for r in goeritz_matrix(F, basis).entries]
            O = oracle_goeritz(F, basis)
            if G != O:
                out.append(f"{name} {m}: {G} != {O}")
        return out

    return _run("Goeritz = embedded linking numbers", _named(diagrams), one)


def check_checkerboard(diagrams: Sequence) -> CheckResult:
    """Signatures on alternating diagrams agree with classical Goeritz matrices."""
    def one(item):
        name, d = item
        out = []
        if not oracles.is_alternating(d):
            return out
        for v in (True, False):
            G = oracles.checkerboard_goeritz(d, v)
            if G is None:
                out.append(f"{name}: no checkerboard colouring")
                continue
            a, b = oracles.float_signature(G), state_signature(d, (v,) * d.k)
            if a != b:
                out.append(f"{name} all-{'+' if v else '-'}: {a} != {b}")
        return out

    return _run("checkerboard signatures", _named(diagrams), one)


def check_slopes(diagrams: Sequence) -> CheckResult:
    """Each cube edge raises the embedded boundary slope by two."""
    def one(item):
        name, d = item
        out = []
        if not d.k:
            return out
        slope = {m: boundary_slope(aligned_surface(d, m)) for m in enumerate_states(d)}
        for m, s in slope.items():
            for p in range(d.k):
                if m[p]:
                    m2 = m[:p] + (False,) + m[p + 1:]
                    if slope[m2] - s != 2:
                        out.append(f"{name} {m} at {p + 1}: {s} -> {slope[m2]}")
        return out

    return _run("boundary slope +2 per edge", _named(diagrams), one)


def check_euler(diagrams: Sequence) -> CheckResult:
    """Chain-level, homology-level and state-sum Euler characteristics agree."""
    def one(item):
        name, d = item
        c = assemble(d)
        H = homology(c)
        if graded_euler_characteristic(c) != graded_euler_characteristic(H):
            return [f"{name}: chain and homology Euler characteristics differ"]
        kh: dict[int, int] = {}
        for (i, q), h in khovanov_homology(c, normalize=True, H=H).items():
            kh[q] = kh.get(q, 0) + (-1) ** i * h.rank
        kh = {q: v for q, v in sorted(kh.items()) if v}
        if kh != oracles.khovanov_euler(d):
            return [f"{name}: {kh} != state sum {oracles.khovanov_euler(d)}"]
        return []

    return _run("Euler characteristic = state sum", _named(diagrams), one)


def check_frobenius(names: Sequence[str] = ("f1", "f5")) -> CheckResult:
    def one(name):
        res = check_axioms(SYSTEMS[name])
        return [f"{name}: {k}" for k, v in res.items() if not v]

    return _run("Frobenius axioms", list(names), one)


def run_suite(level: str = "fast", systems: Sequence[str] = ("f1", "f5"),
              diagrams: Sequence | None = None) -> list[CheckResult]:
    """The invariant suite at ``fast`` or ``full`` scale, or on given diagrams."""
    if diagrams is not None:
        ds = _named(diagrams)
        small = [x for x in ds if x[1].k <= 5]
        return [check_frobenius(systems), check_d_squared(ds), check_increments(ds),
                check_psi(ds), check_euler(ds), check_goeritz_oracle(small),
                check_checkerboard(ds), check_slopes([x for x in ds if x[1].k <= 4])]
    if level == "fast":
        ds = census(3)
        return [check_frobenius(systems), check_d_squared(ds), check_increments(ds),
                check_psi(ds), check_euler(ds), check_goeritz_oracle(ds),
                check_checkerboard(ds), check_slopes(ds)]
    if level != "full":
        raise ValueError(f"unknown suite {level!r}")
    return [
        check_frobenius(systems),
        check_d_squared(random_diagrams(200, 8, seed=1)),
        check_increments(census(6, extra=10, seed=2)),
        check_goeritz_oracle(census(5, extra=10, seed=3)),
        check_checkerboard(census(6, extra=20, seed=4)),
        check_psi(census(6, extra=10, seed=5)),
        check_slopes(census(4, extra=10, seed=6)),
        check_euler(census(6, extra=10, seed=7)),
    ]
