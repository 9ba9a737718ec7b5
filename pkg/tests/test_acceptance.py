"""Acceptance criteria, one test (or parametrized family) per criterion.

A summary line per criterion is printed at the end of the pytest run.
"""
import time
from collections import Counter, defaultdict

import pytest

from dlkh import oracles
from dlkh.complex import (assemble, differential, homology, khovanov_bidegree,
                          khovanov_homology, verify_d_squared)
from dlkh.diagram import parse_pd
from dlkh.diagramless import DiagramClassSet, diagramless_homology
from dlkh.states import enhanced_states
from dlkh.suites import (UNKNOT_K1, UNKNOT_K2, census, check_checkerboard, check_d_squared,
                         check_goeritz_oracle, check_increments, check_psi, check_slopes,
                         random_diagrams, standard)
from dlkh.surface import state_gradings


def class_set(pds: dict) -> DiagramClassSet:
    return DiagramClassSet([parse_pd(v) for v in pds.values()], list(pds))


def by_i_b(H) -> dict:
    out = defaultdict(int)
    for (i, j, k, b), h in H.items():
        assert not h.torsion
        out[(i, b)] += h.rank
    return dict(out)


@pytest.mark.criterion(1, "unknot k=0: Z at (0,-1,0,0) and (0,1,0,0)")
def test_c1_unknot_k0():
    t = time.perf_counter()
    d = parse_pd("O[1]")
    H = homology(assemble(d))
    got = {g: (h.rank, h.torsion) for g, h in H.items()}
    assert got == {(0, -1, 0, 0): (1, ()), (0, 1, 0, 0): (1, ())}
    assert diagramless_homology(DiagramClassSet([d], ["O"])).N == 1
    assert time.perf_counter() - t < 1.0


@pytest.mark.criterion(2, "unknot k=1: Z^2 at (i=0,b=0) and (i=0,b=1), N = 2")
def test_c2_unknot_k1():
    t = time.perf_counter()
    res = diagramless_homology(class_set(UNKNOT_K1))
    assert by_i_b(res.homology) == {(0, 0): 2, (0, 1): 2}
    assert res.N == 2
    assert time.perf_counter() - t < 1.0


@pytest.mark.criterion(3, "unknot k=2: Z^2+Z^2 at i=0 for b in {0,1,2}")
def test_c3_unknot_k2():
    t = time.perf_counter()
    res = diagramless_homology(class_set(UNKNOT_K2))
    assert by_i_b(res.homology) == {(0, 0): 4, (0, 1): 4, (0, 2): 4}
    # each B-bin splits as Z + Z over two J values, i.e. two copies of Z^2
    for b in (0, 1, 2):
        js = sorted(g[1] for g in res.homology if g[3] == b)
        assert len(js) == 2 and all(res.homology[(0, j, 2, b)].rank == 2 for j in js)
    assert res.N == 6
    assert time.perf_counter() - t < 1.0


def test_c3_two_active_crosscut_disk_sits_at_i0():
    # undotted disk with two active crosscuts: three facets joined by a path of bands
    found = set()
    for pd in UNKNOT_K2.values():
        for s in enhanced_states(parse_pd(pd)):
            if s.markers == (True, True) and s.signs == (-1, -1, -1):
                found.add(state_gradings(s).as_tuple())
    assert found == {(0, -1, 2, 2)}


PAPER_CURL_TABLE = Counter([
    (0, -1, 1, 1), (0, -1, 1, 0),
    (-1, 1, 1, 0), (0, 1, 1, 1), (0, 1, 1, 0), (1, -1, 1, 1),
    (-1, 3, 1, 0), (0, 1, 1, 1), (0, 1, 1, 0), (1, 1, 1, 1),
    (0, 3, 1, 1), (0, 3, 1, 0),
])


@pytest.mark.criterion(4, "state census of the two curls reproduces the 12-surface table")
def test_c4_curl_census():
    got = Counter(state_gradings(s).as_tuple()
                  for pd in UNKNOT_K1.values() for s in enhanced_states(parse_pd(pd)))
    assert sum(got.values()) == 12
    assert got == PAPER_CURL_TABLE


@pytest.mark.criterion(5, "d^2 = 0, both sign rules, 200 random diagrams <= 8 crossings")
def test_c5_d_squared():
    ds = random_diagrams(200, 8, seed=1)
    assert max(d.k for d in ds) == 8
    res = check_d_squared(ds)
    print(res.line())
    assert res.ok, res.failures[:3]
    assert res.count == 200
    assert res.seconds < 60


@pytest.mark.criterion(5, "d^2 = 0, both sign rules, 200 random diagrams <= 8 crossings")
def test_c5_negative_control():
    d = standard("hopf")
    rep = verify_d_squared(differential(d, lambda m, i: 1))
    assert not rep.ok and rep.witnesses


@pytest.mark.criterion(6, "every cube edge raises I by 1 and fixes J, K, B (<= 6 crossings)")
def test_c6_increments():
    ds = census(6, extra=10, seed=2)
    res = check_increments(ds)
    print(res.line())
    assert res.ok, res.failures[:3]
    assert res.seconds < 60


@pytest.mark.criterion(7, "Goeritz entries = embedded linking numbers; checkerboard signatures")
def test_c7_goeritz_oracle():
    res = check_goeritz_oracle(census(5, extra=10, seed=3))
    print(res.line())
    assert res.ok, res.failures[:3]


@pytest.mark.criterion(7, "Goeritz entries = embedded linking numbers; checkerboard signatures")
def test_c7_checkerboard():
    ds = census(6, extra=20, seed=4)
    assert sum(oracles.is_alternating(d) for _, d in ds) >= 10
    res = check_checkerboard(ds)
    print(res.line())
    assert res.ok, res.failures[:3]


@pytest.mark.criterion(8, "psi commutes with d for every adjacent transposition (<= 6 crossings)")
def test_c8_psi():
    res = check_psi(census(6, extra=10, seed=5))
    print(res.line())
    assert res.ok, res.failures[:3]


def _euler(H_kh) -> dict:
    out = defaultdict(int)
    for (i, q), h in H_kh.items():
        out[q] += (-1) ** i * h.rank
    return {q: v for q, v in sorted(out.items()) if v}


@pytest.mark.criterion(9, "single-class diagramless homology = Khovanov homology (N = 1)")
@pytest.mark.parametrize("name", ["trefoil", "figure-eight", "hopf"])
def test_c9_single_class(name):
    d = standard(name)
    res = diagramless_homology(DiagramClassSet([d], [name]))
    assert res.N == 1
    dl = {}
    for g, h in res.homology.items():
        key = khovanov_bidegree(g, d, normalize=True)
        assert key not in dl
        dl[key] = h
    kh = khovanov_homology(assemble(d, sign_rule="sigma"), normalize=True)
    assert dl == kh
    assert any(h.torsion for h in kh.values()) == (name != "hopf")
    assert _euler(dl) == oracles.khovanov_euler(d)


@pytest.mark.criterion(10, "boundary slope rises by 2 along every edge (<= 4 crossings)")
def test_c10_boundary_slope():
    res = check_slopes(census(4, extra=10, seed=6))
    print(res.line())
    assert res.ok, res.failures[:3]
    assert res.seconds < 120
