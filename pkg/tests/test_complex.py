import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlkh import kernels, oracles
from dlkh.complex import (GenusError, GradedComplex, HomologyGroup, assemble, bridge_closed_form,
                          check_gradings, determinant, differential, graded_euler_characteristic,
                          homology, homology_json, homology_over_field, invariant_factors,
                          khovanov_bidegree, khovanov_homology, matmul, sign_bridge,
                          smith_normal_form, to_dot, verify_d_squared, viro_complex)
from dlkh.diagram import braid_closure, parse_pd
from dlkh.frobenius import F5
from dlkh.suites import census, standard

Z = HomologyGroup

# Khovanov homology of the left-handed trefoil, normalized (i, q) -> group.
# Frozen from the rational and mod-2 cross-computation below.
TREFOIL_KH = {
    (-3, -9): Z(1), (-2, -7): Z(0, (2,)), (-2, -5): Z(1), (0, -3): Z(1), (0, -1): Z(1),
}
FIGURE_EIGHT_KH = {
    (-2, -5): Z(1), (-1, -3): Z(0, (2,)), (-1, -1): Z(1), (0, -1): Z(1), (0, 1): Z(1),
    (1, 1): Z(1), (2, 3): Z(0, (2,)), (2, 5): Z(1),
}
HOPF_KH = {(-2, -6): Z(1), (-2, -4): Z(1), (0, -2): Z(1), (0, 0): Z(1)}


def test_unknot_k0_complex():
    c = assemble(parse_pd("O[1]"))
    assert sorted(c.gradings) == [(0, -1, 0, 0), (0, 1, 0, 0)]
    assert c.differential == {}
    assert graded_euler_characteristic(c) == {-1: 1, 1: 1}


@pytest.mark.parametrize("pd", ["X[1,2,2,1]", "X[2,2,1,1]"])
def test_curl_complex(pd):
    c = assemble(parse_pd(pd))
    assert c.size == 6
    total = sum(len(invariant_factors(c.matrix(g)[1])) for g in c.bins)
    assert total == 2
    H = homology(c)
    assert sum(h.rank for h in H.values()) == 2 and all(g[0] == 0 for g in H)


@pytest.mark.parametrize("name, table", [("trefoil", TREFOIL_KH), ("figure-eight", FIGURE_EIGHT_KH),
                                         ("hopf", HOPF_KH)])
def test_frozen_khovanov_tables(name, table):
    d = standard(name)
    for rule in ("sigma", "alpha"):
        assert khovanov_homology(assemble(d, sign_rule=rule), normalize=True) == table


def test_raw_gradings_shift_by_writhe():
    d = standard("trefoil")
    raw = khovanov_homology(assemble(d))
    assert raw == {(i + d.n_minus, q - d.n_plus + 2 * d.n_minus): h for (i, q), h in TREFOIL_KH.items()}
    for pd in ("X[1,2,2,1]", "X[2,2,1,1]"):
        curl = parse_pd(pd)
        c = assemble(curl)
        raw = {i for i, _ in khovanov_homology(c)}
        assert raw == {curl.n_minus}
        assert {i for i, _ in khovanov_homology(c, normalize=True)} == {0}
        assert {khovanov_bidegree(g, curl, normalize=True) for g in homology(c)} == {(0, -1), (0, 1)}


def _even(ts):
    return sum(1 for t in ts if t % 2 == 0)


@pytest.mark.parametrize("name", ["trefoil", "figure-eight", "hopf", "torus-2-4", "three-twist"])
def test_universal_coefficients(name):
    c = assemble(standard(name))
    H = homology(c)
    assert homology_over_field(c, 0) == {g: h.rank for g, h in H.items() if h.rank}
    mod2 = homology_over_field(c, 2)
    for g in set(c.gradings):
        nxt = (g[0] + 1,) + g[1:]
        h, h1 = H.get(g, Z(0)), H.get(nxt, Z(0))
        assert mod2.get(g, 0) == h.rank + _even(h.torsion) + _even(h1.torsion)


def test_euler_characteristic_chain_equals_homology():
    for name, d in census(4, extra=5, seed=31):
        c = assemble(d)
        assert graded_euler_characteristic(c) == graded_euler_characteristic(homology(c)), name


def test_trefoil_euler_matches_state_sum():
    d = standard("trefoil")
    kh = khovanov_homology(assemble(d), normalize=True)
    chi = {}
    for (i, q), h in kh.items():
        chi[q] = chi.get(q, 0) + (-1) ** i * h.rank
    assert {q: v for q, v in chi.items() if v} == oracles.khovanov_euler(d)


def test_edges_shift_only_i():
    for name, d in census(4):
        c = assemble(d)
        for (a, b) in c.differential:
            ga, gb = c.gradings[a], c.gradings[b]
            assert tuple(y - x for x, y in zip(ga, gb)) == (1, 0, 0, 0)


def test_viro_complex_agrees_with_surface_gradings():
    for name in ("trefoil", "figure-eight", "hopf"):
        d = standard(name)
        v = {g[:2]: h for g, h in homology(viro_complex(d, normalize=True)).items()}
        assert v == khovanov_homology(assemble(d), normalize=True)


def test_genus_refused():
    with pytest.raises(GenusError):
        assemble(parse_pd("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]"))


def test_f5_is_not_an_integer_homology_system():
    with pytest.raises(ValueError):
        assemble(parse_pd("O[1]"), F5)


def test_negative_control_all_plus_signs():
    rep = verify_d_squared(differential(standard("hopf"), lambda m, i: 1))
    assert not rep.ok


def test_sign_bridge_closed_form():
    for name, d in census(5):
        eps = sign_bridge(d)
        assert all(eps[m] == bridge_closed_form(m) for m in eps), name


# --- Smith normal form ------------------------------------------------------


@pytest.mark.parametrize("M, diag", [([[0]], [0]), ([[2, 0], [0, 3]], [1, 6]),
                                     ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
                                     ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12])])
def test_snf_examples(M, diag):
    U, S, V = smith_normal_form(M)
    assert [S[i][i] for i in range(len(diag))] == diag
    assert matmul(matmul(U, M), V) == S


def test_snf_of_identity_keeps_it():
    I3 = [[int(i == j) for j in range(3)] for i in range(3)]
    U, S, V = smith_normal_form(I3)
    assert S == I3


matrices = st.integers(1, 5).flatmap(lambda m: st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@given(matrices)
def test_snf_properties(M):
    U, S, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == S
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    m, n = len(M), len(M[0])
    assert all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = [S[i][i] for i in range(min(m, n))]
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz) and diag[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert invariant_factors(M) == nz
    for backend in ("python", "cython"):
        assert invariant_factors(M, backend) == nz


def _permuted(c: GradedComplex, rnd: random.Random) -> GradedComplex:
    perm = list(range(c.size))
    rnd.shuffle(perm)
    where = {old: new for new, old in enumerate(perm)}
    return GradedComplex(c.diagram, c.sign_rule, [c.generators[i] for i in perm],
                         [c.gradings[i] for i in perm],
                         {(where[a], where[b]): v for (a, b), v in c.differential.items()})


@given(st.sampled_from(["trefoil", "figure-eight", "hopf", "torus-2-4"]),
       st.randoms(use_true_random=False))
def test_homology_independent_of_generator_order(name, rnd):
    c = assemble(standard(name))
    assert homology(_permuted(c, rnd)) == homology(c)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6))
def test_d_squared_and_euler_on_random_braids(word):
    d = braid_closure(word, 3)
    for rule in ("sigma", "alpha"):
        c = assemble(d, sign_rule=rule)
        assert verify_d_squared(c).ok
        check_gradings(c)
    kh = khovanov_homology(assemble(d), normalize=True)
    chi = {}
    for (i, q), h in kh.items():
        chi[q] = chi.get(q, 0) + (-1) ** i * h.rank
    assert {q: v for q, v in sorted(chi.items()) if v} == oracles.khovanov_euler(d)


def test_json_and_dot():
    c = assemble(parse_pd("X[1,2,2,1]"))
    data = json.loads(homology_json(homology(c), {"sign_rule": "sigma"}))
    assert data["sign_rule"] == "sigma"
    assert {tuple(r["gradings"][x] for x in "ijkb") for r in data["homology"]} == set(homology(c))
    dot = to_dot(c)
    assert dot.startswith("digraph cube {") and dot.count("->") == len(c.differential)
    neg = sum(1 for v in c.differential.values() if v < 0)
    assert dot.count("arrowtail=odot") == neg


def test_kernel_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
