import pytest

from dlkh import oracles
from dlkh.diagram import mirror, parse_pd
from dlkh.suites import standard


def test_bracket_of_unknot_diagrams():
    assert oracles.kauffman_bracket(parse_pd("O[1]")) == {0: 1}
    # a curl changes the bracket by -A^(+-3)
    assert oracles.kauffman_bracket(parse_pd("X[1,2,2,1]")) in ({3: -1}, {-3: -1})


@pytest.mark.parametrize("name, jones", [
    ("trefoil", {-4.0: -1, -3.0: 1, -1.0: 1}),
    ("figure-eight", {-2.0: 1, -1.0: -1, 0.0: 1, 1.0: -1, 2.0: 1}),
    ("hopf", {-2.5: -1, -0.5: -1}),
    ("unknot", {0.0: 1}),
    ("curl-a", {0.0: 1}),
])
def test_jones_polynomials(name, jones):
    assert oracles.jones_polynomial(standard(name)) == jones


def test_jones_of_mirror_inverts_t():
    j = oracles.jones_polynomial(standard("trefoil"))
    assert oracles.jones_polynomial(mirror(standard("trefoil"))) == {-e: c for e, c in sorted(j.items())}


@pytest.mark.parametrize("name", ["trefoil", "figure-eight", "hopf", "three-twist"])
def test_khovanov_euler_is_unnormalized_jones(name):
    # chi(Kh) = (q + 1/q) V(t) at t^(1/2) = -q; two independent state sums
    d = standard(name)
    expect = {}
    for e, c in oracles.jones_polynomial(d).items():
        for s in (1, -1):
            k = int(2 * e) + s
            expect[k] = expect.get(k, 0) + c * (-1) ** (int(2 * e) % 2)
    assert oracles.khovanov_euler(d) == {k: v for k, v in sorted(expect.items()) if v}


def test_alternating_detection():
    assert oracles.is_alternating(standard("trefoil"))
    assert oracles.is_alternating(standard("figure-eight"))
    assert not oracles.is_alternating(standard("three-twist"))


def test_circle_count_matches_bracket_degree_bounds():
    d = standard("trefoil")
    counts = {oracles.count_circles(d, (v,) * 3) for v in (True, False)}
    assert counts == {2, 3}


def test_float_signature():
    assert oracles.float_signature([]) == 0
    assert oracles.float_signature([[0, 1], [1, 0]]) == 0
    assert oracles.float_signature([[-2]]) == -1


def test_checkerboard_matrix_shapes():
    d = standard("trefoil")
    for v in (True, False):
        G = oracles.checkerboard_goeritz(d, v)
        assert G is not None
        assert all(G[i][j] == G[j][i] for i in range(len(G)) for j in range(len(G)))
