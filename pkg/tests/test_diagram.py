from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlkh import oracles
from dlkh.diagram import (IncidenceError, PDSyntaxError, braid_closure, mirror, parse_gauss,
                          parse_pd, relabel, reorder, serialize, swap_adjacent, validate)
from dlkh.suites import STANDARD, standard

TREFOIL = STANDARD["trefoil"]


def braid_words(max_len=7):
    gen = st.integers(1, 3).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(gen, min_size=1, max_size=max_len)


def test_free_loop():
    d = parse_pd("O[1]")
    assert (d.k, d.free_loops, d.arc_count) == (0, 1, 0)
    rep = validate(d)
    assert (rep.faces, rep.genus, rep.components) == (2, 0, 1)


def test_trefoil_record():
    d = parse_pd(TREFOIL)
    assert (d.k, len(d.arcs)) == (3, 6)
    rep = validate(d)
    assert rep.genus == 0 and rep.faces == 5 and rep.components == 1
    assert d.writhe == -3


def test_nonspherical_pd_is_a_warning_not_an_error():
    # arc pattern whose rotation system traces only three faces
    d = parse_pd("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]")
    rep = validate(d)
    assert rep.genus == 1 and not rep.spherical
    assert any("genus 1" in w for w in rep.warnings)


@pytest.mark.parametrize("text", ["X[1,2,2,1]", "X[1,1,2,2]"])
def test_curls(text):
    d = parse_pd(text)
    assert (d.k, d.arc_count) == (1, 2)
    assert validate(d).spherical


def test_incidence_failure_names_the_arc():
    with pytest.raises(IncidenceError) as e:
        parse_pd("X[1,2,3,4] X[4,3,2,7]")
    assert 7 in e.value.arcs


@pytest.mark.parametrize("text, pos", [("X[1,2,3]", 2), ("X[1,2,2,1] Y[3]", 11),
                                       ("X[1,a,2,2]", 2), ("X[0,1,1,0]", 2)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(PDSyntaxError) as e:
        parse_pd(text)
    assert e.value.position == pos


def test_wrapped_and_comma_separated():
    assert parse_pd("PD[X[1,2,2,1], O[3]]") == parse_pd("X[1,2,2,1] O[3]")


def test_mirror():
    d = parse_pd(TREFOIL)
    assert mirror(mirror(d)) == d
    assert mirror(d).writhe == 3
    u = parse_pd("O[1]")
    assert mirror(u) == u
    c = parse_pd("X[1,2,2,1]")
    assert mirror(c) != c and mirror(c).k == 1
    assert serialize(mirror(c)) == "X[2,2,1,1]"


def test_gauss_code():
    right = parse_gauss("O1+U2+O3+U1+O2+U3+")
    left = parse_gauss("O1-U2-O3-U1-O2-U3-")
    assert oracles.jones_polynomial(right) == {1.0: 1, 3.0: 1, 4.0: -1}
    assert oracles.jones_polynomial(left) == oracles.jones_polynomial(standard("trefoil"))


def test_reorder_and_swap():
    d = standard("figure-eight")
    e = swap_adjacent(d, 1)
    assert [c.slots for c in e.crossings] == [d.crossings[i].slots for i in (0, 2, 1, 3)]
    assert [c.index for c in e.crossings] == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        reorder(d, [0, 0, 1, 2])


def test_braid_closure_counts():
    d = braid_closure([1, 1, 1], 2)
    assert d.k == 3 and d.writhe == 3 and d.link_components == 1
    assert braid_closure([1, 1], 2).link_components == 2
    assert braid_closure([], 3).free_loops == 3


@given(braid_words())
def test_roundtrip_and_incidence(word):
    d = braid_closure(word, 4)
    assert parse_pd(serialize(d)) == d
    occ = Counter(a for c in d.crossings for a in c.slots)
    assert sum(occ.values()) == 4 * d.k
    assert set(occ.values()) <= {2}


@given(braid_words())
def test_faces_consume_every_dart_once(word):
    d = braid_closure(word, 4)
    darts = [x for f in d.faces for x in f]
    assert len(darts) == len(set(darts)) == 4 * d.k
    # Euler's formula on each connected piece of the 4-valent graph
    for comp in d.graph_components:
        v = len(comp)
        faces = sum(1 for f in d.faces if f[0][0] in comp)
        assert v - 2 * v + faces == 2


@given(braid_words())
def test_mirror_involution_negates_writhe(word):
    d = braid_closure(word, 4)
    m = mirror(d)
    assert mirror(m) == d
    assert m.writhe == -d.writhe and m.k == d.k


@given(braid_words(), st.randoms(use_true_random=False))
def test_relabel_and_reorder_preserve_structure(word, rnd):
    d = braid_closure(word, 4)
    order = list(range(d.k))
    rnd.shuffle(order)
    e = relabel(reorder(d, order))
    assert validate(e).as_dict() == validate(d).as_dict()
    assert oracles.kauffman_bracket(e) == oracles.kauffman_bracket(d)
