import json
from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlkh import oracles
from dlkh.diagram import braid_closure, parse_pd
from dlkh.states import (EnhancedState, alpha_sign, enhanced_states, enumerate_states,
                         khovanov_sign, resolve, viro_partial)
from dlkh.suites import census, standard

CURL_SPLIT = parse_pd("X[1,2,2,1]")  # + marker gives one circle
CURL_MERGE = parse_pd("X[2,2,1,1]")  # + marker gives two circles


def test_resolve_examples():
    assert len(resolve(parse_pd("O[1]"), ()).circles) == 1
    counts = {m: len(resolve(CURL_SPLIT, m).circles) for m in [(True,), (False,)]}
    assert counts == {(True,): 1, (False,): 2}
    t = standard("trefoil")
    const = {len(resolve(t, (v,) * 3).circles) for v in (True, False)}
    assert const == {2, 3}


def test_every_crossing_has_two_sites():
    d = standard("figure-eight")
    for m in enumerate_states(d):
        sites = [s.crossing for c in resolve(d, m).circles for s in c.sites]
        assert sorted(sites) == sorted(list(range(d.k)) * 2)


def test_enumerate_states():
    assert enumerate_states(parse_pd("O[1]")) == [()]
    ms = enumerate_states(standard("trefoil"))
    assert len(ms) == len(set(ms)) == 8
    assert sum(1 for _ in enhanced_states(CURL_SPLIT)) == 6
    assert sum(1 for _ in enhanced_states(CURL_MERGE)) == 6


def test_sign_count_is_checked():
    with pytest.raises(ValueError):
        EnhancedState(CURL_SPLIT, (True,), (1, 1))


def test_split_of_plus_circle():
    out = viro_partial(EnhancedState(CURL_SPLIT, (True,), (1,)), 1)
    assert [(s.markers, s.signs) for s in out] == [((False,), (1, 1))]


def test_split_of_minus_circle():
    out = viro_partial(EnhancedState(CURL_SPLIT, (True,), (-1,)), 1)
    assert sorted(s.signs for s in out) == [(-1, 1), (1, -1)]
    assert set(out.values()) == {1}


@pytest.mark.parametrize("signs, expect", [((1, 1), []), ((-1, -1), [(-1,)]),
                                           ((1, -1), [(1,)]), ((-1, 1), [(1,)])])
def test_merges(signs, expect):
    out = viro_partial(EnhancedState(CURL_MERGE, (True,), signs), 1)
    assert [s.signs for s in out] == expect


def test_partial_needs_positive_marker():
    with pytest.raises(ValueError):
        viro_partial(EnhancedState(CURL_SPLIT, (False,), (1, 1)), 1)


def test_khovanov_sign_examples():
    assert khovanov_sign((True, True, True), 1) == 1
    assert khovanov_sign((True, True, True), 3) == 1
    assert khovanov_sign((True, True, False), 2) == -1
    assert alpha_sign((False, True, True), 2) == -1
    with pytest.raises(ValueError):
        khovanov_sign((True, False), 2)


def test_json_dump():
    s = EnhancedState(CURL_MERGE, (True,), (1, -1))
    data = json.loads(s.to_json())
    assert data["markers"] == "+"
    assert [c["sign"] for c in data["circles"]] == ["+", "-"]
    assert sorted(a for c in data["circles"] for a in c["arcs"]) == [1, 2]


def test_circle_counts_agree_with_independent_tracer():
    for name, d in census(4, extra=5, seed=11):
        for m in enumerate_states(d):
            assert len(resolve(d, m).circles) == oracles.count_circles(d, m), name


def _double(s, i, j, rule):
    acc = defaultdict(int)
    for t, a in viro_partial(s, i).items():
        for u, b in viro_partial(t, j).items():
            acc[u.key] += a * b * rule(s, i) * rule(t, j)
    return acc


@pytest.mark.parametrize("rule", [khovanov_sign, alpha_sign])
def test_squares_anticommute(rule):
    for name, d in census(4, extra=10, seed=12):
        for s in enhanced_states(d):
            pos = [i for i, v in enumerate(s.markers, 1) if v]
            for a in pos:
                for b in pos:
                    if a < b:
                        x, y = _double(s, a, b, rule), _double(s, b, a, rule)
                        keys = set(x) | set(y)
                        assert all(x[k] + y[k] == 0 for k in keys), (name, s, a, b)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6))
def test_enhanced_count_is_sum_of_powers(word):
    d = braid_closure(word, 3)
    total = sum(2 ** len(resolve(d, m).circles) for m in enumerate_states(d))
    assert total == sum(1 for _ in enhanced_states(d))
