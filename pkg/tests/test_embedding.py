import pytest

from dlkh.diagram import parse_pd
from dlkh.embedding import (EmbeddingError, aligned_surface, boundary_slope, draw, embed,
                            linking_number, oracle_goeritz)
from dlkh.states import enumerate_states
from dlkh.suites import standard
from dlkh.surface import cycle_basis, goeritz_matrix

SQUARE = [(0, 0, 0), (40, 0, 0), (40, 40, 0), (0, 40, 0)]


def test_parallel_squares_are_unlinked():
    other = [(x, y, 10) for x, y, _ in SQUARE]
    assert linking_number(SQUARE, other) == 0


def test_hopf_rectangles():
    ring = [(20, 20, -10), (60, 20, -10), (60, 20, 10), (20, 20, 10)]
    lk = linking_number(SQUARE, ring)
    assert abs(lk) == 1
    assert linking_number(ring, SQUARE) == lk
    assert linking_number(SQUARE, list(reversed(ring))) == -lk


def test_linking_is_projection_independent():
    ring = [(20, 20, -10), (60, 20, -10), (60, 20, 10), (20, 20, 10)]
    assert {linking_number(SQUARE, ring, seed=s) for s in range(8)} == {linking_number(SQUARE, ring)}


def test_intersecting_curves_are_rejected():
    # passes through the point (20, 0, 0) of the square's first edge
    through = [(20, 0, -10), (20, 0, 10), (20, -20, 10), (20, -20, -10)]
    with pytest.raises(EmbeddingError):
        linking_number(SQUARE, through)


def test_drawing_is_cached_and_planar():
    d = standard("figure-eight")
    D = draw(d)
    assert draw(d) is D
    assert len(set(D.port.values())) == len(D.port)


@pytest.mark.parametrize("pd, slopes", [("X[1,2,2,1]", {(True,): -2, (False,): 0}),
                                        ("X[2,2,1,1]", {(True,): 0, (False,): 2})])
def test_curl_slopes(pd, slopes):
    d = parse_pd(pd)
    assert {m: boundary_slope(aligned_surface(d, m)) for m in enumerate_states(d)} == slopes


def test_mobius_slopes_have_opposite_signs():
    active = boundary_slope(aligned_surface(parse_pd("X[1,2,2,1]"), (True,)))
    inactive = boundary_slope(aligned_surface(parse_pd("X[2,2,1,1]"), (False,)))
    assert active == -inactive == -2


def test_oracle_matches_goeritz_on_trefoil():
    d = standard("trefoil")
    for m in enumerate_states(d):
        F = aligned_surface(d, m)
        basis = cycle_basis(F)
        assert oracle_goeritz(F, basis) == [list(r) for r in goeritz_matrix(F, basis).entries]
        E = embed(F, basis)
        assert len(E.curves) == len(E.pushoffs) == len(basis)
