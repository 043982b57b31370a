import pytest

from _support import random_reflexive, seeded
from latpoly.cws import parse_cws, polytope_from_cws
from latpoly.hodge import hodge_numbers
from latpoly.polytope import PolytopeError, complete_points, dual


@pytest.mark.parametrize("text, h11, h21", [
    ("5 1 1 1 1 1", 1, 101),
    ("84 1 1 12 28 42", 11, 491),
    ("8 4 1 1 1 1 0  6 3 1 0 1 0 1", 2, 128),
    ("6 1 1 1 1 2", 1, 103),
    ("8 1 1 2 2 2", 2, 86),
])
def test_known_threefolds(text, h11, h21):
    m = polytope_from_cws(parse_cws(text))
    h = hodge_numbers(m)
    assert (h.h11, h.h1_dm2, h.euler) == (h11, h21, 2 * (h11 - h21))
    # mirror symmetry swaps the two numbers
    hd = hodge_numbers(complete_points(dual(m)))
    assert (hd.h11, hd.h1_dm2) == (h21, h11)


def test_k3_surfaces_have_rank_twenty_lattice():
    # Picard ranks of a mirror pair of K3 families add up to 20 plus the correction
    rng = seeded(4)
    for p in random_reflexive(rng, 3, 15):
        h = hodge_numbers(p)
        hd = hodge_numbers(complete_points(dual(p)))
        assert h.h11 + hd.h11 == 20 + h.correction
        assert h.k3 == (h.h11, h.correction)


def test_rejects_non_reflexive():
    from _support import vertex_polytope
    with pytest.raises(PolytopeError):
        hodge_numbers(vertex_polytope([(2, 0, 0), (0, 2, 0), (0, 0, 2), (-2, -2, -2)]))
