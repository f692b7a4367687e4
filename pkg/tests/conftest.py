"""Shared small-diagram corpus and fixture paths for the test suite."""

import os

import pytest

from knothom.diagram import PlanarDiagram, braid_closure

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def _kink_pos():
    return PlanarDiagram([(1, 1, 2, 2)], basepoint=1)


def _kink_neg():
    return PlanarDiagram([(1, 2, 2, 1)], basepoint=1)


# name -> diagram; all members have <= 10 crossings.
def build_corpus():
    corpus = {
        "unknot_kink_pos": _kink_pos(),
        "unknot_kink_neg": _kink_neg(),
        "hopf_pos": braid_closure([1, 1], 2),
        "hopf_neg": braid_closure([-1, -1], 2),
        "trefoil_right": braid_closure([1, 1, 1], 2),
        "trefoil_left": braid_closure([-1, -1, -1], 2),
        "trefoil_stabilized": braid_closure([1, 1, 1, 2], 3),
        "figure_eight": braid_closure([1, -2, 1, -2], 3),
        "solomon": braid_closure([1, 1, 1, 1], 2),
        "t25": braid_closure([1, 1, 1, 1, 1], 2),
        "t27": braid_closure([1, 1, 1, 1, 1, 1, 1], 2),
        "granny": braid_closure([1, 1, 1, 2, 2, 2], 3),
        "square": braid_closure([1, 1, 1, -2, -2, -2], 3),
        "5_2_like": braid_closure([1, 1, 1, 2, -1, 2], 3),
        "6_braid": braid_closure([1, -2, 1, -2, 1, -2], 3),
        "whitehead_like": braid_closure([1, 1, -2, 1, -2, -2], 3),
        "three_twist": braid_closure([1, 1, 2, -1, 2, 2], 3),
    }
    for name, D in corpus.items():
        assert D.n_crossings <= 10, name
    return corpus


CORPUS = build_corpus()

KNOT_CORPUS = {k: v for k, v in CORPUS.items() if v.n_components == 1}


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def knot_corpus():
    return KNOT_CORPUS
