"""Lee deformation, spectral sequence pages, and the s-invariant."""

import pytest

from knothom.diagram import DiagramError
from knothom.khovanov import kh, total_dim
from knothom.algebra import QQ
from knothom.lee import (lee_homology, page_dims, pages_until_stable,
                         s_invariant)

from conftest import CORPUS, KNOT_CORPUS


S_ORACLE = {
    "unknot_kink_pos": 0,
    "unknot_kink_neg": 0,
    "trefoil_right": 2,
    "trefoil_left": -2,
    "trefoil_stabilized": 2,
    "figure_eight": 0,
    "t25": 4,          # positive torus knot: s = (p-1)(q-1)
    "t27": 6,
    "granny": 4,       # connected sum of two right trefoils
    "square": 0,       # slice
}


def test_s_invariant_oracle_values():
    for name, s in S_ORACLE.items():
        assert s_invariant(CORPUS[name]) == s, name


def test_lee_homology_of_knots_is_two_dimensional():
    for name, D in KNOT_CORPUS.items():
        dims, levels = lee_homology(D)
        assert dims == {0: 2}, name
        qmin, qmax = levels[0]
        assert qmax - qmin == 2, name


def test_lee_total_dim_of_links_is_two_to_components():
    for name in ("hopf_pos", "hopf_neg", "solomon"):
        dims, _ = lee_homology(CORPUS[name])
        assert sum(dims.values()) == 2 ** CORPUS[name].n_components, name


def test_e1_page_is_khovanov_homology():
    for name in ("trefoil_right", "figure_eight", "t25"):
        D = CORPUS[name]
        assert page_dims(D, 1) == kh(D, QQ), name


def test_pages_decrease_and_stabilize():
    for name in ("trefoil_right", "figure_eight", "granny"):
        D = CORPUS[name]
        seq = pages_until_stable(D)
        totals = [sum(d.values()) for _, d in seq]
        assert all(a >= b for a, b in zip(totals, totals[1:])), name
        assert totals[-1] == 2, name


def test_s_rejects_links():
    with pytest.raises(DiagramError):
        s_invariant(CORPUS["hopf_pos"])


def test_page_index_validation():
    with pytest.raises(ValueError):
        page_dims(CORPUS["trefoil_right"], 0)


def test_mirror_negates_s():
    for name in ("trefoil_right", "figure_eight", "granny", "5_2_like"):
        D = CORPUS[name]
        assert s_invariant(D.mirror()) == -s_invariant(D), name
