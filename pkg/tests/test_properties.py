"""Property suite: pipeline equivalences and structural invariants on
randomly generated diagrams."""

from hypothesis import given, settings, strategies as st

from knothom.algebra import GF2, QQ
from knothom.cube import cube_complex
from knothom.diagram import braid_closure
from knothom.khovanov import (delta_collapse, graded_euler_characteristic,
                              kh, total_dim)
from knothom.lee import lee_homology
from knothom.scan import scan

from conftest import CORPUS


def test_cube_d_squared_zero_on_corpus():
    for name, D in CORPUS.items():
        for field in (QQ, GF2):
            cube_complex(D, field).check_d_squared()
        if D.n_components == 1:
            cube_complex(D.with_basepoint(1), GF2,
                         reduced=True).check_d_squared()


braid_words = st.lists(
    st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=7)


@given(braid_words)
@settings(max_examples=40, deadline=None)
def test_scan_equals_naive_on_random_braids(word):
    strands = max(abs(g) for g in word) + 1
    D = braid_closure(word, strands)
    for field in (QQ, GF2):
        assert kh(D, field, method="scan") == kh(D, field, method="naive")


@given(braid_words)
@settings(max_examples=30, deadline=None)
def test_mirror_duality_random_braids(word):
    strands = max(abs(g) for g in word) + 1
    D = braid_closure(word, strands)
    dims = kh(D, QQ)
    assert kh(D.mirror(), QQ) == {(-i, -q): d for (i, q), d in dims.items()}


@given(braid_words)
@settings(max_examples=30, deadline=None)
def test_euler_characteristic_from_either_pipeline(word):
    strands = max(abs(g) for g in word) + 1
    D = braid_closure(word, strands)
    assert (graded_euler_characteristic(kh(D, QQ))
            == graded_euler_characteristic(kh(D, GF2)))


@given(braid_words)
@settings(max_examples=25, deadline=None)
def test_lee_total_dim_is_two_to_components(word):
    strands = max(abs(g) for g in word) + 1
    D = braid_closure(word, strands)
    if D.free_loops:
        return
    dims, _ = lee_homology(D)
    assert sum(dims.values()) == 2 ** D.n_components


@given(braid_words)
@settings(max_examples=25, deadline=None)
def test_f2_dims_dominate_q_dims(word):
    # universal coefficients: F2 dims >= Q dims cellwise
    strands = max(abs(g) for g in word) + 1
    D = braid_closure(word, strands)
    q = kh(D, QQ)
    f2 = kh(D, GF2)
    assert all(f2.get(k, 0) >= d for k, d in q.items())
    assert (total_dim(f2) - total_dim(q)) % 2 == 0


def test_scan_order_modes_agree():
    for name in ("figure_eight", "granny", "whitehead_like"):
        D = CORPUS[name]
        base = kh(D, QQ)
        for mode in ("given", "greedy"):
            sc = scan(D, 0, QQ, order_mode=mode)
            dims = {}
            for pairs, q, h in sc.objects.values():
                dims[(h, q)] = dims.get((h, q), 0) + 1
            shifted = {(i - D.n_minus, q + D.n_plus - 2 * D.n_minus): d
                       for (i, q), d in dims.items()}
            assert shifted == base, (name, mode)


def test_delta_collapse_preserves_total():
    for name, D in CORPUS.items():
        dims = kh(D, QQ)
        assert sum(delta_collapse(dims).values()) == total_dim(dims), name
