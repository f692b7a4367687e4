"""Planar diagram codes: parsing, combinatorics, resolutions, band sites."""

import json

import pytest

from knothom.diagram import (DiagramError, FamilySpec, PlanarDiagram,
                             braid_closure, generate_family, load_diagram,
                             parse_pd, skein_triple)

from conftest import CORPUS, fixture_path


def test_parse_pd_text_roundtrip():
    D = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    assert D.n_crossings == 3
    assert D.n_components == 1
    assert abs(sum(D.signs)) == 3  # a trefoil diagram


def test_parse_pd_json_forms():
    obj = {"pd": [[1, 1, 2, 2]], "basepoint": 1}
    D = parse_pd(json.dumps(obj))
    assert D.basepoint == 1
    assert D.n_crossings == 1
    D2 = parse_pd(json.dumps([[1, 1, 2, 2]]))
    assert D2.crossings == D.crossings


def test_parse_rejects_garbage():
    with pytest.raises(DiagramError):
        parse_pd("PD[X[1,2,3]]")
    with pytest.raises(DiagramError):
        parse_pd("not a diagram")
    with pytest.raises(DiagramError):
        parse_pd("PD[]")
    with pytest.raises(DiagramError):
        parse_pd(json.dumps({"nope": []}))


def test_to_json_roundtrip_corpus():
    for name, D in CORPUS.items():
        D2 = parse_pd(D.to_json())
        assert D2.crossings == D.crossings, name
        assert D2.n_components == D.n_components, name


def test_signs_and_writhe():
    rt = CORPUS["trefoil_right"]
    lt = CORPUS["trefoil_left"]
    assert (rt.n_plus, rt.n_minus) == (3, 0)
    assert (lt.n_plus, lt.n_minus) == (0, 3)


def test_mirror_swaps_signs():
    for name, D in CORPUS.items():
        M = D.mirror()
        assert (M.n_plus, M.n_minus) == (D.n_minus, D.n_plus), name
        assert M.n_components == D.n_components, name


def test_component_counts():
    assert CORPUS["hopf_pos"].n_components == 2
    assert CORPUS["solomon"].n_components == 2
    assert CORPUS["trefoil_right"].n_components == 1
    assert CORPUS["figure_eight"].n_components == 1


def test_genus_zero_corpus():
    for name, D in CORPUS.items():
        assert D.genus() == 0, name


def test_resolution_changes_crossing_count():
    D = CORPUS["trefoil_right"]
    for s in (0, 1):
        R = D.resolve(0, s)
        assert R.n_crossings == 2
        assert R.genus() == 0


def test_braid_closure_unused_strand_becomes_free_loop():
    D = braid_closure([1, 1], 3)
    assert D.free_loops == 1
    assert D.n_components == 3  # hopf components plus the free loop


def test_braid_closure_errors():
    with pytest.raises(DiagramError):
        braid_closure([1], 1)
    with pytest.raises(DiagramError):
        braid_closure([5], 3)


def test_skein_triple_counts():
    D = CORPUS["trefoil_right"]
    t = skein_triple(D, 0)
    assert t.counts["D"] == (3, 0)
    assert t.D0.n_crossings == 2 and t.D1.n_crossings == 2


def test_skein_triple_requires_positive_crossing():
    D = CORPUS["trefoil_left"]
    with pytest.raises(DiagramError):
        skein_triple(D, 0)
    with pytest.raises(DiagramError):
        skein_triple(CORPUS["trefoil_right"], 7)


def test_family_spec_requires_band_site():
    D = CORPUS["trefoil_right"]
    with pytest.raises(DiagramError):
        FamilySpec(D, 1)
    with pytest.raises(DiagramError):
        FamilySpec(D, -1, band_site=(1, 1))


def test_band_twist_requires_face_adjacent_site():
    # arcs 1 and 2 of the trefoil do not cobound a face, so no planar
    # twist crossing exists between them
    D = CORPUS["trefoil_right"]
    site = PlanarDiagram(D.crossings, band_site=(1, 2))
    with pytest.raises(DiagramError):
        site.insert_band_twist()


def test_band_twist_at_face_adjacent_arcs():
    # arcs 2 and 4 cobound a face: the twist is a positive crossing whose
    # 0-smoothing cuts the diagram into two components
    D = CORPUS["trefoil_right"]
    site = PlanarDiagram(D.crossings, band_site=(2, 4))
    D1 = site.insert_band_twist()
    idx = D1.n_crossings - 1
    assert D1.n_crossings == D.n_crossings + 1
    assert D1.signs[idx] == 1
    assert D1.n_components == 1
    assert D1.resolve(idx, 0).n_components == 2


def test_generate_family_zero_twists_is_base():
    base = load_diagram(fixture_path("unknot.json"))
    base = PlanarDiagram(base.crossings, basepoint=base.basepoint,
                         band_site=(2, 2))
    out = generate_family(FamilySpec(base, 0))
    assert out.crossings == base.crossings


def test_load_diagram_fixture():
    D = load_diagram(fixture_path("unknot.json"))
    assert D.n_crossings == 1 and D.n_components == 1
