"""Acceptance suite: one test per headline criterion.

Criteria 1-7 exercise the 14-crossing genus-two mutant pair fixtures
(fixtures/k0.json, fixtures/k0tau.json) and the twist families generated
from them; 8-10 cover the grid Floer engine and the property suite.
"""

import json
import os
import random
import time

import pytest

from knothom.algebra import GF2, QQ
from knothom.cube import cube_complex
from knothom.diagram import (FamilySpec, braid_closure, generate_family,
                             load_diagram, skein_triple)
from knothom.gridhfk import (GridDiagram, hat_hfk, hfk_delta_collapse, tau)
from knothom.khovanov import (delta_collapse, graded_euler_characteristic,
                              kh, total_dim)
from knothom.lee import s_invariant
from knothom.skein import (LESInstance, family_closed_form, induction_step,
                           les_consistency)

from conftest import CORPUS, fixture_path

# published 26-dimensional tables for the mutant pair
KH_K0 = {(-7, -13): 1, (-6, -9): 1, (-4, -7): 1, (-3, -7): 1, (-3, -3): 1,
         (-2, -5): 1, (-2, -3): 1, (-1, -3): 1, (-1, -1): 1, (0, -3): 1,
         (0, -1): 2, (0, 1): 2, (1, 1): 2, (1, 3): 1, (2, 1): 1, (2, 3): 1,
         (2, 5): 1, (3, 3): 1, (3, 5): 1, (3, 7): 1, (4, 7): 1, (5, 7): 1,
         (6, 11): 1}
KH_K0T = {(-7, -13): 1, (-6, -9): 1, (-5, -9): 1, (-4, -9): 1, (-4, -7): 1,
          (-4, -5): 1, (-3, -7): 1, (-3, -5): 1, (-3, -3): 1, (-2, -5): 1,
          (-2, -3): 2, (-1, -3): 1, (-1, -1): 1, (-1, 1): 1, (0, -1): 2,
          (0, 1): 2, (1, 1): 1, (1, 3): 1, (2, 1): 1, (2, 5): 1, (3, 5): 1,
          (5, 7): 1, (6, 11): 1}

DELTA_K0 = {-3: 4, -1: 11, 1: 9, 3: 2}
DELTA_K0T = {-3: 2, -1: 9, 1: 11, 3: 4}

_cache = {}


def pair_diagram(name):
    path = fixture_path(f"{name}.json")
    if not os.path.exists(path):
        pytest.fail(f"fixture {name}.json is missing: the band-sum "
                    "reconstruction search did not produce a diagram")
    return load_diagram(path)


def pair_kh(name):
    if name not in _cache:
        t0 = time.time()
        _cache[name] = kh(pair_diagram(name), QQ)
        _cache[name + "_time"] = time.time() - t0
    return _cache[name]


def family_member(name, n):
    key = (name, n)
    if key not in _cache:
        _cache[key] = generate_family(FamilySpec(pair_diagram(name), n))
    return _cache[key]


def test_criterion_01_kh_k0_matches_table_under_60s():
    assert pair_kh("k0") == KH_K0
    assert total_dim(KH_K0) == 26
    assert _cache["k0_time"] < 60.0


def test_criterion_02_kh_k0tau_table_delta_collapses_and_swap():
    assert pair_kh("k0tau") == KH_K0T
    assert delta_collapse(pair_kh("k0")) == DELTA_K0
    assert delta_collapse(pair_kh("k0tau")) == DELTA_K0T
    assert {-k: v for k, v in DELTA_K0.items()} == DELTA_K0T


def test_criterion_03_families_match_closed_forms_under_10_min():
    t0 = time.time()
    for name, mutant in (("k0", False), ("k0tau", True)):
        for n in (8, 9, 10):
            D = family_member(name, n)
            assert D.n_crossings == 14 + n, (name, n)
            dims = kh(D, QQ)
            assert dims == family_closed_form(n, mutant=mutant), (name, n)
            assert total_dim(dims) == 26
    assert time.time() - t0 < 600.0
    # induction chain: direct n=9,10 tables also follow from the n=8 base
    for name, mutant in (("k0", False), ("k0tau", True)):
        table = kh(family_member(name, 8), QQ)
        for n in (9, 10):
            table = induction_step(table, n, mutant=mutant)["table"]
            assert table == kh(family_member(name, n), QQ), (name, n)


def test_criterion_04_s_invariants_vanish_on_families():
    for name in ("k0", "k0tau"):
        for n in (0, 1, 2):
            D = pair_diagram(name) if n == 0 else family_member(name, n)
            assert s_invariant(D) == 0, (name, n)
    assert s_invariant(CORPUS["unknot_kink_pos"]) == 0
    assert abs(s_invariant(CORPUS["trefoil_right"])) == 2


def test_criterion_05_jones_equality_for_every_computed_pair():
    for n in (0, 1, 2):
        a = pair_kh("k0") if n == 0 else kh(family_member("k0", n), QQ)
        b = pair_kh("k0tau") if n == 0 else kh(family_member("k0tau", n), QQ)
        assert (graded_euler_characteristic(a)
                == graded_euler_characteristic(b)), n
    for n in (8, 9, 10):
        assert (graded_euler_characteristic(family_closed_form(n))
                == graded_euler_characteristic(
                    family_closed_form(n, mutant=True))), n


def test_criterion_06_reduced_f2_tables_identical():
    a = pair_diagram("k0").with_basepoint(1)
    b = pair_diagram("k0tau").with_basepoint(1)
    ra = kh(a, GF2, reduced=True)
    rb = kh(b, GF2, reduced=True)
    assert ra == rb
    assert total_dim(ra) % 2 == 1


def test_criterion_07_les_consistency_families_random_and_faults():
    # family triples (K_n, unlink, K_{n-1}) at the band crossing, n <= 4
    for name in ("k0", "k0tau"):
        for n in (1, 2, 3, 4):
            D = family_member(name, n)
            band = D.n_crossings - 1        # twist crossings are appended
            inst = LESInstance(skein_triple(D, band))
            assert inst.triple.D0.n_components == 2, (name, n)
            rep = les_consistency(inst)
            assert rep["pass"], (name, n, rep["violations"])
    # >= 20 random small triples
    rng = random.Random(12)
    done = 0
    while done < 20:
        strands = rng.randint(2, 3)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1)
                for _ in range(rng.randint(2, 6))]
        D = braid_closure(word, strands)
        pos = [i for i, s in enumerate(D.signs) if s == 1]
        if not pos:
            continue
        inst = LESInstance(skein_triple(D, rng.choice(pos)))
        assert les_consistency(inst)["pass"], word
        done += 1
    # fault injection must be detected
    inst = LESInstance(skein_triple(CORPUS["trefoil_right"], 0))
    bad = {(i, q + 2): d for (i, q), d in inst.dims_d1.items()}
    assert not les_consistency(inst, dims_d1=bad)["pass"]


GRIDS = {name: GridDiagram.load(fixture_path(f"grid_{name}.json"))
         for name in ("unknot", "unlink2", "trefoil", "trefoil_alt", "fig8")}


def test_criterion_08_grid_hfk_oracles_symmetry_and_tau():
    assert hat_hfk(GRIDS["unknot"]) == {(0, 0): 1}
    assert hat_hfk(GRIDS["unlink2"]) == {(0, 0): 1, (-1, 0): 1}
    assert hat_hfk(GRIDS["trefoil"]) == {(2, 1): 1, (1, 0): 1, (0, -1): 1}
    assert hat_hfk(GRIDS["trefoil_alt"]) == hat_hfk(GRIDS["trefoil"])
    assert hat_hfk(GRIDS["fig8"]) == {(1, 1): 1, (0, 0): 3, (-1, -1): 1}
    for name, G in GRIDS.items():
        dims = hat_hfk(G)
        assert dims == {(m - 2 * a, -a): d
                        for (m, a), d in dims.items()}, name
    assert tau(GRIDS["unknot"]) == 0
    assert abs(tau(GRIDS["trefoil"])) == 1


def test_criterion_09_hfk_of_the_pair_not_reproducible_substitutes():
    # Direct grid HFK of the 14-crossing pair is NOT REPRODUCIBLE at desk
    # scale (grids of that size are far beyond the guard); the published
    # tables are checked at the data level instead.
    hfk0 = {(m, a): d for m, a, d in
            json.load(open(fixture_path("hfk_k0.json")))["dims"]}
    hfk0t = {(m, a): d for m, a, d in
             json.load(open(fixture_path("hfk_k0tau.json")))["dims"]}
    assert sum(hfk0.values()) == 17 and sum(hfk0t.values()) == 17
    for dims in (hfk0, hfk0t):   # conjugation symmetry of the data
        assert dims == {(m - 2 * a, -a): d for (m, a), d in dims.items()}
    c0 = hfk_delta_collapse(hfk0)
    ct = hfk_delta_collapse(hfk0t)
    assert {-k: v for k, v in c0.items()} == ct   # delta-swap, HFK side
    # small-knot oracle equivalence of the engine itself
    assert hfk_delta_collapse(hat_hfk(GRIDS["trefoil"])) == {-1: 3}
    assert hfk_delta_collapse(hat_hfk(GRIDS["fig8"])) == {0: 5}


def test_criterion_10_property_suite():
    # scanning pipeline == naive cube on the whole <= 10-crossing corpus
    for name, D in CORPUS.items():
        for field in (QQ, GF2):
            assert (kh(D, field, method="scan")
                    == kh(D, field, method="naive")), (name, field.name)
        cube_complex(D, QQ).check_d_squared()
    # homology invariance under gaussian elimination, 100 random pivots
    rng = random.Random(99)
    trials = 0
    while trials < 100:
        D = CORPUS[rng.choice(list(CORPUS))]
        c = cube_complex(D, QQ if trials % 2 else GF2)
        before = c.homology_dims()
        for _ in range(rng.randint(1, 3)):
            pivot = None
            for (i, q), m in c.diffs.items():
                for (r, cc), v in m.entries.items():
                    if c.field.is_unit(v) and (v == c.field.one
                                               or v == c.field.neg(c.field.one)):
                        pivot = (i, q, r, cc)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            c = c.gaussian_eliminate(*pivot)
        assert c.homology_dims() == before
        trials += 1
    # mirror duality on the corpus
    for name, D in CORPUS.items():
        dims = kh(D, QQ)
        assert kh(D.mirror(), QQ) == {(-i, -q): d
                                      for (i, q), d in dims.items()}, name
