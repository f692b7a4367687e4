"""Locate band-twist sites on the matched band-sum diagrams.

The interleaved-passage search (find_band_fixtures.py) produced diagrams
whose Khovanov homology matches the published 14-crossing tables.  This
script finds, for each match, the arc pairs where a positive half-twist
can be inserted (arcs cobounding a face, insertion planar, 0-smoothing a
2-component unlink) and keeps the sites whose twist family reproduces the
published closed-form stable tables, verified at n = 8.

Run:  python3 tools/find_twist_sites.py
"""

from __future__ import annotations

import json
import os
import sys
from itertools import combinations

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from knothom.algebra import QQ                                   # noqa: E402
from knothom.diagram import (DiagramError, FamilySpec,           # noqa: E402
                             PlanarDiagram, generate_family)
from knothom.khovanov import kh                                  # noqa: E402
from knothom.skein import UNLINK_KH, family_closed_form          # noqa: E402
from find_band_fixtures import KH_K0, KH_K0T, band_tuples        # noqa: E402

MATCHES = {                       # (core index, over/under bits) per knot
    "k0": [(311, (0, 1, 1, 0, 0, 1, 1)), (315, (1, 0, 0, 1, 1, 0, 0))],
    "k0tau": [(311, (1, 0, 0, 1, 0, 1, 0)), (315, (0, 1, 1, 0, 1, 0, 1))],
}
TARGETS = {"k0": KH_K0, "k0tau": KH_K0T}


def load_cores():
    with open(os.path.join(os.path.dirname(__file__),
                           "_cores_cache.json")) as fh:
        return [(tuple(oa), tuple(ob), tuple(d)) for oa, ob, d
                in json.load(fh)]


def candidate_sites(D):
    """Arc pairs admitting a planar positive band-cut insertion whose
    0-smoothing is a diagram of the 2-component unlink."""
    out = []
    for a, b in combinations(sorted(D.arcs), 2):
        trial = PlanarDiagram(D.crossings, D.free_loops, D.basepoint, (a, b))
        try:
            D1 = trial.insert_band_twist()
        except DiagramError:
            continue
        D0 = D1.resolve(D1.n_crossings - 1, 0)
        if D0.n_components != 2:
            continue
        if kh(D0, QQ) != UNLINK_KH:
            continue
        out.append(((a, b), D1))
    return out


def main():
    cores = load_cores()
    found = {}
    for name, entries in MATCHES.items():
        target = TARGETS[name]
        mutant = name == "k0tau"
        stable = family_closed_form(8, mutant=mutant)
        for ci, overs in entries:
            oa, ob, dirs = cores[ci]
            tuples, _ = band_tuples(oa, ob, dirs, overs)
            D = PlanarDiagram(tuples, basepoint=1)
            assert kh(D, QQ) == target, (name, ci)
            sites = candidate_sites(D)
            print(f"{name} core {ci}: {len(sites)} unlink-cut sites",
                  flush=True)
            for site, D1 in sites:
                k1 = kh(D1, QQ)
                trivial = k1 == target
                print(f"  site {site}: kh(K1) "
                      f"{'== kh(K0) (trivial twist)' if trivial else 'new'}",
                      flush=True)
                if trivial:
                    continue
                spec = FamilySpec(PlanarDiagram(D.crossings, basepoint=1,
                                                band_site=site), 8)
                k8 = kh(generate_family(spec), QQ)
                ok = k8 == stable
                print(f"    n=8 vs closed form: {'MATCH' if ok else 'no'}",
                      flush=True)
                if ok:
                    found.setdefault(name, []).append((ci, site))
    path = os.path.join(os.path.dirname(__file__), "_twist_sites.json")
    with open(path, "w") as fh:
        json.dump(found, fh)
    print("wrote", path, found)


if __name__ == "__main__":
    main()
