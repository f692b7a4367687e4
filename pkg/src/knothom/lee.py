"""Lee deformation: filtered complex, s-invariant, spectral-sequence pages.

The scanning pipeline run with Frobenius parameter t = 1 over Q produces a
small complex whose objects carry (homological grading, q-filtration) and
whose differential entries are scalars that strictly increase q (the
q-preserving part is eliminated during the scan, so the object count per
bigrading equals the Khovanov dimensions -- the E_1 page).

Filtered Gaussian elimination in order of increasing q-jump then yields
every page of the spectral sequence; eliminating everything yields Lee
homology with the filtration levels of its surviving generators, whence

    s = q_min + 1 = q_max - 1

for the two survivors of a knot.  Page indexing follows the convention that
the page-r differential raises the homological grading by 1 and moves r
columns (2r in q): page r is what remains after all jumps < 2r are gone.
"""

from __future__ import annotations

from .algebra import QQ
from .diagram import DiagramError
from .khovanov import _guard
from .scan import EMPTY, scan


class FilteredComplex:
    """Scalar complex with generators (i, q) and q-increasing differential."""

    def __init__(self, gens, entries):
        self.gens = dict(gens)            # id -> (i, q)
        self.entries = dict(entries)      # (src, tgt) -> Fraction
        for (s, t), v in self.entries.items():
            ji = self.gens[t][0] - self.gens[s][0]
            jq = self.gens[t][1] - self.gens[s][1]
            if ji != 1 or jq <= 0:
                raise AssertionError(
                    f"entry with grading jump ({ji},{jq}) in filtered complex")

    def copy(self):
        return FilteredComplex(self.gens, self.entries)

    def min_jump(self):
        return min((self.gens[t][1] - self.gens[s][1]
                    for (s, t) in self.entries), default=None)

    def eliminate_below(self, max_jump=None):
        """Eliminate entries with q-jump < max_jump (all entries if None).

        Corrections never decrease the minimal jump, so processing entries
        in increasing-jump order computes spectral-sequence pages.
        """
        gens = dict(self.gens)
        entries = dict(self.entries)
        while entries:
            (s, t), jump = min(
                ((k, gens[k[1]][1] - gens[k[0]][1]) for k in entries),
                key=lambda kv: kv[1])
            if max_jump is not None and jump >= max_jump:
                break
            p = entries.pop((s, t))
            sources = [(x, v) for (x, y), v in entries.items()
                       if y == t and x != s]
            sinks = [(y, v) for (x, y), v in entries.items()
                     if x == s and y != t]
            for k in [k for k in entries if s in k or t in k]:
                del entries[k]
            del gens[s]
            del gens[t]
            for x, a in sources:
                for y, b in sinks:
                    v = entries.get((x, y), 0) - a * b / p
                    if v:
                        entries[(x, y)] = v
                    else:
                        entries.pop((x, y), None)
        return FilteredComplex(gens, entries)

    def dims(self):
        out = {}
        for (i, q) in self.gens.values():
            out[(i, q)] = out.get((i, q), 0) + 1
        return out


def lee_complex(D):
    """Filtered Lee complex of a diagram, in normalized gradings."""
    _guard(D)
    di, dq = -D.n_minus, D.n_plus - 2 * D.n_minus
    if D.n_crossings == 0:
        gens = {}
        nid = 0
        dims = [(0, 0)]
        for _ in range(D.free_loops):
            dims = [(i, q + s) for (i, q) in dims for s in (1, -1)]
        for (i, q) in dims:
            gens[nid] = (i + di, q + dq)
            nid += 1
        return FilteredComplex(gens, {})
    sc = scan(D, 1, QQ)
    gens = {oid: (h + di, q + dq) for oid, (pairs, q, h) in sc.objects.items()}
    entries = {}
    for s, targets in sc.dout.items():
        for t, morph in targets.items():
            if morph:
                if set(morph) != {EMPTY}:
                    raise AssertionError("non-scalar entry after full scan")
                entries[(s, t)] = morph[EMPTY]
    if D.free_loops:
        raise DiagramError("Lee complex with free loops only for 0 crossings")
    return FilteredComplex(gens, entries)


def lee_homology(D):
    """{homological grading: dim} plus surviving filtration levels."""
    final = lee_complex(D).eliminate_below(None)
    by_i = {}
    for (i, q) in final.gens.values():
        by_i.setdefault(i, []).append(q)
    dims = {i: len(qs) for i, qs in by_i.items()}
    levels = {i: sorted(qs) for i, qs in by_i.items()}
    return dims, levels


def s_invariant(D):
    """Rasmussen s of a knot diagram."""
    if D.n_components != 1:
        raise DiagramError("s-invariant needs a knot (one component)")
    dims, levels = lee_homology(D)
    if dims != {0: 2}:
        raise AssertionError(f"Lee homology of a knot should be 2 at i=0: {dims}")
    qmin, qmax = levels[0]
    if qmax - qmin != 2:
        raise AssertionError(f"survivor filtrations {levels[0]} not s-+1")
    return qmin + 1


def page_dims(D, r):
    """Dims of the E_r page (r >= 1) of the Lee spectral sequence."""
    if r < 1:
        raise ValueError("page index must be >= 1")
    page = lee_complex(D).eliminate_below(2 * r)
    return page.dims()


def pages_until_stable(D, max_r=30):
    """[(r, dims)] from E_1 until the sequence stabilizes."""
    c = lee_complex(D)
    out = []
    r = 1
    while True:
        c = c.eliminate_below(2 * r)
        out.append((r, c.dims()))
        if c.min_jump() is None or r >= max_r:
            break
        r += 1
    return out
