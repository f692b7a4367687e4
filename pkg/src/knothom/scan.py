"""Crossing-by-crossing scanning pipeline for Khovanov-type homology.

Instead of building the full cube of resolutions, the diagram is consumed
one crossing at a time.  The partial computation is a complex whose objects
are crossingless matchings of the current boundary (with quantum and
homological shifts) and whose differentials are morphisms in a dotted
cobordism category, reduced by two moves after every crossing:

* delooping -- a closed circle in an object is replaced by two objects with
  quantum shifts +-1 (the circle algebra k[x]/(x^2 - t) is free of rank 2);
* Gaussian elimination -- any differential entry that is a unit multiple of
  the identity between objects with the same matching and the same quantum
  shift is contracted.

Morphisms are kept in canonical form: a cobordism between matchings m1, m2
on the same boundary points decomposes into one disk sheet per curve of the
overlay glue(m1, m2), each sheet carrying 0 or 1 dots; a dot stands for
multiplication by x.  Composition and transport across a new crossing are
computed by gluing sheets, computing the genus of each component from its
Euler characteristic, and re-expanding with the generic Frobenius calculus

    x^2 = t,  handle = 2x,  Delta(1) = 1(x)x + x(x)1,  Delta(x) = x(x)x + t,

so the same engine computes Khovanov homology (t = 0, any field) and the
Lee deformation (t = 1 over Q, where entries may strictly increase q).
"""

from __future__ import annotations

from collections import deque
from itertools import product

from .diagram import DiagramError

EMPTY = frozenset()


# ---------------------------------------------------------------------------
# glue curves

def glue_curves(m1, m2, _cache={}):
    """Decompose the overlay of two matchings on the same points into curves.

    Returns a tuple of frozensets of points, deterministically ordered.
    """
    key = (m1, m2)
    got = _cache.get(key)
    if got is not None:
        return got
    p1, p2 = {}, {}
    for a, b in (tuple(p) if len(p) == 2 else (tuple(p)[0],) * 2 for p in m1):
        p1[a], p1[b] = b, a
    for pair in m2:
        a, b = tuple(pair) if len(pair) == 2 else (tuple(pair)[0],) * 2
        p2[a], p2[b] = b, a
    if set(p1) != set(p2):
        raise AssertionError("matchings on different point sets")
    seen = set()
    curves = []
    for start in sorted(p1):
        if start in seen:
            continue
        cur, use1, pts = start, True, []
        while True:
            pts.append(cur)
            seen.add(cur)
            cur = (p1 if use1 else p2)[cur]
            use1 = not use1
            if cur == start and use1:
                break
        curves.append(frozenset(pts))
    out = tuple(curves)
    if len(_cache) > 200000:
        _cache.clear()
    _cache[key] = out
    return out


# ---------------------------------------------------------------------------
# dotted-surface reduction

def _delta_terms(p, b, t):
    """Expand Delta^(b-1)(x^p) as {bit-tuple over b curves: int coeff}."""
    terms = {(p,): 1}
    while len(next(iter(terms))) < b:
        new = {}
        for bits, coeff in terms.items():
            head, last = bits[:-1], bits[-1]
            if last == 0:
                for nb in ((0, 1), (1, 0)):
                    k = head + nb
                    new[k] = new.get(k, 0) + coeff
            else:
                k = head + (1, 1)
                new[k] = new.get(k, 0) + coeff
                if t:
                    k = head + (0, 0)
                    new[k] = new.get(k, 0) + coeff * t
        terms = new
    return terms


class Surface:
    """Glued-sheet structure of one differential entry, dots left symbolic.

    sheets: disks indexed 0..n-1; gluings: list of sheet-index pairs (a
    vertical line each); bcurves: list of (curve_key, sheet index set) for
    the open boundary curves of the target glue diagram; caps: list of
    (sheet index set, cap dots) for delooped circles on either side.
    """

    def __init__(self, nsheets, gluings, bcurves, caps, t):
        self.t = t
        parent = list(range(nsheets))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in gluings:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
        comp_of = [find(i) for i in range(nsheets)]
        comps = {}
        for i in range(nsheets):
            comps.setdefault(comp_of[i], []).append(i)
        info = {r: {"sheets": members, "nglue": 0, "ncaps": 0,
                    "capdots": 0, "bcurves": []}
                for r, members in comps.items()}
        for i, j in gluings:
            info[comp_of[i]]["nglue"] += 1
        for bidx, (ck, sheet_set) in enumerate(bcurves):
            roots = {comp_of[s] for s in sheet_set}
            if len(roots) != 1:
                raise AssertionError("boundary curve spans components")
            info[roots.pop()]["bcurves"].append(bidx)
        for sheet_set, capdots in caps:
            roots = {comp_of[s] for s in sheet_set}
            if len(roots) != 1:
                raise AssertionError("capped circle spans components")
            r = roots.pop()
            info[r]["ncaps"] += 1
            info[r]["capdots"] += capdots
        self.bcurve_keys = [ck for ck, _ in bcurves]
        self.comp_of = comp_of
        self.components = []
        for r, d in sorted(info.items()):
            chi = len(d["sheets"]) - d["nglue"] + d["ncaps"]
            b = len(d["bcurves"])
            g2 = 2 - b - chi
            if g2 < 0 or g2 % 2:
                raise AssertionError(f"bad component genus data (2-b-chi={g2})")
            self.components.append(
                {"sheets": d["sheets"], "g": g2 // 2, "b": b,
                 "bcurves": d["bcurves"], "capdots": d["capdots"]})

    def evaluate(self, sheet_dots):
        """Reduce with the given dots per sheet.

        Returns {frozenset of dotted bcurve keys: int coeff} (possibly empty).
        """
        t = self.t
        result = {EMPTY: 1}
        for comp in self.components:
            g = comp["g"]
            p = comp["capdots"] + g + sum(sheet_dots[s] for s in comp["sheets"])
            coeff = 2 ** g
            if p >= 2:
                if t == 0:
                    return {}
                coeff *= t ** (p // 2)
                p %= 2
            b = comp["b"]
            if b == 0:
                if p != 1:
                    return {}
                factors = {(): coeff}
            else:
                factors = {bits: c * coeff
                           for bits, c in _delta_terms(p, b, t).items()}
            new = {}
            for ds, c0 in result.items():
                for bits, c1 in factors.items():
                    dotted = ds | frozenset(
                        self.bcurve_keys[comp["bcurves"][k]]
                        for k, bit in enumerate(bits) if bit)
                    key = dotted
                    new[key] = new.get(key, 0) + c0 * c1
            result = {k: v for k, v in new.items() if v}
        return result


# ---------------------------------------------------------------------------
# morphism helpers (dict dotset -> field element)

def _madd(field, target, addition, scale=None):
    for k, v in addition.items():
        if scale is not None:
            v = field.mul(v, scale)
        s = field.add(target.get(k, field.zero), v)
        if field.is_zero(s):
            target.pop(k, None)
        else:
            target[k] = s
    return target


def compose(m1, m2, m3, f, g, t, field):
    """g after f for f: m1 -> m2, g: m2 -> m3 (matchings on equal points)."""
    c12 = glue_curves(m1, m2)
    c23 = glue_curves(m2, m3)
    nsheets = len(c12) + len(c23)
    point_to_12 = {}
    for i, cur in enumerate(c12):
        for p in cur:
            point_to_12[p] = i
    point_to_23 = {}
    for i, cur in enumerate(c23):
        for p in cur:
            point_to_23[p] = len(c12) + i
    gluings = []
    for pair in m2:
        p = next(iter(pair))
        gluings.append((point_to_12[p], point_to_23[p]))
    c13 = glue_curves(m1, m3)
    bcurves = []
    for cur in c13:
        sheets = set()
        for p in cur:
            sheets.add(point_to_12[p])
            sheets.add(point_to_23[p])
        bcurves.append((cur, sheets))
    surf = Surface(nsheets, gluings, bcurves, [], t)
    out = {}
    for ds_f, cf in f.items():
        for ds_g, cg in g.items():
            dots = [0] * nsheets
            for cur in ds_f:
                dots[c12.index(cur)] += 1
            for cur in ds_g:
                dots[len(c12) + c23.index(cur)] += 1
            terms = surf.evaluate(dots)
            if terms:
                scale = field.mul(cf, cg)
                _madd(field, out, {k: field(v) for k, v in terms.items()}, scale)
    return out


# ---------------------------------------------------------------------------
# fusing one crossing into the boundary

class FuseResult:
    __slots__ = ("pairs", "circles")

    def __init__(self, pairs, circles):
        self.pairs = pairs          # frozenset of frozensets (new matching)
        self.circles = circles      # tuple of frozensets of walk elements


def _fuse(old_pairs, spairs, idents, rename):
    """Glue smoothing pairs and closing-arc identifications into a matching."""
    adj = {}

    def add_edge(x, y):
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)

    for pair in old_pairs:
        a, b = tuple(pair)
        add_edge(a, b)
    for x, y in spairs:
        add_edge(x, y)
    for x, y in idents:
        add_edge(x, y)
    visited = set()
    new_pairs = []
    circles = []
    open_nodes = sorted(n for n, ns in adj.items() if len(ns) == 1)
    for start in open_nodes:
        if start in visited:
            continue
        path = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nxt = None
            for n in adj[cur]:
                if len(path) == 1 or n != prev:
                    nxt = n
                    break
            # walk to the single continuation that is not where we came from
            prev, cur = cur, nxt
            visited.add(cur)
            path.append(cur)
            if len(adj[cur]) == 1:
                break
        new_pairs.append(frozenset((rename.get(path[0], path[0]),
                                    rename.get(path[-1], path[-1]))))
    for start in sorted(adj):
        if start in visited:
            continue
        cyc = [start]
        visited.add(start)
        prev, cur = start, adj[start][0]
        while cur != start:
            visited.add(cur)
            cyc.append(cur)
            n0, n1 = adj[cur]
            prev, cur = cur, (n1 if n0 == prev else n0)
        circles.append(frozenset(cyc))
    circles.sort(key=min)
    return FuseResult(frozenset(new_pairs), tuple(circles))


# ---------------------------------------------------------------------------
# the scanning complex

class ScanComplex:
    """Delooped, partially eliminated complex built crossing by crossing."""

    def __init__(self, t, field):
        self.t = t
        self.field = field
        self.objects = {0: (EMPTY, 0, 0)}   # id -> (pairs, q, h)
        self.dout = {0: {}}
        self.din = {0: set()}
        self._next = 1
        self.max_objects = 0

    # -- differential bookkeeping --------------------------------------

    def _set_entry(self, s, tgt, morph):
        if morph:
            self.dout.setdefault(s, {})[tgt] = morph
            self.din.setdefault(tgt, set()).add(s)
        else:
            self.dout.get(s, {}).pop(tgt, None)
            self.din.get(tgt, set()).discard(s)

    # -- one crossing ---------------------------------------------------

    def process_crossing(self, cidx, tup, open_arcs):
        """Tensor the two-term crossing complex onto the current state.

        open_arcs: set of arcs currently on the boundary (before this
        crossing).  Returns the new open-arc set.
        """
        t_, field = self.t, self.field
        tokens = [-(4 * cidx + p + 1) for p in range(4)]
        slots_of = {}
        for p, a in enumerate(tup):
            slots_of.setdefault(a, []).append(p)
        idents = []
        rename = {}
        new_open = set(open_arcs)
        for a, ps in slots_of.items():
            if len(ps) == 2:
                idents.append((tokens[ps[0]], tokens[ps[1]]))
            elif a in open_arcs:
                idents.append((tokens[ps[0]], a))
                new_open.discard(a)
            else:
                rename[tokens[ps[0]]] = a
                new_open.add(a)
        spairs = (((tokens[0], tokens[1]), (tokens[2], tokens[3])),
                  ((tokens[0], tokens[3]), (tokens[1], tokens[2])))

        fuse_cache = {}

        def fused(pairs, i):
            key = (pairs, i)
            r = fuse_cache.get(key)
            if r is None:
                r = _fuse(pairs, spairs[i], idents, rename)
                fuse_cache[key] = r
            return r

        new_objects = {}
        new_id = {}
        counter = [self._next]

        def get_ids(oid, i):
            """All delooped descendants of (oid, smoothing i)."""
            pairs, q, h = self.objects[oid]
            fr = fused(pairs, i)
            ids = {}
            for labels in product((1, -1), repeat=len(fr.circles)):
                key = (oid, i, labels)
                nid = new_id.get(key)
                if nid is None:
                    nid = counter[0]
                    counter[0] += 1
                    new_id[key] = nid
                    new_objects[nid] = (fr.pairs, q + i + sum(labels), h + i)
                ids[labels] = nid
            return fr, ids

        ndout = {}
        ndin = {}

        def set_new(s, tgt, morph):
            if morph:
                ndout.setdefault(s, {})[tgt] = morph
                ndin.setdefault(tgt, set()).add(s)

        spair_sheet = {}
        for si, sp in enumerate(spairs):
            for k, (x, y) in enumerate(sp):
                spair_sheet.setdefault(si, {})[x] = k
                spair_sheet[si][y] = k

        # saddle components: d_crossing tensored with identity on the object
        for oid, (pairs, q, h) in self.objects.items():
            fr0, ids0 = get_ids(oid, 0)
            fr1, ids1 = get_ids(oid, 1)
            plist = sorted(pairs, key=min)
            sheet_of = {}
            for si, pr in enumerate(plist):
                for p in pr:
                    sheet_of[p] = si
            saddle = len(plist)
            nsheets = saddle + 1

            def elem_sheet(e):
                return saddle if e < 0 else sheet_of[e]

            gluings = [(elem_sheet(x), elem_sheet(y)) for x, y in idents]
            bcurves = []
            for cur in glue_curves(fr0.pairs, fr1.pairs):
                sheets = set()
                for p in cur:
                    if p in sheet_of:
                        sheets.add(sheet_of[p])
                    else:
                        sheets.add(saddle)   # point born from a token
                bcurves.append((cur, sheets))
            caps_src = [({elem_sheet(e) for e in circ}, None)
                        for circ in fr0.circles]
            caps_tgt = [({elem_sheet(e) for e in circ}, None)
                        for circ in fr1.circles]
            sign = field.one if h % 2 == 0 else field.neg(field.one)
            dots0 = [0] * nsheets
            for labels0, s_id in ids0.items():
                for labels1, t_id in ids1.items():
                    caps = [(sh, 0 if l > 0 else 1)
                            for (sh, _), l in zip(caps_src, labels0)]
                    caps += [(sh, 1 if l > 0 else 0)
                             for (sh, _), l in zip(caps_tgt, labels1)]
                    surf = Surface(nsheets, gluings, bcurves, caps, t_)
                    terms = surf.evaluate(dots0)
                    if terms:
                        morph = {k: field.mul(field(v), sign)
                                 for k, v in terms.items()}
                        morph = {k: v for k, v in morph.items()
                                 if not field.is_zero(v)}
                        set_new(s_id, t_id, morph)

        # transported components: old differential tensored with identity
        for o1, targets in self.dout.items():
            p1 = self.objects[o1][0]
            for o2, f in targets.items():
                p2 = self.objects[o2][0]
                c12 = glue_curves(p1, p2)
                curve_sheet = {}
                for i, cur in enumerate(c12):
                    for p in cur:
                        curve_sheet[p] = i
                for si in (0, 1):
                    fr1, ids1 = get_ids(o1, si)
                    fr2, ids2 = get_ids(o2, si)
                    base = len(c12)
                    nsheets = base + 2

                    def elem_sheet(e):
                        if e < 0:
                            return base + spair_sheet[si][e]
                        return curve_sheet[e]

                    gluings = [(elem_sheet(x), elem_sheet(y))
                               for x, y in idents]
                    bcurves = []
                    for cur in glue_curves(fr1.pairs, fr2.pairs):
                        sheets = set()
                        for p in cur:
                            if p in curve_sheet:
                                sheets.add(curve_sheet[p])
                            else:
                                tok = next(tk for tk, a in rename.items()
                                           if a == p)
                                sheets.add(base + spair_sheet[si][tok])
                        bcurves.append((cur, sheets))
                    caps_src = [{elem_sheet(e) for e in circ}
                                for circ in fr1.circles]
                    caps_tgt = [{elem_sheet(e) for e in circ}
                                for circ in fr2.circles]
                    for labels1, s_id in ids1.items():
                        for labels2, t_id in ids2.items():
                            caps = [(sh, 0 if l > 0 else 1)
                                    for sh, l in zip(caps_src, labels1)]
                            caps += [(sh, 1 if l > 0 else 0)
                                     for sh, l in zip(caps_tgt, labels2)]
                            surf = Surface(nsheets, gluings, bcurves, caps, t_)
                            out = {}
                            for ds, cf in f.items():
                                dots = [0] * nsheets
                                for cur in ds:
                                    dots[c12.index(cur)] += 1
                                terms = surf.evaluate(dots)
                                if terms:
                                    _madd(field, out,
                                          {k: field(v) for k, v in terms.items()},
                                          cf)
                            if out:
                                set_new(s_id, t_id, out)

        self.objects = new_objects
        self.dout = ndout
        self.din = ndin
        self._next = counter[0]
        self.max_objects = max(self.max_objects, len(new_objects))
        return new_open

    # -- Gaussian elimination ------------------------------------------

    def eliminate(self):
        field = self.field
        candidates = deque()
        for s, targets in self.dout.items():
            for tg in targets:
                candidates.append((s, tg))
        while candidates:
            s, tg = candidates.popleft()
            entry = self.dout.get(s, {}).get(tg)
            if entry is None or s not in self.objects or tg not in self.objects:
                continue
            ps, qs, hs = self.objects[s]
            pt, qt, ht = self.objects[tg]
            if ps != pt or qs != qt:
                continue
            if set(entry) != {EMPTY}:
                raise AssertionError(
                    "same-shift entry is not a multiple of the identity")
            p = entry[EMPTY]
            pinv = field.inv(p)
            sources = [x for x in self.din.get(tg, ()) if x != s]
            sinks = [y for y in self.dout.get(s, {}) if y != tg]
            corrections = []
            for x in sources:
                alpha = self.dout[x][tg]
                px = self.objects[x][0]
                for y in sinks:
                    beta = self.dout[s][y]
                    py = self.objects[y][0]
                    corr = compose(px, ps, py, alpha, beta, self.t, field)
                    if corr:
                        corrections.append((x, y, corr))
            # remove the pair and every incident entry
            for x in list(self.din.get(s, ())):
                self.dout[x].pop(s, None)
            for x in list(self.din.get(tg, ())):
                self.dout[x].pop(tg, None)
            for y in self.dout.get(s, {}):
                self.din[y].discard(s)
            for y in self.dout.get(tg, {}):
                self.din[y].discard(tg)
            self.dout.pop(s, None)
            self.dout.pop(tg, None)
            self.din.pop(s, None)
            self.din.pop(tg, None)
            del self.objects[s]
            del self.objects[tg]
            mpinv = field.neg(pinv)
            for x, y, corr in corrections:
                cur = dict(self.dout.get(x, {}).get(y, {}))
                _madd(field, cur, corr, mpinv)
                self._set_entry(x, y, cur)
                if cur:
                    candidates.append((x, y))


def scan_order(D, mode="auto"):
    n = D.n_crossings
    if mode == "input" or n == 0:
        return list(range(n))
    remaining = set(range(n))
    open_arcs = set()
    order = []
    while remaining:
        best, best_score = None, None
        for c in sorted(remaining):
            t = D.crossings[c]
            closing = 0
            seen = {}
            for a in t:
                if a in open_arcs:
                    closing += 1
                elif a in seen:
                    closing += 2
                seen[a] = True
            score = (closing, -len(set(t)))
            if best_score is None or score > best_score:
                best, best_score = c, score
        order.append(best)
        remaining.discard(best)
        for a in D.crossings[best]:
            if a in open_arcs:
                open_arcs.discard(a)
            else:
                open_arcs.add(a)
        for a, cnt in _counts(D.crossings[best]).items():
            if cnt == 2:
                open_arcs.discard(a)
    return order


def _counts(t):
    d = {}
    for a in t:
        d[a] = d.get(a, 0) + 1
    return d


def scan(D, t, field, cut_arc=None, order_mode="auto"):
    """Run the pipeline; returns the final ScanComplex (empty boundary,
    unless cut_arc leaves a single open strand)."""
    crossings = [list(tup) for tup in D.crossings]
    if cut_arc is not None:
        occ = [(c, p) for c, tup in enumerate(D.crossings)
               for p, a in enumerate(tup) if a == cut_arc]
        if len(occ) != 2:
            raise DiagramError("cut arc not found twice")
        twin = max(D.arcs) + 1
        c, p = occ[1]
        crossings[c][p] = twin
    order = scan_order(D, order_mode)
    sc = ScanComplex(t, field)
    open_arcs = set()
    for cidx in order:
        open_arcs = sc.process_crossing(cidx, tuple(crossings[cidx]), open_arcs)
        sc.eliminate()
    return sc
