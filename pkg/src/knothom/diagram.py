"""Planar-diagram data model: PD codes, signs, smoothings, mirrors, families.

Conventions (fixed once, used by every other module):

* A crossing ``X[a,b,c,d]`` lists the four incident arcs starting from the
  incoming under-strand.  The under-strand runs position 0 -> position 2.
  The crossing is positive exactly when the over-strand enters at position 3
  (i.e. runs d -> b), negative when it enters at position 1.
* The 0-smoothing joins (position 0, position 1) and (position 2, position 3);
  the 1-smoothing joins (position 0, position 3) and (position 1, position 2).
  For a positive crossing the 0-smoothing is the oriented resolution.

Tuples are canonicalized on construction: ``X[a,b,c,d]`` and ``X[c,d,a,b]``
describe the same crossing (the rotation reverses the under-strand), and the
orientation traversal picks the rotation in which the under-strand really
enters at position 0.

Planarity of a PD code is trusted, not verified, except where noted
(``genus`` computes the rotation-system genus for connected diagrams and is
used when new crossings are synthesized).
"""

from __future__ import annotations

import json
import re


class DiagramError(ValueError):
    pass


def _rot2(t):
    return (t[2], t[3], t[0], t[1])


class PlanarDiagram:
    """Immutable knot/link diagram given by its PD code.

    Attributes computed on construction:

    * ``crossings``: canonicalized 4-tuples (under-strand enters at slot 0).
    * ``signs``: +1/-1 per crossing; ``n_plus``/``n_minus`` totals.
    * ``arc_head``/``arc_tail``: for every arc, the (crossing, position)
      slot it flows into / out of, per the chosen orientation.
    * ``n_components``: number of link components (free loops included).
    """

    def __init__(self, crossings, free_loops=0, basepoint=None, band_site=None,
                 reverse_components=()):
        crossings = [tuple(int(x) for x in t) for t in crossings]
        for t in crossings:
            if len(t) != 4:
                raise DiagramError(f"crossing {t} is not a 4-tuple")
        if not crossings and free_loops <= 0:
            raise DiagramError("empty diagram rejected")
        slots = {}
        for c, t in enumerate(crossings):
            for p, a in enumerate(t):
                slots.setdefault(a, []).append((c, p))
        for a, s in slots.items():
            if len(s) != 2:
                raise DiagramError(f"arc {a} appears {len(s)} times (must be 2)")
        self.free_loops = int(free_loops)
        self.basepoint = basepoint
        self.band_site = tuple(band_site) if band_site is not None else None
        self.reverse_components = tuple(reverse_components)
        if self.basepoint is not None and crossings and self.basepoint not in slots:
            raise DiagramError(f"basepoint arc {self.basepoint} not in diagram")
        if self.band_site is not None:
            for a in self.band_site:
                if a not in slots:
                    raise DiagramError(f"band-site arc {a} not in diagram")
        self._orient(crossings, slots)

    # -- orientation traversal -------------------------------------------

    def _orient(self, crossings, slots):
        n = len(crossings)
        entry = {}          # (crossing, strand parity) -> entry position
        arc_head = {}       # arc -> slot it points into
        arc_tail = {}
        arc_component = {}
        visited_arcs = set()
        comp = 0
        for start in sorted(slots):
            if start in visited_arcs:
                continue
            s0, s1 = sorted(slots[start])
            head = s1 if comp in self.reverse_components else s0
            arc, target = start, head
            while True:
                visited_arcs.add(arc)
                arc_head[arc] = target
                other = slots[arc][0] if slots[arc][1] == target else slots[arc][1]
                arc_tail[arc] = other
                arc_component[arc] = comp
                c, p = target
                key = (c, p & 1)
                if key in entry:
                    if entry[key] != p:
                        raise DiagramError(
                            f"inconsistent orientation at crossing {c}")
                else:
                    entry[key] = p
                p_out = (p + 2) % 4
                arc = crossings[c][p_out]
                nxt = slots[arc][0] if slots[arc][1] == (c, p_out) else slots[arc][1]
                if arc == start and nxt == head:
                    break
                target = nxt
            comp += 1
        for c in range(n):
            if (c, 0) not in entry or (c, 1) not in entry:
                raise DiagramError(f"crossing {c} not fully traversed")
        canon = []
        signs = []
        for c, t in enumerate(crossings):
            under_in = entry[(c, 0)]
            over_in = entry[(c, 1)]
            if under_in == 2:
                t = _rot2(t)
                over_in = 1 if over_in == 3 else 3
            canon.append(t)
            signs.append(1 if over_in == 3 else -1)

        def remap(slot):
            c, p = slot
            if entry[(c, 0)] == 2:
                return (c, (p + 2) % 4)
            return slot

        self.crossings = tuple(canon)
        self.signs = tuple(signs)
        self.arc_head = {a: remap(s) for a, s in arc_head.items()}
        self.arc_tail = {a: remap(s) for a, s in arc_tail.items()}
        self.arc_component = arc_component
        self.n_plus = sum(1 for s in signs if s > 0)
        self.n_minus = sum(1 for s in signs if s < 0)
        self.n_components = comp + self.free_loops
        self.arcs = tuple(sorted(slots))

    # -- basics -----------------------------------------------------------

    @property
    def n_crossings(self):
        return len(self.crossings)

    def _key(self):
        return (self.crossings, self.free_loops, self.basepoint, self.band_site)

    def __eq__(self, other):
        return isinstance(other, PlanarDiagram) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        xs = ",".join("X[%d,%d,%d,%d]" % t for t in self.crossings)
        extra = f"+{self.free_loops}O" if self.free_loops else ""
        return f"PD[{xs}]{extra}"

    def to_json(self):
        d = {"pd": [list(t) for t in self.crossings]}
        if self.free_loops:
            d["free_loops"] = self.free_loops
        if self.basepoint is not None:
            d["basepoint"] = self.basepoint
        if self.band_site is not None:
            d["band_site"] = list(self.band_site)
        return d

    def with_basepoint(self, arc):
        return PlanarDiagram(self.crossings, self.free_loops, arc, self.band_site,
                             self.reverse_components)

    # -- operations -------------------------------------------------------

    def resolve(self, crossing, choice):
        """Replace one crossing by its 0- or 1-smoothing."""
        if not 0 <= crossing < len(self.crossings):
            raise DiagramError(f"crossing index {crossing} out of range")
        if choice not in (0, 1):
            raise DiagramError("smoothing choice must be 0 or 1")
        t = self.crossings[crossing]
        pairs = [(t[0], t[1]), (t[2], t[3])] if choice == 0 else \
                [(t[0], t[3]), (t[1], t[2])]
        remaining = {}
        for c, tt in enumerate(self.crossings):
            if c == crossing:
                continue
            for a in tt:
                remaining[a] = remaining.get(a, 0) + 1
        parent = {}

        def find(a):
            root = a
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(a, a) != a:
                parent[a], a = root, parent[a]
            return root

        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
        classes = {}
        for a in set(t):
            classes.setdefault(find(a), set()).add(a)
        closed = 0
        label = {}
        for root, members in classes.items():
            open_slots = sum(remaining.get(a, 0) for a in members)
            if open_slots == 0:
                closed += 1
                for a in members:
                    label[a] = None
            elif open_slots == 2:
                keep = min(a for a in members if remaining.get(a, 0))
                for a in members:
                    label[a] = keep
            else:
                raise DiagramError("inconsistent arc structure in resolve")

        def relabel(a):
            return label.get(a, a)

        new_crossings = [tuple(relabel(a) for a in tt)
                         for c, tt in enumerate(self.crossings) if c != crossing]
        bp = relabel(self.basepoint) if self.basepoint is not None else None
        site = None
        if self.band_site is not None:
            site = tuple(relabel(a) for a in self.band_site)
            if None in site:
                site = None
        return PlanarDiagram(new_crossings, self.free_loops + closed, bp, site)

    def mirror(self):
        """Switch every crossing (reflect through the plane of the page).

        Component orientations are re-derived on construction, so they are
        matched back to this diagram's arc directions afterwards; otherwise
        a multi-component mirror could come out with a reversed component
        (changing inter-component crossing signs).
        """
        out = []
        for t, s in zip(self.crossings, self.signs):
            if s > 0:   # over-strand enters at slot 3; it becomes the under-in
                out.append((t[3], t[0], t[1], t[2]))
            else:
                out.append((t[1], t[2], t[3], t[0]))
        M = PlanarDiagram(out, self.free_loops, self.basepoint, self.band_site)
        rev = set()
        decided = set()
        for a, (c1, _) in self.arc_head.items():
            if self.arc_tail[a][0] == c1:
                continue        # kink arc: direction not readable from ends
            comp = M.arc_component[a]
            if comp in decided:
                continue
            decided.add(comp)
            if M.arc_head[a][0] != c1:
                rev.add(comp)
        if rev:
            M = PlanarDiagram(out, self.free_loops, self.basepoint,
                              self.band_site,
                              reverse_components=tuple(sorted(rev)))
        return M

    def genus(self):
        """Genus of the rotation-system embedding (0 = planar).

        Only meaningful for diagrams whose crossing graph is connected.
        """
        n = len(self.crossings)
        if n == 0:
            return 0
        slots = {}
        for c, t in enumerate(self.crossings):
            for p, a in enumerate(t):
                slots.setdefault(a, []).append((c, p))
        unseen = {(c, p) for c in range(n) for p in range(4)}
        faces = 0
        while unseen:
            start = next(iter(unseen))
            cur = start
            while True:
                unseen.discard(cur)
                c, p = cur
                a = self.crossings[c][p]
                s0, s1 = slots[a]
                c2, p2 = s1 if s0 == (c, p) else s0
                cur = (c2, (p2 + 1) % 4)
                if cur == start:
                    break
            faces += 1
        # V - E + F = 2 - 2g  with V = n, E = 2n for a 4-valent graph
        return (2 + n - faces) // 2

    # -- band twisting ----------------------------------------------------

    def insert_band_twist(self):
        """Insert one positive half-twist crossing at the band site.

        The band site names the two antiparallel boundary strands of a band
        where they cobound a face of the diagram (the band interior), so the
        new crossing can be drawn inside that face without touching anything
        else.  Each site arc is cut in two and the four ends meet in one new
        crossing whose 0-smoothing turns the strands back into each other
        (cutting the band, splitting the diagram into two components) and
        whose 1-smoothing restores the untwisted band.  Candidates are
        filtered by sign (+1), planarity (rotation-system genus 0),
        connectedness (still a knot), and the band-cut property of the
        0-smoothing.  The tail halves keep the site labels, so the insertion
        iterates: each further twist again goes between the band body and
        the twisted end.
        """
        if self.band_site is None:
            raise DiagramError("diagram has no band-site annotation")
        a, b = self.band_site
        if a not in self.arc_head or b not in self.arc_head:
            raise DiagramError("band site names unknown arcs")
        if a == b:
            return self._insert_tip_twist(a)
        na = max(self.arcs) + 1
        nb = na + 1
        base = list(self.crossings)
        for arc, new in ((a, na), (b, nb)):   # head halves get fresh labels
            c, p = self.arc_head[arc]
            t = list(base[c])
            t[p] = new
            base[c] = tuple(t)
        # the twist reverses traversal of the band beyond the new crossing,
        # so the through-strands pair tail halves (a-b) and head halves
        # (na-nb); both candidates are positive with 0-smoothing (slots
        # 01|23) joining a-nb and b-na, i.e. cutting the band, and
        # 1-smoothing restoring the untwisted rails.  The genus filter
        # keeps whichever embedding is planar for this face; the next
        # twist goes in the remaining band face between a and nb.
        return self._try_band_crossings(
            base, [(a, nb, b, na), (na, b, nb, a)], (a, nb))

    def _insert_tip_twist(self, a):
        """First half-twist at a free band tip (both site ends on one arc).

        The tip arc is cut twice around the U-turn: tail piece keeps the
        label, the cap loop and the head piece get fresh labels, and the
        new crossing is a kink whose 0-smoothing splits the cap off.
        """
        nc = max(self.arcs) + 1     # cap loop
        nh = nc + 1                 # head piece
        base = list(self.crossings)
        c, p = self.arc_head[a]
        t = list(base[c])
        t[p] = nh
        base[c] = tuple(t)
        cands = [(a, nh, nc, nc), (nc, nc, nh, a),
                 (a, nc, nc, nh), (nc, a, nh, nc)]
        return self._try_band_crossings(base, cands, (a, nh))

    def _try_band_crossings(self, base, cands, site):
        for cand in cands:
            trial = base + [cand]
            try:
                d = PlanarDiagram(trial, self.free_loops, self.basepoint,
                                  site)
            except DiagramError:
                continue
            idx = len(trial) - 1
            if d.signs[idx] != 1:
                continue
            if d.genus() != 0:
                continue
            if d.n_components != 1:
                continue
            if d.resolve(idx, 0).n_components != 2:
                continue
            return d
        raise DiagramError("no valid positive band crossing at this site")


class FamilySpec:
    """Base diagram with a band site, generating the n-twist family member."""

    def __init__(self, base, n, band_site=None):
        if n < 0:
            raise DiagramError("twist count must be >= 0")
        if band_site is not None:
            base = PlanarDiagram(base.crossings, base.free_loops,
                                 base.basepoint, tuple(band_site))
        if base.band_site is None:
            raise DiagramError("family base needs a band_site")
        self.base = base
        self.n = n


def generate_family(spec):
    """Diagram of the n-twist family member K_n from a FamilySpec."""
    d = spec.base
    for _ in range(spec.n):
        d = d.insert_band_twist()
    return d


class SkeinTriple:
    """(D, D0, D1) at a positive crossing, with crossing-count bookkeeping."""

    def __init__(self, D, crossing):
        if not 0 <= crossing < D.n_crossings:
            raise DiagramError("crossing index out of range")
        if D.signs[crossing] != 1:
            raise DiagramError("skein triple requires a positive crossing")
        self.D = D
        self.crossing = crossing
        self.D0 = D.resolve(crossing, 0)
        self.D1 = D.resolve(crossing, 1)

    @property
    def counts(self):
        return {"D": (self.D.n_plus, self.D.n_minus),
                "D0": (self.D0.n_plus, self.D0.n_minus),
                "D1": (self.D1.n_plus, self.D1.n_minus)}


def skein_triple(D, crossing):
    return SkeinTriple(D, crossing)


# -- parsing ---------------------------------------------------------------

_PD_RE = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_pd(text):
    """Parse a `PD[X[a,b,c,d],...]` string or the JSON equivalent."""
    if isinstance(text, dict):
        return _from_json(text)
    s = text.strip()
    if s.startswith("{") or s.startswith("["):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as e:
            raise DiagramError(f"bad JSON diagram: {e}") from None
        if isinstance(obj, list):
            obj = {"pd": obj}
        return _from_json(obj)
    if not s.startswith("PD[") or not s.endswith("]"):
        raise DiagramError("expected PD[...] or JSON input")
    body = s[3:-1]
    tuples = [tuple(int(g) for g in m.groups()) for m in _PD_RE.finditer(body)]
    leftover = _PD_RE.sub("", body).replace(",", "").strip()
    if leftover:
        raise DiagramError(f"unparsed PD content: {leftover!r}")
    if not tuples:
        raise DiagramError("empty diagram rejected")
    return PlanarDiagram(tuples)


def _from_json(obj):
    if "pd" not in obj:
        raise DiagramError("JSON diagram needs a 'pd' field")
    return PlanarDiagram(obj["pd"],
                         free_loops=obj.get("free_loops", 0),
                         basepoint=obj.get("basepoint"),
                         band_site=obj.get("band_site"))


def load_diagram(path):
    with open(path) as f:
        text = f.read()
    return parse_pd(text)


# -- corpus helpers --------------------------------------------------------

def braid_closure(word, strands):
    """PD code of the closure of a braid word (+-i = generator sigma_i).

    Unused strands close into free loops.
    """
    if strands < 2:
        raise DiagramError("need at least 2 strands")
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    crossings = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"generator {g} out of range")
        x, y = cur[i], cur[i + 1]
        u, v = nxt, nxt + 1
        nxt += 2
        if g > 0:
            crossings.append((y, v, u, x))
        else:
            crossings.append((x, y, v, u))
        cur[i], cur[i + 1] = u, v
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            parent[a] = parent.get(parent[a], parent[a])
            a = parent[a]
        return a

    free = 0
    for i in range(strands):
        init, fin = i + 1, cur[i]
        if init == fin:
            free += 1   # strand never crossed anything
            continue
        ri, rf = find(init), find(fin)
        if ri != rf:
            parent[max(ri, rf)] = min(ri, rf)
    crossings = [tuple(find(a) for a in t) for t in crossings]
    return PlanarDiagram(crossings, free_loops=free)
