"""Naive full cube of resolutions: the brute-force Khovanov complex.

Builds every vertex of the cube, labels circles with the Frobenius algebra
basis {1, x}, and assembles the differential with the standard alternating
sign rule.  Exponential in the crossing number; kept as the oracle against
which the scanning pipeline is verified on small diagrams.

Gradings are the unnormalized ones: homological grading = number of
1-smoothings |v|; quantum grading = |v| + (#circles labeled 1) - (#circles
labeled x).  The [-n_minus]{n_plus - 2 n_minus} shift is applied by callers.
"""

from __future__ import annotations

from itertools import combinations

from .algebra import GradedChainComplex, SparseMatrix
from .diagram import DiagramError

NAIVE_MAX_CROSSINGS = 14


def _circles(D, vertex):
    """Partition of arcs into circles for one cube vertex; returns a list of
    frozensets of arcs (free loops get singleton pseudo-arcs < 0)."""
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            parent[a] = parent.get(parent[a], parent[a])
            a = parent[a]
        return a

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for c, t in enumerate(D.crossings):
        if (vertex >> c) & 1:
            union(t[0], t[3])
            union(t[1], t[2])
        else:
            union(t[0], t[1])
            union(t[2], t[3])
    groups = {}
    for a in D.arcs:
        groups.setdefault(find(a), set()).add(a)
    circles = [frozenset(g) for g in groups.values()]
    for k in range(D.free_loops):
        circles.append(frozenset([-(k + 1)]))
    return sorted(circles, key=min)


def cube_complex(D, field, reduced=False):
    """GradedChainComplex of the full cube in unnormalized gradings."""
    n = D.n_crossings
    if n > NAIVE_MAX_CROSSINGS:
        raise DiagramError(
            f"naive cube limited to {NAIVE_MAX_CROSSINGS} crossings (got {n})")
    if reduced and D.basepoint is None:
        raise DiagramError("reduced homology needs a basepoint")

    vertex_circles = [_circles(D, v) for v in range(1 << n)]
    # generators: per vertex, choose the subset of circles labeled x.
    # reduced: the basepoint circle is always labeled x.
    gen_index = {}          # (vertex, frozenset of x-circles) -> (key, index)
    ranks = {}
    gens_by_key = {}
    for v in range(1 << n):
        circles = vertex_circles[v]
        w = bin(v).count("1")
        for (_, x_set) in _vertex_gens(v, circles, D, reduced):
            # reduced: basepoint circle is always x; the +1 recenters so the
            # reduced unknot sits at q = 0.
            q = w + (len(circles) - len(x_set)) - len(x_set) + (1 if reduced else 0)
            key = (w, q)
            idx = ranks.get(key, 0)
            ranks[key] = idx + 1
            gen_index[(v, x_set)] = (key, idx)
            gens_by_key.setdefault(key, []).append((v, x_set))

    entries = {}    # (i, q) -> {(row, col): value}
    one = field.one

    def add_entry(src, dst, sign):
        (ki, ci) = gen_index[src]
        (kj, rj) = gen_index[dst]
        if ki[1] != kj[1]:
            raise AssertionError("differential does not preserve q")
        block = entries.setdefault(ki, {})
        key = (rj, ci)
        val = field.add(block.get(key, field.zero),
                        one if sign > 0 else field.neg(one))
        if field.is_zero(val):
            block.pop(key, None)
        else:
            block[key] = val

    for v in range(1 << n):
        circles = vertex_circles[v]
        for c in range(n):
            if (v >> c) & 1:
                continue
            v2 = v | (1 << c)
            sign = 1 if bin(v & ((1 << c) - 1)).count("1") % 2 == 0 else -1
            circles2 = vertex_circles[v2]
            changed = [s for s in circles if s not in circles2]
            changed2 = [s for s in circles2 if s not in circles]
            for (vv, x_set) in _vertex_gens(v, circles, D, reduced):
                if len(changed) == 2:       # merge
                    a, b = changed
                    (m,) = changed2
                    na = (a in x_set) + (b in x_set)
                    if na == 2:
                        continue            # m(x,x) = 0
                    new = (x_set - {a, b}) | ({m} if na == 1 else set())
                    add_entry((v, x_set), (v2, frozenset(new)), sign)
                elif len(changed) == 1:     # split
                    (a,) = changed
                    p, q_ = changed2
                    base = x_set - {a}
                    if a in x_set:          # Delta(x) = x tensor x
                        add_entry((v, x_set), (v2, frozenset(base | {p, q_})), sign)
                    else:                   # Delta(1) = 1 tensor x + x tensor 1
                        add_entry((v, x_set), (v2, frozenset(base | {p})), sign)
                        add_entry((v, x_set), (v2, frozenset(base | {q_})), sign)
                else:
                    raise AssertionError("edge changes != 1 or 2 circles")

    diffs = {}
    for key, block in entries.items():
        i, q = key
        m = SparseMatrix(ranks.get((i + 1, q), 0), ranks[key], field=field)
        m.entries = block
        diffs[key] = m
    return GradedChainComplex(field, ranks, diffs)


def _vertex_gens(v, circles, D, reduced):
    if reduced:
        bp_circle = next(c for c in circles if D.basepoint in c)
        rest = [c for c in circles if c is not bp_circle]
    else:
        bp_circle = None
        rest = circles
    for k in range(len(rest) + 1):
        for xs in combinations(rest, k):
            x_set = frozenset(xs) | ({bp_circle} if reduced else frozenset())
            yield (v, x_set)


def naive_unnormalized_kh(D, field, reduced=False):
    c = cube_complex(D, field, reduced=reduced)
    c.check_d_squared()
    return c.homology_dims()


def naive_kh(D, field, reduced=False):
    raw = naive_unnormalized_kh(D, field, reduced=reduced)
    di, dq = -D.n_minus, D.n_plus - 2 * D.n_minus
    return {(i + di, q + dq): d for (i, q), d in raw.items()}
