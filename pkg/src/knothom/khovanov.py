"""Khovanov homology: normalized/unnormalized, reduced, collapses, Euler.

The scanning pipeline (scan.py) is the production path; the naive full
cube (cube.py) is retained as the oracle for small diagrams.  Gradings:
circle label 1 has q-degree +1 and x has -1, the vertex weight |v| is added
to q, and the normalization is Kh(D) = unnormalized(D)[-n_minus]{n_plus - 2
n_minus}.
"""

from __future__ import annotations

import os

from .algebra import GF2, QQ, field_by_name
from .cube import naive_kh, naive_unnormalized_kh
from .diagram import DiagramError
from .scan import scan

DEFAULT_MAX_CROSSINGS = 28


class SizeLimitError(Exception):
    """Raised when a diagram exceeds the configured crossing bound."""


def _max_crossings():
    env = os.environ.get("KH_MAX_CROSSINGS")
    return int(env) if env else DEFAULT_MAX_CROSSINGS


def _guard(D):
    if D.n_crossings > _max_crossings():
        raise SizeLimitError(
            f"{D.n_crossings} crossings exceeds bound {_max_crossings()} "
            "(override with KH_MAX_CROSSINGS)")


def _convolve_free_loops(dims, free_loops):
    for _ in range(free_loops):
        new = {}
        for (i, q), d in dims.items():
            for dq in (1, -1):
                k = (i, q + dq)
                new[k] = new.get(k, 0) + d
        dims = new
    return dims


def unnormalized_kh(D, field=QQ, method="scan", reduced=False):
    """Bigraded dims of the diagram-dependent (unshifted) homology."""
    _guard(D)
    if reduced and D.basepoint is None:
        raise DiagramError("reduced homology needs a basepoint")
    if method == "naive":
        return naive_unnormalized_kh(D, field, reduced=reduced)
    if D.n_crossings == 0:
        dims = {(0, 0): 1} if reduced else {(0, 1): 1, (0, -1): 1}
        extra = D.free_loops - (0 if reduced else 1)
        if reduced:
            extra = D.free_loops - 1
        return _convolve_free_loops(dims, extra)
    cut = D.basepoint if reduced else None
    sc = scan(D, 0, field, cut_arc=cut)
    if not reduced and any(sc.dout.get(s) for s in sc.dout):
        raise AssertionError("scan left unreduced differential entries")
    dims = {}
    for pairs, q, h in sc.objects.values():
        key = (h, q)
        dims[key] = dims.get(key, 0) + 1
    return _convolve_free_loops(dims, D.free_loops)


def kh(D, field=QQ, method="scan", reduced=False):
    """Normalized, diagram-invariant Khovanov homology dimensions."""
    raw = unnormalized_kh(D, field, method=method, reduced=reduced)
    return shift(raw, -D.n_minus, D.n_plus - 2 * D.n_minus)


def reduced_kh(D, field=GF2, method="scan"):
    return kh(D, field, method=method, reduced=True)


def shift(dims, di, dq):
    """Apply the grading shift [di]{dq}."""
    return {(i + di, q + dq): d for (i, q), d in dims.items()}


def total_dim(dims):
    return sum(dims.values())


def delta_collapse(dims):
    """Collapse along delta = q - 2i."""
    out = {}
    for (i, q), d in dims.items():
        out[q - 2 * i] = out.get(q - 2 * i, 0) + d
    return out


def graded_euler_characteristic(dims):
    """Laurent polynomial {q-power: int coeff}; the unnormalized Jones."""
    poly = {}
    for (i, q), d in dims.items():
        c = poly.get(q, 0) + (d if i % 2 == 0 else -d)
        if c:
            poly[q] = c
        else:
            poly.pop(q, None)
    return poly


def _divide_by_q_plus_qinv(poly):
    """Exact division of a Laurent polynomial by (q + q^-1).

    Raises ValueError when the division leaves a remainder.
    """
    if not poly:
        return {}
    lo = min(poly)
    # shift to an ordinary polynomial in q and divide by q^2 + 1
    shifted = {e - lo + 1: c for e, c in poly.items()}   # times q^{1-lo}
    deg = max(shifted)
    quot = {}
    for e in range(deg, 1, -1):
        c = shifted.pop(e, 0)
        if not c:
            continue
        quot[e - 2] = c
        low = shifted.get(e - 2, 0) - c
        if low:
            shifted[e - 2] = low
        else:
            shifted.pop(e - 2, None)
    if shifted:
        raise ValueError("polynomial not divisible by q + q^-1")
    # poly / (q + q^-1) = (poly * q^{1-lo} / (q^2+1)) * q^{lo}
    return {e + lo: c for e, c in quot.items()}


def determinant(dims):
    """|V(i)| where V = graded Euler characteristic / (q + q^-1),
    evaluated exactly over the Gaussian integers at q = i."""
    quot = _divide_by_q_plus_qinv(graded_euler_characteristic(dims))
    re = im = 0
    for e, c in quot.items():
        k = e % 4
        if k == 0:
            re += c
        elif k == 1:
            im += c
        elif k == 2:
            re -= c
        else:
            im -= c
    if re and im:
        raise ValueError("Jones evaluation at i is not real-or-imaginary; "
                         "input is probably not a knot")
    return abs(re or im)
