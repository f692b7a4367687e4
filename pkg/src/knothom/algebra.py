"""Exact field arithmetic, sparse matrices, and bigraded chain complexes.

Two coefficient fields are supported: the rationals (arbitrary-precision
``fractions.Fraction``) and the two-element field.  Everything downstream
(Khovanov cubes, scanning complexes, grid Floer complexes) reduces to ranks
and kernels of the sparse matrices defined here, so no floating point is
used anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class ExactField:
    """A field with exact arithmetic.  Instances: ``QQ`` and ``GF2``."""

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __call__(self, n):
        """Coerce an integer (or Fraction) into the field."""
        if self.name == "F2":
            return int(n) & 1
        return Fraction(n)

    @property
    def zero(self):
        return 0 if self.name == "F2" else Fraction(0)

    @property
    def one(self):
        return 1 if self.name == "F2" else Fraction(1)

    def add(self, a, b):
        if self.name == "F2":
            return (a + b) & 1
        return a + b

    def sub(self, a, b):
        if self.name == "F2":
            return (a + b) & 1
        return a - b

    def mul(self, a, b):
        if self.name == "F2":
            return a & b
        return a * b

    def neg(self, a):
        if self.name == "F2":
            return a
        return -a

    def inv(self, a):
        if self.name == "F2":
            if a & 1 == 0:
                raise ZeroDivisionError("inverse of 0 in F2")
            return 1
        return 1 / Fraction(a)

    def is_zero(self, a):
        if self.name == "F2":
            return (a & 1) == 0
        return a == 0

    def is_unit(self, a):
        return not self.is_zero(a)


QQ = ExactField("Q")
GF2 = ExactField("F2")


def field_by_name(name):
    if name in ("Q", "QQ", "rationals"):
        return QQ
    if name in ("F2", "GF2", "Z2"):
        return GF2
    raise ValueError(f"unknown coefficient field {name!r}")


class SparseMatrix:
    """Sparse matrix over an ExactField; entries stored as {(r,c): value}."""

    def __init__(self, rows, cols, entries=None, field=QQ):
        self.rows = rows
        self.cols = cols
        self.field = field
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) out of bounds")
                if not field.is_zero(v):
                    self.entries[(r, c)] = field(v) if isinstance(v, int) else v

    def __getitem__(self, rc):
        return self.entries.get(rc, self.field.zero)

    def copy(self):
        m = SparseMatrix(self.rows, self.cols, field=self.field)
        m.entries = dict(self.entries)
        return m

    def transpose(self):
        m = SparseMatrix(self.cols, self.rows, field=self.field)
        m.entries = {(c, r): v for (r, c), v in self.entries.items()}
        return m

    def matmul(self, other):
        """self (r x k) times other (k x c)."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        F = self.field
        by_row = {}
        for (r, c), v in self.entries.items():
            by_row.setdefault(r, []).append((c, v))
        other_by_row = {}
        for (r, c), v in other.entries.items():
            other_by_row.setdefault(r, []).append((c, v))
        out = SparseMatrix(self.rows, other.cols, field=F)
        acc = out.entries
        for r, row in by_row.items():
            for k, v in row:
                for c, w in other_by_row.get(k, ()):
                    key = (r, c)
                    s = F.add(acc.get(key, F.zero), F.mul(v, w))
                    if F.is_zero(s):
                        acc.pop(key, None)
                    else:
                        acc[key] = s
        return out

    def is_zero(self):
        return not self.entries

    def rank(self):
        """Exact rank by Gaussian elimination, preferring +-1 pivots."""
        F = self.field
        # row-major working copy
        rows = {}
        for (r, c), v in self.entries.items():
            rows.setdefault(r, {})[c] = v
        rank = 0
        one, minus_one = F.one, F.neg(F.one)
        while rows:
            # pick a pivot: prefer entries equal to +-1, then shortest row
            pivot = None
            for r, row in rows.items():
                for c, v in row.items():
                    if v == one or v == minus_one:
                        pivot = (r, c)
                        break
                if pivot:
                    break
            if pivot is None:
                r = min(rows, key=lambda rr: len(rows[rr]))
                c = next(iter(rows[r]))
                pivot = (r, c)
            pr, pc = pivot
            pv = rows[pr][pc]
            pinv = F.inv(pv)
            prow = rows.pop(pr)
            rank += 1
            dead = []
            for r, row in rows.items():
                v = row.get(pc)
                if v is None:
                    continue
                factor = F.mul(v, pinv)
                for c, w in prow.items():
                    nv = F.sub(row.get(c, F.zero), F.mul(factor, w))
                    if F.is_zero(nv):
                        row.pop(c, None)
                    else:
                        row[c] = nv
                if not row:
                    dead.append(r)
            for r in dead:
                del rows[r]
        return rank

    def kernel_dim(self):
        return self.cols - self.rank()


class GradedChainComplex:
    """Cochain complex of free bigraded modules with q-preserving differential.

    ``ranks`` maps (i, q) -> rank of the free module there; ``diffs`` maps
    (i, q) -> SparseMatrix whose columns index (i, q)-generators and whose
    rows index (i+1, q)-generators, i.e. d: C^{i,q} -> C^{i+1,q}.
    """

    def __init__(self, field, ranks, diffs=None, check=True):
        self.field = field
        self.ranks = {k: r for k, r in ranks.items() if r > 0}
        self.diffs = {}
        if diffs:
            for (i, q), m in diffs.items():
                if m.entries:
                    self.diffs[(i, q)] = m
        if check:
            self.validate()

    def rank(self, i, q):
        return self.ranks.get((i, q), 0)

    def diff(self, i, q):
        m = self.diffs.get((i, q))
        if m is None:
            m = SparseMatrix(self.rank(i + 1, q), self.rank(i, q), field=self.field)
        return m

    def validate(self):
        for (i, q), m in self.diffs.items():
            if m.cols != self.rank(i, q) or m.rows != self.rank(i + 1, q):
                raise ValueError(f"differential at ({i},{q}) has wrong shape")

    def check_d_squared(self):
        for (i, q), m in self.diffs.items():
            nxt = self.diffs.get((i + 1, q))
            if nxt is not None and not nxt.matmul(m).is_zero():
                raise ValueError(f"d o d != 0 at ({i},{q})")

    def homology_dims(self):
        """Bigraded homology dimensions {(i, q): dim}."""
        out = {}
        rank_cache = {}

        def matrank(i, q):
            key = (i, q)
            if key not in rank_cache:
                m = self.diffs.get(key)
                rank_cache[key] = m.rank() if m is not None else 0
            return rank_cache[key]

        for (i, q), r in self.ranks.items():
            dim = r - matrank(i, q) - matrank(i - 1, q)
            if dim < 0:
                raise ValueError(f"negative homology dimension at ({i},{q})")
            if dim:
                out[(i, q)] = dim
        return out

    def total_rank(self):
        return sum(self.ranks.values())

    def gaussian_eliminate(self, i, q, row, col):
        """Remove the contractible pair (generator ``col`` at (i,q) and
        generator ``row`` at (i+1,q)) across a unit differential entry,
        returning a homotopy-equivalent complex."""
        F = self.field
        d = self.diff(i, q)
        p = d[(row, col)]
        if not F.is_unit(p):
            raise ValueError("pivot entry is not a unit")
        pinv = F.inv(p)

        def drop(index, removed):
            return index if index < removed else index - 1

        ranks = dict(self.ranks)
        ranks[(i, q)] = self.rank(i, q) - 1
        ranks[(i + 1, q)] = self.rank(i + 1, q) - 1
        diffs = {}
        for (j, p_), m in self.diffs.items():
            if p_ != q or j not in (i - 1, i, i + 1):
                diffs[(j, p_)] = m
        # middle block with correction  d' = d - delta p^{-1} rho
        mid = SparseMatrix(ranks[(i + 1, q)], ranks[(i, q)], field=F)
        rho = {c: v for (r, c), v in d.entries.items() if r == row and c != col}
        delta = {r: v for (r, c), v in d.entries.items() if c == col and r != row}
        for (r, c), v in d.entries.items():
            if r == row or c == col:
                continue
            mid.entries[(drop(r, row), drop(c, col))] = v
        for r, dv in delta.items():
            for c, rv in rho.items():
                key = (drop(r, row), drop(c, col))
                nv = F.sub(mid.entries.get(key, F.zero), F.mul(F.mul(dv, pinv), rv))
                if F.is_zero(nv):
                    mid.entries.pop(key, None)
                else:
                    mid.entries[key] = nv
        if mid.entries:
            diffs[(i, q)] = mid
        # incoming block: drop row ``col``
        inc = self.diffs.get((i - 1, q))
        if inc is not None:
            m = SparseMatrix(ranks[(i, q)], inc.cols, field=F)
            for (r, c), v in inc.entries.items():
                if r != col:
                    m.entries[(drop(r, col), c)] = v
            if m.entries:
                diffs[(i - 1, q)] = m
            else:
                diffs.pop((i - 1, q), None)
        # outgoing block: drop column ``row``
        out = self.diffs.get((i + 1, q))
        if out is not None:
            m = SparseMatrix(out.rows, ranks[(i + 1, q)], field=F)
            for (r, c), v in out.entries.items():
                if c != row:
                    m.entries[(r, drop(c, row))] = v
            if m.entries:
                diffs[(i + 1, q)] = m
            else:
                diffs.pop((i + 1, q), None)
        return GradedChainComplex(F, ranks, diffs, check=True)

    def simplify(self):
        """Repeatedly eliminate unit pivots; returns an equivalent complex."""
        c = self
        while True:
            pivot = None
            for (i, q), m in c.diffs.items():
                F = c.field
                one, minus_one = F.one, F.neg(F.one)
                for (r, cc), v in m.entries.items():
                    if v == one or v == minus_one:
                        pivot = (i, q, r, cc)
                        break
                if pivot:
                    break
            if pivot is None:
                return c
            c = c.gaussian_eliminate(*pivot)


class BitMatrixGF2:
    """Dense-ish F2 matrix with rows stored as Python int bitmasks.

    Used by the grid Floer module where blocks can reach a few thousand
    rows; big-int XOR makes elimination fast without numpy.
    """

    def __init__(self, rows, cols):
        self.rows = rows
        self.cols = cols
        self.data = [0] * rows

    def set(self, r, c):
        self.data[r] |= 1 << c

    @staticmethod
    def from_columns(cols_as_ints, nrows, ncols):
        m = BitMatrixGF2(nrows, ncols)
        for c, colmask in enumerate(cols_as_ints):
            mask = colmask
            while mask:
                low = mask & -mask
                r = low.bit_length() - 1
                m.data[r] |= 1 << c
                mask ^= low
        return m

    def rank(self):
        rank = 0
        rows = [x for x in self.data if x]
        pivots = {}
        for x in rows:
            while x:
                p = x.bit_length() - 1
                if p in pivots:
                    x ^= pivots[p]
                else:
                    pivots[p] = x
                    rank += 1
                    break
        return rank
