"""Z2-graded vector spaces and sparse matrices over rational functions."""

from dataclasses import dataclass

from .arith import RationalFunction, ZERO, ONE


@dataclass(frozen=True)
class GradedSpace:
    parities: tuple

    def __post_init__(self):
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @property
    def dim(self):
        return len(self.parities)

    def parity(self, i):
        return self.parities[i]

    def tensor(self, other):
        return GradedSpace(tuple((a + b) % 2 for a in self.parities for b in other.parities))

    def __repr__(self):
        return "GradedSpace(%s)" % "".join(map(str, self.parities))


V3 = GradedSpace((0, 1, 0))


def tensor_spaces(spaces):
    out = spaces[0]
    for s in spaces[1:]:
        out = out.tensor(s)
    return out


class ParityError(ValueError):
    pass


class GradedMatrix:
    """Sparse matrix with graded row and column spaces.

    ``entries`` maps (row, col) to a nonzero RationalFunction.  Instances are
    immutable; every operation returns a new matrix.
    """

    __slots__ = ("rows", "cols", "entries", "declared_parity")

    def __init__(self, rows, cols=None, entries=None, parity=None):
        self.rows = rows
        self.cols = rows if cols is None else cols
        ents = {}
        for (i, j), v in (entries or {}).items():
            v = RationalFunction.coerce(v)
            if v:
                if not (0 <= i < self.rows.dim and 0 <= j < self.cols.dim):
                    raise IndexError("entry (%d, %d) outside %dx%d" % (i, j, self.rows.dim, self.cols.dim))
                ents[(i, j)] = v
        self.entries = ents
        self.declared_parity = parity
        if parity is not None:
            got = self.homogeneous_parity()
            if got is not None and got != parity:
                raise ParityError("matrix declared parity %d but is %d" % (parity, got))
            if got is None and ents:
                raise ParityError("matrix declared parity %d but is inhomogeneous" % parity)

    # constructors ---------------------------------------------------------
    @classmethod
    def identity(cls, space):
        return cls(space, space, {(i, i): ONE for i in range(space.dim)})

    @classmethod
    def zero(cls, rows, cols=None):
        return cls(rows, cols, {})

    @classmethod
    def from_rows(cls, rows, space_rows, space_cols=None):
        ents = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                v = RationalFunction.coerce(v)
                if v:
                    ents[(i, j)] = v
        return cls(space_rows, space_cols, ents)

    @classmethod
    def unit(cls, space, i, j, value=ONE):
        return cls(space, space, {(i, j): value})

    # basic queries --------------------------------------------------------
    @property
    def shape(self):
        return (self.rows.dim, self.cols.dim)

    def __getitem__(self, ij):
        return self.entries.get(ij, ZERO)

    def is_zero(self):
        return not self.entries

    def nnz(self):
        return len(self.entries)

    def homogeneous_parity(self):
        par = None
        for (i, j) in self.entries:
            p = (self.rows.parity(i) + self.cols.parity(j)) % 2
            if par is None:
                par = p
            elif par != p:
                return None
        return par if par is not None else 0

    def free_symbols(self):
        out = set()
        for v in self.entries.values():
            out |= v.free_symbols()
        return out

    def to_rows(self):
        return [[self[(i, j)] for j in range(self.cols.dim)] for i in range(self.rows.dim)]

    # algebra ---------------------------------------------------------------
    def _check_same(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape/grading mismatch %r vs %r" % (self.shape, other.shape))

    def __add__(self, other):
        self._check_same(other)
        ents = dict(self.entries)
        for k, v in other.entries.items():
            s = ents.get(k, ZERO) + v
            if s:
                ents[k] = s
            else:
                ents.pop(k, None)
        return GradedMatrix(self.rows, self.cols, ents)

    def __neg__(self):
        return GradedMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = RationalFunction.coerce(c)
        if not c:
            return GradedMatrix(self.rows, self.cols, {})
        return GradedMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedMatrix):
            return self.scale(other)
        if self.cols.dim != other.rows.dim:
            raise ValueError("cannot multiply %r by %r" % (self.shape, other.shape))
        brow = {}
        for (k, j), v in other.entries.items():
            brow.setdefault(k, []).append((j, v))
        acc = {}
        for (i, k), a in self.entries.items():
            for j, b in brow.get(k, ()):
                acc.setdefault((i, j), []).append(a * b)
        ents = {}
        for key, terms in acc.items():
            s = _sum(terms)
            if s:
                ents[key] = s
        return GradedMatrix(self.rows, other.cols, ents)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def map(self, fn):
        ents = {}
        for k, v in self.entries.items():
            r = fn(v)
            if r:
                ents[k] = r
        return GradedMatrix(self.rows, self.cols, ents)

    def substitute(self, mapping):
        return self.map(lambda v: v.substitute(mapping))

    def derivative(self, var):
        return self.map(lambda v: v.derivative(var))

    def rename(self, mapping):
        return self.map(lambda v: v.rename(mapping))

    def transpose(self):
        return GradedMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def block(self, bi, bj, size, space=None):
        """The size x size block at block position (bi, bj).

        The block is graded by ``space`` when given, otherwise by the
        corresponding slice of the parent gradings.
        """
        ents = {}
        for (i, j), v in self.entries.items():
            if i // size == bi and j // size == bj:
                ents[(i % size, j % size)] = v
        if space is not None:
            return GradedMatrix(space, space, ents)
        rs = GradedSpace(self.rows.parities[bi * size:(bi + 1) * size])
        cs = GradedSpace(self.cols.parities[bj * size:(bj + 1) * size])
        return GradedMatrix(rs, cs, ents)

    # text ------------------------------------------------------------------
    def pretty(self):
        cells = [[str(self[(i, j)]) for j in range(self.cols.dim)] for i in range(self.rows.dim)]
        widths = [max(len(cells[i][j]) for i in range(self.rows.dim)) for j in range(self.cols.dim)]
        lines = []
        for row in cells:
            lines.append("[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]")
        return "\n".join(lines)

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return "GradedMatrix(%dx%d, nnz=%d)" % (self.rows.dim, self.cols.dim, len(self.entries))


def _sum(terms):
    if len(terms) == 1:
        return terms[0]
    # pairwise keeps intermediate denominators small
    while len(terms) > 1:
        nxt = [terms[i] + terms[i + 1] for i in range(0, len(terms) - 1, 2)]
        if len(terms) % 2:
            nxt.append(terms[-1])
        terms = nxt
    return terms[0]


def graded_kron(a, b):
    """Super tensor product: entry ((i,k),(j,l)) = (-1)^([k]([i]+[j])) a_ij b_kl."""
    rows = a.rows.tensor(b.rows)
    cols = a.cols.tensor(b.cols)
    nb_r, nb_c = b.rows.dim, b.cols.dim
    ents = {}
    for (i, j), x in a.entries.items():
        pij = a.rows.parity(i) + a.cols.parity(j)
        for (k, l), y in b.entries.items():
            v = x * y
            if pij % 2 and b.rows.parity(k):
                v = -v
            ents[(i * nb_r + k, j * nb_c + l)] = v
    return GradedMatrix(rows, cols, ents)


def graded_flip(va, vb=None):
    """Graded swap V_a (x) V_b -> V_b (x) V_a, v_i (x) v_j -> (-1)^([i][j]) v_j (x) v_i."""
    vb = va if vb is None else vb
    ents = {}
    for i in range(va.dim):
        for j in range(vb.dim):
            sign = -1 if va.parity(i) and vb.parity(j) else 1
            ents[(j * va.dim + i, i * vb.dim + j)] = RationalFunction.from_int(sign)
    return GradedMatrix(vb.tensor(va), va.tensor(vb), ents)


def kron_chain(mats):
    out = mats[0]
    for m in mats[1:]:
        out = graded_kron(out, m)
    return out


def embed(op, slots, spaces):
    """Embed an operator on spaces[a] (x) spaces[b] into the full tensor product.

    ``slots`` is a 1-based pair (a, b) with a < b.  Non-adjacent slots are
    reached by conjugating with graded flips, e.g. embed(R, (1, 3)) is
    (P (x) 1)(1 (x) R)(P (x) 1) on three copies of V.
    """
    a, b = slots
    n = len(spaces)
    if not (1 <= a < b <= n):
        raise ValueError("bad slots %r for %d spaces" % (slots, n))
    spaces = list(spaces)
    if b == a + 1:
        mats = [GradedMatrix.identity(s) for s in spaces[:a - 1]] + [op] + \
               [GradedMatrix.identity(s) for s in spaces[b:]]
        return kron_chain(mats)
    # bring slot a next to slot b by adjacent flips, act, then flip back
    forward, backward = [], []
    cur = list(spaces)
    for p in range(a - 1, b - 2):
        forward.append(_adjacent_flip(cur, p))
        cur[p], cur[p + 1] = cur[p + 1], cur[p]
        backward.append(_adjacent_flip(cur, p))
    out = embed(op, (b - 1, b), cur)
    for f in reversed(forward):
        out = out * f
    for g in reversed(backward):
        out = g * out
    return out


def _adjacent_flip(spaces, p):
    mats = [GradedMatrix.identity(s) for s in spaces[:p]] + [graded_flip(spaces[p], spaces[p + 1])] + \
           [GradedMatrix.identity(s) for s in spaces[p + 2:]]
    return kron_chain(mats)


def invert(m):
    """Inverse by Gauss-Jordan elimination; raises ZeroDivisionError if singular."""
    n = m.rows.dim
    if m.cols.dim != n:
        raise ValueError("only square matrices can be inverted")
    a = [dict() for _ in range(n)]
    for (i, j), v in m.entries.items():
        a[i][j] = v
    inv = [{i: ONE} for i in range(n)]
    for col in range(n):
        piv = None
        best = None
        for r in range(col, n):
            v = a[r].get(col)
            if v:
                size = len(v.num) + len(v.den)
                if best is None or size < best:
                    piv, best = r, size
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        pinv = a[col][col].inverse()
        a[col] = {j: v * pinv for j, v in a[col].items()}
        inv[col] = {j: v * pinv for j, v in inv[col].items()}
        for r in range(n):
            if r == col:
                continue
            f = a[r].get(col)
            if not f:
                continue
            for src, dst in ((a[col], a[r]), (inv[col], inv[r])):
                for j, v in src.items():
                    nv = dst.get(j, ZERO) - f * v
                    if nv:
                        dst[j] = nv
                    else:
                        dst.pop(j, None)
    ents = {(i, j): v for i in range(n) for j, v in inv[i].items()}
    return GradedMatrix(m.cols, m.rows, ents)
