"""Matrices over the local ring: minors, Fitting ideals, adjugates, corank.

Entries are LocalElement values; determinants are computed exactly, by
cofactor expansion up to size 4 and by fraction-free Bareiss elimination
on cleared numerators above that.
"""

import itertools
from fractions import Fraction

from .errors import (InternalInvariantViolation, NotInvertibleError,
                     NotSquareError)
from .groebner import syzygies as _poly_syzygies
from .localring import (LocalElement, LocalIdeal, ideal_order,
                        local_ideal_contains, local_power, poly_gcd)
from .polyring import Polynomial, try_exact_divide


class SquareFreeCheckFailed(ValueError):
    """A polynomial required to be square-free has a repeated factor."""


class LRMatrix:
    """An m-by-n matrix of local ring elements with cached invariants."""

    __slots__ = ("ring", "rows", "cols", "entries", "_fitting", "_adj", "_det")

    def __init__(self, ring, rows):
        grid = []
        width = None
        for row in rows:
            entries = tuple(LocalElement.coerce(e, ring) for e in row)
            if width is None:
                width = len(entries)
            elif len(entries) != width:
                raise ValueError("ragged rows")
            for e in entries:
                if e.ring != ring:
                    raise ValueError("entry outside the matrix ring")
            grid.append(entries)
        if not grid or width == 0:
            raise ValueError("matrix must have at least one row and column")
        self.ring = ring
        self.rows = len(grid)
        self.cols = width
        self.entries = tuple(grid)
        self._fitting = {}
        self._adj = None
        self._det = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one(), Polynomial.zero(ring)
        return cls(ring, [[one if i == j else zero for j in range(n)]
                          for i in range(n)])

    @classmethod
    def zeros(cls, ring, m, n):
        zero = Polynomial.zero(ring)
        return cls(ring, [[zero] * n for _ in range(m)])

    @classmethod
    def block_diag(cls, a, b):
        if a.ring != b.ring:
            raise ValueError("blocks in different rings")
        zero = Polynomial.zero(a.ring)
        rows = []
        for i in range(a.rows):
            rows.append(list(a.entries[i]) + [zero] * b.cols)
        for i in range(b.rows):
            rows.append([zero] * a.cols + list(b.entries[i]))
        return cls(a.ring, rows)

    @classmethod
    def from_columns(cls, ring, columns):
        m = len(columns[0])
        return cls(ring, [[col[i] for col in columns] for i in range(m)])

    # -- structure -----------------------------------------------------------

    def entry(self, i, j):
        return self.entries[i][j]

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self):
        return [list(self.column(j)) for j in range(self.cols)]

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def min_dim(self):
        return min(self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def transpose(self):
        return LRMatrix(self.ring,
                        [[self.entries[i][j] for i in range(self.rows)]
                         for j in range(self.cols)])

    def submatrix(self, row_idx, col_idx):
        return LRMatrix(self.ring,
                        [[self.entries[i][j] for j in col_idx]
                         for i in row_idx])

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def entries_in_maximal_ideal(self):
        return all(e.constant_value() == 0
                   for row in self.entries for e in row)

    def first_unit_entry(self):
        """Position and value of the first entry with nonzero constant term."""
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.constant_value() != 0:
                    return (i, j), e
        return None

    def constant_matrix(self):
        """The numerical matrix A(0) over Q."""
        return [[e.constant_value() for e in row] for row in self.entries]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._shape_match(other)
        return LRMatrix(self.ring,
                        [[a + b for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._shape_match(other)
        return LRMatrix(self.ring,
                        [[a - b for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return LRMatrix(self.ring,
                        [[e * c for e in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, LRMatrix):
            if self.cols != other.rows:
                raise ValueError(
                    f"cannot multiply {self.shape} by {other.shape}")
            zero = LocalElement.coerce(0, self.ring)
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = zero
                    for k in range(self.cols):
                        acc = acc + self.entries[i][k] * other.entries[k][j]
                    row.append(acc)
                out.append(row)
            return LRMatrix(self.ring, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if not self.is_square():
            raise NotSquareError("matrix power needs a square matrix")
        if not isinstance(k, int) or k < 1:
            raise ValueError("matrix power needs an integer k >= 1")
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LRMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for r1, r2 in zip(self.entries, other.entries)
                   for a, b in zip(r1, r2))

    __hash__ = None

    def _shape_match(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # -- determinants and friends ---------------------------------------------

    def determinant(self):
        if not self.is_square():
            raise NotSquareError("determinant of a non-square matrix")
        if self._det is None:
            if self.rows <= 4:
                self._det = _det_cofactor(self.entries, self.ring)
            else:
                self._det = _det_bareiss(self)
        return self._det

    def minor(self, row_idx, col_idx):
        """Determinant of the selected sub-grid (0-based index sets)."""
        row_idx, col_idx = sorted(row_idx), sorted(col_idx)
        if len(row_idx) != len(col_idx):
            raise ValueError("minor needs equally many rows and columns")
        for i in row_idx:
            if not 0 <= i < self.rows:
                raise IndexError(f"row index {i} out of range")
        for j in col_idx:
            if not 0 <= j < self.cols:
                raise IndexError(f"column index {j} out of range")
        return self.submatrix(row_idx, col_idx).determinant()

    def adjugate(self):
        """Transposed cofactor matrix: A * adj(A) = det(A) * I = adj(A) * A."""
        if not self.is_square():
            raise NotSquareError("adjugate of a non-square matrix")
        if self._adj is not None:
            return self._adj
        n = self.rows
        if n == 1:
            self._adj = LRMatrix.identity(self.ring, 1)
            return self._adj
        indices = list(range(n))
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                rows = indices[:j] + indices[j + 1:]
                cols = indices[:i] + indices[i + 1:]
                c = self.submatrix(rows, cols).determinant()
                if (i + j) % 2:
                    c = -c
                row.append(c)
            out.append(row)
        self._adj = LRMatrix(self.ring, out)
        return self._adj

    def inverse(self):
        det = self.determinant()
        if not det.is_unit():
            raise NotInvertibleError("A", det)
        adj = self.adjugate()
        inv = det.inverse()
        return adj.scale(inv)

    # -- Fitting ideals and corank ---------------------------------------------

    def fitting_ideal(self, j):
        """Ideal of all j-by-j minors, denominators cleared; I_0 = (1)."""
        if j < 0:
            raise ValueError("fitting index must be non-negative")
        cached = self._fitting.get(j)
        if cached is not None:
            return cached
        if j == 0:
            result = LocalIdeal(self.ring, [self.ring.one()])
        elif j > self.min_dim:
            result = LocalIdeal(self.ring, [])
        else:
            gens = []
            seen = set()
            for rows in itertools.combinations(range(self.rows), j):
                for cols in itertools.combinations(range(self.cols), j):
                    g = self.minor(rows, cols).num
                    if g.is_zero() or g in seen:
                        continue
                    seen.add(g)
                    gens.append(g)
            result = LocalIdeal(self.ring, gens)
        self._fitting[j] = result
        return result

    def corank_at_origin(self):
        """min(m, n) minus the rank of A(0) over Q."""
        return self.min_dim - rational_rank(self.constant_matrix())

    def is_maximal_corank_at_origin(self):
        return self.corank_at_origin() == ideal_order(
            self.fitting_ideal(self.min_dim))

    def corank_on_locus(self, locus, limits=None):
        """Largest c with every (d-c+1)-minor locally in the given ideal.

        The ideal is taken to be radical on the caller's word; radicality
        is not checked here.
        """
        if not locus.is_proper():
            raise ValueError("corank locus must be a proper ideal")
        d = self.min_dim
        for c in range(d, 0, -1):
            if local_ideal_contains(self.fitting_ideal(d - c + 1), locus,
                                    limits):
                return c
        return 0

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row)
                         for row in self.entries)
        return f"[{body}]"


def _det_cofactor(entries, ring):
    n = len(entries)
    if n == 1:
        return entries[0][0]
    if n == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    acc = LocalElement.coerce(0, ring)
    rest = entries[1:]
    for j in range(n):
        e = entries[0][j]
        if e.is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in rest]
        term = e * _det_cofactor(sub, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(matrix):
    # clear denominators row by row, then run fraction-free elimination
    ring = matrix.ring
    n = matrix.rows
    scale = ring.one()
    grid = []
    for row in matrix.entries:
        d = ring.one()
        for e in row:
            d = d * e.den
        scale = scale * d
        cleared = []
        for e in row:
            q = try_exact_divide(d, e.den)
            cleared.append(e.num * q)
        grid.append(cleared)
    zero = Polynomial.zero(ring)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if grid[k][k].is_zero():
            pivot_row = None
            for r in range(k + 1, n):
                if not grid[r][k].is_zero():
                    pivot_row = r
                    break
            if pivot_row is None:
                return LocalElement(zero)
            grid[k], grid[pivot_row] = grid[pivot_row], grid[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = grid[i][j] * grid[k][k] - grid[i][k] * grid[k][j]
                q = try_exact_divide(num, prev)
                if q is None:
                    raise InternalInvariantViolation(
                        "Bareiss division failed")
                grid[i][j] = q
            grid[i][k] = zero
        prev = grid[k][k]
    det = grid[n - 1][n - 1]
    if sign < 0:
        det = -det
    return LocalElement(det, scale)


# ---------------------------------------------------------------------------

class FittingChain:
    """The chain R = I_0 >= I_1 >= ... >= I_d of Fitting ideals."""

    __slots__ = ("matrix", "ideals")

    def __init__(self, matrix):
        self.matrix = matrix
        self.ideals = tuple(matrix.fitting_ideal(j)
                            for j in range(matrix.min_dim + 1))

    def verify_descending(self, limits=None):
        """Check each I_{j+1} <= I_j locally; the first failure or None."""
        for j in range(len(self.ideals) - 1):
            for g in self.ideals[j + 1].generators:
                if g.is_zero():
                    continue
                if self.ideals[j].local_member(g, limits) is None:
                    return j + 1, g
        return None


def is_square_free(g):
    """Char-0 square-free test: gcd(g, all nonzero partials) is a constant."""
    if g.is_zero():
        raise ValueError("square-free test of the zero polynomial")
    if g.is_constant():
        return True
    d = g.monic()
    for i in range(g.ring.nvars):
        pd = g.partial_derivative(i)
        if pd.is_zero():
            continue
        d = poly_gcd(d, pd)
        if d.is_constant():
            return True
    return d.is_constant()


def fitting_chain_step_check(matrix, locus, i, l, part=1, limits=None):
    """Evaluate hypothesis I_i <= J^l and conclusion I_{i+1} <= J^{l+1}.

    part 1 assumes the ideal is generated by a regular sequence (on the
    caller's word); part 2 requires a principal square-free generator and
    checks that. Returns the (hypothesis, conclusion) truth pair; this is
    a property-test oracle, not a prover.
    """
    if part == 2:
        if len(locus.generators) != 1:
            raise SquareFreeCheckFailed("part 2 needs a principal ideal")
        g = locus.generators[0]
        if g.is_zero() or not is_square_free(g):
            raise SquareFreeCheckFailed(f"{g} is not square-free")
    hyp = local_ideal_contains(matrix.fitting_ideal(i),
                               local_power(locus, l), limits)
    concl = local_ideal_contains(matrix.fitting_ideal(i + 1),
                                 local_power(locus, l + 1), limits)
    return hyp, concl


# ---------------------------------------------------------------------------

class AuxiliaryB:
    """Block-adjugate matrix B with A*B_block = Delta_block * I for each block.

    One n-by-m block per m-subset of columns, enumerated lexicographically;
    concatenated horizontally into an n-by-(binom(n,m)*m) matrix.
    """

    __slots__ = ("matrix", "blocks")

    def __init__(self, matrix, blocks):
        self.matrix = matrix
        self.blocks = tuple(blocks)


def buchsbaum_rim_b(matrix):
    """Assemble the auxiliary B from adjugates of maximal square blocks."""
    m, n = matrix.rows, matrix.cols
    if m > n:
        raise ValueError("needs at least as many columns as rows")
    if matrix.fitting_ideal(m).is_zero():
        raise ValueError("the ideal of maximal minors is zero")
    ring = matrix.ring
    zero = Polynomial.zero(ring)
    blocks = []
    strips = []
    for cols in itertools.combinations(range(n), m):
        square = matrix.submatrix(range(m), cols)
        adj = square.adjugate()
        delta = square.determinant()
        rows = [[zero] * m for _ in range(n)]
        for r, target in enumerate(cols):
            rows[target] = list(adj.entries[r])
        block = LRMatrix(ring, rows)
        product = matrix * block
        expected = LRMatrix.identity(ring, m).scale(delta)
        if product != expected:
            raise InternalInvariantViolation(
                f"A * B_block mismatch for columns {cols}")
        blocks.append((cols, delta, block))
        strips.append(block)
    full = strips[0]
    for strip in strips[1:]:
        full = _hstack(full, strip)
    return AuxiliaryB(full, blocks)


def _hstack(a, b):
    return LRMatrix(a.ring, [list(ra) + list(rb)
                             for ra, rb in zip(a.entries, b.entries)])


def apply_equivalence(matrix, u, v):
    """U * A * V for invertible U (m x m) and V (n x n)."""
    if u.shape != (matrix.rows, matrix.rows):
        raise ValueError(f"U must be {matrix.rows} x {matrix.rows}")
    if v.shape != (matrix.cols, matrix.cols):
        raise ValueError(f"V must be {matrix.cols} x {matrix.cols}")
    du = u.determinant()
    if not du.is_unit():
        raise NotInvertibleError("U", du)
    dv = v.determinant()
    if not dv.is_unit():
        raise NotInvertibleError("V", dv)
    return u * matrix * v


def matrix_syzygies(matrix, limits=None):
    """Syzygies of the columns after clearing denominators columnwise.

    Column scaling by units does not disturb membership of syzygy entries
    in the ideal of maximal minors, which is what the kernel condition
    inspects.
    """
    ring = matrix.ring
    columns = []
    for j in range(matrix.cols):
        col = matrix.column(j)
        d = ring.one()
        for e in col:
            d = d * e.den
        cleared = []
        for e in col:
            q = try_exact_divide(d, e.den)
            cleared.append(e.num * q)
        columns.append(cleared)
    return _poly_syzygies(columns, limits=limits)


# ---------------------------------------------------------------------------
# exact linear algebra over Q for constant matrices

def rational_rank(rows):
    return len(_echelon([list(r) for r in rows])[0])


def _echelon(grid):
    """Row-reduce in place; returns (pivot column list, grid)."""
    if not grid:
        return [], grid
    nrows, ncols = len(grid), len(grid[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if grid[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        grid[r], grid[pivot] = grid[pivot], grid[r]
        inv = Fraction(1) / grid[r][c]
        grid[r] = [x * inv for x in grid[r]]
        for i in range(nrows):
            if i != r and grid[i][c] != 0:
                f = grid[i][c]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, grid


def rational_inverse(rows):
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    pivots, aug = _echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular over Q")
    return [row[n:] for row in aug]


def rational_column_basis(rows):
    """Pivot columns of the matrix, as a list of column vectors."""
    nrows = len(rows)
    work = [list(r) for r in rows]
    pivots, _ = _echelon(work)
    return [[rows[i][c] for i in range(nrows)] for c in pivots]
