"""Exact integer linear algebra over arbitrary-precision integers.

Everything here is exact: Smith normal form with unimodular transforms,
cokernels as finitely generated abelian groups, integer kernels, lattice
membership, and exactness of two-step sequences of abelian-group maps.
Entries are Python ints, so there is no overflow to worry about; matrices
in this pipeline are small (tens of rows), so clarity wins over blocking
or sparsity tricks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionMismatchError(ValueError):
    """Matrix shapes do not compose."""


class IntMatrix:
    """A dense rows x cols matrix of Python ints."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[list[int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("dimensions do not match entry storage")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols required for an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def column(self, j: int) -> list[int]:
        return [self.data[i][j] for i in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = IntMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for k in range(self.cols):
                a = row[k]
                if a:
                    brow = other.data[k]
                    for j in range(other.cols):
                        orow[j] += a * brow[j]
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, {self.data!r})"


def hstack(*mats: IntMatrix) -> IntMatrix:
    mats = [m for m in mats if m is not None]
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionMismatchError("hstack row counts differ")
    data = [sum((m.data[i] for m in mats), []) for i in range(rows)]
    return IntMatrix(rows, sum(m.cols for m in mats), data)


def vstack(*mats: IntMatrix) -> IntMatrix:
    mats = [m for m in mats if m is not None]
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionMismatchError("vstack column counts differ")
    data = [row[:] for m in mats for row in m.data]
    return IntMatrix(sum(m.rows for m in mats), cols, data)


@dataclass(frozen=True)
class FinGenAbelianGroup:
    """Invariant-factor form: Z^free_rank + Z/d1 + ... with d1 | d2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError(f"divisibility chain violated: {prev} does not divide {d}")
            prev = d

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SNFResult:
    """S = U @ A @ V with U, V unimodular and S diagonal, d_i | d_{i+1}."""

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix

    def diagonal(self) -> list[int]:
        k = min(self.s.rows, self.s.cols)
        return [self.s.data[i][i] for i in range(k)]


def _swap_rows(m: IntMatrix, a: int, b: int) -> None:
    if a != b:
        m.data[a], m.data[b] = m.data[b], m.data[a]


def _swap_cols(m: IntMatrix, a: int, b: int) -> None:
    if a != b:
        for row in m.data:
            row[a], row[b] = row[b], row[a]


def _add_row(m: IntMatrix, src: int, dst: int, q: int) -> None:
    # row dst += q * row src
    if q:
        srow, drow = m.data[src], m.data[dst]
        for j in range(m.cols):
            drow[j] += q * srow[j]


def _add_col(m: IntMatrix, src: int, dst: int, q: int) -> None:
    if q:
        for row in m.data:
            row[dst] += q * row[src]


def _negate_row(m: IntMatrix, i: int) -> None:
    m.data[i] = [-x for x in m.data[i]]


def smith_normal_form(a: IntMatrix) -> SNFResult:
    """Diagonalise ``a`` by unimodular row/column operations.

    Pivot rule: smallest nonzero absolute value, ties broken by (row, col)
    position.  Deterministic for a given input.
    """
    s = a.copy()
    u = IntMatrix.identity(a.rows)
    v = IntMatrix.identity(a.cols)
    m, n = s.rows, s.cols
    k = min(m, n)

    def pivot_at(t: int) -> tuple[int, int] | None:
        best = None
        bestval = None
        for i in range(t, m):
            row = s.data[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    ax = abs(x)
                    if bestval is None or ax < bestval:
                        best, bestval = (i, j), ax
                        if ax == 1:
                            return best
        return best

    def clear_at(t: int) -> None:
        # reduce row t and column t to (d, 0, ..., 0) at position (t, t)
        while True:
            pos = pivot_at(t)
            if pos is None:
                return
            _swap_rows(s, t, pos[0])
            _swap_rows(u, t, pos[0])
            _swap_cols(s, t, pos[1])
            _swap_cols(v, t, pos[1])
            if s.data[t][t] < 0:
                _negate_row(s, t)
                _negate_row(u, t)
            p = s.data[t][t]
            dirty = False
            for i in range(m):
                if i != t and s.data[i][t]:
                    q = -(s.data[i][t] // p)
                    _add_row(s, t, i, q)
                    _add_row(u, t, i, q)
                    if s.data[i][t]:
                        dirty = True
            for j in range(n):
                if j != t and s.data[t][j]:
                    q = -(s.data[t][j] // p)
                    _add_col(s, t, j, q)
                    _add_col(v, t, j, q)
                    if s.data[t][j]:
                        dirty = True
            if not dirty:
                return

    for t in range(k):
        clear_at(t)

    # Sort zero diagonal entries to the end.
    diag = [s.data[i][i] for i in range(k)]
    for i in range(k):
        if s.data[i][i] == 0:
            for j in range(i + 1, k):
                if s.data[j][j]:
                    _swap_rows(s, i, j)
                    _swap_rows(u, i, j)
                    _swap_cols(s, i, j)
                    _swap_cols(v, i, j)
                    break

    # Enforce the divisibility chain d_i | d_{i+1}.
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            di, dj = s.data[i][i], s.data[i + 1][i + 1]
            if di and dj and dj % di != 0:
                _add_col(s, i + 1, i, 1)
                _add_col(v, i + 1, i, 1)
                clear_at(i)
                clear_at(i + 1)
                changed = True

    for i in range(k):
        if s.data[i][i] < 0:
            _negate_row(s, i)
            _negate_row(u, i)
    return SNFResult(s, u, v)


def rank(a: IntMatrix) -> int:
    return sum(1 for d in smith_normal_form(a).diagonal() if d)


def det_bareiss(a: IntMatrix) -> int:
    """Exact determinant of a square matrix (fraction-free elimination)."""
    if a.rows != a.cols:
        raise DimensionMismatchError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [row[:] for row in a.data]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if m[t][t] == 0:
            for i in range(t + 1, n):
                if m[i][t]:
                    m[t], m[i] = m[i], m[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
            m[i][t] = 0
        prev = m[t][t]
    return sign * m[n - 1][n - 1]


def cokernel(a: IntMatrix) -> FinGenAbelianGroup:
    """Cokernel of the row lattice: Z^cols / <rows of a>."""
    diag = smith_normal_form(a).diagonal()
    r = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return FinGenAbelianGroup(a.cols - r, torsion)


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """Basis (as columns) of {x : a @ x = 0} over the integers."""
    res = smith_normal_form(a)
    r = sum(1 for d in res.diagonal() if d)
    cols = [res.v.column(j) for j in range(r, a.cols)]
    return IntMatrix(a.cols, len(cols), [[c[i] for c in cols] for i in range(a.cols)])


def solve_in_lattice(m: IntMatrix, x: Sequence[int]) -> list[int] | None:
    """Solve m @ y = x over the integers; None when no solution exists."""
    if len(x) != m.rows:
        raise DimensionMismatchError("vector length does not match row count")
    res = smith_normal_form(m)
    ux = [sum(res.u.data[i][k] * x[k] for k in range(m.rows)) for i in range(m.rows)]
    diag = res.diagonal()
    z = [0] * m.cols
    for i in range(m.rows):
        d = diag[i] if i < len(diag) else 0
        if d:
            if ux[i] % d != 0:
                return None
            if i < m.cols:
                z[i] = ux[i] // d
        elif ux[i] != 0:
            return None
    return [sum(res.v.data[i][k] * z[k] for k in range(m.cols)) for i in range(m.cols)]


def lattice_contains(m: IntMatrix, x_cols: IntMatrix) -> bool:
    """True when every column of x_cols lies in the column lattice of m."""
    if m.rows != x_cols.rows:
        raise DimensionMismatchError("ambient ranks differ")
    return all(solve_in_lattice(m, x_cols.column(j)) is not None for j in range(x_cols.cols))


def lattice_equal(m: IntMatrix, n: IntMatrix) -> bool:
    return lattice_contains(m, n) and lattice_contains(n, m)


@dataclass(frozen=True)
class ExactnessReport:
    """Outcome of an image-equals-kernel test at the middle of A -> B -> C."""

    exact_at_middle: bool
    image_quotient: FinGenAbelianGroup
    kernel_quotient: FinGenAbelianGroup


def induced_map_exactness(
    f: IntMatrix,
    g: IntMatrix,
    b_relations: IntMatrix | None = None,
    c_relations: IntMatrix | None = None,
) -> ExactnessReport:
    """Decide image(f) = kernel(g) inside B for maps A --f--> B --g--> C.

    Maps are given on free covers (columns are images of basis vectors);
    the torsion of B and C enters through relation matrices whose columns
    generate the relation lattices.  Subgroups of B are compared as
    lattices in the free cover containing B's relation lattice.
    """
    if f.rows != g.cols:
        raise DimensionMismatchError("f lands in a different rank than g leaves")
    nb = f.rows
    b_rel = b_relations if b_relations is not None else IntMatrix(nb, 0)
    if b_rel.rows != nb:
        raise DimensionMismatchError("relations of B live in the wrong rank")
    if c_relations is not None and c_relations.rows != g.rows:
        raise DimensionMismatchError("relations of C live in the wrong rank")
    # g must descend to B -> C: relations of B must land in the relation
    # lattice of C, otherwise kernel membership depends on representatives
    if b_rel.cols:
        image_of_rel = g @ b_rel
        c_lat = c_relations if c_relations is not None and c_relations.cols else IntMatrix(g.rows, 0)
        for j in range(image_of_rel.cols):
            col = image_of_rel.column(j)
            ok = all(x == 0 for x in col) if c_lat.cols == 0 else solve_in_lattice(c_lat, col) is not None
            if not ok:
                raise ValueError("g does not descend to a map of the presented groups")

    image_lattice = hstack(f, b_rel)

    if c_relations is not None and c_relations.cols:
        stacked = hstack(g, c_relations)
        ker = integer_kernel(stacked)
        ker_b = IntMatrix(nb, ker.cols, [ker.data[i][:] for i in range(nb)])
    else:
        ker_b = integer_kernel(g)
    kernel_lattice = hstack(ker_b, b_rel)

    exact = lattice_equal(image_lattice, kernel_lattice)
    return ExactnessReport(
        exact_at_middle=exact,
        image_quotient=cokernel(image_lattice.transpose()),
        kernel_quotient=cokernel(kernel_lattice.transpose()),
    )
