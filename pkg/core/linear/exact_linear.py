"""
Exact matrix arithmetic over Z and Z/m.

Everything downstream (module presentations, resolutions, complexes) reduces
to the three primitives defined here: Smith normal form, solving A·x = b and
kernel generators. Z/m computations are lifted to Z; relations over Z/m are
Z-relations modulo m, so one integer engine serves both rings.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple

from shared.errors import DimensionMismatchError, RingMismatchError

logger = logging.getLogger(__name__)


class RingKind(Enum):
    INTEGERS = "Z"
    INTEGERS_MOD = "Z/m"


@dataclass(frozen=True)
class RingDesc:
    """A supported commutative base ring: Z or Z/m with m >= 2."""

    kind: RingKind
    modulus: int = 0

    def __post_init__(self):
        if self.kind is RingKind.INTEGERS_MOD and self.modulus < 2:
            raise ValueError(f"Z/m requires m >= 2, got {self.modulus}")
        if self.kind is RingKind.INTEGERS and self.modulus != 0:
            raise ValueError("Z carries no modulus")

    @classmethod
    def integers(cls) -> "RingDesc":
        return cls(RingKind.INTEGERS)

    @classmethod
    def mod(cls, m: int) -> "RingDesc":
        return cls(RingKind.INTEGERS_MOD, m)

    @classmethod
    def parse(cls, text: str) -> "RingDesc":
        """Parses 'Z' or 'Z/m'."""
        cleaned = text.strip().replace("ℤ", "Z")
        if cleaned == "Z":
            return cls.integers()
        if cleaned.startswith("Z/"):
            try:
                return cls.mod(int(cleaned[2:]))
            except ValueError:
                pass
        raise ValueError(f"Unknown ring '{text}'. Use 'Z' or 'Z/m'.")

    @property
    def is_integers(self) -> bool:
        return self.kind is RingKind.INTEGERS

    def reduce(self, value: int) -> int:
        return value % self.modulus if self.modulus else value

    def is_zero(self, value: int) -> bool:
        return self.reduce(value) == 0

    def __str__(self) -> str:
        return "Z" if self.is_integers else f"Z/{self.modulus}"


def _check_same_ring(a: RingDesc, b: RingDesc) -> None:
    if a != b:
        raise RingMismatchError(f"Ring mismatch: {a} vs {b}")


@dataclass(frozen=True)
class ExactMatrix:
    """
    Immutable row-major matrix over a RingDesc.

    Entries are reduced to [0, m) over Z/m on construction so that equality is
    equality of residues.
    """

    ring: RingDesc
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError("Matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not self.ring.is_integers:
            m = self.ring.modulus
            object.__setattr__(self, "entries", tuple(e % m for e in self.entries))
        else:
            object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    # construction

    @classmethod
    def from_rows(
        cls, ring: RingDesc, rows: Sequence[Sequence[int]], cols: Optional[int] = None
    ) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatchError("Ragged matrix rows")
        return cls(ring, len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(
        cls, ring: RingDesc, nrows: int, columns: Sequence[Sequence[int]]
    ) -> "ExactMatrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise DimensionMismatchError(
                    f"Column of length {len(c)} in a matrix with {nrows} rows"
                )
        return cls(
            ring,
            nrows,
            len(columns),
            tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))),
        )

    @classmethod
    def zeros(cls, ring: RingDesc, rows: int, cols: int) -> "ExactMatrix":
        return cls(ring, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, ring: RingDesc, n: int) -> "ExactMatrix":
        return cls.diagonal(ring, [1] * n, n, n)

    @classmethod
    def diagonal(
        cls, ring: RingDesc, values: Sequence[int], rows: int, cols: int
    ) -> "ExactMatrix":
        data = [0] * (rows * cols)
        for i, value in enumerate(values):
            data[i * cols + i] = value
        return cls(ring, rows, cols, tuple(data))

    @classmethod
    def column_vector(cls, ring: RingDesc, values: Sequence[int]) -> "ExactMatrix":
        return cls(ring, len(values), 1, tuple(values))

    # access

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # arithmetic

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_ring(self.ring, other.ring)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        a = self.to_rows()
        b_cols = other.columns()
        data = [
            sum(x * y for x, y in zip(a_row, b_col) if x and y)
            for a_row in a
            for b_col in b_cols
        ]
        return ExactMatrix(self.ring, self.rows, other.cols, tuple(data))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _check_same_ring(self.ring, other.ring)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot add {self.shape} and {other.shape}")
        return ExactMatrix(
            self.ring,
            self.rows,
            self.cols,
            tuple(x + y for x, y in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, k: int) -> "ExactMatrix":
        return ExactMatrix(
            self.ring, self.rows, self.cols, tuple(k * e for e in self.entries)
        )

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_columns(self.ring, self.cols, self.to_rows())

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Multiplies by a column vector given as a plain sequence."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                f"Vector of length {len(vector)} for a matrix with {self.cols} columns"
            )
        return tuple(
            self.ring.reduce(sum(x * y for x, y in zip(self.row(i), vector)))
            for i in range(self.rows)
        )

    # assembly

    def hstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        parts = [self, *others]
        for p in parts:
            _check_same_ring(self.ring, p.ring)
            if p.rows != self.rows:
                raise DimensionMismatchError("hstack requires equal row counts")
        rows = [
            [e for p in parts for e in p.row(i)] for i in range(self.rows)
        ]
        return ExactMatrix.from_rows(self.ring, rows, sum(p.cols for p in parts))

    def vstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        parts = [self, *others]
        for p in parts:
            _check_same_ring(self.ring, p.ring)
            if p.cols != self.cols:
                raise DimensionMismatchError("vstack requires equal column counts")
        return ExactMatrix(
            self.ring,
            sum(p.rows for p in parts),
            self.cols,
            tuple(e for p in parts for e in p.entries),
        )

    @staticmethod
    def block_diagonal(ring: RingDesc, blocks: Sequence["ExactMatrix"]) -> "ExactMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = [0] * (rows * cols)
        r0 = c0 = 0
        for b in blocks:
            _check_same_ring(ring, b.ring)
            for i in range(b.rows):
                for j in range(b.cols):
                    data[(r0 + i) * cols + c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return ExactMatrix(ring, rows, cols, tuple(data))

    @staticmethod
    def blocks(
        ring: RingDesc,
        row_sizes: Sequence[int],
        col_sizes: Sequence[int],
        parts: dict,
    ) -> "ExactMatrix":
        """Assembles a block matrix from {(block_row, block_col): matrix}; missing blocks are zero."""
        rows, cols = sum(row_sizes), sum(col_sizes)
        row_offsets = _offsets(row_sizes)
        col_offsets = _offsets(col_sizes)
        data = [0] * (rows * cols)
        for (bi, bj), block in parts.items():
            if block.shape != (row_sizes[bi], col_sizes[bj]):
                raise DimensionMismatchError(
                    f"Block ({bi},{bj}) has shape {block.shape}, "
                    f"expected {(row_sizes[bi], col_sizes[bj])}"
                )
            for i in range(block.rows):
                base = (row_offsets[bi] + i) * cols + col_offsets[bj]
                for j in range(block.cols):
                    data[base + j] += block[i, j]
        return ExactMatrix(ring, rows, cols, tuple(data))

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product; index (i, k) of the result is i * other.rows + k."""
        _check_same_ring(self.ring, other.ring)
        rows, cols = self.rows * other.rows, self.cols * other.cols
        data = [0] * (rows * cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self[i, j]
                if not a:
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        data[(i * other.rows + k) * cols + j * other.cols + l] = (
                            a * other[k, l]
                        )
        return ExactMatrix(self.ring, rows, cols, tuple(data))

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        rows = [list(self.row(i)[c0:c1]) for i in range(r0, r1)]
        return ExactMatrix.from_rows(self.ring, rows, c1 - c0)

    def lift(self) -> "ExactMatrix":
        """The same entries viewed over Z (residues in [0, m) for Z/m)."""
        if self.ring.is_integers:
            return self
        return ExactMatrix(RingDesc.integers(), self.rows, self.cols, self.entries)

    def over(self, ring: RingDesc) -> "ExactMatrix":
        """Reinterprets the entries over another ring, reducing as needed."""
        return ExactMatrix(ring, self.rows, self.cols, self.entries)

    def literal(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"zeros({self.rows},{self.cols})"
        return "[" + ",".join(
            "[" + ",".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows)
        ) + "]"

    def __str__(self) -> str:
        return self.literal()


def _offsets(sizes: Sequence[int]) -> List[int]:
    offsets, total = [], 0
    for s in sizes:
        offsets.append(total)
        total += s
    return offsets


@dataclass(frozen=True)
class SNFResult:
    """u · a · v = d with d diagonal and the diagonal a divisibility chain."""

    a: ExactMatrix
    d: ExactMatrix
    u: ExactMatrix
    v: ExactMatrix
    u_inv: ExactMatrix = field(repr=False)
    v_inv: ExactMatrix = field(repr=False)

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.rows, self.d.cols)))

    @property
    def rank(self) -> int:
        """Number of diagonal entries that are nonzero in the ring."""
        return sum(1 for e in self.diagonal if e != 0)


class _IntegerSmith:
    """In-place Smith reduction over Z with full transform tracking."""

    def __init__(self, rows: List[List[int]], nrows: int, ncols: int):
        self.a = rows
        self.n = nrows
        self.m = ncols
        self.u = _identity_rows(nrows)
        self.u_inv = _identity_rows(nrows)
        self.v = _identity_rows(ncols)
        self.v_inv = _identity_rows(ncols)

    def _swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        self.a[i], self.a[k] = self.a[k], self.a[i]
        self.u[i], self.u[k] = self.u[k], self.u[i]
        for r in self.u_inv:
            r[i], r[k] = r[k], r[i]

    def _swap_cols(self, j: int, k: int) -> None:
        if j == k:
            return
        for r in self.a:
            r[j], r[k] = r[k], r[j]
        for r in self.v:
            r[j], r[k] = r[k], r[j]
        self.v_inv[j], self.v_inv[k] = self.v_inv[k], self.v_inv[j]

    def _add_row(self, target: int, source: int, q: int) -> None:
        # row_target += q * row_source
        for M in (self.a, self.u):
            src = M[source]
            M[target] = [x + q * y for x, y in zip(M[target], src)]
        for r in self.u_inv:
            r[source] -= q * r[target]

    def _add_col(self, target: int, source: int, q: int) -> None:
        # col_target += q * col_source
        for M in (self.a, self.v):
            for r in M:
                r[target] += q * r[source]
        tgt = self.v_inv[target]
        self.v_inv[source] = [x - q * y for x, y in zip(self.v_inv[source], tgt)]

    def _negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for r in self.u_inv:
            r[i] = -r[i]

    def _smallest(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        best_abs = 0
        for i in range(t, self.n):
            row = self.a[i]
            for j in range(t, self.m):
                e = row[j]
                if e and (best is None or abs(e) < best_abs):
                    best, best_abs = (i, j), abs(e)
        return best

    def _non_divisible(self, t: int) -> Optional[int]:
        p = self.a[t][t]
        for i in range(t + 1, self.n):
            for j in range(t + 1, self.m):
                if self.a[i][j] % p:
                    return i
        return None

    def run(self) -> List[int]:
        diag: List[int] = []
        t = 0
        while t < min(self.n, self.m):
            pivot = self._smallest(t)
            if pivot is None:
                break
            while True:
                self._swap_rows(t, pivot[0])
                self._swap_cols(t, pivot[1])
                p = self.a[t][t]
                dirty = False
                for i in range(t + 1, self.n):
                    if self.a[i][t]:
                        self._add_row(i, t, -(self.a[i][t] // p))
                        dirty = dirty or self.a[i][t] != 0
                for j in range(t + 1, self.m):
                    if self.a[t][j]:
                        self._add_col(j, t, -(self.a[t][j] // p))
                        dirty = dirty or self.a[t][j] != 0
                if dirty:
                    pivot = self._smallest(t)
                    continue
                offender = self._non_divisible(t)
                if offender is not None:
                    self._add_row(t, offender, 1)
                    pivot = (t, t)
                    continue
                break
            if self.a[t][t] < 0:
                self._negate_row(t)
            diag.append(self.a[t][t])
            t += 1
        return diag


def _identity_rows(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _as_matrix(ring: RingDesc, rows: List[List[int]], ncols: int) -> ExactMatrix:
    return ExactMatrix.from_rows(ring, rows, ncols)


@lru_cache(maxsize=8192)
def _integer_snf(a: ExactMatrix) -> SNFResult:
    zz = RingDesc.integers()
    engine = _IntegerSmith(a.to_rows(), a.rows, a.cols)
    diag = engine.run()
    logger.debug("SNF of %dx%d over Z: %s", a.rows, a.cols, diag)
    return SNFResult(
        a=a,
        d=ExactMatrix.diagonal(zz, diag, a.rows, a.cols),
        u=_as_matrix(zz, engine.u, a.rows),
        v=_as_matrix(zz, engine.v, a.cols),
        u_inv=_as_matrix(zz, engine.u_inv, a.rows),
        v_inv=_as_matrix(zz, engine.v_inv, a.cols),
    )


def _associate_unit(d: int, m: int) -> int:
    """A unit c of Z/m with d·c ≡ gcd(d, m) (mod m)."""
    g = gcd(d, m)
    m_reduced = m // g
    if m_reduced == 1:
        return 1
    base = pow((d // g) % m_reduced, -1, m_reduced)
    for t in range(g + 1):
        candidate = base + t * m_reduced
        if gcd(candidate, m) == 1:
            return candidate % m
    raise ArithmeticError(f"No associating unit for {d} modulo {m}")


@lru_cache(maxsize=8192)
def snf(a: ExactMatrix) -> SNFResult:
    """
    Smith normal form with deterministic pivoting.

    Over Z/m the Z-form of the lifted matrix is reduced mod m and each diagonal
    entry d is replaced by its associate gcd(d, m), so the diagonal consists of
    divisors of m (with m itself written as 0).
    """
    if a.ring.is_integers:
        return _integer_snf(a)

    ring, m = a.ring, a.ring.modulus
    base = _integer_snf(a.lift())
    diag = [gcd(e, m) % m if e % m else 0 for e in base.diagonal]
    units = [_associate_unit(e, m) if e % m else 1 for e in base.diagonal]
    scale = ExactMatrix.diagonal(ring, units + [1] * (a.cols - len(units)), a.cols, a.cols)
    scale_inv = ExactMatrix.diagonal(
        ring,
        [pow(c, -1, m) for c in units] + [1] * (a.cols - len(units)),
        a.cols,
        a.cols,
    )
    return SNFResult(
        a=a,
        d=ExactMatrix.diagonal(ring, diag, a.rows, a.cols),
        u=base.u.over(ring),
        v=base.v.over(ring) @ scale,
        u_inv=base.u_inv.over(ring),
        v_inv=scale_inv @ base.v_inv.over(ring),
    )


def _modulus_augmented(a: ExactMatrix) -> ExactMatrix:
    """[lift(a) | m·I] over Z."""
    lifted = a.lift()
    return lifted.hstack(
        ExactMatrix.identity(lifted.ring, a.rows).scale(a.ring.modulus)
    )


def _integer_solve(a: ExactMatrix, b: ExactMatrix) -> Optional[ExactMatrix]:
    result = _integer_snf(a)
    c = result.u @ b
    rank = result.rank
    diag = result.diagonal
    y_rows = [[0] * b.cols for _ in range(a.cols)]
    for k in range(b.cols):
        for i in range(a.rows):
            value = c[i, k]
            if i < rank:
                if value % diag[i]:
                    return None
                y_rows[i][k] = value // diag[i]
            elif value:
                return None
    y = ExactMatrix.from_rows(a.ring, y_rows, b.cols)
    return result.v @ y


def solve(a: ExactMatrix, b: ExactMatrix) -> Optional[ExactMatrix]:
    """
    Returns some x with a·x = b over the ring, or None when no solution exists.
    b may hold several right-hand sides as columns.
    """
    _check_same_ring(a.ring, b.ring)
    if a.rows != b.rows:
        raise DimensionMismatchError(
            f"Right-hand side has {b.rows} rows, matrix has {a.rows}"
        )
    if a.ring.is_integers:
        x = _integer_solve(a, b)
    else:
        lifted = _integer_solve(_modulus_augmented(a), b.lift())
        x = None if lifted is None else lifted.submatrix(0, a.cols, 0, b.cols).over(a.ring)
    if x is not None and a @ x != b:
        raise ArithmeticError("solve produced a non-solution")
    return x


def solve_vector(a: ExactMatrix, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    x = solve(a, ExactMatrix.column_vector(a.ring, b))
    return None if x is None else x.column(0)


def _normalize_sign(column: Sequence[int]) -> List[int]:
    for e in column:
        if e:
            return [-x for x in column] if e < 0 else list(column)
    return list(column)


def span_basis(a: ExactMatrix) -> ExactMatrix:
    """
    A reduced generating set of the column span of a.

    Over Z the result is a basis of the span; over Z/m it is a generating set
    of minimal size, one column per nonzero diagonal entry of the Smith form.
    """
    result = snf(a)
    columns = []
    for i, d in enumerate(result.diagonal):
        if d == 0:
            continue
        columns.append([x * d for x in result.u_inv.column(i)])
    return ExactMatrix.from_columns(a.ring, a.rows, columns)


def kernel_generators(a: ExactMatrix) -> ExactMatrix:
    """Columns generating {x : a·x = 0}; over Z/m torsion solutions are included."""
    if a.ring.is_integers:
        result = _integer_snf(a)
        columns = [
            _normalize_sign(result.v.column(j)) for j in range(result.rank, a.cols)
        ]
        return ExactMatrix.from_columns(a.ring, a.cols, columns)

    augmented = _modulus_augmented(a)
    result = _integer_snf(augmented)
    columns = []
    for j in range(result.rank, augmented.cols):
        column = _normalize_sign(result.v.column(j))[: a.cols]
        if any(e % a.ring.modulus for e in column):
            columns.append(column)
    raw = ExactMatrix.from_columns(a.ring, a.cols, columns)
    if raw.cols == 0:
        return raw
    return span_basis(raw)
