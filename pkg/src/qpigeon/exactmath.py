"""Exact scalars in Q(sqrt2, i) and exact dense linear algebra.

Every value is immutable and every operation is a pure function, so results
are reproducible bit for bit.  There is deliberately no floating-point path:
range/kernel membership must be decidable with zero tolerance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import DimensionMismatch, DivisionByZero, ParseError

# Reduced arbitrary-precision rationals.  fractions.Fraction already keeps
# gcd(|num|, den) = 1 and den > 0, which is exactly the invariant we need.
Rational = Fraction

ScalarLike = Union["ExactScalar", int, Fraction, str]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x: int | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ExactScalar:
    """A complex number a + b*sqrt2 + (c + d*sqrt2)*i with rational a,b,c,d.

    {1, sqrt2, i, i*sqrt2} are linearly independent over Q, so the four
    coefficients determine the value uniquely and equality is structural.
    """

    re_rat: Fraction = _ZERO
    re_irr: Fraction = _ZERO
    im_rat: Fraction = _ZERO
    im_irr: Fraction = _ZERO

    @classmethod
    def of(cls, re_rat=0, re_irr=0, im_rat=0, im_irr=0) -> ExactScalar:
        return cls(_frac(re_rat), _frac(re_irr), _frac(im_rat), _frac(im_irr))

    @property
    def is_zero(self) -> bool:
        return not (self.re_rat or self.re_irr or self.im_rat or self.im_irr)

    @property
    def is_real(self) -> bool:
        return not (self.im_rat or self.im_irr)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other: ScalarLike) -> ExactScalar:
        other = coerce_scalar(other)
        return ExactScalar(
            self.re_rat + other.re_rat,
            self.re_irr + other.re_irr,
            self.im_rat + other.im_rat,
            self.im_irr + other.im_irr,
        )

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar(-self.re_rat, -self.re_irr, -self.im_rat, -self.im_irr)

    def __sub__(self, other: ScalarLike) -> ExactScalar:
        return self + (-coerce_scalar(other))

    def __rsub__(self, other: ScalarLike) -> ExactScalar:
        return coerce_scalar(other) + (-self)

    def __mul__(self, other: ScalarLike) -> ExactScalar:
        o = coerce_scalar(other)
        a, b, c, d = self.re_rat, self.re_irr, self.im_rat, self.im_irr
        e, f, g, h = o.re_rat, o.re_irr, o.im_rat, o.im_irr
        # (a+b√2 + (c+d√2)i)(e+f√2 + (g+h√2)i), using (√2)² = 2 and i² = −1.
        return ExactScalar(
            a * e + 2 * b * f - c * g - 2 * d * h,
            a * f + b * e - c * h - d * g,
            a * g + 2 * b * h + c * e + 2 * d * f,
            a * h + b * g + c * f + d * e,
        )

    __rmul__ = __mul__

    def conjugate(self) -> ExactScalar:
        return ExactScalar(self.re_rat, self.re_irr, -self.im_rat, -self.im_irr)

    def inverse(self) -> ExactScalar:
        """Multiplicative inverse; exists for every nonzero value."""
        if self.is_zero:
            raise DivisionByZero("cannot invert exact zero")
        a, b, c, d = self.re_rat, self.re_irr, self.im_rat, self.im_irr
        # |x|² = (a+b√2)² + (c+d√2)² = p + q√2, a real element of Q(√2).
        p = a * a + 2 * b * b + c * c + 2 * d * d
        q = 2 * a * b + 2 * c * d
        # 1/(p+q√2) = (p − q√2)/(p² − 2q²); the norm is nonzero since √2 ∉ Q.
        n = p * p - 2 * q * q
        inv_norm = ExactScalar(p / n, -q / n)
        return self.conjugate() * inv_norm

    def __truediv__(self, other: ScalarLike) -> ExactScalar:
        return self * coerce_scalar(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> ExactScalar:
        return coerce_scalar(other) * self.inverse()

    def __str__(self) -> str:
        return render_scalar(self)

    def __repr__(self) -> str:
        return f"ExactScalar({render_scalar(self)!r})"


ZERO = ExactScalar.of(0)
ONE = ExactScalar.of(1)
SQRT2 = ExactScalar.of(0, 1)
IMAG = ExactScalar.of(0, 0, 1)
HALF = ExactScalar.of(Fraction(1, 2))
INV_SQRT2 = ExactScalar.of(0, Fraction(1, 2))  # 1/√2 = (1/2)√2


def coerce_scalar(x: ScalarLike) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar.of(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


# ---------------------------------------------------------------------------
# Canonical text form: "a+b√2+(c+d√2)i", rationals as "p/q" ("/q" omitted for
# q = 1), zero groups omitted, the zero value rendered "0".


def _coeff(c: Fraction, suffix: str) -> str:
    if suffix and c == 1:
        return suffix
    if suffix and c == -1:
        return "-" + suffix
    return str(c) + suffix


def _real_pair(rat: Fraction, irr: Fraction) -> str:
    parts = []
    if rat:
        parts.append(_coeff(rat, ""))
    if irr:
        parts.append(_coeff(irr, "√2"))
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def render_scalar(x: ExactScalar) -> str:
    if x.is_zero:
        return "0"
    parts = []
    if x.re_rat or x.re_irr:
        parts.append(_real_pair(x.re_rat, x.re_irr))
    if x.im_rat and x.im_irr:
        parts.append("(" + _real_pair(x.im_rat, x.im_irr) + ")i")
    elif x.im_rat:
        parts.append(_coeff(x.im_rat, "i"))
    elif x.im_irr:
        parts.append(_coeff(x.im_irr, "√2") + "i")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


# Scalar literal parser.  Accepts the canonical rendering plus ASCII-friendly
# aliases: "sqrt2"/"sqrt(2)" for "√2" and division forms like "1/sqrt2".
_SQRT2_TOKENS = ("√2", "sqrt(2)", "sqrt2")
_INT_RE = re.compile(r"\d+")
_ATOM_BOUNDARY = re.compile(r"[A-Za-z0-9_]")


class _ScalarReader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        return ParseError(message, self.pos, expected)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def take_sqrt2(self) -> bool:
        for tok in _SQRT2_TOKENS:
            if self.take(tok):
                return True
        return False

    def take_int(self) -> int | None:
        self.skip_ws()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return int(m.group())

    def take_imag_unit(self) -> bool:
        # "i" only when not the start of a longer identifier.
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "i":
            nxt = self.text[self.pos + 1 : self.pos + 2]
            if not nxt or not _ATOM_BOUNDARY.match(nxt):
                self.pos += 1
                return True
        return False

    def parse_sum(self) -> ExactScalar:
        value = self.parse_term()
        while True:
            if self.take("+"):
                value = value + self.parse_term()
            elif self.take("-"):
                value = value - self.parse_term()
            else:
                return value

    def parse_term(self) -> ExactScalar:
        negate = False
        while True:
            if self.take("-"):
                negate = not negate
            elif self.take("+"):
                pass
            else:
                break
        value = self.parse_factor()
        return -value if negate else value

    def parse_factor(self) -> ExactScalar:
        if self.take("("):
            inner = self.parse_sum()
            if not self.take(")"):
                raise self.error("unterminated group", (")",))
            if self.take_imag_unit():
                inner = inner * IMAG
            return inner
        if self.take_sqrt2():
            value = SQRT2
            if self.take_imag_unit():
                value = value * IMAG
            return value
        if self.take_imag_unit():
            return IMAG
        num = self.take_int()
        if num is None:
            raise self.error("expected scalar term", ("number", "√2", "i", "("))
        value = ExactScalar.of(num)
        if self.take("/"):
            if self.take_sqrt2():
                value = value / SQRT2
            else:
                den = self.take_int()
                if den is None:
                    raise self.error("expected denominator", ("number", "√2"))
                if den == 0:
                    raise self.error("zero denominator")
                value = ExactScalar.of(Fraction(num, den))
                if self.take("/") and not self.take_sqrt2():
                    raise self.error("expected √2 after '/'", ("√2",))
                # a second "/" can only have been a √2 division
                if self.text[: self.pos].rstrip().endswith(_SQRT2_TOKENS):
                    value = value / SQRT2
        self.take("*")
        if self.take_sqrt2():
            value = value * SQRT2
        if self.take_imag_unit():
            value = value * IMAG
        return value


def parse_scalar(text: str) -> ExactScalar:
    reader = _ScalarReader(text)
    if reader.eof():
        raise reader.error("empty scalar literal")
    value = reader.parse_sum()
    if not reader.eof():
        raise reader.error("trailing characters in scalar literal")
    return value


# ---------------------------------------------------------------------------
# Vectors and matrices.


@dataclass(frozen=True)
class ExactVector:
    """An ordered tuple of exact scalars."""

    entries: tuple[ExactScalar, ...]

    @classmethod
    def of(cls, values: Iterable[ScalarLike]) -> ExactVector:
        return cls(tuple(coerce_scalar(v) for v in values))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def __add__(self, other: ExactVector) -> ExactVector:
        self._check_dim(other)
        return ExactVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: ExactVector) -> ExactVector:
        self._check_dim(other)
        return ExactVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, scalar: ScalarLike) -> ExactVector:
        s = coerce_scalar(scalar)
        return ExactVector(tuple(e * s for e in self.entries))

    __rmul__ = __mul__

    def inner(self, other: ExactVector) -> ExactScalar:
        """Hermitian inner product <self|other>, conjugate-linear on the left."""
        self._check_dim(other)
        total = ZERO
        for a, b in zip(self.entries, other.entries):
            total = total + a.conjugate() * b
        return total

    def kron(self, other: ExactVector) -> ExactVector:
        return ExactVector(tuple(a * b for a in self.entries for b in other.entries))

    def _check_dim(self, other: ExactVector) -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"vector dims {self.dim} != {other.dim}")

    def __str__(self) -> str:
        return ",".join(render_scalar(e) for e in self.entries)

    def __repr__(self) -> str:
        return f"ExactVector({str(self)!r})"


def parse_vector(text: str) -> ExactVector:
    parts = text.split(",")
    if not any(p.strip() for p in parts):
        raise ParseError("empty vector literal", 0)
    return ExactVector.of(parse_scalar(p) for p in parts)


@dataclass(frozen=True)
class ExactMatrix:
    """A dense matrix of exact scalars, row-major."""

    rows: int
    cols: int
    entries: tuple[ExactScalar, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> ExactMatrix:
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        if any(len(r) != n_cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(n_rows, n_cols, tuple(coerce_scalar(v) for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    def entry(self, i: int, j: int) -> ExactScalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> ExactVector:
        return ExactVector(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> ExactVector:
        return ExactVector(tuple(self.entry(i, j) for i in range(self.rows)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.entries)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix(
            self.rows, self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix(
            self.rows, self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(self.rows, self.cols, tuple(-e for e in self.entries))

    def __mul__(self, scalar: ScalarLike) -> ExactMatrix:
        s = coerce_scalar(scalar)
        return ExactMatrix(self.rows, self.cols, tuple(e * s for e in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    acc = acc + self.entry(i, k) * other.entry(k, j)
                out.append(acc)
        return ExactMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: ExactVector) -> ExactVector:
        if self.cols != v.dim:
            raise DimensionMismatch(f"matrix cols {self.cols} != vector dim {v.dim}")
        return ExactVector(tuple(_row_dot(self, i, v) for i in range(self.rows)))

    def adjoint(self) -> ExactMatrix:
        """Conjugate transpose."""
        return ExactMatrix(
            self.cols, self.rows,
            tuple(self.entry(i, j).conjugate()
                  for j in range(self.cols) for i in range(self.rows)),
        )

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            self.cols, self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def _check_same_shape(self, other: ExactMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"shape {self.rows}x{self.cols} != {other.rows}x{other.cols}"
            )

    def __str__(self) -> str:
        return render_matrix(self)

    def __repr__(self) -> str:
        return f"ExactMatrix({str(self)!r})"


def _row_dot(m: ExactMatrix, i: int, v: ExactVector) -> ExactScalar:
    acc = ZERO
    for k in range(m.cols):
        acc = acc + m.entry(i, k) * v.entries[k]
    return acc


def render_matrix(m: ExactMatrix) -> str:
    return ";".join(
        ",".join(render_scalar(m.entry(i, j)) for j in range(m.cols))
        for i in range(m.rows)
    )


def parse_matrix(text: str) -> ExactMatrix:
    rows = [r.split(",") for r in text.split(";")]
    return ExactMatrix.from_rows([[parse_scalar(e) for e in r] for r in rows])


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return a @ b


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product, block layout a[i,j]*b in row-major block order."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [ZERO] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            aij = a.entry(i, j)
            for k in range(b.rows):
                for l in range(b.cols):
                    out[(i * b.rows + k) * cols + (j * b.cols + l)] = aij * b.entry(k, l)
    return ExactMatrix(rows, cols, tuple(out))


# ---------------------------------------------------------------------------
# Row reduction and subspace bases.


class RowReduction(NamedTuple):
    rref: ExactMatrix
    rank: int
    pivot_cols: tuple[int, ...]


def row_reduce(a: ExactMatrix) -> RowReduction:
    """Exact reduced row-echelon form.

    Pivot choice is deterministic: leftmost pivot column first, topmost
    nonzero row within it, so equal subspaces always canonicalize to the
    same basis.
    """
    grid = [[a.entry(i, j) for j in range(a.cols)] for i in range(a.rows)]
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(a.cols):
        hit = next((r for r in range(pivot_row, a.rows) if grid[r][col]), None)
        if hit is None:
            continue
        grid[pivot_row], grid[hit] = grid[hit], grid[pivot_row]
        inv = grid[pivot_row][col].inverse()
        grid[pivot_row] = [e * inv for e in grid[pivot_row]]
        for r in range(a.rows):
            if r != pivot_row and grid[r][col]:
                factor = grid[r][col]
                grid[r] = [e - factor * p for e, p in zip(grid[r], grid[pivot_row])]
        pivot_cols.append(col)
        pivot_row += 1
        if pivot_row == a.rows:
            break
    rref = ExactMatrix(a.rows, a.cols, tuple(e for row in grid for e in row))
    return RowReduction(rref, len(pivot_cols), tuple(pivot_cols))


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace in canonical form: the RREF basis of its row space.

    Canonicalization makes subspace equality plain structural equality of
    the vector lists.
    """

    dim_ambient: int
    vectors: tuple[ExactVector, ...]

    @classmethod
    def from_vectors(
        cls, dim_ambient: int, vectors: Iterable[ExactVector]
    ) -> SubspaceBasis:
        vecs = list(vectors)
        for v in vecs:
            if v.dim != dim_ambient:
                raise DimensionMismatch(
                    f"vector dim {v.dim} != ambient dim {dim_ambient}"
                )
        if not vecs:
            return cls(dim_ambient, ())
        stacked = ExactMatrix.from_rows([list(v.entries) for v in vecs])
        red = row_reduce(stacked)
        return cls(
            dim_ambient,
            tuple(red.rref.row(i) for i in range(red.rank)),
        )

    @property
    def dim_subspace(self) -> int:
        return len(self.vectors)

    def contains(self, v: ExactVector) -> bool:
        """Exact membership test via linear solvability."""
        if v.dim != self.dim_ambient:
            raise DimensionMismatch(
                f"vector dim {v.dim} != ambient dim {self.dim_ambient}"
            )
        if v.is_zero:
            return True
        if not self.vectors:
            return False
        rows = [list(b.entries) for b in self.vectors] + [list(v.entries)]
        return row_reduce(ExactMatrix.from_rows(rows)).rank == self.dim_subspace

    def span_with(self, other: SubspaceBasis) -> SubspaceBasis:
        """Smallest subspace containing both (always defined)."""
        self._check_ambient(other)
        return SubspaceBasis.from_vectors(
            self.dim_ambient, self.vectors + other.vectors
        )

    def intersect(self, other: SubspaceBasis) -> SubspaceBasis:
        """Exact intersection via the Zassenhaus block construction."""
        self._check_ambient(other)
        n = self.dim_ambient
        if not self.vectors or not other.vectors:
            return SubspaceBasis(n, ())
        block_rows = [list(v.entries) * 2 for v in self.vectors]
        block_rows += [list(v.entries) + [ZERO] * n for v in other.vectors]
        red = row_reduce(ExactMatrix.from_rows(block_rows))
        meet_vecs = []
        for i in range(red.rank):
            row = red.rref.row(i)
            left = ExactVector(row.entries[:n])
            if left.is_zero:
                meet_vecs.append(ExactVector(row.entries[n:]))
        return SubspaceBasis.from_vectors(n, meet_vecs)

    def _check_ambient(self, other: SubspaceBasis) -> None:
        if self.dim_ambient != other.dim_ambient:
            raise DimensionMismatch(
                f"ambient dims {self.dim_ambient} != {other.dim_ambient}"
            )

    def __str__(self) -> str:
        return render_matrix(
            ExactMatrix.from_rows([list(v.entries) for v in self.vectors])
        ) if self.vectors else "(trivial)"


def range_basis(a: ExactMatrix) -> SubspaceBasis:
    """Canonical basis of the column space."""
    return SubspaceBasis.from_vectors(
        a.rows, (a.col(j) for j in range(a.cols))
    )


def kernel_basis(a: ExactMatrix) -> SubspaceBasis:
    """Canonical basis of the exact null space."""
    red = row_reduce(a)
    pivot_set = set(red.pivot_cols)
    free_cols = [c for c in range(a.cols) if c not in pivot_set]
    vectors = []
    for free in free_cols:
        entries = [ZERO] * a.cols
        entries[free] = ONE
        for r, p in enumerate(red.pivot_cols):
            entries[p] = -red.rref.entry(r, free)
        vectors.append(ExactVector(tuple(entries)))
    return SubspaceBasis.from_vectors(a.cols, vectors)
